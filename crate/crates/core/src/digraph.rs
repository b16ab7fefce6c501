//! Explicit directed graphs stored as dense bit relations.
//!
//! Every graph keeps both its out-rows and its transposed in-rows, so the
//! 2-king sweep (out-neighbourhood, then one intersection per non-neighbour)
//! costs `O(n²/64)` word operations.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<FixedBitSet>,
    inn: Vec<FixedBitSet>,
    labels: Option<Vec<String>>,
}

impl Digraph {
    /// An edgeless graph on `n ≥ 1` nodes.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::GraphFormat("a graph needs at least one node".into()));
        }
        Ok(Self {
            out: vec![FixedBitSet::with_capacity(n); n],
            inn: vec![FixedBitSet::with_capacity(n); n],
            labels: None,
        })
    }

    /// Builds the graph with `a → b` iff `edge(a, b)`, for `a ≠ b`. Rows are
    /// computed in parallel.
    pub fn from_fn(n: usize, edge: impl Fn(usize, usize) -> bool + Sync) -> Result<Self> {
        let mut g = Self::new(n)?;
        g.out = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut row = FixedBitSet::with_capacity(n);
                for b in (0..n).filter(|&b| b != a) {
                    if edge(a, b) {
                        row.insert(b);
                    }
                }
                row
            })
            .collect();
        g.rebuild_in_rows();
        Ok(g)
    }

    fn rebuild_in_rows(&mut self) {
        let n = self.out.len();
        let mut inn = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in self.out.iter().enumerate() {
            for b in row.ones() {
                inn[b].insert(a);
            }
        }
        self.inn = inn;
    }

    pub fn num_nodes(&self) -> usize {
        self.out.len()
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_node(a)?;
        self.check_node(b)?;
        if a == b {
            return Err(Error::GraphFormat(format!("self-loop at node {a}")));
        }
        self.out[a].insert(b);
        self.inn[b].insert(a);
        Ok(())
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.out[a].set(b, false);
        self.inn[b].set(a, false);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.out[a].contains(b)
    }

    pub fn out_row(&self, v: usize) -> &FixedBitSet {
        &self.out[v]
    }

    pub fn in_row(&self, v: usize) -> &FixedBitSet {
        &self.inn[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones(..)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].count_ones(..)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.ones().map(move |b| (a, b)))
    }

    pub fn num_edges(&self) -> usize {
        self.out.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.num_nodes() {
            return Err(Error::GraphFormat(format!(
                "{} labels for {} nodes",
                labels.len(),
                self.num_nodes()
            )));
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        self.set_labels(labels)?;
        Ok(self)
    }

    /// Node id carrying `label`, if labels are present.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Resolves a node given as a decimal id or, failing that, as a label.
    pub fn resolve_node(&self, text: &str) -> Result<usize> {
        if let Some(v) = self.find_label(text) {
            return Ok(v);
        }
        let v: usize = text.parse().map_err(|_| Error::invalid(format!("no node `{text}`")))?;
        self.check_node(v)?;
        Ok(v)
    }

    fn check_node(&self, v: usize) -> Result<()> {
        if v >= self.num_nodes() {
            return Err(Error::invalid(format!(
                "node {v} out of range (graph has {} nodes)",
                self.num_nodes()
            )));
        }
        Ok(())
    }

    /// The subgraph induced on `nodes`, renumbered in the given order.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<Digraph> {
        let mut g = Digraph::from_fn(nodes.len(), |a, b| self.has_edge(nodes[a], nodes[b]))?;
        if let Some(labels) = &self.labels {
            g.labels = Some(nodes.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok(g)
    }
}

/// A digraph in which every unordered pair carries exactly one arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tournament(Digraph);

impl Tournament {
    pub fn new(g: Digraph) -> Result<Self> {
        if !check_tournament(&g) {
            return Err(Error::GraphFormat("not a tournament".into()));
        }
        Ok(Self(g))
    }

    /// The tournament with `a → b` iff `beats(a, b)`; `beats` is only asked
    /// about pairs `a < b`.
    pub fn from_fn(n: usize, beats: impl Fn(usize, usize) -> bool + Sync) -> Result<Self> {
        let g = Digraph::from_fn(n, |a, b| if a < b { beats(a, b) } else { !beats(b, a) })?;
        Ok(Self(g))
    }

    pub fn graph(&self) -> &Digraph {
        &self.0
    }

    pub fn into_graph(self) -> Digraph {
        self.0
    }

    pub fn num_nodes(&self) -> usize {
        self.0.num_nodes()
    }
}

/// A digraph with a node partition into `j ≥ 2` parts, no arcs inside a
/// part and exactly one arc across parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipartiteTournament {
    graph: Digraph,
    part_of: Vec<usize>,
    parts: usize,
}

impl MultipartiteTournament {
    /// `part_of[v]` is the 0-based part of node `v`; `parts` is `j`.
    pub fn new(graph: Digraph, part_of: Vec<usize>, parts: usize) -> Result<Self> {
        if parts < 2 {
            return Err(Error::invalid("a multipartite tournament needs j ≥ 2"));
        }
        if part_of.len() != graph.num_nodes() || part_of.iter().any(|&p| p >= parts) {
            return Err(Error::GraphFormat("bad part assignment".into()));
        }
        let n = graph.num_nodes();
        for a in 0..n {
            for b in a + 1..n {
                let arcs = graph.has_edge(a, b) as u8 + graph.has_edge(b, a) as u8;
                let ok = if part_of[a] == part_of[b] { arcs == 0 } else { arcs == 1 };
                if !ok {
                    return Err(Error::GraphFormat(format!(
                        "nodes {a} and {b} violate the multipartite tournament shape"
                    )));
                }
            }
        }
        Ok(Self { graph, part_of, parts })
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn num_parts(&self) -> usize {
        self.parts
    }

    /// Nodes of in-degree zero.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.graph.num_nodes())
            .filter(|&v| self.graph.in_degree(v) == 0)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Vec<FixedBitSet>,
}

impl UndirectedGraph {
    pub fn num_nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.num_nodes())
            .flat_map(|a| self.adj[a].ones().filter(move |&b| a < b).map(move |b| (a, b)))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Kingship
// ---------------------------------------------------------------------------

fn check_query(g: &Digraph, v: usize, k: usize) -> Result<()> {
    g.check_node(v)?;
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    Ok(())
}

/// Whether every node is reachable from `v` by a path of length at most `k`.
pub fn is_k_king(g: &Digraph, v: usize, k: usize) -> Result<bool> {
    check_query(g, v, k)?;
    Ok(if k == 2 {
        two_king_sweep(g, v)
    } else {
        k_king_bfs(g, v, k)
    })
}

/// Depth-bounded BFS over bitset frontiers. Kept public so the 2-king fast
/// path can be cross-checked against it.
pub fn is_k_king_bfs(g: &Digraph, v: usize, k: usize) -> Result<bool> {
    check_query(g, v, k)?;
    Ok(k_king_bfs(g, v, k))
}

pub(crate) fn k_king_bfs(g: &Digraph, v: usize, k: usize) -> bool {
    let n = g.num_nodes();
    let mut reach = FixedBitSet::with_capacity(n);
    reach.insert(v);
    let mut frontier = reach.clone();
    for _ in 0..k {
        if reach.count_ones(..) == n {
            break;
        }
        let mut next = FixedBitSet::with_capacity(n);
        for u in frontier.ones() {
            next.union_with(g.out_row(u));
        }
        next.difference_with(&reach);
        if next.is_clear() {
            break;
        }
        reach.union_with(&next);
        frontier = next;
    }
    reach.count_ones(..) == n
}

pub(crate) fn two_king_sweep(g: &Digraph, v: usize) -> bool {
    two_king_sweep_rows(g.num_nodes(), v, g.out_row(v), |w| g.in_row(w).clone())
}

/// The 2-king test given `N⁺(v)` and a way to obtain `N⁻(w)` for the nodes
/// `v` does not reach directly.
pub(crate) fn two_king_sweep_rows(
    n: usize,
    v: usize,
    out_v: &FixedBitSet,
    in_row: impl Fn(usize) -> FixedBitSet,
) -> bool {
    (0..n)
        .filter(|&w| w != v && !out_v.contains(w))
        .all(|w| !in_row(w).is_disjoint(out_v))
}

/// Every `k`-king of `g`, ascending.
pub fn all_k_kings(g: &Digraph, k: usize) -> Result<Vec<usize>> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let kings = (0..g.num_nodes())
        .into_par_iter()
        .filter(|&v| {
            if k == 2 {
                two_king_sweep(g, v)
            } else {
                k_king_bfs(g, v, k)
            }
        })
        .collect();
    Ok(kings)
}

/// A node of maximum out-degree, smallest id on ties. In a tournament such a
/// node always reaches everything within two steps.
pub fn find_king_landau(t: &Tournament) -> usize {
    let g = t.graph();
    let mut best = 0;
    for v in 1..g.num_nodes() {
        if g.out_degree(v) > g.out_degree(best) {
            best = v;
        }
    }
    debug_assert!(two_king_sweep(g, best));
    best
}

pub fn check_tournament(g: &Digraph) -> bool {
    let n = g.num_nodes();
    (0..n).all(|a| (a + 1..n).all(|b| g.has_edge(a, b) != g.has_edge(b, a)))
}

// ---------------------------------------------------------------------------
// Multipartite recognition
// ---------------------------------------------------------------------------

pub fn underlying_graph(g: &Digraph) -> UndirectedGraph {
    let adj = (0..g.num_nodes())
        .map(|v| {
            let mut row = g.out_row(v).clone();
            row.union_with(g.in_row(v));
            row
        })
        .collect();
    UndirectedGraph { adj }
}

fn check_j(j: usize) -> Result<()> {
    if j < 2 {
        return Err(Error::invalid("j must be at least 2"));
    }
    Ok(())
}

/// Forbidden-pattern test: no 2-cycle, and the underlying graph has neither
/// an induced three-node subgraph with exactly one edge nor a `(j+1)`-clique.
pub fn recognize_jpartite_patterns(g: &Digraph, j: usize) -> Result<bool> {
    check_j(j)?;
    let n = g.num_nodes();
    if g.edges().any(|(a, b)| g.has_edge(b, a)) {
        return Ok(false);
    }
    let u = underlying_graph(g);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let edges = u.has_edge(a, b) as u8 + u.has_edge(a, c) as u8 + u.has_edge(b, c) as u8;
                if edges == 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(!has_clique(&u, j + 1))
}

/// Whether `u` contains a clique on `size` nodes (exhaustive extension search).
fn has_clique(u: &UndirectedGraph, size: usize) -> bool {
    fn extend(u: &UndirectedGraph, candidates: &FixedBitSet, need: usize) -> bool {
        if need == 0 {
            return true;
        }
        if candidates.count_ones(..) < need {
            return false;
        }
        candidates.ones().any(|v| {
            let mut next = candidates.clone();
            next.intersect_with(u.neighbors(v));
            // Only extend with larger ids so each clique is tried once.
            next.set_range(..v + 1, false);
            extend(u, &next, need - 1)
        })
    }
    let mut all = FixedBitSet::with_capacity(u.num_nodes());
    all.insert_range(..);
    extend(u, &all, size)
}

/// Direct test: the parts are the connected components of the complement of
/// the underlying graph; there must be at most `j` of them, no arcs inside a
/// part and exactly one arc between nodes of different parts.
///
/// Parts are allowed to be empty, so a graph with fewer than `j` components
/// still qualifies.
pub fn recognize_jpartite_direct(g: &Digraph, j: usize) -> Result<bool> {
    check_j(j)?;
    let parts = complement_components(&underlying_graph(g));
    if parts.iter().max().map_or(0, |&p| p + 1) > j {
        return Ok(false);
    }
    let n = g.num_nodes();
    for a in 0..n {
        for b in a + 1..n {
            let arcs = g.has_edge(a, b) as u8 + g.has_edge(b, a) as u8;
            let ok = if parts[a] == parts[b] { arcs == 0 } else { arcs == 1 };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Component id per node in the complement of `u`, numbered by smallest member.
fn complement_components(u: &UndirectedGraph) -> Vec<usize> {
    let n = u.num_nodes();
    let mut comp = vec![usize::MAX; n];
    let mut next_id = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = next_id;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if w != v && comp[w] == usize::MAX && !u.has_edge(v, w) {
                    comp[w] = next_id;
                    stack.push(w);
                }
            }
        }
        next_id += 1;
    }
    comp
}

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

pub const MAX_ENUMERATED_NODES: usize = 6;

/// All `2^C(n,2)` labeled tournaments on `n` nodes. Pairs `(a, b)` with
/// `a < b` are taken in lexicographic order; bit `i` of the counter set means
/// the `i`-th pair points forward.
pub fn enumerate_tournaments(n: usize) -> Result<impl Iterator<Item = Tournament>> {
    if n == 0 || n > MAX_ENUMERATED_NODES {
        return Err(Error::invalid(format!(
            "can enumerate tournaments on 1..={MAX_ENUMERATED_NODES} nodes, not {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let count = 1u64 << pairs.len();
    Ok((0..count).map(move |mask| {
        let mut g = Digraph::new(n).expect("n ≥ 1");
        for (i, &(a, b)) in pairs.iter().enumerate() {
            let (from, to) = if mask >> i & 1 == 1 { (a, b) } else { (b, a) };
            g.add_edge(from, to).expect("distinct nodes");
        }
        Tournament(g)
    }))
}

/// Each ordered pair becomes an arc independently with probability `p`.
pub fn random_digraph(n: usize, p: f64, rng: &mut impl Rng) -> Result<Digraph> {
    let mut g = Digraph::new(n)?;
    for a in 0..n {
        for b in (0..n).filter(|&b| b != a) {
            if rng.random_bool(p) {
                g.add_edge(a, b)?;
            }
        }
    }
    Ok(g)
}

pub fn random_tournament(n: usize, rng: &mut impl Rng) -> Result<Tournament> {
    let mut g = Digraph::new(n)?;
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(0.5) {
                g.add_edge(a, b)?;
            } else {
                g.add_edge(b, a)?;
            }
        }
    }
    Ok(Tournament(g))
}

/// A multipartite tournament with the given part sizes (zero-size parts are
/// allowed) and uniformly random orientations; nodes are numbered part by
/// part.
pub fn random_multipartite(part_sizes: &[usize], rng: &mut impl Rng) -> Result<MultipartiteTournament> {
    let part_of: Vec<usize> = part_sizes
        .iter()
        .enumerate()
        .flat_map(|(p, &size)| std::iter::repeat_n(p, size))
        .collect();
    let n = part_of.len();
    let mut g = Digraph::new(n)?;
    for a in 0..n {
        for b in a + 1..n {
            if part_of[a] == part_of[b] {
                continue;
            }
            if rng.random_bool(0.5) {
                g.add_edge(a, b)?;
            } else {
                g.add_edge(b, a)?;
            }
        }
    }
    MultipartiteTournament::new(g, part_of, part_sizes.len())
}

// ---------------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------------

fn dot_id(s: &str) -> String {
    let bare = s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if bare {
        s.to_string()
    } else {
        format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

/// Graphviz text. Nodes are named by their labels when present, otherwise by
/// their ids; node and edge statements follow id order.
pub fn export_dot(g: &Digraph) -> String {
    let name = |v: usize| match g.label(v) {
        Some(l) => dot_id(l),
        None => v.to_string(),
    };
    let mut out = String::from("digraph G {\n");
    for v in 0..g.num_nodes() {
        let _ = writeln!(out, "  {};", name(v));
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "  {} -> {};", name(a), name(b));
    }
    out.push_str("}\n");
    out
}

/// Parses `nodes <n>`, `edge <i> <j>` and `label <i> <string>` lines; `#`
/// starts a comment.
pub fn parse_graph(text: &str) -> Result<Digraph> {
    let mut graph: Option<Digraph> = None;
    let mut labels: Vec<Option<String>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::GraphFormat(format!("line {}: {msg}", lineno + 1));
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| err(&format!("bad number `{s}`")));
        match fields.as_slice() {
            ["nodes", n] => {
                if graph.is_some() {
                    return Err(err("duplicate `nodes` line"));
                }
                let n = num(n)?;
                graph = Some(Digraph::new(n).map_err(|e| err(&e.to_string()))?);
                labels = vec![None; n];
            }
            ["edge", a, b] => {
                let g = graph.as_mut().ok_or_else(|| err("`edge` before `nodes`"))?;
                g.add_edge(num(a)?, num(b)?).map_err(|e| err(&e.to_string()))?;
            }
            ["label", v, rest @ ..] if !rest.is_empty() => {
                graph.as_ref().ok_or_else(|| err("`label` before `nodes`"))?;
                let v = num(v)?;
                let slot = labels
                    .get_mut(v)
                    .ok_or_else(|| err(&format!("node {v} out of range")))?;
                *slot = Some(rest.join(" "));
            }
            _ => return Err(err(&format!("unrecognized line `{line}`"))),
        }
    }
    let mut g = graph.ok_or_else(|| Error::GraphFormat("missing `nodes` line".into()))?;
    if labels.iter().any(Option::is_some) {
        let filled = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.unwrap_or_else(|| i.to_string()))
            .collect();
        g.set_labels(filled)?;
    }
    Ok(g)
}

pub fn write_graph(g: &Digraph) -> String {
    let mut out = format!("nodes {}\n", g.num_nodes());
    if let Some(labels) = g.labels() {
        for (i, l) in labels.iter().enumerate() {
            let _ = writeln!(out, "label {i} {l}");
        }
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "edge {a} {b}");
    }
    out
}
