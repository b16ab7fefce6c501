//! Checks on specifiers and on the tournaments they induce.

use std::fmt;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{build_subtournament_decoded, BuiltinKind, BuiltinSpecifier, GraphFamily, LengthView, TournamentFamily};
use crate::bits::BitString;
use crate::digraph::{all_k_kings, Digraph, Tournament};
use crate::error::{Error, Result};
use crate::Limits;

/// How many violation witnesses a report keeps.
const MAX_WITNESSES: usize = 8;

/// Mixed-length pairs sampled for the cross-length rule.
const CROSS_LENGTH_SAMPLES: usize = 512;

/// Exhaustive associativity is limited to `2^27` triples.
const MAX_TRIPLE_LOG2: usize = 27;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

impl fmt::Display for CheckMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckMode::Exhaustive => f.write_str("exhaustive"),
            CheckMode::Sampled { count, seed } => write!(f, "sampled({count}, seed {seed})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// `select(x, y)` is neither input.
    Selection,
    Commutativity,
    /// More than one guard fires on `{x, y}`.
    GuardOverlap,
    /// No guard fires on `{x, y}` in either order.
    GuardGap,
    CrossLength,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub x: BitString,
    pub y: BitString,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Tally {
    pairs: u64,
    selection: u64,
    commutativity: u64,
    guard: u64,
    witnesses: Vec<Violation>,
}

impl Tally {
    fn record(&mut self, kind: ViolationKind, x: impl FnOnce() -> (BitString, BitString)) {
        match kind {
            ViolationKind::Selection => self.selection += 1,
            ViolationKind::Commutativity => self.commutativity += 1,
            ViolationKind::GuardOverlap | ViolationKind::GuardGap => self.guard += 1,
            ViolationKind::CrossLength => {}
        }
        if self.witnesses.len() < MAX_WITNESSES {
            let (x, y) = x();
            self.witnesses.push(Violation { kind, x, y });
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.pairs += other.pairs;
        self.selection += other.selection;
        self.commutativity += other.commutativity;
        self.guard += other.guard;
        let room = MAX_WITNESSES.saturating_sub(self.witnesses.len());
        self.witnesses.extend(other.witnesses.into_iter().take(room));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub spec: String,
    pub m: usize,
    pub mode: CheckMode,
    /// Unordered pairs `{x, y}` examined, `x = y` included.
    pub pairs_checked: u64,
    pub selection_violations: u64,
    pub commutativity_violations: u64,
    /// Whether guard uniqueness was checked (only for guard-list families).
    pub guards_checked: bool,
    pub guard_violations: u64,
    pub cross_length_checked: u64,
    pub cross_length_violations: u64,
    pub witnesses: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.selection_violations == 0
            && self.commutativity_violations == 0
            && self.guard_violations == 0
            && self.cross_length_violations == 0
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} at m={} ({})", self.spec, self.m, self.mode)?;
        writeln!(f, "pairs checked: {}", self.pairs_checked)?;
        writeln!(f, "selection violations: {}", self.selection_violations)?;
        writeln!(f, "commutativity violations: {}", self.commutativity_violations)?;
        if self.guards_checked {
            writeln!(f, "guard uniqueness violations: {}", self.guard_violations)?;
        }
        if self.cross_length_checked > 0 {
            writeln!(
                f,
                "cross-length violations: {} of {}",
                self.cross_length_violations, self.cross_length_checked
            )?;
        }
        for w in &self.witnesses {
            writeln!(f, "witness {:?}: {} {}", w.kind, w.x, w.y)?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn check_pair(view: &dyn LengthView, a: usize, b: usize, m: usize, tally: &mut Tally, guards: &mut bool) {
    let strings = || (BitString::from_index(a as u64, m), BitString::from_index(b as u64, m));
    tally.pairs += 1;
    let s1 = view.select_idx(a, b);
    let s2 = view.select_idx(b, a);
    let selecting = |s: Option<usize>| matches!(s, Some(v) if v == a || v == b);
    if !selecting(s1) || !selecting(s2) {
        tally.record(ViolationKind::Selection, strings);
    } else if s1 != s2 {
        tally.record(ViolationKind::Commutativity, strings);
    }
    if a != b {
        if let (Some(g1), Some(g2)) = (view.guard_mask(a, b), view.guard_mask(b, a)) {
            *guards = true;
            match g1.count_ones() + g2.count_ones() {
                1 => {}
                0 => tally.record(ViolationKind::GuardGap, strings),
                _ => tally.record(ViolationKind::GuardOverlap, strings),
            }
        }
    }
}

fn random_string(rng: &mut impl Rng, len: usize) -> BitString {
    BitString::from_bits((0..len).map(|_| rng.random()).collect())
}

/// Draws from `pool` half of the time (when non-empty), else uniformly.
fn draw(rng: &mut impl Rng, pool: &[BitString], m: usize) -> BitString {
    if !pool.is_empty() && rng.random::<bool>() {
        pool[rng.random_range(0..pool.len())].clone()
    } else {
        random_string(rng, m)
    }
}

/// Checks the specifier axioms at length `m`: selection and commutativity on
/// every (or every sampled) pair, guard uniqueness for guard-list families,
/// and the cross-length rule on seeded mixed-length samples for families
/// that promise it.
pub fn validate_specifier<S: TournamentFamily + ?Sized>(
    spec: &S,
    m: usize,
    mode: CheckMode,
    limits: &Limits,
) -> Result<ValidationReport> {
    let mut guards = false;
    let (tally, seed) = match mode {
        CheckMode::Exhaustive => {
            let view = spec.length_view(m, limits)?;
            let view: &dyn LengthView = view.as_ref();
            let n = 1usize << m;
            let parts: Vec<(Tally, bool)> = (0..n)
                .into_par_iter()
                .map(|a| {
                    let mut t = Tally::default();
                    let mut g = false;
                    for b in a..n {
                        check_pair(view, a, b, m, &mut t, &mut g);
                    }
                    (t, g)
                })
                .collect();
            let mut total = Tally::default();
            for (t, g) in parts {
                guards |= g;
                total = total.merge(t);
            }
            (total, 0)
        }
        CheckMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pool = spec.notable_strings(m, limits);
            let mut t = Tally::default();
            for _ in 0..count {
                let x = draw(&mut rng, &pool, m);
                let y = draw(&mut rng, &pool, m);
                t.pairs += 1;
                let s1 = spec.select(&x, &y);
                let s2 = spec.select(&y, &x);
                let pair = || (x.clone(), y.clone());
                if (s1 != x && s1 != y) || (s2 != x && s2 != y) {
                    t.record(ViolationKind::Selection, pair);
                } else if s1 != s2 {
                    t.record(ViolationKind::Commutativity, pair);
                }
                if x != y {
                    if let (Some(g1), Some(g2)) = (spec.pair_guard_mask(&x, &y), spec.pair_guard_mask(&y, &x)) {
                        guards = true;
                        match g1.count_ones() + g2.count_ones() {
                            1 => {}
                            0 => t.record(ViolationKind::GuardGap, pair),
                            _ => t.record(ViolationKind::GuardOverlap, pair),
                        }
                    }
                }
            }
            (t, seed)
        }
    };

    let mut witnesses = tally.witnesses;
    let (mut cross_checked, mut cross_bad) = (0, 0);
    if spec.shorter_wins() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..CROSS_LENGTH_SAMPLES {
            let other_len = loop {
                let l = rng.random_range(m.saturating_sub(3)..=m + 3);
                if l != m {
                    break l;
                }
            };
            let x = random_string(&mut rng, m);
            let y = random_string(&mut rng, other_len);
            let shorter = if x.len() < y.len() { &x } else { &y };
            cross_checked += 1;
            if &spec.select(&x, &y) != shorter || &spec.select(&y, &x) != shorter {
                cross_bad += 1;
                if witnesses.len() < MAX_WITNESSES {
                    witnesses.push(Violation {
                        kind: ViolationKind::CrossLength,
                        x,
                        y,
                    });
                }
            }
        }
    }

    Ok(ValidationReport {
        spec: spec.name(),
        m,
        mode,
        pairs_checked: tally.pairs,
        selection_violations: tally.selection,
        commutativity_violations: tally.commutativity,
        guards_checked: guards,
        guard_violations: tally.guard,
        cross_length_checked: cross_checked,
        cross_length_violations: cross_bad,
        witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativityReport {
    pub spec: String,
    pub m: usize,
    pub mode: CheckMode,
    /// Size of the triple space searched (exhaustive) or number of sampled
    /// triples.
    pub triples: u64,
    /// `(x, y, z)` with `f(x, f(y, z)) ≠ f(f(x, y), z)`.
    pub witness: Option<[BitString; 3]>,
    /// When associative: the 2-kings of the induced tournament.
    pub kings: Option<Vec<BitString>>,
    /// When associative: whether the king `c` satisfies `select(y, c) = c`
    /// for every `y`.
    pub king_selects_universally: Option<bool>,
}

impl AssociativityReport {
    pub fn associative(&self) -> bool {
        self.witness.is_none()
    }

    /// Associativity together with the single-king consequences.
    pub fn passed(&self) -> bool {
        self.associative()
            && self.kings.as_ref().is_some_and(|k| k.len() == 1)
            && self.king_selects_universally == Some(true)
    }
}

impl fmt::Display for AssociativityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} at m={} ({}), {} triples",
            self.spec, self.m, self.mode, self.triples
        )?;
        match &self.witness {
            Some([x, y, z]) => write!(f, "not associative: {x} {y} {z}"),
            None => {
                write!(f, "associative")?;
                if let Some(kings) = &self.kings {
                    let list: Vec<String> = kings.iter().map(ToString::to_string).collect();
                    write!(f, "\n2-kings: {}", list.join(" "))?;
                }
                if let Some(u) = self.king_selects_universally {
                    write!(f, "\nking selected against every string: {u}")?;
                }
                Ok(())
            }
        }
    }
}

/// Searches for a non-associative triple at length `m`. When none is found
/// (and the length is within the node cap), also reports the 2-kings and
/// whether the king is selected against everything.
pub fn check_associativity<S: TournamentFamily + ?Sized>(
    spec: &S,
    m: usize,
    mode: CheckMode,
    limits: &Limits,
) -> Result<AssociativityReport> {
    let (triples, witness) = match mode {
        CheckMode::Exhaustive => {
            if 3 * m > MAX_TRIPLE_LOG2 {
                return Err(Error::CapExceeded {
                    what: "triple count (log2)",
                    value: 3 * m,
                    limit: MAX_TRIPLE_LOG2,
                });
            }
            let view = spec.length_view(m, limits)?;
            let view: &dyn LengthView = view.as_ref();
            let n = 1usize << m;
            let found = (0..n).into_par_iter().find_map_first(|x| {
                for y in 0..n {
                    for z in 0..n {
                        let left = view.select_idx(y, z).and_then(|yz| view.select_idx(x, yz));
                        let right = view.select_idx(x, y).and_then(|xy| view.select_idx(xy, z));
                        if left.is_none() || left != right {
                            return Some([x, y, z]);
                        }
                    }
                }
                None
            });
            let witness = found.map(|t| t.map(|v| BitString::from_index(v as u64, m)));
            (1u64 << (3 * m), witness)
        }
        CheckMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pool = spec.notable_strings(m, limits);
            let mut witness = None;
            for _ in 0..count {
                let [x, y, z] = [0; 3].map(|_| draw(&mut rng, &pool, m));
                let left = spec.select(&x, &spec.select(&y, &z));
                let right = spec.select(&spec.select(&x, &y), &z);
                if left != right {
                    witness = Some([x, y, z]);
                    break;
                }
            }
            (count as u64, witness)
        }
    };

    let (mut kings, mut universal) = (None, None);
    if witness.is_none() && limits.check_pow2_nodes(m).is_ok() {
        let t = induced_graph(spec, m, limits)?;
        let found = all_k_kings(t.graph(), 2)?;
        if let [c] = found.as_slice() {
            let c_str = BitString::from_index(*c as u64, m);
            let ok = BitString::all_of_length(m).all(|y| spec.select(&y, &c_str) == c_str);
            universal = Some(ok);
        } else {
            universal = Some(false);
        }
        kings = Some(found.into_iter().map(|v| BitString::from_index(v as u64, m)).collect());
    }

    Ok(AssociativityReport {
        spec: spec.name(),
        m,
        mode,
        triples,
        witness,
        kings,
        king_selects_universally: universal,
    })
}

fn index_labels(m: usize) -> Vec<String> {
    (0..1u64 << m)
        .map(|i| BitString::from_index(i, m).to_string())
        .collect()
}

/// The tournament induced at length `m`, nodes labeled by their strings.
/// Fails with a graph-format error if the family is not a tournament family
/// at this length.
pub fn induced_graph<S: TournamentFamily + ?Sized>(spec: &S, m: usize, limits: &Limits) -> Result<Tournament> {
    let view = spec.length_view(m, limits)?;
    let view: &dyn LengthView = view.as_ref();
    let g = Digraph::from_fn(1 << m, |a, b| view.beats(a, b))?;
    Tournament::new(g.with_labels(index_labels(m))?)
}

/// The digraph induced at length `m` by a graph family.
pub fn induced_digraph<G: GraphFamily + ?Sized>(family: &G, m: usize, limits: &Limits) -> Result<Digraph> {
    limits.check_pow2_nodes(m)?;
    let strings: Vec<BitString> = BitString::all_of_length(m).collect();
    Digraph::from_fn(1 << m, |a, b| family.edge(&strings[a], &strings[b]))?.with_labels(index_labels(m))
}

/// Whether `z` is a `k`-king in the tournament induced at length `|z|`,
/// without materializing it.
///
/// For `k = 2`, `N⁺(z)` is computed with `2^m` queries and every other node
/// is then looked up among the in-neighbours of `N⁺(z)`; other `k` run a BFS
/// that computes rows on demand.
pub fn specifier_k_king<S: TournamentFamily + ?Sized>(
    spec: &S,
    z: &BitString,
    k: usize,
    limits: &Limits,
) -> Result<bool> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if k != 2 {
        return specifier_k_king_bfs(spec, z, k, limits);
    }
    let m = z.len();
    let view = spec.length_view(m, limits)?;
    let view: &dyn LengthView = view.as_ref();
    let n = 1usize << m;
    let v = z.to_index() as usize;
    let out: Vec<usize> = (0..n).filter(|&w| w != v && view.beats(v, w)).collect();
    let mut out_set = FixedBitSet::with_capacity(n);
    out.iter().for_each(|&w| out_set.insert(w));
    Ok((0..n)
        .into_par_iter()
        .filter(|&w| w != v && !out_set.contains(w))
        .all(|w| out.iter().any(|&u| view.beats(u, w))))
}

/// Depth-bounded BFS over the induced tournament, computing each frontier
/// node's out-row only when it is reached.
pub fn specifier_k_king_bfs<S: TournamentFamily + ?Sized>(
    spec: &S,
    z: &BitString,
    k: usize,
    limits: &Limits,
) -> Result<bool> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let m = z.len();
    let view = spec.length_view(m, limits)?;
    let view: &dyn LengthView = view.as_ref();
    let n = 1usize << m;
    let mut reached = FixedBitSet::with_capacity(n);
    let start = z.to_index() as usize;
    reached.insert(start);
    let mut frontier = vec![start];
    for _ in 0..k {
        if frontier.is_empty() || reached.count_ones(..) == n {
            break;
        }
        let unreached: Vec<usize> = (0..n).filter(|&w| !reached.contains(w)).collect();
        let next: Vec<usize> = unreached
            .into_par_iter()
            .filter(|&w| frontier.iter().any(|&u| view.beats(u, w)))
            .collect();
        next.iter().for_each(|&w| reached.insert(w));
        frontier = next;
    }
    Ok(reached.count_ones(..) == n)
}

/// A path `v → w → v′` leaving and re-entering some `V_φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bridge {
    pub v: BitString,
    pub w: BitString,
    pub v_prime: BitString,
}

/// Searches the tournament induced at length `m` for paths `v → w → v′` with
/// `v, v′ ∈ V_φ` and `w ∉ V_φ`. For `kkings` only paths starting at the
/// potential king are searched: other members of `V_φ` do reach the
/// potential king through the first antenna node by design.
pub fn check_no_bridge(spec: &BuiltinSpecifier, m: usize, limits: &Limits) -> Result<Vec<Bridge>> {
    let ctx = spec.length_context(m, limits)?;
    let weak = matches!(spec.kind(), BuiltinKind::KKings { .. });
    let n = ctx.num_nodes();
    let mut found = Vec::new();
    for p in 0..ctx.formulas().len() {
        let members = ctx.members_of(p);
        let starts = if weak {
            ctx.potential_king_of(p).into_iter().collect()
        } else {
            members.clone()
        };
        for v in starts {
            let outside: Vec<usize> = (0..n)
                .filter(|&w| !(ctx.is_member(w) && ctx.formula_rank(w) == Some(p)))
                .filter(|&w| LengthView::beats(&ctx, v, w))
                .collect();
            for &v2 in members.iter().filter(|&&v2| v2 != v) {
                if let Some(&w) = outside.iter().find(|&&w| LengthView::beats(&ctx, w, v2)) {
                    if found.len() < MAX_WITNESSES {
                        found.push(Bridge {
                            v: BitString::from_index(v as u64, m),
                            w: BitString::from_index(w as u64, m),
                            v_prime: BitString::from_index(v2 as u64, m),
                        });
                    }
                }
            }
        }
    }
    Ok(found)
}

/// Compares, for every formula with nodes at length `m`, the induced
/// tournament restricted to `V_φ` with `T_φ` as built directly. Returns the
/// encodings of the formulas where they differ.
pub fn check_subtournament_embedding(spec: &BuiltinSpecifier, m: usize, limits: &Limits) -> Result<Vec<BitString>> {
    let ctx = spec.length_context(m, limits)?;
    let mut bad = Vec::new();
    for (p, phi) in ctx.formulas().iter().enumerate() {
        let members = ctx.members_of(p);
        let sub = build_subtournament_decoded(spec.kind(), phi, limits)?;
        let g = sub.tournament().graph();
        let same_nodes = members.len() == g.num_nodes()
            && members
                .iter()
                .enumerate()
                .all(|(i, &v)| g.label(i) == Some(BitString::from_index(v as u64, m).to_string().as_str()));
        let same_arcs = same_nodes
            && (0..members.len()).all(|i| {
                (0..members.len())
                    .filter(|&j| j != i)
                    .all(|j| g.has_edge(i, j) == LengthView::beats(&ctx, members[i], members[j]))
            });
        if !same_arcs {
            bad.push(phi.code.clone());
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bs;
    use crate::specifier::{make_builtin_specifier, FnTournamentFamily};

    fn spec(name: &str) -> BuiltinSpecifier {
        make_builtin_specifier(name.parse().unwrap()).unwrap()
    }

    #[test]
    fn max_is_valid_and_associative() {
        let l = Limits::default();
        for m in 1..=6 {
            let r = validate_specifier(&spec("max"), m, CheckMode::Exhaustive, &l).unwrap();
            assert!(r.passed(), "{r}");
            assert!(!r.guards_checked);
        }
        let a = check_associativity(&spec("max"), 4, CheckMode::Exhaustive, &l).unwrap();
        assert!(a.passed(), "{a}");
        assert_eq!(a.kings, Some(vec![bs("1111")]));
    }

    #[test]
    fn left_projection_is_not_commutative() {
        let f = FnTournamentFamily::new("left", |x: &BitString, _: &BitString| x.clone());
        let r = validate_specifier(&f, 3, CheckMode::Exhaustive, &Limits::default()).unwrap();
        assert!(!r.passed());
        assert!(r.commutativity_violations > 0);
        assert_eq!(r.witnesses[0].kind, ViolationKind::Commutativity);
        let bad = FnTournamentFamily::new("bad", |_: &BitString, _: &BitString| bs("000"));
        let r = validate_specifier(&bad, 3, CheckMode::Sampled { count: 50, seed: 1 }, &Limits::default()).unwrap();
        assert!(r.selection_violations > 0);
    }

    #[test]
    fn conp_weave_is_valid() {
        let l = Limits::default();
        let s = spec("conp:ttplain");
        let r = validate_specifier(&s, 8, CheckMode::Exhaustive, &l).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.guards_checked);
        assert!(r.cross_length_checked > 0);
        assert!(check_no_bridge(&s, 8, &l).unwrap().is_empty());
        assert!(check_subtournament_embedding(&s, 8, &l).unwrap().is_empty());
    }

    #[test]
    fn pi2_sampled_finds_non_associative_triple() {
        let a = check_associativity(
            &spec("pi2:ttfe"),
            12,
            CheckMode::Sampled {
                count: 200_000,
                seed: 7,
            },
            &Limits::default(),
        )
        .unwrap();
        assert!(!a.associative());
    }

    #[test]
    fn fast_and_bfs_kingship_agree() {
        let l = Limits::default();
        let s = spec("np:ttplain");
        let t = induced_graph(&s, 9, &l).unwrap();
        for v in (0..512).step_by(7) {
            let z = BitString::from_index(v as u64, 9);
            let direct = crate::digraph::is_k_king(t.graph(), v, 2).unwrap();
            assert_eq!(specifier_k_king(&s, &z, 2, &l).unwrap(), direct, "{z}");
            assert_eq!(specifier_k_king_bfs(&s, &z, 2, &l).unwrap(), direct, "{z}");
        }
        assert!(specifier_k_king(&spec("max"), &bs("1111"), 1, &l).unwrap());
    }
}
