//! Boolean circuits and the two circuit-specified graph models.
//!
//! A [`SuccinctGraph`] is a `2n`-input circuit describing a digraph on the
//! `2ⁿ` strings of length `n`: `x → y` iff the circuit accepts `x · y`.
//!
//! A [`JTournamentCircuit`] has `j(n+1)` inputs laid out as `j` fields of one
//! control bit followed by `n` data bits. It specifies a `j`-partite
//! tournament on nodes `(i, s)`, `1 ≤ i ≤ j`, `|s| = n`: for `i < i'` the arc
//! between `(i, s)` and `(i', s')` points forward iff the circuit accepts the
//! input with exactly the controls of fields `i` and `i'` set, `s` and `s'` in
//! those fields and zeros elsewhere.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::bits::BitString;
use crate::digraph::{self, Digraph, MultipartiteTournament};
use crate::error::{Error, Result};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    Input(usize),
    Const(bool),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
}

/// A circuit as a topologically ordered gate list. Gate operands are
/// positions in that list and always point backwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanCircuit {
    arity: usize,
    gates: Vec<Gate>,
    /// Textual gate number of each position; strictly increasing.
    ids: Vec<usize>,
    output: usize,
}

impl BooleanCircuit {
    /// Checks operand order and input ranges; gate numbers become positions.
    pub fn new(arity: usize, gates: Vec<Gate>, output: usize) -> Result<Self> {
        let ids = (0..gates.len()).collect();
        Self::with_ids(arity, gates, ids, output)
    }

    fn with_ids(arity: usize, gates: Vec<Gate>, ids: Vec<usize>, output: usize) -> Result<Self> {
        for (pos, gate) in gates.iter().enumerate() {
            let backward = |g: usize| {
                if g < pos {
                    Ok(())
                } else {
                    Err(Error::CircuitFormat(format!(
                        "gate {pos} references gate {g}, which is not earlier"
                    )))
                }
            };
            match *gate {
                Gate::Input(i) if i >= arity => {
                    return Err(Error::CircuitFormat(format!(
                        "input {i} out of range for {arity} inputs"
                    )))
                }
                Gate::Input(_) | Gate::Const(_) => {}
                Gate::Not(a) => backward(a)?,
                Gate::And(a, b) | Gate::Or(a, b) => {
                    backward(a)?;
                    backward(b)?;
                }
            }
        }
        if output >= gates.len() {
            return Err(Error::CircuitFormat("output gate does not exist".into()));
        }
        Ok(Self {
            arity,
            gates,
            ids,
            output,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> usize {
        self.output
    }

    pub fn eval(&self, bits: &BitString) -> Result<bool> {
        if bits.len() != self.arity {
            return Err(Error::LengthMismatch {
                expected: self.arity,
                found: bits.len(),
            });
        }
        Ok(self.eval_slice(bits.bits()))
    }

    /// Single forward pass; `input.len()` must equal the arity.
    pub fn eval_slice(&self, input: &[bool]) -> bool {
        let mut val: Vec<bool> = Vec::with_capacity(self.output + 1);
        for gate in &self.gates[..=self.output] {
            let v = match *gate {
                Gate::Input(i) => input[i],
                Gate::Const(b) => b,
                Gate::Not(a) => !val[a],
                Gate::And(a, b) => val[a] && val[b],
                Gate::Or(a, b) => val[a] || val[b],
            };
            val.push(v);
        }
        val[self.output]
    }

    /// Parses the line format: `inputs <N>`, gate lines `g<k> <OP> …` with
    /// strictly increasing `k`, and a final `output g<k>`. `#` starts a
    /// comment.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let err = |line: usize, msg: String| Error::CircuitFormat(format!("line {line}: {msg}"));

        let mut iter = lines.iter();
        let arity = match iter.next() {
            Some(&(ln, l)) => match l.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["inputs", n] => n.parse().map_err(|_| err(ln, format!("bad input count `{n}`")))?,
                _ => return Err(err(ln, "expected `inputs <N>`".into())),
            },
            None => return Err(Error::CircuitFormat("empty circuit text".into())),
        };

        let gate_id = |ln: usize, tok: &str| -> Result<usize> {
            tok.strip_prefix('g')
                .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| err(ln, format!("bad gate name `{tok}`")))
        };

        // Collect definitions first so forward and undefined references can
        // be told apart.
        let mut defs: Vec<(usize, usize, Vec<&str>)> = Vec::new();
        let mut output_line = None;
        for &(ln, l) in iter {
            if output_line.is_some() {
                return Err(err(ln, "text after the output line".into()));
            }
            let fields: Vec<&str> = l.split_whitespace().collect();
            if fields[0] == "output" {
                match fields.as_slice() {
                    [_, g] => output_line = Some((ln, gate_id(ln, g)?)),
                    _ => return Err(err(ln, "expected `output g<k>`".into())),
                }
                continue;
            }
            let id = gate_id(ln, fields[0])?;
            if let Some(&(_, prev, _)) = defs.last() {
                if id <= prev {
                    return Err(err(ln, format!("gate g{id} does not follow g{prev}")));
                }
            }
            defs.push((ln, id, fields[1..].to_vec()));
        }
        let (out_ln, out_id) = output_line.ok_or_else(|| Error::CircuitFormat("missing output line".into()))?;

        let all_ids: HashSet<usize> = defs.iter().map(|d| d.1).collect();
        let mut pos_of = std::collections::HashMap::new();
        let mut gates = Vec::with_capacity(defs.len());
        let mut ids = Vec::with_capacity(defs.len());
        for (ln, id, args) in &defs {
            let (ln, id) = (*ln, *id);
            let operand = |tok: &str| -> Result<usize> {
                let g = gate_id(ln, tok)?;
                match pos_of.get(&g) {
                    Some(&p) => Ok(p),
                    None if all_ids.contains(&g) => Err(err(ln, format!("forward reference g{g}"))),
                    None => Err(err(ln, format!("undefined gate g{g}"))),
                }
            };
            let gate = match args.as_slice() {
                ["INPUT", i] => {
                    let i: usize = i.parse().map_err(|_| err(ln, format!("bad input index `{i}`")))?;
                    if i >= arity {
                        return Err(err(ln, format!("input {i} out of range for {arity} inputs")));
                    }
                    Gate::Input(i)
                }
                ["CONST", "0"] => Gate::Const(false),
                ["CONST", "1"] => Gate::Const(true),
                ["NOT", a] => Gate::Not(operand(a)?),
                ["AND", a, b] => Gate::And(operand(a)?, operand(b)?),
                ["OR", a, b] => Gate::Or(operand(a)?, operand(b)?),
                _ => return Err(err(ln, format!("malformed gate g{id}"))),
            };
            pos_of.insert(id, gates.len());
            gates.push(gate);
            ids.push(id);
        }
        let output = *pos_of
            .get(&out_id)
            .ok_or_else(|| err(out_ln, format!("undefined gate g{out_id}")))?;
        Self::with_ids(arity, gates, ids, output)
    }
}

impl fmt::Display for BooleanCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "inputs {}", self.arity)?;
        let name = |p: usize| format!("g{}", self.ids[p]);
        for (p, gate) in self.gates.iter().enumerate() {
            match *gate {
                Gate::Input(i) => writeln!(f, "{} INPUT {i}", name(p))?,
                Gate::Const(b) => writeln!(f, "{} CONST {}", name(p), b as u8)?,
                Gate::Not(a) => writeln!(f, "{} NOT {}", name(p), name(a))?,
                Gate::And(a, b) => writeln!(f, "{} AND {} {}", name(p), name(a), name(b))?,
                Gate::Or(a, b) => writeln!(f, "{} OR {} {}", name(p), name(a), name(b))?,
            }
        }
        writeln!(f, "output {}", name(self.output))
    }
}

impl FromStr for BooleanCircuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Incremental construction with shared input and negated-input gates.
#[derive(Clone, Debug)]
pub struct CircuitBuilder {
    arity: usize,
    gates: Vec<Gate>,
    inputs: Vec<Option<usize>>,
    negated: Vec<Option<usize>>,
}

impl CircuitBuilder {
    pub fn new(arity: usize) -> Self {
        Self {
            arity,
            gates: Vec::new(),
            inputs: vec![None; arity],
            negated: vec![None; arity],
        }
    }

    fn push(&mut self, g: Gate) -> usize {
        self.gates.push(g);
        self.gates.len() - 1
    }

    pub fn input(&mut self, i: usize) -> usize {
        assert!(i < self.arity, "input {i} out of range");
        if let Some(g) = self.inputs[i] {
            return g;
        }
        let g = self.push(Gate::Input(i));
        self.inputs[i] = Some(g);
        g
    }

    /// `xᵢ` when `value` is true, `¬xᵢ` otherwise.
    pub fn literal(&mut self, i: usize, value: bool) -> usize {
        let x = self.input(i);
        if value {
            return x;
        }
        if let Some(g) = self.negated[i] {
            return g;
        }
        let g = self.push(Gate::Not(x));
        self.negated[i] = Some(g);
        g
    }

    pub fn constant(&mut self, b: bool) -> usize {
        self.push(Gate::Const(b))
    }

    pub fn not(&mut self, a: usize) -> usize {
        self.push(Gate::Not(a))
    }

    pub fn and(&mut self, a: usize, b: usize) -> usize {
        self.push(Gate::And(a, b))
    }

    pub fn or(&mut self, a: usize, b: usize) -> usize {
        self.push(Gate::Or(a, b))
    }

    /// Conjunction of `gates`; the constant 1 when empty.
    pub fn and_all(&mut self, gates: impl IntoIterator<Item = usize>) -> usize {
        let mut iter = gates.into_iter();
        match iter.next() {
            None => self.constant(true),
            Some(first) => iter.fold(first, |acc, g| self.and(acc, g)),
        }
    }

    /// Disjunction of `gates`; the constant 0 when empty.
    pub fn or_all(&mut self, gates: impl IntoIterator<Item = usize>) -> usize {
        let mut iter = gates.into_iter();
        match iter.next() {
            None => self.constant(false),
            Some(first) => iter.fold(first, |acc, g| self.or(acc, g)),
        }
    }

    /// Conjunction of literals fixing inputs `offset..offset+|bits|` to `bits`.
    pub fn match_bits(&mut self, offset: usize, bits: &[bool]) -> Vec<usize> {
        bits.iter()
            .enumerate()
            .map(|(i, &b)| self.literal(offset + i, b))
            .collect()
    }

    /// Copies `c`'s gates in, with `c`'s input `i` wired to input `map(i)` of
    /// this builder. Returns the gate carrying `c`'s output.
    pub fn embed(&mut self, c: &BooleanCircuit, map: impl Fn(usize) -> usize) -> usize {
        let mut pos = Vec::with_capacity(c.gates.len());
        for gate in &c.gates {
            let g = match *gate {
                Gate::Input(i) => self.input(map(i)),
                Gate::Const(b) => self.constant(b),
                Gate::Not(a) => self.not(pos[a]),
                Gate::And(a, b) => self.and(pos[a], pos[b]),
                Gate::Or(a, b) => self.or(pos[a], pos[b]),
            };
            pos.push(g);
        }
        pos[c.output]
    }

    pub fn build(self, output: usize) -> BooleanCircuit {
        BooleanCircuit::new(self.arity, self.gates, output).expect("builder keeps gates well-formed")
    }
}

// ---------------------------------------------------------------------------
// Galperin–Wigderson graphs
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuccinctGraph {
    n: usize,
    circuit: BooleanCircuit,
}

impl SuccinctGraph {
    pub fn new(n: usize, circuit: BooleanCircuit) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a GW graph needs n ≥ 1"));
        }
        if circuit.arity() != 2 * n {
            return Err(Error::invalid(format!(
                "circuit has {} inputs, a GW graph on length-{n} strings needs {}",
                circuit.arity(),
                2 * n
            )));
        }
        Ok(Self { n, circuit })
    }

    /// Reads a circuit and infers `n` from its arity.
    pub fn from_circuit(circuit: BooleanCircuit) -> Result<Self> {
        if !circuit.arity().is_multiple_of(2) {
            return Err(Error::invalid("a GW circuit needs an even number of inputs"));
        }
        Self::new(circuit.arity() / 2, circuit)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn circuit(&self) -> &BooleanCircuit {
        &self.circuit
    }
}

/// Circuit for the edge relation given by `edge` on length-`n` strings, as
/// an OR of minterms over `x · y`.
pub fn table_to_circuit(
    n: usize,
    edge: impl Fn(&BitString, &BitString) -> bool,
    limits: &Limits,
) -> Result<SuccinctGraph> {
    limits.check_vars(2 * n)?;
    let mut b = CircuitBuilder::new(2 * n);
    let mut terms = Vec::new();
    for x in BitString::all_of_length(n) {
        for y in BitString::all_of_length(n) {
            if x != y && edge(&x, &y) {
                let mut lits = b.match_bits(0, x.bits());
                lits.extend(b.match_bits(n, y.bits()));
                terms.push(b.and_all(lits));
            }
        }
    }
    let out = b.or_all(terms);
    SuccinctGraph::new(n, b.build(out))
}

pub fn gw_edge(sg: &SuccinctGraph, x: &BitString, y: &BitString) -> Result<bool> {
    for s in [x, y] {
        if s.len() != sg.n {
            return Err(Error::LengthMismatch {
                expected: sg.n,
                found: s.len(),
            });
        }
    }
    if x == y {
        return Err(Error::invalid("GW graphs have no self-loops"));
    }
    Ok(sg.circuit.eval_slice(x.concat(y).bits()))
}

/// All `2ⁿ` nodes, labeled by their strings, node `i` being string `i`.
pub fn gw_materialize(sg: &SuccinctGraph, limits: &Limits) -> Result<Digraph> {
    limits.check_pow2_nodes(sg.n)?;
    let n = sg.n;
    let size = 1usize << n;
    let g = Digraph::from_fn(size, |a, b| {
        let mut input = BitString::from_index(a as u64, n);
        input.extend_from(&BitString::from_index(b as u64, n));
        sg.circuit.eval_slice(input.bits())
    })?;
    g.with_labels(
        (0..size)
            .map(|i| BitString::from_index(i as u64, n).to_string())
            .collect(),
    )
}

pub fn gw_check_tournament(sg: &SuccinctGraph, limits: &Limits) -> Result<bool> {
    Ok(digraph::check_tournament(&gw_materialize(sg, limits)?))
}

pub fn gw_k_king(sg: &SuccinctGraph, x: &BitString, k: usize, limits: &Limits) -> Result<bool> {
    if x.len() != sg.n {
        return Err(Error::LengthMismatch {
            expected: sg.n,
            found: x.len(),
        });
    }
    let g = gw_materialize(sg, limits)?;
    digraph::is_k_king(&g, x.to_index() as usize, k)
}

/// A random circuit: one gate per input followed by `gates` random
/// `Not`/`And`/`Or` gates over earlier positions; the last gate is the output.
pub fn random_circuit(arity: usize, gates: usize, rng: &mut impl rand::Rng) -> BooleanCircuit {
    let mut list: Vec<Gate> = (0..arity).map(Gate::Input).collect();
    if list.is_empty() {
        list.push(Gate::Const(rng.random()));
    }
    for _ in 0..gates {
        let len = list.len();
        let a = rng.random_range(0..len);
        let b = rng.random_range(0..len);
        list.push(match rng.random_range(0..3) {
            0 => Gate::Not(a),
            1 => Gate::And(a, b),
            _ => Gate::Or(a, b),
        });
    }
    let output = list.len() - 1;
    BooleanCircuit::new(arity, list, output).expect("operands point backwards")
}

// ---------------------------------------------------------------------------
// j-tournament-circuits
// ---------------------------------------------------------------------------

/// Node `(part, s)` of a circuit-specified multipartite tournament; `part`
/// is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JtNode {
    pub part: usize,
    pub s: BitString,
}

impl JtNode {
    pub fn new(part: usize, s: BitString) -> Self {
        Self { part, s }
    }
}

impl fmt::Display for JtNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.part, self.s)
    }
}

impl FromStr for JtNode {
    type Err = Error;

    /// `I:S`, e.g. `1:01`; `S` is empty for `n = 0`.
    fn from_str(text: &str) -> Result<Self> {
        let (i, s) = text
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("expected `I:S`, found `{text}`")))?;
        let part = i
            .parse()
            .map_err(|_| Error::invalid(format!("bad part number `{i}`")))?;
        Ok(Self { part, s: s.parse()? })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JTournamentCircuit {
    j: usize,
    n: usize,
    circuit: BooleanCircuit,
}

impl JTournamentCircuit {
    pub fn new(j: usize, n: usize, circuit: BooleanCircuit) -> Result<Self> {
        if j < 2 {
            return Err(Error::invalid("a j-tournament-circuit needs j ≥ 2"));
        }
        if circuit.arity() != j * (n + 1) {
            return Err(Error::invalid(format!(
                "circuit has {} inputs, j = {j} and n = {n} need {}",
                circuit.arity(),
                j * (n + 1)
            )));
        }
        Ok(Self { j, n, circuit })
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn circuit(&self) -> &BooleanCircuit {
        &self.circuit
    }

    pub fn part_size(&self) -> usize {
        1 << self.n
    }

    pub fn num_nodes(&self) -> usize {
        self.j << self.n
    }

    fn check_node(&self, v: &JtNode) -> Result<()> {
        if v.part == 0 || v.part > self.j {
            return Err(Error::invalid(format!("part {} out of range 1..={}", v.part, self.j)));
        }
        if v.s.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: v.s.len(),
            });
        }
        Ok(())
    }

    /// Dense id of a node in [`jt_materialize`]'s output.
    pub fn node_id(&self, v: &JtNode) -> Result<usize> {
        self.check_node(v)?;
        Ok(((v.part - 1) << self.n) + v.s.to_index() as usize)
    }

    pub fn node_at(&self, id: usize) -> JtNode {
        JtNode::new(
            id / self.part_size() + 1,
            BitString::from_index((id % self.part_size()) as u64, self.n),
        )
    }

    /// The canonical circuit input asking about `(i, s) → (i2, s2)`, `i < i2`.
    pub fn query_input(&self, i: usize, s: &BitString, i2: usize, s2: &BitString) -> BitString {
        debug_assert!(i < i2);
        let w = self.n + 1;
        let mut bits = vec![false; self.j * w];
        for (part, s) in [(i, s), (i2, s2)] {
            let base = (part - 1) * w;
            bits[base] = true;
            bits[base + 1..base + w].copy_from_slice(s.bits());
        }
        BitString::from_bits(bits)
    }

    fn raw_edge(&self, i: usize, s: &BitString, i2: usize, s2: &BitString) -> bool {
        self.circuit.eval_slice(self.query_input(i, s, i2, s2).bits())
    }
}

/// Whether the arc between `a` and `b` points from `a` to `b`. Nodes in the
/// same part are an error: there is no arc to ask about.
pub fn jt_edge(jc: &JTournamentCircuit, a: &JtNode, b: &JtNode) -> Result<bool> {
    jc.check_node(a)?;
    jc.check_node(b)?;
    match a.part.cmp(&b.part) {
        std::cmp::Ordering::Equal => Err(Error::invalid(format!(
            "{a} and {b} are in the same part and have no arc between them"
        ))),
        std::cmp::Ordering::Less => Ok(jc.raw_edge(a.part, &a.s, b.part, &b.s)),
        std::cmp::Ordering::Greater => Ok(!jc.raw_edge(b.part, &b.s, a.part, &a.s)),
    }
}

pub fn jt_materialize(jc: &JTournamentCircuit, limits: &Limits) -> Result<MultipartiteTournament> {
    limits.check_pow2_nodes(jc.n)?;
    limits.check_nodes(jc.num_nodes())?;
    let size = jc.num_nodes();
    let nodes: Vec<JtNode> = (0..size).map(|id| jc.node_at(id)).collect();
    let g = Digraph::from_fn(size, |a, b| {
        let (u, v) = (&nodes[a], &nodes[b]);
        match u.part.cmp(&v.part) {
            std::cmp::Ordering::Equal => false,
            std::cmp::Ordering::Less => jc.raw_edge(u.part, &u.s, v.part, &v.s),
            std::cmp::Ordering::Greater => !jc.raw_edge(v.part, &v.s, u.part, &u.s),
        }
    })?
    .with_labels(nodes.iter().map(JtNode::to_string).collect())?;
    let part_of = nodes.iter().map(|v| v.part - 1).collect();
    MultipartiteTournament::new(g, part_of, jc.j)
}

pub fn jt_k_king(jc: &JTournamentCircuit, v: &JtNode, k: usize, limits: &Limits) -> Result<bool> {
    let id = jc.node_id(v)?;
    let mpt = jt_materialize(jc, limits)?;
    digraph::is_k_king(mpt.graph(), id, k)
}

/// A 1-king, found without materializing. Parts with two or more nodes
/// rule one out, so only `n = 0` needs `j - 1` arc queries per node.
pub fn mpt_has_1king_fast(jc: &JTournamentCircuit) -> Option<JtNode> {
    if jc.n >= 1 {
        return None;
    }
    let empty = BitString::new();
    (1..=jc.j).map(|i| JtNode::new(i, empty.clone())).find(|v| {
        (1..=jc.j)
            .filter(|&i| i != v.part)
            .all(|i| jt_edge(jc, v, &JtNode::new(i, empty.clone())).expect("valid nodes"))
    })
}

/// Circuit for the arc rule `forward(u, v)`, asked only for `u.part < v.part`.
/// Each forward arc contributes one minterm over the two control bits and the
/// two data fields involved.
pub fn jt_from_fn(
    j: usize,
    n: usize,
    forward: impl Fn(&JtNode, &JtNode) -> bool,
    limits: &Limits,
) -> Result<JTournamentCircuit> {
    if j < 2 {
        return Err(Error::invalid("a j-tournament-circuit needs j ≥ 2"));
    }
    limits.check_pow2_nodes(n)?;
    limits.check_nodes(j << n)?;
    let w = n + 1;
    let mut b = CircuitBuilder::new(j * w);
    let mut terms = Vec::new();
    for i in 1..=j {
        for i2 in i + 1..=j {
            for s in BitString::all_of_length(n) {
                for s2 in BitString::all_of_length(n) {
                    if forward(&JtNode::new(i, s.clone()), &JtNode::new(i2, s2.clone())) {
                        let mut lits = vec![b.input((i - 1) * w), b.input((i2 - 1) * w)];
                        lits.extend(b.match_bits((i - 1) * w + 1, s.bits()));
                        lits.extend(b.match_bits((i2 - 1) * w + 1, s2.bits()));
                        terms.push(b.and_all(lits));
                    }
                }
            }
        }
    }
    let out = b.or_all(terms);
    JTournamentCircuit::new(j, n, b.build(out))
}

/// Adds a part `j + 1` of sinks: the old circuit is reused on the first
/// `j(n+1)` inputs and ORed with the new part's control bit, so every arc
/// into the new part points at it and all old arcs are unchanged.
pub fn lift_j(jc: &JTournamentCircuit) -> JTournamentCircuit {
    let w = jc.n + 1;
    let mut b = CircuitBuilder::new((jc.j + 1) * w);
    let old = b.embed(&jc.circuit, |i| i);
    let ctrl = b.input(jc.j * w);
    let out = b.or(ctrl, old);
    JTournamentCircuit::new(jc.j + 1, jc.n, b.build(out)).expect("arity matches")
}

/// Result of [`lift_k`]: the new circuit, the added node `z`, and the image
/// of the original node `w` under the relabeling.
#[derive(Clone, Debug)]
pub struct LiftK {
    pub circuit: JTournamentCircuit,
    pub z: JtNode,
    pub w: JtNode,
}

/// Adds `z` to the part opposite `w` with `z → w` and every other node of
/// `w`'s part pointing to `z`, then pads both parts to `2^(n+1)` nodes.
/// Old nodes keep their strings behind a leading `0`; `z` is `1 0ⁿ`.
/// Padding nodes are beaten by every real node of the other part; between
/// two padding nodes the arc goes from part 1 to part 2.
pub fn lift_k(jc: &JTournamentCircuit, w: &JtNode, limits: &Limits) -> Result<LiftK> {
    if jc.j != 2 {
        return Err(Error::invalid("lift_k applies to 2-tournament-circuits"));
    }
    jc.check_node(w)?;
    let n = jc.n;
    let old_size = jc.part_size();
    let wp = w.part;
    let zp = 3 - wp;
    // Index within the new part: old nodes keep their index, z sits right
    // after them in its part, the rest is padding.
    let real = |v: &JtNode| -> bool {
        let idx = v.s.to_index() as usize;
        idx < old_size || (v.part == zp && idx == old_size)
    };
    let is_z = |v: &JtNode| v.part == zp && v.s.to_index() as usize == old_size;
    let old = |v: &JtNode| JtNode::new(v.part, v.s.slice(1, n + 1));
    let w_new = JtNode::new(wp, BitString::from_index(w.s.to_index(), n + 1));
    let forward = |u: &JtNode, v: &JtNode| -> bool {
        match (real(u), real(v)) {
            (true, false) => true,
            (false, true) => false,
            (false, false) => true,
            (true, true) => match (is_z(u), is_z(v)) {
                (false, false) => jt_edge(jc, &old(u), &old(v)).expect("cross-part query"),
                (true, _) => *v == w_new,
                (_, true) => *u != w_new,
            },
        }
    };
    let circuit = jt_from_fn(2, n + 1, forward, limits)?;
    Ok(LiftK {
        circuit,
        z: JtNode::new(zp, BitString::from_index(old_size as u64, n + 1)),
        w: w_new,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bs;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn eval_examples() {
        let and = BooleanCircuit::new(2, vec![Gate::Input(0), Gate::Input(1), Gate::And(0, 1)], 2).unwrap();
        assert!(and.eval(&bs("11")).unwrap());
        let not = BooleanCircuit::new(1, vec![Gate::Input(0), Gate::Not(0)], 1).unwrap();
        assert!(!not.eval(&bs("1")).unwrap());
        let mixed = BooleanCircuit::new(
            2,
            vec![
                Gate::Input(0),
                Gate::Input(1),
                Gate::Not(1),
                Gate::And(0, 2),
                Gate::Const(false),
                Gate::Or(3, 4),
            ],
            5,
        )
        .unwrap();
        assert!(mixed.eval(&bs("10")).unwrap());
        assert!(matches!(and.eval(&bs("1")), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn text_format() {
        let text = "inputs 2\ng0 INPUT 0\ng1 INPUT 1\ng2 AND g0 g1\noutput g2\n";
        let c = BooleanCircuit::parse(text).unwrap();
        assert_eq!(c.gates().len(), 3);
        assert_eq!(c.to_string(), text);
        assert_eq!(BooleanCircuit::parse(&c.to_string()).unwrap(), c);

        let sparse = "# comment\ninputs 1\ng3 INPUT 0\ng7 NOT g3 # trailing\noutput g7\n";
        let c = BooleanCircuit::parse(sparse).unwrap();
        assert_eq!(c.to_string(), "inputs 1\ng3 INPUT 0\ng7 NOT g3\noutput g7\n");

        let fwd = "inputs 1\ng0 INPUT 0\ng1 AND g0 g5\ng5 NOT g0\noutput g1\n";
        let e = BooleanCircuit::parse(fwd).unwrap_err();
        assert!(e.to_string().contains("forward reference g5"), "{e}");
        let undef = "inputs 1\ng0 INPUT 0\ng1 NOT g4\noutput g1\n";
        assert!(BooleanCircuit::parse(undef)
            .unwrap_err()
            .to_string()
            .contains("undefined gate g4"));
        assert!(BooleanCircuit::parse("inputs 1\ng0 INPUT 0\n").is_err());
        assert!(BooleanCircuit::parse("inputs 1\ng1 INPUT 0\ng0 NOT g1\noutput g0").is_err());
        assert!(BooleanCircuit::parse("inputs 1\ng0 INPUT 1\noutput g0").is_err());
        assert!(BooleanCircuit::parse("inputs 1\ng0 CONST 2\noutput g0").is_err());
    }

    #[test]
    fn table_circuit_examples() {
        let single = table_to_circuit(1, |x, y| x == &bs("1") && y == &bs("0"), &lim()).unwrap();
        for input in ["00", "01", "10", "11"] {
            assert_eq!(single.circuit().eval(&bs(input)).unwrap(), input == "10");
        }
        let empty = table_to_circuit(1, |_, _| false, &lim()).unwrap();
        assert_eq!(empty.circuit().gates(), &[Gate::Const(false)]);
    }

    fn lex_less(n: usize) -> SuccinctGraph {
        table_to_circuit(n, |x, y| x < y, &lim()).unwrap()
    }

    #[test]
    fn gw_examples() {
        let sg = table_to_circuit(1, |x, y| x.bits()[0] && !y.bits()[0], &lim()).unwrap();
        assert!(gw_edge(&sg, &bs("1"), &bs("0")).unwrap());
        assert!(!gw_edge(&sg, &bs("0"), &bs("1")).unwrap());
        assert!(gw_edge(&sg, &bs("1"), &bs("1")).is_err());
        let g = gw_materialize(&sg, &lim()).unwrap();
        assert_eq!(g.num_nodes(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 0)]);

        let one = SuccinctGraph::new(1, BooleanCircuit::new(2, vec![Gate::Const(true)], 0).unwrap()).unwrap();
        let zero = SuccinctGraph::new(1, BooleanCircuit::new(2, vec![Gate::Const(false)], 0).unwrap()).unwrap();
        assert_eq!(gw_materialize(&one, &lim()).unwrap().num_edges(), 2);
        assert!(!gw_check_tournament(&one, &lim()).unwrap());
        assert!(!gw_check_tournament(&zero, &lim()).unwrap());
        for n in 1..=3 {
            assert!(gw_check_tournament(&lex_less(n), &lim()).unwrap());
            assert_eq!(gw_materialize(&lex_less(n), &lim()).unwrap().num_nodes(), 1 << n);
        }
        assert!(gw_k_king(&lex_less(3), &bs("000"), 1, &lim()).unwrap());
        assert!(!gw_k_king(&lex_less(3), &bs("111"), 2, &lim()).unwrap());
        for x in ["0", "1"] {
            for k in 1..4 {
                assert!(!gw_k_king(&zero, &bs(x), k, &lim()).unwrap());
            }
        }
        let big = SuccinctGraph::new(14, BooleanCircuit::new(28, vec![Gate::Const(true)], 0).unwrap()).unwrap();
        assert!(gw_materialize(&big, &lim()).unwrap_err().is_cap_exceeded());
    }

    fn const_jc(j: usize, n: usize, value: bool) -> JTournamentCircuit {
        JTournamentCircuit::new(
            j,
            n,
            BooleanCircuit::new(j * (n + 1), vec![Gate::Const(value)], 0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn jt_examples() {
        let jc = const_jc(2, 1, true);
        assert_eq!(jc.query_input(1, &bs("0"), 2, &bs("1")), bs("1011"));
        let mpt = jt_materialize(&jc, &lim()).unwrap();
        for a in 0..2 {
            for b in 2..4 {
                assert!(mpt.graph().has_edge(a, b));
            }
        }
        assert!(jt_edge(&jc, &JtNode::new(1, bs("0")), &JtNode::new(1, bs("1"))).is_err());
        assert!(!jt_edge(&jc, &JtNode::new(2, bs("0")), &JtNode::new(1, bs("1"))).unwrap());
        assert!(!jt_k_king(&jc, &JtNode::new(1, bs("0")), 2, &lim()).unwrap());

        let three = jt_materialize(&const_jc(3, 0, false), &lim()).unwrap();
        assert!(digraph::check_tournament(three.graph()));

        let pair = const_jc(2, 0, true);
        assert!(jt_k_king(&pair, &JtNode::new(1, bs("")), 1, &lim()).unwrap());
        assert_eq!(mpt_has_1king_fast(&pair), Some(JtNode::new(1, bs(""))));
        assert_eq!(mpt_has_1king_fast(&jc), None);

        let cyclic = jt_from_fn(3, 0, |u, v| !(u.part == 1 && v.part == 3), &lim()).unwrap();
        assert_eq!(mpt_has_1king_fast(&cyclic), None);
        assert!(
            digraph::all_k_kings(jt_materialize(&cyclic, &lim()).unwrap().graph(), 1)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn node_text() {
        assert_eq!("2:01".parse::<JtNode>().unwrap(), JtNode::new(2, bs("01")));
        assert_eq!("1:".parse::<JtNode>().unwrap(), JtNode::new(1, bs("")));
        assert!("x".parse::<JtNode>().is_err());
        assert_eq!(JtNode::new(3, bs("10")).to_string(), "3:10");
    }

    #[test]
    fn lift_j_keeps_old_arcs_and_adds_sinks() {
        let jc = jt_from_fn(2, 1, |u, v| u.s != v.s, &lim()).unwrap();
        let lifted = lift_j(&jc);
        assert_eq!(lifted.j(), 3);
        let a = jt_materialize(&jc, &lim()).unwrap();
        let b = jt_materialize(&lifted, &lim()).unwrap();
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(a.graph().has_edge(u, v), b.graph().has_edge(u, v));
            }
        }
        for v in 4..6 {
            assert_eq!(b.graph().out_degree(v), 0);
        }
    }

    #[test]
    fn lift_k_places_z() {
        let jc = jt_from_fn(2, 1, |u, v| u.s == v.s, &lim()).unwrap();
        let w = JtNode::new(1, bs("1"));
        let lifted = lift_k(&jc, &w, &lim()).unwrap();
        assert_eq!(lifted.z, JtNode::new(2, bs("10")));
        assert_eq!(lifted.w, JtNode::new(1, bs("01")));
        assert!(jt_edge(&lifted.circuit, &lifted.z, &lifted.w).unwrap());
        assert!(jt_edge(&lifted.circuit, &JtNode::new(1, bs("00")), &lifted.z).unwrap());
        // Old arcs survive.
        assert!(jt_edge(&lifted.circuit, &JtNode::new(1, bs("01")), &JtNode::new(2, bs("01"))).unwrap());
        assert!(!jt_edge(&lifted.circuit, &JtNode::new(1, bs("01")), &JtNode::new(2, bs("00"))).unwrap());
    }
}
