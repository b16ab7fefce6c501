//! Reductions from formulas to kingship instances, and the verification
//! suites that check them against brute-force oracles.

mod suites;

use std::fmt;

pub use suites::{suite_ids, verify_suite, VerificationReport};

use crate::bits::BitString;
use crate::circuit::{gw_k_king, jt_from_fn, jt_k_king, table_to_circuit, JTournamentCircuit, JtNode, SuccinctGraph};
use crate::error::{Error, Result};
use crate::formula::{decode_table, encode_formula, Codec, DecodedFormula, ForallExistsFormula, Formula, PropFormula};
use crate::pairing::pair;
use crate::specifier::{
    build_subtournament_decoded, make_builtin_specifier, specifier_k_king, BuiltinKind, BuiltinSpecifier,
};
use crate::Limits;

/// The set a reduction maps into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// 2-kings of a built-in specifier.
    Kings(BuiltinKind),
    /// `k`-kings of a built-in specifier.
    KKings { k: usize, kind: BuiltinKind },
    /// `k`-kings of the graph described by the attached GW circuit.
    KingsGw { k: usize },
    /// `k`-kings of the `j`-partite tournament of the attached circuit.
    JtKings { k: usize, j: usize },
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Kings(kind) => write!(f, "Kings[{kind}]"),
            Target::KKings { k, kind } => write!(f, "{k}-Kings[{kind}]"),
            Target::KingsGw { k } => write!(f, "{k}-Kings[GW]"),
            Target::JtKings { k, j } => write!(f, "({k},{j})-Tournament-Kings"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceNode {
    Bits(BitString),
    Jt(JtNode),
}

impl fmt::Display for InstanceNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceNode::Bits(b) => write!(f, "{b}"),
            InstanceNode::Jt(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Attachment {
    Gw(SuccinctGraph),
    Jt(JTournamentCircuit),
}

/// Output of a reduction.
#[derive(Clone, Debug)]
pub struct ReductionInstance {
    pub target: Target,
    pub node: InstanceNode,
    /// Length of the node string (for family targets) or of the circuit's
    /// node strings.
    pub m: usize,
    pub attachment: Option<Attachment>,
    /// The oracle's verdict on the input, when the reduction knows it.
    pub expected: Option<bool>,
}

impl ReductionInstance {
    /// Decides membership of the instance in its target set by brute force.
    pub fn decide(&self, limits: &Limits) -> Result<bool> {
        match (&self.target, &self.node, &self.attachment) {
            (Target::Kings(kind), InstanceNode::Bits(z), None) => {
                specifier_k_king(&make_builtin_specifier(*kind)?, z, 2, limits)
            }
            (Target::KKings { k, kind }, InstanceNode::Bits(z), None) => {
                specifier_k_king(&make_builtin_specifier(*kind)?, z, *k, limits)
            }
            (Target::KingsGw { k }, InstanceNode::Bits(z), Some(Attachment::Gw(sg))) => gw_k_king(sg, z, *k, limits),
            (Target::JtKings { k, .. }, InstanceNode::Jt(v), Some(Attachment::Jt(jc))) => jt_k_king(jc, v, *k, limits),
            _ => Err(Error::invalid("inconsistent reduction instance")),
        }
    }
}

impl fmt::Display for ReductionInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "target: {}", self.target)?;
        writeln!(f, "node: {}", self.node)?;
        write!(f, "m: {}", self.m)?;
        if let Some(e) = self.expected {
            write!(f, "\nexpected: {e}")?;
        }
        match &self.attachment {
            Some(Attachment::Gw(sg)) => write!(f, "\ncircuit:\n{}", sg.circuit()),
            Some(Attachment::Jt(jc)) => write!(f, "\ncircuit (j={}, n={}):\n{}", jc.j(), jc.n(), jc.circuit()),
            None => Ok(()),
        }
    }
}

/// Truth value a built-in's reduction is meant to preserve.
pub fn oracle_value(kind: BuiltinKind, phi: &DecodedFormula) -> bool {
    match kind {
        BuiltinKind::Conp(_) => phi.table.is_tautology(),
        BuiltinKind::Np(_) => phi.table.is_satisfiable(),
        _ => phi.forall_exists_value(),
    }
}

/// Parses `input` and encodes it for `codec`; `None` for anything the codec
/// does not accept.
fn accept(input: &str, codec: Codec, limits: &Limits) -> Option<DecodedFormula> {
    let formula: Formula = input.parse().ok()?;
    let code = encode_formula(&formula, codec, limits).ok()?;
    decode_table(&code, codec)
}

fn out_instance(target: Target, spec: &BuiltinSpecifier) -> ReductionInstance {
    let out = spec.canonical_out();
    ReductionInstance {
        target,
        m: out.len(),
        node: InstanceNode::Bits(out),
        attachment: None,
        expected: Some(false),
    }
}

/// Maps `input` to the potential king of its subtournament, or to the fixed
/// non-king `out` when `input` is not a formula the specifier's codec takes.
/// Total in `input`; fails only for kinds without a 2-king reduction.
pub fn reduce_to_kings(kind: BuiltinKind, input: &str, limits: &Limits) -> Result<ReductionInstance> {
    let spec = make_builtin_specifier(kind)?;
    let codec = match kind {
        BuiltinKind::Pi2(c) | BuiltinKind::Conp(c) | BuiltinKind::Np(c) => c,
        _ => return Err(Error::invalid(format!("{kind} has no 2-king reduction"))),
    };
    let target = Target::Kings(kind);
    let Some(phi) = accept(input, codec, limits) else {
        return Ok(out_instance(target, &spec));
    };
    let node = pair(kind.pairing(), &phi.code, &BitString::zeros(phi.n + 2));
    Ok(ReductionInstance {
        target,
        m: node.len(),
        node: InstanceNode::Bits(node),
        attachment: None,
        expected: Some(oracle_value(kind, &phi)),
    })
}

/// Maps a ∀∃-formula with `n > k − 2` to the tip `⟨φ, 0^{n+4−k}1^{k−2}⟩` of
/// its antenna; everything else goes to `out`.
pub fn reduce_to_kkings(input: &str, k: usize, codec: Codec, limits: &Limits) -> Result<ReductionInstance> {
    let kind = BuiltinKind::KKings { k, codec };
    let spec = make_builtin_specifier(kind)?;
    let target = Target::KKings { k, kind };
    let phi = match accept(input, codec, limits) {
        Some(phi) if phi.n >= kind.min_n() => phi,
        _ => return Ok(out_instance(target, &spec)),
    };
    let mut suffix = BitString::zeros(phi.n + 4 - k);
    suffix.extend_from(&BitString::ones(k - 2));
    let node = pair(kind.pairing(), &phi.code, &suffix);
    Ok(ReductionInstance {
        target,
        m: node.len(),
        node: InstanceNode::Bits(node),
        attachment: None,
        expected: Some(phi.forall_exists_value()),
    })
}

fn forall_exists_decoded(phi: &ForallExistsFormula, limits: &Limits) -> Result<DecodedFormula> {
    let code = encode_formula(&Formula::ForallExists(phi.clone()), Codec::TtFe, limits)?;
    Ok(decode_table(&code, Codec::TtFe).expect("encodings decode"))
}

fn bits_for(nodes: usize) -> usize {
    nodes.next_power_of_two().trailing_zeros().max(1) as usize
}

/// `T_φ` plus a chain of `k − 2` nodes ending in an arc to the potential
/// king, padded with sinks to a power of two and emitted as a GW circuit.
///
/// Chain node `c_1` is the designated node (the potential king itself when
/// `k = 2`). Consecutive chain nodes point forward `c_i → c_{i+1}`; all other
/// chain arcs point back towards `c_1`. `T_φ`'s nodes point to every chain
/// node except that `c_{k−2}` points to the potential king. Padding nodes are
/// pointed to by everything and ordered among themselves by index.
pub fn build_gw_antenna_instance(phi: &ForallExistsFormula, k: usize, limits: &Limits) -> Result<ReductionInstance> {
    if k < 2 {
        return Err(Error::invalid("k must be at least 2"));
    }
    let decoded = forall_exists_decoded(phi, limits)?;
    let t = build_subtournament_decoded(BuiltinKind::Pi2(Codec::TtFe), &decoded, limits)?;
    let base = t.num_nodes();
    let chain = k - 2;
    let real = base + chain;
    let width = bits_for(real);
    limits.check_vars(2 * width)?;
    let pk = t.potential_king();
    let g = t.tournament().graph();
    // 0..base: T_φ; base..real: c_1..c_{k-2}; real..: padding.
    let edge = |a: usize, b: usize| -> bool {
        match (a < base, b < base, a < real, b < real) {
            (true, true, _, _) => g.has_edge(a, b),
            (_, _, true, false) => true,
            (_, _, false, true) => false,
            (_, _, false, false) => a < b,
            (true, false, _, _) => !(b == real - 1 && a == pk),
            (false, true, _, _) => a == real - 1 && b == pk,
            (false, false, _, _) => {
                let (i, j) = (a - base, b - base);
                j == i + 1 || (i > j + 1)
            }
        }
    };
    let sg = table_to_circuit(width, |x, y| edge(x.to_index() as usize, y.to_index() as usize), limits)?;
    let designated = if chain == 0 { pk } else { base };
    Ok(ReductionInstance {
        target: Target::KingsGw { k },
        node: InstanceNode::Bits(BitString::from_index(designated as u64, width)),
        m: width,
        attachment: Some(Attachment::Gw(sg)),
        expected: Some(decoded.forall_exists_value()),
    })
}

/// A header node pointing to certificate `a` iff `φ(a)`, to all padding,
/// and beaten by every certificate it does not point to. Other arcs go from
/// the smaller index to the larger. The header is a 1-king iff `φ` is a
/// tautology.
pub fn reduce_taut_to_1king_gw(phi: &PropFormula, limits: &Limits) -> Result<ReductionInstance> {
    let n = phi.num_vars();
    limits.check_vars(n)?;
    let table = crate::formula::truth_table_of(phi, limits)?;
    let certs = 1usize << n;
    let width = n + 1;
    limits.check_vars(2 * width)?;
    // Node 0 is the header, 1..=2^n the certificates, the rest padding.
    let edge = |a: usize, b: usize| -> bool {
        match (a, b) {
            (0, b) if b <= certs => table.get(b - 1),
            (0, _) => true,
            (a, 0) if a <= certs => !table.get(a - 1),
            (_, 0) => false,
            (a, b) => a < b,
        }
    };
    let sg = table_to_circuit(width, |x, y| edge(x.to_index() as usize, y.to_index() as usize), limits)?;
    Ok(ReductionInstance {
        target: Target::KingsGw { k: 1 },
        node: InstanceNode::Bits(BitString::zeros(width)),
        m: width,
        attachment: Some(Attachment::Gw(sg)),
        expected: Some(table.is_tautology()),
    })
}

/// The 2-partite tournament deciding `∀x ∃y φ′(x·y)` by 2-kingship of `a`.
///
/// Both parts have `2^{n+1}` nodes, strings of length `n + 1`. Part 1 holds
/// `a = 0^{n+1}`, the x-nodes `1x` and padding (the other strings starting
/// with 0); part 2 holds the y-nodes `0y` and padding `1y`. Arcs: `a` beats
/// all of part 2; `0y → 1x` iff `φ′(x·y)`, else `1x → 0y`; x-nodes beat
/// part-2 padding; part-1 padding is beaten by all of part 2.
pub fn build_2partite_instance(phi: &ForallExistsFormula, limits: &Limits) -> Result<ReductionInstance> {
    let decoded = forall_exists_decoded(phi, limits)?;
    let n = decoded.n;
    let half = 1usize << n;
    let forward = |u: &JtNode, v: &JtNode| -> bool {
        let (a, b) = (u.s.to_index() as usize, v.s.to_index() as usize);
        match (a, a >= half, b >= half) {
            (0, _, _) => true,
            (_, true, false) => !decoded.eval_matrix(a - half, b),
            (_, true, true) => true,
            (_, false, _) => false,
        }
    };
    let jc = jt_from_fn(2, n + 1, forward, limits)?;
    Ok(ReductionInstance {
        target: Target::JtKings { k: 2, j: 2 },
        node: InstanceNode::Jt(JtNode::new(1, BitString::zeros(n + 1))),
        m: n + 1,
        attachment: Some(Attachment::Jt(jc)),
        expected: Some(decoded.forall_exists_value()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bs;

    fn lim() -> Limits {
        Limits::default()
    }

    fn fe(table: &str, n: usize) -> ForallExistsFormula {
        format!("fe:n={n}:tt:{table}").parse().unwrap()
    }

    #[test]
    fn kings_reduction_examples() {
        let r = reduce_to_kings("conp:ttplain".parse().unwrap(), "tt:11", &lim()).unwrap();
        assert_eq!(r.node, InstanceNode::Bits(bs("01011000")));
        assert_eq!((r.m, r.expected), (8, Some(true)));
        let r = reduce_to_kings("np:ttplain".parse().unwrap(), "tt:01", &lim()).unwrap();
        assert_eq!(r.node, InstanceNode::Bits(bs("000111000")));
        assert_eq!(r.m, 9);
        let pi2: BuiltinKind = "pi2:ttfe".parse().unwrap();
        let r = reduce_to_kings(pi2, "zzz", &lim()).unwrap();
        assert_eq!(r.expected, Some(false));
        assert_eq!(r.m, 12);
        assert!(!r.decide(&lim()).unwrap());
        // A plain formula is garbage to the ∀∃ codec.
        assert_eq!(reduce_to_kings(pi2, "x1", &lim()).unwrap().expected, Some(false));
        assert!(reduce_to_kings("max".parse().unwrap(), "x1", &lim()).is_err());
    }

    #[test]
    fn kkings_reduction_examples() {
        let a = reduce_to_kkings("fe:n=1:tt:1001", 2, Codec::TtFe, &lim()).unwrap();
        let b = reduce_to_kings("pi2:ttfe".parse().unwrap(), "fe:n=1:tt:1001", &lim()).unwrap();
        assert_eq!(a.node, b.node);
        let entry0 = Formula::ForallExists(crate::formula::catalog()[0].clone()).to_string();
        let r = reduce_to_kkings(&entry0, 3, Codec::Catalog, &lim()).unwrap();
        let expect = pair(crate::pairing::PairingVersion::V1, &bs("0000"), &bs("0001"));
        assert_eq!((r.node, r.m), (InstanceNode::Bits(expect), 13));
        let r = reduce_to_kkings("fe:n=1:tt:1001", 3, Codec::TtFe, &lim()).unwrap();
        assert_eq!(r.expected, Some(false));
        assert_eq!(
            r.node,
            InstanceNode::Bits(
                make_builtin_specifier(BuiltinKind::KKings {
                    k: 3,
                    codec: Codec::TtFe
                })
                .unwrap()
                .canonical_out()
            )
        );
    }

    #[test]
    fn antenna_examples() {
        for (table, k, want) in [("1001", 2, true), ("1001", 4, true), ("1000", 4, false)] {
            let r = build_gw_antenna_instance(&fe(table, 1), k, &lim()).unwrap();
            assert_eq!(r.expected, Some(want));
            assert_eq!(r.decide(&lim()).unwrap(), want, "{table} k={k}");
        }
    }

    #[test]
    fn one_king_examples() {
        for (table, want) in [("11", true), ("10", false), ("00", false)] {
            let phi: PropFormula = format!("tt:{table}").parse().unwrap();
            let r = reduce_taut_to_1king_gw(&phi, &lim()).unwrap();
            assert_eq!(r.decide(&lim()).unwrap(), want, "{table}");
        }
    }

    #[test]
    fn two_partite_examples() {
        for (table, want) in [("1001", true), ("1000", false)] {
            let r = build_2partite_instance(&fe(table, 1), &lim()).unwrap();
            assert_eq!(r.decide(&lim()).unwrap(), want, "{table}");
            let Some(Attachment::Jt(jc)) = &r.attachment else {
                panic!()
            };
            assert_eq!(jc.part_size(), 4);
        }
    }
}
