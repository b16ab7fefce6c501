//! Node classification for the woven specifiers, and per-length tables of
//! classified nodes.

use std::collections::HashMap;

use rayon::prelude::*;

use super::guards::guard_mask;
use super::{BuiltinKind, LengthView, SubKind};
use crate::bits::BitString;
use crate::formula::{decode_table, DecodedFormula};
use crate::pairing::unpair;

/// The role a string plays in a woven specifier at its length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeClass {
    Zero,
    Marker {
        phi: DecodedFormula,
    },
    /// `⟨φ, 0^{n+2−level} 1^level⟩` for `1 ≤ level ≤ k − 2`.
    Antenna {
        phi: DecodedFormula,
        level: usize,
    },
    /// `⟨φ, suffix⟩ ∈ V_φ`.
    Member {
        phi: DecodedFormula,
        suffix: BitString,
    },
    /// `0^{m−1}1` (np only).
    SpecialA,
    /// `10^{m−1}` (np only).
    SpecialB,
    Other,
}

impl NodeClass {
    pub fn formula(&self) -> Option<&DecodedFormula> {
        match self {
            NodeClass::Marker { phi } | NodeClass::Antenna { phi, .. } | NodeClass::Member { phi, .. } => Some(phi),
            _ => None,
        }
    }

    pub fn is_potential_king(&self) -> bool {
        matches!(self, NodeClass::Member { suffix, .. } if suffix.is_all_zeros())
    }
}

enum Shape {
    Marker,
    Antenna(usize),
    Member(u64),
}

enum Raw {
    Zero,
    SpecialA,
    SpecialB,
    Other,
    Formula(DecodedFormula, Shape),
}

fn classify_raw(kind: BuiltinKind, sub: SubKind, z: &BitString) -> Raw {
    let m = z.len();
    if z.is_all_zeros() {
        return Raw::Zero;
    }
    if sub == SubKind::Np && m >= 2 {
        let bits = z.bits();
        if bits[m - 1] && bits[..m - 1].iter().all(|b| !b) {
            return Raw::SpecialA;
        }
        if bits[0] && bits[1..].iter().all(|b| !b) {
            return Raw::SpecialB;
        }
    }
    let codec = kind.codec().expect("woven kinds have a codec");
    let Some((code, suffix)) = unpair(kind.pairing(), z) else {
        return Raw::Other;
    };
    let Some(phi) = decode_table(&code, codec) else {
        return Raw::Other;
    };
    let n = phi.n;
    if n < kind.min_n() || suffix.len() != n + 2 || n + 2 >= 64 {
        return Raw::Other;
    }
    let s = suffix.to_index();
    let shape = if sub.is_member_suffix(n, s) {
        Shape::Member(s)
    } else if s == 1 << n {
        Shape::Marker
    } else if let Some(level) = (1..=kind.antennas()).find(|&i| s == (1 << i) - 1) {
        Shape::Antenna(level)
    } else {
        return Raw::Other;
    };
    Raw::Formula(phi, shape)
}

/// Classifies `z` under a built-in. Under `max` every string is `Other`.
pub fn classify_node(kind: BuiltinKind, z: &BitString) -> NodeClass {
    let Some(sub) = kind.sub_kind() else {
        return NodeClass::Other;
    };
    match classify_raw(kind, sub, z) {
        Raw::Zero => NodeClass::Zero,
        Raw::SpecialA => NodeClass::SpecialA,
        Raw::SpecialB => NodeClass::SpecialB,
        Raw::Other => NodeClass::Other,
        Raw::Formula(phi, Shape::Marker) => NodeClass::Marker { phi },
        Raw::Formula(phi, Shape::Antenna(level)) => NodeClass::Antenna { phi, level },
        Raw::Formula(phi, Shape::Member(s)) => {
            let suffix = BitString::from_index(s, phi.n + 2);
            NodeClass::Member { phi, suffix }
        }
    }
}

/// Compact class: formulas are referred to by their rank among the formulas
/// present at the length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Cls {
    Zero,
    SpecialA,
    SpecialB,
    Other,
    Marker(u32),
    Antenna(u32, u32),
    Member(u32, u64),
}

/// Every node of one length of a woven specifier, classified once.
///
/// Node `i` is the string whose binary value is `i`, so index order is
/// lexicographic order, except for contexts built by `for_pair`, which hold
/// just two strings, smaller first.
pub struct LengthContext {
    kind: BuiltinKind,
    sub: SubKind,
    m: usize,
    classes: Vec<Cls>,
    formulas: Vec<DecodedFormula>,
}

impl LengthContext {
    /// Classifies all `2^m` strings; the caller checks the node cap.
    pub(crate) fn new(kind: BuiltinKind, m: usize) -> Self {
        let raws: Vec<Raw> = (0..1u64 << m)
            .into_par_iter()
            .map(|i| classify_raw(kind, kind.sub_kind().unwrap(), &BitString::from_index(i, m)))
            .collect();
        Self::from_raws(kind, m, raws)
    }

    /// A two-node context on `x` and `y` (equal lengths), smaller string
    /// first.
    pub(crate) fn for_pair(kind: BuiltinKind, x: &BitString, y: &BitString) -> Self {
        let sub = kind.sub_kind().unwrap();
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        let raws = vec![classify_raw(kind, sub, lo), classify_raw(kind, sub, hi)];
        Self::from_raws(kind, x.len(), raws)
    }

    fn from_raws(kind: BuiltinKind, m: usize, raws: Vec<Raw>) -> Self {
        let mut formulas: Vec<DecodedFormula> = raws
            .iter()
            .filter_map(|r| match r {
                Raw::Formula(phi, _) => Some(phi.clone()),
                _ => None,
            })
            .collect();
        formulas.sort();
        formulas.dedup_by(|a, b| a.code == b.code);
        let rank: HashMap<BitString, u32> = formulas
            .iter()
            .enumerate()
            .map(|(i, f)| (f.code.clone(), i as u32))
            .collect();
        let classes = raws
            .into_iter()
            .map(|r| match r {
                Raw::Zero => Cls::Zero,
                Raw::SpecialA => Cls::SpecialA,
                Raw::SpecialB => Cls::SpecialB,
                Raw::Other => Cls::Other,
                Raw::Formula(phi, shape) => {
                    let p = rank[&phi.code];
                    match shape {
                        Shape::Marker => Cls::Marker(p),
                        Shape::Antenna(i) => Cls::Antenna(p, i as u32),
                        Shape::Member(s) => Cls::Member(p, s),
                    }
                }
            })
            .collect();
        Self {
            kind,
            sub: kind.sub_kind().unwrap(),
            m,
            classes,
            formulas,
        }
    }

    pub fn kind(&self) -> BuiltinKind {
        self.kind
    }

    pub fn num_nodes(&self) -> usize {
        self.classes.len()
    }

    /// Formulas with nodes at this length, in encoding order.
    pub fn formulas(&self) -> &[DecodedFormula] {
        &self.formulas
    }

    pub fn class_of(&self, v: usize) -> NodeClass {
        match self.classes[v] {
            Cls::Zero => NodeClass::Zero,
            Cls::SpecialA => NodeClass::SpecialA,
            Cls::SpecialB => NodeClass::SpecialB,
            Cls::Other => NodeClass::Other,
            Cls::Marker(p) => NodeClass::Marker {
                phi: self.formulas[p as usize].clone(),
            },
            Cls::Antenna(p, i) => NodeClass::Antenna {
                phi: self.formulas[p as usize].clone(),
                level: i as usize,
            },
            Cls::Member(p, s) => {
                let phi = self.formulas[p as usize].clone();
                let suffix = BitString::from_index(s, phi.n + 2);
                NodeClass::Member { phi, suffix }
            }
        }
    }

    /// Rank of the formula owning node `v`, if any.
    pub fn formula_rank(&self, v: usize) -> Option<usize> {
        match self.classes[v] {
            Cls::Marker(p) | Cls::Antenna(p, _) | Cls::Member(p, _) => Some(p as usize),
            _ => None,
        }
    }

    /// Nodes of `V_φ` for the formula of rank `p`, ascending.
    pub fn members_of(&self, p: usize) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&v| matches!(self.classes[v], Cls::Member(q, _) if q as usize == p))
            .collect()
    }

    pub fn potential_king_of(&self, p: usize) -> Option<usize> {
        (0..self.classes.len()).find(|&v| self.classes[v] == Cls::Member(p as u32, 0))
    }

    pub fn nodes_where(&self, pred: impl Fn(&NodeClass) -> bool) -> Vec<usize> {
        (0..self.classes.len()).filter(|&v| pred(&self.class_of(v))).collect()
    }

    pub fn is_member(&self, v: usize) -> bool {
        matches!(self.classes[v], Cls::Member(..))
    }

    /// Guards matching the ordered pair `(a, b)`.
    pub fn guard_mask(&self, a: usize, b: usize) -> u32 {
        guard_mask(
            self.kind,
            self.sub,
            &self.formulas,
            self.classes[a],
            self.classes[b],
            a == b,
            a < b,
        )
    }
}

impl LengthView for LengthContext {
    fn len_bits(&self) -> usize {
        self.m
    }

    fn select_idx(&self, a: usize, b: usize) -> Option<usize> {
        if a == b || LengthContext::guard_mask(self, a, b) != 0 {
            Some(a)
        } else {
            Some(b)
        }
    }

    fn guard_mask(&self, a: usize, b: usize) -> Option<u32> {
        Some(LengthContext::guard_mask(self, a, b))
    }
}
