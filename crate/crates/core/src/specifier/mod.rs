//! Tournament family specifiers.
//!
//! A specifier is a commutative, selecting function on bit-strings; at every
//! length `m` it induces a tournament on `Σ^m` with `x → y` iff
//! `select(x, y) = x`.
//!
//! Besides the `max` specifier, four woven constructions are built in. Each
//! embeds one small tournament `T_φ` per decodable formula `φ` into the
//! induced tournament at the length of `φ`'s nodes, plus bookkeeping nodes
//! (the all-zero string, one marker per formula, antenna chains for
//! `kkings`, two special nodes for `np`), and arranges the arcs between the
//! pieces by an ordered list of guards so that kingship of
//! `⟨φ, 0^{n+2}⟩` is decided inside `T_φ` alone:
//!
//! | name           | pairing | formulas     | `T_φ` decides          |
//! |----------------|---------|--------------|------------------------|
//! | `pi2:<codec>`  | V1      | ∀∃           | truth                  |
//! | `conp:ttplain` | V1      | propositional | tautology             |
//! | `np:ttplain`   | V2      | propositional | satisfiability        |
//! | `kkings:<k>:<codec>` | V1 | ∀∃ with `n > k − 2` | truth, via `k`-kingship of an antenna tip |
//!
//! Strings of different lengths are ordered by the rule that the shorter one
//! wins.

mod classify;
mod guards;
mod subtournament;
mod validate;

use std::fmt;
use std::str::FromStr;

pub use classify::{classify_node, NodeClass};
pub use guards::GuardId;
pub use subtournament::{build_subtournament, build_subtournament_decoded, LabeledTournament, SubKind};
pub use validate::{
    check_associativity, check_no_bridge, check_subtournament_embedding, induced_digraph, induced_graph,
    specifier_k_king, specifier_k_king_bfs, validate_specifier, AssociativityReport, Bridge, CheckMode,
    ValidationReport, Violation, ViolationKind,
};

pub use classify::LengthContext;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::formula::Codec;
use crate::pairing::PairingVersion;
use crate::Limits;

/// A two-argument selection rule inducing one tournament per length.
///
/// `select` must be total; validity (commutativity, selection) is checked
/// by [`validate_specifier`], not assumed.
pub trait TournamentFamily: Sync {
    fn name(&self) -> String;

    fn select(&self, x: &BitString, y: &BitString) -> BitString;

    /// Pairwise access to length `m`, by node index (`i` is the string with
    /// binary value `i`). The default calls [`TournamentFamily::select`].
    fn length_view(&self, m: usize, limits: &Limits) -> Result<Box<dyn LengthView + '_>> {
        limits.check_pow2_nodes(m)?;
        Ok(Box::new(SelectView { spec: self, m }))
    }

    /// Whether the family promises that the shorter of two strings of
    /// different lengths is selected.
    fn shorter_wins(&self) -> bool {
        false
    }

    /// Guard bitmask for an equal-length ordered pair, when the family is
    /// defined by a guard list.
    fn pair_guard_mask(&self, _x: &BitString, _y: &BitString) -> Option<u32> {
        None
    }

    /// Strings of length `m` that sampled checks should draw more often than
    /// uniform sampling would, e.g. the rare non-`Other` nodes of a woven
    /// specifier.
    fn notable_strings(&self, _m: usize, _limits: &Limits) -> Vec<BitString> {
        Vec::new()
    }
}

/// Index-level view of one length of a tournament family.
pub trait LengthView: Sync {
    fn len_bits(&self) -> usize;

    /// Index of `select(a, b)`, or `None` when the result is neither input.
    fn select_idx(&self, a: usize, b: usize) -> Option<usize>;

    /// Bitmask of guard rules matching the ordered pair, for specifiers that
    /// are defined by guard lists.
    fn guard_mask(&self, _a: usize, _b: usize) -> Option<u32> {
        None
    }

    fn beats(&self, a: usize, b: usize) -> bool {
        self.select_idx(a, b) == Some(a)
    }
}

struct SelectView<'a, S: ?Sized> {
    spec: &'a S,
    m: usize,
}

impl<S: TournamentFamily + ?Sized> LengthView for SelectView<'_, S> {
    fn len_bits(&self) -> usize {
        self.m
    }

    fn select_idx(&self, a: usize, b: usize) -> Option<usize> {
        let x = BitString::from_index(a as u64, self.m);
        let y = BitString::from_index(b as u64, self.m);
        let r = self.spec.select(&x, &y);
        if r == x {
            Some(a)
        } else if r == y {
            Some(b)
        } else {
            None
        }
    }
}

/// A two-argument 0/1 edge rule inducing one digraph per length.
pub trait GraphFamily: Sync {
    fn name(&self) -> String;

    fn edge(&self, x: &BitString, y: &BitString) -> bool;
}

/// A graph family given by a closure.
pub struct FnGraphFamily<F> {
    name: String,
    edge: F,
}

impl<F: Fn(&BitString, &BitString) -> bool + Sync> FnGraphFamily<F> {
    pub fn new(name: impl Into<String>, edge: F) -> Self {
        Self {
            name: name.into(),
            edge,
        }
    }
}

impl<F: Fn(&BitString, &BitString) -> bool + Sync> GraphFamily for FnGraphFamily<F> {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn edge(&self, x: &BitString, y: &BitString) -> bool {
        (self.edge)(x, y)
    }
}

/// A tournament family given by a closure; validity is not assumed.
pub struct FnTournamentFamily<F> {
    name: String,
    select: F,
}

impl<F: Fn(&BitString, &BitString) -> BitString + Sync> FnTournamentFamily<F> {
    pub fn new(name: impl Into<String>, select: F) -> Self {
        Self {
            name: name.into(),
            select,
        }
    }
}

impl<F: Fn(&BitString, &BitString) -> BitString + Sync> TournamentFamily for FnTournamentFamily<F> {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn select(&self, x: &BitString, y: &BitString) -> BitString {
        (self.select)(x, y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinKind {
    Max,
    Pi2(Codec),
    Conp(Codec),
    Np(Codec),
    KKings { k: usize, codec: Codec },
}

impl BuiltinKind {
    pub fn codec(self) -> Option<Codec> {
        match self {
            BuiltinKind::Max => None,
            BuiltinKind::Pi2(c) | BuiltinKind::Conp(c) | BuiltinKind::Np(c) => Some(c),
            BuiltinKind::KKings { codec, .. } => Some(codec),
        }
    }

    pub fn pairing(self) -> PairingVersion {
        match self {
            BuiltinKind::Np(_) => PairingVersion::V2,
            _ => PairingVersion::V1,
        }
    }

    pub fn sub_kind(self) -> Option<SubKind> {
        match self {
            BuiltinKind::Max => None,
            BuiltinKind::Pi2(_) | BuiltinKind::KKings { .. } => Some(SubKind::Pi2),
            BuiltinKind::Conp(_) => Some(SubKind::Conp),
            BuiltinKind::Np(_) => Some(SubKind::Np),
        }
    }

    /// Length of antenna chains (`k − 2` for `kkings`, otherwise 0).
    pub fn antennas(self) -> usize {
        match self {
            BuiltinKind::KKings { k, .. } => k - 2,
            _ => 0,
        }
    }

    /// Smallest admissible formula parameter `n`.
    pub fn min_n(self) -> usize {
        match self {
            BuiltinKind::KKings { k, .. } => k - 1,
            _ => 1,
        }
    }

    /// Length of the nodes belonging to formulas with parameter `n`, if such
    /// formulas exist for this kind.
    pub fn length_for_n(self, n: usize) -> Option<usize> {
        if n < self.min_n() {
            return None;
        }
        let code = self.codec()?.code_len(n)?;
        Some(self.pairing().paired_len(code, n + 2))
    }

    fn validate(self) -> Result<Self> {
        let ok = match self {
            BuiltinKind::Max => true,
            BuiltinKind::Pi2(c) => c.is_forall_exists(),
            BuiltinKind::Conp(c) | BuiltinKind::Np(c) => !c.is_forall_exists(),
            BuiltinKind::KKings { k, codec } => {
                if k < 2 {
                    return Err(Error::invalid("kkings needs k ≥ 2"));
                }
                codec.is_forall_exists()
            }
        };
        if !ok {
            return Err(Error::invalid(format!(
                "codec {} does not fit specifier {self}",
                self.codec().unwrap()
            )));
        }
        Ok(self)
    }
}

impl fmt::Display for BuiltinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinKind::Max => f.write_str("max"),
            BuiltinKind::Pi2(c) => write!(f, "pi2:{c}"),
            BuiltinKind::Conp(c) => write!(f, "conp:{c}"),
            BuiltinKind::Np(c) => write!(f, "np:{c}"),
            BuiltinKind::KKings { k, codec } => write!(f, "kkings:{k}:{codec}"),
        }
    }
}

impl FromStr for BuiltinKind {
    type Err = Error;

    /// `max`, `pi2:<codec>`, `conp:<codec>`, `np:<codec>`, `kkings:<k>:<codec>`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let kind = match parts.as_slice() {
            ["max"] => BuiltinKind::Max,
            ["pi2", c] => BuiltinKind::Pi2(c.parse()?),
            ["conp", c] => BuiltinKind::Conp(c.parse()?),
            ["np", c] => BuiltinKind::Np(c.parse()?),
            ["kkings", k, c] => BuiltinKind::KKings {
                k: k.parse().map_err(|_| Error::invalid(format!("bad k `{k}`")))?,
                codec: c.parse()?,
            },
            _ => return Err(Error::invalid(format!("unknown specifier `{s}`"))),
        };
        kind.validate()
    }
}

/// One of the built-in specifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BuiltinSpecifier {
    kind: BuiltinKind,
}

pub fn make_builtin_specifier(kind: BuiltinKind) -> Result<BuiltinSpecifier> {
    Ok(BuiltinSpecifier { kind: kind.validate()? })
}

impl BuiltinSpecifier {
    pub fn kind(&self) -> BuiltinKind {
        self.kind
    }

    /// Smallest length at which some formula decodes, if any does below
    /// length 4096.
    pub fn first_formula_length(&self) -> Option<usize> {
        (1..=12)
            .filter_map(|n| self.kind.length_for_n(n))
            .filter(|&m| m < 4096)
            .min()
    }

    /// The fixed non-king used for inputs that are not formulas: the smallest
    /// `Other` string at the first length where a formula decodes (length 1
    /// when none ever does).
    pub fn canonical_out(&self) -> BitString {
        let m = self.first_formula_length().unwrap_or(1);
        let mut z = BitString::zeros(m);
        loop {
            if classify_node(self.kind, &z) == NodeClass::Other {
                return z;
            }
            z = z.successor().expect("every length ≥ 1 has an Other string");
        }
    }

    /// All strings of length `m`, classified.
    pub fn length_context(&self, m: usize, limits: &Limits) -> Result<LengthContext> {
        if self.kind == BuiltinKind::Max {
            return Err(Error::invalid("max has no node classes"));
        }
        limits.check_pow2_nodes(m)?;
        Ok(LengthContext::new(self.kind, m))
    }

    /// Ordered-pair guard test at one length, on classified nodes.
    fn beats_same_length(&self, x: &BitString, y: &BitString) -> bool {
        if self.kind == BuiltinKind::Max {
            return x >= y;
        }
        self.pair_guard_mask(x, y).is_some_and(|mask| mask != 0)
    }
}

impl TournamentFamily for BuiltinSpecifier {
    fn name(&self) -> String {
        self.kind.to_string()
    }

    fn select(&self, x: &BitString, y: &BitString) -> BitString {
        let x_wins = match x.len().cmp(&y.len()) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => x == y || self.beats_same_length(x, y),
        };
        if x_wins {
            x.clone()
        } else {
            y.clone()
        }
    }

    fn length_view(&self, m: usize, limits: &Limits) -> Result<Box<dyn LengthView + '_>> {
        limits.check_pow2_nodes(m)?;
        if self.kind == BuiltinKind::Max {
            return Ok(Box::new(MaxView { m }));
        }
        Ok(Box::new(LengthContext::new(self.kind, m)))
    }

    fn shorter_wins(&self) -> bool {
        true
    }

    fn pair_guard_mask(&self, x: &BitString, y: &BitString) -> Option<u32> {
        if self.kind == BuiltinKind::Max || x.len() != y.len() {
            return None;
        }
        if x == y {
            return Some(GuardId::Same.bit());
        }
        let ctx = LengthContext::for_pair(self.kind, x, y);
        let (a, b) = if x < y { (0, 1) } else { (1, 0) };
        Some(ctx.guard_mask(a, b))
    }

    fn notable_strings(&self, m: usize, limits: &Limits) -> Vec<BitString> {
        match self.length_context(m, limits) {
            Ok(ctx) => ctx
                .nodes_where(|c| *c != NodeClass::Other)
                .into_iter()
                .map(|v| BitString::from_index(v as u64, m))
                .collect(),
            Err(_) => Vec::new(),
        }
    }
}

struct MaxView {
    m: usize,
}

impl LengthView for MaxView {
    fn len_bits(&self) -> usize {
        self.m
    }

    fn select_idx(&self, a: usize, b: usize) -> Option<usize> {
        Some(a.max(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bs;

    fn spec(name: &str) -> BuiltinSpecifier {
        make_builtin_specifier(name.parse().unwrap()).unwrap()
    }

    #[test]
    fn names_roundtrip() {
        for name in [
            "max",
            "pi2:ttfe",
            "conp:ttplain",
            "np:ttplain",
            "kkings:3:catalog",
            "kkings:2:ttfe",
        ] {
            assert_eq!(spec(name).name(), name);
        }
        assert!("kkings:1:catalog".parse::<BuiltinKind>().is_err());
        assert!("pi2:ttplain".parse::<BuiltinKind>().is_err());
        assert!("conp:ttfe".parse::<BuiltinKind>().is_err());
        assert!("foo".parse::<BuiltinKind>().is_err());
    }

    #[test]
    fn select_examples() {
        assert_eq!(spec("max").select(&bs("01"), &bs("10")), bs("10"));
        let pi2 = spec("pi2:ttfe");
        let zero = BitString::zeros(12);
        let marker = bs("010000011010");
        assert_eq!(pi2.select(&zero, &marker), zero);
        assert_eq!(pi2.select(&marker, &zero), zero);
        let member = bs("010000011000");
        assert_eq!(pi2.select(&member, &zero), member);
        assert_eq!(pi2.select(&bs("1"), &bs("00")), bs("1"));
        assert_eq!(pi2.select(&bs("00"), &bs("1")), bs("1"));
        // Two Other strings: the smaller wins.
        assert_eq!(pi2.select(&bs("111111111111"), &bs("111111111110")), bs("111111111110"));

        let np = spec("np:ttplain");
        let b = bs("100000000");
        for z in BitString::all_of_length(9) {
            if z != bs("000000001") {
                assert_eq!(np.select(&b, &z), b, "{z}");
            } else {
                assert_eq!(np.select(&b, &z), z);
            }
        }
    }

    #[test]
    fn lengths_and_out() {
        assert_eq!(spec("pi2:ttfe").first_formula_length(), Some(12));
        assert_eq!(spec("conp:ttplain").first_formula_length(), Some(8));
        assert_eq!(spec("np:ttplain").first_formula_length(), Some(9));
        assert_eq!(spec("kkings:3:catalog").first_formula_length(), Some(13));
        assert_eq!(spec("kkings:4:catalog").first_formula_length(), None);
        assert_eq!(spec("kkings:4:ttfe").first_formula_length(), Some(134));
        assert_eq!(spec("kkings:4:catalog").canonical_out(), bs("1"));
        for name in ["pi2:ttfe", "conp:ttplain", "np:ttplain", "kkings:3:catalog"] {
            let s = spec(name);
            let out = s.canonical_out();
            assert_eq!(Some(out.len()), s.first_formula_length());
            assert_eq!(classify_node(s.kind(), &out), NodeClass::Other);
        }
    }
}
