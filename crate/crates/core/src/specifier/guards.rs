//! Guard lists for the woven specifiers.
//!
//! Each guard is an independent predicate on an ordered pair of classified
//! nodes; `z` beats `z′` iff some guard matches `(z, z′)`. Predicates are
//! evaluated separately (not as one `match`) so that validation can count how
//! many of them fire and detect overlapping or missing cases.

use std::fmt;

use super::classify::Cls;
use super::subtournament::sub_edge;
use super::{BuiltinKind, SubKind};
use crate::formula::DecodedFormula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GuardId {
    Same,
    ZeroMarker,
    ZeroOther,
    MarkerMarker,
    MarkerOwnMember,
    MarkerOther,
    MemberZeroOther,
    MemberForeignMarker,
    MemberInternal,
    MemberCross,
    MemberAntenna,
    PkAntenna,
    AntennaDown,
    AntennaSameLevel,
    AntennaLevels,
    AntennaOther,
    OtherOther,
    SpecialABeats,
    BeatsSpecialA,
    SpecialBBeats,
}

const ALL: [GuardId; 20] = [
    GuardId::Same,
    GuardId::ZeroMarker,
    GuardId::ZeroOther,
    GuardId::MarkerMarker,
    GuardId::MarkerOwnMember,
    GuardId::MarkerOther,
    GuardId::MemberZeroOther,
    GuardId::MemberForeignMarker,
    GuardId::MemberInternal,
    GuardId::MemberCross,
    GuardId::MemberAntenna,
    GuardId::PkAntenna,
    GuardId::AntennaDown,
    GuardId::AntennaSameLevel,
    GuardId::AntennaLevels,
    GuardId::AntennaOther,
    GuardId::OtherOther,
    GuardId::SpecialABeats,
    GuardId::BeatsSpecialA,
    GuardId::SpecialBBeats,
];

const BASE: [GuardId; 11] = [
    GuardId::Same,
    GuardId::ZeroMarker,
    GuardId::ZeroOther,
    GuardId::MarkerMarker,
    GuardId::MarkerOwnMember,
    GuardId::MarkerOther,
    GuardId::MemberZeroOther,
    GuardId::MemberForeignMarker,
    GuardId::MemberInternal,
    GuardId::MemberCross,
    GuardId::OtherOther,
];

impl GuardId {
    pub fn bit(self) -> u32 {
        1 << self as u32
    }

    /// Guards whose bits are set in `mask`, in declaration order.
    pub fn from_mask(mask: u32) -> Vec<GuardId> {
        ALL.iter().copied().filter(|g| mask & g.bit() != 0).collect()
    }

    /// The guard list of a built-in, in evaluation order.
    pub fn list(kind: BuiltinKind) -> Vec<GuardId> {
        match kind {
            BuiltinKind::Max => Vec::new(),
            BuiltinKind::Pi2(_) | BuiltinKind::Conp(_) => BASE.to_vec(),
            BuiltinKind::Np(_) => {
                let mut v = BASE.to_vec();
                v.extend([GuardId::SpecialABeats, GuardId::BeatsSpecialA, GuardId::SpecialBBeats]);
                v
            }
            BuiltinKind::KKings { .. } => {
                let mut v = BASE[..10].to_vec();
                v.extend([
                    GuardId::MemberAntenna,
                    GuardId::PkAntenna,
                    GuardId::AntennaDown,
                    GuardId::AntennaSameLevel,
                    GuardId::AntennaLevels,
                    GuardId::AntennaOther,
                    GuardId::OtherOther,
                ]);
                v
            }
        }
    }

    /// 1-based position in `kind`'s guard list.
    pub fn number(self, kind: BuiltinKind) -> Option<usize> {
        Self::list(kind).iter().position(|&g| g == self).map(|i| i + 1)
    }

    pub fn description(self) -> &'static str {
        match self {
            GuardId::Same => "z = z′",
            GuardId::ZeroMarker => "z = 0^m, z′ a marker",
            GuardId::ZeroOther => "z = 0^m, z′ antenna or Other",
            GuardId::MarkerMarker => "markers of φ < ψ",
            GuardId::MarkerOwnMember => "marker of φ over V_φ",
            GuardId::MarkerOther => "marker over antenna or Other",
            GuardId::MemberZeroOther => "V_φ over 0^m or Other",
            GuardId::MemberForeignMarker => "V_φ over the marker of ψ ≠ φ",
            GuardId::MemberInternal => "edge of T_φ",
            GuardId::MemberCross => "V_φ over V_ψ, φ < ψ",
            GuardId::MemberAntenna => "V_φ minus its potential king over antennas",
            GuardId::PkAntenna => "potential king over antennas but its own first",
            GuardId::AntennaDown => "antenna step towards the potential king",
            GuardId::AntennaSameLevel => "antennas on one level, φ < ψ",
            GuardId::AntennaLevels => "lower antenna level over higher",
            GuardId::AntennaOther => "antenna over Other",
            GuardId::OtherOther => "Other strings, smaller first",
            GuardId::SpecialABeats => "0^{m−1}1 over 10^{m−1}, Other and markers",
            GuardId::BeatsSpecialA => "0^m and V_φ over 0^{m−1}1",
            GuardId::SpecialBBeats => "10^{m−1} over all but 0^{m−1}1",
        }
    }
}

impl fmt::Display for GuardId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Bitmask of the guards matching `(a, b)`.
///
/// `a_less` says whether `a` precedes `b` lexicographically; formula indices
/// inside `Cls` follow the order of encodings.
pub(crate) fn guard_mask(
    kind: BuiltinKind,
    sub: SubKind,
    formulas: &[DecodedFormula],
    a: Cls,
    b: Cls,
    same: bool,
    a_less: bool,
) -> u32 {
    use Cls::*;
    let kk = matches!(kind, BuiltinKind::KKings { .. });
    let np = sub == SubKind::Np;
    let mut mask = 0u32;
    let mut hit = |g: GuardId, cond: bool| {
        if cond {
            mask |= g.bit();
        }
    };
    let is_antenna = |c: Cls| matches!(c, Antenna(..));
    let is_other = |c: Cls| c == Other;

    hit(GuardId::Same, same);
    if same {
        return mask;
    }
    hit(GuardId::ZeroMarker, a == Zero && matches!(b, Marker(_)));
    hit(GuardId::ZeroOther, a == Zero && (is_other(b) || is_antenna(b)));
    hit(GuardId::MarkerMarker, matches!((a, b), (Marker(p), Marker(q)) if p < q));
    hit(
        GuardId::MarkerOwnMember,
        matches!((a, b), (Marker(p), Member(q, _)) if p == q),
    );
    hit(
        GuardId::MarkerOther,
        matches!(a, Marker(_)) && (is_other(b) || is_antenna(b)),
    );
    hit(
        GuardId::MemberZeroOther,
        matches!(a, Member(..)) && (b == Zero || is_other(b)),
    );
    hit(
        GuardId::MemberForeignMarker,
        matches!((a, b), (Member(p, _), Marker(q)) if p != q),
    );
    if let (Member(p, s), Member(q, t)) = (a, b) {
        if p == q {
            let phi = &formulas[p as usize];
            let internal = if s < t {
                sub_edge(sub, phi, s, t)
            } else {
                !sub_edge(sub, phi, t, s)
            };
            hit(GuardId::MemberInternal, internal);
        }
        hit(GuardId::MemberCross, p < q);
    }
    if kk {
        hit(
            GuardId::MemberAntenna,
            matches!(a, Member(_, s) if s != 0) && is_antenna(b),
        );
        hit(
            GuardId::PkAntenna,
            matches!((a, b), (Member(p, 0), Antenna(q, j)) if !(p == q && j == 1)),
        );
        hit(
            GuardId::AntennaDown,
            matches!((a, b), (Antenna(p, i), Antenna(q, j)) if p == q && j + 1 == i)
                || matches!((a, b), (Antenna(p, 1), Member(q, 0)) if p == q),
        );
        hit(
            GuardId::AntennaSameLevel,
            matches!((a, b), (Antenna(p, i), Antenna(q, j)) if i == j && p < q),
        );
        // Excluding the own next level keeps this guard from contradicting
        // `AntennaDown` on the pair (antenna(φ, i), antenna(φ, i + 1)).
        hit(
            GuardId::AntennaLevels,
            matches!((a, b), (Antenna(p, i), Antenna(q, j)) if i < j && !(p == q && j == i + 1)),
        );
        hit(GuardId::AntennaOther, is_antenna(a) && is_other(b));
    }
    hit(GuardId::OtherOther, is_other(a) && is_other(b) && a_less);
    if np {
        hit(
            GuardId::SpecialABeats,
            a == SpecialA && (b == SpecialB || is_other(b) || matches!(b, Marker(_))),
        );
        hit(
            GuardId::BeatsSpecialA,
            (a == Zero || matches!(a, Member(..))) && b == SpecialA,
        );
        hit(GuardId::SpecialBBeats, a == SpecialB && b != SpecialA);
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Codec;

    #[test]
    fn numbering_per_kind() {
        let pi2 = BuiltinKind::Pi2(Codec::TtFe);
        assert_eq!(GuardId::list(pi2).len(), 11);
        assert_eq!(GuardId::OtherOther.number(pi2), Some(11));
        let np = BuiltinKind::Np(Codec::TtPlain);
        assert_eq!(GuardId::SpecialABeats.number(np), Some(12));
        assert_eq!(GuardId::SpecialBBeats.number(np), Some(14));
        let kk = BuiltinKind::KKings {
            k: 3,
            codec: Codec::Catalog,
        };
        assert_eq!(GuardId::list(kk).len(), 17);
        assert_eq!(GuardId::AntennaDown.number(kk), Some(13));
        assert_eq!(GuardId::AntennaLevels.number(pi2), None);
    }

    #[test]
    fn mask_roundtrip() {
        let m = GuardId::ZeroOther.bit() | GuardId::SpecialBBeats.bit();
        assert_eq!(GuardId::from_mask(m), vec![GuardId::ZeroOther, GuardId::SpecialBBeats]);
    }
}
