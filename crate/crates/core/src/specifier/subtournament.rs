//! The per-formula tournaments `T_φ`.
//!
//! Nodes are identified by their suffix `z ∈ Σ^{n+2}`, held as an integer
//! (`z` read in binary). For `z < z′` the arc goes `z → z′` iff one of the
//! listed rules of the kind matches, otherwise `z′ → z`.

use crate::bits::BitString;
use crate::digraph::Tournament;
use crate::error::{Error, Result};
use crate::formula::{decode_table, encode_formula, DecodedFormula, Formula};
use crate::pairing::pair;
use crate::Limits;

use super::BuiltinKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubKind {
    /// Layers `0^{n+2}`, `10y`, `11x`; decides ∀∃-truth.
    Pi2,
    /// Layers `0^{n+2}`, `100^n`, `11x`; decides tautology.
    Conp,
    /// Layers `0^{n+2}`, `001^n`, `10x`, `110^n`, `1^{n+2}`; decides
    /// satisfiability.
    Np,
}

impl SubKind {
    pub fn is_member_suffix(self, n: usize, s: u64) -> bool {
        let top = s >> n;
        match self {
            SubKind::Pi2 => s == 0 || top >= 2,
            SubKind::Conp => s == 0 || s == 2 << n || top == 3,
            SubKind::Np => s == 0 || s == (1 << n) - 1 || top == 2 || s == 3 << n || s == (1 << (n + 2)) - 1,
        }
    }

    /// Member suffixes in ascending order.
    pub fn member_suffixes(self, n: usize) -> Vec<u64> {
        (0..1u64 << (n + 2)).filter(|&s| self.is_member_suffix(n, s)).collect()
    }

    pub fn node_count(self, n: usize) -> usize {
        match self {
            SubKind::Pi2 => (1 << (n + 1)) + 1,
            SubKind::Conp => (1 << n) + 2,
            SubKind::Np => (1 << n) + 4,
        }
    }
}

/// Whether `s → t` in `T_φ`, for member suffixes `s < t`.
pub(crate) fn sub_edge(sub: SubKind, phi: &DecodedFormula, s: u64, t: u64) -> bool {
    debug_assert!(s < t);
    let n = phi.n;
    let low = |v: u64| (v & ((1 << n) - 1)) as usize;
    let (ts, tt) = (s >> n, t >> n);
    match sub {
        SubKind::Pi2 => {
            (s == 0 && tt == 2)
                || (ts == 2 && tt == 3 && phi.eval_matrix(low(t), low(s)))
                || (ts == 2 && tt == 2)
                || (ts == 3 && tt == 3)
        }
        SubKind::Conp => {
            let hundred = 2 << n;
            (s == 0 && t == hundred) || (s == hundred && tt == 3 && phi.eval_index(low(t))) || (ts == 3 && tt == 3)
        }
        SubKind::Np => {
            let low_ones = (1 << n) - 1;
            let all_ones = (1 << (n + 2)) - 1;
            (s == 0 && t == low_ones)
                || (s == 0 && tt == 2)
                || (s == low_ones && tt == 2)
                || (s == low_ones && t == all_ones)
                || (ts == 2 && tt == 2)
                || (ts == 2 && t == 3 << n && phi.eval_index(low(s)))
        }
    }
}

/// `T_φ` with its nodes' suffixes and full strings.
#[derive(Clone, Debug)]
pub struct LabeledTournament {
    tournament: Tournament,
    sub: SubKind,
    phi: DecodedFormula,
    suffixes: Vec<u64>,
}

impl LabeledTournament {
    pub fn tournament(&self) -> &Tournament {
        &self.tournament
    }

    pub fn sub_kind(&self) -> SubKind {
        self.sub
    }

    pub fn formula(&self) -> &DecodedFormula {
        &self.phi
    }

    pub fn n(&self) -> usize {
        self.phi.n
    }

    pub fn num_nodes(&self) -> usize {
        self.suffixes.len()
    }

    /// Node `⟨φ, 0^{n+2}⟩`, which always comes first.
    pub fn potential_king(&self) -> usize {
        0
    }

    pub fn suffix(&self, v: usize) -> BitString {
        BitString::from_index(self.suffixes[v], self.phi.n + 2)
    }

    pub fn node_of_suffix(&self, suffix: &BitString) -> Option<usize> {
        if suffix.len() != self.phi.n + 2 {
            return None;
        }
        self.suffixes.binary_search(&suffix.to_index()).ok()
    }
}

/// Builds `T_φ` for a formula given in any form the kind's codec accepts.
pub fn build_subtournament(kind: BuiltinKind, formula: &Formula, limits: &Limits) -> Result<LabeledTournament> {
    let codec = kind
        .codec()
        .ok_or_else(|| Error::invalid("max has no subtournaments"))?;
    let code = encode_formula(formula, codec, limits)?;
    let phi = decode_table(&code, codec).ok_or_else(|| Error::invalid("formula does not decode"))?;
    build_subtournament_decoded(kind, &phi, limits)
}

pub fn build_subtournament_decoded(
    kind: BuiltinKind,
    phi: &DecodedFormula,
    limits: &Limits,
) -> Result<LabeledTournament> {
    let sub = kind
        .sub_kind()
        .ok_or_else(|| Error::invalid("max has no subtournaments"))?;
    if phi.n < kind.min_n() {
        return Err(Error::invalid(format!(
            "{kind} needs n ≥ {}, got {}",
            kind.min_n(),
            phi.n
        )));
    }
    if phi.n + 2 >= 63 {
        return Err(Error::CapExceeded {
            what: "formula parameter",
            value: phi.n,
            limit: 60,
        });
    }
    limits.check_nodes(sub.node_count(phi.n))?;
    let suffixes = sub.member_suffixes(phi.n);
    let tournament = Tournament::from_fn(suffixes.len(), |a, b| sub_edge(sub, phi, suffixes[a], suffixes[b]))?;
    let labels = suffixes
        .iter()
        .map(|&s| pair(kind.pairing(), &phi.code, &BitString::from_index(s, phi.n + 2)).to_string())
        .collect();
    let tournament = Tournament::new(tournament.into_graph().with_labels(labels)?)?;
    Ok(LabeledTournament {
        tournament,
        sub,
        phi: phi.clone(),
        suffixes,
    })
}
