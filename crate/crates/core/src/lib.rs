//! Kingship in succinctly specified tournaments and graphs.
//!
//! The crate models tournament families given by a two-argument selector
//! function over bit-strings, Galperin–Wigderson style circuit-specified
//! graphs, and circuit-specified multipartite tournaments. It provides k-king
//! decision procedures for all of them at sizes that can be materialized, and
//! executable reductions from quantified Boolean formulas to kingship
//! instances together with brute-force oracles that check those reductions.
//!
//! Module map:
//!
//! - [`formula`]: propositional and ∀∃ formulas, truth tables, codecs.
//! - [`pairing`]: the two invertible string pairings used by the constructions.
//! - [`digraph`]: explicit digraphs, kingship, Landau kings, multipartite recognition.
//! - [`circuit`]: Boolean circuits, GW graphs, j-tournament-circuits.
//! - [`specifier`]: tournament family specifiers, built-in constructions, validation.
//! - [`reductions`]: formula-to-kingship reductions, lifts, verification suites.

pub mod bits;
pub mod circuit;
pub mod digraph;
pub mod error;
pub mod formula;
pub mod pairing;
pub mod reductions;
pub mod specifier;

pub use bits::BitString;
pub use error::{Error, Result};

/// Size ceilings for brute-force work.
///
/// `max_vars` bounds the number of variables any exhaustive formula oracle or
/// truth-table construction will enumerate. `max_nodes` bounds the node count
/// of any materialized graph (GW graphs, multipartite tournaments, and
/// specifier-induced tournaments alike).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_vars: usize,
    pub max_nodes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_vars: 12,
            max_nodes: 1 << 13,
        }
    }
}

impl Limits {
    pub(crate) fn check_vars(&self, vars: usize) -> Result<()> {
        if vars > self.max_vars {
            return Err(Error::CapExceeded {
                what: "variable count",
                value: vars,
                limit: self.max_vars,
            });
        }
        Ok(())
    }

    pub(crate) fn check_nodes(&self, nodes: usize) -> Result<()> {
        if nodes > self.max_nodes {
            return Err(Error::CapExceeded {
                what: "node count",
                value: nodes,
                limit: self.max_nodes,
            });
        }
        Ok(())
    }

    /// Checks that `2^log2` nodes fit, without overflowing on large exponents.
    pub(crate) fn check_pow2_nodes(&self, log2: usize) -> Result<()> {
        if log2 >= usize::BITS as usize - 1 {
            return Err(Error::CapExceeded {
                what: "node count",
                value: usize::MAX,
                limit: self.max_nodes,
            });
        }
        self.check_nodes(1 << log2)
    }
}
