//! Constructive reductions producing hard opacity instances, and reductions
//! between opacity notions and universality.

mod cnf;
mod coloring;
mod graph;
mod sat;
mod transfer;

pub use cnf::{assignment_from_bits, CnfFormula};
pub use coloring::coloring_to_cso;
pub use graph::ColorGraph;
pub use sat::{
    canonical_violating_word, counter_fragment, counter_value, sat_state, sat_symbol, sat_to_cso,
    zimin_index, zimin_indices, MAX_ZIMIN_ORDER,
};
pub use transfer::{
    cso_to_iso_direct, cso_to_iso_split, cso_to_lbo, cso_to_universality, iso_to_ifo, lbo_pairs,
    IfoInstance, IsoInstance, LboPairs,
};

use crate::error::Result;
use crate::nfa::Nfa;
use crate::observer::ObservationMap;
use crate::opacity::{check_cso, CsoQuery};
use crate::stateset::StateSet;
use crate::verdict::Verdict;

/// Where an instance came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `sat_to_cso`; symbol `k` is the pair `symbol_pairs[k] = (i, j)`, i.e. `(a_i, c_j)`.
    Sat {
        num_vars: usize,
        num_clauses: usize,
        symbol_pairs: Vec<(usize, usize)>,
    },
    /// `coloring_to_cso` on a graph with this many vertices.
    Coloring {
        num_vertices: usize,
    },
    Generic,
}

/// A current-state opacity instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsoInstance {
    pub nfa: Nfa,
    pub secret: StateSet,
    pub nonsecret: StateSet,
    pub omap: ObservationMap,
    pub family: Family,
}

impl CsoInstance {
    pub fn query(&self) -> CsoQuery {
        CsoQuery {
            secret: self.secret.clone(),
            nonsecret: self.nonsecret.clone(),
        }
    }

    pub fn check(&self) -> Result<Verdict> {
        check_cso(&self.nfa, &self.query(), &self.omap)
    }
}
