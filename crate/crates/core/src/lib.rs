//! Opacity verification for partially observed nondeterministic finite
//! automata.
//!
//! The crate decides current-state, initial-state, initial-and-final-state,
//! k-step, infinite-step and language-based opacity, together with NFA
//! emptiness, universality, inclusion and equivalence. It also builds the
//! hard instances obtained from CNF satisfiability and graph 3-coloring, and
//! provides brute-force oracles for cross-checking.
//!
//! ```
//! use opacity_core::{check_cso, CsoQuery, NfaBuilder, ObservationMap};
//!
//! let mut b = NfaBuilder::new();
//! let (s, n) = (b.state("s"), b.state("n"));
//! let a = b.symbol("a");
//! b.add_transition(s, a, n).add_transition(n, a, n);
//! b.add_initial(s).add_initial(n);
//! let nfa = b.build()?;
//! let q = CsoQuery { secret: nfa.set_of([s]), nonsecret: nfa.set_of([n]) };
//! assert!(check_cso(&nfa, &q, &ObservationMap::all_observable(&nfa))?.holds);
//! # Ok::<(), opacity_core::Error>(())
//! ```

pub mod bench;
mod error;
pub mod format;
pub mod lang;
mod nfa;
pub mod observer;
pub mod opacity;
pub mod oracles;
pub mod reductions;
mod search;
mod stateset;
mod verdict;

pub use error::{Error, Result};
pub use lang::{is_empty, is_equivalent, is_included, is_universal, universal_automaton};
pub use nfa::{Interner, Nfa, NfaBuilder, Word};
pub use observer::{eliminate_unobservable, observer, ObservationMap, ObserverGraph};
pub use opacity::{
    check, check_cso, check_ifo, check_ifo_general, check_inso, check_iso, check_kso, check_lbo,
    CsoQuery, IfoQuery, InsoQuery, IsoQuery, KsoQuery, LboQuery, OpacityQuery,
};
pub use stateset::StateSet;
pub use verdict::{Stats, Verdict};
