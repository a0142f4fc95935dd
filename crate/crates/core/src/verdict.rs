use std::time::{Duration, Instant};

/// Search statistics attached to a [`Verdict`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Distinct search nodes (estimates, estimate pairs, product states) discovered.
    pub explored: usize,
    pub elapsed: Duration,
}

/// Outcome of a decision procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// A violating word, as symbol names of the checked automaton, when `holds` is false.
    pub witness: Option<Vec<String>>,
    pub stats: Stats,
    /// Set by bounded enumeration when the bound may be too small for the answer to be exact.
    pub bounded: bool,
}

impl Verdict {
    pub fn holds(stats: Stats) -> Self {
        Verdict {
            holds: true,
            witness: None,
            stats,
            bounded: false,
        }
    }

    pub fn fails(witness: Vec<String>, stats: Stats) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
            stats,
            bounded: false,
        }
    }

    pub fn witness_len(&self) -> Option<usize> {
        self.witness.as_ref().map(Vec::len)
    }
}

pub(crate) struct Timer(Instant);

impl Timer {
    pub fn start() -> Self {
        Timer(Instant::now())
    }

    pub fn stats(&self, explored: usize) -> Stats {
        Stats {
            explored,
            elapsed: self.0.elapsed(),
        }
    }
}
