//! Scaling benchmarks over the two reduction families.

use std::fmt::Write as _;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::reductions::{coloring_to_cso, sat_to_cso, CnfFormula, ColorGraph, CsoInstance};

pub const REPORT_HEADER: &str = "family\tn\tstates\tholds\twitness_len\texplored\tmillis";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchFamily {
    /// A fixed unsatisfiable formula over `n` variables through the SAT gadget.
    Sat,
    /// Seeded random graphs on `n` vertices through the coloring gadget.
    Coloring,
}

impl BenchFamily {
    pub fn name(self) -> &'static str {
        match self {
            BenchFamily::Sat => "sat-family",
            BenchFamily::Coloring => "col-family",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub n: usize,
    pub states: usize,
    pub holds: bool,
    pub witness_len: Option<usize>,
    pub explored: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchReport {
    pub family: BenchFamily,
    /// Sorted by `n`.
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// Tab-separated rows under [`REPORT_HEADER`].
    pub fn to_tsv(&self) -> String {
        let mut out = String::from(REPORT_HEADER);
        out.push('\n');
        for r in &self.rows {
            let wlen = r
                .witness_len
                .map_or_else(|| "-".to_string(), |l| l.to_string());
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{:.3}",
                self.family.name(),
                r.n,
                r.states,
                r.holds,
                wlen,
                r.explored,
                r.elapsed.as_secs_f64() * 1e3
            );
        }
        out
    }
}

/// `x_1 ∧ ¬x_1` padded with `x_{j−1} ∨ x_j` for `2 ≤ j ≤ n`.
pub fn sat_family_formula(n: usize) -> Result<CnfFormula> {
    let mut clauses = vec![vec![1], vec![-1]];
    for j in 2..=n as i32 {
        clauses.push(vec![j - 1, j]);
    }
    CnfFormula::new(n, clauses)
}

/// A random graph on `n` vertices, each edge present with probability 1/2.
pub fn col_family_graph(n: usize, seed: u64) -> Result<ColorGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.gen_bool(0.5) {
                edges.push((i, j));
            }
        }
    }
    ColorGraph::new(n, edges)
}

pub fn family_instance(family: BenchFamily, n: usize, seed: u64) -> Result<CsoInstance> {
    match family {
        BenchFamily::Sat => sat_to_cso(&sat_family_formula(n)?),
        BenchFamily::Coloring => coloring_to_cso(&col_family_graph(n, seed)?),
    }
}

/// Runs the current-state opacity checker on the family's instance for each
/// `n` in `n_min..=n_max`.
pub fn bench_family(
    family: BenchFamily,
    n_min: usize,
    n_max: usize,
    seed: u64,
) -> Result<BenchReport> {
    let floor = match family {
        BenchFamily::Sat => 1,
        BenchFamily::Coloring => 2,
    };
    if n_min < floor || n_min > n_max {
        return Err(Error::InvalidInput(format!(
            "{} needs {floor} <= n-min <= n-max, got {n_min}..={n_max}",
            family.name()
        )));
    }
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        let inst = family_instance(family, n, seed)?;
        let v = inst.check()?;
        rows.push(BenchRow {
            n,
            states: inst.nfa.num_states(),
            holds: v.holds,
            witness_len: v.witness_len(),
            explored: v.stats.explored,
            elapsed: v.stats.elapsed,
        });
    }
    Ok(BenchReport { family, rows })
}
