use crate::error::{Error, Result};

/// A formula in conjunctive normal form over variables `x_1..x_n`.
///
/// Literals are signed 1-based variable indices: `3` is `x_3`, `-3` is `¬x_3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for clause in &clauses {
            for &lit in clause {
                let var = lit.unsigned_abs() as usize;
                if lit == 0 || var > num_vars {
                    return Err(Error::InvalidInput(format!(
                        "literal {lit} out of range for {num_vars} variables"
                    )));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// `cl(ℓ)`: indices (0-based) of the clauses containing `literal`.
    pub fn clauses_containing(&self, literal: i32) -> Vec<usize> {
        (0..self.clauses.len())
            .filter(|&j| self.clauses[j].contains(&literal))
            .collect()
    }

    /// `assignment[i]` is the value of `x_{i+1}`.
    pub fn clause_satisfied(&self, clause: usize, assignment: &[bool]) -> bool {
        self.clauses[clause].iter().any(|&lit| {
            let value = assignment[lit.unsigned_abs() as usize - 1];
            if lit > 0 {
                value
            } else {
                !value
            }
        })
    }

    /// Lowest-index clause falsified by `assignment`, if any.
    pub fn first_unsatisfied(&self, assignment: &[bool]) -> Option<usize> {
        (0..self.clauses.len()).find(|&j| !self.clause_satisfied(j, assignment))
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.first_unsatisfied(assignment).is_none()
    }

    /// The same formula with clause `index` (0-based) removed.
    pub fn without_clause(&self, index: usize) -> CnfFormula {
        let mut clauses = self.clauses.clone();
        clauses.remove(index);
        CnfFormula {
            num_vars: self.num_vars,
            clauses,
        }
    }
}

/// Assignment encoded by the low `n` bits of `value`: bit `i` is `x_{i+1}`.
pub fn assignment_from_bits(value: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| value >> i & 1 == 1).collect()
}
