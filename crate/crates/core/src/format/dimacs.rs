use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::reductions::CnfFormula;

/// Parses DIMACS CNF. Comment lines start with `c`; a `%` line ends the input.
/// A final clause missing its terminating `0` is accepted.
pub fn parse_dimacs_cnf(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(line_no, "duplicate problem line"));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [_, "cnf", n, m] = parts.as_slice() else {
                return Err(Error::parse(line_no, "expected `p cnf <vars> <clauses>`"));
            };
            let n = n
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad variable count `{n}`")))?;
            let m = m
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad clause count `{m}`")))?;
            header = Some((n, m, line_no));
            continue;
        }
        let Some((n, _, _)) = header else {
            return Err(Error::parse(line_no, "clause before the problem line"));
        };
        for tok in line.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad literal `{tok}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > n {
                return Err(Error::parse(
                    line_no,
                    format!("literal {lit} out of range for {n} variables"),
                ));
            } else {
                current.push(lit);
            }
        }
        last_line = line_no;
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    let Some((n, m, header_line)) = header else {
        return Err(Error::parse(1, "missing `p cnf` problem line"));
    };
    if clauses.len() != m {
        return Err(Error::parse(
            last_line.max(header_line),
            format!(
                "header declares {m} clauses but {} were given",
                clauses.len()
            ),
        ));
    }
    CnfFormula::new(n, clauses)
}

pub fn write_dimacs_cnf(phi: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", phi.num_vars(), phi.num_clauses());
    for clause in phi.clauses() {
        for lit in clause {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_clause() {
        let phi = parse_dimacs_cnf("p cnf 1 1\n1 0\n").unwrap();
        assert_eq!(phi.num_vars(), 1);
        assert_eq!(phi.clauses(), &[vec![1]]);
    }

    #[test]
    fn comments_and_whitespace() {
        let text = "c hello\n\np cnf 3 2  \n 1 -2 0   \nc mid\n3\n 0\n";
        let phi = parse_dimacs_cnf(text).unwrap();
        assert_eq!(phi.clauses(), &[vec![1, -2], vec![3]]);
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_dimacs_cnf("p cnf 2 1\n1 3 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_dimacs_cnf("p cnf 2 2\n1 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        assert!(parse_dimacs_cnf("1 0\n").is_err());
    }

    #[test]
    fn round_trip() {
        let phi = CnfFormula::new(3, vec![vec![2, 2], vec![1, 2], vec![-1, 3]]).unwrap();
        assert_eq!(parse_dimacs_cnf(&write_dimacs_cnf(&phi)).unwrap(), phi);
    }
}
