//! Text formats: the line-oriented NFA document, DIMACS CNF and DIMACS-style
//! edge lists.

mod dimacs;
mod document;
mod graph;

pub use dimacs::{parse_dimacs_cnf, write_dimacs_cnf};
pub use document::{parse_nfa, serialize_nfa, NfaDocument};
pub use graph::{parse_graph, write_graph};

/// Splits off a trailing `#` comment.
fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}
