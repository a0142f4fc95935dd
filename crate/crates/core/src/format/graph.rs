use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::reductions::ColorGraph;

/// Parses `p edge <n> <m>` followed by `e <i> <j>` lines (1-based vertices).
pub fn parse_graph(text: &str) -> Result<ColorGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut last_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        last_line = line_no;
        let parts: Vec<&str> = line.split_whitespace().collect();
        let num = |tok: &str| -> Result<usize> {
            tok.parse()
                .map_err(|_| Error::parse(line_no, format!("bad number `{tok}`")))
        };
        match parts.as_slice() {
            ["p", "edge" | "col", n, m] => {
                if header.is_some() {
                    return Err(Error::parse(line_no, "duplicate problem line"));
                }
                header = Some((num(n)?, num(m)?));
            }
            ["e", i, j] => {
                let Some((n, _)) = header else {
                    return Err(Error::parse(line_no, "edge before the problem line"));
                };
                let (i, j) = (num(i)?, num(j)?);
                if i == j {
                    return Err(Error::parse(line_no, format!("self-loop on vertex {i}")));
                }
                if i == 0 || j == 0 || i > n || j > n {
                    return Err(Error::parse(
                        line_no,
                        format!("edge ({i}, {j}) out of range for {n} vertices"),
                    ));
                }
                let key = (i.min(j), i.max(j));
                if edges.contains(&key) {
                    return Err(Error::parse(line_no, format!("duplicate edge ({i}, {j})")));
                }
                edges.push(key);
            }
            _ => return Err(Error::parse(line_no, format!("unrecognised line `{line}`"))),
        }
    }
    let Some((n, m)) = header else {
        return Err(Error::parse(1, "missing `p edge` problem line"));
    };
    if edges.len() != m {
        return Err(Error::parse(
            last_line,
            format!("header declares {m} edges but {} were given", edges.len()),
        ));
    }
    ColorGraph::new(n, edges)
}

pub fn write_graph(g: &ColorGraph) -> String {
    let mut out = format!("p edge {} {}\n", g.num_vertices(), g.num_edges());
    for (i, j) in g.edges() {
        let _ = writeln!(out, "e {i} {j}");
    }
    out
}
