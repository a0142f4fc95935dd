use crate::error::{Error, Result};

/// An undirected simple graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorGraph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl ColorGraph {
    /// Edges are normalised to `(i, j)` with `i < j`; self-loops, duplicates
    /// and out-of-range endpoints are rejected.
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut normalised = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop on vertex {u}")));
            }
            let (i, j) = (u.min(v), u.max(v));
            if i == 0 || j > num_vertices {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) out of range for {num_vertices} vertices"
                )));
            }
            if normalised.contains(&(i, j)) {
                return Err(Error::InvalidInput(format!("duplicate edge ({i}, {j})")));
            }
            normalised.push((i, j));
        }
        Ok(ColorGraph {
            num_vertices,
            edges: normalised,
        })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        ColorGraph {
            num_vertices: n,
            edges,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `coloring[i]` is the color of vertex `i + 1`.
    pub fn is_proper(&self, coloring: &[u8]) -> bool {
        self.edges
            .iter()
            .all(|&(i, j)| coloring[i - 1] != coloring[j - 1])
    }
}
