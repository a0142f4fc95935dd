//! Breadth-first search over implicitly given labelled graphs.

use std::collections::HashMap;
use std::hash::Hash;

pub(crate) struct Found {
    /// Labels along a shortest path from a root to the first goal node.
    pub path: Option<Vec<usize>>,
    /// Distinct nodes discovered before the search stopped.
    pub explored: usize,
}

/// Breadth-first search that tests `goal` when a node is first discovered.
///
/// `expand` pushes `(label, successor)` pairs; pushing them in increasing
/// label order makes the returned path the lexicographically least among the
/// shortest ones when there is a single root.
pub(crate) fn shortest_path<K, E, G>(
    roots: impl IntoIterator<Item = K>,
    mut expand: E,
    mut goal: G,
) -> Found
where
    K: Clone + Eq + Hash,
    E: FnMut(&K, &mut Vec<(usize, K)>),
    G: FnMut(&K) -> bool,
{
    let mut nodes: Vec<K> = Vec::new();
    let mut parent: Vec<Option<(usize, usize)>> = Vec::new();
    let mut index: HashMap<K, usize> = HashMap::new();

    for root in roots {
        if index.contains_key(&root) {
            continue;
        }
        index.insert(root.clone(), nodes.len());
        nodes.push(root);
        parent.push(None);
        let id = nodes.len() - 1;
        if goal(&nodes[id]) {
            return Found {
                path: Some(trace(&parent, id)),
                explored: nodes.len(),
            };
        }
    }

    let mut buf = Vec::new();
    let mut head = 0;
    while head < nodes.len() {
        buf.clear();
        expand(&nodes[head], &mut buf);
        for (label, succ) in buf.drain(..) {
            if index.contains_key(&succ) {
                continue;
            }
            let id = nodes.len();
            index.insert(succ.clone(), id);
            nodes.push(succ);
            parent.push(Some((head, label)));
            if goal(&nodes[id]) {
                return Found {
                    path: Some(trace(&parent, id)),
                    explored: nodes.len(),
                };
            }
        }
        head += 1;
    }
    Found {
        path: None,
        explored: nodes.len(),
    }
}

pub(crate) fn trace(parent: &[Option<(usize, usize)>], mut id: usize) -> Vec<usize> {
    let mut path = Vec::new();
    while let Some((p, label)) = parent[id] {
        path.push(label);
        id = p;
    }
    path.reverse();
    path
}
