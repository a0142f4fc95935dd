//! The 3-coloring gadget over the alphabet `{a, b, c}`.

use crate::error::{Error, Result};
use crate::nfa::NfaBuilder;
use crate::observer::ObservationMap;

use super::{ColorGraph, CsoInstance, Family};

pub(crate) const COLORS: [&str; 3] = ["a", "b", "c"];

/// Builds the CSO instance that is opaque iff `g` has no proper 3-coloring.
///
/// A word `w` of length `n` is read as a coloring (letter `i` colors vertex
/// `i`). The chain `q1 → … → qn → s` accepts every such word into the secret
/// state `s`, which has no outgoing transitions. For an edge `(i, j)` the
/// counter `χ_{j−i}` entered from `q_i` on letter `χ` reaches the sink `f`
/// exactly when letter `j` is `χ` too, so `f` is present after `w` iff `w`
/// colors some edge monochromatically.
///
/// States, in index order: `q1..qn`, `s`, `f`, `a1..a{n-1}`, `b1..`, `c1..`;
/// `4n − 1` in total with `12n + 3m − 12` transitions.
pub fn coloring_to_cso(g: &ColorGraph) -> Result<CsoInstance> {
    let n = g.num_vertices();
    if n < 2 {
        return Err(Error::InvalidInput(
            "the coloring gadget needs at least two vertices".into(),
        ));
    }
    let mut b = NfaBuilder::new();
    for i in 1..=n {
        b.add_state(&format!("q{i}"))?;
    }
    let s = b.add_state("s")?;
    let f = b.add_state("f")?;
    let mut chi = vec![vec![0usize; n]; 3];
    for (row, name) in chi.iter_mut().zip(COLORS) {
        for (d, slot) in row.iter_mut().enumerate().skip(1) {
            *slot = b.add_state(&format!("{name}{d}"))?;
        }
    }
    let letters: Vec<usize> = COLORS
        .iter()
        .map(|name| b.add_symbol(name))
        .collect::<Result<_>>()?;
    let q = |i: usize| i - 1;

    for &x in &letters {
        for i in 1..n {
            b.add_transition(q(i), x, q(i + 1));
        }
        b.add_transition(q(n), x, s);
        b.add_transition(f, x, f);
        for row in &chi {
            for d in 2..n {
                b.add_transition(row[d], x, row[d - 1]);
            }
        }
    }
    for (color, &x) in letters.iter().enumerate() {
        b.add_transition(chi[color][1], x, f);
    }
    for &(i, j) in g.edges() {
        for (color, &x) in letters.iter().enumerate() {
            b.add_transition(q(i), x, chi[color][j - i]);
        }
    }
    b.add_initial(q(1));
    let nfa = b.build()?;
    let secret = nfa.set_of([s]);
    let nonsecret = nfa.all_states().difference(&secret);
    let omap = ObservationMap::all_observable(&nfa);
    Ok(CsoInstance {
        nfa,
        secret,
        nonsecret,
        omap,
        family: Family::Coloring { num_vertices: n },
    })
}
