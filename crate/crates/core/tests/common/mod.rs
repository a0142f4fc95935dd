#![allow(dead_code)]

use std::collections::HashMap;

use opacity_core::reductions::{CnfFormula, ColorGraph};
use opacity_core::{Nfa, NfaBuilder, ObservationMap, StateSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// States `q0..`, symbols `s0..`; each possible transition present with probability `density`.
pub fn random_nfa(rng: &mut impl Rng, states: usize, symbols: usize, density: f64) -> Nfa {
    let mut b = NfaBuilder::new();
    for q in 0..states {
        b.add_state(&format!("q{q}")).unwrap();
    }
    for a in 0..symbols {
        b.add_symbol(&format!("s{a}")).unwrap();
    }
    for p in 0..states {
        for a in 0..symbols {
            for q in 0..states {
                if rng.gen_bool(density) {
                    b.add_transition(p, a, q);
                }
            }
        }
    }
    for q in 0..states {
        if rng.gen_bool(0.4) {
            b.add_initial(q);
        }
        if rng.gen_bool(0.4) {
            b.add_accepting(q);
        }
    }
    if states > 0 && rng.gen_bool(0.9) {
        let q = rng.gen_range(0..states);
        b.add_initial(q);
    }
    b.build().unwrap()
}

pub fn random_subset(rng: &mut impl Rng, n: usize, p: f64) -> StateSet {
    StateSet::from_states(n, (0..n).filter(|_| rng.gen_bool(p)))
}

/// Disjoint secret / non-secret sets; some states may be in neither.
pub fn random_split(rng: &mut impl Rng, n: usize) -> (StateSet, StateSet) {
    let mut s = StateSet::empty(n);
    let mut ns = StateSet::empty(n);
    for q in 0..n {
        match rng.gen_range(0..5) {
            0 | 1 => {
                s.insert(q);
            }
            2 | 3 => {
                ns.insert(q);
            }
            _ => {}
        }
    }
    (s, ns)
}

/// The last symbol is unobservable with probability `p_hidden`.
pub fn random_omap(rng: &mut impl Rng, nfa: &Nfa, p_hidden: f64) -> ObservationMap {
    let k = nfa.num_symbols();
    let mut flags = vec![true; k];
    if k > 1 && rng.gen_bool(p_hidden) {
        flags[k - 1] = false;
    }
    ObservationMap::from_flags(flags)
}

/// A random k-CNF formula; literals within a clause use distinct variables when possible.
pub fn random_cnf(rng: &mut impl Rng, n: usize, m: usize, k: usize) -> CnfFormula {
    let vars: Vec<i32> = (1..=n as i32).collect();
    let clauses = (0..m)
        .map(|_| {
            vars.choose_multiple(rng, k.min(n))
                .map(|&v| if rng.gen_bool(0.5) { v } else { -v })
                .collect()
        })
        .collect();
    CnfFormula::new(n, clauses).unwrap()
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> ColorGraph {
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    ColorGraph::new(n, edges).unwrap()
}

/// All words over `0..symbols` of length at most `max_len`, shortest first
/// and lexicographic within a length.
pub fn words_up_to(symbols: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut level = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &level {
            for a in 0..symbols {
                let mut v: Vec<usize> = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Language membership straight from the definition, one transition at a time.
pub fn naive_accepts(nfa: &Nfa, word: &[usize]) -> bool {
    let mut cur: Vec<usize> = nfa.initial().iter().collect();
    for &a in word {
        let mut next = Vec::new();
        for &p in &cur {
            for (src, sym, dst) in nfa.transitions() {
                if src == p && sym == a && !next.contains(&dst) {
                    next.push(dst);
                }
            }
        }
        cur = next;
    }
    cur.iter().any(|&q| nfa.accepting().contains(q))
}

/// For every source word of length at most `max_len`, the union of
/// `δ(I, w)` grouped by the observed word `P(w)`.
pub fn estimates_by_observation(
    nfa: &Nfa,
    omap: &ObservationMap,
    max_len: usize,
) -> HashMap<Vec<usize>, StateSet> {
    fn go(
        nfa: &Nfa,
        omap: &ObservationMap,
        cur: StateSet,
        word: &mut Vec<usize>,
        max_len: usize,
        out: &mut HashMap<Vec<usize>, StateSet>,
    ) {
        out.entry(omap.project(word))
            .or_insert_with(|| nfa.empty_set())
            .union_with(&cur);
        if word.len() == max_len || cur.is_empty() {
            return;
        }
        for a in 0..nfa.num_symbols() {
            let next = nfa.step(&cur, a).unwrap();
            word.push(a);
            go(nfa, omap, next, word, max_len, out);
            word.pop();
        }
    }
    let mut out = HashMap::new();
    go(
        nfa,
        omap,
        nfa.initial().clone(),
        &mut Vec::new(),
        max_len,
        &mut out,
    );
    out
}

/// Breadth-first search over configurations, computed with `step` only,
/// for the length of the shortest word reaching a configuration that meets
/// `secret` and misses `nonsecret`.
pub fn shortest_cso_violation(nfa: &Nfa, secret: &StateSet, nonsecret: &StateSet) -> Option<usize> {
    let mut seen = std::collections::HashSet::new();
    let mut level = vec![nfa.initial().clone()];
    seen.insert(nfa.initial().clone());
    let mut depth = 0;
    while !level.is_empty() {
        for e in &level {
            if e.intersects(secret) && !e.intersects(nonsecret) {
                return Some(depth);
            }
        }
        let mut next = Vec::new();
        for e in &level {
            for a in 0..nfa.num_symbols() {
                let f = nfa.step(e, a).unwrap();
                if !f.is_empty() && seen.insert(f.clone()) {
                    next.push(f);
                }
            }
        }
        level = next;
        depth += 1;
    }
    None
}

/// The worked unsatisfiable formula: `c1 = x2 ∨ x2`, `c2 = x1 ∨ x2`, `c3 = ¬x1 ∨ x3`,
/// `c4 = ¬x2 ∨ ¬x3`, `c5 = x3`.
pub fn example_formula() -> CnfFormula {
    CnfFormula::new(
        3,
        vec![vec![2, 2], vec![1, 2], vec![-1, 3], vec![-2, -3], vec![3]],
    )
    .unwrap()
}

/// The satisfiable variant without `c5`.
pub fn example_formula_satisfiable() -> CnfFormula {
    example_formula().without_clause(4)
}

/// The reference violating word for [`example_formula`], verbatim.
pub const EXAMPLE_WORD: [&str; 8] = [
    "a1.c1", "a2.c2", "a1.c5", "a3.c3", "a1.c1", "a2.c1", "a1.c4", "a4.c4",
];

/// The two-state automaton `1 -a-> {1, 2}`, `I = {1}`.
pub fn two_state(accepting: &[usize]) -> Nfa {
    let mut b = NfaBuilder::new();
    let (s1, s2) = (b.state("1"), b.state("2"));
    let a = b.symbol("a");
    b.add_transition(s1, a, s1).add_transition(s1, a, s2);
    b.add_initial(s1);
    for &q in accepting {
        b.add_accepting(q);
    }
    b.build().unwrap()
}
