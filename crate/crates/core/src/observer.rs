//! Projections, elimination of unobservable transitions, and the observer
//! (projected automaton) built by subset construction.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::nfa::{Nfa, NfaBuilder};
use crate::stateset::StateSet;

/// Splits an automaton's alphabet into observable and unobservable symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObservationMap {
    observable: Vec<bool>,
}

impl ObservationMap {
    /// The identity projection.
    pub fn all_observable(nfa: &Nfa) -> Self {
        ObservationMap {
            observable: vec![true; nfa.num_symbols()],
        }
    }

    pub fn from_flags(observable: Vec<bool>) -> Self {
        ObservationMap { observable }
    }

    pub fn with_unobservable(nfa: &Nfa, unobservable: &[usize]) -> Result<Self> {
        let mut observable = vec![true; nfa.num_symbols()];
        for &a in unobservable {
            let slot = observable.get_mut(a).ok_or(Error::SymbolOutOfRange {
                index: a,
                size: nfa.num_symbols(),
            })?;
            *slot = false;
        }
        Ok(ObservationMap { observable })
    }

    pub fn with_unobservable_names<S: AsRef<str>>(nfa: &Nfa, names: &[S]) -> Result<Self> {
        let idx = names
            .iter()
            .map(|n| nfa.symbol(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::with_unobservable(nfa, &idx)
    }

    pub fn is_observable(&self, symbol: usize) -> bool {
        self.observable[symbol]
    }

    pub fn is_identity(&self) -> bool {
        self.observable.iter().all(|&o| o)
    }

    /// Observable symbols (the set Γ) in increasing index order.
    pub fn observable_symbols(&self) -> Vec<usize> {
        (0..self.observable.len())
            .filter(|&a| self.observable[a])
            .collect()
    }

    pub fn unobservable_symbols(&self) -> Vec<usize> {
        (0..self.observable.len())
            .filter(|&a| !self.observable[a])
            .collect()
    }

    /// Applies the projection `P` to a word.
    pub fn project(&self, word: &[usize]) -> Vec<usize> {
        word.iter()
            .copied()
            .filter(|&a| self.observable[a])
            .collect()
    }

    pub fn validate(&self, nfa: &Nfa) -> Result<()> {
        if self.observable.len() != nfa.num_symbols() {
            return Err(Error::InvalidInput(format!(
                "observation map covers {} symbols but the automaton has {}",
                self.observable.len(),
                nfa.num_symbols()
            )));
        }
        Ok(())
    }
}

/// An automaton with unobservable moves removed, plus the bookkeeping needed
/// to map results back to the source alphabet.
pub(crate) struct Projected {
    pub nfa: Nfa,
    /// `source_symbol[k]` is the source index of projected symbol `k`.
    pub source_symbol: Vec<usize>,
    closure: Vec<StateSet>,
}

impl Projected {
    pub fn new(nfa: &Nfa, omap: &ObservationMap) -> Result<Self> {
        omap.validate(nfa)?;
        let n = nfa.num_states();
        let hidden = omap.unobservable_symbols();
        let closure: Vec<StateSet> = (0..n)
            .map(|q| {
                let mut seen = StateSet::singleton(n, q);
                let mut stack = vec![q];
                while let Some(p) = stack.pop() {
                    for &u in &hidden {
                        for r in nfa.successors(p, u) {
                            if seen.insert(r) {
                                stack.push(r);
                            }
                        }
                    }
                }
                seen
            })
            .collect();

        let source_symbol = omap.observable_symbols();
        let mut b = NfaBuilder::new();
        for q in 0..n {
            b.add_state(nfa.state_name(q))?;
        }
        for &a in &source_symbol {
            b.add_symbol(nfa.symbol_name(a))?;
        }
        let close = |set: &StateSet| {
            let mut out = StateSet::empty(n);
            for q in set {
                out.union_with(&closure[q]);
            }
            out
        };
        for (p, reach) in closure.iter().enumerate() {
            for (k, &a) in source_symbol.iter().enumerate() {
                // U(δ(U(p), a))
                let targets = close(&nfa.step_unchecked(reach, a));
                for q in &targets {
                    b.add_transition(p, k, q);
                }
            }
        }
        for q in &close(nfa.initial()) {
            b.add_initial(q);
        }
        for q in nfa.accepting() {
            b.add_accepting(q);
        }
        Ok(Projected {
            nfa: b.build()?,
            source_symbol,
            closure,
        })
    }

    /// Closure of `set` under unobservable moves.
    pub fn close(&self, set: &StateSet) -> StateSet {
        let mut out = StateSet::empty(self.nfa.num_states());
        for q in set {
            out.union_with(&self.closure[q]);
        }
        out
    }

    /// Names of a projected-alphabet word.
    pub fn names(&self, word: &[usize]) -> Vec<String> {
        self.nfa.word_names(word)
    }
}

/// Removes unobservable transitions so that the projection becomes the identity.
///
/// The result has the same states; its alphabet is the observable part of the
/// source alphabet, in source order. A transition `p -a-> q` exists iff `q` is
/// reachable from `p` by a word `u a v` with `u`, `v` unobservable, and the
/// initial states are closed under unobservable moves.
pub fn eliminate_unobservable(nfa: &Nfa, omap: &ObservationMap) -> Result<Nfa> {
    Ok(Projected::new(nfa, omap)?.nfa)
}

/// The reachable, deterministic estimate graph of an automaton under a projection.
///
/// Node 0 is the root. The empty estimate is never a node; a missing edge
/// means the observed word cannot continue.
#[derive(Clone, Debug)]
pub struct ObserverGraph {
    nodes: Vec<StateSet>,
    /// Source-alphabet index of each observable symbol, in order.
    symbols: Vec<usize>,
    symbol_names: Vec<String>,
    // next[node * |Γ| + k]
    next: Vec<Option<usize>>,
}

impl ObserverGraph {
    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[StateSet] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &StateSet {
        &self.nodes[id]
    }

    pub fn root(&self) -> Option<usize> {
        (!self.nodes.is_empty()).then_some(0)
    }

    /// Observable symbols as source-alphabet indices.
    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn find(&self, estimate: &StateSet) -> Option<usize> {
        self.nodes.iter().position(|e| e == estimate)
    }

    /// Successor of `node` under the source symbol `symbol`, if any.
    pub fn successor(&self, node: usize, symbol: usize) -> Option<usize> {
        let k = self.symbols.iter().position(|&a| a == symbol)?;
        self.next[node * self.symbols.len() + k]
    }

    /// All edges `(from, source symbol, to)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let width = self.symbols.len();
        self.next.iter().enumerate().filter_map(move |(i, t)| {
            t.map(|to| (i / width.max(1), self.symbols[i % width.max(1)], to))
        })
    }

    /// Follows an observed word (source symbol indices) from the root.
    pub fn follow(&self, word: &[usize]) -> Option<usize> {
        let mut node = self.root()?;
        for &a in word {
            node = self.successor(node, a)?;
        }
        Some(node)
    }

    /// The graph as a deterministic automaton over the observable symbols,
    /// with node `i` named `E<i>`; every node is accepting.
    pub fn to_nfa(&self) -> Result<Nfa> {
        let mut b = NfaBuilder::new();
        for i in 0..self.nodes.len() {
            let q = b.add_state(&format!("E{i}"))?;
            b.add_accepting(q);
        }
        for name in &self.symbol_names {
            b.add_symbol(name)?;
        }
        let width = self.symbols.len();
        for (i, t) in self.next.iter().enumerate() {
            if let Some(to) = t {
                b.add_transition(i / width, i % width, *to);
            }
        }
        if !self.nodes.is_empty() {
            b.add_initial(0);
        }
        b.build()
    }
}

/// Builds the observer by breadth-first subset construction.
///
/// Nodes are numbered in discovery order, expanding symbols in increasing
/// index order, so numbering is deterministic.
pub fn observer(nfa: &Nfa, omap: &ObservationMap) -> Result<ObserverGraph> {
    let proj = Projected::new(nfa, omap)?;
    let p = &proj.nfa;
    let width = p.num_symbols();
    let mut nodes = Vec::new();
    let mut index = HashMap::new();
    let mut next = Vec::new();
    let root = p.initial().clone();
    if !root.is_empty() {
        index.insert(root.clone(), 0);
        nodes.push(root);
    }
    let mut head = 0;
    while head < nodes.len() {
        for k in 0..width {
            let succ = p.step_unchecked(&nodes[head], k);
            if succ.is_empty() {
                next.push(None);
                continue;
            }
            let id = match index.get(&succ) {
                Some(&id) => id,
                None => {
                    let id = nodes.len();
                    index.insert(succ.clone(), id);
                    nodes.push(succ);
                    id
                }
            };
            next.push(Some(id));
        }
        head += 1;
    }
    Ok(ObserverGraph {
        nodes,
        symbol_names: p.symbols().names().to_vec(),
        symbols: proj.source_symbol,
        next,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> Nfa {
        // 1 -u-> 2 -a-> 3
        let mut b = NfaBuilder::new();
        let (s1, s2, s3) = (b.state("1"), b.state("2"), b.state("3"));
        let (u, a) = (b.symbol("u"), b.symbol("a"));
        b.add_transition(s1, u, s2).add_transition(s2, a, s3);
        b.add_initial(s1);
        b.build().unwrap()
    }

    #[test]
    fn elimination_rewires_through_closure() {
        let nfa = chain();
        let omap = ObservationMap::with_unobservable_names(&nfa, &["u"]).unwrap();
        let out = eliminate_unobservable(&nfa, &omap).unwrap();
        assert_eq!(out.num_states(), 3);
        assert_eq!(out.symbols().names(), &["a".to_string()]);
        let t: Vec<_> = out.transitions().collect();
        assert_eq!(t, vec![(0, 0, 2), (1, 0, 2)]);
        assert_eq!(out.initial(), &out.set_of([0, 1]));
    }

    #[test]
    fn identity_projection_is_structural_identity() {
        let nfa = chain();
        let out = eliminate_unobservable(&nfa, &ObservationMap::all_observable(&nfa)).unwrap();
        assert_eq!(out, nfa);
    }

    #[test]
    fn trailing_unobservable_moves_are_included() {
        // 1 -a-> 2 -u-> 3: observing `a` may leave the system in 3.
        let mut b = NfaBuilder::new();
        let (s1, s2, s3) = (b.state("1"), b.state("2"), b.state("3"));
        let (u, a) = (b.symbol("u"), b.symbol("a"));
        b.add_transition(s1, a, s2)
            .add_transition(s2, u, s3)
            .add_initial(s1);
        let nfa = b.build().unwrap();
        let omap = ObservationMap::with_unobservable(&nfa, &[u]).unwrap();
        let out = eliminate_unobservable(&nfa, &omap).unwrap();
        assert_eq!(out.run(out.initial(), &[0]).unwrap(), out.set_of([1, 2]));
    }

    #[test]
    fn observer_of_t() {
        let mut b = NfaBuilder::new();
        let (s1, s2) = (b.state("1"), b.state("2"));
        let a = b.symbol("a");
        b.add_transition(s1, a, s1)
            .add_transition(s1, a, s2)
            .add_initial(s1);
        let t = b.build().unwrap();
        let g = observer(&t, &ObservationMap::all_observable(&t)).unwrap();
        assert_eq!(g.nodes(), &[t.set_of([0]), t.set_of([0, 1])]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 0, 1), (1, 0, 1)]);
    }

    #[test]
    fn observer_without_initial_states_is_empty() {
        let mut b = NfaBuilder::new();
        b.state("p");
        b.symbol("a");
        let nfa = b.build().unwrap();
        let g = observer(&nfa, &ObservationMap::all_observable(&nfa)).unwrap();
        assert_eq!(g.num_nodes(), 0);
        assert_eq!(g.root(), None);
    }

    #[test]
    fn mismatched_map_is_rejected() {
        let nfa = chain();
        let omap = ObservationMap::from_flags(vec![true]);
        assert!(observer(&nfa, &omap).is_err());
    }
}
