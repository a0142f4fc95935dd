//! Nondeterministic finite automata over interned state and symbol names.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::stateset::StateSet;

/// A finite word, stored as symbol indices into some automaton's alphabet.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(symbols: Vec<usize>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn push(&mut self, symbol: usize) {
        self.0.push(symbol);
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

impl Deref for Word {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for Word {
    fn from(symbols: Vec<usize>) -> Self {
        Word(symbols)
    }
}

impl FromIterator<usize> for Word {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Bidirectional map between names and dense indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Interner {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Interner {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Returns the index of `name`, adding it if it is new.
    pub fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }

    fn try_add(&mut self, name: &str) -> Result<usize> {
        if self.index.contains_key(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        Ok(self.intern(name))
    }
}

/// A nondeterministic finite automaton `(Q, Σ, δ, I, F)`.
///
/// Successor sets are stored per `(state, symbol)` so that stepping an
/// estimate costs one bit-vector union per member. Values are immutable once
/// built; derive variants with [`Nfa::with_initial`] and friends.
#[derive(Clone, PartialEq, Eq)]
pub struct Nfa {
    states: Interner,
    symbols: Interner,
    // succ[state * |Σ| + symbol]
    succ: Vec<StateSet>,
    initial: StateSet,
    accepting: StateSet,
}

impl Nfa {
    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.symbols.len()
    }

    pub fn states(&self) -> &Interner {
        &self.states
    }

    pub fn symbols(&self) -> &Interner {
        &self.symbols
    }

    pub fn state_name(&self, q: usize) -> &str {
        self.states.name(q)
    }

    pub fn symbol_name(&self, a: usize) -> &str {
        self.symbols.name(a)
    }

    pub fn state(&self, name: &str) -> Result<usize> {
        self.states
            .get(name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn symbol(&self, name: &str) -> Result<usize> {
        self.symbols
            .get(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn initial(&self) -> &StateSet {
        &self.initial
    }

    pub fn accepting(&self) -> &StateSet {
        &self.accepting
    }

    pub fn empty_set(&self) -> StateSet {
        StateSet::empty(self.num_states())
    }

    pub fn all_states(&self) -> StateSet {
        StateSet::full(self.num_states())
    }

    pub fn set_of<I: IntoIterator<Item = usize>>(&self, states: I) -> StateSet {
        StateSet::from_states(self.num_states(), states)
    }

    /// Builds a state set from names.
    pub fn set_of_names<S: AsRef<str>>(&self, names: &[S]) -> Result<StateSet> {
        let mut set = self.empty_set();
        for n in names {
            set.insert(self.state(n.as_ref())?);
        }
        Ok(set)
    }

    /// Successors of a single state under a symbol.
    #[inline]
    pub fn successors(&self, state: usize, symbol: usize) -> &StateSet {
        &self.succ[state * self.symbols.len() + symbol]
    }

    /// Number of `(p, a, q)` triples.
    pub fn num_transitions(&self) -> usize {
        self.succ.iter().map(StateSet::len).sum()
    }

    /// All transitions, ordered by source, then symbol, then target.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let k = self.symbols.len();
        self.succ.iter().enumerate().flat_map(move |(i, targets)| {
            let (p, a) = (i / k, i % k);
            targets.iter().map(move |q| (p, a, q))
        })
    }

    fn check_symbol(&self, symbol: usize) -> Result<()> {
        if symbol >= self.num_symbols() {
            return Err(Error::SymbolOutOfRange {
                index: symbol,
                size: self.num_symbols(),
            });
        }
        Ok(())
    }

    pub fn check_state(&self, state: usize) -> Result<()> {
        if state >= self.num_states() {
            return Err(Error::StateOutOfRange {
                index: state,
                size: self.num_states(),
            });
        }
        Ok(())
    }

    pub fn check_set(&self, set: &StateSet) -> Result<()> {
        match set.iter().find(|&q| q >= self.num_states()) {
            Some(q) => self.check_state(q),
            None => Ok(()),
        }
    }

    /// `δ(E, a)`: the union of the successors of every member of `estimate`.
    pub fn step(&self, estimate: &StateSet, symbol: usize) -> Result<StateSet> {
        self.check_symbol(symbol)?;
        Ok(self.step_unchecked(estimate, symbol))
    }

    #[inline]
    pub(crate) fn step_unchecked(&self, estimate: &StateSet, symbol: usize) -> StateSet {
        let mut out = self.empty_set();
        for q in estimate {
            out.union_with(self.successors(q, symbol));
        }
        out
    }

    /// `δ(E, w)`, the left fold of [`Nfa::step`] over `word`.
    pub fn run(&self, estimate: &StateSet, word: &[usize]) -> Result<StateSet> {
        if let Some(&bad) = word.iter().find(|&&a| a >= self.num_symbols()) {
            self.check_symbol(bad)?;
        }
        let mut current = estimate.clone();
        for &a in word {
            current = self.step_unchecked(&current, a);
        }
        Ok(current)
    }

    pub fn accepts(&self, word: &[usize]) -> Result<bool> {
        Ok(self.run(&self.initial, word)?.intersects(&self.accepting))
    }

    /// States reachable from `from` by any word, `from` included.
    pub fn reachable(&self, from: &StateSet) -> StateSet {
        let mut seen = from.clone();
        let mut stack: Vec<usize> = from.iter().collect();
        while let Some(p) = stack.pop() {
            for a in 0..self.num_symbols() {
                for q in self.successors(p, a) {
                    if seen.insert(q) {
                        stack.push(q);
                    }
                }
            }
        }
        seen
    }

    /// Looks up a word given as symbol names.
    pub fn word_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Word> {
        names.iter().map(|n| self.symbol(n.as_ref())).collect()
    }

    pub fn word_names(&self, word: &[usize]) -> Vec<String> {
        word.iter()
            .map(|&a| self.symbol_name(a).to_string())
            .collect()
    }

    pub fn with_initial(&self, initial: StateSet) -> Nfa {
        Nfa {
            initial,
            ..self.clone()
        }
    }

    pub fn with_accepting(&self, accepting: StateSet) -> Nfa {
        Nfa {
            accepting,
            ..self.clone()
        }
    }

    /// True if `|I| = 1` and every `(state, symbol)` has at most one successor.
    pub fn is_deterministic(&self) -> bool {
        self.initial.len() == 1 && self.succ.iter().all(|s| s.len() <= 1)
    }

    /// Returns a builder seeded with this automaton's contents.
    pub fn to_builder(&self) -> NfaBuilder {
        let mut b = NfaBuilder {
            states: self.states.clone(),
            symbols: self.symbols.clone(),
            transitions: self.transitions().collect(),
            initial: self.initial.iter().collect(),
            accepting: self.accepting.iter().collect(),
        };
        b.transitions.sort_unstable();
        b
    }
}

impl fmt::Debug for Nfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names =
            |set: &StateSet| -> Vec<&str> { set.iter().map(|q| self.state_name(q)).collect() };
        f.debug_struct("Nfa")
            .field("states", &self.states.names())
            .field("alphabet", &self.symbols.names())
            .field("initial", &names(&self.initial))
            .field("accepting", &names(&self.accepting))
            .field("transitions", &self.num_transitions())
            .finish()
    }
}

/// Incremental constructor for [`Nfa`]. Duplicate transitions are merged.
#[derive(Clone, Debug, Default)]
pub struct NfaBuilder {
    states: Interner,
    symbols: Interner,
    transitions: Vec<(usize, usize, usize)>,
    initial: Vec<usize>,
    accepting: Vec<usize>,
}

impl NfaBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_state(&mut self, name: &str) -> Result<usize> {
        self.states.try_add(name)
    }

    pub fn add_symbol(&mut self, name: &str) -> Result<usize> {
        self.symbols.try_add(name)
    }

    /// Returns the index of `name`, declaring the state if needed.
    pub fn state(&mut self, name: &str) -> usize {
        self.states.intern(name)
    }

    /// Returns the index of `name`, declaring the symbol if needed.
    pub fn symbol(&mut self, name: &str) -> usize {
        self.symbols.intern(name)
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.symbols.len()
    }

    pub fn add_transition(&mut self, from: usize, symbol: usize, to: usize) -> &mut Self {
        self.transitions.push((from, symbol, to));
        self
    }

    pub fn add_initial(&mut self, state: usize) -> &mut Self {
        self.initial.push(state);
        self
    }

    pub fn add_accepting(&mut self, state: usize) -> &mut Self {
        self.accepting.push(state);
        self
    }

    pub fn clear_initial(&mut self) -> &mut Self {
        self.initial.clear();
        self
    }

    pub fn clear_accepting(&mut self) -> &mut Self {
        self.accepting.clear();
        self
    }

    pub fn build(self) -> Result<Nfa> {
        let n = self.states.len();
        let k = self.symbols.len();
        let state_ok = |q: usize| {
            if q < n {
                Ok(())
            } else {
                Err(Error::StateOutOfRange { index: q, size: n })
            }
        };
        let mut succ = vec![StateSet::empty(n); n * k];
        for &(p, a, q) in &self.transitions {
            state_ok(p)?;
            state_ok(q)?;
            if a >= k {
                return Err(Error::SymbolOutOfRange { index: a, size: k });
            }
            succ[p * k + a].insert(q);
        }
        let mut initial = StateSet::empty(n);
        for &q in &self.initial {
            state_ok(q)?;
            initial.insert(q);
        }
        let mut accepting = StateSet::empty(n);
        for &q in &self.accepting {
            state_ok(q)?;
            accepting.insert(q);
        }
        Ok(Nfa {
            states: self.states,
            symbols: self.symbols,
            succ,
            initial,
            accepting,
        })
    }
}
