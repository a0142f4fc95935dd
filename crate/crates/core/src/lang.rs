//! Emptiness, universality, inclusion and equivalence of NFA languages.
//!
//! Inclusion determinizes the right-hand automaton on the fly (no antichains),
//! so worst-case cost is exponential in its state count.

use std::borrow::Cow;

use crate::error::Result;
use crate::nfa::{Nfa, NfaBuilder};
use crate::search::shortest_path;
use crate::stateset::StateSet;
use crate::verdict::{Timer, Verdict};

/// `holds` iff `L_m(nfa)` is empty; otherwise the witness is a shortest accepted word.
pub fn is_empty(nfa: &Nfa) -> Verdict {
    let timer = Timer::start();
    let found = shortest_path(
        nfa.initial().iter(),
        |&p, out| {
            for a in 0..nfa.num_symbols() {
                for q in nfa.successors(p, a) {
                    out.push((a, q));
                }
            }
        },
        |&q| nfa.accepting().contains(q),
    );
    let stats = timer.stats(found.explored);
    match found.path {
        None => Verdict::holds(stats),
        Some(w) => Verdict::fails(nfa.word_names(&w), stats),
    }
}

/// `holds` iff `L_m(nfa) = Σ*`; otherwise the witness is the least shortest rejected word.
pub fn is_universal(nfa: &Nfa) -> Verdict {
    let timer = Timer::start();
    let found = shortest_path(
        [nfa.initial().clone()],
        |e: &StateSet, out| {
            for a in 0..nfa.num_symbols() {
                out.push((a, nfa.step_unchecked(e, a)));
            }
        },
        |e| !e.intersects(nfa.accepting()),
    );
    let stats = timer.stats(found.explored);
    match found.path {
        None => Verdict::holds(stats),
        Some(w) => Verdict::fails(nfa.word_names(&w), stats),
    }
}

/// `holds` iff `L_m(a) ⊆ L_m(b)`; otherwise the witness is a shortest word of
/// `L_m(a) − L_m(b)`.
///
/// Alphabets are matched by name; symbols missing from `b` are never accepted by `b`.
pub fn is_included(a: &Nfa, b: &Nfa) -> Result<Verdict> {
    let timer = Timer::start();
    let (a, b) = align(a, b)?;
    let (a, b) = (a.as_ref(), b.as_ref());
    let width = a.num_symbols();
    let found = shortest_path(
        a.initial().iter().map(|q| (q, b.initial().clone())),
        |(p, e): &(usize, StateSet), out| {
            for sym in 0..width {
                let targets = a.successors(*p, sym);
                if targets.is_empty() {
                    continue;
                }
                let next = b.step_unchecked(e, sym);
                for q in targets {
                    out.push((sym, (q, next.clone())));
                }
            }
        },
        |(q, e)| a.accepting().contains(*q) && !e.intersects(b.accepting()),
    );
    let stats = timer.stats(found.explored);
    Ok(match found.path {
        None => Verdict::holds(stats),
        Some(w) => Verdict::fails(a.word_names(&w), stats),
    })
}

/// `holds` iff `L_m(a) = L_m(b)`. The witness is the shorter of the two
/// inclusion witnesses (the `a ⊄ b` one on a tie), so it is a shortest word
/// of the symmetric difference.
pub fn is_equivalent(a: &Nfa, b: &Nfa) -> Result<Verdict> {
    let forward = is_included(a, b)?;
    let backward = is_included(b, a)?;
    let explored = forward.stats.explored + backward.stats.explored;
    let elapsed = forward.stats.elapsed + backward.stats.elapsed;
    let mut out = match (forward.witness_len(), backward.witness_len()) {
        (Some(f), Some(g)) if g < f => backward,
        (None, Some(_)) => backward,
        _ => forward,
    };
    out.stats.explored = explored;
    out.stats.elapsed = elapsed;
    Ok(out)
}

/// Re-indexes both automata over the union alphabet: the symbols of `a` in
/// their original order, followed by the symbols only `b` has.
fn align<'a>(a: &'a Nfa, b: &'a Nfa) -> Result<(Cow<'a, Nfa>, Cow<'a, Nfa>)> {
    if a.symbols().names() == b.symbols().names() {
        return Ok((Cow::Borrowed(a), Cow::Borrowed(b)));
    }
    let mut union: Vec<&str> = a.symbols().names().iter().map(String::as_str).collect();
    for name in b.symbols().names() {
        if a.symbols().get(name).is_none() {
            union.push(name);
        }
    }
    Ok((
        Cow::Owned(reindex(a, &union)?),
        Cow::Owned(reindex(b, &union)?),
    ))
}

fn reindex(nfa: &Nfa, alphabet: &[&str]) -> Result<Nfa> {
    let mut b = NfaBuilder::new();
    for q in 0..nfa.num_states() {
        b.add_state(nfa.state_name(q))?;
    }
    for name in alphabet {
        b.add_symbol(name)?;
    }
    for (p, a, q) in nfa.transitions() {
        let sym = b.symbol(nfa.symbol_name(a));
        b.add_transition(p, sym, q);
    }
    for q in nfa.initial() {
        b.add_initial(q);
    }
    for q in nfa.accepting() {
        b.add_accepting(q);
    }
    b.build()
}

/// A one-state automaton accepting every word over `alphabet`.
pub fn universal_automaton<S: AsRef<str>>(alphabet: &[S]) -> Result<Nfa> {
    let mut b = NfaBuilder::new();
    let q = b.add_state("all")?;
    for name in alphabet {
        let a = b.add_symbol(name.as_ref())?;
        b.add_transition(q, a, q);
    }
    b.add_initial(q).add_accepting(q);
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t_with_accepting(acc: usize) -> Nfa {
        let mut b = NfaBuilder::new();
        let (s1, s2) = (b.state("1"), b.state("2"));
        let a = b.symbol("a");
        b.add_transition(s1, a, s1).add_transition(s1, a, s2);
        b.add_initial(s1).add_accepting(acc);
        b.build().unwrap()
    }

    #[test]
    fn emptiness() {
        let t = t_with_accepting(1);
        let none = t.with_accepting(t.empty_set());
        assert!(is_empty(&none).holds);
        let v = is_empty(&t);
        assert!(!v.holds);
        assert_eq!(v.witness, Some(vec!["a".to_string()]));
    }

    #[test]
    fn universality() {
        let u = universal_automaton(&["x", "y"]).unwrap();
        assert!(is_universal(&u).holds);
        let t = t_with_accepting(1);
        let v = is_universal(&t);
        assert_eq!(v.witness, Some(vec![]));
    }

    #[test]
    fn rejected_by_dead_end_is_found() {
        // Accepts only "a"; "aa" dies.
        let mut b = NfaBuilder::new();
        let (p, q) = (b.state("p"), b.state("q"));
        let a = b.symbol("a");
        b.add_transition(p, a, q)
            .add_initial(p)
            .add_accepting(p)
            .add_accepting(q);
        let v = is_universal(&b.build().unwrap());
        assert_eq!(v.witness, Some(vec!["a".to_string(), "a".to_string()]));
    }

    #[test]
    fn inclusion_examples() {
        let t = t_with_accepting(1);
        assert!(is_included(&t, &t).unwrap().holds);
        let u = universal_automaton(&["a"]).unwrap();
        assert!(is_included(&t, &u).unwrap().holds);
        assert!(!is_included(&u, &t).unwrap().holds);
    }

    #[test]
    fn inclusion_over_different_alphabets() {
        let t = t_with_accepting(1);
        let u = universal_automaton(&["b", "a"]).unwrap();
        assert!(is_included(&t, &u).unwrap().holds);
        let v = is_included(&u, &t).unwrap();
        assert_eq!(v.witness, Some(vec![]));
        let t_plus = t.with_accepting(t.set_of([1]));
        let u_nonempty = universal_automaton(&["b"]).unwrap();
        assert!(!is_included(&t_plus, &u_nonempty).unwrap().holds);
    }

    #[test]
    fn equivalence_examples() {
        let t2 = t_with_accepting(1);
        let t1 = t_with_accepting(0);
        assert!(is_equivalent(&t2, &t2).unwrap().holds);
        let v = is_equivalent(&t2, &t1).unwrap();
        assert!(!v.holds);
        // t1 accepts ε but t2 does not.
        assert_eq!(v.witness, Some(vec![]));
    }
}
