//! Reductions from current-state opacity to the other notions and to universality.

use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::observer::{eliminate_unobservable, ObservationMap};
use crate::opacity::{validate_split, IfoQuery, IsoQuery, LboQuery};
use crate::stateset::StateSet;

use super::CsoInstance;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoInstance {
    pub nfa: Nfa,
    pub query: IsoQuery,
    pub omap: ObservationMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IfoInstance {
    pub nfa: Nfa,
    pub query: IfoQuery,
    pub omap: ObservationMap,
}

/// An LBO instance whose languages are `⋃ L_m(nfa, p, f)` over pair lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LboPairs {
    pub secret_pairs: Vec<(usize, usize)>,
    pub nonsecret_pairs: Vec<(usize, usize)>,
}

fn has_only_full_self_loops(nfa: &Nfa, p: usize) -> bool {
    (0..nfa.num_symbols()).all(|a| *nfa.successors(p, a) == nfa.set_of([p]))
}

fn out_degree(nfa: &Nfa, p: usize) -> usize {
    (0..nfa.num_symbols())
        .map(|a| nfa.successors(p, a).len())
        .sum()
}

/// The secret state of a SAT-gadget-shaped instance: a single initial secret
/// state with a self-loop on every symbol, no other transitions in or out,
/// and every other state non-secret.
fn sat_secret(inst: &CsoInstance) -> Option<usize> {
    let nfa = &inst.nfa;
    if inst.secret.len() != 1 {
        return None;
    }
    let p = inst.secret.iter().next()?;
    let isolated = nfa
        .transitions()
        .all(|(from, _, to)| (from == p) == (to == p));
    (nfa.initial().contains(p)
        && has_only_full_self_loops(nfa, p)
        && isolated
        && inst.nonsecret == nfa.all_states().difference(&inst.secret))
    .then_some(p)
}

/// The secret state of a coloring-gadget-shaped instance: a single initial
/// state, a single secret state without outgoing transitions, and every other
/// state non-secret.
fn sink_secret(inst: &CsoInstance) -> Option<(usize, usize)> {
    let nfa = &inst.nfa;
    if inst.secret.len() != 1 || nfa.initial().len() != 1 {
        return None;
    }
    let s = inst.secret.iter().next()?;
    let q1 = nfa.initial().iter().next()?;
    (q1 != s
        && out_degree(nfa, s) == 0
        && inst.nonsecret == nfa.all_states().difference(&inst.secret))
    .then_some((q1, s))
}

/// Secret and non-secret pair lists for the LBO instance equivalent to `inst`.
///
/// For the SAT gadget the secret language is `L_m(A, q_s, q_s) = Σ*` and the
/// non-secret one is `L_m(A, I − {q_s}, Q − {q_s})`. Any other instance uses
/// `L_m(A, I, Q_S)` against `L_m(A, I, Q_NS)`.
pub fn lbo_pairs(inst: &CsoInstance) -> Result<LboPairs> {
    validate_split(
        &inst.nfa,
        &inst.secret,
        &inst.nonsecret,
        "secret/non-secret state",
    )?;
    let nfa = &inst.nfa;
    let product = |left: &StateSet, right: &StateSet| -> Vec<(usize, usize)> {
        left.iter()
            .flat_map(|p| right.iter().map(move |f| (p, f)))
            .collect()
    };
    Ok(match sat_secret(inst) {
        Some(p) => {
            let rest = nfa.all_states().difference(&inst.secret);
            let others = nfa.initial().difference(&inst.secret);
            LboPairs {
                secret_pairs: vec![(p, p)],
                nonsecret_pairs: product(&others, &rest),
            }
        }
        None => LboPairs {
            secret_pairs: product(nfa.initial(), &inst.secret),
            nonsecret_pairs: product(nfa.initial(), &inst.nonsecret),
        },
    })
}

/// LBO instance equivalent to `inst` (see [`lbo_pairs`]).
pub fn cso_to_lbo(inst: &CsoInstance) -> Result<LboQuery> {
    let pairs = lbo_pairs(inst)?;
    LboQuery::from_pairs(&inst.nfa, &pairs.secret_pairs, &pairs.nonsecret_pairs)
}

/// For the SAT gadget: the same automaton with `I_S = {q_s}` and `I_NS = I − {q_s}`.
pub fn cso_to_iso_direct(inst: &CsoInstance) -> Result<IsoInstance> {
    let p = sat_secret(inst).ok_or_else(|| {
        Error::Shape("expected an isolated, fully self-looping secret state".into())
    })?;
    let nfa = inst.nfa.clone();
    let query = IsoQuery {
        secret_initial: nfa.set_of([p]),
        nonsecret_initial: nfa.initial().difference(&nfa.set_of([p])),
    };
    Ok(IsoInstance {
        nfa,
        query,
        omap: inst.omap.clone(),
    })
}

/// For instances with one initial state `q1` and a secret sink `s`: adds a
/// primed copy of every state that can reach `s` (and of `q1`), keeping the
/// copies' transitions except those into `s`. `I = {q1, q1'}`,
/// `I_S = {q1}`, `I_NS = {q1'}`.
pub fn cso_to_iso_split(inst: &CsoInstance) -> Result<IsoInstance> {
    let (q1, s) = sink_secret(inst).ok_or_else(|| {
        Error::Shape("expected one initial state and a secret state without successors".into())
    })?;
    let nfa = &inst.nfa;
    let n = nfa.num_states();

    let mut copied = nfa.set_of([q1]);
    let mut frontier = vec![s];
    let mut seen = nfa.set_of([s]);
    while let Some(r) = frontier.pop() {
        for (p, _, q) in nfa.transitions() {
            if q == r && seen.insert(p) {
                copied.insert(p);
                frontier.push(p);
            }
        }
    }
    copied.remove(s);

    let mut b = nfa.to_builder();
    let mut copy_of = vec![None; n];
    for p in &copied {
        copy_of[p] = Some(b.add_state(&format!("{}'", nfa.state_name(p)))?);
    }
    for (p, a, r) in nfa.transitions() {
        if let Some(p2) = copy_of[p] {
            if r != s {
                b.add_transition(p2, a, copy_of[r].unwrap_or(r));
            }
        }
    }
    let q1c = copy_of[q1].expect("q1 is always copied");
    b.add_initial(q1c);
    let out = b.build()?;
    let query = IsoQuery {
        secret_initial: out.set_of([q1]),
        nonsecret_initial: out.set_of([q1c]),
    };
    Ok(IsoInstance {
        nfa: out,
        query,
        omap: inst.omap.clone(),
    })
}

/// Turns an ISO instance from either reduction family into an IFO instance.
///
/// SAT family (secret initial state with only full self-loops): every state
/// becomes accepting, `IQ_S = {(q_s, q_s)}`, `IQ_NS = I_NS × Q`.
/// Coloring family: `s` and `f` become the accepting states,
/// `IQ_S = {(q1, s)}`, `IQ_NS = {(q1', f)}`.
pub fn iso_to_ifo(iso: &IsoInstance) -> Result<IfoInstance> {
    let nfa = &iso.nfa;
    let q = &iso.query;
    if q.secret_initial.len() != 1 || q.nonsecret_initial.is_empty() {
        return Err(Error::Shape("expected one secret initial state".into()));
    }
    let p = q.secret_initial.iter().next().unwrap_or_default();

    if has_only_full_self_loops(nfa, p) {
        let out = nfa.with_accepting(nfa.all_states());
        let nonsecret_pairs = q
            .nonsecret_initial
            .iter()
            .flat_map(|i| (0..nfa.num_states()).map(move |f| (i, f)))
            .collect();
        return Ok(IfoInstance {
            nfa: out,
            query: IfoQuery {
                secret_pairs: vec![(p, p)],
                nonsecret_pairs,
            },
            omap: iso.omap.clone(),
        });
    }

    if q.nonsecret_initial.len() != 1 {
        return Err(Error::Shape("expected one non-secret initial state".into()));
    }
    let p_ns = q.nonsecret_initial.iter().next().unwrap_or_default();
    let from_secret = nfa.reachable(&q.secret_initial);
    let from_nonsecret = nfa.reachable(&q.nonsecret_initial);
    let sinks: Vec<usize> = from_secret
        .difference(&from_nonsecret)
        .iter()
        .filter(|&r| out_degree(nfa, r) == 0)
        .collect();
    let loops: Vec<usize> = (0..nfa.num_states())
        .filter(|&r| has_only_full_self_loops(nfa, r))
        .collect();
    let (&[s], &[f]) = (sinks.as_slice(), loops.as_slice()) else {
        return Err(Error::Shape(
            "expected a unique secret sink and a unique non-secret trap state".into(),
        ));
    };
    Ok(IfoInstance {
        nfa: nfa.with_accepting(nfa.set_of([s, f])),
        query: IfoQuery {
            secret_pairs: vec![(p, s)],
            nonsecret_pairs: vec![(p_ns, f)],
        },
        omap: iso.omap.clone(),
    })
}

/// The automaton with the single secret state rejecting and every other state
/// accepting, after removing unobservable moves. For instances whose secret
/// state persists in every estimate (the SAT gadget), it is universal iff the
/// instance is current-state opaque.
pub fn cso_to_universality(inst: &CsoInstance) -> Result<Nfa> {
    if inst.secret.len() != 1 {
        return Err(Error::Shape(format!(
            "expected exactly one secret state, found {}",
            inst.secret.len()
        )));
    }
    let base = if inst.omap.is_identity() {
        inst.nfa.clone()
    } else {
        eliminate_unobservable(&inst.nfa, &inst.omap)?
    };
    let accepting = base.all_states().difference(&inst.secret);
    Ok(base.with_accepting(accepting))
}
