//! Checkers for current-state, initial-state, initial-and-final-state,
//! k-step, infinite-step and language-based opacity.
//!
//! State-based checkers first remove unobservable moves, so the projection is
//! the identity on the automaton they search. Witnesses are observed words,
//! shortest first; single-root searches also break ties towards the
//! lexicographically least word by symbol index.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lang::is_included;
use crate::nfa::{Nfa, NfaBuilder};
use crate::observer::{ObservationMap, Projected};
use crate::search::{shortest_path, trace};
use crate::stateset::StateSet;
use crate::verdict::{Timer, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsoQuery {
    pub secret: StateSet,
    pub nonsecret: StateSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoQuery {
    pub secret_initial: StateSet,
    pub nonsecret_initial: StateSet,
}

/// Secret and non-secret `(initial, accepting)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IfoQuery {
    pub secret_pairs: Vec<(usize, usize)>,
    pub nonsecret_pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KsoQuery {
    pub secret: StateSet,
    pub nonsecret: StateSet,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsoQuery {
    pub secret: StateSet,
    pub nonsecret: StateSet,
}

/// Secret and non-secret languages, each given by an automaton over the same alphabet.
///
/// Disjointness of the two languages is not checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LboQuery {
    pub secret_lang: Nfa,
    pub nonsecret_lang: Nfa,
}

impl LboQuery {
    /// Languages `⋃ L_m(nfa, p, f)` over each pair list. A list forming a
    /// product `I' × F'` uses `nfa` itself; others use [`language_of_pairs`].
    pub fn from_pairs(
        nfa: &Nfa,
        secret_pairs: &[(usize, usize)],
        nonsecret_pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let lang = |pairs: &[(usize, usize)]| -> Result<Nfa> {
            for &(p, f) in pairs {
                nfa.check_state(p)?;
                nfa.check_state(f)?;
            }
            match as_product(nfa, pairs) {
                Some((init, fin)) => Ok(nfa.with_initial(init).with_accepting(fin)),
                None => language_of_pairs(nfa, pairs),
            }
        };
        Ok(LboQuery {
            secret_lang: lang(secret_pairs)?,
            nonsecret_lang: lang(nonsecret_pairs)?,
        })
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpacityQuery {
    Cso(CsoQuery),
    Iso(IsoQuery),
    Ifo(IfoQuery),
    Kso(KsoQuery),
    Inso(InsoQuery),
    Lbo(LboQuery),
}

impl OpacityQuery {
    pub fn name(&self) -> &'static str {
        match self {
            OpacityQuery::Cso(_) => "cso",
            OpacityQuery::Iso(_) => "iso",
            OpacityQuery::Ifo(_) => "ifo",
            OpacityQuery::Kso(_) => "kso",
            OpacityQuery::Inso(_) => "inso",
            OpacityQuery::Lbo(_) => "lbo",
        }
    }
}

/// Dispatches to the checker for the query's notion. `nfa` is unused for LBO.
pub fn check(nfa: &Nfa, query: &OpacityQuery, omap: &ObservationMap) -> Result<Verdict> {
    match query {
        OpacityQuery::Cso(q) => check_cso(nfa, q, omap),
        OpacityQuery::Iso(q) => check_iso(nfa, q, omap),
        OpacityQuery::Ifo(q) => check_ifo(nfa, q, omap),
        OpacityQuery::Kso(q) => check_kso(nfa, q, omap),
        OpacityQuery::Inso(q) => check_inso(nfa, q, omap),
        OpacityQuery::Lbo(q) => check_lbo(q, omap),
    }
}

pub(crate) fn validate_split(
    nfa: &Nfa,
    secret: &StateSet,
    nonsecret: &StateSet,
    what: &'static str,
) -> Result<()> {
    nfa.check_set(secret)?;
    nfa.check_set(nonsecret)?;
    if secret.intersects(nonsecret) {
        return Err(Error::Overlap { what });
    }
    Ok(())
}

fn finish(proj: &Projected, path: Option<Vec<usize>>, timer: &Timer, explored: usize) -> Verdict {
    let stats = timer.stats(explored);
    match path {
        None => Verdict::holds(stats),
        Some(w) => Verdict::fails(proj.names(&w), stats),
    }
}

/// Current-state opacity: no reachable estimate meets `Q_S` while missing `Q_NS`.
pub fn check_cso(nfa: &Nfa, q: &CsoQuery, omap: &ObservationMap) -> Result<Verdict> {
    validate_split(nfa, &q.secret, &q.nonsecret, "secret/non-secret state")?;
    let timer = Timer::start();
    let proj = Projected::new(nfa, omap)?;
    let p = &proj.nfa;
    let root = p.initial().clone();
    if root.is_empty() || q.secret.is_empty() {
        return Ok(Verdict::holds(timer.stats(usize::from(!root.is_empty()))));
    }
    let found = shortest_path(
        [root],
        |e: &StateSet, out| {
            for a in 0..p.num_symbols() {
                let next = p.step_unchecked(e, a);
                if !next.is_empty() {
                    out.push((a, next));
                }
            }
        },
        |e| e.intersects(&q.secret) && !e.intersects(&q.nonsecret),
    );
    Ok(finish(&proj, found.path, &timer, found.explored))
}

/// Initial-state opacity: `P(L(A, I_S)) ⊆ P(L(A, I_NS))` over generated languages.
pub fn check_iso(nfa: &Nfa, q: &IsoQuery, omap: &ObservationMap) -> Result<Verdict> {
    validate_split(
        nfa,
        &q.secret_initial,
        &q.nonsecret_initial,
        "secret/non-secret initial",
    )?;
    if !q.secret_initial.is_subset(nfa.initial()) || !q.nonsecret_initial.is_subset(nfa.initial()) {
        return Err(Error::InvalidQuery(
            "secret and non-secret initial states must be initial".into(),
        ));
    }
    let timer = Timer::start();
    let proj = Projected::new(nfa, omap)?;
    let p = &proj.nfa;
    let root = (
        proj.close(&q.secret_initial),
        proj.close(&q.nonsecret_initial),
    );
    let found = shortest_path(
        [root],
        |(s, ns): &(StateSet, StateSet), out| {
            for a in 0..p.num_symbols() {
                let s2 = p.step_unchecked(s, a);
                if !s2.is_empty() {
                    out.push((a, (s2, p.step_unchecked(ns, a))));
                }
            }
        },
        |(s, ns)| !s.is_empty() && ns.is_empty(),
    );
    Ok(finish(&proj, found.path, &timer, found.explored))
}

fn validate_pairs(nfa: &Nfa, q: &IfoQuery) -> Result<()> {
    for &(i, f) in q.secret_pairs.iter().chain(&q.nonsecret_pairs) {
        nfa.check_state(i)?;
        nfa.check_state(f)?;
        if !nfa.initial().contains(i) || !nfa.accepting().contains(f) {
            return Err(Error::InvalidQuery(format!(
                "pair ({}, {}) is not in I × F",
                nfa.state_name(i),
                nfa.state_name(f)
            )));
        }
    }
    if q.secret_pairs.iter().any(|p| q.nonsecret_pairs.contains(p)) {
        return Err(Error::Overlap {
            what: "secret/non-secret pair",
        });
    }
    Ok(())
}

/// If `pairs` is exactly `I' × F'`, returns `(I', F')`.
pub fn as_product(nfa: &Nfa, pairs: &[(usize, usize)]) -> Option<(StateSet, StateSet)> {
    let lefts = nfa.set_of(pairs.iter().map(|p| p.0));
    let rights = nfa.set_of(pairs.iter().map(|p| p.1));
    let mut distinct: Vec<_> = pairs.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    (distinct.len() == lefts.len() * rights.len()).then_some((lefts, rights))
}

/// An automaton for `⋃ L_m(A, s, F_s)` over the given pairs, after grouping
/// pairs by their left component: one copy of `nfa` per distinct left state.
/// Copy `i` renames state `q` to `q#i`.
pub fn language_of_pairs(nfa: &Nfa, pairs: &[(usize, usize)]) -> Result<Nfa> {
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for &(s, f) in pairs {
        match groups.iter_mut().find(|g| g.0 == s) {
            Some(g) => g.1.push(f),
            None => groups.push((s, vec![f])),
        }
    }
    groups.sort_by_key(|g| g.0);
    let n = nfa.num_states();
    let mut b = NfaBuilder::new();
    for i in 0..groups.len() {
        for q in 0..n {
            b.add_state(&format!("{}#{i}", nfa.state_name(q)))?;
        }
    }
    for name in nfa.symbols().names() {
        b.add_symbol(name)?;
    }
    for (i, (s, finals)) in groups.iter().enumerate() {
        let base = i * n;
        for (p, a, q) in nfa.transitions() {
            b.add_transition(base + p, a, base + q);
        }
        b.add_initial(base + s);
        for &f in finals {
            b.add_accepting(base + f);
        }
    }
    b.build()
}

fn ifo_with(nfa: &Nfa, q: &IfoQuery, omap: &ObservationMap, product: bool) -> Result<Verdict> {
    validate_pairs(nfa, q)?;
    let timer = Timer::start();
    if q.secret_pairs.is_empty() {
        return Ok(Verdict::holds(timer.stats(0)));
    }
    let secret = language_of_pairs(nfa, &q.secret_pairs)?;
    let nonsecret = match product
        .then(|| as_product(nfa, &q.nonsecret_pairs))
        .flatten()
    {
        Some((init, fin)) => nfa.with_initial(init).with_accepting(fin),
        None => language_of_pairs(nfa, &q.nonsecret_pairs)?,
    };
    let mut v = projected_inclusion(&secret, &nonsecret, omap)?;
    v.stats.elapsed = timer.stats(0).elapsed;
    Ok(v)
}

/// Initial-and-final-state opacity, decided as `P(L_S) ⊆ P(L_NS)`.
///
/// When the non-secret pairs form a product `I_NS × F_NS`, `L_NS` is `nfa`
/// itself with those initial and accepting states; otherwise both languages
/// use one copy of `nfa` per distinct left component.
pub fn check_ifo(nfa: &Nfa, q: &IfoQuery, omap: &ObservationMap) -> Result<Verdict> {
    ifo_with(nfa, q, omap, true)
}

/// [`check_ifo`] without the product shortcut.
pub fn check_ifo_general(nfa: &Nfa, q: &IfoQuery, omap: &ObservationMap) -> Result<Verdict> {
    ifo_with(nfa, q, omap, false)
}

fn projected_inclusion(a: &Nfa, b: &Nfa, omap: &ObservationMap) -> Result<Verdict> {
    let pa = Projected::new(a, omap)?;
    let pb = Projected::new(b, omap)?;
    is_included(&pa.nfa, &pb.nfa)
}

/// Language-based opacity: `P(L_m(secret)) ⊆ P(L_m(nonsecret))`.
pub fn check_lbo(q: &LboQuery, omap: &ObservationMap) -> Result<Verdict> {
    if q.secret_lang.symbols().names() != q.nonsecret_lang.symbols().names() {
        return Err(Error::InvalidQuery(
            "secret and non-secret languages must share an alphabet".into(),
        ));
    }
    projected_inclusion(&q.secret_lang, &q.nonsecret_lang, omap)
}

/// k-step opacity.
pub fn check_kso(nfa: &Nfa, q: &KsoQuery, omap: &ObservationMap) -> Result<Verdict> {
    validate_split(nfa, &q.secret, &q.nonsecret, "secret/non-secret state")?;
    step_opacity(nfa, &q.secret, &q.nonsecret, Some(q.k), omap)
}

/// Infinite-step opacity.
pub fn check_inso(nfa: &Nfa, q: &InsoQuery, omap: &ObservationMap) -> Result<Verdict> {
    validate_split(nfa, &q.secret, &q.nonsecret, "secret/non-secret state")?;
    step_opacity(nfa, &q.secret, &q.nonsecret, None, omap)
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Node {
    /// Estimate after the observed prefix `s`.
    Estimate(StateSet),
    /// States reachable from the secret and non-secret parts of an estimate
    /// during the suffix `t`.
    Pair(StateSet, StateSet),
}

/// Breadth-first search over observer estimates and, branching from each of
/// them without consuming a symbol, over `(secret part, non-secret part)`
/// pairs stepped in lockstep for at most `horizon` further symbols.
///
/// A pair is kept only if it has the smallest suffix length seen so far for
/// it; a violation is a pair whose secret part survives while its non-secret
/// part has died.
fn step_opacity(
    nfa: &Nfa,
    secret: &StateSet,
    nonsecret: &StateSet,
    horizon: Option<usize>,
    omap: &ObservationMap,
) -> Result<Verdict> {
    let timer = Timer::start();
    let proj = Projected::new(nfa, omap)?;
    let p = &proj.nfa;
    let root = p.initial().clone();
    if root.is_empty() || secret.is_empty() {
        return Ok(Verdict::holds(timer.stats(usize::from(!root.is_empty()))));
    }

    struct Entry {
        node: Node,
        depth: usize,
    }
    let mut entries: Vec<Entry> = Vec::new();
    let mut parent: Vec<Option<(usize, usize)>> = Vec::new();
    let mut best: HashMap<Node, usize> = HashMap::new();
    let mut queue = std::collections::VecDeque::new();

    let violated =
        |node: &Node| matches!(node, Node::Pair(s, ns) if !s.is_empty() && ns.is_empty());

    // Registers a node; returns its id if it was new or improved.
    let mut push = |node: Node,
                    depth: usize,
                    from: Option<(usize, usize)>,
                    entries: &mut Vec<Entry>,
                    parent: &mut Vec<Option<(usize, usize)>>|
     -> Option<usize> {
        match best.get(&node) {
            Some(&d) if d <= depth => return None,
            _ => {}
        }
        best.insert(node.clone(), depth);
        entries.push(Entry { node, depth });
        parent.push(from);
        Some(entries.len() - 1)
    };

    let split = |e: &StateSet| Node::Pair(e.intersection(secret), e.intersection(nonsecret));

    let mut discover = |node: Node,
                        depth: usize,
                        from: Option<(usize, usize)>,
                        entries: &mut Vec<Entry>,
                        parent: &mut Vec<Option<(usize, usize)>>,
                        queue: &mut std::collections::VecDeque<usize>|
     -> Option<usize> {
        let is_estimate = matches!(node, Node::Estimate(_));
        let pair = match &node {
            Node::Estimate(e) if e.intersects(secret) => Some(split(e)),
            _ => None,
        };
        let id = push(node, depth, from, entries, parent)?;
        queue.push_back(id);
        if violated(&entries[id].node) {
            return Some(id);
        }
        if is_estimate {
            if let Some(pair) = pair {
                // Same observed word, zero suffix symbols so far.
                let from_same = parent[id];
                if let Some(pid) = push(pair, 0, from_same, entries, parent) {
                    queue.push_back(pid);
                    if violated(&entries[pid].node) {
                        return Some(pid);
                    }
                }
            }
        }
        None
    };

    let mut hit = discover(
        Node::Estimate(root),
        0,
        None,
        &mut entries,
        &mut parent,
        &mut queue,
    );
    while hit.is_none() {
        let Some(id) = queue.pop_front() else { break };
        let depth = entries[id].depth;
        let node = entries[id].node.clone();
        for a in 0..p.num_symbols() {
            let (next, next_depth) = match &node {
                Node::Estimate(e) => {
                    let e2 = p.step_unchecked(e, a);
                    if e2.is_empty() {
                        continue;
                    }
                    (Node::Estimate(e2), 0)
                }
                Node::Pair(s, ns) => {
                    if horizon.is_some_and(|k| depth >= k) {
                        break;
                    }
                    let s2 = p.step_unchecked(s, a);
                    if s2.is_empty() {
                        continue;
                    }
                    (Node::Pair(s2, p.step_unchecked(ns, a)), depth + 1)
                }
            };
            hit = discover(
                next,
                next_depth,
                Some((id, a)),
                &mut entries,
                &mut parent,
                &mut queue,
            );
            if hit.is_some() {
                break;
            }
        }
    }
    let explored = best.len();
    Ok(finish(
        &proj,
        hit.map(|id| trace(&parent, id)),
        &timer,
        explored,
    ))
}
