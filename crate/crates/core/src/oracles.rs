//! Brute-force reference implementations, for cross-checking the real
//! algorithms on small inputs. Nothing here uses the observer or the
//! projected automaton.

use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::observer::ObservationMap;
use crate::opacity::{validate_split, OpacityQuery};
use crate::reductions::{assignment_from_bits, CnfFormula, ColorGraph};
use crate::stateset::StateSet;
use crate::verdict::{Timer, Verdict};

pub const MAX_SAT_VARS: usize = 24;
pub const MAX_COLOR_VERTICES: usize = 12;
/// Upper limit on automaton steps taken by [`opacity_brute`].
pub const MAX_BRUTE_STEPS: usize = 50_000_000;

/// The satisfying assignment with the smallest binary value (bit `i` is `x_{i+1}`).
pub fn sat_brute(phi: &CnfFormula) -> Result<Option<Vec<bool>>> {
    let n = phi.num_vars();
    if n > MAX_SAT_VARS {
        return Err(Error::CapExceeded(format!(
            "{n} variables (limit {MAX_SAT_VARS})"
        )));
    }
    Ok((0..1u64 << n)
        .map(|v| assignment_from_bits(v, n))
        .find(|a| phi.is_satisfied_by(a)))
}

/// The lexicographically least proper coloring as a word over `a`, `b`, `c`
/// (position `i` colors vertex `i + 1`).
pub fn coloring_brute(g: &ColorGraph) -> Result<Option<String>> {
    let n = g.num_vertices();
    if n > MAX_COLOR_VERTICES {
        return Err(Error::CapExceeded(format!(
            "{n} vertices (limit {MAX_COLOR_VERTICES})"
        )));
    }
    let mut colors = vec![0u8; n];
    loop {
        if g.is_proper(&colors) {
            return Ok(Some(colors.iter().map(|&c| (b'a' + c) as char).collect()));
        }
        // Odometer with the last vertex least significant.
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            colors[i] += 1;
            if colors[i] < 3 {
                break;
            }
            colors[i] = 0;
        }
    }
}

type Track = (usize, StateSet);

struct Walk<'a> {
    autos: Vec<&'a Nfa>,
    observable: Vec<usize>,
    hidden: Vec<usize>,
    steps: usize,
}

impl<'a> Walk<'a> {
    fn new(autos: Vec<&'a Nfa>, omap: &ObservationMap) -> Self {
        Walk {
            autos,
            observable: omap.observable_symbols(),
            hidden: omap.unobservable_symbols(),
            steps: 0,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > MAX_BRUTE_STEPS {
            return Err(Error::CapExceeded(format!(
                "more than {MAX_BRUTE_STEPS} enumeration steps"
            )));
        }
        Ok(())
    }

    /// States reachable from `set` by unobservable symbols alone.
    fn close(&mut self, auto: usize, set: &StateSet) -> Result<StateSet> {
        let nfa = self.autos[auto];
        let mut cur = set.clone();
        loop {
            let mut next = cur.clone();
            for &u in &self.hidden {
                next.union_with(&nfa.step(&cur, u)?);
            }
            self.tick()?;
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    fn root(&mut self, auto: usize, set: &StateSet) -> Result<Track> {
        Ok((auto, self.close(auto, set)?))
    }

    fn advance(&mut self, tracks: &[Track], a: usize) -> Result<Vec<Track>> {
        tracks
            .iter()
            .map(|(auto, set)| {
                let moved = self.autos[*auto].step(set, a)?;
                Ok((*auto, self.close(*auto, &moved)?))
            })
            .collect()
    }

    /// Shortest, then lexicographically least, observed word `v` with
    /// `|v| <= limit` after which `violated` holds. Branches where `alive`
    /// fails are not extended.
    fn first_violation(
        &mut self,
        roots: Vec<Track>,
        limit: usize,
        violated: &dyn Fn(&[Track]) -> bool,
        alive: &dyn Fn(&[Track]) -> bool,
    ) -> Result<Option<Vec<usize>>> {
        let mut best = None;
        let mut word = Vec::new();
        self.dfs(&roots, &mut word, limit, &mut best, violated, alive)?;
        Ok(best)
    }

    fn dfs(
        &mut self,
        tracks: &[Track],
        word: &mut Vec<usize>,
        limit: usize,
        best: &mut Option<Vec<usize>>,
        violated: &dyn Fn(&[Track]) -> bool,
        alive: &dyn Fn(&[Track]) -> bool,
    ) -> Result<()> {
        let allowed = match best {
            Some(b) if b.is_empty() => return Ok(()),
            Some(b) => b.len() - 1,
            None => limit,
        };
        if word.len() > allowed {
            return Ok(());
        }
        if violated(tracks) {
            *best = Some(word.clone());
            return Ok(());
        }
        if word.len() == allowed || !alive(tracks) {
            return Ok(());
        }
        for i in 0..self.observable.len() {
            let a = self.observable[i];
            let next = self.advance(tracks, a)?;
            word.push(a);
            self.dfs(&next, word, limit, best, violated, alive)?;
            word.pop();
        }
        Ok(())
    }
}

fn pow2(bits: usize) -> usize {
    1usize.checked_shl(bits as u32).unwrap_or(usize::MAX)
}

/// Decides the query by enumerating observed words of length at most
/// `max_len` and evaluating the definition on each.
///
/// A `holds` answer is exact only if `max_len` reaches the worst-case
/// witness length for the notion; otherwise the verdict has `bounded` set.
/// Witnesses are shortest, then lexicographically least by symbol index.
pub fn opacity_brute(
    nfa: &Nfa,
    query: &OpacityQuery,
    omap: &ObservationMap,
    max_len: usize,
) -> Result<Verdict> {
    let timer = Timer::start();
    let n = nfa.num_states();
    let nonempty = |t: &Track| !t.1.is_empty();
    let (found, names_from, exact_at): (Option<Vec<usize>>, &Nfa, usize) = match query {
        OpacityQuery::Cso(q) => {
            omap.validate(nfa)?;
            validate_split(nfa, &q.secret, &q.nonsecret, "secret/non-secret state")?;
            let mut walk = Walk::new(vec![nfa], omap);
            let roots = vec![walk.root(0, nfa.initial())?];
            let violated =
                |t: &[Track]| t[0].1.intersects(&q.secret) && !t[0].1.intersects(&q.nonsecret);
            let alive = |t: &[Track]| nonempty(&t[0]);
            let w = walk.first_violation(roots, max_len, &violated, &alive)?;
            (w, nfa, pow2(n))
        }
        OpacityQuery::Iso(q) => {
            omap.validate(nfa)?;
            validate_split(
                nfa,
                &q.secret_initial,
                &q.nonsecret_initial,
                "secret/non-secret initial",
            )?;
            let mut walk = Walk::new(vec![nfa], omap);
            let roots = vec![
                walk.root(0, &q.secret_initial)?,
                walk.root(0, &q.nonsecret_initial)?,
            ];
            let violated = |t: &[Track]| nonempty(&t[0]) && !nonempty(&t[1]);
            let alive = |t: &[Track]| nonempty(&t[0]);
            let w = walk.first_violation(roots, max_len, &violated, &alive)?;
            (w, nfa, pow2(2 * n))
        }
        OpacityQuery::Ifo(q) => {
            omap.validate(nfa)?;
            let mut walk = Walk::new(vec![nfa], omap);
            let mut roots = Vec::new();
            for &(i, _) in q.secret_pairs.iter().chain(&q.nonsecret_pairs) {
                nfa.check_state(i)?;
                roots.push(walk.root(0, &nfa.set_of([i]))?);
            }
            let split = q.secret_pairs.len();
            let finals: Vec<usize> = q
                .secret_pairs
                .iter()
                .chain(&q.nonsecret_pairs)
                .map(|p| p.1)
                .collect();
            let hits = |t: &[Track], k: usize| t[k].1.contains(finals[k]);
            let violated = |t: &[Track]| {
                (0..split).any(|k| hits(t, k)) && !(split..t.len()).any(|k| hits(t, k))
            };
            let alive = |t: &[Track]| t[..split].iter().any(nonempty);
            let w = walk.first_violation(roots, max_len, &violated, &alive)?;
            (
                w,
                nfa,
                pow2(n * (q.secret_pairs.len() + q.nonsecret_pairs.len())),
            )
        }
        OpacityQuery::Lbo(q) => {
            let (s, ns) = (&q.secret_lang, &q.nonsecret_lang);
            if s.symbols().names() != ns.symbols().names() {
                return Err(Error::InvalidQuery(
                    "secret and non-secret languages must share an alphabet".into(),
                ));
            }
            omap.validate(s)?;
            let mut walk = Walk::new(vec![s, ns], omap);
            let roots = vec![walk.root(0, s.initial())?, walk.root(1, ns.initial())?];
            let violated = |t: &[Track]| {
                t[0].1.intersects(s.accepting()) && !t[1].1.intersects(ns.accepting())
            };
            let alive = |t: &[Track]| nonempty(&t[0]);
            let w = walk.first_violation(roots, max_len, &violated, &alive)?;
            (w, s, pow2(s.num_states() + ns.num_states()))
        }
        OpacityQuery::Kso(q) => {
            validate_split(nfa, &q.secret, &q.nonsecret, "secret/non-secret state")?;
            let w = step_brute(nfa, &q.secret, &q.nonsecret, Some(q.k), omap, max_len)?;
            (w, nfa, pow2(3 * n))
        }
        OpacityQuery::Inso(q) => {
            validate_split(nfa, &q.secret, &q.nonsecret, "secret/non-secret state")?;
            let w = step_brute(nfa, &q.secret, &q.nonsecret, None, omap, max_len)?;
            (w, nfa, pow2(3 * n))
        }
    };
    let stats = timer.stats(0);
    Ok(match found {
        Some(w) => Verdict::fails(names_from.word_names(&w), stats),
        None => Verdict {
            bounded: max_len < exact_at,
            ..Verdict::holds(stats)
        },
    })
}

/// Shortest `v·u` with `|u| <= horizon` such that some run ending in a
/// secret state after `v` can continue along `u` while no run ending in a
/// non-secret state after `v` can.
fn step_brute(
    nfa: &Nfa,
    secret: &StateSet,
    nonsecret: &StateSet,
    horizon: Option<usize>,
    omap: &ObservationMap,
    max_len: usize,
) -> Result<Option<Vec<usize>>> {
    omap.validate(nfa)?;
    let mut walk = Walk::new(vec![nfa], omap);
    let root = walk.root(0, nfa.initial())?;
    let mut best: Option<Vec<usize>> = None;
    let mut prefix = Vec::new();
    // Prefixes `v` in lexicographic order.
    let mut order: Vec<(Vec<usize>, StateSet)> = Vec::new();
    collect_prefixes(&mut walk, root.1, &mut prefix, max_len, &mut order)?;
    for (v, e) in order {
        let budget = match &best {
            Some(b) if b.len() <= v.len() => continue,
            Some(b) => b.len() - 1 - v.len(),
            None => max_len - v.len(),
        };
        let budget = horizon.map_or(budget, |k| budget.min(k));
        let s = e.intersection(secret);
        if s.is_empty() {
            continue;
        }
        let roots = vec![walk.root(0, &s)?, walk.root(0, &e.intersection(nonsecret))?];
        let violated = |t: &[Track]| !t[0].1.is_empty() && t[1].1.is_empty();
        let alive = |t: &[Track]| !t[0].1.is_empty();
        if let Some(u) = walk.first_violation(roots, budget, &violated, &alive)? {
            let mut w = v;
            w.extend(u);
            if best.as_ref().is_none_or(|b| w.len() < b.len()) {
                best = Some(w);
            }
        }
    }
    Ok(best)
}

fn collect_prefixes(
    walk: &mut Walk<'_>,
    estimate: StateSet,
    prefix: &mut Vec<usize>,
    max_len: usize,
    out: &mut Vec<(Vec<usize>, StateSet)>,
) -> Result<()> {
    if estimate.is_empty() {
        return Ok(());
    }
    out.push((prefix.clone(), estimate.clone()));
    if prefix.len() == max_len {
        return Ok(());
    }
    for i in 0..walk.observable.len() {
        let a = walk.observable[i];
        let next = walk.advance(&[(0, estimate.clone())], a)?.remove(0).1;
        prefix.push(a);
        collect_prefixes(walk, next, prefix, max_len, out)?;
        prefix.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nfa::NfaBuilder;
    use crate::opacity::{CsoQuery, KsoQuery};

    #[test]
    fn sat_examples() {
        let phi = CnfFormula::new(2, vec![vec![1], vec![-1, 2]]).unwrap();
        assert_eq!(sat_brute(&phi).unwrap(), Some(vec![true, true]));
        let unsat = CnfFormula::new(1, vec![vec![1], vec![-1]]).unwrap();
        assert_eq!(sat_brute(&unsat).unwrap(), None);
        let empty = CnfFormula::new(3, vec![]).unwrap();
        assert_eq!(sat_brute(&empty).unwrap(), Some(vec![false; 3]));
        let big = CnfFormula::new(25, vec![]).unwrap();
        assert!(matches!(sat_brute(&big), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn coloring_examples() {
        assert_eq!(
            coloring_brute(&ColorGraph::complete(3)).unwrap().as_deref(),
            Some("abc")
        );
        assert_eq!(coloring_brute(&ColorGraph::complete(4)).unwrap(), None);
        let edgeless = ColorGraph::new(2, vec![]).unwrap();
        assert_eq!(coloring_brute(&edgeless).unwrap().as_deref(), Some("aa"));
        let path = ColorGraph::new(3, vec![(1, 2), (2, 3)]).unwrap();
        assert_eq!(coloring_brute(&path).unwrap().as_deref(), Some("aba"));
    }

    fn leak() -> Nfa {
        let mut b = NfaBuilder::new();
        let (s, n) = (b.state("s"), b.state("n"));
        let a = b.symbol("a");
        b.add_transition(s, a, n).add_initial(s).add_initial(n);
        b.build().unwrap()
    }

    #[test]
    fn brute_cso_and_kso() {
        let nfa = leak();
        let omap = ObservationMap::all_observable(&nfa);
        let (qs, qns) = (nfa.set_of([0]), nfa.set_of([1]));
        let cso = OpacityQuery::Cso(CsoQuery {
            secret: qs.clone(),
            nonsecret: qns.clone(),
        });
        let v = opacity_brute(&nfa, &cso, &omap, 3).unwrap();
        assert!(v.holds && v.bounded);
        let kso = OpacityQuery::Kso(KsoQuery {
            secret: qs,
            nonsecret: qns,
            k: 1,
        });
        let v = opacity_brute(&nfa, &kso, &omap, 4).unwrap();
        assert_eq!(v.witness, Some(vec!["a".to_string()]));
    }

    #[test]
    fn empty_secret_holds() {
        let nfa = leak();
        let omap = ObservationMap::all_observable(&nfa);
        let q = OpacityQuery::Cso(CsoQuery {
            secret: nfa.empty_set(),
            nonsecret: nfa.set_of([1]),
        });
        assert!(opacity_brute(&nfa, &q, &omap, 8).unwrap().holds);
    }
}
