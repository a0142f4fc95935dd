mod common;

use common::*;
use opacity_core::oracles::opacity_brute;
use opacity_core::reductions::{cso_to_iso_direct, cso_to_lbo, iso_to_ifo, sat_to_cso};
use opacity_core::{
    check, check_cso, check_ifo, check_ifo_general, check_inso, check_iso, check_kso, check_lbo,
    CsoQuery, IfoQuery, InsoQuery, IsoQuery, KsoQuery, LboQuery, Nfa, NfaBuilder, ObservationMap,
    OpacityQuery, StateSet, Verdict,
};
use proptest::prelude::*;

fn all(nfa: &Nfa) -> ObservationMap {
    ObservationMap::all_observable(nfa)
}

#[test]
fn example_one_every_notion_fails() {
    let inst = sat_to_cso(&example_formula()).unwrap();
    let (nfa, omap) = (&inst.nfa, &inst.omap);
    let v = check_cso(nfa, &inst.query(), omap).unwrap();
    assert!(!v.holds);
    let w = nfa.word_from_names(v.witness.as_ref().unwrap()).unwrap();
    let end = nfa.run(nfa.initial(), &w).unwrap();
    assert!(!end.intersects(&inst.nonsecret) && end.intersects(&inst.secret));

    for k in [0, 1, 5] {
        let q = KsoQuery {
            secret: inst.secret.clone(),
            nonsecret: inst.nonsecret.clone(),
            k,
        };
        assert!(!check_kso(nfa, &q, omap).unwrap().holds, "k = {k}");
    }
    let q = InsoQuery {
        secret: inst.secret.clone(),
        nonsecret: inst.nonsecret.clone(),
    };
    assert!(!check_inso(nfa, &q, omap).unwrap().holds);

    let iso = cso_to_iso_direct(&inst).unwrap();
    let x: Vec<&str> = iso
        .query
        .nonsecret_initial
        .iter()
        .map(|q| nfa.state_name(q))
        .collect();
    assert_eq!(x, ["x1_0", "x2_0", "x3_0"]);
    assert!(!check_iso(&iso.nfa, &iso.query, &iso.omap).unwrap().holds);
    let ifo = iso_to_ifo(&iso).unwrap();
    assert_eq!(ifo.query.secret_pairs, vec![(0, 0)]);
    assert!(!check_ifo(&ifo.nfa, &ifo.query, &ifo.omap).unwrap().holds);
    assert!(!check_lbo(&cso_to_lbo(&inst).unwrap(), omap).unwrap().holds);
}

#[test]
fn vacuous_queries_hold() {
    let t = two_state(&[1]);
    let omap = all(&t);
    let q = CsoQuery {
        secret: t.empty_set(),
        nonsecret: t.set_of([1]),
    };
    assert!(check_cso(&t, &q, &omap).unwrap().holds);
    let q = InsoQuery {
        secret: t.empty_set(),
        nonsecret: t.set_of([1]),
    };
    assert!(check_inso(&t, &q, &omap).unwrap().holds);
    let q = IfoQuery {
        secret_pairs: vec![],
        nonsecret_pairs: vec![(0, 1)],
    };
    assert!(check_ifo(&t, &q, &omap).unwrap().holds);
    let q = LboQuery {
        secret_lang: t.with_accepting(t.empty_set()),
        nonsecret_lang: t.clone(),
    };
    assert!(check_lbo(&q, &omap).unwrap().holds);
}

#[test]
fn iso_on_mirrored_copies_holds() {
    let mut b = NfaBuilder::new();
    let (p0, p1, r0, r1) = (b.state("p0"), b.state("p1"), b.state("r0"), b.state("r1"));
    let (a, c) = (b.symbol("a"), b.symbol("c"));
    for (x, y) in [(p0, p1), (r0, r1)] {
        b.add_transition(x, a, y)
            .add_transition(y, c, x)
            .add_transition(y, a, y);
    }
    b.add_initial(p0).add_initial(r0);
    let nfa = b.build().unwrap();
    let q = IsoQuery {
        secret_initial: nfa.set_of([p0]),
        nonsecret_initial: nfa.set_of([r0]),
    };
    assert!(check_iso(&nfa, &q, &all(&nfa)).unwrap().holds);
}

/// `s -a-> d -a-> d` with `n` a dead end: the estimate never consists of
/// secret states alone, but the non-secret branch dies one step earlier.
fn early_death() -> (Nfa, StateSet, StateSet) {
    let mut b = NfaBuilder::new();
    let (s, n, d) = (b.state("s"), b.state("n"), b.state("d"));
    let a = b.symbol("a");
    b.add_transition(s, a, d).add_transition(d, a, d);
    b.add_initial(s).add_initial(n);
    let nfa = b.build().unwrap();
    let (qs, qns) = (nfa.set_of([s]), nfa.set_of([n]));
    (nfa, qs, qns)
}

#[test]
fn kso_catches_an_earlier_death() {
    let (nfa, qs, qns) = early_death();
    let omap = all(&nfa);
    let k0 = KsoQuery {
        secret: qs.clone(),
        nonsecret: qns.clone(),
        k: 0,
    };
    let k1 = KsoQuery {
        secret: qs.clone(),
        nonsecret: qns.clone(),
        k: 1,
    };
    assert!(check_kso(&nfa, &k0, &omap).unwrap().holds);
    let v = check_kso(&nfa, &k1, &omap).unwrap();
    assert_eq!(v.witness, Some(vec!["a".to_string()]));
    for (q, expect) in [(k0, true), (k1, false)] {
        let b = opacity_brute(&nfa, &OpacityQuery::Kso(q), &omap, 6).unwrap();
        assert_eq!(b.holds, expect);
    }
}

fn random_case(seed: u64, max_states: usize) -> (Nfa, ObservationMap, StateSet, StateSet) {
    let mut r = rng(seed);
    let n = 1 + (seed % max_states as u64) as usize;
    let nfa = random_nfa(&mut r, n, 3, 0.25);
    let omap = random_omap(&mut r, &nfa, 0.5);
    let (s, ns) = random_split(&mut r, n);
    (nfa, omap, s, ns)
}

/// Exact agreement on the bounded horizon: the brute force holds iff the
/// checker holds or its (shortest) witness is longer than `max_len`.
fn agrees_within(brute: &Verdict, checker: &Verdict, max_len: usize) -> bool {
    let beyond = checker.witness_len().is_some_and(|l| l > max_len);
    brute.holds == (checker.holds || beyond)
        && (brute.holds || brute.witness_len() == checker.witness_len())
}

/// Replays a k-step witness directly: some split `v·u` with `|u| <= k` where a
/// secret-state run after `v` survives `u` and no non-secret one does.
fn replays_step_violation(nfa: &Nfa, s: &StateSet, ns: &StateSet, k: usize, w: &[usize]) -> bool {
    (0..=w.len()).any(|cut| {
        let (v, u) = w.split_at(cut);
        if u.len() > k {
            return false;
        }
        let e = nfa.run(nfa.initial(), v).unwrap();
        let sec = nfa.run(&e.intersection(s), u).unwrap();
        let non = nfa.run(&e.intersection(ns), u).unwrap();
        !sec.is_empty() && non.is_empty()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cso_is_zero_step_opacity(seed in any::<u64>()) {
        let (nfa, omap, s, ns) = random_case(seed, 6);
        let cso = check_cso(&nfa, &CsoQuery { secret: s.clone(), nonsecret: ns.clone() }, &omap).unwrap();
        let k0 = check_kso(&nfa, &KsoQuery { secret: s, nonsecret: ns, k: 0 }, &omap).unwrap();
        prop_assert_eq!(cso.holds, k0.holds);
        prop_assert_eq!(cso.witness_len(), k0.witness_len());
    }

    #[test]
    fn kso_is_monotone_and_bounded_by_inso(seed in any::<u64>()) {
        let (nfa, omap, s, ns) = random_case(seed, 5);
        let n = nfa.num_states();
        let mut prev = true;
        for k in 0..=4 {
            let v = check_kso(&nfa, &KsoQuery { secret: s.clone(), nonsecret: ns.clone(), k }, &omap).unwrap();
            prop_assert!(prev || !v.holds, "k-SO must imply k'-SO for k' <= k");
            prev = v.holds;
        }
        let big = (1usize << n) - 2;
        let kbig = check_kso(&nfa, &KsoQuery { secret: s.clone(), nonsecret: ns.clone(), k: big }, &omap).unwrap();
        let inso = check_inso(&nfa, &InsoQuery { secret: s, nonsecret: ns }, &omap).unwrap();
        prop_assert_eq!(kbig.holds, inso.holds);
    }

    #[test]
    fn step_witnesses_replay(seed in any::<u64>(), k in 0usize..4) {
        let (nfa, _, s, ns) = random_case(seed, 6);
        let omap = all(&nfa);
        let v = check_kso(&nfa, &KsoQuery { secret: s.clone(), nonsecret: ns.clone(), k }, &omap).unwrap();
        if let Some(w) = &v.witness {
            let w = nfa.word_from_names(w).unwrap();
            prop_assert!(replays_step_violation(&nfa, &s, &ns, k, &w));
        }
    }

    #[test]
    fn ifo_product_path_matches_general_path(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 1 + (seed % 5) as usize;
        let nfa = random_nfa(&mut r, n, 2, 0.3);
        let omap = random_omap(&mut r, &nfa, 0.4);
        let i: Vec<usize> = nfa.initial().iter().collect();
        let f: Vec<usize> = nfa.accepting().iter().collect();
        let pairs: Vec<(usize, usize)> = i.iter().flat_map(|&p| f.iter().map(move |&q| (p, q))).collect();
        if pairs.is_empty() {
            return Ok(());
        }
        let cut = (seed as usize / 7) % (pairs.len() + 1);
        let secret_pairs: Vec<_> = pairs[..cut].to_vec();
        // Non-secret pairs: a product of the initial and accepting states not used.
        let used: Vec<usize> = secret_pairs.iter().map(|p| p.0).collect();
        let ins: Vec<usize> = i.iter().copied().filter(|p| !used.contains(p)).collect();
        let nonsecret_pairs: Vec<_> = ins.iter().flat_map(|&p| f.iter().map(move |&q| (p, q))).collect();
        let q = IfoQuery { secret_pairs, nonsecret_pairs };
        let fast = check_ifo(&nfa, &q, &omap).unwrap();
        let slow = check_ifo_general(&nfa, &q, &omap).unwrap();
        prop_assert_eq!(fast.holds, slow.holds);
        prop_assert_eq!(fast.witness_len(), slow.witness_len());
    }

    #[test]
    fn checkers_agree_with_definitions(seed in any::<u64>()) {
        let (nfa, omap, s, ns) = random_case(seed, 5);
        let mut r = rng(seed ^ 0xabc);
        let max_len = 7;
        let mut queries = vec![
            OpacityQuery::Cso(CsoQuery { secret: s.clone(), nonsecret: ns.clone() }),
            OpacityQuery::Kso(KsoQuery { secret: s.clone(), nonsecret: ns.clone(), k: 1 }),
            OpacityQuery::Kso(KsoQuery { secret: s.clone(), nonsecret: ns.clone(), k: 2 }),
            OpacityQuery::Inso(InsoQuery { secret: s.clone(), nonsecret: ns.clone() }),
        ];
        let init = nfa.initial();
        queries.push(OpacityQuery::Iso(IsoQuery {
            secret_initial: init.intersection(&s),
            nonsecret_initial: init.difference(&s),
        }));
        let other = random_nfa(&mut r, nfa.num_states(), nfa.num_symbols(), 0.3);
        queries.push(OpacityQuery::Lbo(LboQuery { secret_lang: nfa.clone(), nonsecret_lang: other }));
        for q in &queries {
            let fast = check(&nfa, q, &omap).unwrap();
            let slow = opacity_brute(&nfa, q, &omap, max_len).unwrap();
            prop_assert!(agrees_within(&slow, &fast, max_len), "{}: brute {:?} vs checker {:?}", q.name(), slow, fast);
        }
    }

    #[test]
    fn renaming_does_not_change_verdicts(seed in any::<u64>()) {
        let (nfa, omap, s, ns) = random_case(seed, 5);
        let n = nfa.num_states();
        // Reverse the state order and rename every symbol.
        let mut b = NfaBuilder::new();
        for q in (0..n).rev() {
            b.add_state(&format!("r{q}")).unwrap();
        }
        for a in 0..nfa.num_symbols() {
            b.add_symbol(&format!("t{a}")).unwrap();
        }
        let map = |q: usize| n - 1 - q;
        for (p, a, q) in nfa.transitions() {
            b.add_transition(map(p), a, map(q));
        }
        for q in nfa.initial() {
            b.add_initial(map(q));
        }
        let renamed = b.build().unwrap();
        let rs = renamed.set_of(s.iter().map(map));
        let rns = renamed.set_of(ns.iter().map(map));
        for k in [0, 2] {
            let a = check_kso(&nfa, &KsoQuery { secret: s.clone(), nonsecret: ns.clone(), k }, &omap).unwrap();
            let b = check_kso(&renamed, &KsoQuery { secret: rs.clone(), nonsecret: rns.clone(), k }, &omap).unwrap();
            prop_assert_eq!(a.holds, b.holds);
            prop_assert_eq!(a.witness_len(), b.witness_len());
        }
    }
}
