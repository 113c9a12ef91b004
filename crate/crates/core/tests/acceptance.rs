//! One PASS/FAIL line per acceptance criterion. Every bound below is fixed:
//! instance counts are minima, runtimes are wall-clock maxima, and all
//! numeric comparisons are exact.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use polygonal::cycles::{Cycle, CycleList};
use polygonal::examples;
use polygonal::fourvertex::{brute_partition_exists, decompose_good, four_vertex_witness, good_digraphs, validate_part};
use polygonal::generate::{lambda_holds, random_four_vertex, random_regular_attempt, random_regular_instance, seeded};
use polygonal::graph::Dart;
use polygonal::regular::{is_k_graph, regular_witness, usage_counts};
use polygonal::surface::{build_surface, surface_report, Partition};
use polygonal::whitehead::{mu, WhiteheadGraph};
use polygonal::witness::{pairs_at, parse_witness, search_witness_lp, verify_witness, witness_json, LpResult};
use polygonal::words::{Letter, Word, WordList};

const REFUTATION_SECONDS: u64 = 5;
const MINIMALITY_PAIR_SECONDS: u64 = 5;
const REGULAR_INSTANCES: usize = 120;
const REGULAR_SECONDS: u64 = 60;
const K_GRAPH_CORPUS: usize = 400;
const FOUR_VERTEX_INSTANCES: usize = 120;
const FOUR_VERTEX_SECONDS: u64 = 120;
const MAX_AUX_NODES: usize = 8;
const PROPERTY_CASES: u32 = 64;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, secs: u64) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t <= Duration::from_secs(secs), || format!("took {t:?}, limit {secs} s"))?;
    Ok(t)
}

fn refutation() -> Verdict {
    let start = Instant::now();
    let wg = examples::load("example-6.1").map_err(|e| e.to_string())?;
    let r = wg.analyze();
    let a = &r.vertices[0];
    ensure(a.vertex == "a1" && a.lambda == 3 && a.degree == 4, || format!("a: {a:?}"))?;
    match search_witness_lp(&wg, true).map_err(|e| e.to_string())? {
        LpResult::Feasible(_) => return Err("lp found a witness".into()),
        LpResult::Infeasible(cert) => {
            ensure(!cert.entries.is_empty(), || "empty certificate".into())?;
            cert.check(&wg).map_err(|e| e.to_string())?;
        }
    }
    let t = within(start, REFUTATION_SECONDS)?;
    Ok(format!("lambda 3 < deg 4, refutation checks, {t:?}"))
}

fn minimality_pair() -> Verdict {
    let start = Instant::now();
    let before = examples::load("remark-2.4-before").map_err(|e| e.to_string())?;
    let r = before.analyze();
    let b = &r.vertices[2];
    ensure(!r.minimal && b.vertex == "a2" && b.lambda == 3 && b.degree == 6, || format!("b: {b:?}"))?;

    let after = examples::load("remark-2.4-after").map_err(|e| e.to_string())?;
    let r = after.analyze();
    ensure(r.minimal && r.diskbusting, || "after is not minimal and diskbusting".into())?;
    let fw = four_vertex_witness(&after).map_err(|e| e.to_string())?;
    let lp = match search_witness_lp(&after, true).map_err(|e| e.to_string())? {
        LpResult::Feasible(l) => l,
        LpResult::Infeasible(_) => return Err("lp found no witness".into()),
    };
    let mut chis = Vec::new();
    for (name, list) in [("fourvertex", &fw.cycles), ("lp", &lp)] {
        let v = verify_witness(&after, list, true, false).map_err(|e| e.to_string())?;
        ensure(v.pass, || format!("{name} witness fails verification"))?;
        let s = build_surface(&after, list).map_err(|e| format!("{name}: {e}"))?;
        let rep = surface_report(&after, &s, &Partition::Auto).map_err(|e| format!("{name}: {e}"))?;
        ensure(rep.chi_s_minus_m < 0, || format!("{name}: chi(S) - m = {}", rep.chi_s_minus_m))?;
        chis.push(rep.chi_s_minus_m);
    }
    let t = within(start, MINIMALITY_PAIR_SECONDS)?;
    Ok(format!("before lambda(b) 3 < 6; after chi(S) - m = {chis:?}, {t:?}"))
}

fn regular_counts() -> Verdict {
    let start = Instant::now();
    let mut rng = seeded(0x5eed_4001);
    for i in 0..REGULAR_INSTANCES {
        let k = 2 + i % 3;
        let wg = random_regular_instance(&mut rng, k, 8);
        let g = wg.graph();
        let rw = regular_witness(g).map_err(|e| format!("instance {i}: {e}"))?;
        let v = verify_witness(&wg, &rw.cycles, false, false).map_err(|e| e.to_string())?;
        ensure(v.pass, || format!("instance {i}: witness fails verification"))?;
        let ell = rw.coloring.ell;
        let k64 = k as u64;
        ensure(ell % k64 == 0, || format!("instance {i}: k = {k} does not divide l = {ell}"))?;
        let m1 = (ell / k64) * (ell - ell / k64);
        let m2 = (ell / k64) * (ell / k64);
        let (edge_use, pair_use) = usage_counts(g, &rw.cycles);
        for e in g.edge_ids() {
            let got = edge_use.get(&e).copied().unwrap_or(0);
            ensure(got == m1, || format!("instance {i}: edge {e} used {got}, expected {m1}"))?;
        }
        for x in 0..g.vertex_count() {
            for (e, f) in pairs_at(g, x) {
                let got = pair_use.get(&(x, e, f)).copied().unwrap_or(0);
                ensure(got == m2, || format!("instance {i}: pair {e},{f} at {x} used {got}, expected {m2}"))?;
            }
        }
    }
    let t = within(start, REGULAR_SECONDS)?;
    Ok(format!("{REGULAR_INSTANCES} instances, k in 2..=4, {t:?}"))
}

fn k_graph_property() -> Verdict {
    let mut rng = seeded(0x5eed_4002);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < K_GRAPH_CORPUS {
        attempts += 1;
        let k = 2 + attempts % 3;
        let n = 2 * (1 + attempts % 4);
        let Some(g) = random_regular_attempt(&mut rng, n, k) else {
            continue;
        };
        if !lambda_holds(&g) {
            continue;
        }
        let v = is_k_graph(&g).map_err(|e| e.to_string())?;
        ensure(v.is_k_graph(), || format!("counterexample: {:?}", v))?;
        checked += 1;
    }
    Ok(format!("{checked} instances from {attempts} draws, no counterexample"))
}

fn four_vertex_end_to_end() -> Verdict {
    let start = Instant::now();
    let mut rng = seeded(0x5eed_5007);
    let mut lp_fallbacks = 0;
    for i in 0..FOUR_VERTEX_INSTANCES {
        let wg = random_four_vertex(&mut rng, 6);
        let fw = four_vertex_witness(&wg).map_err(|e| format!("instance {i}: {e}"))?;
        if fw.good.is_none() {
            lp_fallbacks += 1;
        }
        let v = verify_witness(&wg, &fw.cycles, true, false).map_err(|e| e.to_string())?;
        ensure(v.pass, || format!("instance {i}: witness fails verification"))?;
        let usage: BTreeSet<u64> = wg
            .graph()
            .edge_ids()
            .map(|e| v.per_edge_usage.get(&e).copied().unwrap_or(0))
            .collect();
        ensure(usage.len() == 1, || format!("instance {i}: usage {usage:?}"))?;
        match search_witness_lp(&wg, true).map_err(|e| e.to_string())? {
            LpResult::Feasible(_) => {}
            LpResult::Infeasible(_) => return Err(format!("instance {i}: lp disagrees")),
        }
    }
    let t = within(start, FOUR_VERTEX_SECONDS)?;
    Ok(format!("{FOUR_VERTEX_INSTANCES} instances, {lp_fallbacks} lp fallbacks, {t:?}"))
}

fn decomposition_oracle() -> Verdict {
    let ds = good_digraphs(MAX_AUX_NODES);
    for d in &ds {
        let parts = decompose_good(d).map_err(|e| format!("{:?}: {e}", d.components))?;
        let mut seen = BTreeSet::new();
        for p in &parts {
            validate_part(d, p.kind, &p.components)?;
            for &c in &p.components {
                ensure(seen.insert(c), || format!("component {c} in two parts"))?;
            }
        }
        ensure(seen.len() == d.components.len(), || "parts miss a component".into())?;
        let all: Vec<usize> = (0..d.components.len()).collect();
        ensure(brute_partition_exists(d, &all), || format!("{:?}: brute force finds nothing", d.components))?;
        for p in &parts {
            ensure(brute_partition_exists(d, &p.components), || format!("part {:?} rejected by brute force", p))?;
        }
    }
    Ok(format!("{} good digraphs with at most {MAX_AUX_NODES} nodes", ds.len()))
}

fn commutator() -> Verdict {
    let wg = examples::load("commutator").map_err(|e| e.to_string())?;
    let all: Vec<_> = wg.graph().edge_ids().collect();
    let square = Cycle::from_edges(wg.graph(), &all).map_err(|e| e.to_string())?;
    let expected = CycleList::single(square, 1);
    let lp = match search_witness_lp(&wg, true).map_err(|e| e.to_string())? {
        LpResult::Feasible(l) => l,
        LpResult::Infeasible(_) => return Err("no witness".into()),
    };
    ensure(lp == expected, || format!("witness {lp:?}"))?;
    let s = build_surface(&wg, &lp).map_err(|e| e.to_string())?;
    let r = surface_report(&wg, &s, &Partition::Auto).map_err(|e| e.to_string())?;
    ensure(r.chi_s_minus_m == -1 && r.chi_s_doubleprime == -2, || format!("{r:?}"))?;
    Ok("{4-cycle x1}, chi(S) - m = -1, chi(S'') = -2".into())
}

fn word_list() -> impl Strategy<Value = WordList> {
    let letter = (0usize..2, any::<bool>()).prop_map(|(g, inv)| Letter::new(g, inv));
    prop::collection::vec(prop::collection::vec(letter, 2..6), 1..3).prop_filter_map("cyclically reduced", |ws| {
        let words: Vec<Word> = ws.into_iter().map(Word::new).collect();
        if words.iter().all(|w| w.is_cyclically_reduced()) {
            WordList::new(2, words).ok()
        } else {
            None
        }
    })
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases: PROPERTY_CASES,
            failure_persistence: None,
            ..Config::default()
        },
        proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    );
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn invariant_suites() -> Verdict {
    run_property("sigma involution", word_list(), |list| {
        let wg = WhiteheadGraph::build(&list).unwrap();
        let g = wg.graph();
        for e in g.edge_ids() {
            for end in 0..2 {
                let d = Dart::new(e, end);
                let s = wg.sigma(d);
                prop_assert_eq!(g.vertex_of(s), mu(g.vertex_of(d)));
                prop_assert_eq!(wg.sigma(s), d);
            }
        }
        Ok(())
    })?;

    let lp_list = |list: &WordList| {
        let wg = WhiteheadGraph::build(list).unwrap();
        let r = search_witness_lp(&wg, true).unwrap();
        (wg, r)
    };

    run_property("scaling homogeneity", (word_list(), 1u64..6), |(list, factor)| {
        let (wg, r) = lp_list(&list);
        let candidates: Vec<CycleList> = match r {
            LpResult::Feasible(l) => vec![l.clone(), CycleList::single(l.iter().next().unwrap().0.clone(), 1)],
            LpResult::Infeasible(_) => polygonal::cycles::enumerate_cycles(wg.graph())
                .into_iter()
                .take(3)
                .map(|c| CycleList::single(c, 1))
                .collect(),
        };
        for c in candidates {
            let a = verify_witness(&wg, &c, false, false).unwrap().pass;
            let b = verify_witness(&wg, &c.scaled(factor), false, false).unwrap().pass;
            prop_assert_eq!(a, b);
        }
        Ok(())
    })?;

    run_property("euler bookkeeping", word_list(), |list| {
        let (wg, r) = lp_list(&list);
        let LpResult::Feasible(l) = r else {
            return Ok(());
        };
        let s = build_surface(&wg, &l).unwrap();
        let from_cycles: i64 = l.iter().map(|(c, m)| m as i64 * (2 - c.len() as i64)).sum();
        prop_assert_eq!(s.chi_s0(), s.nu as i64 - s.eta as i64 + s.zeta as i64);
        prop_assert_eq!(s.chi_s0() - s.nu as i64, s.chi_s_minus_m());
        prop_assert_eq!(2 * s.chi_s_minus_m(), from_cycles);
        prop_assert_eq!(s.doubled.euler(), 2 * s.chi_s_minus_m());
        prop_assert_eq!(s.links.len(), s.nu);
        prop_assert_eq!(s.links.iter().map(|k| k.letters.len()).sum::<usize>(), 2 * s.eta);
        prop_assert!(s.chi_s_minus_m() < 0);
        Ok(())
    })?;

    run_property("lp to verifier round trip", word_list(), |list| {
        let (wg, r) = lp_list(&list);
        match r {
            LpResult::Feasible(l) => {
                prop_assert!(verify_witness(&wg, &l, true, false).unwrap().pass);
                let back = parse_witness(&wg, &witness_json(&wg, &l)).unwrap();
                prop_assert_eq!(back, l);
            }
            LpResult::Infeasible(cert) => {
                prop_assert!(cert.check(&wg).is_ok());
            }
        }
        Ok(())
    })?;

    Ok(format!("4 properties x {PROPERTY_CASES} cases"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("1 refutation of a(aB)^3B^2", refutation),
        ("2 abab^2ab^3 versus aBa^2b", minimality_pair),
        ("3 regular witness counts", regular_counts),
        ("4 lambda condition implies k-graph", k_graph_property),
        ("5 four-vertex end to end", four_vertex_end_to_end),
        ("6 decomposition oracle", decomposition_oracle),
        ("7 commutator certificate", commutator),
        ("8 invariant suites", invariant_suites),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
