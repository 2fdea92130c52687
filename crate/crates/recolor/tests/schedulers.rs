use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use recolor::colour::reconfig_lower_bound;
use recolor::enumerate::enumerate_graphs;
use recolor::error::Error;
use recolor::hunt::{sample_colouring, sample_cover, sample_lists, ListRule};
use recolor::oracle::Oracle;
use recolor::sched::{self, validate_schedule};
use recolor::{Colouring, Graph, Instance};

const LIST_ALGS: [&str; 8] = [
    "greedy-2n",
    "list-factor2",
    "biglists-orderswap",
    "biglists-eg",
    "tree-exact",
    "cycle",
    "complete-bipartite",
    "cactus",
];
const CORR_ALGS: [&str; 3] = ["corr-biglists", "corr-factor2", "corr-sparse"];

fn pair(inst: &Instance, rng: &mut ChaCha8Rng) -> (Colouring, Colouring) {
    loop {
        if let (Some(a), Some(b)) = (sample_colouring(inst, rng), sample_colouring(inst, rng)) {
            return (a, b);
        }
    }
}

fn inapplicable(e: &Error) -> bool {
    matches!(e, Error::WrongMode(_) | Error::WrongClass(_) | Error::Precondition(_) | Error::Hypothesis(_))
}

/// Runs `algs` on `per_graph` random pairs per connected graph; returns failures.
fn sweep(n_max: usize, per_graph: usize, corr: bool, rule: ListRule, pool: Option<u32>, algs: &[&str]) -> Vec<String> {
    let oracle = Oracle::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = Vec::new();
    for n in 1..=n_max {
        for g in enumerate_graphs(n, true).unwrap() {
            for _ in 0..per_graph {
                let inst = if corr {
                    sample_cover(&g, rule, &mut rng).unwrap()
                } else {
                    sample_lists(&g, rule, pool, &mut rng).unwrap()
                };
                let (a, b) = pair(&inst, &mut rng);
                let lb = reconfig_lower_bound(&inst, &a, &b).unwrap();
                let d = oracle.exact_distance(&inst, &a, &b).unwrap().value.finite();
                for &alg in algs {
                    match sched::schedule_named(alg, &inst, &a, &b) {
                        Ok(s) => {
                            let ctx = format!("{alg} on {:?} a={a:?} b={b:?} pal={:?}", g.edges(), inst.palette());
                            if let Err(v) = validate_schedule(&inst, &a, &b, &s.steps) {
                                bad.push(format!("{ctx}: invalid: {v}"));
                            }
                            if s.len() > s.bound {
                                bad.push(format!("{ctx}: length {} > bound {}", s.len(), s.bound));
                            }
                            match d {
                                Some(d) if lb as u64 <= d && d <= s.len() as u64 => {}
                                _ => bad.push(format!("{ctx}: sandwich {lb} / {d:?} / {}", s.len())),
                            }
                        }
                        Err(e) if inapplicable(&e) => {}
                        Err(e) => bad.push(format!("{alg} on {:?} a={a:?} b={b:?}: {e}", g.edges())),
                    }
                }
            }
        }
    }
    bad
}

fn report(bad: &[String]) {
    for b in bad.iter().take(10) {
        eprintln!("{b}");
    }
    assert!(bad.is_empty(), "{} failures", bad.len());
}

#[test]
fn list_schedulers_deg_plus_2() {
    report(&sweep(5, 30, false, ListRule::DegPlus2, None, &LIST_ALGS));
}

#[test]
fn list_schedulers_twice_deg_plus_1() {
    report(&sweep(5, 30, false, ListRule::TwiceDegPlus1, None, &LIST_ALGS));
}

#[test]
fn corr_schedulers_deg_plus_2() {
    report(&sweep(5, 30, true, ListRule::DegPlus2, None, &CORR_ALGS));
}

#[test]
fn corr_schedulers_twice_deg_plus_1() {
    report(&sweep(5, 30, true, ListRule::TwiceDegPlus1, None, &CORR_ALGS));
}

#[test]
fn tree_exact_is_geodesic() {
    let oracle = Oracle::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=7 {
        for g in enumerate_graphs(n, true).unwrap().into_iter().filter(Graph::is_tree) {
            for _ in 0..4 {
                let inst = sample_lists(&g, ListRule::DegPlus2, None, &mut rng).unwrap();
                let (a, b) = pair(&inst, &mut rng);
                let s = sched::schedule_tree_exact(&inst, &a, &b).unwrap();
                let d = oracle.exact_distance(&inst, &a, &b).unwrap().value.finite();
                assert_eq!(Some(s.len() as u64), d);
                assert_eq!(s.len(), reconfig_lower_bound(&inst, &a, &b).unwrap());
            }
        }
    }
}

#[test]
fn list_schedulers_tight_pool() {
    report(&sweep(6, 60, false, ListRule::DegPlus2, Some(1), &LIST_ALGS));
    report(&sweep(6, 30, false, ListRule::TwiceDegPlus1, Some(1), &LIST_ALGS));
}

#[test]
fn gadget_pairs_are_met_exactly() {
    use recolor::construct::{gen_corr_gadget, gen_list_gadget};
    use recolor::graph::{cover_number, matching_number, max_matching};
    let mut ran = 0;
    for n in 1..=6 {
        for g in enumerate_graphs(n, true).unwrap() {
            let (inst, a, b) = gen_list_gadget(&g, &max_matching(&g)).unwrap();
            for alg in LIST_ALGS {
                match sched::schedule_named(alg, &inst, &a, &b) {
                    Ok(s) => {
                        ran += 1;
                        assert!(s.len() <= s.bound, "{alg} on {:?}", g.edges());
                        if alg != "greedy-2n" && alg != "list-factor2" {
                            assert_eq!(s.len(), n + matching_number(&g), "{alg} on {:?}", g.edges());
                        }
                    }
                    Err(e) => assert!(inapplicable(&e), "{alg} on {:?}: {e}", g.edges()),
                }
            }
            let (inst, a, b) = gen_corr_gadget(&g).unwrap();
            for alg in CORR_ALGS {
                match sched::schedule_named(alg, &inst, &a, &b) {
                    Ok(s) => {
                        ran += 1;
                        assert!(s.len() <= s.bound, "{alg} on {:?}", g.edges());
                        if alg != "corr-factor2" {
                            assert_eq!(s.len(), n + cover_number(&g), "{alg} on {:?}", g.edges());
                        }
                    }
                    Err(e) => assert!(inapplicable(&e), "{alg} on {:?}: {e}", g.edges()),
                }
            }
        }
    }
    assert!(ran > 300);
}

#[test]
fn cactus_on_seven_vertices() {
    let oracle = Oracle::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut count = 0;
    for g in enumerate_graphs(7, true).unwrap().into_iter().filter(Graph::is_cactus) {
        for _ in 0..5 {
            let inst = sample_lists(&g, ListRule::DegPlus2, Some(1), &mut rng).unwrap();
            let (a, b) = pair(&inst, &mut rng);
            let s = sched::schedule_cactus(&inst, &a, &b).unwrap();
            assert!(s.len() <= 7 + recolor::graph::matching_number(&g));
            let d = oracle.exact_distance(&inst, &a, &b).unwrap().value.finite().unwrap();
            assert!(d <= s.len() as u64);
            count += 1;
        }
    }
    assert!(count > 100);
}

#[test]
fn auto_picks_the_first_applicable() {
    let (inst, a, b) = recolor::construct::gen_c4_example();
    let s = sched::auto_schedule(&inst, &a, &b).unwrap();
    assert_eq!(s.theorem, "cactus");
    assert_eq!(s.bound, 6);
    assert_eq!(s.len(), 6);

    let g = Graph::path(4).unwrap();
    let inst = Instance::uniform(g, 4).unwrap();
    let s = sched::auto_schedule(&inst, &[1, 2, 1, 2], &[2, 1, 2, 1]).unwrap();
    assert_eq!(s.theorem, "tree-exact");
    assert_eq!(s.len(), 6);
}

#[test]
fn wrong_class_and_mode_are_reported() {
    let (inst, a, b) = recolor::construct::gen_c4_example();
    assert!(matches!(sched::schedule_tree_exact(&inst, &a, &b), Err(Error::WrongClass(_))));
    assert!(matches!(sched::schedule_corr_factor2(&inst, &a, &b), Err(Error::WrongMode(_))));
    assert!(matches!(sched::schedule_biglists_eg(&inst, &a, &b), Err(Error::Precondition(_))));
    assert!(matches!(sched::schedule_named("nope", &inst, &a, &b), Err(Error::BadParam(_))));

    let k5 = Instance::uniform(Graph::complete(5).unwrap(), 6).unwrap();
    let cover = recolor::colour::list_to_cover(&k5).unwrap();
    let col: Colouring = vec![1, 2, 3, 4, 5];
    assert!(matches!(sched::schedule_corr_sparse(&cover, &col, &col), Err(Error::Hypothesis(_))));
}

#[test]
fn validator_rejects_bad_steps() {
    let (inst, a, b) = recolor::construct::gen_c4_example();
    // Vertex 0 to colour 2 clashes with vertex 1.
    let v = validate_schedule(&inst, &a, &b, &[(0, 2)]).unwrap_err();
    assert_eq!(v.step, Some(0));
    assert!(validate_schedule(&inst, &a, &b, &[(0, 9)]).is_err());
    assert!(validate_schedule(&inst, &a, &b, &[(0, 1)]).is_err());
    assert_eq!(validate_schedule(&inst, &a, &b, &[]).unwrap_err().step, None);
    assert!(validate_schedule(&inst, &a, &a, &[]).is_ok());
}

#[test]
fn sink_component_splits_directed_path() {
    // Path 0-1-2 with arcs only 0 -> 1 -> 2: no two vertices are strongly connected.
    let inst = Instance::uniform(Graph::path(3).unwrap(), 4).unwrap();
    let (a, b) = (vec![1, 2, 3], vec![2, 3, 4]);
    let (sink, rest) = sched::split_by_scc(&inst, &a, &b).unwrap().unwrap();
    assert_eq!(sink, vec![2]);
    assert_eq!(rest, vec![0, 1]);

    let (inst, a, b) = recolor::construct::gen_c4_example();
    assert!(sched::split_by_scc(&inst, &a, &b).unwrap().is_none());
}
