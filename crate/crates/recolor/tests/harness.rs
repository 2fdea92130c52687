use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use recolor::construct::{gen_c4_example, gen_corr_gadget};
use recolor::enumerate::enumerate_graphs;
use recolor::error::Error;
use recolor::hunt::{self, check_regular_cereceda, reverify, sample_cover, HuntParams, ListRule, Mode, Quantity};
use recolor::io::{self, Problem};
use recolor::oracle::Oracle;
use recolor::sched::{auto_schedule, Schedule};
use recolor::Graph;

#[test]
fn instance_json_round_trip() {
    let (inst, a, b) = gen_c4_example();
    let p = Problem::with_pair(inst, a, b);
    let text = io::problem_to_json(&p);
    assert!(text.contains("\"mode\":\"list\""));
    assert_eq!(io::parse_problem(&text).unwrap(), p);

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for g in enumerate_graphs(4, false).unwrap() {
        let p = Problem::new(sample_cover(&g, ListRule::DegPlus2, &mut rng).unwrap());
        let text = io::problem_to_json(&p);
        assert_eq!(io::parse_problem(&text).unwrap(), p);
    }
}

#[test]
fn instance_json_schema() {
    let text = r#"{"n": 2, "edges": [[0, 1]], "mode": "corr", "listSizes": [2, 2],
        "matchings": [{"u": 1, "v": 0, "pairs": [[1, 2]]}], "alpha": [1, 1], "beta": [2, 2]}"#;
    let p = io::parse_problem(text).unwrap();
    assert!(!p.instance.is_list());
    assert!(p.instance.conflict(0, 2, 1, 1));
    assert_eq!(p.pair().unwrap(), (&[1, 1][..], &[2, 2][..]));

    let (inst, _, _) = gen_corr_gadget(&Graph::path(2).unwrap()).unwrap();
    let json: serde_json::Value = serde_json::from_str(&io::problem_to_json(&Problem::new(inst))).unwrap();
    assert_eq!(json["listSizes"], serde_json::json!([3, 3]));
    assert_eq!(json["matchings"][0]["pairs"], serde_json::json!([[1, 2], [2, 1]]));
    assert!(json.get("alpha").is_none());
}

#[test]
fn instance_json_errors() {
    let bad = [
        r#"{"n": 2, "edges": [[0, 1]], "mode": "list"}"#,
        r#"{"n": 2, "edges": [[0, 1]], "mode": "corr"}"#,
        r#"{"n": 2, "edges": [[0, 1]], "mode": "rainbow", "lists": [[1], [2]]}"#,
        r#"{"n": 2, "edges": [[0, 1]], "mode": "list", "lists": [[1], [1]], "alpha": [1, 1]}"#,
        r#"{"n": 0, "edges": [], "mode": "list", "lists": []}"#,
        "not json",
    ];
    for text in bad {
        assert!(matches!(io::parse_problem(text), Err(Error::Parse(_))), "{text}");
    }
    let p = io::parse_problem(r#"{"n": 1, "edges": [], "mode": "list", "lists": [[1]]}"#).unwrap();
    assert!(p.pair().is_err());
}

#[test]
fn schedule_json_round_trip() {
    let (inst, a, b) = gen_c4_example();
    let s = auto_schedule(&inst, &a, &b).unwrap();
    let text = io::schedule_to_json(&s);
    assert!(text.starts_with("{\"steps\":[["));
    assert_eq!(io::parse_schedule(&text).unwrap(), s);
    let s: Schedule = io::parse_schedule(r#"{"steps": [[0, 2]], "theorem": "x", "bound": 1}"#).unwrap();
    assert_eq!(s.steps, vec![(0, 2)]);
}

fn small_hunt(mode: Mode, threads: usize) -> hunt::SweepReport {
    let params = HuntParams { n_max: 3, mode, samples_per_graph: 3, seed: 42, threads, ..HuntParams::default() };
    hunt::hunt(&params).unwrap()
}

#[test]
fn hunt_is_reproducible() {
    for mode in [Mode::List, Mode::Corr] {
        let one = small_hunt(mode, 1);
        let many = small_hunt(mode, 4);
        assert!(one.same_outcome(&many));
        assert!(one.instances_checked > 0);
        let other_seed = hunt::hunt(&HuntParams { n_max: 3, mode, samples_per_graph: 3, seed: 43, ..HuntParams::default() });
        assert_eq!(other_seed.unwrap().instances_checked, one.instances_checked);
    }
}

#[test]
fn report_jsonl_round_trip() {
    let r = small_hunt(Mode::Corr, 0);
    let text = io::report_to_jsonl(&r);
    assert_eq!(text.lines().count(), r.violations.len() + r.near_tight.len() + 1);
    assert!(text.lines().last().unwrap().contains("\"kind\":\"summary\""));
    assert_eq!(io::parse_report_jsonl(&text).unwrap(), r);
}

#[test]
fn corr_gadgets_are_near_tight() {
    let r = hunt::hunt(&HuntParams { n_max: 4, mode: Mode::Corr, samples_per_graph: 0, ..HuntParams::default() }).unwrap();
    assert!(r.passed());
    let graphs: usize = (1..=4).map(|n| enumerate_graphs(n, true).unwrap().len()).sum();
    let gadgets = r.near_tight.iter().filter(|f| f.quantity == Quantity::GadgetDistance).count();
    assert_eq!(gadgets, graphs);
    let o = Oracle::default();
    for f in &r.near_tight {
        assert_eq!(reverify(f, &o).unwrap(), f.observed);
    }
}

#[test]
fn hard_pairs_reach_n_plus_mu() {
    let params = HuntParams {
        n_max: 3,
        rule: ListRule::UniformTwiceMaxDegree,
        samples_per_graph: 0,
        ..HuntParams::default()
    };
    let r = hunt::hunt(&params).unwrap();
    assert!(r.passed());
    assert!(r.instances_checked > 0);
}

#[test]
fn budget_flag_is_set() {
    let params = HuntParams { n_max: 4, budget: 10, ..HuntParams::default() };
    let r = hunt::hunt(&params).unwrap();
    assert!(r.budget_exceeded);
}

#[test]
fn regular_cereceda_small_cases() {
    let r = check_regular_cereceda(3, 5, Oracle::default().budget).unwrap();
    assert!(r.passed(), "{:?}", r.violations);
    let o = Oracle::default();
    for (g, bound) in [(Graph::cycle(5).unwrap(), 7), (Graph::complete(4).unwrap(), 6)] {
        let inst = recolor::Instance::uniform(g.clone(), g.degree(0) as u32 + 2).unwrap();
        let d = o.diameter(&inst).unwrap().value.finite().unwrap();
        assert_eq!(d, bound);
    }
}

#[test]
fn rules_and_modes_parse() {
    assert_eq!("d+2".parse::<ListRule>().unwrap(), ListRule::DegPlus2);
    assert_eq!("2d+1".parse::<ListRule>().unwrap(), ListRule::TwiceDegPlus1);
    assert_eq!("uniform-5".parse::<ListRule>().unwrap(), ListRule::Uniform(5));
    assert_eq!("uniform-2d".parse::<ListRule>().unwrap(), ListRule::UniformTwiceMaxDegree);
    assert!("uniform-0".parse::<ListRule>().is_err());
    assert!("d+3".parse::<ListRule>().is_err());
    assert_eq!("corr".parse::<Mode>().unwrap(), Mode::Corr);
    assert!("both".parse::<Mode>().is_err());
}
