use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use recolor::colour::reconfig_lower_bound;
use recolor::construct;
use recolor::enumerate::{parse_graph6, to_graph6};
use recolor::graph::{self, Matching};
use recolor::hunt::{self, HuntParams, ListRule, Mode};
use recolor::io::{self, Problem};
use recolor::oracle::{Dist, Oracle};
use recolor::sched::{self, validate_schedule, Schedule};
use recolor::{Error, Graph, Instance};

/// Recolouring reconfiguration: exact oracles, schedulers, constructions and sweeps.
///
/// Files may be given as `-` to read stdin. RECOLOR_BUDGET caps the number of
/// states the oracle may explore.
#[derive(Parser)]
#[command(name = "recolor", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact distance between alpha and beta, then a shortest schedule.
    Dist { instance: String },
    /// Diameter of the reconfiguration graph.
    Diam { instance: String },
    /// Radius of the reconfiguration graph.
    Rad { instance: String },
    /// Recolouring schedule from alpha to beta.
    Schedule {
        instance: String,
        /// Scheduler name, or `auto` for the first applicable one.
        #[arg(long, default_value = "auto")]
        alg: String,
    },
    /// Hamming distance plus the digon matching number.
    Lowerbound { instance: String },
    /// Replay a schedule and check it against its stated bound.
    Validate { instance: String, schedule: String },
    /// Emit a construction as Instance JSON.
    Gen {
        construction: Construction,
        #[command(flatten)]
        input: GraphInput,
        /// Size parameter for `comb`.
        #[arg(long)]
        n: Option<usize>,
        /// Colour count for `hard-pair`, `comb`, `frozen-regular`, `hat-graph`, `tilde-graph`.
        #[arg(long)]
        k: Option<u32>,
        /// Matching as `u-v,u-v,...`; defaults to a maximum matching.
        #[arg(long)]
        matching: Option<String>,
    },
    /// Sweep small graphs for counterexamples; writes line-delimited JSON.
    Hunt {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value = "list")]
        mode: Mode,
        /// d+2, 2d+1, uniform-K or uniform-2d.
        #[arg(long, default_value = "d+2")]
        rule: ListRule,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Oracle state budget per instance; defaults to RECOLOR_BUDGET.
        #[arg(long)]
        budget: Option<u64>,
        /// Colour pool for random lists; defaults to 2Δ+2.
        #[arg(long)]
        pool: Option<u32>,
        /// Worker threads, 0 for one per core.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Check every d-regular graph with d+2 colours instead, for d up to this value.
        #[arg(long)]
        regular: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Edmonds-Gallai decomposition, one JSON line per graph.
    Decomp {
        #[command(flatten)]
        input: GraphInput,
    },
}

#[derive(clap::Args)]
struct GraphInput {
    /// Graph as JSON (`n` and `edges`) or a graph6 line; `-` for stdin.
    graph: Option<String>,
    /// File with one graph6 graph per line.
    #[arg(long)]
    graph6: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    C4Example,
    Comb,
    FrozenRegular,
    HardPair,
    ListGadget,
    CorrGadget,
    Central,
    HatGraph,
    TildeGraph,
}

enum Failure {
    Lib(Error),
    Violation(String),
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }
}

fn load_problem(path: &str) -> Result<Problem, Failure> {
    Ok(io::parse_problem(&read_input(path)?)?)
}

fn parse_graph(text: &str) -> Result<Vec<Graph>, Failure> {
    let text = text.trim();
    if text.starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let n = v["n"].as_u64().ok_or_else(|| Error::Parse("graph JSON needs an integer \"n\"".into()))?;
        let edges: Vec<(usize, usize)> = serde_json::from_value(v.get("edges").cloned().unwrap_or(json!([])))
            .map_err(|e| Error::Parse(format!("edges: {e}")))?;
        return Ok(vec![Graph::new(n as usize, edges)?]);
    }
    let graphs = text.lines().filter(|l| !l.trim().is_empty()).map(parse_graph6).collect::<Result<Vec<_>, _>>()?;
    if graphs.is_empty() {
        return Err(Failure::Usage("no graph given".into()));
    }
    Ok(graphs)
}

fn load_graphs(input: &GraphInput) -> Result<Vec<Graph>, Failure> {
    match (&input.graph, &input.graph6) {
        (Some(_), Some(_)) => Err(Failure::Usage("give a graph or --graph6, not both".into())),
        (Some(p), None) | (None, Some(p)) => parse_graph(&read_input(p)?),
        (None, None) => Err(Failure::Usage("this construction needs a graph".into())),
    }
}

fn parse_matching(s: &str) -> Result<Matching, Failure> {
    let edges = s
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (u, v) = p.split_once('-').ok_or_else(|| Failure::Usage(format!("bad matching edge {p:?}")))?;
            let num = |x: &str| x.trim().parse().map_err(|_| Failure::Usage(format!("bad vertex {x:?}")));
            Ok((num(u)?, num(v)?))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(Matching { edges })
}

fn need<T>(v: Option<T>, what: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("missing --{what}")))
}

fn print_dist(d: Dist, explored: u64) {
    println!("{d}");
    eprintln!("explored {explored} states");
}

fn dist(path: &str) -> Outcome {
    let p = load_problem(path)?;
    let (a, b) = p.pair()?;
    let r = Oracle::default().exact_distance(&p.instance, a, b)?;
    print_dist(r.value, r.explored);
    if let (Some(steps), Dist::Finite(d)) = (r.witness, r.value) {
        let s = Schedule { steps, theorem: "oracle".into(), bound: d as usize };
        println!("{}", io::schedule_to_json(&s));
    }
    Ok(())
}

fn schedule(path: &str, alg: &str) -> Outcome {
    let p = load_problem(path)?;
    let (a, b) = p.pair()?;
    let s = if alg == "auto" {
        sched::auto_schedule(&p.instance, a, b)?
    } else {
        sched::schedule_named(alg, &p.instance, a, b)?
    };
    println!("{}", io::schedule_to_json(&s));
    eprintln!("{} steps by {}, bound {}", s.len(), s.theorem, s.bound);
    Ok(())
}

fn validate(inst_path: &str, sched_path: &str) -> Outcome {
    let p = load_problem(inst_path)?;
    let (a, b) = p.pair()?;
    let s = io::parse_schedule(&read_input(sched_path)?)?;
    validate_schedule(&p.instance, a, b, &s.steps).map_err(|v| Failure::Violation(v.to_string()))?;
    if s.len() > s.bound {
        return Err(Failure::Violation(format!("{} steps exceed the bound {}", s.len(), s.bound)));
    }
    println!("ok: {} steps, bound {}", s.len(), s.bound);
    Ok(())
}

fn with_alpha(inst: Instance, alpha: Vec<u32>) -> Problem {
    Problem { instance: inst, alpha: Some(alpha), beta: None }
}

fn uniform(g: Graph, k: Option<u32>) -> Result<Problem, Failure> {
    let k = k.unwrap_or(g.max_degree() as u32 + 2);
    Ok(Problem::new(Instance::uniform(g, k)?))
}

fn gen_one(c: Construction, g: Graph, k: Option<u32>, matching: &Option<String>) -> Result<Problem, Failure> {
    let m = match matching {
        Some(s) => parse_matching(s)?,
        None => graph::max_matching(&g),
    };
    Ok(match c {
        Construction::HardPair => {
            let (inst, a, b) = construct::gen_hard_pair_k(&g, need(k, "k")?)?;
            Problem::with_pair(inst, a, b)
        }
        Construction::ListGadget => {
            let (inst, a, b) = construct::gen_list_gadget(&g, &m)?;
            Problem::with_pair(inst, a, b)
        }
        Construction::CorrGadget => {
            let (inst, a, b) = construct::gen_corr_gadget(&g)?;
            Problem::with_pair(inst, a, b)
        }
        Construction::Central => {
            let (inst, _, _) = construct::gen_list_gadget(&g, &m)?;
            let c = construct::gen_central_colouring(&inst)?;
            with_alpha(inst, c)
        }
        Construction::HatGraph => uniform(construct::gen_hat_graph(&g, &m)?, k)?,
        Construction::TildeGraph => uniform(construct::gen_tilde_graph(&g, &m)?, k)?,
        Construction::C4Example | Construction::Comb | Construction::FrozenRegular => unreachable!(),
    })
}

fn gen(c: Construction, input: &GraphInput, n: Option<usize>, k: Option<u32>, matching: &Option<String>) -> Outcome {
    let problems = match c {
        Construction::C4Example => {
            let (inst, a, b) = construct::gen_c4_example();
            vec![Problem::with_pair(inst, a, b)]
        }
        Construction::Comb => {
            let (g, a) = construct::gen_comb(need(n, "n")?)?;
            vec![with_alpha(Instance::uniform(g, k.unwrap_or(5))?, a)]
        }
        Construction::FrozenRegular => {
            let d = need(k, "k")? as usize;
            let (g, a) = construct::gen_frozen_regular(d)?;
            vec![with_alpha(Instance::uniform(g, d as u32 + 1)?, a)]
        }
        _ => load_graphs(input)?
            .into_iter()
            .map(|g| gen_one(c, g, k, matching))
            .collect::<Result<Vec<_>, _>>()?,
    };
    for p in problems {
        println!("{}", io::problem_to_json(&p));
    }
    Ok(())
}

fn decomp(input: &GraphInput) -> Outcome {
    for g in load_graphs(input)? {
        let eg = graph::edmonds_gallai(&g);
        let line = json!({
            "graph6": to_graph6(&g),
            "n": g.n(),
            "mu": graph::matching_number(&g),
            "v1": eg.v1,
            "v2": eg.v2,
            "v3": eg.v3,
            "componentsOfV1": eg.components_of_v1,
        });
        println!("{line}");
    }
    Ok(())
}

fn run(cmd: Cmd) -> Outcome {
    let oracle = Oracle::default();
    match cmd {
        Cmd::Dist { instance } => dist(&instance),
        Cmd::Diam { instance } => {
            let r = oracle.diameter(&load_problem(&instance)?.instance)?;
            print_dist(r.value, r.explored);
            Ok(())
        }
        Cmd::Rad { instance } => {
            let r = oracle.radius(&load_problem(&instance)?.instance)?;
            print_dist(r.value, r.explored);
            Ok(())
        }
        Cmd::Schedule { instance, alg } => schedule(&instance, &alg),
        Cmd::Lowerbound { instance } => {
            let p = load_problem(&instance)?;
            let (a, b) = p.pair()?;
            println!("{}", reconfig_lower_bound(&p.instance, a, b)?);
            Ok(())
        }
        Cmd::Validate { instance, schedule } => validate(&instance, &schedule),
        Cmd::Gen { construction, input, n, k, matching } => gen(construction, &input, n, k, &matching),
        Cmd::Hunt { n_max, mode, rule, samples, seed, budget, pool, threads, regular, out } => {
            let budget = budget.unwrap_or(oracle.budget);
            let report = match regular {
                Some(d_max) => hunt::check_regular_cereceda(d_max, n_max, budget)?,
                None => {
                    let params = HuntParams { n_max, mode, rule, samples_per_graph: samples, seed, budget, pool, threads };
                    hunt::hunt(&params)?
                }
            };
            let text = io::report_to_jsonl(&report);
            match out {
                Some(path) => std::fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            eprintln!(
                "{} instances, {} violations, {} tight",
                report.instances_checked,
                report.violations.len(),
                report.near_tight.len()
            );
            if !report.passed() {
                Err(Failure::Violation(format!("{} violations", report.violations.len())))
            } else if report.budget_exceeded {
                Err(Failure::Budget("some instances exceeded the state budget".into()))
            } else {
                Ok(())
            }
        }
        Cmd::Decomp { input } => decomp(&input),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Budget { .. } => 3,
                Error::Stuck(_) => 1,
                _ => 2,
            })
        }
    }
}
