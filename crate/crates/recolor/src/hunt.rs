//! Conjecture sweeps: enumerate small graphs, sample list assignments or
//! covers, and compare exact reconfiguration diameters with `n + μ` / `n + τ`.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colour::{Colour, Colouring, Cover, Instance};
use crate::construct;
use crate::enumerate;
use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::io::Problem;
use crate::oracle::Oracle;

/// Largest n for which sweeps compute full diameters; beyond it they sample pairs.
pub const EXHAUSTIVE_N: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    List,
    Corr,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "list" => Ok(Mode::List),
            "corr" => Ok(Mode::Corr),
            _ => Err(Error::BadParam(format!("unknown mode {s:?}"))),
        }
    }
}

/// How large each vertex's list (or cover list) is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ListRule {
    DegPlus2,
    TwiceDegPlus1,
    Uniform(u32),
    /// Uniform `k = 2Δ`.
    UniformTwiceMaxDegree,
}

impl ListRule {
    pub fn size(self, g: &Graph, v: usize) -> u32 {
        let d = g.degree(v) as u32;
        match self {
            ListRule::DegPlus2 => d + 2,
            ListRule::TwiceDegPlus1 => 2 * d + 1,
            ListRule::Uniform(k) => k,
            ListRule::UniformTwiceMaxDegree => (2 * g.max_degree() as u32).max(1),
        }
    }

    fn uniform(self) -> bool {
        matches!(self, ListRule::Uniform(_) | ListRule::UniformTwiceMaxDegree)
    }
}

impl FromStr for ListRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<ListRule> {
        match s {
            "d+2" => Ok(ListRule::DegPlus2),
            "2d+1" => Ok(ListRule::TwiceDegPlus1),
            "uniform-2d" => Ok(ListRule::UniformTwiceMaxDegree),
            _ => s
                .strip_prefix("uniform-")
                .and_then(|k| k.parse().ok())
                .filter(|&k| k > 0)
                .map(ListRule::Uniform)
                .ok_or_else(|| Error::BadParam(format!("unknown list rule {s:?} (d+2, 2d+1, uniform-K, uniform-2d)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct HuntParams {
    pub n_max: usize,
    pub mode: Mode,
    pub rule: ListRule,
    pub samples_per_graph: usize,
    pub seed: u64,
    pub budget: u64,
    /// Size of the colour pool random lists are drawn from; `None` means `2Δ + 2`.
    pub pool: Option<u32>,
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
}

impl Default for HuntParams {
    fn default() -> Self {
        HuntParams {
            n_max: 4,
            mode: Mode::List,
            rule: ListRule::DegPlus2,
            samples_per_graph: 5,
            seed: 0,
            budget: Oracle::default().budget,
            pool: None,
            threads: 0,
        }
    }
}

/// What a finding measured and how `observed` must relate to `bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    /// Reconfiguration diameter; conjectured at most the bound.
    Diameter,
    /// Distance between the embedded pair; conjectured at most the bound.
    Distance,
    /// Tight gadget distance; exactly the bound.
    GadgetDistance,
    /// Hard pair distance; at least the bound.
    HardPairDistance,
    /// Diameter of a regular graph with `d + 2` colours; conjectured equal to the bound.
    RegularDiameter,
}

impl Quantity {
    pub fn holds(self, bound: u64, observed: Option<u64>) -> bool {
        match (self, observed) {
            (Quantity::HardPairDistance, None) => true,
            (_, None) => false,
            (Quantity::Diameter | Quantity::Distance, Some(x)) => x <= bound,
            (Quantity::GadgetDistance | Quantity::RegularDiameter, Some(x)) => x == bound,
            (Quantity::HardPairDistance, Some(x)) => x >= bound,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub instance: Problem,
    pub quantity: Quantity,
    pub bound: u64,
    /// `None` when the distance or diameter is infinite.
    pub observed: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepReport {
    pub instances_checked: u64,
    pub violations: Vec<Finding>,
    pub near_tight: Vec<Finding>,
    /// Per-phase wall time in microseconds.
    pub timing: BTreeMap<String, u64>,
    pub budget_exceeded: bool,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Everything except timing, which is the only non-deterministic part.
    pub fn same_outcome(&self, other: &SweepReport) -> bool {
        self.instances_checked == other.instances_checked
            && self.violations == other.violations
            && self.near_tight == other.near_tight
            && self.budget_exceeded == other.budget_exceeded
    }

    fn absorb(&mut self, out: Outcome) {
        self.instances_checked += out.checked;
        self.budget_exceeded |= out.budget_exceeded;
        for f in out.findings {
            if !f.quantity.holds(f.bound, f.observed) {
                self.violations.push(f);
            } else if f.observed == Some(f.bound) {
                self.near_tight.push(f);
            }
        }
    }
}

/// Recomputes a finding's observed value from its embedded instance.
pub fn reverify(f: &Finding, oracle: &Oracle) -> Result<Option<u64>> {
    let inst = &f.instance.instance;
    let d = match f.quantity {
        Quantity::Diameter | Quantity::RegularDiameter => oracle.diameter(inst)?.value,
        _ => {
            let (a, b) = f.instance.pair()?;
            oracle.exact_distance(inst, a, b)?.value
        }
    };
    Ok(d.finite())
}

/// Lists of the rule's sizes drawn without replacement from `1..=pool`
/// (default `2Δ + 2`, raised if some list would not fit).
pub fn sample_lists(g: &Graph, rule: ListRule, pool: Option<u32>, rng: &mut impl Rng) -> Result<Instance> {
    if rule.uniform() {
        return Instance::uniform(g.clone(), rule.size(g, 0));
    }
    let biggest = (0..g.n()).map(|v| rule.size(g, v)).max().unwrap_or(1);
    let pool = pool.unwrap_or(2 * g.max_degree() as u32 + 2).max(biggest);
    let colours: Vec<Colour> = (1..=pool).collect();
    let lists = (0..g.n())
        .map(|v| colours.choose_multiple(rng, rule.size(g, v) as usize).copied().collect())
        .collect();
    Instance::with_lists(g.clone(), lists)
}

/// A cover with the rule's sizes and, on each edge, a random injective
/// matching of uniformly random size.
pub fn sample_cover(g: &Graph, rule: ListRule, rng: &mut impl Rng) -> Result<Instance> {
    let sizes: Vec<u32> = (0..g.n()).map(|v| rule.size(g, v)).collect();
    let mut ms = Vec::new();
    for &(u, v) in g.edges() {
        let mut left: Vec<Colour> = (1..=sizes[u]).collect();
        let mut right: Vec<Colour> = (1..=sizes[v]).collect();
        left.shuffle(rng);
        right.shuffle(rng);
        let r = rng.gen_range(0..=left.len().min(right.len()));
        ms.push(((u, v), left.into_iter().zip(right).take(r).collect()));
    }
    Ok(Instance::with_cover(g.clone(), Cover::new(g, sizes, ms)?))
}

/// Greedy colouring under a random vertex order and random colour orders;
/// `None` if greedy gets stuck.
pub fn sample_colouring(inst: &Instance, rng: &mut impl Rng) -> Option<Colouring> {
    let g = inst.graph();
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.shuffle(rng);
    let mut col: Vec<Option<Colour>> = vec![None; g.n()];
    for v in order {
        let mut options = inst.colours(v).to_vec();
        options.shuffle(rng);
        let c = options.into_iter().find(|&c| {
            g.neighbours(v)
                .iter()
                .all(|&w| col[w].map_or(true, |d| !inst.conflict(v, c, w, d)))
        })?;
        col[v] = Some(c);
    }
    col.into_iter().collect()
}

enum Task {
    Gadget(Graph),
    HardPair(Graph),
    Random(Graph),
}

#[derive(Default)]
struct Outcome {
    checked: u64,
    findings: Vec<Finding>,
    budget_exceeded: bool,
}

impl Outcome {
    fn record(&mut self, r: Result<Finding>) -> Result<()> {
        match r {
            Ok(f) => {
                self.checked += 1;
                self.findings.push(f);
                Ok(())
            }
            Err(Error::Budget { .. }) => {
                self.budget_exceeded = true;
                Ok(())
            }
            Err(e) => Err(e),
        }
    }
}

fn conjecture_bound(inst: &Instance) -> u64 {
    let g = inst.graph();
    let extra = if inst.is_list() { graph::matching_number(g) } else { graph::cover_number(g) };
    (g.n() + extra) as u64
}

fn distance_finding(oracle: &Oracle, p: Problem, quantity: Quantity, bound: u64) -> Result<Finding> {
    let (a, b) = p.pair()?;
    let observed = oracle.exact_distance(&p.instance, a, b)?.value.finite();
    Ok(Finding { instance: p, quantity, bound, observed })
}

fn diameter_finding(oracle: &Oracle, p: Problem, quantity: Quantity, bound: u64) -> Result<Finding> {
    let observed = oracle.diameter(&p.instance)?.value.finite();
    Ok(Finding { instance: p, quantity, bound, observed })
}

fn run_task(task: &Task, params: &HuntParams, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let oracle = Oracle::with_budget(params.budget);
    let mut out = Outcome::default();
    match task {
        Task::Gadget(g) => {
            let (inst, a, b) = match params.mode {
                Mode::List => construct::gen_list_gadget(g, &graph::max_matching(g))?,
                Mode::Corr => construct::gen_corr_gadget(g)?,
            };
            let bound = conjecture_bound(&inst);
            out.record(distance_finding(&oracle, Problem::with_pair(inst, a, b), Quantity::GadgetDistance, bound))?;
        }
        Task::HardPair(g) => {
            let k = params.rule.size(g, 0);
            match construct::gen_hard_pair_k(g, k) {
                Ok((inst, a, b)) => {
                    let bound = (g.n() + graph::matching_number(g)) as u64;
                    let p = Problem::with_pair(inst, a, b);
                    out.record(distance_finding(&oracle, p, Quantity::HardPairDistance, bound))?;
                }
                Err(Error::Hypothesis(_)) => {}
                Err(e) => return Err(e),
            }
        }
        Task::Random(g) => {
            for _ in 0..params.samples_per_graph {
                let inst = match params.mode {
                    Mode::List => sample_lists(g, params.rule, params.pool, rng)?,
                    Mode::Corr => sample_cover(g, params.rule, rng)?,
                };
                // The conjectures only speak about lists of size at least deg + 2.
                if !inst.has_slack(|d| d + 2) {
                    continue;
                }
                let bound = conjecture_bound(&inst);
                if g.n() <= EXHAUSTIVE_N {
                    out.record(diameter_finding(&oracle, Problem::new(inst), Quantity::Diameter, bound))?;
                } else if let (Some(a), Some(b)) = (sample_colouring(&inst, rng), sample_colouring(&inst, rng)) {
                    let p = Problem::with_pair(inst, a, b);
                    out.record(distance_finding(&oracle, p, Quantity::Distance, bound))?;
                }
            }
        }
    }
    Ok(out)
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::BadParam(e.to_string()))?;
    Ok(pool.install(f))
}

/// Runs a sweep over every connected graph with `1..=n_max` vertices.
/// Results are independent of thread count and scheduling.
pub fn hunt(params: &HuntParams) -> Result<SweepReport> {
    let mut report = SweepReport::default();
    let t0 = Instant::now();
    let mut tasks = Vec::new();
    for n in 1..=params.n_max {
        for g in enumerate::enumerate_graphs(n, true)? {
            if params.rule == ListRule::DegPlus2 {
                tasks.push(Task::Gadget(g.clone()));
            }
            if params.rule.uniform() && params.mode == Mode::List {
                tasks.push(Task::HardPair(g.clone()));
            }
            tasks.push(Task::Random(g));
        }
    }
    report.timing.insert("enumerate".into(), t0.elapsed().as_micros() as u64);
    let t1 = Instant::now();
    let outcomes: Vec<Result<Outcome>> = in_pool(params.threads, || {
        tasks
            .par_iter()
            .enumerate()
            .map(|(i, task)| {
                let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
                rng.set_stream(i as u64);
                run_task(task, params, &mut rng)
            })
            .collect()
    })?;
    report.timing.insert("oracle".into(), t1.elapsed().as_micros() as u64);
    for out in outcomes {
        report.absorb(out?);
    }
    Ok(report)
}

/// For every d-regular graph with at most `n_max` vertices and
/// `1 <= d <= d_max`, compares the diameter under `d + 2` colours with `n + μ`.
pub fn check_regular_cereceda(d_max: usize, n_max: usize, budget: u64) -> Result<SweepReport> {
    let mut report = SweepReport::default();
    let t0 = Instant::now();
    let mut tasks = Vec::new();
    for n in 2..=n_max {
        for g in enumerate::enumerate_graphs(n, false)? {
            let d = g.degree(0);
            if (1..=d_max).contains(&d) && (0..n).all(|v| g.degree(v) == d) {
                tasks.push(g);
            }
        }
    }
    report.timing.insert("enumerate".into(), t0.elapsed().as_micros() as u64);
    let t1 = Instant::now();
    let oracle = Oracle::with_budget(budget);
    let outcomes: Vec<Result<Outcome>> = tasks
        .par_iter()
        .map(|g| {
            let mut out = Outcome::default();
            let inst = Instance::uniform(g.clone(), g.degree(0) as u32 + 2)?;
            let bound = (g.n() + graph::matching_number(g)) as u64;
            out.record(diameter_finding(&oracle, Problem::new(inst), Quantity::RegularDiameter, bound))?;
            Ok(out)
        })
        .collect();
    report.timing.insert("oracle".into(), t1.elapsed().as_micros() as u64);
    for out in outcomes {
        report.absorb(out?);
    }
    Ok(report)
}

