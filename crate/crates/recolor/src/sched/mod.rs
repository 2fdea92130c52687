//! Constructive recolouring schedules.
//!
//! Every scheduler works on a [`Work`] frame: the instance, the current
//! colouring, the target colouring and the steps emitted so far. Recursion
//! happens on an `alive` mask; vertices outside it keep their current colour
//! and so act exactly like colours struck from their neighbours' lists.

mod corr;
mod list;
mod special;
mod tree;

use serde::{Deserialize, Serialize};

use crate::colour::{Colour, Colouring, Instance, Step};
use crate::error::{Error, Result};
use crate::graph::{self, Graph};

pub use corr::{schedule_corr_biglists, schedule_corr_factor2, schedule_corr_sparse, sparse_class};
pub use list::{schedule_biglists_eg, schedule_biglists_orderswap, schedule_greedy_2n, schedule_list_factor2};
pub use special::{schedule_cactus, schedule_complete_bipartite, schedule_cycle};
pub use tree::schedule_tree_exact;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub steps: Vec<Step>,
    pub theorem: String,
    pub bound: usize,
}

impl Schedule {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Index of the offending step; `None` when the final colouring is wrong.
    pub step: Option<usize>,
    pub reason: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.step {
            Some(i) => write!(f, "step {i}: {}", self.reason),
            None => write!(f, "{}", self.reason),
        }
    }
}

/// Replays `steps` from `a`, checking each one and that the walk ends at `b`.
pub fn validate_schedule(inst: &Instance, a: &[Colour], b: &[Colour], steps: &[Step]) -> std::result::Result<(), Violation> {
    let bad = |step, reason: String| Err(Violation { step, reason });
    if let Err(e) = inst.check_proper(a) {
        return bad(None, format!("start colouring: {e}"));
    }
    if let Err(e) = inst.check_proper(b) {
        return bad(None, format!("target colouring: {e}"));
    }
    let g = inst.graph();
    let mut cur = a.to_vec();
    for (i, &(v, c)) in steps.iter().enumerate() {
        if v >= inst.n() {
            return bad(Some(i), format!("vertex {v} does not exist"));
        }
        if !inst.allows(v, c) {
            return bad(Some(i), format!("colour {c} is not available at vertex {v}"));
        }
        if cur[v] == c {
            return bad(Some(i), format!("vertex {v} already has colour {c}"));
        }
        if let Some(&w) = g.neighbours(v).iter().find(|&&w| inst.conflict(v, c, w, cur[w])) {
            return bad(Some(i), format!("colour {c} at vertex {v} clashes with vertex {w}"));
        }
        cur[v] = c;
    }
    match (0..inst.n()).find(|&v| cur[v] != b[v]) {
        Some(v) => bad(None, format!("vertex {v} ends with colour {} instead of {}", cur[v], b[v])),
        None => Ok(()),
    }
}

pub(crate) type Mask = Vec<bool>;

pub(crate) struct Work<'a> {
    pub inst: &'a Instance,
    pub g: &'a Graph,
    pub cur: Colouring,
    pub tgt: Colouring,
    pub steps: Vec<Step>,
}

impl<'a> Work<'a> {
    fn new(inst: &'a Instance, a: &[Colour], b: &[Colour]) -> Work<'a> {
        Work { inst, g: inst.graph(), cur: a.to_vec(), tgt: b.to_vec(), steps: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn conflict(&self, v: usize, c: Colour, w: usize, d: Colour) -> bool {
        self.inst.conflict(v, c, w, d)
    }

    /// Can `v` take colour `c` right now?
    pub fn fits(&self, v: usize, c: Colour) -> bool {
        self.g.neighbours(v).iter().all(|&w| !self.conflict(v, c, w, self.cur[w]))
    }

    /// Recolours `v`; a no-op when it already has `c`.
    pub fn set(&mut self, v: usize, c: Colour) -> Result<()> {
        if self.cur[v] == c {
            return Ok(());
        }
        if !self.inst.allows(v, c) || !self.fits(v, c) {
            return Err(Error::Stuck(format!("recolouring vertex {v} to {c} is not proper")));
        }
        self.cur[v] = c;
        self.steps.push((v, c));
        Ok(())
    }

    pub fn finish(&mut self, v: usize) -> Result<()> {
        self.set(v, self.tgt[v])
    }

    /// Least colour of `v` that fits now and passes `ok`.
    pub fn pick(&self, v: usize, ok: impl Fn(Colour) -> bool) -> Option<Colour> {
        self.inst.colours(v).iter().copied().find(|&c| ok(c) && self.fits(v, c))
    }

    /// Colours of `v` not clashing with any frozen neighbour: the effective list.
    pub fn effective(&self, v: usize, alive: &[bool]) -> Vec<Colour> {
        self.inst
            .colours(v)
            .iter()
            .copied()
            .filter(|&c| {
                self.g
                    .neighbours(v)
                    .iter()
                    .all(|&w| alive[w] || !self.conflict(v, c, w, self.cur[w]))
            })
            .collect()
    }

    pub fn active_nbrs<'b>(&'b self, v: usize, alive: &'b [bool]) -> impl Iterator<Item = usize> + 'b {
        self.g.neighbours(v).iter().copied().filter(move |&w| alive[w])
    }

    /// Runs `f` with the roles of current and target swapped on `alive`, then
    /// replays its steps backwards on the real frame.
    pub fn swapped(&mut self, alive: &[bool], f: impl FnOnce(&mut Work<'a>, &[bool]) -> Result<()>) -> Result<()> {
        let mut start = self.cur.clone();
        let mut goal = self.tgt.clone();
        for v in 0..self.n() {
            if alive[v] {
                start[v] = self.tgt[v];
                goal[v] = self.cur[v];
            }
        }
        let mut sub = Work { inst: self.inst, g: self.g, cur: start.clone(), tgt: goal, steps: Vec::new() };
        f(&mut sub, alive)?;
        let mut col = start;
        let mut undo = Vec::with_capacity(sub.steps.len());
        for &(v, c) in &sub.steps {
            undo.push((v, col[v]));
            col[v] = c;
        }
        if (0..self.n()).any(|v| col[v] != self.cur[v]) {
            return Err(Error::Stuck("reversed run did not reach the current colouring".into()));
        }
        for &(v, c) in undo.iter().rev() {
            self.set(v, c)?;
        }
        Ok(())
    }

    /// Arc `v -> w` of the colour-shift digraph between current and target.
    pub fn arc(&self, v: usize, w: usize) -> bool {
        self.conflict(v, self.tgt[v], w, self.cur[w])
    }
}

pub(crate) fn members(alive: &[bool]) -> Vec<usize> {
    (0..alive.len()).filter(|&v| alive[v]).collect()
}

pub(crate) fn mask_of(n: usize, vs: &[usize]) -> Mask {
    let mut m = vec![false; n];
    for &v in vs {
        m[v] = true;
    }
    m
}

pub(crate) fn without(alive: &[bool], vs: &[usize]) -> Mask {
    let mut m = alive.to_vec();
    for &v in vs {
        m[v] = false;
    }
    m
}

/// Sink strongly connected component of the colour-shift digraph on `alive`,
/// when that digraph is not strongly connected.
pub(crate) fn sink_component(w: &Work, alive: &[bool]) -> Option<Vec<usize>> {
    let vs = members(alive);
    if vs.len() < 2 {
        return None;
    }
    let n = w.n();
    let reach = |s: usize, forward: bool| {
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for y in w.active_nbrs(x, alive) {
                let has = if forward { w.arc(x, y) } else { w.arc(y, x) };
                if has && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    };
    let mut assigned = vec![false; n];
    for &s in &vs {
        if assigned[s] {
            continue;
        }
        let f = reach(s, true);
        let b = reach(s, false);
        let scc: Vec<usize> = vs.iter().copied().filter(|&x| f[x] && b[x]).collect();
        if scc.len() == vs.len() {
            return None;
        }
        for &x in &scc {
            assigned[x] = true;
        }
        let sink = scc.iter().all(|&x| w.active_nbrs(x, alive).all(|y| !w.arc(x, y) || scc.contains(&y)));
        if sink {
            return Some(scc);
        }
    }
    unreachable!("a digraph that is not strongly connected has a sink component")
}

/// The two-phase recolouring of a split with no arcs from `part` to the rest:
/// first `part` with the rest frozen at its current colours, then the rest.
pub(crate) fn split_run(
    w: &mut Work,
    alive: &[bool],
    part: &[usize],
    mut f: impl FnMut(&mut Work, &[bool]) -> Result<()>,
) -> Result<()> {
    let first = mask_of(w.n(), part);
    let second = without(alive, part);
    f(w, &first)?;
    f(w, &second)
}

/// Public entry point for the strong-connectivity split: `(V1, V2)` with `V1`
/// a sink component, so there are no arcs from `V1` to `V2`.
pub fn split_by_scc(inst: &Instance, a: &[Colour], b: &[Colour]) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    inst.check_proper(a)?;
    inst.check_proper(b)?;
    let w = Work::new(inst, a, b);
    let all = vec![true; inst.n()];
    Ok(sink_component(&w, &all).map(|v1| {
        let v2 = (0..inst.n()).filter(|x| !v1.contains(x)).collect();
        (v1, v2)
    }))
}

pub(crate) fn require_list(inst: &Instance) -> Result<()> {
    if inst.is_list() {
        Ok(())
    } else {
        Err(Error::WrongMode("scheduler needs a list assignment"))
    }
}

pub(crate) fn require_corr(inst: &Instance) -> Result<()> {
    if inst.is_list() {
        Err(Error::WrongMode("scheduler needs a correspondence cover"))
    } else {
        Ok(())
    }
}

pub(crate) fn require_slack(inst: &Instance, what: &str, need: impl Fn(usize) -> usize) -> Result<()> {
    let g = inst.graph();
    match (0..inst.n()).find(|&v| inst.list_size(v) < need(g.degree(v))) {
        Some(v) => Err(Error::Precondition(format!(
            "vertex {v} has {} colours but {what} needs {}",
            inst.list_size(v),
            need(g.degree(v))
        ))),
        None => Ok(()),
    }
}

/// Checks the colourings, runs `f` on the whole graph and validates the result.
pub(crate) fn run(
    inst: &Instance,
    a: &[Colour],
    b: &[Colour],
    theorem: &str,
    bound: usize,
    f: impl FnOnce(&mut Work, &[bool]) -> Result<()>,
) -> Result<Schedule> {
    inst.check_proper(a)?;
    inst.check_proper(b)?;
    let mut w = Work::new(inst, a, b);
    let all = vec![true; inst.n()];
    f(&mut w, &all)?;
    if let Err(v) = validate_schedule(inst, a, b, &w.steps) {
        return Err(Error::Stuck(format!("{theorem} produced an invalid schedule: {v}")));
    }
    Ok(Schedule { steps: w.steps, theorem: theorem.to_string(), bound })
}

pub const ALGORITHMS: [&str; 11] = [
    "tree-exact",
    "cactus",
    "cycle",
    "complete-bipartite",
    "biglists-eg",
    "corr-biglists",
    "corr-sparse",
    "list-factor2",
    "corr-factor2",
    "biglists-orderswap",
    "greedy-2n",
];

/// Runs the named scheduler.
pub fn schedule_named(name: &str, inst: &Instance, a: &[Colour], b: &[Colour]) -> Result<Schedule> {
    match name {
        "greedy-2n" => schedule_greedy_2n(inst, a, b),
        "list-factor2" => schedule_list_factor2(inst, a, b),
        "biglists-orderswap" => schedule_biglists_orderswap(inst, a, b),
        "biglists-eg" => schedule_biglists_eg(inst, a, b),
        "corr-biglists" => schedule_corr_biglists(inst, a, b),
        "corr-factor2" => schedule_corr_factor2(inst, a, b),
        "tree-exact" => schedule_tree_exact(inst, a, b),
        "cycle" => schedule_cycle(inst, a, b),
        "complete-bipartite" => schedule_complete_bipartite(inst, a, b),
        "cactus" => schedule_cactus(inst, a, b),
        "corr-sparse" => schedule_corr_sparse(inst, a, b),
        other => Err(Error::BadParam(format!("unknown scheduler {other:?}"))),
    }
}

/// Tries schedulers from the strongest guarantee down and returns the first
/// schedule produced; `theorem` names the one used.
pub fn auto_schedule(inst: &Instance, a: &[Colour], b: &[Colour]) -> Result<Schedule> {
    inst.check_proper(a)?;
    inst.check_proper(b)?;
    for name in ALGORITHMS {
        match schedule_named(name, inst, a, b) {
            Ok(s) => return Ok(s),
            Err(
                Error::WrongMode(_)
                | Error::WrongClass(_)
                | Error::Precondition(_)
                | Error::Hypothesis(_)
                | Error::Stuck(_),
            ) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NoScheduler)
}

pub(crate) fn n_plus_mu(g: &Graph) -> usize {
    g.n() + graph::matching_number(g)
}

