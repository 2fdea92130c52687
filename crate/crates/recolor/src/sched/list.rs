use crate::colour::{Colour, Instance};
use crate::error::{Error, Result};
use crate::graph;

use super::{members, require_list, require_slack, run, without, Schedule, Work};

/// Induction on the number of target colours: clear a colour class that is
/// no larger under the current colouring than under the target, fill it, freeze it.
pub(crate) fn greedy(w: &mut Work, alive: &[bool]) -> Result<()> {
    let mut alive = alive.to_vec();
    loop {
        let act = members(&alive);
        if act.is_empty() {
            return Ok(());
        }
        let mut classes: Vec<Colour> = act.iter().map(|&v| w.tgt[v]).collect();
        classes.sort_unstable();
        classes.dedup();
        if classes.len() == 1 {
            for &v in &act {
                w.finish(v)?;
            }
            return Ok(());
        }
        let count = |f: &dyn Fn(usize) -> bool| act.iter().filter(|&&v| f(v)).count();
        let c = *classes
            .iter()
            .find(|&&c| count(&|v| w.cur[v] == c) <= count(&|v| w.tgt[v] == c))
            .expect("some class does not shrink");
        for &v in &act {
            if w.cur[v] == c && w.tgt[v] != c {
                let d = w.pick(v, |d| d != c).ok_or_else(|| Error::Stuck(format!("no colour to clear {v}")))?;
                w.set(v, d)?;
            }
        }
        let fill: Vec<usize> = act.iter().copied().filter(|&v| w.tgt[v] == c).collect();
        for &v in &fill {
            w.set(v, c)?;
        }
        alive = without(&alive, &fill);
    }
}

pub fn schedule_greedy_2n(inst: &Instance, a: &[Colour], b: &[Colour]) -> Result<Schedule> {
    require_list(inst)?;
    require_slack(inst, "greedy-2n", |d| d + 2)?;
    run(inst, a, b, "greedy-2n", 2 * inst.n() - 1, greedy)
}

pub(crate) fn factor2(w: &mut Work, alive: &[bool]) -> Result<()> {
    for comp in graph::components_in(w.g, alive) {
        factor2_component(w, &super::mask_of(w.n(), &comp))?;
    }
    Ok(())
}

/// Hits on colour `c` of `v` from active neighbours' current and target colours.
fn hits(w: &Work, alive: &[bool], v: usize, c: Colour) -> (Vec<usize>, Vec<usize>) {
    let now = w.active_nbrs(v, alive).filter(|&x| w.conflict(v, c, x, w.cur[x])).collect();
    let later = w.active_nbrs(v, alive).filter(|&x| w.conflict(v, c, x, w.tgt[x])).collect();
    (now, later)
}

fn factor2_component(w: &mut Work, alive: &[bool]) -> Result<()> {
    let act = members(alive);
    let mu = graph::matching_number_in(w.g, alive);
    let pivot = act.iter().copied().find(|&v| graph::matching_number_in(w.g, &without(alive, &[v])) + 1 == mu);
    let Some(v) = pivot else {
        // Factor-critical component: 2n - 1 = n + 2μ.
        return greedy(w, alive);
    };
    let c = w
        .effective(v, alive)
        .into_iter()
        .find(|&c| {
            let (now, later) = hits(w, alive, v, c);
            now.len() + later.len() <= 1
        })
        .ok_or_else(|| Error::Stuck(format!("no colour with a single hit at {v}")))?;
    let (_, later) = hits(w, alive, v, c);
    if later.is_empty() {
        park_then_recurse(w, alive, v, c)
    } else {
        w.swapped(alive, |w, alive| park_then_recurse(w, alive, v, c))
    }
}

/// Clears the single current-colour hit on `c`, parks `v` on `c`, solves `G - v`, finishes `v`.
fn park_then_recurse(w: &mut Work, alive: &[bool], v: usize, c: Colour) -> Result<()> {
    let (now, _) = hits(w, alive, v, c);
    for x in now {
        let d = w
            .pick(x, |d| !w.conflict(x, d, v, c))
            .ok_or_else(|| Error::Stuck(format!("cannot clear {x}")))?;
        w.set(x, d)?;
    }
    w.set(v, c)?;
    factor2(w, &without(alive, &[v]))?;
    w.finish(v)
}

pub fn schedule_list_factor2(inst: &Instance, a: &[Colour], b: &[Colour]) -> Result<Schedule> {
    require_list(inst)?;
    require_slack(inst, "list-factor2", |d| d + 2)?;
    let g = inst.graph();
    run(inst, a, b, "list-factor2", g.n() + 2 * graph::matching_number(g), factor2)
}

/// Parks each vertex of `park` (unless already harmless) on a colour clashing
/// with neither the current nor the target colour of any active neighbour.
fn park_off_targets(w: &mut Work, alive: &[bool], park: &[usize]) -> Result<()> {
    for &v in park {
        let harmless = w.active_nbrs(v, alive).all(|x| !w.conflict(v, w.cur[v], x, w.tgt[x]));
        if harmless {
            continue;
        }
        let nb: Vec<usize> = w.active_nbrs(v, alive).collect();
        let d = w
            .pick(v, |d| nb.iter().all(|&x| !w.conflict(v, d, x, w.tgt[x])))
            .ok_or_else(|| Error::Stuck(format!("no parking colour at {v}")))?;
        w.set(v, d)?;
    }
    Ok(())
}

pub(crate) fn orderswap(w: &mut Work, alive: &[bool]) -> Result<()> {
    let act = members(alive);
    let up: Vec<usize> = act.iter().copied().filter(|&v| w.cur[v] > w.tgt[v]).collect();
    if 2 * up.len() > act.len() {
        return w.swapped(alive, orderswap_direct);
    }
    orderswap_direct(w, alive)
}

fn orderswap_direct(w: &mut Work, alive: &[bool]) -> Result<()> {
    let act = members(alive);
    let up: Vec<usize> = act.iter().copied().filter(|&v| w.cur[v] > w.tgt[v]).collect();
    park_off_targets(w, alive, &up)?;
    let mut targets: Vec<Colour> = act.iter().map(|&v| w.tgt[v]).collect();
    targets.sort_unstable();
    targets.dedup();
    for &j in targets.iter().rev() {
        for &v in &act {
            if w.tgt[v] == j {
                w.finish(v)?;
            }
        }
    }
    Ok(())
}

pub fn schedule_biglists_orderswap(inst: &Instance, a: &[Colour], b: &[Colour]) -> Result<Schedule> {
    require_list(inst)?;
    require_slack(inst, "biglists-orderswap", |d| 2 * d + 1)?;
    run(inst, a, b, "biglists-orderswap", 3 * inst.n() / 2, orderswap)
}

pub(crate) fn biglists_eg(w: &mut Work, alive: &[bool]) -> Result<()> {
    let eg = graph::edmonds_gallai_in(w.g, alive);
    park_off_targets(w, alive, &eg.v2)?;
    let rest = without(alive, &eg.v2);
    for comp in graph::components_in(w.g, &rest) {
        orderswap(w, &super::mask_of(w.n(), &comp))?;
    }
    for &v in &eg.v2 {
        w.finish(v)?;
    }
    Ok(())
}

pub fn schedule_biglists_eg(inst: &Instance, a: &[Colour], b: &[Colour]) -> Result<Schedule> {
    require_list(inst)?;
    require_slack(inst, "biglists-eg", |d| 2 * d + 1)?;
    run(inst, a, b, "biglists-eg", super::n_plus_mu(inst.graph()), biglists_eg)
}
