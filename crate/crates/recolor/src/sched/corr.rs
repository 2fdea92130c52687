use num_rational::Ratio;

use crate::colour::{Colour, Instance};
use crate::error::{Error, Result};
use crate::graph::{self, Graph};

use super::{mask_of, members, require_corr, require_slack, run, sink_component, split_run, without, Schedule, Work};

/// Park a minimum cover off every neighbour's current and target colour,
/// send the independent rest to target, then finish the cover.
fn corr_biglists(w: &mut Work, alive: &[bool]) -> Result<()> {
    let cover = graph::min_cover_in(w.g, alive);
    for &s in &cover {
        let nb: Vec<usize> = w.active_nbrs(s, alive).collect();
        if nb.iter().all(|&x| !w.conflict(s, w.cur[s], x, w.tgt[x])) {
            continue;
        }
        let d = w
            .pick(s, |d| nb.iter().all(|&x| !w.conflict(s, d, x, w.tgt[x])))
            .ok_or_else(|| Error::Stuck(format!("no parking colour at {s}")))?;
        w.set(s, d)?;
    }
    let in_cover = mask_of(w.n(), &cover);
    for v in members(alive) {
        if !in_cover[v] {
            w.finish(v)?;
        }
    }
    for &s in &cover {
        w.finish(s)?;
    }
    Ok(())
}

pub fn schedule_corr_biglists(inst: &Instance, a: &[Colour], b: &[Colour]) -> Result<Schedule> {
    require_corr(inst)?;
    require_slack(inst, "corr-biglists", |d| 2 * d + 1)?;
    let g = inst.graph();
    run(inst, a, b, "corr-biglists", g.n() + graph::cover_number(g), corr_biglists)
}

fn hits(w: &Work, alive: &[bool], v: usize, c: Colour) -> (Vec<usize>, Vec<usize>) {
    let now = w.active_nbrs(v, alive).filter(|&x| w.conflict(v, c, x, w.cur[x])).collect();
    let later = w.active_nbrs(v, alive).filter(|&x| w.conflict(v, c, x, w.tgt[x])).collect();
    (now, later)
}

/// Moves every current-colour clash with `(v, c)` out of the way, then sets `v` to `c`.
fn clear_and_set(w: &mut Work, alive: &[bool], v: usize, c: Colour) -> Result<()> {
    let (now, _) = hits(w, alive, v, c);
    for x in now {
        let d = w
            .pick(x, |d| !w.conflict(x, d, v, c))
            .ok_or_else(|| Error::Stuck(format!("cannot clear {x}")))?;
        w.set(x, d)?;
    }
    w.set(v, c)
}

fn corr_factor2(w: &mut Work, alive: &[bool]) -> Result<()> {
    let cover = graph::min_cover_in(w.g, alive);
    let Some(&v) = cover.first() else {
        for v in members(alive) {
            w.finish(v)?;
        }
        return Ok(());
    };
    let c = w
        .effective(v, alive)
        .into_iter()
        .find(|&c| {
            let (now, later) = hits(w, alive, v, c);
            now.len() + later.len() <= 1
        })
        .ok_or_else(|| Error::Stuck(format!("no colour with a single hit at {v}")))?;
    let step = move |w: &mut Work, alive: &[bool]| -> Result<()> {
        clear_and_set(w, alive, v, c)?;
        corr_factor2(w, &without(alive, &[v]))?;
        w.finish(v)
    };
    if hits(w, alive, v, c).1.is_empty() {
        step(w, alive)
    } else {
        w.swapped(alive, step)
    }
}

pub fn schedule_corr_factor2(inst: &Instance, a: &[Colour], b: &[Colour]) -> Result<Schedule> {
    require_corr(inst)?;
    require_slack(inst, "corr-factor2", |d| d + 2)?;
    let g = inst.graph();
    run(inst, a, b, "corr-factor2", g.n() + 2 * graph::cover_number(g), corr_factor2)
}

/// Which sparse class a graph falls in, if any: "subcubic", "cactus" or "mad<2.4".
pub fn sparse_class(g: &Graph) -> Option<&'static str> {
    if g.max_degree() <= 3 {
        return Some("subcubic");
    }
    let all = vec![true; g.n()];
    let cactus_like = graph::blocks_in(g, &all)
        .iter()
        .all(|b| b.edges == 1 || b.edges == b.vertices.len());
    if cactus_like {
        return Some("cactus");
    }
    match graph::mad(g) {
        Ok(m) if m < Ratio::new(12, 5) => Some("mad<2.4"),
        _ => None,
    }
}

/// Free colour of `v`: in its effective list and clashing with no active
/// neighbour's current or target colour.
fn free_colour(w: &Work, alive: &[bool], v: usize) -> Option<Colour> {
    w.effective(v, alive).into_iter().find(|&c| {
        let (now, later) = hits(w, alive, v, c);
        now.is_empty() && later.is_empty()
    })
}

fn park_free(w: &mut Work, alive: &[bool], v: usize, c: Colour) -> Result<()> {
    w.set(v, c)?;
    corr_sparse(w, &without(alive, &[v]))?;
    w.finish(v)
}

/// At most one neighbour's current colour clashes with the target at `v`:
/// move it, finish `v`, recurse on `G - v`.
fn settle_first(w: &mut Work, alive: &[bool], v: usize) -> Result<()> {
    let tv = w.tgt[v];
    clear_and_set(w, alive, v, tv)?;
    corr_sparse(w, &without(alive, &[v]))
}

fn corr_sparse(w: &mut Work, alive: &[bool]) -> Result<()> {
    let act = members(alive);
    let tau = graph::cover_number_in(w.g, alive);
    if tau == 0 {
        for &v in &act {
            w.finish(v)?;
        }
        return Ok(());
    }
    let deg = |v: usize| graph::degree_in(w.g, alive, v);
    // Type (i): degree at most 3 and in some minimum cover.
    let low = act.iter().copied().find(|&v| {
        (1..=3).contains(&deg(v)) && graph::cover_number_in(w.g, &without(alive, &[v])) + 1 == tau
    });
    if let Some(v) = low {
        let blockers = |w: &Work| w.active_nbrs(v, alive).filter(|&x| w.conflict(x, w.cur[x], v, w.tgt[v])).count();
        if blockers(w) <= 1 {
            return settle_first(w, alive, v);
        }
        let back = w.active_nbrs(v, alive).filter(|&x| w.conflict(x, w.tgt[x], v, w.cur[v])).count();
        if back <= 1 {
            return w.swapped(alive, |w, alive| settle_first(w, alive, v));
        }
        if let Some(c) = free_colour(w, alive, v) {
            return park_free(w, alive, v, c);
        }
        return Err(Error::Stuck(format!("no free colour at low-degree vertex {v}")));
    }
    // Type (ii): degree at least 4 with at most two non-leaf neighbours.
    let leafy = act.iter().copied().find(|&v| {
        let d = deg(v);
        let leaves = w.active_nbrs(v, alive).filter(|&x| deg(x) == 1).count();
        d >= 4 && d - leaves <= 2
    });
    let Some(v) = leafy else {
        return Err(Error::Stuck("no reducible vertex; graph is outside the sparse classes".into()));
    };
    let leaves: Vec<usize> = w.active_nbrs(v, alive).filter(|&x| deg(x) == 1).collect();
    if let Some(&x) = leaves.iter().find(|&&x| !w.conflict(v, w.cur[v], x, w.tgt[x])) {
        w.finish(x)?;
        return corr_sparse(w, &without(alive, &[x]));
    }
    if let Some(&x) = leaves.iter().find(|&&x| !w.conflict(v, w.tgt[v], x, w.cur[x])) {
        return w.swapped(alive, |w, alive| {
            w.finish(x)?;
            corr_sparse(w, &without(alive, &[x]))
        });
    }
    if let Some(c) = free_colour(w, alive, v) {
        return park_free(w, alive, v, c);
    }
    match sink_component(w, alive) {
        Some(part) => split_run(w, alive, &part, corr_sparse),
        None => Err(Error::Stuck(format!("no free colour at vertex {v}"))),
    }
}

pub fn schedule_corr_sparse(inst: &Instance, a: &[Colour], b: &[Colour]) -> Result<Schedule> {
    require_corr(inst)?;
    let g = inst.graph();
    if sparse_class(g).is_none() {
        return Err(Error::Hypothesis(
            "graph has maximum degree above 3 (a), is not a cactus (b), and has mad >= 2.4 (c)".into(),
        ));
    }
    require_slack(inst, "corr-sparse", |d| d + 2)?;
    run(inst, a, b, "corr-sparse", g.n() + graph::cover_number(g), corr_sparse)
}

