use crate::colour::{self, Colour, Instance};
use crate::error::{Error, Result};
use crate::graph;

use super::{mask_of, members, require_list, require_slack, run, without, Schedule, Work};

/// Geodesic recolouring of a forest: the length is μ(D) plus the Hamming distance.
pub(crate) fn tree_exact(w: &mut Work, alive: &[bool]) -> Result<()> {
    for comp in graph::components_in(w.g, alive) {
        tree_component(w, &mask_of(w.n(), &comp))?;
    }
    Ok(())
}

fn tree_component(w: &mut Work, alive: &[bool]) -> Result<()> {
    let act = members(alive);
    if act.len() == 1 {
        return w.finish(act[0]);
    }
    // A vertex already at its target splits the tree.
    if let Some(&v) = act.iter().find(|&&v| w.cur[v] == w.tgt[v]) {
        return tree_exact(w, &without(alive, &[v]));
    }
    // An edge missing the arc v -> x: do v's side with x held at its current
    // colour, then x's side with v held at its target.
    for &v in &act {
        for x in w.active_nbrs(v, alive).collect::<Vec<_>>() {
            if !w.arc(v, x) {
                let cut = without(alive, &[x]);
                let side_v = graph::components_in(w.g, &cut)
                    .into_iter()
                    .find(|c| c.contains(&v))
                    .expect("v is alive");
                tree_exact(w, &mask_of(w.n(), &side_v))?;
                return tree_exact(w, &without(alive, &side_v));
            }
        }
    }
    // Every edge is a digon: a two-colour swap.
    let cover = graph::min_cover_in(w.g, alive);
    park_cover_swap(w, alive, &cover)
}

/// Parks `cover` off every colour in play around it, moves the rest to
/// target, then finishes the cover: n + |cover| steps.
pub(crate) fn park_cover_swap(w: &mut Work, alive: &[bool], cover: &[usize]) -> Result<()> {
    for &s in cover {
        let nb: Vec<usize> = w.active_nbrs(s, alive).collect();
        let (now, goal) = (w.cur[s], w.tgt[s]);
        let d = w
            .pick(s, |d| d != now && d != goal && nb.iter().all(|&x| !w.conflict(s, d, x, w.tgt[x])))
            .ok_or_else(|| Error::Stuck(format!("no parking colour for cover vertex {s}")))?;
        w.set(s, d)?;
    }
    let in_cover = mask_of(w.n(), cover);
    for v in members(alive) {
        if !in_cover[v] {
            w.finish(v)?;
        }
    }
    for &s in cover {
        w.finish(s)?;
    }
    Ok(())
}

pub fn schedule_tree_exact(inst: &Instance, a: &[Colour], b: &[Colour]) -> Result<Schedule> {
    require_list(inst)?;
    if !inst.graph().is_forest() {
        return Err(Error::WrongClass("a tree or forest"));
    }
    require_slack(inst, "tree-exact", |d| d + 2)?;
    let bound = colour::reconfig_lower_bound(inst, a, b)?;
    run(inst, a, b, "tree-exact", bound, tree_exact)
}
