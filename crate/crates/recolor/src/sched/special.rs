use std::collections::{HashMap, VecDeque};

use crate::colour::{Colour, Colouring, Instance};
use crate::error::{Error, Result};
use crate::graph;

use super::tree::{park_cover_swap, tree_exact};
use super::{mask_of, members, require_list, require_slack, run, sink_component, split_run, without, Schedule, Work};

/// The vertices of an alive cycle in traversal order, starting at the least vertex.
fn cycle_order(w: &Work, alive: &[bool]) -> Vec<usize> {
    let act = members(alive);
    let mut seq = vec![act[0]];
    let mut prev = usize::MAX;
    let mut cur = act[0];
    loop {
        let next = w.active_nbrs(cur, alive).find(|&x| x != prev).expect("cycle vertices have two neighbours");
        if next == act[0] {
            return seq;
        }
        seq.push(next);
        prev = cur;
        cur = next;
    }
}

pub(crate) fn cycle(w: &mut Work, alive: &[bool]) -> Result<()> {
    if let Some(part) = sink_component(w, alive) {
        return split_run(w, alive, &part, tree_exact);
    }
    let mut seq = cycle_order(w, alive);
    let n = seq.len();
    let fwd = |seq: &[usize], i: usize| w.arc(seq[i], seq[(i + 1) % n]);
    let back = |seq: &[usize], i: usize| w.arc(seq[(i + 1) % n], seq[i]);
    if (0..n).all(|i| fwd(&seq, i) && back(&seq, i)) {
        let cover = graph::min_cover_in(w.g, alive);
        return park_cover_swap(w, alive, &cover);
    }
    if !(0..n).all(|i| fwd(&seq, i)) {
        seq.reverse();
        if !(0..n).all(|i| fwd(&seq, i)) {
            return Err(Error::Stuck("strongly connected cycle without a directed spanning cycle".into()));
        }
    }
    if (0..n).all(|i| !back(&seq, i)) {
        let v = seq[0];
        if n == 3 {
            let used: Vec<Colour> = seq.iter().flat_map(|&x| [w.cur[x], w.tgt[x]]).collect();
            let c = w.pick(v, |d| !used.contains(&d)).ok_or_else(|| Error::Stuck("no spare colour on C3".into()))?;
            w.set(v, c)?;
            w.finish(seq[2])?;
            w.finish(seq[1])?;
            return w.finish(v);
        }
        let now = w.cur[v];
        let c = w.pick(v, |d| d != now).ok_or_else(|| Error::Stuck(format!("cannot move {v}")))?;
        w.set(v, c)?;
        for i in (2..n).rev() {
            w.finish(seq[i])?;
        }
        return tree_exact(w, &mask_of(w.n(), &[seq[0], seq[1]]));
    }
    // A digon x-y followed by the one-way arc y -> z.
    let i = (0..n)
        .find(|&i| back(&seq, i) && !back(&seq, (i + 1) % n))
        .expect("mixed cycle has a digon next to a one-way edge");
    let x = seq[i];
    let now = w.cur[x];
    let c = w.pick(x, |d| d != now).ok_or_else(|| Error::Stuck(format!("cannot move {x}")))?;
    w.set(x, c)?;
    tree_exact(w, &without(alive, &[x]))?;
    w.finish(x)
}

pub fn schedule_cycle(inst: &Instance, a: &[Colour], b: &[Colour]) -> Result<Schedule> {
    require_list(inst)?;
    if !inst.graph().is_cycle() {
        return Err(Error::WrongClass("a cycle"));
    }
    require_slack(inst, "cycle", |_| 4)?;
    run(inst, a, b, "cycle", 3 * inst.n() / 2, cycle)
}

/// Sides of the alive complete bipartite graph: (smaller side, larger side).
fn sides(w: &Work, alive: &[bool]) -> (Vec<usize>, Vec<usize>) {
    let act = members(alive);
    let mut side = vec![None; w.n()];
    let mut queue = VecDeque::from([act[0]]);
    side[act[0]] = Some(false);
    while let Some(v) = queue.pop_front() {
        for x in w.active_nbrs(v, alive) {
            if side[x].is_none() {
                side[x] = Some(!side[v].unwrap());
                queue.push_back(x);
            }
        }
    }
    let a: Vec<usize> = act.iter().copied().filter(|&v| side[v] == Some(false)).collect();
    let b: Vec<usize> = act.iter().copied().filter(|&v| side[v] == Some(true)).collect();
    if b.len() < a.len() {
        (b, a)
    } else {
        (a, b)
    }
}

fn colours_of(vs: &[usize], col: &[Colour]) -> Vec<Colour> {
    let mut out: Vec<Colour> = vs.iter().map(|&v| col[v]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub(crate) fn kpq(w: &mut Work, alive: &[bool]) -> Result<()> {
    let act = members(alive);
    if act.iter().all(|&v| w.active_nbrs(v, alive).next().is_none()) {
        for &v in &act {
            w.finish(v)?;
        }
        return Ok(());
    }
    if let Some(part) = sink_component(w, alive) {
        return split_run(w, alive, &part, kpq);
    }
    let (u, wside) = sides(w, alive);
    let (au, bu) = (colours_of(&u, &w.cur), colours_of(&u, &w.tgt));
    if wside.len() + 1 >= au.len() + bu.len() {
        let forbid: Vec<Colour> = colours_of(&wside, &w.cur).into_iter().chain(colours_of(&wside, &w.tgt)).collect();
        for &x in &u {
            if forbid.contains(&w.cur[x]) {
                let c = w
                    .pick(x, |d| !forbid.contains(&d))
                    .ok_or_else(|| Error::Stuck(format!("no parking colour at {x}")))?;
                w.set(x, c)?;
            }
        }
        for &x in wside.iter().chain(&u) {
            w.finish(x)?;
        }
        return Ok(());
    }
    if wside.len() < 2 * bu.len() {
        kpq_fill(w, alive)
    } else {
        w.swapped(alive, kpq_fill)
    }
}

/// Fill one target colour class of the small side after clearing its single
/// holder on the large side, then recurse without that class.
fn kpq_fill(w: &mut Work, alive: &[bool]) -> Result<()> {
    let (u, wside) = sides(w, alive);
    let bu = colours_of(&u, &w.tgt);
    let c = bu
        .iter()
        .copied()
        .find(|&c| wside.iter().filter(|&&x| w.cur[x] == c).count() <= 1)
        .ok_or_else(|| Error::Stuck("no target colour with a single holder".into()))?;
    if let Some(&x) = wside.iter().find(|&&x| w.cur[x] == c) {
        let d = w.pick(x, |d| d != c).ok_or_else(|| Error::Stuck(format!("cannot clear {x}")))?;
        w.set(x, d)?;
    }
    let fill: Vec<usize> = u.iter().copied().filter(|&x| w.tgt[x] == c).collect();
    for &x in &fill {
        w.set(x, c)?;
    }
    kpq(w, &without(alive, &fill))
}

pub fn schedule_complete_bipartite(inst: &Instance, a: &[Colour], b: &[Colour]) -> Result<Schedule> {
    require_list(inst)?;
    if inst.graph().complete_bipartite_sides().is_none() {
        return Err(Error::WrongClass("complete bipartite"));
    }
    require_slack(inst, "complete-bipartite", |d| d + 2)?;
    run(inst, a, b, "complete-bipartite", super::n_plus_mu(inst.graph()), kpq)
}

pub(crate) fn cactus(w: &mut Work, alive: &[bool]) -> Result<()> {
    for comp in graph::components_in(w.g, alive) {
        cactus_component(w, &mask_of(w.n(), &comp))?;
    }
    Ok(())
}

fn cactus_component(w: &mut Work, alive: &[bool]) -> Result<()> {
    let act = members(alive);
    let edges: usize = act.iter().map(|&v| graph::degree_in(w.g, alive, v)).sum::<usize>() / 2;
    if edges + 1 == act.len() {
        return tree_exact(w, alive);
    }
    if act.len() >= 3 && act.iter().all(|&v| graph::degree_in(w.g, alive, v) == 2) {
        return cycle(w, alive);
    }
    if let Some(part) = sink_component(w, alive) {
        return split_run(w, alive, &part, cactus);
    }
    let mu = graph::matching_number_in(w.g, alive);
    for &v in &act {
        if graph::matching_number_in(w.g, &without(alive, &[v])) + 1 != mu {
            continue;
        }
        let nb: Vec<usize> = w.active_nbrs(v, alive).collect();
        let free = w
            .effective(v, alive)
            .into_iter()
            .find(|&c| nb.iter().all(|&x| !w.conflict(v, c, x, w.cur[x]) && !w.conflict(v, c, x, w.tgt[x])));
        if let Some(c) = free {
            w.set(v, c)?;
            cactus(w, &without(alive, &[v]))?;
            return w.finish(v);
        }
    }
    let blocks = graph::blocks_in(w.g, alive);
    let mut count = vec![0usize; w.n()];
    for b in &blocks {
        for &v in &b.vertices {
            count[v] += 1;
        }
    }
    for b in &blocks {
        let cuts: Vec<usize> = b.vertices.iter().copied().filter(|&v| count[v] > 1).collect();
        if cuts.len() != 1 || b.edges != b.vertices.len() {
            continue;
        }
        let rest: Vec<usize> = b.vertices.iter().copied().filter(|&v| v != cuts[0]).collect();
        if endblock(w, alive, cuts[0], &rest, act.len() + mu)? {
            return Ok(());
        }
    }
    Err(Error::Stuck("no cactus reduction applies".into()))
}

type Visited = HashMap<Colouring, (Option<Colouring>, u32)>;

const ENDBLOCK_CAP: usize = 200_000;

/// Breadth-first search over colourings of `verts`, every other vertex fixed by `outside`.
fn explore(w: &Work, verts: &[usize], start: Colouring, outside: &dyn Fn(usize) -> Colour) -> Option<Visited> {
    let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut seen = Visited::new();
    seen.insert(start.clone(), (None, 0));
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        let d = seen[&s].1;
        for (i, &v) in verts.iter().enumerate() {
            for &c in w.inst.colours(v) {
                if c == s[i] {
                    continue;
                }
                let ok = w.g.neighbours(v).iter().all(|&x| {
                    let cx = pos.get(&x).map_or_else(|| outside(x), |&j| s[j]);
                    !w.conflict(v, c, x, cx)
                });
                if !ok {
                    continue;
                }
                let mut t = s.clone();
                t[i] = c;
                if !seen.contains_key(&t) {
                    seen.insert(t.clone(), (Some(s.clone()), d + 1));
                    queue.push_back(t);
                    if seen.len() > ENDBLOCK_CAP {
                        return None;
                    }
                }
            }
        }
    }
    Some(seen)
}

fn path_to(seen: &Visited, end: &Colouring) -> Vec<Colouring> {
    let mut out = vec![end.clone()];
    let mut cur = end;
    while let Some((Some(p), _)) = seen.get(cur) {
        out.push(p.clone());
        cur = p;
    }
    out.reverse();
    out
}

fn replay(w: &mut Work, verts: &[usize], states: &[Colouring]) -> Result<()> {
    for pair in states.windows(2) {
        let i = (0..verts.len()).find(|&i| pair[0][i] != pair[1][i]).expect("consecutive states differ");
        w.set(verts[i], pair[1][i])?;
    }
    Ok(())
}

/// A cycle endblock `rest + cut`: recolour the block to some intermediate
/// colouring, solve the rest of the graph with `rest` held fixed, then finish
/// `rest`. The cheapest intermediate colouring is found by search and used
/// only if the total stays within `budget` = n + μ.
fn endblock(w: &mut Work, alive: &[bool], cut: usize, rest: &[usize], budget: usize) -> Result<bool> {
    let block: Vec<usize> = rest.iter().copied().chain([cut]).collect();
    let start: Colouring = block.iter().map(|&v| w.cur[v]).collect();
    let cur = w.cur.clone();
    let Some(pre) = explore(w, &block, start, &|x| cur[x]) else { return Ok(false) };
    let goal: Colouring = rest.iter().map(|&v| w.tgt[v]).collect();
    let cut_goal = w.tgt[cut];
    let Some(post) = explore(w, rest, goal, &|x| if x == cut { cut_goal } else { cur[x] }) else {
        return Ok(false);
    };
    let remaining = without(alive, rest);
    let inner = members(&remaining).len() + graph::matching_number_in(w.g, &remaining);
    let k = rest.len();
    let mut best: Option<(u32, Colouring)> = None;
    let mut keys: Vec<&Colouring> = pre.keys().collect();
    keys.sort();
    for s in keys {
        let Some(&(_, back)) = post.get(&s[..k].to_vec()) else { continue };
        let clash = rest.iter().enumerate().any(|(i, &r)| w.g.has_edge(cut, r) && w.conflict(cut, cut_goal, r, s[i]));
        if clash {
            continue;
        }
        let cost = pre[s].1 + back;
        if best.as_ref().map_or(true, |(c, _)| cost < *c) {
            best = Some((cost, s.clone()));
        }
    }
    let Some((cost, mid)) = best else { return Ok(false) };
    if cost as usize + inner > budget {
        return Ok(false);
    }
    replay(w, &block, &path_to(&pre, &mid))?;
    cactus(w, &remaining)?;
    let mut back_path = path_to(&post, &mid[..k].to_vec());
    back_path.reverse();
    replay(w, rest, &back_path)?;
    Ok(true)
}

pub fn schedule_cactus(inst: &Instance, a: &[Colour], b: &[Colour]) -> Result<Schedule> {
    require_list(inst)?;
    let g = inst.graph();
    let all = vec![true; g.n()];
    let cactus_like = graph::blocks_in(g, &all)
        .iter()
        .all(|b| b.edges == 1 || b.edges == b.vertices.len());
    if !cactus_like {
        return Err(Error::WrongClass("a cactus"));
    }
    require_slack(inst, "cactus", |d| d + 2)?;
    run(inst, a, b, "cactus", super::n_plus_mu(g), cactus)
}
