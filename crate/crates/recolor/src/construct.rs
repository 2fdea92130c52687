//! Extremal instances: tight gadgets, hard pairs, combs, frozen cliques and
//! the auxiliary graphs Ĝ and G̃.

use crate::colour::{Colour, Colouring, Cover, Instance, Palette};
use crate::error::{Error, Result};
use crate::graph::{self, Graph, Matching};

/// Ĝ: `g` plus `vy` whenever `vw, xy` are in `m` and `wx` is an edge.
pub fn gen_hat_graph(g: &Graph, m: &Matching) -> Result<Graph> {
    graph::check_matching(g, m)?;
    let mate = m.mate(g.n());
    let mut edges = g.edges().to_vec();
    for &(w, x) in g.edges() {
        if let (Some(v), Some(y)) = (mate[w], mate[x]) {
            if v != x && !g.has_edge(v, y) {
                edges.push((v.min(y), v.max(y)));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::new(g.n(), edges)
}

/// G̃: contract every edge of `m`. Contracted vertices are numbered by their
/// least original vertex.
pub fn gen_tilde_graph(g: &Graph, m: &Matching) -> Result<Graph> {
    graph::check_matching(g, m)?;
    let mate = m.mate(g.n());
    let mut id = vec![usize::MAX; g.n()];
    let mut next = 0;
    for v in 0..g.n() {
        if id[v] == usize::MAX {
            id[v] = next;
            if let Some(u) = mate[v] {
                id[u] = next;
            }
            next += 1;
        }
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (id[u].min(id[v]), id[u].max(id[v])))
        .filter(|&(a, b)| a != b)
        .collect();
    edges.sort_unstable();
    edges.dedup();
    Graph::new(next, edges)
}

/// A pair of `[k]`-colourings at distance at least `n + μ`: α is an optimal
/// colouring of Ĝ, β swaps α along a maximum matching and moves every
/// unsaturated vertex to the least colour avoiding α(v) and β on N(v).
pub fn gen_hard_pair_k(g: &Graph, k: u32) -> Result<(Instance, Colouring, Colouring)> {
    let m = graph::max_matching(g);
    let hat = gen_hat_graph(g, &m)?;
    let (chi, col) = graph::optimal_colouring(&hat);
    let k_ = k as usize;
    if !(k_ > chi || (k_ >= chi && k_ >= g.max_degree() + 2)) {
        return Err(Error::Hypothesis(format!(
            "k = {k} needs k >= {} or k >= max({chi}, {})",
            chi + 1,
            g.max_degree() + 2
        )));
    }
    let alpha: Colouring = col.iter().map(|&c| c as Colour + 1).collect();
    let mate = m.mate(g.n());
    let mut beta = vec![0; g.n()];
    for v in 0..g.n() {
        if let Some(u) = mate[v] {
            beta[v] = alpha[u];
        }
    }
    for v in 0..g.n() {
        if mate[v].is_some() {
            continue;
        }
        beta[v] = (1..=k)
            .find(|&c| c != alpha[v] && g.neighbours(v).iter().all(|&w| beta[w] != c))
            .ok_or_else(|| Error::Hypothesis(format!("no fresh colour for unsaturated vertex {v}")))?;
    }
    let inst = Instance::uniform(g.clone(), k)?;
    Ok((inst, alpha, beta))
}

/// Lists of size `deg + 2` where the ends of each `m`-edge share exactly two
/// colours and all other adjacent lists are disjoint. α and β swap the shared
/// pair on each matched edge and use two private colours elsewhere.
pub fn gen_list_gadget(g: &Graph, m: &Matching) -> Result<(Instance, Colouring, Colouring)> {
    graph::check_matching(g, m)?;
    if m.len() != graph::matching_number(g) {
        return Err(Error::NotMaximum);
    }
    let n = g.n();
    let mate = m.mate(n);
    let mut lists: Vec<Vec<Colour>> = vec![Vec::new(); n];
    let (mut alpha, mut beta) = (vec![0; n], vec![0; n]);
    let mut next: Colour = 1;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    for v in 0..n {
        let size = g.degree(v) + 2;
        match mate[v] {
            Some(u) if u < v => {
                let (s, t) = (lists[u][0], lists[u][1]);
                lists[v] = vec![s, t];
                alpha[v] = t;
                beta[v] = s;
            }
            Some(_) => {
                lists[v] = vec![fresh(), fresh()];
                alpha[v] = lists[v][0];
                beta[v] = lists[v][1];
            }
            None => {}
        }
        while lists[v].len() < size {
            lists[v].push(fresh());
        }
        if mate[v].is_none() {
            alpha[v] = lists[v][0];
            beta[v] = lists[v][1];
        }
    }
    Ok((Instance::with_lists(g.clone(), lists)?, alpha, beta))
}

/// Cover with `f = deg + 2` and matching `{(1,2),(2,1)}` on every edge; α ≡ 1, β ≡ 2.
pub fn gen_corr_gadget(g: &Graph) -> Result<(Instance, Colouring, Colouring)> {
    let sizes = (0..g.n()).map(|v| g.degree(v) as u32 + 2).collect();
    let cover = Cover::new(g, sizes, g.edges().iter().map(|&e| (e, vec![(1, 2), (2, 1)])))?;
    Ok((Instance::with_cover(g.clone(), cover), vec![1; g.n()], vec![2; g.n()]))
}

/// The comb `T_n`: spine `v_1..v_t` (vertices `0..t`, `t = ⌈n/2⌉`) with a
/// pendant `w_i` (vertex `t + i - 1`) on each spine vertex, except `v_t`
/// when `n` is odd. Returns the colouring from the comb figure.
pub fn gen_comb(n: usize) -> Result<(Graph, Colouring)> {
    if n < 3 {
        return Err(Error::BadParam(format!("comb needs n >= 3, got {n}")));
    }
    let t = n.div_ceil(2);
    let mut edges: Vec<(usize, usize)> = (1..t).map(|i| (i - 1, i)).collect();
    edges.extend((0..n - t).map(|i| (i, t + i)));
    let g = Graph::new(n, edges)?;
    let mut alpha = vec![0; n];
    for i in 1..=t {
        alpha[i - 1] = match i % 4 {
            3 => 1,
            1 => 2,
            _ => 3,
        };
    }
    for i in 1..=n - t {
        alpha[t + i - 1] = if matches!(i % 4, 1 | 2) { 1 } else { 2 };
    }
    Ok((g, alpha))
}

/// `K_{k+1}` coloured `1..=k+1`: frozen under `k + 1` colours.
pub fn gen_frozen_regular(k: usize) -> Result<(Graph, Colouring)> {
    if k == 0 {
        return Err(Error::BadParam("k must be at least 1".into()));
    }
    let g = Graph::complete(k + 1)?;
    Ok((g, (1..=k as Colour + 1).collect()))
}

/// On a tree, gives each vertex the least colour of its list that appears in
/// no neighbour's list.
pub fn gen_central_colouring(inst: &Instance) -> Result<Colouring> {
    let g = inst.graph();
    if !g.is_tree() {
        return Err(Error::WrongClass("a tree"));
    }
    let Palette::Lists(lists) = inst.palette() else {
        return Err(Error::WrongMode("central colouring needs list mode"));
    };
    (0..g.n())
        .map(|v| {
            lists[v]
                .iter()
                .copied()
                .find(|c| g.neighbours(v).iter().all(|&w| !lists[w].contains(c)))
                .ok_or_else(|| Error::Precondition(format!("vertex {v} has no private colour")))
        })
        .collect()
}

/// `C_4` with colours `[4]`, α = (1,2,3,4) and β = (2,3,4,1).
pub fn gen_c4_example() -> (Instance, Colouring, Colouring) {
    let inst = Instance::uniform(Graph::cycle(4).expect("C4"), 4).expect("uniform lists");
    (inst, vec![1, 2, 3, 4], vec![2, 3, 4, 1])
}
