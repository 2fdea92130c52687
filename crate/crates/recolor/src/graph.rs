//! Simple undirected graphs and the classical subroutines the schedulers lean on.
//!
//! Most routines come in two flavours: a public one on the whole graph and a
//! crate-internal `*_in` variant restricted to the vertices flagged in an
//! `alive` mask, which is how recursive schedulers look at `G - X` without
//! relabelling anything.

use std::collections::VecDeque;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Density = Ratio<u64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn mate(&self, n: usize) -> Vec<Option<usize>> {
        let mut mate = vec![None; n];
        for &(u, v) in &self.edges {
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        mate
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCover {
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EgDecomposition {
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    pub v3: Vec<usize>,
    pub components_of_v1: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::BadEdge(u, v, "endpoint out of range"));
            }
            if u == v {
                return Err(Error::BadEdge(u, v, "self-loop"));
            }
            if adj[u].contains(&v) {
                return Err(Error::BadEdge(u, v, "parallel edge"));
            }
            adj[u].push(v);
            adj[v].push(u);
            list.push((u.min(v), u.max(v)));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        list.sort_unstable();
        Ok(Graph { n, adj, edges: list })
    }

    pub fn empty(n: usize) -> Result<Graph> {
        Graph::new(n, [])
    }

    pub fn path(n: usize) -> Result<Graph> {
        Graph::new(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::BadParam(format!("cycle needs n >= 3, got {n}")));
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> Result<Graph> {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn complete_bipartite(p: usize, q: usize) -> Result<Graph> {
        Graph::new(p + q, (0..p).flat_map(|u| (p..p + q).map(move |v| (u, v))))
    }

    pub fn star(m: usize) -> Result<Graph> {
        Graph::complete_bipartite(1, m)
    }

    pub fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, e).expect("petersen edges are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Number of neighbours of `v` that are leaves.
    pub fn leaf_degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&w| self.adj[w].len() == 1).count()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Subgraph induced by `vs`; vertex `vs[i]` becomes `i`.
    pub fn induced(&self, vs: &[usize]) -> Result<Graph> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vs.iter().enumerate() {
            pos[v] = i;
        }
        let e = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]));
        Graph::new(vs.len(), e)
    }

    pub fn is_connected(&self) -> bool {
        components(self).len() == 1
    }

    pub fn is_forest(&self) -> bool {
        self.m() + components(self).len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.m() + 1 == self.n
    }

    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.is_connected() && self.adj.iter().all(|a| a.len() == 2)
    }

    /// Side of each vertex in a 2-colouring, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                let sv = side[v].unwrap();
                for &w in &self.adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            q.push_back(w);
                        }
                        Some(sw) if sw == sv => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    /// The two sides of a complete bipartite graph (`K_{p,q}` with p, q >= 1).
    pub fn complete_bipartite_sides(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        if !self.is_connected() || self.n < 2 {
            return None;
        }
        let side = self.bipartition()?;
        let a: Vec<usize> = (0..self.n).filter(|&v| !side[v]).collect();
        let b: Vec<usize> = (0..self.n).filter(|&v| side[v]).collect();
        (self.m() == a.len() * b.len()).then_some((a, b))
    }

    /// Connected, and every edge lies on at most one cycle.
    pub fn is_cactus(&self) -> bool {
        let alive = vec![true; self.n];
        self.is_connected()
            && blocks_in(self, &alive).iter().all(|b| b.edges == 1 || b.edges == b.vertices.len())
    }
}

/// A biconnected block: its vertices and how many graph edges it holds.
#[derive(Clone, Debug)]
pub(crate) struct Block {
    pub vertices: Vec<usize>,
    pub edges: usize,
}

pub(crate) fn blocks_in(g: &Graph, alive: &[bool]) -> Vec<Block> {
    struct St<'a> {
        g: &'a Graph,
        alive: &'a [bool],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Block>,
    }
    fn dfs(s: &mut St, v: usize, parent: Option<usize>) {
        s.time += 1;
        s.disc[v] = s.time;
        s.low[v] = s.time;
        for i in 0..s.g.adj[v].len() {
            let w = s.g.adj[v][i];
            if !s.alive[w] || Some(w) == parent {
                continue;
            }
            if s.disc[w] == 0 {
                s.stack.push((v, w));
                dfs(s, w, Some(v));
                s.low[v] = s.low[v].min(s.low[w]);
                if s.low[w] >= s.disc[v] {
                    let mut vs = Vec::new();
                    let mut count = 0;
                    while let Some((a, b)) = s.stack.pop() {
                        count += 1;
                        vs.push(a);
                        vs.push(b);
                        if (a, b) == (v, w) {
                            break;
                        }
                    }
                    vs.sort_unstable();
                    vs.dedup();
                    s.out.push(Block { vertices: vs, edges: count });
                }
            } else if s.disc[w] < s.disc[v] {
                s.stack.push((v, w));
                s.low[v] = s.low[v].min(s.disc[w]);
            }
        }
    }
    let mut s = St {
        g,
        alive,
        disc: vec![0; g.n],
        low: vec![0; g.n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..g.n {
        if alive[v] && s.disc[v] == 0 {
            dfs(&mut s, v, None);
        }
    }
    s.out
}

pub(crate) fn degree_in(g: &Graph, alive: &[bool], v: usize) -> usize {
    g.adj[v].iter().filter(|&&w| alive[w]).count()
}

pub(crate) fn components_in(g: &Graph, alive: &[bool]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n];
    let mut out = Vec::new();
    for s in 0..g.n {
        if !alive[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &w in &g.adj[v] {
                if alive[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    components_in(g, &vec![true; g.n])
}

/// Maximum matching restricted to `alive`, as a mate array (Edmonds' blossom algorithm).
pub(crate) fn mates_in(g: &Graph, alive: &[bool]) -> Vec<Option<usize>> {
    let n = g.n;
    const NONE: usize = usize::MAX;
    let mut mate = vec![NONE; n];
    let mut p = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    let mut blossom = vec![false; n];

    fn lca(mate: &[usize], base: &[usize], p: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; mate.len()];
        loop {
            a = base[a];
            seen[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = p[mate[a]];
        }
        loop {
            b = base[b];
            if seen[b] {
                return b;
            }
            b = p[mate[b]];
        }
    }

    fn mark_path(
        mate: &[usize],
        base: &[usize],
        p: &mut [usize],
        blossom: &mut [bool],
        mut v: usize,
        b: usize,
        mut child: usize,
    ) {
        while base[v] != b {
            blossom[base[v]] = true;
            blossom[base[mate[v]]] = true;
            p[v] = child;
            child = mate[v];
            v = p[mate[v]];
        }
    }

    for root in 0..n {
        if !alive[root] || mate[root] != NONE {
            continue;
        }
        used.iter_mut().for_each(|x| *x = false);
        p.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in base.iter_mut().enumerate() {
            *b = i;
        }
        used[root] = true;
        let mut q = VecDeque::from([root]);
        let mut end = NONE;
        'bfs: while let Some(v) = q.pop_front() {
            for &to in &g.adj[v] {
                if !alive[to] || base[v] == base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && p[mate[to]] != NONE) {
                    let cur = lca(&mate, &base, &p, v, to);
                    blossom.iter_mut().for_each(|x| *x = false);
                    mark_path(&mate, &base, &mut p, &mut blossom, v, cur, to);
                    mark_path(&mate, &base, &mut p, &mut blossom, to, cur, v);
                    for i in 0..n {
                        if alive[i] && blossom[base[i]] {
                            base[i] = cur;
                            if !used[i] {
                                used[i] = true;
                                q.push_back(i);
                            }
                        }
                    }
                } else if p[to] == NONE {
                    p[to] = v;
                    if mate[to] == NONE {
                        end = to;
                        break 'bfs;
                    }
                    used[mate[to]] = true;
                    q.push_back(mate[to]);
                }
            }
        }
        let mut u = end;
        while u != NONE {
            let pv = p[u];
            let ppv = mate[pv];
            mate[u] = pv;
            mate[pv] = u;
            u = ppv;
        }
    }
    mate.into_iter().map(|m| (m != NONE).then_some(m)).collect()
}

pub(crate) fn matching_number_in(g: &Graph, alive: &[bool]) -> usize {
    mates_in(g, alive).iter().filter(|m| m.is_some()).count() / 2
}

pub fn max_matching(g: &Graph) -> Matching {
    let mate = mates_in(g, &vec![true; g.n]);
    let edges = (0..g.n).filter_map(|v| mate[v].filter(|&w| v < w).map(|w| (v, w))).collect();
    Matching { edges }
}

pub fn matching_number(g: &Graph) -> usize {
    max_matching(g).len()
}

/// Checks that `m` is a matching of `g`.
pub fn check_matching(g: &Graph, m: &Matching) -> Result<()> {
    let mut used = vec![false; g.n()];
    for &(u, v) in &m.edges {
        if !g.has_edge(u, v) {
            return Err(Error::NotMatching(format!("({u}, {v}) is not an edge")));
        }
        if used[u] || used[v] {
            return Err(Error::NotMatching(format!("edge ({u}, {v}) shares a vertex")));
        }
        used[u] = true;
        used[v] = true;
    }
    Ok(())
}

/// Is there a vertex cover of the alive subgraph with at most `k` vertices?
fn cover_within(g: &Graph, alive: &mut Vec<bool>, k: usize) -> bool {
    let mut best = None;
    let mut best_deg = 0;
    for v in 0..g.n {
        if alive[v] {
            let d = degree_in(g, alive, v);
            if d > best_deg {
                best_deg = d;
                best = Some(v);
            }
        }
    }
    let Some(v) = best else { return true };
    if k == 0 {
        return false;
    }
    // A maximal matching gives a cheap lower bound.
    let mut taken = vec![false; g.n];
    let mut lb = 0;
    for &(a, b) in &g.edges {
        if alive[a] && alive[b] && !taken[a] && !taken[b] {
            taken[a] = true;
            taken[b] = true;
            lb += 1;
        }
    }
    if lb > k {
        return false;
    }
    alive[v] = false;
    let ok = cover_within(g, alive, k - 1);
    alive[v] = true;
    if ok {
        return true;
    }
    if best_deg > k {
        return false;
    }
    let nb: Vec<usize> = g.adj[v].iter().copied().filter(|&w| alive[w]).collect();
    for &w in &nb {
        alive[w] = false;
    }
    let ok = cover_within(g, alive, k - nb.len());
    for &w in &nb {
        alive[w] = true;
    }
    ok
}

pub(crate) fn cover_number_in(g: &Graph, alive: &[bool]) -> usize {
    let mut a = alive.to_vec();
    let mut k = matching_number_in(g, alive);
    while !cover_within(g, &mut a, k) {
        k += 1;
    }
    k
}

/// Lexicographically least minimum vertex cover of the alive subgraph.
pub(crate) fn min_cover_in(g: &Graph, alive: &[bool]) -> Vec<usize> {
    let mut a = alive.to_vec();
    let mut k = cover_number_in(g, alive);
    let mut out = Vec::new();
    for v in 0..g.n {
        if k == 0 {
            break;
        }
        if !a[v] || degree_in(g, &a, v) == 0 {
            continue;
        }
        a[v] = false;
        if cover_within(g, &mut a, k - 1) {
            out.push(v);
            k -= 1;
        } else {
            a[v] = true;
        }
    }
    out
}

pub fn min_vertex_cover(g: &Graph) -> VertexCover {
    VertexCover { vertices: min_cover_in(g, &vec![true; g.n]) }
}

pub fn cover_number(g: &Graph) -> usize {
    cover_number_in(g, &vec![true; g.n])
}

pub(crate) fn edmonds_gallai_in(g: &Graph, alive: &[bool]) -> EgDecomposition {
    let mu = matching_number_in(g, alive);
    let mut a = alive.to_vec();
    let mut in1 = vec![false; g.n];
    for v in 0..g.n {
        if alive[v] {
            a[v] = false;
            in1[v] = matching_number_in(g, &a) == mu;
            a[v] = true;
        }
    }
    let v1: Vec<usize> = (0..g.n).filter(|&v| in1[v]).collect();
    let v2: Vec<usize> = (0..g.n)
        .filter(|&v| alive[v] && !in1[v] && g.adj[v].iter().any(|&w| in1[w]))
        .collect();
    let v3: Vec<usize> = (0..g.n)
        .filter(|&v| alive[v] && !in1[v] && !v2.contains(&v))
        .collect();
    let components_of_v1 = components_in(g, &in1);
    EgDecomposition { v1, v2, v3, components_of_v1 }
}

pub fn edmonds_gallai(g: &Graph) -> EgDecomposition {
    edmonds_gallai_in(g, &vec![true; g.n])
}

pub fn is_factor_critical(g: &Graph) -> bool {
    if g.n % 2 == 0 {
        return false;
    }
    let mut a = vec![true; g.n];
    (0..g.n).all(|v| {
        a[v] = false;
        let ok = 2 * matching_number_in(g, &a) == g.n - 1;
        a[v] = true;
        ok
    })
}

pub fn degeneracy(g: &Graph) -> usize {
    let mut deg: Vec<usize> = (0..g.n).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; g.n];
    let mut k = 0;
    for _ in 0..g.n {
        let v = (0..g.n).filter(|&v| !gone[v]).min_by_key(|&v| deg[v]).unwrap();
        k = k.max(deg[v]);
        gone[v] = true;
        for &w in &g.adj[v] {
            if !gone[w] {
                deg[w] -= 1;
            }
        }
    }
    k
}

pub const MAD_LIMIT: usize = 24;

/// Maximum average degree, exactly, by scanning every induced subgraph.
pub fn mad(g: &Graph) -> Result<Density> {
    if g.n > MAD_LIMIT {
        return Err(Error::TooLarge("mad", g.n));
    }
    let nb: Vec<u32> = (0..g.n)
        .map(|v| g.adj[v].iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let mut best = Density::new(0, 1);
    for mask in 1u32..(1u32 << g.n) {
        let mut twice_e = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice_e += u64::from((nb[v] & mask).count_ones());
        }
        let d = Density::new(twice_e, u64::from(mask.count_ones()));
        if d > best {
            best = d;
        }
    }
    Ok(best)
}

fn colourable(g: &Graph, order: &[usize], k: usize, col: &mut Vec<usize>, i: usize, used: usize) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    let top = (used + 1).min(k);
    for c in 0..top {
        if g.adj[v].iter().all(|&w| col[w] != c) {
            col[v] = c;
            if colourable(g, order, k, col, i + 1, used.max(c + 1)) {
                return true;
            }
        }
    }
    col[v] = usize::MAX;
    false
}

/// Exact chromatic number together with an optimal colouring using colours `0..χ`.
pub fn optimal_colouring(g: &Graph) -> (usize, Vec<usize>) {
    let mut order: Vec<usize> = (0..g.n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut k = if g.m() == 0 { 1 } else { 2 };
    loop {
        let mut col = vec![usize::MAX; g.n];
        if colourable(g, &order, k, &mut col, 0, 0) {
            return (k, col);
        }
        k += 1;
    }
}

pub fn chromatic_number(g: &Graph) -> usize {
    optimal_colouring(g).0
}
