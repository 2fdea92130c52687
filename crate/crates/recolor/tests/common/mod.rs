//! Brute-force reference implementations, deliberately naive.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use recolor::{Colour, Colouring, Graph, Instance};

/// Every matching of `g` that cannot be extended, as edge lists.
fn matchings(g: &Graph, i: usize, used: u32, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
    if i == g.m() {
        out.push(cur.clone());
        return;
    }
    let (u, v) = g.edges()[i];
    if used & (1 << u) == 0 && used & (1 << v) == 0 {
        cur.push((u, v));
        matchings(g, i + 1, used | 1 << u | 1 << v, cur, out);
        cur.pop();
    }
    matchings(g, i + 1, used, cur, out);
}

pub fn all_matchings(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    matchings(g, 0, 0, &mut Vec::new(), &mut out);
    out
}

pub fn maximum_matchings(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let all = all_matchings(g);
    let mu = all.iter().map(Vec::len).max().unwrap_or(0);
    all.into_iter().filter(|m| m.len() == mu).collect()
}

pub fn matching_number(g: &Graph) -> usize {
    all_matchings(g).iter().map(Vec::len).max().unwrap_or(0)
}

fn is_cover(g: &Graph, mask: u32) -> bool {
    g.edges().iter().all(|&(u, v)| mask & (1 << u) != 0 || mask & (1 << v) != 0)
}

fn bits(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask & (1 << v) != 0).collect()
}

/// Lexicographically least minimum vertex cover, by scanning all subsets.
pub fn min_cover(g: &Graph) -> Vec<usize> {
    let n = g.n();
    (0u32..1 << n)
        .filter(|&m| is_cover(g, m))
        .map(|m| bits(m, n))
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
        .unwrap()
}

pub fn independence_number(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|&m| g.edges().iter().all(|&(u, v)| m & (1 << u) == 0 || m & (1 << v) == 0))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap()
}

pub fn clique_number(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|&m| {
            let vs = bits(m, n);
            vs.iter().all(|&u| vs.iter().all(|&v| u == v || g.has_edge(u, v)))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap()
}

pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.n();
    (1..=n)
        .find(|&k| {
            let total = k.pow(n as u32);
            (0..total).any(|mut code| {
                let mut col = vec![0; n];
                for c in col.iter_mut() {
                    *c = code % k;
                    code /= k;
                }
                g.edges().iter().all(|&(u, v)| col[u] != col[v])
            })
        })
        .unwrap()
}

/// Connected components of the subgraph induced by `vs`, via union-find.
pub fn components_of(g: &Graph, vs: &[usize]) -> Vec<Vec<usize>> {
    let mut parent: HashMap<usize, usize> = vs.iter().map(|&v| (v, v)).collect();
    fn find(p: &mut HashMap<usize, usize>, v: usize) -> usize {
        let u = p[&v];
        if u == v {
            return v;
        }
        let r = find(p, u);
        p.insert(v, r);
        r
    }
    for &(u, v) in g.edges() {
        if parent.contains_key(&u) && parent.contains_key(&v) {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent.insert(a, b);
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for &v in vs {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

pub fn induced(g: &Graph, vs: &[usize]) -> Graph {
    g.induced(vs).unwrap()
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    2 * matching_number(g) == g.n()
}

pub fn factor_critical(g: &Graph) -> bool {
    let n = g.n();
    if n == 1 {
        return true;
    }
    n % 2 == 1
        && (0..n).all(|v| {
            let rest: Vec<usize> = (0..n).filter(|&w| w != v).collect();
            has_perfect_matching(&induced(g, &rest))
        })
}

/// Vertices missed by at least one maximum matching.
pub fn avoidable(g: &Graph) -> Vec<usize> {
    let max = maximum_matchings(g);
    (0..g.n())
        .filter(|&v| max.iter().any(|m| m.iter().all(|&(a, b)| a != v && b != v)))
        .collect()
}

/// All proper colourings by plain product enumeration.
pub fn proper_colourings(inst: &Instance) -> Vec<Colouring> {
    let g = inst.graph();
    let mut out = vec![Vec::new()];
    for v in 0..g.n() {
        let mut next = Vec::new();
        for c in &out {
            for &x in inst.colours(v) {
                let ok = g
                    .neighbours(v)
                    .iter()
                    .filter(|&&w| w < v)
                    .all(|&w| !inst.conflict(v, x, w, c[w]));
                if ok {
                    let mut d = c.clone();
                    d.push(x);
                    next.push(d);
                }
            }
        }
        out = next;
    }
    out
}

/// Reconfiguration graph on all proper colourings, by pairwise comparison.
pub struct ReconfGraph {
    pub states: Vec<Colouring>,
    pub adj: Vec<Vec<usize>>,
}

impl ReconfGraph {
    pub fn new(inst: &Instance) -> ReconfGraph {
        let states = proper_colourings(inst);
        let mut adj = vec![Vec::new(); states.len()];
        for i in 0..states.len() {
            for j in i + 1..states.len() {
                let diff = states[i].iter().zip(&states[j]).filter(|(x, y)| x != y).count();
                if diff == 1 {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        ReconfGraph { states, adj }
    }

    pub fn index(&self, c: &[Colour]) -> usize {
        self.states.iter().position(|s| s == c).unwrap()
    }

    /// Distances from `src`; `None` for unreachable states.
    pub fn bfs(&self, src: usize) -> Vec<Option<u64>> {
        let mut d = vec![None; self.states.len()];
        d[src] = Some(0);
        let mut q = VecDeque::from([src]);
        while let Some(x) = q.pop_front() {
            for &y in &self.adj[x] {
                if d[y].is_none() {
                    d[y] = Some(d[x].unwrap() + 1);
                    q.push_back(y);
                }
            }
        }
        d
    }

    pub fn distance(&self, a: &[Colour], b: &[Colour]) -> Option<u64> {
        self.bfs(self.index(a))[self.index(b)]
    }

    pub fn eccentricity(&self, src: usize) -> Option<u64> {
        self.bfs(src).into_iter().try_fold(0, |m, d| d.map(|d| m.max(d)))
    }

    /// Diameter and radius; `None` when disconnected.
    pub fn diameter_radius(&self) -> Option<(u64, u64)> {
        let e: Option<Vec<u64>> = (0..self.states.len()).map(|s| self.eccentricity(s)).collect();
        let e = e?;
        Some((e.iter().copied().max().unwrap_or(0), e.iter().copied().min().unwrap_or(0)))
    }
}

/// Largest set of pairwise disjoint digons of the colour-shift digraph.
pub fn digon_matching(inst: &Instance, a: &[Colour], b: &[Colour]) -> usize {
    let g = inst.graph();
    let arc = |v: usize, w: usize| inst.conflict(v, b[v], w, a[w]);
    let digons: Vec<(usize, usize)> = g.edges().iter().copied().filter(|&(u, v)| arc(u, v) && arc(v, u)).collect();
    let h = Graph::new(g.n(), digons).unwrap();
    matching_number(&h)
}
