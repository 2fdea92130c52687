//! Colourings, list assignments, correspondence covers and the colour-shift digraph.
//!
//! In list mode a colour is any non-negative integer drawn from the vertex's
//! list. In correspondence mode the colours of `v` are the indices
//! `1..=f(v)`, standing for `(v,1)..(v,f(v))`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph::{self, Graph};

pub type Colour = u32;
pub type Colouring = Vec<Colour>;
pub type Step = (usize, Colour);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    sizes: Vec<u32>,
    /// Keyed by `(u, v)` with `u < v`; pairs `(i, j)` mean `(u,i)` is matched to `(v,j)`.
    matchings: BTreeMap<(usize, usize), Vec<(Colour, Colour)>>,
    /// Directed lookup: `table[(v, w)][i]` is the colour of `w` matched to `(v, i)`, or 0.
    table: HashMap<(usize, usize), Vec<Colour>>,
}

impl Cover {
    pub fn new(
        g: &Graph,
        sizes: Vec<u32>,
        matchings: impl IntoIterator<Item = ((usize, usize), Vec<(Colour, Colour)>)>,
    ) -> Result<Cover> {
        if sizes.len() != g.n() {
            return Err(Error::BadInstance(format!("{} list sizes for {} vertices", sizes.len(), g.n())));
        }
        if let Some(v) = sizes.iter().position(|&f| f == 0) {
            return Err(Error::BadInstance(format!("vertex {v} has an empty cover list")));
        }
        let mut norm: BTreeMap<(usize, usize), Vec<(Colour, Colour)>> = BTreeMap::new();
        for ((u, v), pairs) in matchings {
            if !g.has_edge(u, v) {
                return Err(Error::BadInstance(format!("matching on non-edge ({u}, {v})")));
            }
            let (key, pairs): ((usize, usize), Vec<(Colour, Colour)>) = if u < v {
                ((u, v), pairs)
            } else {
                ((v, u), pairs.into_iter().map(|(i, j)| (j, i)).collect())
            };
            if norm.contains_key(&key) {
                return Err(Error::BadInstance(format!("duplicate matching for edge {key:?}")));
            }
            norm.insert(key, pairs);
        }
        for &(u, v) in g.edges() {
            norm.entry((u, v)).or_default();
        }
        let mut table = HashMap::new();
        for (&(u, v), pairs) in norm.iter_mut() {
            pairs.sort_unstable();
            let mut fwd = vec![0; sizes[u] as usize + 1];
            let mut bwd = vec![0; sizes[v] as usize + 1];
            for &(i, j) in pairs.iter() {
                if i == 0 || j == 0 || i > sizes[u] || j > sizes[v] {
                    return Err(Error::BadInstance(format!("pair ({i}, {j}) out of range on edge ({u}, {v})")));
                }
                if fwd[i as usize] != 0 || bwd[j as usize] != 0 {
                    return Err(Error::BadInstance(format!("matching on edge ({u}, {v}) is not injective")));
                }
                fwd[i as usize] = j;
                bwd[j as usize] = i;
            }
            table.insert((u, v), fwd);
            table.insert((v, u), bwd);
        }
        Ok(Cover { sizes, matchings: norm, table })
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn matchings(&self) -> &BTreeMap<(usize, usize), Vec<(Colour, Colour)>> {
        &self.matchings
    }

    fn partner(&self, v: usize, w: usize, c: Colour) -> Option<Colour> {
        let t = self.table.get(&(v, w))?;
        t.get(c as usize).copied().filter(|&d| d != 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Palette {
    Lists(Vec<Vec<Colour>>),
    Cover(Cover),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    palette: Palette,
    choices: Vec<Vec<Colour>>,
}

impl Instance {
    pub fn with_lists(graph: Graph, lists: Vec<Vec<Colour>>) -> Result<Instance> {
        if lists.len() != graph.n() {
            return Err(Error::BadInstance(format!("{} lists for {} vertices", lists.len(), graph.n())));
        }
        let mut lists = lists;
        for (v, l) in lists.iter_mut().enumerate() {
            l.sort_unstable();
            l.dedup();
            if l.is_empty() {
                return Err(Error::BadInstance(format!("vertex {v} has an empty list")));
            }
        }
        Ok(Instance { graph, choices: lists.clone(), palette: Palette::Lists(lists) })
    }

    /// Every vertex gets the colour set `1..=k`.
    pub fn uniform(graph: Graph, k: u32) -> Result<Instance> {
        let n = graph.n();
        Instance::with_lists(graph, vec![(1..=k).collect(); n])
    }

    pub fn with_cover(graph: Graph, cover: Cover) -> Instance {
        let choices = cover.sizes.iter().map(|&f| (1..=f).collect()).collect();
        Instance { graph, palette: Palette::Cover(cover), choices }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn is_list(&self) -> bool {
        matches!(self.palette, Palette::Lists(_))
    }

    /// The colours available at `v`, ascending.
    pub fn colours(&self, v: usize) -> &[Colour] {
        &self.choices[v]
    }

    pub fn list_size(&self, v: usize) -> usize {
        self.choices[v].len()
    }

    pub fn allows(&self, v: usize, c: Colour) -> bool {
        self.choices[v].binary_search(&c).is_ok()
    }

    /// The colour of neighbour `w` that clashes with colour `c` at `v`, if any.
    pub fn partner(&self, v: usize, w: usize, c: Colour) -> Option<Colour> {
        match &self.palette {
            Palette::Lists(_) => Some(c),
            Palette::Cover(h) => h.partner(v, w, c),
        }
    }

    pub fn conflict(&self, v: usize, cv: Colour, w: usize, cw: Colour) -> bool {
        self.partner(v, w, cv) == Some(cw)
    }

    /// Does every vertex have at least `need(deg(v))` colours?
    pub fn has_slack(&self, need: impl Fn(usize) -> usize) -> bool {
        (0..self.n()).all(|v| self.list_size(v) >= need(self.graph.degree(v)))
    }

    pub fn check_colouring(&self, c: &[Colour]) -> Result<()> {
        if c.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), got: c.len() });
        }
        for (v, &x) in c.iter().enumerate() {
            if !self.allows(v, x) {
                return Err(Error::ColourOutOfRange { vertex: v, colour: x });
            }
        }
        Ok(())
    }

    /// Errors with the first conflicting edge if `c` is improper.
    pub fn check_proper(&self, c: &[Colour]) -> Result<()> {
        self.check_colouring(c)?;
        for &(u, v) in self.graph.edges() {
            if self.conflict(u, c[u], v, c[v]) {
                return Err(Error::Improper(u, v));
            }
        }
        Ok(())
    }
}

pub fn is_proper(inst: &Instance, c: &[Colour]) -> Result<bool> {
    match inst.check_proper(c) {
        Ok(()) => Ok(true),
        Err(Error::Improper(..)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// The correspondence cover equivalent to a list assignment; list colour
/// `L(v)[i-1]` becomes index `i`.
pub fn list_to_cover(inst: &Instance) -> Result<Instance> {
    let Palette::Lists(lists) = &inst.palette else {
        return Err(Error::WrongMode("list_to_cover needs a list instance"));
    };
    let g = &inst.graph;
    let sizes = lists.iter().map(|l| l.len() as u32).collect();
    let matchings = g.edges().iter().map(|&(u, v)| {
        let pairs = lists[u]
            .iter()
            .enumerate()
            .filter_map(|(i, c)| lists[v].binary_search(c).ok().map(|j| (i as Colour + 1, j as Colour + 1)))
            .collect();
        ((u, v), pairs)
    });
    let cover = Cover::new(g, sizes, matchings)?;
    Ok(Instance::with_cover(g.clone(), cover))
}

/// Maps a list colouring to the matching cover colouring produced by `list_to_cover`.
pub fn list_colouring_to_cover(inst: &Instance, c: &[Colour]) -> Result<Colouring> {
    inst.check_colouring(c)?;
    Ok(c.iter()
        .enumerate()
        .map(|(v, x)| inst.colours(v).binary_search(x).unwrap() as Colour + 1)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColourShiftDigraph {
    pub n: usize,
    pub arcs: BTreeSet<(usize, usize)>,
}

impl ColourShiftDigraph {
    pub fn has_arc(&self, v: usize, w: usize) -> bool {
        self.arcs.contains(&(v, w))
    }

    /// Edges `{v, w}` with arcs both ways, `v < w`.
    pub fn digons(&self) -> Vec<(usize, usize)> {
        self.arcs.iter().copied().filter(|&(v, w)| v < w && self.has_arc(w, v)).collect()
    }
}

pub(crate) fn arc(inst: &Instance, a: &[Colour], b: &[Colour], v: usize, w: usize) -> bool {
    inst.conflict(v, b[v], w, a[w])
}

pub fn colour_shift_digraph(inst: &Instance, a: &[Colour], b: &[Colour]) -> Result<ColourShiftDigraph> {
    inst.check_proper(a)?;
    inst.check_proper(b)?;
    let mut arcs = BTreeSet::new();
    for &(u, v) in inst.graph.edges() {
        if arc(inst, a, b, u, v) {
            arcs.insert((u, v));
        }
        if arc(inst, a, b, v, u) {
            arcs.insert((v, u));
        }
    }
    Ok(ColourShiftDigraph { n: inst.n(), arcs })
}

/// Matching number of the graph formed by the digons of `d`.
pub fn digraph_mu(d: &ColourShiftDigraph) -> usize {
    let h = Graph::new(d.n.max(1), d.digons()).expect("digons form a simple graph");
    graph::matching_number(&h)
}

pub fn hamming(a: &[Colour], b: &[Colour]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

pub fn reconfig_lower_bound(inst: &Instance, a: &[Colour], b: &[Colour]) -> Result<usize> {
    let d = colour_shift_digraph(inst, a, b)?;
    Ok(digraph_mu(&d) + hamming(a, b))
}

/// Colours of `L(v)` clashing with no neighbour's current colour and not in `forbidden`, ascending.
pub fn available_colours(inst: &Instance, v: usize, current: &[Colour], forbidden: &[Colour]) -> Vec<Colour> {
    inst.colours(v)
        .iter()
        .copied()
        .filter(|c| !forbidden.contains(c))
        .filter(|&c| inst.graph.neighbours(v).iter().all(|&w| !inst.conflict(v, c, w, current[w])))
        .collect()
}
