//! Exact distances in reconfiguration graphs by explicit breadth-first search.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::colour::{Colour, Colouring, Instance, Step};
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Dist {
    Finite(u64),
    Infinite,
}

impl Dist {
    pub fn finite(self) -> Option<u64> {
        match self {
            Dist::Finite(d) => Some(d),
            Dist::Infinite => None,
        }
    }
}

impl std::fmt::Display for Dist {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dist::Finite(d) => write!(f, "{d}"),
            Dist::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub value: Dist,
    pub explored: u64,
    pub witness: Option<Vec<Step>>,
}

/// Compiled view of an instance: colours as per-vertex indices and, per
/// neighbour slot, which index of the neighbour each index clashes with.
struct Space<'a> {
    inst: &'a Instance,
    nbrs: Vec<Vec<usize>>,
    clash: Vec<Vec<Vec<Option<u8>>>>,
    bits: Vec<u32>,
    shift: Vec<u32>,
    packed: bool,
}

impl<'a> Space<'a> {
    fn new(inst: &'a Instance) -> Result<Space<'a>> {
        let g = inst.graph();
        let n = g.n();
        if (0..n).any(|v| inst.list_size(v) > 255) {
            return Err(Error::TooLarge("oracle (list longer than 255)", n));
        }
        let nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbours(v).to_vec()).collect();
        let clash = (0..n)
            .map(|v| {
                nbrs[v]
                    .iter()
                    .map(|&w| {
                        inst.colours(v)
                            .iter()
                            .map(|&c| {
                                inst.partner(v, w, c)
                                    .and_then(|d| inst.colours(w).binary_search(&d).ok())
                                    .map(|j| j as u8)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let bits: Vec<u32> = (0..n)
            .map(|v| usize::BITS - (inst.list_size(v) - 1).leading_zeros())
            .collect();
        let mut shift = Vec::with_capacity(n);
        let mut total = 0u32;
        for &b in &bits {
            shift.push(total);
            total += b;
        }
        Ok(Space { inst, nbrs, clash, bits, shift, packed: total <= 64 })
    }

    fn n(&self) -> usize {
        self.nbrs.len()
    }

    fn size(&self, v: usize) -> usize {
        self.inst.list_size(v)
    }

    fn encode(&self, c: &[Colour]) -> Vec<u8> {
        c.iter()
            .enumerate()
            .map(|(v, x)| self.inst.colours(v).binary_search(x).unwrap() as u8)
            .collect()
    }

    fn ok_at(&self, s: &[u8], v: usize, j: u8) -> bool {
        self.nbrs[v]
            .iter()
            .enumerate()
            .all(|(k, &w)| self.clash[v][k][j as usize] != Some(s[w]))
    }

    fn for_moves(&self, s: &[u8], mut f: impl FnMut(usize, u8)) {
        for v in 0..self.n() {
            for j in 0..self.size(v) as u8 {
                if j != s[v] && self.ok_at(s, v, j) {
                    f(v, j);
                }
            }
        }
    }

    /// Every proper colouring, in lexicographic index order.
    fn all_proper(&self, budget: u64) -> Result<Vec<Vec<u8>>> {
        let n = self.n();
        let mut out = Vec::new();
        let mut s = vec![0u8; n];
        // Only neighbours with smaller index are checked while extending.
        fn go(sp: &Space, v: usize, s: &mut Vec<u8>, out: &mut Vec<Vec<u8>>, budget: u64) -> Result<()> {
            if v == sp.n() {
                if out.len() as u64 >= budget {
                    return Err(Error::Budget { budget, explored: out.len() as u64 });
                }
                out.push(s.clone());
                return Ok(());
            }
            for j in 0..sp.size(v) as u8 {
                let fine = sp.nbrs[v]
                    .iter()
                    .enumerate()
                    .all(|(k, &w)| w > v || sp.clash[v][k][j as usize] != Some(s[w]));
                if fine {
                    s[v] = j;
                    go(sp, v + 1, s, out, budget)?;
                }
            }
            Ok(())
        }
        go(self, 0, &mut s, &mut out, budget)?;
        Ok(out)
    }
}

trait Key: Hash + Eq + Clone {
    fn pack(sp: &Space, s: &[u8]) -> Self;
    fn unpack(&self, sp: &Space, out: &mut [u8]);
}

impl Key for u64 {
    fn pack(sp: &Space, s: &[u8]) -> u64 {
        s.iter().enumerate().fold(0, |k, (v, &x)| k | u64::from(x) << sp.shift[v])
    }

    fn unpack(&self, sp: &Space, out: &mut [u8]) {
        for (v, o) in out.iter_mut().enumerate() {
            *o = ((self >> sp.shift[v]) & ((1u64 << sp.bits[v]) - 1)) as u8;
        }
    }
}

impl Key for Vec<u8> {
    fn pack(_: &Space, s: &[u8]) -> Vec<u8> {
        s.to_vec()
    }

    fn unpack(&self, _: &Space, out: &mut [u8]) {
        out.copy_from_slice(self);
    }
}

fn step_between(sp: &Space, from: &[u8], to: &[u8]) -> Step {
    let v = (0..from.len()).find(|&v| from[v] != to[v]).expect("distinct states");
    (v, sp.inst.colours(v)[to[v] as usize])
}

fn bidirectional<K: Key>(sp: &Space, a: &[u8], b: &[u8], budget: u64) -> Result<OracleResult> {
    if a == b {
        return Ok(OracleResult { value: Dist::Finite(0), explored: 1, witness: Some(Vec::new()) });
    }
    let ka = K::pack(sp, a);
    let kb = K::pack(sp, b);
    // parent key and depth, per side
    let mut seen: [HashMap<K, (Option<K>, u64)>; 2] = [HashMap::new(), HashMap::new()];
    seen[0].insert(ka.clone(), (None, 0));
    seen[1].insert(kb.clone(), (None, 0));
    let mut frontier: [Vec<K>; 2] = [vec![ka], vec![kb]];
    let mut depth = [0u64; 2];
    let mut buf = vec![0u8; sp.n()];
    let mut nb = vec![0u8; sp.n()];
    loop {
        if frontier[0].is_empty() || frontier[1].is_empty() {
            let explored = (seen[0].len() + seen[1].len()) as u64;
            return Ok(OracleResult { value: Dist::Infinite, explored, witness: None });
        }
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        let other = 1 - side;
        let mut next = Vec::new();
        let mut best: Option<(u64, K, K)> = None;
        for k in std::mem::take(&mut frontier[side]) {
            k.unpack(sp, &mut buf);
            let mut found = Vec::new();
            sp.for_moves(&buf, |v, j| {
                nb.copy_from_slice(&buf);
                nb[v] = j;
                found.push(K::pack(sp, &nb));
            });
            for nk in found {
                if seen[side].contains_key(&nk) {
                    continue;
                }
                if let Some(&(_, d)) = seen[other].get(&nk) {
                    let total = depth[side] + 1 + d;
                    if best.as_ref().map_or(true, |b| total < b.0) {
                        best = Some((total, k.clone(), nk.clone()));
                    }
                }
                seen[side].insert(nk.clone(), (Some(k.clone()), depth[side] + 1));
                next.push(nk);
            }
            let explored = (seen[0].len() + seen[1].len()) as u64;
            if explored > budget {
                return Err(Error::Budget { budget, explored });
            }
        }
        depth[side] += 1;
        frontier[side] = next;
        if let Some((total, _, meet)) = best {
            let explored = (seen[0].len() + seen[1].len()) as u64;
            let witness = join_paths(sp, &seen, side, &meet);
            debug_assert_eq!(witness.len() as u64, total);
            return Ok(OracleResult { value: Dist::Finite(total), explored, witness: Some(witness) });
        }
    }
}

fn chain<K: Key>(map: &HashMap<K, (Option<K>, u64)>, from: &K) -> Vec<K> {
    let mut out = vec![from.clone()];
    let mut cur = from.clone();
    while let Some((Some(p), _)) = map.get(&cur) {
        out.push(p.clone());
        cur = p.clone();
    }
    out
}

fn join_paths<K: Key>(sp: &Space, seen: &[HashMap<K, (Option<K>, u64)>; 2], side: usize, meet: &K) -> Vec<Step> {
    // Path from the start colouring (side 0) through `meet` to the target (side 1).
    let _ = side;
    let mut from_a = chain(&seen[0], meet);
    from_a.reverse();
    let to_b = chain(&seen[1], meet);
    let states: Vec<&K> = from_a.iter().chain(to_b.iter().skip(1)).collect();
    let mut x = vec![0u8; sp.n()];
    let mut y = vec![0u8; sp.n()];
    states
        .windows(2)
        .map(|w| {
            w[0].unpack(sp, &mut x);
            w[1].unpack(sp, &mut y);
            step_between(sp, &x, &y)
        })
        .collect()
}

/// Reconfiguration graph materialised as compressed adjacency lists.
struct Materialised {
    states: Vec<Vec<u8>>,
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl Materialised {
    fn build(sp: &Space, budget: u64) -> Result<Materialised> {
        let states = sp.all_proper(budget)?;
        if sp.packed {
            Self::link::<u64>(sp, states)
        } else {
            Self::link::<Vec<u8>>(sp, states)
        }
    }

    fn link<K: Key>(sp: &Space, states: Vec<Vec<u8>>) -> Result<Materialised> {
        let index: HashMap<K, u32> = states.iter().enumerate().map(|(i, s)| (K::pack(sp, s), i as u32)).collect();
        let mut offsets = Vec::with_capacity(states.len() + 1);
        let mut targets = Vec::new();
        let mut nb = vec![0u8; sp.n()];
        offsets.push(0);
        for s in &states {
            sp.for_moves(s, |v, j| {
                nb.copy_from_slice(s);
                nb[v] = j;
                targets.push(index[&K::pack(sp, &nb)]);
            });
            offsets.push(targets.len() as u32);
        }
        Ok(Materialised { states, offsets, targets })
    }

    fn len(&self) -> usize {
        self.states.len()
    }

    /// Eccentricity of state `src`, or `None` when some state is unreachable.
    fn ecc(&self, src: usize, dist: &mut [u32], queue: &mut VecDeque<u32>) -> Option<u64> {
        dist.iter_mut().for_each(|d| *d = u32::MAX);
        dist[src] = 0;
        queue.clear();
        queue.push_back(src as u32);
        let mut reached = 1;
        let mut far = 0;
        while let Some(x) = queue.pop_front() {
            let dx = dist[x as usize];
            far = far.max(dx);
            for &y in &self.targets[self.offsets[x as usize] as usize..self.offsets[x as usize + 1] as usize] {
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = dx + 1;
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        (reached == self.len()).then_some(u64::from(far))
    }
}

/// Uniform lists make every colour permutation an automorphism of the
/// reconfiguration graph, so only colourings whose colours first appear in
/// increasing index order need to serve as BFS sources.
fn first_appearance_canonical(s: &[u8]) -> bool {
    let mut next = 0u8;
    let mut seen = 0u64;
    for &x in s {
        if seen >> x & 1 == 0 {
            if x != next {
                return false;
            }
            seen |= 1 << x;
            next += 1;
        }
    }
    true
}

fn uniform_lists(inst: &Instance) -> bool {
    inst.is_list() && (1..inst.n()).all(|v| inst.colours(v) == inst.colours(0)) && inst.list_size(0) <= 64
}

#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    pub budget: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        let budget = std::env::var("RECOLOR_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET);
        Oracle { budget }
    }
}

impl Oracle {
    pub fn with_budget(budget: u64) -> Oracle {
        Oracle { budget }
    }

    pub fn exact_distance(&self, inst: &Instance, a: &[Colour], b: &[Colour]) -> Result<OracleResult> {
        inst.check_proper(a)?;
        inst.check_proper(b)?;
        let sp = Space::new(inst)?;
        let (ea, eb) = (sp.encode(a), sp.encode(b));
        if sp.packed {
            bidirectional::<u64>(&sp, &ea, &eb, self.budget)
        } else {
            bidirectional::<Vec<u8>>(&sp, &ea, &eb, self.budget)
        }
    }

    pub fn eccentricity(&self, inst: &Instance, a: &[Colour]) -> Result<OracleResult> {
        inst.check_proper(a)?;
        let sp = Space::new(inst)?;
        let m = Materialised::build(&sp, self.budget)?;
        let ea = sp.encode(a);
        let src = m.states.binary_search(&ea).expect("proper colourings are enumerated");
        let mut dist = vec![0; m.len()];
        let value = m.ecc(src, &mut dist, &mut VecDeque::new()).map_or(Dist::Infinite, Dist::Finite);
        Ok(OracleResult { value, explored: m.len() as u64, witness: None })
    }

    /// Diameter and radius of the reconfiguration graph in one pass.
    pub fn diameter_radius(&self, inst: &Instance) -> Result<(OracleResult, OracleResult)> {
        let sp = Space::new(inst)?;
        let m = Materialised::build(&sp, self.budget)?;
        let explored = m.len() as u64;
        let wrap = |value| OracleResult { value, explored, witness: None };
        if m.len() <= 1 {
            return Ok((wrap(Dist::Finite(0)), wrap(Dist::Finite(0))));
        }
        let symmetric = uniform_lists(inst);
        let mut dist = vec![0; m.len()];
        let mut queue = VecDeque::new();
        let mut diam = 0;
        let mut rad = u64::MAX;
        for src in 0..m.len() {
            if symmetric && !first_appearance_canonical(&m.states[src]) {
                continue;
            }
            match m.ecc(src, &mut dist, &mut queue) {
                Some(e) => {
                    diam = diam.max(e);
                    rad = rad.min(e);
                }
                // Disconnected: every eccentricity is infinite.
                None => return Ok((wrap(Dist::Infinite), wrap(Dist::Infinite))),
            }
        }
        Ok((wrap(Dist::Finite(diam)), wrap(Dist::Finite(rad))))
    }

    pub fn diameter(&self, inst: &Instance) -> Result<OracleResult> {
        Ok(self.diameter_radius(inst)?.0)
    }

    pub fn radius(&self, inst: &Instance) -> Result<OracleResult> {
        Ok(self.diameter_radius(inst)?.1)
    }

    pub fn is_connected_reconfig(&self, inst: &Instance) -> Result<bool> {
        let sp = Space::new(inst)?;
        let m = Materialised::build(&sp, self.budget)?;
        if m.len() <= 1 {
            return Ok(true);
        }
        Ok(m.ecc(0, &mut vec![0; m.len()], &mut VecDeque::new()).is_some())
    }

    /// Number of proper colourings.
    pub fn count_proper(&self, inst: &Instance) -> Result<u64> {
        let sp = Space::new(inst)?;
        Ok(sp.all_proper(self.budget)?.len() as u64)
    }

    /// Every proper colouring, in lexicographic order of list positions.
    pub fn proper_colourings(&self, inst: &Instance) -> Result<Vec<Colouring>> {
        let sp = Space::new(inst)?;
        Ok(sp
            .all_proper(self.budget)?
            .into_iter()
            .map(|s| s.iter().enumerate().map(|(v, &j)| inst.colours(v)[j as usize]).collect())
            .collect())
    }
}

pub fn exact_distance(inst: &Instance, a: &[Colour], b: &[Colour]) -> Result<OracleResult> {
    Oracle::default().exact_distance(inst, a, b)
}

pub fn eccentricity(inst: &Instance, a: &[Colour]) -> Result<OracleResult> {
    Oracle::default().eccentricity(inst, a)
}

pub fn diameter(inst: &Instance) -> Result<OracleResult> {
    Oracle::default().diameter(inst)
}

pub fn radius(inst: &Instance) -> Result<OracleResult> {
    Oracle::default().radius(inst)
}

pub fn is_connected_reconfig(inst: &Instance) -> Result<bool> {
    Oracle::default().is_connected_reconfig(inst)
}

/// No single-vertex recolouring leaves the colouring proper.
pub fn is_frozen(inst: &Instance, a: &[Colour]) -> Result<bool> {
    inst.check_proper(a)?;
    let g = inst.graph();
    Ok((0..inst.n()).all(|v| {
        inst.colours(v)
            .iter()
            .all(|&c| c == a[v] || g.neighbours(v).iter().any(|&w| inst.conflict(v, c, w, a[w])))
    }))
}
