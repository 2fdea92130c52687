//! Isomorphism-free enumeration of small graphs and graph6 I/O.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_ENUM_N: usize = 8;

/// Upper-triangle adjacency bits in graph6 order: bit index of pair (i, j), i < j.
fn pair_bit(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

fn code_of(n: usize, adj: &[u32], perm: &[usize]) -> u64 {
    // perm[new] = old
    let mut code = 0u64;
    for j in 1..n {
        for i in 0..j {
            if adj[perm[i]] >> perm[j] & 1 == 1 {
                code |= 1 << pair_bit(i, j);
            }
        }
    }
    code
}

/// Colour refinement: an isomorphism-invariant ordered partition of the vertices.
fn refined_cells(n: usize, adj: &[u32]) -> Vec<Vec<usize>> {
    let mut colour: Vec<usize> = (0..n).map(|v| adj[v].count_ones() as usize).collect();
    loop {
        let mut sig: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut ns: Vec<usize> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| colour[w]).collect();
                ns.sort_unstable();
                (colour[v], ns)
            })
            .collect();
        let mut distinct = sig.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sig
            .iter_mut()
            .map(|s| distinct.binary_search(s).unwrap())
            .collect();
        let stable = distinct.len() == {
            let mut c = colour.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        colour = next;
        if stable {
            break;
        }
    }
    let k = colour.iter().max().map_or(0, |m| m + 1);
    (0..k)
        .map(|c| (0..n).filter(|&v| colour[v] == c).collect::<Vec<_>>())
        .filter(|c: &Vec<usize>| !c.is_empty())
        .collect()
}

fn permute_cells(cells: &[Vec<usize>], idx: usize, perm: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if idx == cells.len() {
        f(perm);
        return;
    }
    let mut cell = cells[idx].clone();
    heap_permutations(&mut cell, &mut |p| {
        let start = perm.len();
        perm.extend_from_slice(p);
        permute_cells(cells, idx + 1, perm, f);
        perm.truncate(start);
    });
}

fn heap_permutations(items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    fn go(k: usize, items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            f(items);
            return;
        }
        for i in 0..k - 1 {
            go(k - 1, items, f);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
        go(k - 1, items, f);
    }
    let k = items.len();
    go(k, items, f);
}

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbours(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

/// Canonical code: the least adjacency code over all relabellings that respect
/// the refined partition. Two graphs on the same n are isomorphic iff codes agree.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 11, "canonical_code supports n <= 11");
    let adj = masks(g);
    let cells = refined_cells(n, &adj);
    let mut best = u64::MAX;
    permute_cells(&cells, 0, &mut Vec::with_capacity(n), &mut |p| {
        best = best.min(code_of(n, &adj, p));
    });
    best
}

fn from_code(n: usize, code: u64) -> Graph {
    let mut e = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if code >> pair_bit(i, j) & 1 == 1 {
                e.push((i, j));
            }
        }
    }
    Graph::new(n, e).expect("codes describe simple graphs")
}

/// One representative per isomorphism class on `n` vertices, in a fixed order.
pub fn enumerate_graphs(n: usize, connected_only: bool) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_ENUM_N {
        return Err(Error::BadParam(format!("enumeration supports 1 <= n <= {MAX_ENUM_N}, got {n}")));
    }
    let mut level: Vec<u64> = vec![0];
    for k in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for &code in &level {
            let base = from_code(k - 1, code);
            for sub in 0u32..(1 << (k - 1)) {
                let e = base
                    .edges()
                    .iter()
                    .copied()
                    .chain((0..k - 1).filter(|&i| sub >> i & 1 == 1).map(|i| (i, k - 1)));
                let g = Graph::new(k, e).expect("extension is simple");
                let c = canonical_code(&g);
                if seen.insert(c) {
                    next.push(c);
                }
            }
        }
        next.sort_unstable();
        level = next;
    }
    Ok(level
        .into_iter()
        .map(|c| from_code(n, c))
        .filter(|g| !connected_only || g.is_connected())
        .collect())
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift & 63) as u8 + 63) as char);
        }
    }
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                v |= 1 << (5 - k);
            }
        }
        out.push((v + 63) as char);
    }
    out
}

pub fn parse_graph6(line: &str) -> Result<Graph> {
    let s = line.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes: Vec<u8> = s.bytes().collect();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 line".into()));
    }
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("invalid graph6 character in {s:?}")));
    }
    let (n, rest) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 4 && bytes[1] != 126 {
        let n = bytes[1..4].iter().fold(0usize, |a, &b| a << 6 | (b - 63) as usize);
        (n, &bytes[4..])
    } else {
        return Err(Error::Parse("graph6 sizes above 258047 are not supported".into()));
    };
    let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if rest.len() != need {
        return Err(Error::Parse(format!("graph6 body has {} bytes, expected {need}", rest.len())));
    }
    let mut e = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                e.push((i, j));
            }
            k += 1;
        }
    }
    Graph::new(n, e)
}
