//! Canonical forms of tiny colored graphs by exhaustive search over vertex
//! orders.
//!
//! The serialization of a `k`-vertex graph under a vertex order is: `k` in
//! four bits, the adjacency bits (upper triangle row by row for symmetric
//! graphs, every off-diagonal entry otherwise), then each vertex's color in
//! a fixed width. The canonical form is the lexicographically least
//! serialization over all `k!` orders.

use std::collections::HashMap;

use crate::bits::{BitSlice, BitString};
use crate::error::FormatError;
use crate::graph::{Graph, Vertex};

/// Largest graph the brute-force search accepts.
pub const MAX_CANON_VERTICES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonForm {
    pub bits: BitString,
    /// `order[j]` is the vertex placed at canonical position `j`.
    pub order: Vec<Vertex>,
}

/// Layout flags shared by every canonical string of one archive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CanonLayout {
    pub symmetric: bool,
    pub color_width: usize,
}

impl CanonLayout {
    pub fn len(&self, k: usize) -> usize {
        let adj = if self.symmetric { k * k.saturating_sub(1) / 2 } else { k * k.saturating_sub(1) };
        4 + adj + k * self.color_width
    }
}

fn serialize_into(out: &mut Vec<u8>, h: &Graph, order: &[Vertex], layout: CanonLayout, adj: &[Vec<bool>]) {
    out.clear();
    let k = order.len();
    for i in (0..4).rev() {
        out.push(((k >> i) & 1) as u8);
    }
    for a in 0..k {
        let from = if layout.symmetric { a + 1 } else { 0 };
        for b in from..k {
            if a != b {
                out.push(adj[order[a] as usize][order[b] as usize] as u8);
            }
        }
    }
    if layout.color_width > 0 {
        for &v in order {
            let c = h.color(v).unwrap_or(0);
            for i in (0..layout.color_width).rev() {
                out.push(((c >> i) & 1) as u8);
            }
        }
    }
}

fn next_permutation(p: &mut [Vertex]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Canonical form of `h`.
pub fn canonicalize(h: &Graph, layout: CanonLayout) -> Result<CanonForm, FormatError> {
    let k = h.n();
    if k > MAX_CANON_VERTICES {
        return Err(FormatError::Inconsistent("graph too large for canonical search"));
    }
    let mut adj = vec![vec![false; k]; k];
    for (a, b) in h.arcs() {
        adj[a as usize][b as usize] = true;
    }
    let mut order: Vec<Vertex> = (0..k as Vertex).collect();
    let mut best_order = order.clone();
    let mut best = Vec::new();
    serialize_into(&mut best, h, &order, layout, &adj);
    let mut cur = Vec::with_capacity(best.len());
    while next_permutation(&mut order) {
        serialize_into(&mut cur, h, &order, layout, &adj);
        if cur < best {
            std::mem::swap(&mut cur, &mut best);
            best_order.clone_from(&order);
        }
    }
    Ok(CanonForm { bits: BitString::from_bools(best.iter().map(|&b| b == 1)), order: best_order })
}

/// Memoizes canonical forms by the graph's identity-order serialization.
#[derive(Default)]
pub struct Canonizer {
    cache: HashMap<(CanonLayout, Vec<u8>), CanonForm>,
}

impl Canonizer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn canonicalize(&mut self, h: &Graph, layout: CanonLayout) -> Result<CanonForm, FormatError> {
        let k = h.n();
        let mut adj = vec![vec![false; k]; k];
        for (a, b) in h.arcs() {
            adj[a as usize][b as usize] = true;
        }
        let id: Vec<Vertex> = (0..k as Vertex).collect();
        let mut raw = Vec::new();
        serialize_into(&mut raw, h, &id, layout, &adj);
        if let Some(f) = self.cache.get(&(layout, raw.clone())) {
            return Ok(f.clone());
        }
        let f = canonicalize(h, layout)?;
        self.cache.insert((layout, raw), f.clone());
        Ok(f)
    }

    pub fn distinct_inputs(&self) -> usize {
        self.cache.len()
    }
}

/// Rebuilds the graph a canonical string describes, vertex `j` being the
/// one at canonical position `j`.
pub fn graph_from_canonical(bits: BitSlice<'_>, layout: CanonLayout) -> Result<Graph, FormatError> {
    let mut r = bits.reader();
    let k = r.read(4)? as usize;
    if bits.len() != layout.len(k) {
        return Err(FormatError::Inconsistent("canonical string length"));
    }
    let mut lists: Vec<Vec<Vertex>> = vec![Vec::new(); k];
    for a in 0..k {
        let from = if layout.symmetric { a + 1 } else { 0 };
        for b in from..k {
            if a != b && r.read_bit()? {
                lists[a].push(b as Vertex);
                if layout.symmetric {
                    lists[b].push(a as Vertex);
                }
            }
        }
    }
    let colors = if layout.color_width > 0 {
        Some((0..k).map(|_| r.read(layout.color_width).map(|c| c as u32)).collect::<Result<Vec<_>, _>>()?)
    } else {
        None
    };
    for l in &mut lists {
        l.sort_unstable();
    }
    Ok(Graph::from_lists(lists, colors))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SYM: CanonLayout = CanonLayout { symmetric: true, color_width: 0 };

    fn und(n: usize, e: &[(Vertex, Vertex)]) -> Graph {
        Graph::build(n, e, None, true).unwrap()
    }

    /// Isomorphism by trying every bijection.
    fn isomorphic(a: &Graph, b: &Graph) -> bool {
        if a.n() != b.n() || a.arc_count() != b.arc_count() {
            return false;
        }
        let mut p: Vec<Vertex> = (0..a.n() as Vertex).collect();
        loop {
            if a.permute(&p) == *b {
                return true;
            }
            if !next_permutation(&mut p) {
                return false;
            }
        }
    }

    #[test]
    fn relabeled_paths_agree() {
        let a = und(3, &[(0, 1), (1, 2)]);
        let b = und(3, &[(0, 2), (2, 1)]);
        assert_eq!(canonicalize(&a, SYM).unwrap().bits, canonicalize(&b, SYM).unwrap().bits);
        let tri = und(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_ne!(canonicalize(&a, SYM).unwrap().bits, canonicalize(&tri, SYM).unwrap().bits);
    }

    #[test]
    fn order_realizes_the_canonical_string() {
        let g = und(4, &[(0, 3), (3, 1), (1, 2)]);
        let f = canonicalize(&g, SYM).unwrap();
        let back = graph_from_canonical(f.bits.as_slice(), SYM).unwrap();
        let mut perm = vec![0; 4];
        for (pos, &v) in f.order.iter().enumerate() {
            perm[v as usize] = pos as Vertex;
        }
        assert_eq!(g.permute(&perm), back);
    }

    #[test]
    fn exhaustive_small_classes_match_isomorphism() {
        for k in 1..=4usize {
            let pairs: Vec<(Vertex, Vertex)> =
                (0..k as Vertex).flat_map(|a| (a + 1..k as Vertex).map(move |b| (a, b))).collect();
            let graphs: Vec<Graph> = (0u32..1 << pairs.len())
                .map(|mask| {
                    let e: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
                    und(k, &e)
                })
                .collect();
            let forms: Vec<BitString> = graphs.iter().map(|g| canonicalize(g, SYM).unwrap().bits).collect();
            for i in 0..graphs.len() {
                for j in 0..graphs.len() {
                    assert_eq!(forms[i] == forms[j], isomorphic(&graphs[i], &graphs[j]), "k={k} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn colors_and_directions_matter() {
        let lay = CanonLayout { symmetric: false, color_width: 2 };
        let a = Graph::build(2, &[(0, 1)], Some(vec![1, 2]), false).unwrap();
        let b = Graph::build(2, &[(1, 0)], Some(vec![2, 1]), false).unwrap();
        let c = Graph::build(2, &[(0, 1)], Some(vec![2, 1]), false).unwrap();
        assert_eq!(canonicalize(&a, lay).unwrap().bits, canonicalize(&b, lay).unwrap().bits);
        assert_ne!(canonicalize(&a, lay).unwrap().bits, canonicalize(&c, lay).unwrap().bits);
        let f = canonicalize(&c, lay).unwrap();
        assert_eq!(graph_from_canonical(f.bits.as_slice(), lay).unwrap().arc_count(), 1);
    }

    #[test]
    fn too_large_is_rejected() {
        assert!(canonicalize(&Graph::empty(MAX_CANON_VERTICES + 1), SYM).is_err());
    }
}
