//! Seeded generators for the graph families used in tests and benchmarks.
//! All outputs are undirected (symmetric).

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex};

/// The generator families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Tree,
    Grid,
    MaximalPlanar,
    Degenerate(u32),
}

impl Kind {
    pub fn parse(s: &str) -> Option<Kind> {
        match s {
            "tree" => Some(Kind::Tree),
            "grid" => Some(Kind::Grid),
            "maximal-planar" | "planar" => Some(Kind::MaximalPlanar),
            _ => s.strip_prefix("degenerate-").and_then(|k| k.parse().ok()).map(Kind::Degenerate),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Kind::Tree => "tree".into(),
            Kind::Grid => "grid".into(),
            Kind::MaximalPlanar => "maximal-planar".into(),
            Kind::Degenerate(k) => format!("degenerate-{k}"),
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn undirected(n: usize, edges: &[(Vertex, Vertex)]) -> Graph {
    Graph::build(n, edges, None, true).expect("generators emit simple graphs")
}

/// Generates `n` vertices of the given family.
pub fn generate(kind: Kind, n: usize, seed: u64) -> Graph {
    match kind {
        Kind::Tree => random_tree(n, seed),
        Kind::Grid => {
            let k = crate::bits::floor_log2(n.max(1) as u64);
            let r = 1usize << (k / 2);
            grid(r, n.div_ceil(r))
        }
        Kind::MaximalPlanar => maximal_planar(n, seed),
        Kind::Degenerate(k) => degenerate(n, k as usize, seed),
    }
}

/// Random labeled tree: vertex `i` attaches to a uniform earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let edges: Vec<_> = (1..n).map(|i| (r.gen_range(0..i) as Vertex, i as Vertex)).collect();
    undirected(n, &edges)
}

/// `rows × cols` grid, vertex `(i, j)` is `i·cols + j`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |i: usize, j: usize| (i * cols + j) as Vertex;
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            if j + 1 < cols {
                edges.push((id(i, j), id(i, j + 1)));
            }
            if i + 1 < rows {
                edges.push((id(i, j), id(i + 1, j)));
            }
        }
    }
    undirected(rows * cols, &edges)
}

/// Random stacked triangulation: each new vertex goes into a uniform face
/// and joins its three corners. For `n ≥ 3` the result has `3n − 6` edges.
pub fn maximal_planar(n: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for i in 1..n.min(3) {
        for j in 0..i {
            edges.push((j as Vertex, i as Vertex));
        }
    }
    if n >= 3 {
        // the two faces of the initial triangle
        let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 1, 2]];
        for v in 3..n as Vertex {
            let f = r.gen_range(0..faces.len());
            let [a, b, c] = faces[f];
            edges.extend([(a, v), (b, v), (c, v)]);
            faces[f] = [a, b, v];
            faces.push([b, c, v]);
            faces.push([a, c, v]);
        }
    }
    undirected(n, &edges)
}

/// Vertex `i` joins `min(i, k)` distinct uniform earlier vertices.
pub fn degenerate(n: usize, k: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for i in 1..n {
        for j in sample(&mut r, i, k.min(i)) {
            edges.push((j as Vertex, i as Vertex));
        }
    }
    undirected(n, &edges)
}

/// Uniform random colors from `0..palette`.
pub fn random_colors(n: usize, palette: u32, seed: u64) -> Vec<u32> {
    let mut r = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    (0..n).map(|_| r.gen_range(0..palette.max(1))).collect()
}

/// Random directed graph: each edge of `g` kept in one or both directions.
pub fn random_orientation(g: &Graph, seed: u64) -> Graph {
    let mut r = rng(seed ^ 0x5851_f42d_4c95_7f2d);
    let mut arcs = Vec::new();
    for (u, v) in g.arcs().filter(|&(u, v)| u < v) {
        match r.gen_range(0..3) {
            0 => arcs.push((u, v)),
            1 => arcs.push((v, u)),
            _ => arcs.extend([(u, v), (v, u)]),
        }
    }
    Graph::build(g.n(), &arcs, g.colors().map(<[u32]>::to_vec), false).expect("subset of a simple graph")
}
