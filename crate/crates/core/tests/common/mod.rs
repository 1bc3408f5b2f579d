//! Oracles and corpus helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slim_core::corpus::{self, Kind};
use slim_core::graph::{Graph, Vertex};

pub const KINDS: [Kind; 4] = [Kind::Tree, Kind::Grid, Kind::MaximalPlanar, Kind::Degenerate(3)];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Undirected distances from `s`, `u32::MAX` beyond `limit`.
pub fn bfs(und: &Graph, s: Vertex, limit: u32) -> Vec<u32> {
    let mut d = vec![u32::MAX; und.n()];
    d[s as usize] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(x) = q.pop_front() {
        if d[x as usize] == limit {
            continue;
        }
        for &y in und.out(x) {
            if d[y as usize] == u32::MAX {
                d[y as usize] = d[x as usize] + 1;
                q.push_back(y);
            }
        }
    }
    d
}

/// Distance up to `limit` without touching the whole graph.
pub fn bounded_distance(und: &Graph, s: Vertex, t: Vertex, limit: u32) -> Option<u32> {
    slim_core::graph::bounded_bfs(und, s, limit).get(&t).copied()
}

/// A corpus member, optionally colored and oriented.
pub fn variant(kind: Kind, n: usize, seed: u64, colored: bool, directed: bool) -> Graph {
    let mut g = corpus::generate(kind, n, seed);
    if directed {
        g = corpus::random_orientation(&g, seed);
    }
    if colored {
        let n = g.n();
        g = g.with_colors(Some(corpus::random_colors(n, 1 + (seed % 9) as u32, seed)));
    }
    g
}

/// Ends a random walk of `1..=max_steps` steps from `u`.
pub fn walk_from(und: &Graph, u: Vertex, max_steps: u32, r: &mut impl Rng) -> Vertex {
    let mut x = u;
    for _ in 0..r.gen_range(1..=max_steps) {
        let nb = und.out(x);
        if nb.is_empty() {
            break;
        }
        x = nb[r.gen_range(0..nb.len())];
    }
    x
}

/// Expected `(degree, out, in)` and direction bits, straight from the lists.
pub fn dir_bits(g: &Graph, u: Vertex, v: Vertex) -> u8 {
    (u8::from(g.has_arc(u, v)) << 1) | u8::from(g.has_arc(v, u))
}
