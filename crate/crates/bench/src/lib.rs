//! Shared fixtures for the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slim_core::archive::{encode, Archive, EncodeOptions, Section};
use slim_core::corpus::{self, Kind};
use slim_core::graph::Graph;

/// The families measured, by name.
pub const KINDS: [(&str, Kind); 3] = [("tree", Kind::Tree), ("grid", Kind::Grid), ("planar", Kind::MaximalPlanar)];

pub fn graph(kind: Kind, log_n: u32) -> Graph {
    corpus::generate(kind, 1 << log_n, 0xbe4c)
}

/// An archive with degree, adjacency and near sections.
pub fn archive(g: &Graph, t: u32) -> Archive {
    encode(g, &EncodeOptions::with_sections(&[Section::Deg, Section::Adj, Section::Near(t)])).0
}

/// Random label pairs for query loops.
pub fn label_pairs(n: usize, count: usize, seed: u64) -> Vec<(u32, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (rng.gen_range(1..=n as u32), rng.gen_range(1..=n as u32))).collect()
}
