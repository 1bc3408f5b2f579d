//! Size and timing tables over growing `n`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slim_core::archive::{self, EncodeOptions, Section};
use slim_core::query::QueryEngine;

use crate::{generate, Fail, Res};

fn median(mut v: Vec<u128>) -> u128 {
    if v.is_empty() {
        return 0;
    }
    v.sort_unstable();
    v[v.len() / 2]
}

pub fn run(kind: &str, n: usize, seed: u64, t: u32, queries: usize) -> Res<()> {
    if n < 16 {
        return Err(Fail("bench needs --n of at least 16".into()));
    }
    for size in [n >> 6, n >> 4, n >> 2, n].into_iter().filter(|&s| s >= 16) {
        let g = generate(kind, size, seed, 0)?;
        let t0 = Instant::now();
        let (base, base_report) = archive::encode(&g, &EncodeOptions::default());
        let encode_ms = t0.elapsed().as_secs_f64() * 1e3;
        let t0 = Instant::now();
        let back = archive::decode(&base)?;
        let decode_ms = t0.elapsed().as_secs_f64() * 1e3;
        if back != g {
            return Err(Fail(format!("round trip failed at n={size}")));
        }
        println!(
            "table=size kind={kind} n={} payload_bits={} bits_per_vertex={:.3} encode_ms={encode_ms:.1} decode_ms={decode_ms:.1}",
            g.n(),
            base_report.payload_bits,
            base_report.payload_bits as f64 / g.n() as f64
        );

        let (a, report) = archive::encode(&g, &EncodeOptions::with_sections(&[Section::Deg, Section::Adj, Section::Near(t)]));
        let q = QueryEngine::open(&a)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nl = g.n() as u32;
        let (mut deg, mut adj, mut near) = (Vec::new(), Vec::new(), Vec::new());
        for _ in 0..queries {
            let (u, v) = (rng.gen_range(1..=nl), rng.gen_range(1..=nl));
            let s = Instant::now();
            std::hint::black_box(q.degree(u)?);
            deg.push(s.elapsed().as_nanos());
            let s = Instant::now();
            std::hint::black_box(q.adjacent(u, v)?);
            adj.push(s.elapsed().as_nanos());
            let nb = q.out_edges(u)?;
            let w = if nb.is_empty() { v } else { nb[rng.gen_range(0..nb.len())].0 };
            let s = Instant::now();
            std::hint::black_box(q.near(u, w, t)?);
            near.push(s.elapsed().as_nanos());
        }
        let per_section: Vec<String> = report.sections.iter().map(|(s, b)| format!("section_{s}={b}")).collect();
        println!(
            "table=query kind={kind} n={} deg_median_ns={} adj_median_ns={} near_median_ns={} {}",
            g.n(),
            median(deg),
            median(adj),
            median(near),
            per_section.join(" ")
        );
    }
    Ok(())
}
