//! Validator reports. Each check prints `check=<name> result=pass|fail`,
//! with a `detail=` field on failure.

use std::collections::VecDeque;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slim_core::archive::{self, EncodeOptions, Section};
use slim_core::director::{director_report, t_director};
use slim_core::graph::{Graph, Orientation, Vertex};
use slim_core::partition::{
    balanced_partition, check_balanced, check_h_partition, h_partition, measure_star, star_partition, StarParams,
};
use slim_core::query::{degree_table, QueryEngine};

use crate::Res;

/// Vertices to probe from: all of them up to this size, a sample above.
const FULL_UP_TO: usize = 2000;
const SAMPLE: usize = 500;

struct Checks {
    ok: bool,
}

impl Checks {
    fn report(&mut self, name: &str, r: Result<(), String>) {
        match r {
            Ok(()) => println!("check={name} result=pass"),
            Err(e) => {
                self.ok = false;
                println!("check={name} result=fail detail={}", e.replace(char::is_whitespace, "_"));
            }
        }
    }
}

fn sources(n: usize, seed: u64) -> Vec<Vertex> {
    if n <= FULL_UP_TO {
        return (0..n as Vertex).collect();
    }
    let mut v: Vec<Vertex> = sample(&mut ChaCha8Rng::seed_from_u64(seed), n, SAMPLE).into_iter().map(|x| x as Vertex).collect();
    v.sort_unstable();
    v
}

fn bfs(und: &Graph, s: Vertex, limit: u32) -> Vec<u32> {
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

fn star_checks(c: &mut Checks, g: &Graph) {
    match star_partition(g) {
        Err(e) => c.report("partition_star", Err(e.to_string())),
        Ok(sp) => {
            let r = measure_star(g, &sp);
            c.report("partition_star_cover", if r.covers { Ok(()) } else { Err("vertices missing or repeated".into()) });
            c.report("partition_star_s1", if r.s1 { Ok(()) } else { Err("two parts are adjacent".into()) });
            c.report(
                "partition_star_s2",
                if r.s2() { Ok(()) } else { Err(format!("closed neighborhood {} over cap {:.0}", r.s2_max, r.s2_cap)) },
            );
        }
    }
}

fn partition_checks(c: &mut Checks, g: &Graph) {
    let und = g.undirected();
    c.report(
        "partition_balanced",
        balanced_partition(&und).map_err(|e| e.to_string()).and_then(|p| check_balanced(&und, &p)),
    );
    let m = StarParams::for_n(g.n()).quotient_size;
    c.report("partition_h", check_h_partition(g, m, &h_partition(g, m)));
    star_checks(c, g);
}

fn director_checks(c: &mut Checks, g: &Graph, d: &Orientation, t: u32, seed: u64) {
    let src = sources(g.n(), seed);
    let r = director_report(g, d, t, Some(&src));
    c.report("director_orientation", if r.orientation_ok { Ok(()) } else { Err("an edge has no orientation".into()) });
    let missing: usize = r.by_distance.iter().map(|&(a, b)| a - b).sum();
    c.report("director_directive", if missing == 0 { Ok(()) } else { Err(format!("{missing} pairs not directive")) });
}

pub fn verify(g: &Graph, t: u32, seed: u64) -> Res<bool> {
    let mut c = Checks { ok: true };
    let opts = EncodeOptions::with_sections(&[Section::Deg, Section::Adj, Section::Near(t)]);
    let (a, _) = archive::encode(g, &opts);
    let bytes = a.to_bytes();
    let back = archive::Archive::from_bytes(&bytes)?;
    c.report(
        "round_trip",
        match archive::decode(&back) {
            Ok(h) if &h == g => Ok(()),
            Ok(_) => Err("decoded graph differs".into()),
            Err(e) => Err(e.to_string()),
        },
    );
    partition_checks(&mut c, g);
    director_checks(&mut c, g, &t_director(g, t).d, t, seed);

    let q = QueryEngine::open(&back)?;
    let lab = |v: Vertex| q.label_of(v);
    let degs = degree_table(g);
    let src = sources(g.n(), seed);
    let mut bad = None;
    for &u in &src {
        let (d, o, i) = q.degree(lab(u)?)?;
        if [d, o, i] != degs[u as usize] {
            bad = Some(format!("vertex {u}"));
            break;
        }
    }
    c.report("query_degree", bad.map_or(Ok(()), Err));
    let und = g.undirected();
    let mut bad = None;
    'adj: for &u in &src {
        for &v in und.out(u) {
            if q.adjacent(lab(u)?, lab(v)?)? != (g.has_arc(u, v), g.has_arc(v, u)) {
                bad = Some(format!("pair {u} {v}"));
                break 'adj;
            }
        }
        let mut got: Vec<Vertex> = q.neighbors(lab(u)?)?.into_iter().map(|(l, _)| q.id_of(l)).collect::<Result<_, _>>()?;
        got.sort_unstable();
        let mut want = und.out(u).to_vec();
        want.sort_unstable();
        if got != want {
            bad = Some(format!("neighbors of {u}"));
            break;
        }
    }
    c.report("query_adjacency", bad.map_or(Ok(()), Err));
    let mut bad = None;
    'near: for &u in src.iter().take(200) {
        let dist = bfs(&und, u, t);
        for &v in src.iter().take(200) {
            let p = q.near(lab(u)?, lab(v)?, t)?;
            let want = dist[v as usize];
            let fine = match p {
                None => want > t,
                Some(p) => want <= t && p.len() as u32 == want + 1,
            };
            if !fine {
                bad = Some(format!("pair {u} {v}"));
                break 'near;
            }
        }
    }
    c.report("query_near", bad.map_or(Ok(()), Err));
    println!("verify={}", if c.ok { "pass" } else { "fail" });
    Ok(c.ok)
}

pub fn verify_partition(g: &Graph) -> Res<bool> {
    let mut c = Checks { ok: true };
    if let Ok(sp) = star_partition(g) {
        let r = measure_star(g, &sp);
        println!(
            "n={} v0={} parts={} s2_max={} s2_cap={:.0} s3_sum={} s3_ratio={:.4}",
            g.n(),
            sp.v0.len(),
            sp.parts.len(),
            r.s2_max,
            r.s2_cap,
            r.s3_sum,
            r.s3_ratio
        );
    }
    partition_checks(&mut c, g);
    println!("verify={}", if c.ok { "pass" } else { "fail" });
    Ok(c.ok)
}

pub fn verify_director(g: &Graph, t: u32, drop_arc: bool) -> Res<bool> {
    let mut c = Checks { ok: true };
    let dir = t_director(g, t);
    let mut d = dir.d.clone();
    if drop_arc {
        let mut lists: Vec<Vec<Vertex>> = g.vertices().map(|u| d.out(u).to_vec()).collect();
        if let Some(u) = lists.iter().position(|l| !l.is_empty()) {
            let v = lists[u].remove(0);
            lists[v as usize].retain(|&x| x as usize != u);
        }
        d = Orientation::from_lists(lists);
    }
    let src = sources(g.n(), 7);
    let r = director_report(g, &d, t, Some(&src));
    println!("n={} t={} cap={} sources={}", g.n(), t, r.cap, src.len());
    for (i, (pairs, good)) in r.by_distance.iter().enumerate() {
        println!("distance={} pairs={} directive={}", i + 1, pairs, good);
    }
    for (s, sizes) in dir.audit.iter().enumerate() {
        let list: Vec<String> = sizes.iter().map(usize::to_string).collect();
        println!("enhance_from={} pivot_pairs={}", s + 1, list.join(","));
    }
    director_checks(&mut c, g, &d, t, 7);
    println!("verify={}", if c.ok { "pass" } else { "fail" });
    Ok(c.ok)
}
