//! Balanced partitions, H-partitions and star partitions.
//!
//! All three work on the underlying undirected graph. The balanced partition
//! and the H-partition are practical substitutes for external results: both
//! check their contracts before returning.

use std::collections::VecDeque;

use crate::bits::{ceil_log2, floor_log2};
use crate::error::PartitionError;
use crate::graph::{induced, neighborhood, Graph, Vertex, VertexSet};

/// A separator `C` splitting the rest of a graph into nonadjacent sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedPartition {
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
}

/// A vertex partition into parts `U_1..U_m` with its quotient graph.
#[derive(Clone, Debug)]
pub struct HPartition {
    pub parts: Vec<VertexSet>,
    /// `part_of[v]` is the index of the part holding `v`.
    pub part_of: Vec<u32>,
    /// Undirected graph on part indices.
    pub quotient: Graph,
}

/// `(V_0, V_1..V_p)` with `V_1..V_p` pairwise nonadjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarPartition {
    pub v0: VertexSet,
    pub parts: Vec<VertexSet>,
}

/// Multiplier on `(log2 n)^7` for the closed-neighborhood size cap.
pub const K_S2: f64 = 64.0;

/// Knobs of the star-partition construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StarParams {
    /// Target quotient size `m`.
    pub quotient_size: usize,
    /// A recursion piece becomes a leaf once it has at most this many nodes.
    pub leaf_budget: usize,
    /// Vertices with more neighbors than this go to `V_0`.
    pub degree_cap: usize,
}

impl StarParams {
    /// `m = ⌈n / ⌊log2 n⌋⌉`, leaves of `b²` nodes and degree cap `b`, for
    /// `b = ⌈log2² n⌉`.
    pub fn for_n(n: usize) -> StarParams {
        let lg = floor_log2(n.max(1) as u64).max(1);
        let l = (n.max(2) as f64).log2();
        let b = (l * l).ceil() as usize;
        StarParams { quotient_size: n.div_ceil(lg).max(1), leaf_budget: b.saturating_mul(b), degree_cap: b }
    }

    /// Parameters whose leaf pieces hold at most about `target` vertices
    /// of an `n`-vertex graph.
    pub fn scaled(n: usize, target: usize) -> StarParams {
        let target = target.max(1);
        let cluster = ((target as f64).powf(0.25).floor() as usize).max(1);
        let l = (n.max(2) as f64).log2();
        StarParams {
            quotient_size: n.div_ceil(cluster).max(1),
            leaf_budget: (target / cluster).max(1),
            degree_cap: ((l * l).ceil() as usize).max(2),
        }
    }
}

/// Sorted, deduplicated undirected adjacency lists.
pub(crate) fn undirected_lists(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut lists: Vec<Vec<Vertex>> = vec![Vec::new(); g.n()];
    for (u, v) in g.arcs() {
        lists[u as usize].push(v);
        lists[v as usize].push(u);
    }
    for l in &mut lists {
        l.sort_unstable();
        l.dedup();
    }
    lists
}

/// Connected components of the vertices not flagged in `removed`.
fn components(adj: &[Vec<Vertex>], removed: &[bool]) -> Vec<Vec<Vertex>> {
    let n = adj.len();
    let mut seen = removed.to_vec();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s as Vertex);
        let mut comp = Vec::new();
        while let Some(x) = queue.pop_front() {
            comp.push(x);
            for &y in &adj[x as usize] {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Longest-processing-time packing of components into two sides.
fn pack(mut comps: Vec<Vec<Vertex>>) -> (Vec<Vertex>, Vec<Vertex>) {
    comps.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x[0].cmp(&y[0])));
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for c in comps {
        if a.len() <= b.len() {
            a.extend(c);
        } else {
            b.extend(c);
        }
    }
    (a, b)
}

fn balanced(m: usize, a: usize, b: usize) -> bool {
    3 * a.max(b) <= 2 * m
}

/// BFS layers of the component containing `root`.
fn layers(adj: &[Vec<Vertex>], root: Vertex) -> Vec<Vec<Vertex>> {
    let mut dist = vec![u32::MAX; adj.len()];
    dist[root as usize] = 0;
    let mut out: Vec<Vec<Vertex>> = vec![vec![root]];
    loop {
        let mut next = Vec::new();
        for &x in out.last().expect("nonempty") {
            for &y in &adj[x as usize] {
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = out.len() as u32;
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            return out;
        }
        next.sort_unstable();
        out.push(next);
    }
}

/// Tries separator `c`; packs the components of the remainder.
fn try_separator(adj: &[Vec<Vertex>], c: &[Vertex]) -> Option<BalancedPartition> {
    let m = adj.len();
    let mut removed = vec![false; m];
    for &x in c {
        removed[x as usize] = true;
    }
    let (a, b) = pack(components(adj, &removed));
    if !balanced(m, a.len(), b.len()) {
        return None;
    }
    Some(BalancedPartition { a: VertexSet::new(a), b: VertexSet::new(b), c: VertexSet::new(c.to_vec()) })
}

/// Finds a balanced partition `(A, B, C)` with small `C`.
///
/// Components alone are tried first. Otherwise the largest component is cut
/// along a BFS layer from a far vertex, preferring the smallest layer that
/// leaves both sides within `2m/3`; a layer may be thinned to the vertices
/// that touch the next layer.
pub fn balanced_partition(h: &Graph) -> Result<BalancedPartition, PartitionError> {
    let adj = undirected_lists(h);
    balanced_partition_lists(&adj)
}

pub(crate) fn balanced_partition_lists(adj: &[Vec<Vertex>]) -> Result<BalancedPartition, PartitionError> {
    let m = adj.len();
    if m <= 3 {
        return Ok(BalancedPartition {
            a: VertexSet::default(),
            b: VertexSet::default(),
            c: VertexSet::all(m),
        });
    }
    if let Some(p) = try_separator(adj, &[]) {
        return Ok(p);
    }
    let comps = components(adj, &vec![false; m]);
    let big = comps.iter().max_by_key(|c| c.len()).expect("m > 0");
    // a far vertex: last vertex of a BFS from the smallest id of the component
    let start = *big.iter().min().expect("nonempty");
    let root = *layers(adj, start).last().and_then(|l| l.last()).expect("nonempty");
    let ls = layers(adj, root);
    // The ball below a layer is connected, so it must fit on one side.
    let mut before = 0usize;
    let mut cands: Vec<(usize, usize)> = Vec::new(); // (|layer|, index)
    let mut median = 0;
    for (i, l) in ls.iter().enumerate() {
        if 3 * before <= 2 * m {
            cands.push((l.len(), i));
        }
        if before < big.len() / 2 {
            median = i;
        }
        before += l.len();
    }
    cands.sort_unstable_by_key(|&(len, i)| (len, i.abs_diff(median)));
    cands.truncate(16);
    if !cands.iter().any(|&(_, i)| i == median) {
        cands.push((ls[median].len(), median));
    }
    let mut best: Option<BalancedPartition> = None;
    for &(len, i) in &cands {
        if best.as_ref().is_some_and(|b| b.c.len() <= len) && i != median {
            continue;
        }
        let mut found = None;
        if let Some(next) = ls.get(i + 1) {
            let mut in_next = vec![false; m];
            for &y in next {
                in_next[y as usize] = true;
            }
            let thin: Vec<Vertex> =
                ls[i].iter().copied().filter(|&x| adj[x as usize].iter().any(|&y| in_next[y as usize])).collect();
            found = try_separator(adj, &thin);
        }
        if found.is_none() {
            found = try_separator(adj, &ls[i]);
        }
        if let Some(p) = found {
            if best.as_ref().is_none_or(|b| p.c.len() < b.c.len()) {
                best = Some(p);
            }
        }
    }
    best.ok_or(PartitionError::Unbalanced(m))
}

/// Checks the balanced-partition contract exactly.
pub fn check_balanced(h: &Graph, p: &BalancedPartition) -> Result<(), String> {
    let m = h.n();
    let mut side = vec![0u8; m];
    for (tag, set) in [(1u8, &p.a), (2, &p.b), (3, &p.c)] {
        for v in set.iter() {
            if v as usize >= m {
                return Err(format!("vertex {v} out of range"));
            }
            if side[v as usize] != 0 {
                return Err(format!("vertex {v} in two sides"));
            }
            side[v as usize] = tag;
        }
    }
    if let Some(v) = side.iter().position(|&s| s == 0) {
        return Err(format!("vertex {v} uncovered"));
    }
    if !balanced(m, p.a.len(), p.b.len()) {
        return Err(format!("sides {} and {} exceed 2m/3 for m = {m}", p.a.len(), p.b.len()));
    }
    for (u, v) in h.arcs() {
        let (x, y) = (side[u as usize], side[v as usize]);
        if (x, y) == (1, 2) || (x, y) == (2, 1) {
            return Err(format!("arc ({u}, {v}) joins A and B"));
        }
    }
    Ok(())
}

/// Groups the vertices into connected parts of at most `⌈n/m⌉` vertices by
/// clustering a BFS spanning forest bottom-up.
pub fn h_partition(g: &Graph, m: usize) -> HPartition {
    let adj = undirected_lists(g);
    h_partition_lists(&adj, m)
}

pub(crate) fn h_partition_lists(adj: &[Vec<Vertex>], m: usize) -> HPartition {
    let n = adj.len();
    let cap = n.div_ceil(m.clamp(1, n.max(1))).max(1);
    // BFS forest
    let mut parent = vec![Vertex::MAX; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let first = order.len();
        order.push(s as Vertex);
        let mut head = first;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in &adj[x as usize] {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    parent[y as usize] = x;
                    order.push(y);
                }
            }
        }
    }
    let mut children: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for &v in &order {
        let p = parent[v as usize];
        if p != Vertex::MAX {
            children[p as usize].push(v);
        }
    }
    // residual[v]: size of the still-open connected piece hanging at v
    let mut residual = vec![0usize; n];
    let mut absorbed = vec![false; n];
    let mut part_of = vec![u32::MAX; n];
    let mut parts: Vec<VertexSet> = Vec::new();
    let close = |root: Vertex, part_of: &mut Vec<u32>, parts: &mut Vec<VertexSet>, absorbed: &[bool]| {
        let id = parts.len() as u32;
        let mut members = vec![root];
        let mut stack = vec![root];
        part_of[root as usize] = id;
        while let Some(x) = stack.pop() {
            for &c in &children[x as usize] {
                if absorbed[c as usize] && part_of[c as usize] == u32::MAX {
                    part_of[c as usize] = id;
                    members.push(c);
                    stack.push(c);
                }
            }
        }
        parts.push(VertexSet::new(members));
    };
    for &v in order.iter().rev() {
        let mut kids: Vec<Vertex> =
            children[v as usize].iter().copied().filter(|&c| residual[c as usize] > 0).collect();
        kids.sort_by_key(|&c| (residual[c as usize], c));
        let mut cur = 1;
        for c in kids {
            let r = residual[c as usize];
            if cur + r <= cap {
                cur += r;
                absorbed[c as usize] = true;
            } else {
                close(c, &mut part_of, &mut parts, &absorbed);
            }
        }
        if cur >= cap || parent[v as usize] == Vertex::MAX {
            close(v, &mut part_of, &mut parts, &absorbed);
            residual[v as usize] = 0;
        } else {
            residual[v as usize] = cur;
        }
    }
    let mut qarcs: Vec<(Vertex, Vertex)> = Vec::new();
    for (u, l) in adj.iter().enumerate() {
        for &v in l {
            let (a, b) = (part_of[u], part_of[v as usize]);
            if a != b {
                qarcs.push((a, b));
            }
        }
    }
    qarcs.sort_unstable();
    qarcs.dedup();
    let mut lists: Vec<Vec<Vertex>> = vec![Vec::new(); parts.len()];
    for (a, b) in qarcs {
        lists[a as usize].push(b);
    }
    HPartition { parts, part_of, quotient: Graph::from_lists(lists, None) }
}

/// Checks H1 (`|U_i| ≤ ⌈n/m⌉`), H2 (exact quotient adjacency), coverage,
/// and connectivity of every part.
pub fn check_h_partition(g: &Graph, m: usize, hp: &HPartition) -> Result<(), String> {
    let n = g.n();
    let cap = n.div_ceil(m.clamp(1, n.max(1))).max(1);
    let mut owner = vec![u32::MAX; n];
    for (i, part) in hp.parts.iter().enumerate() {
        if part.len() > cap {
            return Err(format!("H1: part {i} has {} > {cap} vertices", part.len()));
        }
        for v in part.iter() {
            if owner[v as usize] != u32::MAX {
                return Err(format!("vertex {v} in two parts"));
            }
            owner[v as usize] = i as u32;
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == u32::MAX) {
        return Err(format!("vertex {v} in no part"));
    }
    if owner != hp.part_of {
        return Err("part_of disagrees with parts".into());
    }
    let mut want: Vec<(Vertex, Vertex)> = Vec::new();
    for (u, v) in g.arcs() {
        let (a, b) = (owner[u as usize], owner[v as usize]);
        if a != b {
            want.push((a, b));
            want.push((b, a));
        }
    }
    want.sort_unstable();
    want.dedup();
    if want != hp.quotient.sorted_arcs() {
        return Err("H2: quotient adjacency differs from cross-part adjacency".into());
    }
    for (i, part) in hp.parts.iter().enumerate() {
        let sub = induced(g, part.as_slice()).graph;
        let adj = undirected_lists(&sub);
        if components(&adj, &vec![false; adj.len()]).len() > 1 {
            return Err(format!("part {i} is disconnected"));
        }
    }
    Ok(())
}

/// Star partition with the default logarithmic parameters.
pub fn star_partition(g: &Graph) -> Result<StarPartition, PartitionError> {
    let n = g.n();
    if n < 16 {
        let all = VertexSet::all(n);
        return Ok(if n as f64 <= s2_cap(n) {
            StarPartition { v0: VertexSet::default(), parts: if n == 0 { vec![] } else { vec![all] } }
        } else {
            StarPartition { v0: all, parts: vec![] }
        });
    }
    star_partition_with(g, StarParams::for_n(n))
}

/// Star partition: cluster into a quotient, split the quotient recursively
/// with balanced partitions until pieces fit the leaf budget, then give each
/// vertex of low degree whose cluster lies in exactly one leaf to that leaf.
/// Everything else goes to `V_0`.
pub fn star_partition_with(g: &Graph, params: StarParams) -> Result<StarPartition, PartitionError> {
    let n = g.n();
    let adj = undirected_lists(g);
    let hp = h_partition_lists(&adj, params.quotient_size);
    let qadj = undirected_lists(&hp.quotient);
    let q = qadj.len();
    // leaf index per quotient node; u32::MAX = none yet, SEP = separator
    const SEP: u32 = u32::MAX - 1;
    let mut leaf_of = vec![u32::MAX; q];
    let mut leaves = 0u32;
    let mut stack: Vec<Vec<Vertex>> = vec![(0..q as Vertex).collect()];
    let mut local = vec![Vertex::MAX; q];
    while let Some(piece) = stack.pop() {
        if piece.len() <= params.leaf_budget {
            for &x in &piece {
                let slot = &mut leaf_of[x as usize];
                *slot = if *slot == u32::MAX { leaves } else { SEP };
            }
            leaves += 1;
            continue;
        }
        for (i, &x) in piece.iter().enumerate() {
            local[x as usize] = i as Vertex;
        }
        let sub: Vec<Vec<Vertex>> = piece
            .iter()
            .map(|&x| {
                qadj[x as usize].iter().filter(|&&y| local[y as usize] != Vertex::MAX).map(|&y| local[y as usize]).collect()
            })
            .collect();
        for &x in &piece {
            local[x as usize] = Vertex::MAX;
        }
        let split = balanced_partition_lists(&sub).ok();
        match split {
            Some(p) => {
                let map = |s: &VertexSet| s.iter().map(|i| piece[i as usize]).collect::<Vec<_>>();
                let (a, b, c) = (map(&p.a), map(&p.b), map(&p.c));
                let mut left: Vec<Vertex> = a.iter().chain(&c).copied().collect();
                let mut right: Vec<Vertex> = b.iter().chain(&c).copied().collect();
                if left.len() >= piece.len() || right.len() >= piece.len() {
                    for &x in &piece {
                        leaf_of[x as usize] = SEP;
                    }
                    continue;
                }
                for &x in &c {
                    leaf_of[x as usize] = SEP;
                }
                left.sort_unstable();
                right.sort_unstable();
                stack.push(right);
                stack.push(left);
            }
            None => {
                for &x in &piece {
                    leaf_of[x as usize] = SEP;
                }
            }
        }
    }
    let mut parts: Vec<Vec<Vertex>> = vec![Vec::new(); leaves as usize];
    let mut v0 = Vec::new();
    for v in 0..n {
        let l = leaf_of[hp.part_of[v] as usize];
        if l < SEP && adj[v].len() <= params.degree_cap {
            parts[l as usize].push(v as Vertex);
        } else {
            v0.push(v as Vertex);
        }
    }
    Ok(StarPartition {
        v0: VertexSet::new(v0),
        parts: parts.into_iter().filter(|p| !p.is_empty()).map(VertexSet::from_sorted).collect(),
    })
}

/// Star partition from connected clusters of at most `cluster_size`
/// vertices: every edge between two clusters gets an endpoint moved to
/// `V_0` (greedy cover, busiest endpoint first), as do vertices above the
/// degree cap and every vertex flagged in `forced`.
pub fn star_partition_cover(g: &Graph, cluster_size: usize, degree_cap: usize, forced: &[bool]) -> StarPartition {
    let n = g.n();
    let adj = undirected_lists(g);
    let hp = h_partition_lists(&adj, n.div_ceil(cluster_size.max(1)));
    let mut in_v0: Vec<bool> = (0..n).map(|v| forced.get(v).copied().unwrap_or(false) || adj[v].len() > degree_cap).collect();
    let cross = |u: usize, v: Vertex| hp.part_of[u] != hp.part_of[v as usize];
    let mut load: Vec<usize> = (0..n).map(|u| adj[u].iter().filter(|&&v| cross(u, v)).count()).collect();
    let mut order: Vec<Vertex> = (0..n as Vertex).filter(|&u| load[u as usize] > 0).collect();
    order.sort_by_key(|&u| (std::cmp::Reverse(load[u as usize]), u));
    for &u in &order {
        let u = u as usize;
        if in_v0[u] {
            continue;
        }
        let open = adj[u].iter().filter(|&&v| cross(u, v) && !in_v0[v as usize]).count();
        load[u] = open;
        if open > 0 {
            // take u when it covers at least as much as its busiest open neighbor
            let best_other =
                adj[u].iter().filter(|&&v| cross(u, v) && !in_v0[v as usize]).map(|&v| load[v as usize]).max().unwrap_or(0);
            if open >= best_other || open > 1 {
                in_v0[u] = true;
            } else {
                for &v in &adj[u] {
                    if cross(u, v) && !in_v0[v as usize] {
                        in_v0[v as usize] = true;
                    }
                }
            }
        }
    }
    let mut parts: Vec<Vec<Vertex>> = vec![Vec::new(); hp.parts.len()];
    let mut v0 = Vec::new();
    for v in 0..n {
        if in_v0[v] {
            v0.push(v as Vertex);
        } else {
            parts[hp.part_of[v] as usize].push(v as Vertex);
        }
    }
    StarPartition {
        v0: VertexSet::from_sorted(v0),
        parts: parts.into_iter().filter(|p| !p.is_empty()).map(VertexSet::from_sorted).collect(),
    }
}

/// Star partition whose parts have closed neighborhoods of at most `cap`
/// vertices. Parts grow greedily from low-degree seeds; once a part is
/// closed its free neighbors join `V_0`. Vertices flagged in `forced` start
/// in `V_0`.
pub fn star_partition_packed(g: &Graph, cap: usize, forced: &[bool]) -> StarPartition {
    const FREE: u32 = u32::MAX;
    const ZERO: u32 = u32::MAX - 1;
    let n = g.n();
    let adj = undirected_lists(g);
    let mut state: Vec<u32> = (0..n).map(|v| if forced.get(v).copied().unwrap_or(false) { ZERO } else { FREE }).collect();
    let mut order: Vec<Vertex> = (0..n as Vertex).collect();
    order.sort_by_key(|&v| (adj[v as usize].len(), v));
    let mut parts: Vec<Vec<Vertex>> = Vec::new();
    let mut closed: Vec<Vertex> = Vec::new();
    for &seed in &order {
        if state[seed as usize] != FREE {
            continue;
        }
        if adj[seed as usize].len() + 1 > cap {
            state[seed as usize] = ZERO;
            continue;
        }
        let id = parts.len() as u32;
        let mut piece = vec![seed];
        state[seed as usize] = id;
        closed.clear();
        closed.push(seed);
        closed.extend_from_slice(&adj[seed as usize]);
        closed.sort_unstable();
        loop {
            let mut best: Option<(usize, Vertex)> = None;
            for &x in &piece {
                for &u in &adj[x as usize] {
                    if state[u as usize] != FREE {
                        continue;
                    }
                    let extra = adj[u as usize].iter().filter(|&&w| closed.binary_search(&w).is_err()).count();
                    let size = closed.len() + extra;
                    if size <= cap && best.is_none_or(|b| (size, u) < b) {
                        best = Some((size, u));
                    }
                }
            }
            let Some((_, u)) = best else { break };
            state[u as usize] = id;
            piece.push(u);
            closed.extend_from_slice(&adj[u as usize]);
            closed.sort_unstable();
            closed.dedup();
        }
        for &x in &piece {
            for &y in &adj[x as usize] {
                if state[y as usize] == FREE {
                    state[y as usize] = ZERO;
                }
            }
        }
        piece.sort_unstable();
        parts.push(piece);
    }
    let v0 = (0..n as Vertex).filter(|&v| state[v as usize] == ZERO).collect();
    StarPartition { v0: VertexSet::from_sorted(v0), parts: parts.into_iter().map(VertexSet::from_sorted).collect() }
}

/// The S2 cap `(log2 n)^7 · K_S2`.
pub fn s2_cap(n: usize) -> f64 {
    (n.max(1) as f64).log2().powi(7) * K_S2
}

/// Measured star-partition conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct StarReport {
    pub s1: bool,
    /// Largest `|N_G[V_i]|`.
    pub s2_max: usize,
    pub s2_cap: f64,
    /// `|V_0| + p + Σ |N_G(V_i)|`.
    pub s3_sum: usize,
    pub s3_ratio: f64,
    pub covers: bool,
}

impl StarReport {
    pub fn s2(&self) -> bool {
        self.s2_max as f64 <= self.s2_cap
    }
}

pub fn measure_star(g: &Graph, sp: &StarPartition) -> StarReport {
    let n = g.n();
    let mut owner = vec![u32::MAX; n];
    let mut covers = true;
    for v in sp.v0.iter() {
        covers &= owner[v as usize] == u32::MAX;
        owner[v as usize] = 0;
    }
    for (i, p) in sp.parts.iter().enumerate() {
        for v in p.iter() {
            covers &= owner[v as usize] == u32::MAX;
            owner[v as usize] = i as u32 + 1;
        }
    }
    covers &= owner.iter().all(|&o| o != u32::MAX);
    let s1 = g.arcs().all(|(u, v)| {
        let (a, b) = (owner[u as usize], owner[v as usize]);
        a == 0 || b == 0 || a == b
    });
    let mut s2_max = 0;
    let mut s3 = sp.v0.len() + sp.parts.len();
    for p in &sp.parts {
        let nb = neighborhood(g, p).len();
        s2_max = s2_max.max(nb + p.len());
        s3 += nb;
    }
    StarReport { s1, s2_max, s2_cap: s2_cap(n), s3_sum: s3, s3_ratio: s3 as f64 / n.max(1) as f64, covers }
}

/// `⌈log2 n⌉` as used for quotient sizing, exposed for reports.
pub fn log2_ceil(n: usize) -> usize {
    ceil_log2(n.max(1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn path(n: usize) -> Graph {
        let arcs: Vec<_> = (1..n as Vertex).map(|i| (i - 1, i)).collect();
        Graph::build(n, &arcs, None, true).unwrap()
    }

    #[test]
    fn star_graph_is_split_at_the_center() {
        let arcs: Vec<_> = (1..7).map(|i| (0, i)).collect();
        let g = Graph::build(7, &arcs, None, true).unwrap();
        let p = balanced_partition(&g).unwrap();
        assert_eq!(p.c.as_slice(), &[0]);
        assert_eq!((p.a.len(), p.b.len()), (3, 3));
        check_balanced(&g, &p).unwrap();
    }

    #[test]
    fn single_vertex_goes_to_separator() {
        let p = balanced_partition(&Graph::empty(1)).unwrap();
        assert!(p.a.is_empty() && p.b.is_empty());
        assert_eq!(p.c.as_slice(), &[0]);
    }

    #[test]
    fn grid_separator_is_small() {
        let g = corpus::grid(32, 32);
        let p = balanced_partition(&g).unwrap();
        check_balanced(&g, &p).unwrap();
        assert!(p.c.len() as f64 <= 4.0 * (1024f64).powf(2.0 / 3.0));
    }

    #[test]
    fn path_of_nine_in_three_pieces() {
        let g = path(9);
        let hp = h_partition(&g, 3);
        check_h_partition(&g, 3, &hp).unwrap();
        assert_eq!(hp.parts.len(), 3);
        assert!(hp.parts.iter().all(|p| p.len() == 3));
        assert_eq!(hp.quotient.arc_count(), 4);
    }

    #[test]
    fn singleton_parts_when_m_is_n() {
        let g = corpus::random_tree(40, 3);
        let hp = h_partition(&g, 40);
        check_h_partition(&g, 40, &hp).unwrap();
        assert_eq!(hp.parts.len(), 40);
        assert_eq!(hp.quotient.arc_count(), g.arc_count());
    }

    #[test]
    fn random_tree_h_partition() {
        let g = corpus::random_tree(1000, 7);
        let hp = h_partition(&g, 100);
        check_h_partition(&g, 100, &hp).unwrap();
    }

    #[test]
    fn edgeless_star_partition() {
        let g = Graph::empty(100);
        let sp = star_partition(&g).unwrap();
        assert!(sp.v0.is_empty());
        let r = measure_star(&g, &sp);
        assert!(r.s1 && r.covers);
    }

    #[test]
    fn grid_star_partition_contracts() {
        let g = corpus::grid(64, 64);
        let sp = star_partition(&g).unwrap();
        let r = measure_star(&g, &sp);
        assert!(r.s1 && r.covers && r.s2());
    }

    #[test]
    fn scaled_star_partition_splits() {
        let g = corpus::grid(64, 64);
        let sp = star_partition_with(&g, StarParams::scaled(g.n(), 64)).unwrap();
        let r = measure_star(&g, &sp);
        assert!(r.s1 && r.covers);
        assert!(sp.parts.len() > 20);
        assert!(sp.v0.len() < g.n() / 2);
    }

    #[test]
    fn cover_partition_contracts() {
        for g in [corpus::grid(40, 40), corpus::random_tree(3000, 4), corpus::maximal_planar(2000, 5)] {
            let sp = star_partition_cover(&g, 40, 64, &[]);
            let r = measure_star(&g, &sp);
            assert!(r.s1 && r.covers);
            assert!(sp.parts.iter().all(|p| p.len() <= 40));
        }
    }

    #[test]
    fn packed_parts_fit_the_cap() {
        for g in [corpus::grid(20, 20), corpus::random_tree(500, 4), corpus::maximal_planar(300, 5)] {
            let forced: Vec<bool> = (0..g.n()).map(|v| v % 17 == 0).collect();
            let sp = star_partition_packed(&g, 5, &forced);
            let r = measure_star(&g, &sp);
            assert!(r.s1 && r.covers);
            for p in &sp.parts {
                assert!(p.len() + neighborhood(&g, p).len() <= 5);
                assert!(p.iter().all(|v| !forced[v as usize]));
            }
        }
    }

    #[test]
    fn deterministic() {
        let g = corpus::maximal_planar(500, 11);
        assert_eq!(star_partition(&g).unwrap(), star_partition(&g).unwrap());
        assert_eq!(balanced_partition(&g).unwrap(), balanced_partition(&g).unwrap());
    }

    #[test]
    fn small_graphs() {
        let sp = star_partition(&path(5)).unwrap();
        assert!(sp.v0.is_empty() && sp.parts.len() == 1);
        let sp = star_partition(&Graph::empty(1)).unwrap();
        assert_eq!(sp.v0.len(), 1);
    }
}
