//! `t`-directors: bounded out-degree orientations `D` of the underlying
//! undirected graph such that every pair `(u, v)` at distance at most `t`
//! has a shortest path that leaves `u` along `D` and enters `v` along `D^r`.
//!
//! A 1-director is a peeling orientation. Each enhancement step turns a
//! `t`-director into a `(t+1)`-director by adding arcs `E_{t+1}`, built one
//! distance at a step from pivoted paths (paths whose first arc points back
//! at `u` and whose remainder runs along `D`). Distances needed during the
//! enhancement are read from `D` itself: for `j ≤ t`, `d(u, v) ≤ j` iff some
//! `w` has `d_D(u, w) + d_D(v, w) ≤ j`.
//!
//! Directors of the decomposition tree are combined bottom-up: a node keeps
//! the out-arcs of its children's directors for the vertices of each part,
//! and takes out-arcs from a fresh director of the whole node for `W_0`, the
//! separator plus every part vertex within `D`-distance `t` of a copy of it.

use std::collections::{BTreeMap, HashSet};

use crate::codec::tree::{Body, DecompositionTree};
use crate::graph::{greedy_color, peel_orientation, BfsScratch, Graph, Orientation, Vertex};

/// A `t`-director together with its enhancement audit.
#[derive(Clone, Debug)]
pub struct Director {
    pub d: Orientation,
    pub t: u32,
    /// `|E_j|` for `j = 1..=s+1`, one list per enhancement from `s` to `s+1`.
    pub audit: Vec<Vec<usize>>,
}

impl Director {
    pub fn cap(&self) -> usize {
        self.d.cap()
    }
}

fn sorted_lists(d: &Orientation) -> Vec<Vec<Vertex>> {
    (0..d.n() as Vertex)
        .map(|u| {
            let mut l = d.out(u).to_vec();
            l.sort_unstable();
            l
        })
        .collect()
}

fn from_sorted_lists(mut lists: Vec<Vec<Vertex>>) -> Orientation {
    for l in &mut lists {
        l.sort_unstable();
        l.dedup();
    }
    Orientation::from_lists(lists)
}

#[inline]
fn has(lists: &[Vec<Vertex>], a: Vertex, b: Vertex) -> bool {
    lists[a as usize].binary_search(&b).is_ok()
}

/// Directive-pair checks against one orientation, reusing BFS scratch.
pub struct DirectiveOracle<'a> {
    und: Graph,
    d: &'a Orientation,
    from_u: BfsScratch,
    from_v: BfsScratch,
    plain: BfsScratch,
}

impl<'a> DirectiveOracle<'a> {
    pub fn new(g: &Graph, d: &'a Orientation) -> Self {
        let n = g.n();
        DirectiveOracle {
            und: g.undirected(),
            d,
            from_u: BfsScratch::new(n),
            from_v: BfsScratch::new(n),
            plain: BfsScratch::new(n),
        }
    }

    /// `d_G(u, v)` in the underlying undirected graph if at most `limit`.
    pub fn distance(&mut self, u: Vertex, v: Vertex, limit: u32) -> Option<u32> {
        let und = &self.und;
        self.plain.run(&[u], limit, |x| und.out(x).iter().copied());
        let d = self.plain.dist(v);
        (d != u32::MAX).then_some(d)
    }

    /// Whether `(u, v)` is directive: some `w` has
    /// `d_D(u, w) + d_{D^r}(w, v) = d_G(u, v)`.
    pub fn check(&mut self, u: Vertex, v: Vertex) -> bool {
        let Some(dist) = self.distance(u, v, u32::MAX) else { return false };
        self.check_at(u, v, dist)
    }

    /// As [`DirectiveOracle::check`] with `d_G(u, v)` already known.
    pub fn check_at(&mut self, u: Vertex, v: Vertex, dist: u32) -> bool {
        let d = self.d;
        self.from_u.run(&[u], dist, |x| d.out(x).iter().copied());
        self.from_v.run(&[v], dist, |x| d.out(x).iter().copied());
        self.from_v.visited().iter().any(|&w| {
            let a = self.from_u.dist(w);
            a != u32::MAX && a + self.from_v.dist(w) == dist
        })
    }
}

/// Whether `(u, v)` is `D`-directive in `g`. Unreachable pairs are not.
pub fn is_directive(g: &Graph, d: &Orientation, u: Vertex, v: Vertex) -> bool {
    DirectiveOracle::new(g, d).check(u, v)
}

/// Per-distance directive coverage of an orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectorReport {
    pub cap: usize,
    pub orientation_ok: bool,
    /// `(pairs, directive pairs)` at distance `1..=t`.
    pub by_distance: Vec<(usize, usize)>,
}

impl DirectorReport {
    pub fn ok(&self) -> bool {
        self.orientation_ok && self.by_distance.iter().all(|&(a, b)| a == b)
    }
}

/// Checks every ordered pair at distance `1..=t` from each source in
/// `sources` (all vertices when `None`).
pub fn director_report(g: &Graph, d: &Orientation, t: u32, sources: Option<&[Vertex]>) -> DirectorReport {
    let und = g.undirected();
    let mut oracle = DirectiveOracle::new(g, d);
    let mut bfs = BfsScratch::new(g.n());
    let mut by_distance = vec![(0usize, 0usize); t as usize];
    let all: Vec<Vertex> = g.vertices().collect();
    for &u in sources.unwrap_or(&all) {
        bfs.run(&[u], t, |x| und.out(x).iter().copied());
        for &v in bfs.visited() {
            let dist = bfs.dist(v);
            if dist == 0 {
                continue;
            }
            let slot = &mut by_distance[dist as usize - 1];
            slot.0 += 1;
            if oracle.check_at(u, v, dist) {
                slot.1 += 1;
            }
        }
    }
    DirectorReport { cap: d.cap(), orientation_ok: d.validate(&und), by_distance }
}

/// Pivot pairs at one distance with their representative paths.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PivotPairs {
    /// `(u, v)` with `d(u, v) = j + 1`.
    pub arcs: Vec<(Vertex, Vertex)>,
    /// `P(u, v)` from `u` to `v`; `paths[i][1]` is `x(u, v)`.
    pub paths: Vec<Vec<Vertex>>,
}

/// The pivot-pair graph for distance `j + 1`: pairs joined by a path
/// `u, x, .., v` with `x → u` in `D`, the rest along `D`, and every edge
/// between inner vertices present in both directions of `D_j`. Paths are
/// found by depth-first search in vertex and out-list order; the first one
/// found for a pair is kept. `d` must be a `j`-director of `und`.
pub fn pivoted_pairs(und: &Graph, d: &Orientation, dj: &Orientation, j: u32) -> PivotPairs {
    let n = und.n();
    let dl = sorted_lists(d);
    let djl = sorted_lists(dj);
    let mut ball_u = BfsScratch::new(n);
    let mut ball_v = BfsScratch::new(n);
    let mut decided: HashSet<(Vertex, Vertex)> = HashSet::new();
    let mut out = PivotPairs::default();
    let mut path: Vec<Vertex> = Vec::with_capacity(j as usize + 2);
    for x in 0..n as Vertex {
        for &u in &dl[x as usize] {
            ball_u.run(&[u], j, |a| dl[a as usize].iter().copied());
            path.clear();
            path.push(u);
            path.push(x);
            // explicit DFS over (vertex, next out-list index)
            let mut stack: Vec<usize> = vec![0];
            while let Some(top) = stack.last_mut() {
                let a = *path.last().expect("path holds x");
                let step = path.len() - 1; // edges taken after u-x, plus one
                let list = &dl[a as usize];
                if *top >= list.len() {
                    stack.pop();
                    path.pop();
                    continue;
                }
                let b = list[*top];
                *top += 1;
                if path.contains(&b) {
                    continue;
                }
                let last = step == j as usize;
                if !last && !has(&djl, b, a) {
                    continue;
                }
                path.push(b);
                if !last {
                    stack.push(0);
                    continue;
                }
                let v = b;
                if decided.insert((u, v)) {
                    ball_v.run(&[v], j, |w| dl[w as usize].iter().copied());
                    let close = ball_v.visited().iter().any(|&w| {
                        let a = ball_u.dist(w);
                        a != u32::MAX && a + ball_v.dist(w) <= j
                    });
                    if !close {
                        out.arcs.push((u, v));
                        out.paths.push(path.clone());
                    }
                }
                path.pop();
            }
            path.clear();
        }
    }
    out
}

/// Checks each representative path: first arc reversed in `D`, the rest in
/// `D`, inner edges in both directions of `D_j`, endpoints at distance
/// exactly `j + 1`.
pub fn validate_pivot_pairs(und: &Graph, d: &Orientation, dj: &Orientation, j: u32, pairs: &PivotPairs) -> Result<(), String> {
    let mut bfs = BfsScratch::new(und.n());
    for (&(u, v), p) in pairs.arcs.iter().zip(&pairs.paths) {
        if p.len() != j as usize + 2 || p[0] != u || p[p.len() - 1] != v {
            return Err(format!("path for ({u}, {v}) has the wrong shape"));
        }
        if !d.has_arc(p[1], u) {
            return Err(format!("first edge of ({u}, {v}) is not reversed in D"));
        }
        for w in p[1..].windows(2) {
            if !d.has_arc(w[0], w[1]) {
                return Err(format!("path for ({u}, {v}) leaves D"));
            }
        }
        for w in p[1..p.len() - 1].windows(2) {
            if !dj.has_arc(w[1], w[0]) {
                return Err(format!("inner edge of ({u}, {v}) is one-way in D_j"));
            }
        }
        bfs.run(&[u], j + 1, |x| und.out(x).iter().copied());
        if bfs.dist(v) != j + 1 {
            return Err(format!("pair ({u}, {v}) is not at distance {}", j + 1));
        }
    }
    Ok(())
}

/// Orientation of the pivot-pair graph with the edge classes used to build it.
#[derive(Clone, Debug)]
pub struct PivotOrientation {
    pub d: Orientation,
    /// Class of each pivot pair; pairs of one class have distinct `x`
    /// vertices of one color in `F = D_j^{2j-1}`.
    pub class_of: Vec<usize>,
    pub classes: usize,
}

/// `F` restricted to the given vertices: `a ~ b` when `1 ≤ d_{D_j}(a, b) ≤ 2j-1`
/// in either direction. Returns adjacency over indices into `xs`.
fn power_graph(dj: &Orientation, j: u32, xs: &[Vertex]) -> Graph {
    let n = dj.n();
    let mut index = vec![u32::MAX; n];
    for (i, &x) in xs.iter().enumerate() {
        index[x as usize] = i as u32;
    }
    let mut bfs = BfsScratch::new(n);
    let mut lists: Vec<Vec<Vertex>> = vec![Vec::new(); xs.len()];
    for (i, &x) in xs.iter().enumerate() {
        bfs.run(&[x], 2 * j - 1, |a| dj.out(a).iter().copied());
        for &y in bfs.visited() {
            let iy = index[y as usize];
            if iy != u32::MAX && iy as usize != i {
                lists[i].push(iy);
                lists[iy as usize].push(i as Vertex);
            }
        }
    }
    for l in &mut lists {
        l.sort_unstable();
        l.dedup();
    }
    Graph::from_lists(lists, None)
}

/// Orients the pivot-pair graph: pairs are split into classes by the color
/// of `x(u, v)` in a greedy coloring of `F` and by rank among pairs sharing
/// `x`; each class is oriented by peeling and the union is returned.
pub fn orient_pivot_graph(n: usize, dj: &Orientation, j: u32, pairs: &PivotPairs) -> PivotOrientation {
    let mut xs: Vec<Vertex> = pairs.paths.iter().map(|p| p[1]).collect();
    xs.sort_unstable();
    xs.dedup();
    let colors = greedy_color(&power_graph(dj, j, &xs));
    let mut rank: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut class_ids: BTreeMap<(u32, usize), usize> = BTreeMap::new();
    let mut class_of = Vec::with_capacity(pairs.arcs.len());
    for p in &pairs.paths {
        let x = p[1];
        let r = rank.entry(x).or_insert(0);
        let color = colors[xs.binary_search(&x).expect("x collected")];
        let next = class_ids.len();
        class_of.push(*class_ids.entry((color, *r)).or_insert(next));
        *r += 1;
    }
    let classes = class_ids.len();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); classes];
    for (i, &c) in class_of.iter().enumerate() {
        members[c].push(i);
    }
    let mut lists: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for m in &members {
        let mut verts: Vec<Vertex> = m.iter().flat_map(|&i| [pairs.arcs[i].0, pairs.arcs[i].1]).collect();
        verts.sort_unstable();
        verts.dedup();
        let local = |v: Vertex| verts.binary_search(&v).expect("class vertex") as Vertex;
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); verts.len()];
        for &i in m {
            let (a, b) = pairs.arcs[i];
            adj[local(a) as usize].push(local(b));
            adj[local(b) as usize].push(local(a));
        }
        for l in &mut adj {
            l.sort_unstable();
            l.dedup();
        }
        let dk = peel_orientation(&Graph::from_lists(adj, None));
        for (a, b) in dk.arcs() {
            lists[verts[a as usize] as usize].push(verts[b as usize]);
        }
    }
    PivotOrientation { d: from_sorted_lists(lists), class_of, classes }
}

/// Checks the class property: inside a class the `x` vertices are distinct
/// and pairwise more than `2j-1` apart along `D_j` in both directions.
pub fn validate_classes(dj: &Orientation, j: u32, pairs: &PivotPairs, po: &PivotOrientation) -> Result<(), String> {
    let mut by_class: Vec<Vec<Vertex>> = vec![Vec::new(); po.classes];
    for (i, &c) in po.class_of.iter().enumerate() {
        by_class[c].push(pairs.paths[i][1]);
    }
    let mut bfs = BfsScratch::new(dj.n());
    for (c, xs) in by_class.iter().enumerate() {
        let set: HashSet<Vertex> = xs.iter().copied().collect();
        if set.len() != xs.len() {
            return Err(format!("class {c} repeats an x vertex"));
        }
        for &x in xs {
            bfs.run(&[x], 2 * j - 1, |a| dj.out(a).iter().copied());
            for &y in bfs.visited() {
                if y != x && set.contains(&y) {
                    return Err(format!("class {c}: x vertices {x} and {y} are adjacent in F"));
                }
            }
        }
    }
    Ok(())
}

/// Expands a `t`-director of `g` into a `(t+1)`-director.
pub fn enhance(g: &Graph, dir: &Director) -> Director {
    let und = g.undirected();
    let n = und.n();
    let d = &dir.d;
    let mut dj = sorted_lists(d);
    let mut added: HashSet<(Vertex, Vertex)> = HashSet::new();
    let mut sizes = vec![0usize];
    for j in 1..=dir.t {
        let dj_or = Orientation::from_lists(dj.clone());
        let pairs = pivoted_pairs(&und, d, &dj_or, j);
        let dh = orient_pivot_graph(n, &dj_or, j, &pairs);
        let mut e: Vec<(Vertex, Vertex)> = Vec::new();
        for (&(u, v), p) in pairs.arcs.iter().zip(&pairs.paths) {
            if dh.d.has_arc(u, v) {
                e.push((u, p[1]));
            }
            if dh.d.has_arc(v, u) {
                e.push((v, p[p.len() - 2]));
            }
        }
        for (a, b) in e {
            if added.insert((a, b)) && !has(&dj, a, b) {
                let l = &mut dj[a as usize];
                let at = l.binary_search(&b).unwrap_err();
                l.insert(at, b);
            }
        }
        sizes.push(added.len());
    }
    let mut audit = dir.audit.clone();
    audit.push(sizes);
    Director { d: Orientation::from_lists(dj), t: dir.t + 1, audit }
}

/// A `t`-director of `g`: peeling, then `t - 1` enhancements.
pub fn t_director(g: &Graph, t: u32) -> Director {
    let und = g.undirected();
    let mut dir = Director { d: from_sorted_lists(sorted_lists(&peel_orientation(&und))), t: 1, audit: Vec::new() };
    while dir.t < t.max(1) {
        dir = enhance(&und, &dir);
    }
    dir
}

/// Director of one tree node on local ids, with `W_0` for internal nodes.
#[derive(Clone, Debug)]
pub struct NodeDirector {
    pub d: Orientation,
    /// `W_0` membership per local id; empty for leaves.
    pub w0: Vec<bool>,
}

/// One child of a node as seen by [`combine_directors`].
pub struct ChildDirector<'a> {
    pub d: &'a Orientation,
    /// Child local id to parent local id.
    pub parent_local: &'a [Vertex],
}

/// Combines child directors into a director of the node graph `h`:
/// vertices of each part keep their child out-arcs, and `W_0` (the
/// separator plus part vertices within distance `t` of it in the child
/// directors) also takes its out-arcs from a fresh `t`-director of `h`.
pub fn combine_directors(h: &Graph, u0: &[Vertex], children: &[ChildDirector<'_>], t: u32) -> NodeDirector {
    let k = h.n();
    let mut in_u0 = vec![false; k];
    for &x in u0 {
        in_u0[x as usize] = true;
    }
    let mut w0 = in_u0.clone();
    let mut lists: Vec<Vec<Vertex>> = vec![Vec::new(); k];
    for c in children {
        let kc = c.parent_local.len();
        let sources: Vec<Vertex> = (0..kc as Vertex).filter(|&x| in_u0[c.parent_local[x as usize] as usize]).collect();
        let mut bfs = BfsScratch::new(kc);
        bfs.run(&sources, t, |a| c.d.out(a).iter().copied());
        for &x in bfs.visited() {
            w0[c.parent_local[x as usize] as usize] = true;
        }
        for x in 0..kc {
            let p = c.parent_local[x] as usize;
            if !in_u0[p] {
                lists[p].extend(c.d.out(x as Vertex).iter().map(|&y| c.parent_local[y as usize]));
            }
        }
    }
    if w0.iter().any(|&w| w) {
        let fresh = t_director(h, t);
        for (u, l) in lists.iter_mut().enumerate() {
            if w0[u] {
                l.extend_from_slice(fresh.d.out(u as Vertex));
            }
        }
    }
    NodeDirector { d: from_sorted_lists(lists), w0 }
}

/// The `t`-director of a leaf graph given in canonical labeling.
pub fn leaf_director(canonical: &Graph, t: u32) -> Orientation {
    t_director(canonical, t).d
}

/// Directors of every tree node, children before parents. Leaves use the
/// director of their canonical graph, mapped back to local ids.
pub fn tree_directors(tree: &DecompositionTree, t: u32) -> Vec<NodeDirector> {
    let mut out: Vec<Option<NodeDirector>> = vec![None; tree.nodes.len()];
    for idx in (0..tree.nodes.len()).rev() {
        let node = &tree.nodes[idx];
        let nd = match &node.body {
            Body::Leaf { .. } => {
                let perm: Vec<Vertex> = node.labels.iter().map(|&l| l - 1).collect();
                let mut order = vec![0 as Vertex; node.k()];
                for (x, &p) in perm.iter().enumerate() {
                    order[p as usize] = x as Vertex;
                }
                let dc = leaf_director(&node.graph.permute(&perm), t);
                let lists = perm.iter().map(|&p| dc.out(p).iter().map(|&q| order[q as usize]).collect()).collect();
                NodeDirector { d: from_sorted_lists(lists), w0: Vec::new() }
            }
            Body::Internal(sp) => {
                let kids: Vec<ChildDirector<'_>> = sp
                    .children
                    .iter()
                    .map(|&c| ChildDirector {
                        d: &out[c].as_ref().expect("children come first").d,
                        parent_local: &tree.nodes[c].parent_local,
                    })
                    .collect();
                combine_directors(&node.graph, &sp.u0, &kids, t)
            }
        };
        out[idx] = Some(nd);
    }
    out.into_iter().map(|d| d.expect("every node visited")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::encode_base;
    use crate::corpus;

    fn und(n: usize, e: &[(Vertex, Vertex)]) -> Graph {
        Graph::build(n, e, None, true).unwrap()
    }

    fn orient(n: usize, arcs: &[(Vertex, Vertex)]) -> Orientation {
        let mut lists = vec![Vec::new(); n];
        for &(a, b) in arcs {
            lists[a as usize].push(b);
        }
        from_sorted_lists(lists)
    }

    #[test]
    fn directive_examples() {
        let path = und(3, &[(0, 1), (1, 2)]);
        assert!(is_directive(&path, &orient(3, &[(0, 1), (1, 2)]), 0, 2));
        assert!(is_directive(&path, &orient(3, &[(0, 1), (1, 2)]), 0, 1));
        // u - x - v with both arcs leaving x
        let star = und(3, &[(0, 1), (1, 2)]);
        assert!(!is_directive(&star, &orient(3, &[(1, 0), (1, 2)]), 0, 2));
        let split = und(4, &[(0, 1), (2, 3)]);
        assert!(!is_directive(&split, &orient(4, &[(0, 1), (2, 3)]), 0, 3));
    }

    #[test]
    fn one_director_is_peeling() {
        let g = corpus::grid(6, 6);
        let d = t_director(&g, 1);
        assert_eq!(d.d.arcs().collect::<Vec<_>>(), from_sorted_lists(sorted_lists(&peel_orientation(&g))).arcs().collect::<Vec<_>>());
        assert!(d.audit.is_empty());
    }

    #[test]
    fn pivot_pair_of_a_two_star() {
        let g = und(3, &[(0, 1), (1, 2)]);
        let d = orient(3, &[(1, 0), (1, 2)]);
        let pairs = pivoted_pairs(&g, &d, &d, 1);
        assert!(pairs.arcs.contains(&(0, 2)));
        let i = pairs.arcs.iter().position(|&a| a == (0, 2)).unwrap();
        assert_eq!(pairs.paths[i][1], 1);
        validate_pivot_pairs(&g, &d, &d, 1, &pairs).unwrap();
        let po = orient_pivot_graph(3, &d, 1, &pairs);
        validate_classes(&d, 1, &pairs, &po).unwrap();
        // the enhanced director makes the pair directive
        let dir = enhance(&g, &Director { d, t: 1, audit: Vec::new() });
        assert!(is_directive(&g, &dir.d, 0, 2) && is_directive(&g, &dir.d, 2, 0));
        assert_eq!(dir.audit, vec![vec![0, 1]]);
    }

    #[test]
    fn empty_pivot_graph_gives_empty_orientation() {
        let g = und(2, &[(0, 1)]);
        let d = orient(2, &[(0, 1)]);
        let pairs = pivoted_pairs(&g, &d, &d, 1);
        assert!(pairs.arcs.is_empty());
        assert_eq!(orient_pivot_graph(2, &d, 1, &pairs).d.arc_count(), 0);
    }

    #[test]
    fn small_corpus_directors_are_complete() {
        let arcs: Vec<_> = (1..50u32).map(|i| (i - 1, i)).collect();
        let path = und(50, &arcs);
        for (g, t) in [
            (path, 3),
            (corpus::grid(16, 16), 2),
            (corpus::random_tree(200, 3), 3),
            (corpus::maximal_planar(150, 4), 3),
            (corpus::degenerate(150, 3, 5), 3),
        ] {
            let dir = t_director(&g, t);
            let r = director_report(&g, &dir.d, t, None);
            assert!(r.ok(), "{r:?}");
        }
    }

    #[test]
    fn enhancement_steps_validate() {
        let g = corpus::maximal_planar(200, 9);
        let d1 = t_director(&g, 1);
        let d2 = enhance(&g, &d1);
        for (base, j_max) in [(&d1.d, 1u32), (&d2.d, 2)] {
            let mut dj = base.clone();
            for j in 1..=j_max {
                let pairs = pivoted_pairs(&g, base, &dj, j);
                validate_pivot_pairs(&g, base, &dj, j, &pairs).unwrap();
                let po = orient_pivot_graph(g.n(), &dj, j, &pairs);
                validate_classes(&dj, j, &pairs, &po).unwrap();
                let mut lists = sorted_lists(&dj);
                for (&(u, v), p) in pairs.arcs.iter().zip(&pairs.paths) {
                    if po.d.has_arc(u, v) {
                        lists[u as usize].push(p[1]);
                    }
                    if po.d.has_arc(v, u) {
                        lists[v as usize].push(p[p.len() - 2]);
                    }
                }
                dj = from_sorted_lists(lists);
            }
        }
    }

    #[test]
    fn combined_tree_directors_are_complete() {
        for (g, t) in [
            (corpus::grid(15, 20), 3),
            (corpus::random_tree(300, 2), 3),
            (corpus::maximal_planar(300, 6), 2),
            (corpus::maximal_planar(300, 6), 1),
        ] {
            let enc = encode_base(&g);
            let dirs = tree_directors(&enc.tree, t);
            let r = director_report(&g, &dirs[0].d, t, None);
            assert!(r.ok(), "{r:?}");
            // each node's director covers its node graph
            for (node, nd) in enc.tree.nodes.iter().zip(&dirs) {
                assert!(nd.d.validate(&node.graph.undirected()));
            }
        }
    }

    #[test]
    fn p0_combination_is_the_fresh_director() {
        let g = corpus::grid(4, 4);
        let all: Vec<Vertex> = g.vertices().collect();
        let nd = combine_directors(&g, &all, &[], 2);
        let fresh = t_director(&g, 2);
        assert_eq!(nd.d.arcs().collect::<Vec<_>>(), fresh.d.arcs().collect::<Vec<_>>());
    }
}
