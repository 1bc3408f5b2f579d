//! Directed simple graphs, orientations and the primitive operations the
//! rest of the crate is built on.
//!
//! Vertices are dense `u32` ids in `[0, n)`. Adjacency is stored in CSR form
//! with per-vertex out-lists kept in the order they were supplied.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::GraphError;

pub type Vertex = u32;

/// A directed simple graph with optional vertex colors.
#[derive(Clone)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
    colors: Option<Vec<u32>>,
    hadwiger_bound: Option<u32>,
}

impl Graph {
    /// Builds and validates a graph from an arc list.
    ///
    /// With `undirected` set every pair is inserted in both directions, so the
    /// result is symmetric. Self-loops, out-of-range endpoints and repeated
    /// arcs are rejected with the offending pair.
    pub fn build(
        n: usize,
        arcs: &[(Vertex, Vertex)],
        colors: Option<Vec<u32>>,
        undirected: bool,
    ) -> Result<Graph, GraphError> {
        if n > u32::MAX as usize {
            return Err(GraphError::TooLarge(n));
        }
        let mut seen = HashSet::with_capacity(arcs.len() * if undirected { 2 } else { 1 });
        let mut lists: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for &(u, v) in arcs {
            if u as usize >= n || v as usize >= n {
                return Err(GraphError::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { u });
            }
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateArc { u, v });
            }
            lists[u as usize].push(v);
            if undirected {
                if !seen.insert((v, u)) {
                    return Err(GraphError::DuplicateArc { u: v, v: u });
                }
                lists[v as usize].push(u);
            }
        }
        if let Some(c) = &colors {
            if c.len() != n {
                return Err(GraphError::ColorCount { expected: n, got: c.len() });
            }
        }
        Ok(Graph::from_lists(lists, colors))
    }

    /// Builds a graph from out-lists without validation. Callers guarantee
    /// the simple-graph invariants.
    pub(crate) fn from_lists(lists: Vec<Vec<Vertex>>, colors: Option<Vec<u32>>) -> Graph {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        let total: usize = lists.iter().map(Vec::len).sum();
        let mut targets = Vec::with_capacity(total);
        offsets.push(0);
        for l in lists {
            targets.extend_from_slice(&l);
            offsets.push(targets.len());
        }
        Graph { offsets, targets, colors, hadwiger_bound: None }
    }

    pub fn empty(n: usize) -> Graph {
        Graph { offsets: vec![0; n + 1], targets: Vec::new(), colors: None, hadwiger_bound: None }
    }

    pub fn with_hadwiger_bound(mut self, h: u32) -> Graph {
        self.hadwiger_bound = Some(h);
        self
    }

    pub fn hadwiger_bound(&self) -> Option<u32> {
        self.hadwiger_bound
    }

    pub fn with_colors(mut self, colors: Option<Vec<u32>>) -> Graph {
        assert!(colors.as_ref().is_none_or(|c| c.len() == self.n()));
        self.colors = colors;
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    #[inline]
    pub fn out(&self, u: Vertex) -> &[Vertex] {
        let u = u as usize;
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    #[inline]
    pub fn out_degree(&self, u: Vertex) -> usize {
        let u = u as usize;
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.out(u).contains(&v)
    }

    pub fn colors(&self) -> Option<&[u32]> {
        self.colors.as_deref()
    }

    pub fn color(&self, u: Vertex) -> Option<u32> {
        self.colors.as_ref().map(|c| c[u as usize])
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n() as Vertex
    }

    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| self.out(u).iter().map(move |&v| (u, v)))
    }

    /// Arc list sorted lexicographically.
    pub fn sorted_arcs(&self) -> Vec<(Vertex, Vertex)> {
        let mut a: Vec<_> = self.arcs().collect();
        a.sort_unstable();
        a
    }

    /// True when every arc has its reverse.
    pub fn is_symmetric(&self) -> bool {
        let set: HashSet<(Vertex, Vertex)> = self.arcs().collect();
        set.iter().all(|&(u, v)| set.contains(&(v, u)))
    }

    /// The underlying undirected graph `G ∪ G^r`, stored symmetrically.
    pub fn undirected(&self) -> Graph {
        let n = self.n();
        let mut lists: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for (u, v) in self.arcs() {
            lists[u as usize].push(v);
            lists[v as usize].push(u);
        }
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        Graph::from_lists(lists, self.colors.clone())
    }

    /// The reverse graph: `(u, v)` is an arc iff `(v, u)` is an arc of `self`.
    pub fn reverse(&self) -> Graph {
        let n = self.n();
        let mut lists: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for (u, v) in self.arcs() {
            lists[v as usize].push(u);
        }
        let mut g = Graph::from_lists(lists, self.colors.clone());
        g.hadwiger_bound = self.hadwiger_bound;
        g
    }

    /// Largest color value plus one, or 0 for uncolored graphs.
    pub fn palette_size(&self) -> u32 {
        self.colors.as_ref().map_or(0, |c| c.iter().copied().max().map_or(0, |m| m + 1))
    }

    /// Relabels vertex `u` as `perm[u]`.
    pub fn permute(&self, perm: &[Vertex]) -> Graph {
        let n = self.n();
        assert_eq!(perm.len(), n);
        let mut lists: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for u in self.vertices() {
            lists[perm[u as usize] as usize] = self.out(u).iter().map(|&v| perm[v as usize]).collect();
        }
        let colors = self.colors.as_ref().map(|c| {
            let mut out = vec![0; n];
            for (u, &col) in c.iter().enumerate() {
                out[perm[u] as usize] = col;
            }
            out
        });
        Graph::from_lists(lists, colors)
    }
}

impl PartialEq for Graph {
    /// Graphs are equal when they have the same vertex count, arc set and
    /// colors; out-list order is not significant.
    fn eq(&self, other: &Graph) -> bool {
        self.n() == other.n() && self.colors == other.colors && self.sorted_arcs() == other.sorted_arcs()
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("arcs", &self.sorted_arcs())
            .field("colors", &self.colors)
            .finish()
    }
}

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new(mut ids: Vec<Vertex>) -> VertexSet {
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    pub(crate) fn from_sorted(ids: Vec<Vertex>) -> VertexSet {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        VertexSet(ids)
    }

    pub fn all(n: usize) -> VertexSet {
        VertexSet((0..n as Vertex).collect())
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// A subgraph with its own dense labels and the map back to host ids.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    /// `global[local]` is the host vertex id.
    pub global: Vec<Vertex>,
}

/// `N_G(U)`: vertices outside `U` joined to `U` by an arc in either direction.
pub fn neighborhood(g: &Graph, u: &VertexSet) -> VertexSet {
    let mut in_u = vec![false; g.n()];
    for x in u.iter() {
        in_u[x as usize] = true;
    }
    let mut hit = vec![false; g.n()];
    for (a, b) in g.arcs() {
        if in_u[a as usize] && !in_u[b as usize] {
            hit[b as usize] = true;
        }
        if in_u[b as usize] && !in_u[a as usize] {
            hit[a as usize] = true;
        }
    }
    VertexSet::from_sorted((0..g.n() as Vertex).filter(|&v| hit[v as usize]).collect())
}

/// `G(U)`: the closed neighborhood of `U` keeping only arcs with an endpoint in `U`.
pub fn quasi_neighborhood(g: &Graph, u: &VertexSet) -> Subgraph {
    let mut in_u = vec![false; g.n()];
    for x in u.iter() {
        in_u[x as usize] = true;
    }
    let mut keep = in_u.clone();
    for (a, b) in g.arcs() {
        if in_u[a as usize] || in_u[b as usize] {
            keep[a as usize] = true;
            keep[b as usize] = true;
        }
    }
    let global: Vec<Vertex> = (0..g.n() as Vertex).filter(|&v| keep[v as usize]).collect();
    let mut local = vec![Vertex::MAX; g.n()];
    for (i, &v) in global.iter().enumerate() {
        local[v as usize] = i as Vertex;
    }
    let lists = global
        .iter()
        .map(|&a| {
            g.out(a)
                .iter()
                .filter(|&&b| in_u[a as usize] || in_u[b as usize])
                .map(|&b| local[b as usize])
                .collect()
        })
        .collect();
    let colors = g.colors().map(|c| global.iter().map(|&v| c[v as usize]).collect());
    Subgraph { graph: Graph::from_lists(lists, colors), global }
}

/// Induced subgraph on the given (sorted) vertex list.
pub fn induced(g: &Graph, vertices: &[Vertex]) -> Subgraph {
    let mut local = vec![Vertex::MAX; g.n()];
    for (i, &v) in vertices.iter().enumerate() {
        local[v as usize] = i as Vertex;
    }
    let lists = vertices
        .iter()
        .map(|&a| {
            g.out(a)
                .iter()
                .filter(|&&b| local[b as usize] != Vertex::MAX)
                .map(|&b| local[b as usize])
                .collect()
        })
        .collect();
    let colors = g.colors().map(|c| vertices.iter().map(|&v| c[v as usize]).collect());
    Subgraph { graph: Graph::from_lists(lists, colors), global: vertices.to_vec() }
}

/// An assignment of every edge of a graph to at least one direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    arcs: Graph,
    cap: usize,
}

impl Orientation {
    pub fn from_lists(lists: Vec<Vec<Vertex>>) -> Orientation {
        let cap = lists.iter().map(Vec::len).max().unwrap_or(0);
        Orientation { arcs: Graph::from_lists(lists, None), cap }
    }

    pub fn empty(n: usize) -> Orientation {
        Orientation { arcs: Graph::empty(n), cap: 0 }
    }

    pub fn n(&self) -> usize {
        self.arcs.n()
    }

    #[inline]
    pub fn out(&self, u: Vertex) -> &[Vertex] {
        self.arcs.out(u)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.arc_count()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.arcs.arcs()
    }

    pub fn as_graph(&self) -> &Graph {
        &self.arcs
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.arcs.has_arc(u, v)
    }

    /// Checks `D ∪ D^r = G ∪ G^r` by comparing undirected edge sets.
    pub fn validate(&self, g: &Graph) -> bool {
        if self.n() != g.n() {
            return false;
        }
        let norm = |(a, b): (Vertex, Vertex)| if a < b { (a, b) } else { (b, a) };
        let mine: BTreeSet<_> = self.arcs().map(norm).collect();
        let theirs: BTreeSet<_> = g.arcs().map(norm).collect();
        mine == theirs
    }
}

/// Repeatedly removes a minimum-degree vertex (lowest id on ties) and orients
/// its remaining edges away from it. Returns the orientation and the removal
/// order.
pub fn peel(g: &Graph) -> (Orientation, Vec<Vertex>) {
    let und = g.undirected();
    let n = und.n();
    let mut degree: Vec<usize> = (0..n as Vertex).map(|u| und.out_degree(u)).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); max_deg + 1];
    for u in 0..n {
        buckets[degree[u]].insert(u as Vertex);
    }
    let mut removed = vec![false; n];
    let mut lists: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut low = 0;
    for _ in 0..n {
        while buckets[low].is_empty() {
            low += 1;
        }
        let u = buckets[low].pop_first().expect("non-empty bucket");
        removed[u as usize] = true;
        order.push(u);
        for &v in und.out(u) {
            if removed[v as usize] {
                continue;
            }
            lists[u as usize].push(v);
            let d = degree[v as usize];
            buckets[d].remove(&v);
            buckets[d - 1].insert(v);
            degree[v as usize] = d - 1;
            if d - 1 < low {
                low = d - 1;
            }
        }
    }
    (Orientation::from_lists(lists), order)
}

/// Degeneracy orientation of the underlying undirected graph.
pub fn peel_orientation(g: &Graph) -> Orientation {
    peel(g).0
}

/// Distances from `u` along arcs, truncated at `radius`.
pub fn bounded_bfs(g: &Graph, u: Vertex, radius: u32) -> BTreeMap<Vertex, u32> {
    let mut dist = BTreeMap::new();
    dist.insert(u, 0);
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d == radius {
            continue;
        }
        for &y in g.out(x) {
            if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(y) {
                e.insert(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Proper coloring of the underlying undirected graph: vertices are colored
/// in reverse peeling order with the smallest color unused by neighbors that
/// were peeled later.
pub fn greedy_color(g: &Graph) -> Vec<u32> {
    let und = g.undirected();
    let (_, order) = peel(&und);
    let mut color = vec![u32::MAX; und.n()];
    let mut used = Vec::new();
    for &u in order.iter().rev() {
        used.clear();
        used.extend(und.out(u).iter().map(|&v| color[v as usize]).filter(|&c| c != u32::MAX));
        used.sort_unstable();
        used.dedup();
        let mut c = 0;
        for &x in &used {
            if x == c {
                c += 1;
            } else if x > c {
                break;
            }
        }
        color[u as usize] = c;
    }
    color
}

/// Reusable BFS scratch space for repeated bounded searches on one graph.
pub(crate) struct BfsScratch {
    dist: Vec<u32>,
    touched: Vec<Vertex>,
}

impl BfsScratch {
    pub(crate) fn new(n: usize) -> Self {
        BfsScratch { dist: vec![u32::MAX; n], touched: Vec::new() }
    }

    /// Runs a BFS along `next` from the given sources up to `radius`. The
    /// visited vertices (in BFS order) and their distances stay readable
    /// until the next call.
    pub(crate) fn run<F, I>(&mut self, sources: &[Vertex], radius: u32, mut next: F)
    where
        F: FnMut(Vertex) -> I,
        I: IntoIterator<Item = Vertex>,
    {
        for &v in &self.touched {
            self.dist[v as usize] = u32::MAX;
        }
        self.touched.clear();
        for &s in sources {
            if self.dist[s as usize] == u32::MAX {
                self.dist[s as usize] = 0;
                self.touched.push(s);
            }
        }
        let mut head = 0;
        while head < self.touched.len() {
            let x = self.touched[head];
            head += 1;
            let d = self.dist[x as usize];
            if d >= radius {
                continue;
            }
            for y in next(x) {
                if self.dist[y as usize] == u32::MAX {
                    self.dist[y as usize] = d + 1;
                    self.touched.push(y);
                }
            }
        }
    }

    pub(crate) fn visited(&self) -> &[Vertex] {
        &self.touched
    }

    #[inline]
    pub(crate) fn dist(&self, v: Vertex) -> u32 {
        self.dist[v as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::build(3, &[(0, 1), (1, 2)], None, true).unwrap()
    }

    #[test]
    fn build_symmetrizes_undirected_input() {
        let g = path3();
        assert_eq!(g.sorted_arcs(), vec![(0, 1), (1, 0), (1, 2), (2, 1)]);
        assert!(g.is_symmetric());
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(Graph::build(3, &[(0, 0)], None, false).unwrap_err(), GraphError::SelfLoop { u: 0 });
        assert!(matches!(
            Graph::build(3, &[(0, 3)], None, false),
            Err(GraphError::EndpointOutOfRange { u: 0, v: 3, n: 3 })
        ));
        assert_eq!(
            Graph::build(3, &[(0, 1), (0, 1)], None, false).unwrap_err(),
            GraphError::DuplicateArc { u: 0, v: 1 }
        );
        assert_eq!(
            Graph::build(3, &[(0, 1), (1, 0)], None, true).unwrap_err(),
            GraphError::DuplicateArc { u: 1, v: 0 }
        );
        let single = Graph::build(1, &[], None, false).unwrap();
        assert_eq!(single.n(), 1);
        assert_eq!(single.arc_count(), 0);
    }

    #[test]
    fn reverse_flips_arcs() {
        let g = Graph::build(2, &[(0, 1)], None, false).unwrap();
        assert_eq!(g.reverse().sorted_arcs(), vec![(1, 0)]);
        assert_eq!(path3().reverse(), path3());
    }

    #[test]
    fn neighborhood_of_middle_vertex() {
        let g = path3();
        assert_eq!(neighborhood(&g, &VertexSet::new(vec![1])).as_slice(), &[0, 2]);
        assert!(neighborhood(&g, &VertexSet::all(3)).is_empty());
    }

    #[test]
    fn quasi_neighborhood_drops_far_edges() {
        let tri = Graph::build(3, &[(0, 1), (1, 2), (0, 2)], None, true).unwrap();
        let sub = quasi_neighborhood(&tri, &VertexSet::new(vec![0]));
        assert_eq!(sub.global, vec![0, 1, 2]);
        assert_eq!(sub.graph.sorted_arcs(), vec![(0, 1), (0, 2), (1, 0), (2, 0)]);
        let all = quasi_neighborhood(&tri, &VertexSet::all(3));
        assert_eq!(all.graph, tri);
    }

    #[test]
    fn peel_path_and_triangle() {
        let d = peel_orientation(&path3());
        assert_eq!(d.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(d.cap(), 1);
        assert!(d.validate(&path3()));
        let k3 = Graph::build(3, &[(0, 1), (1, 2), (0, 2)], None, true).unwrap();
        assert_eq!(peel_orientation(&k3).cap(), 2);
        let empty = Graph::empty(5);
        let d = peel_orientation(&empty);
        assert_eq!((d.arc_count(), d.cap()), (0, 0));
    }

    #[test]
    fn bounded_bfs_truncates() {
        let g = Graph::build(3, &[(0, 1), (1, 2)], None, false).unwrap();
        let d = bounded_bfs(&g, 0, 1);
        assert_eq!(d.into_iter().collect::<Vec<_>>(), vec![(0, 0), (1, 1)]);
        assert_eq!(bounded_bfs(&g, 0, 0).len(), 1);
    }

    #[test]
    fn greedy_color_small_cases() {
        assert!(greedy_color(&Graph::empty(4)).iter().all(|&c| c == 0));
        let p4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3)], None, true).unwrap();
        let c = greedy_color(&p4);
        assert_eq!(c.iter().max(), Some(&1));
        assert!(p4.arcs().all(|(u, v)| c[u as usize] != c[v as usize]));
    }
}
