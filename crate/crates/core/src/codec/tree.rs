//! The decomposition tree.
//!
//! A node `H` with more than `ℓ` vertices is split by a star partition
//! `(V_0..V_p)` into `U_0 = V_0 ∪ ∂H` and `U_i = V_i \ ∂H`. The node keeps
//! `H_0 = H[U_0]` explicitly and gets one child `H_i = H(U_i)` per nonempty
//! `U_i`. Every arc of the input lands in exactly one node.

use crate::bits::ceil_log2;
use crate::graph::{induced, Graph, Vertex};
use crate::partition::{star_partition_cover, star_partition_packed, undirected_lists};

/// Leaf threshold `ℓ = max(3, ⌈log2 log2 n⌉)`.
pub fn leaf_threshold(n: usize) -> usize {
    let l = (n.max(2) as f64).log2().log2().ceil();
    (l.max(0.0) as usize).max(3)
}

/// Shape of the decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeParams {
    /// Each level aims for parts about `1/shrink` the size of the node.
    pub shrink: usize,
    /// Nodes with at most this many vertices split straight into leaves.
    pub bottom: usize,
}

impl Default for TreeParams {
    fn default() -> Self {
        TreeParams { shrink: 16, bottom: 128 }
    }
}

impl TreeParams {
    /// Largest part the star partition of a `k`-vertex node may produce,
    /// or `None` when the parts are packed to fit leaves.
    pub fn target(&self, k: usize) -> Option<usize> {
        if k <= self.bottom {
            None
        } else {
            Some((k / self.shrink.max(2)).max(self.bottom / 2).max(1))
        }
    }
}

/// How a node splits into `H_0` and its children.
#[derive(Clone, Debug)]
pub struct Split {
    /// Local ids of `U_0`, ascending.
    pub u0: Vec<Vertex>,
    /// Local ids of each `U_i`, ascending.
    pub parts: Vec<Vec<Vertex>>,
    /// `H[U_0]`; vertex `j` is `u0[j]`.
    pub h0: Graph,
    /// Node indices of the children, aligned with `parts`.
    pub children: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum Body {
    Leaf {
        /// Whether this occurrence passes the near-empty-boundary test.
        star: bool,
    },
    Internal(Split),
}

#[derive(Clone, Debug)]
pub struct Node {
    /// The node's graph on local ids.
    pub graph: Graph,
    /// Local id to input vertex, ascending.
    pub global: Vec<Vertex>,
    /// Local id to the parent's local id; empty at the root.
    pub parent_local: Vec<Vertex>,
    /// `∂H` membership per local id.
    pub boundary: Vec<bool>,
    pub depth: usize,
    pub body: Body,
    /// Local id to `L_H` label (1-based); filled once leaves are canonized.
    pub labels: Vec<u32>,
}

impl Node {
    pub fn k(&self) -> usize {
        self.graph.n()
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.body, Body::Leaf { .. })
    }

    pub fn split(&self) -> Option<&Split> {
        match &self.body {
            Body::Internal(s) => Some(s),
            Body::Leaf { .. } => None,
        }
    }
}

/// The decomposition tree; node 0 is the root and parents precede children.
#[derive(Clone, Debug)]
pub struct DecompositionTree {
    pub nodes: Vec<Node>,
    pub ell: usize,
    pub n: usize,
}

/// Size statistics of a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeStats {
    pub nodes: usize,
    pub leaves: usize,
    pub height: usize,
    /// Sum of `|V(H)|` over leaves and `|U_0|` over internal nodes.
    pub vertex_copies: usize,
    /// Arcs stored across all nodes (in leaves and in `H_0` graphs).
    pub stored_arcs: usize,
}

impl DecompositionTree {
    pub fn root(&self) -> &Node {
        &self.nodes[0]
    }

    pub fn stats(&self) -> TreeStats {
        let mut s = TreeStats { nodes: self.nodes.len(), leaves: 0, height: 0, vertex_copies: 0, stored_arcs: 0 };
        for node in &self.nodes {
            s.height = s.height.max(node.depth);
            match &node.body {
                Body::Leaf { .. } => {
                    s.leaves += 1;
                    s.vertex_copies += node.k();
                    s.stored_arcs += node.graph.arc_count();
                }
                Body::Internal(sp) => {
                    s.vertex_copies += sp.u0.len();
                    s.stored_arcs += sp.h0.arc_count();
                }
            }
        }
        s
    }

    /// Leaf nodes in index order.
    pub fn leaves(&self) -> impl Iterator<Item = (usize, &Node)> {
        self.nodes.iter().enumerate().filter(|(_, n)| n.is_leaf())
    }
}

/// Λ* test threshold `max(1, ⌊k / max(1, log2² k)⌋)`.
pub fn star_threshold(k: usize) -> usize {
    let l = (k.max(1) as f64).log2();
    let div = (l * l).max(1.0);
    ((k as f64 / div).floor() as usize).max(1)
}

struct Builder<'a> {
    g: &'a Graph,
    gadj: Vec<Vec<Vertex>>,
    grev: Graph,
    mark: Vec<u32>,
    stamp: u32,
    ell: usize,
    params: TreeParams,
}

impl Builder<'_> {
    fn next_stamp(&mut self) -> u32 {
        self.stamp += 1;
        self.stamp
    }

    /// `∂H`: vertices of `H` with a neighbor in `G` outside `V(H)`.
    fn boundary(&mut self, global: &[Vertex]) -> Vec<bool> {
        let s = self.next_stamp();
        for &v in global {
            self.mark[v as usize] = s;
        }
        global
            .iter()
            .map(|&v| self.gadj[v as usize].iter().any(|&w| self.mark[w as usize] != s))
            .collect()
    }

    /// `H = G(U)` and `|N_G(U)|` within the threshold, for `U` given in
    /// input ids and `H` given by its arcs in input ids.
    fn occurrence_is_star(&mut self, h: &Graph, global: &[Vertex], u: &[Vertex]) -> bool {
        let s = self.next_stamp();
        for &x in u {
            self.mark[x as usize] = s;
        }
        let mut closed: Vec<Vertex> = u.to_vec();
        let mut arcs: Vec<(Vertex, Vertex)> = Vec::new();
        for &x in u {
            for &y in self.g.out(x) {
                arcs.push((x, y));
                closed.push(y);
            }
            for &y in self.grev.out(x) {
                if self.mark[y as usize] != s {
                    arcs.push((y, x));
                    closed.push(y);
                }
            }
        }
        closed.sort_unstable();
        closed.dedup();
        let boundary = closed.len() - u.len();
        if boundary > star_threshold(h.n()) || closed != global {
            return false;
        }
        arcs.sort_unstable();
        let mut mine: Vec<(Vertex, Vertex)> =
            h.arcs().map(|(a, b)| (global[a as usize], global[b as usize])).collect();
        mine.sort_unstable();
        mine == arcs
    }

    /// `H(U)` for local ids `u` of `h`: closed neighborhood keeping arcs
    /// incident to `U`. Returns the child graph and its local-to-parent map.
    fn quasi(&mut self, h: &Graph, hadj: &[Vec<Vertex>], u: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let s = self.next_stamp();
        let in_u = s;
        for &x in u {
            self.mark[x as usize] = in_u;
        }
        let mut verts: Vec<Vertex> = u.to_vec();
        for &x in u {
            verts.extend_from_slice(&hadj[x as usize]);
        }
        verts.sort_unstable();
        verts.dedup();
        // local index lookup via binary search keeps the scratch free
        let idx = |v: Vertex| verts.binary_search(&v).expect("closed neighborhood") as Vertex;
        let lists: Vec<Vec<Vertex>> = verts
            .iter()
            .map(|&a| {
                let a_in = self.mark[a as usize] == in_u;
                h.out(a)
                    .iter()
                    .filter(|&&b| a_in || self.mark[b as usize] == in_u)
                    .map(|&b| idx(b))
                    .collect()
            })
            .collect();
        let colors = h.colors().map(|c| verts.iter().map(|&v| c[v as usize]).collect());
        (Graph::from_lists(lists, colors), verts)
    }
}

/// Builds the decomposition tree of `g`.
pub fn build_tree(g: &Graph) -> DecompositionTree {
    build_tree_with(g, TreeParams::default())
}

pub fn build_tree_with(g: &Graph, params: TreeParams) -> DecompositionTree {
    let n = g.n();
    let ell = leaf_threshold(n);
    let mut b = Builder {
        g,
        gadj: undirected_lists(g),
        grev: g.reverse(),
        mark: vec![0; n.max(1)],
        stamp: 0,
        ell,
        params,
    };
    let root = Node {
        graph: g.clone(),
        global: (0..n as Vertex).collect(),
        parent_local: Vec::new(),
        boundary: vec![false; n],
        depth: 0,
        body: Body::Leaf { star: true },
        labels: Vec::new(),
    };
    let mut nodes = vec![root];
    let mut i = 0;
    while i < nodes.len() {
        if nodes[i].k() > ell {
            let split = split_node(&mut b, &nodes[i]);
            let depth = nodes[i].depth + 1;
            let mut children = Vec::with_capacity(split.parts.len());
            let (h, global) = (nodes[i].graph.clone(), nodes[i].global.clone());
            let hadj = undirected_lists(&h);
            for part in &split.parts {
                let (cg, cmap) = b.quasi(&h, &hadj, part);
                let cglobal: Vec<Vertex> = cmap.iter().map(|&x| global[x as usize]).collect();
                let boundary = b.boundary(&cglobal);
                let star = if cg.n() <= ell {
                    let u: Vec<Vertex> = part.iter().map(|&x| global[x as usize]).collect();
                    b.occurrence_is_star(&cg, &cglobal, &u)
                } else {
                    false
                };
                children.push(nodes.len());
                nodes.push(Node {
                    graph: cg,
                    global: cglobal,
                    parent_local: cmap,
                    boundary,
                    depth,
                    body: Body::Leaf { star },
                    labels: Vec::new(),
                });
            }
            nodes[i].body = Body::Internal(Split { children, ..split });
        }
        i += 1;
    }
    DecompositionTree { nodes, ell, n }
}

/// Computes `U_0..U_p` and `H_0` for an internal node. Parts whose closed
/// neighborhood is not smaller than the node are folded into `U_0`, so every
/// child is strictly smaller than its parent.
fn split_node(b: &mut Builder<'_>, node: &Node) -> Split {
    let h = &node.graph;
    let k = h.n();
    let sp = match b.params.target(k) {
        None => star_partition_packed(h, b.ell, &node.boundary),
        Some(t) => {
            let l = ceil_log2(k as u64);
            star_partition_cover(h, t, (l * l).max(b.ell), &node.boundary)
        }
    };
    let hadj = undirected_lists(h);
    let mut in_u0 = node.boundary.clone();
    for v in sp.v0.iter() {
        in_u0[v as usize] = true;
    }
    let mut parts = Vec::new();
    for part in &sp.parts {
        let u: Vec<Vertex> = part.iter().filter(|&v| !node.boundary[v as usize]).collect();
        if u.is_empty() {
            continue;
        }
        let s = b.next_stamp();
        let mut closed = u.len();
        for &x in &u {
            b.mark[x as usize] = s;
        }
        for &x in &u {
            for &y in &hadj[x as usize] {
                if b.mark[y as usize] != s {
                    b.mark[y as usize] = s;
                    closed += 1;
                }
            }
        }
        if closed >= k {
            for &x in &u {
                in_u0[x as usize] = true;
            }
        } else {
            parts.push(u);
        }
    }
    let u0: Vec<Vertex> = (0..k as Vertex).filter(|&v| in_u0[v as usize]).collect();
    let h0 = induced(h, &u0).graph;
    Split { u0, parts, h0, children: Vec::new() }
}

/// `⌈log2 k⌉`-bit field width used for labels inside a `k`-vertex node.
pub fn label_width(k: usize) -> usize {
    ceil_log2(k.max(2) as u64)
}
