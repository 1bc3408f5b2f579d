//! The recursive encoded string `code(H)` and its decoder.
//!
//! A leaf is its code-book code. An internal node is the prefixed
//! concatenation of `code(H_0), code(H_1), .., code(H_p)` where `code(H_0)`
//! holds, in order:
//!
//! * `γ(k)`, `γ(|U_0|)` and `γ(|E(H_0)|)` (edges counted once when the
//!   input is symmetric);
//! * the edges of `H_0` as pairs of `U_0` labels;
//! * per child: a leaf flag, `γ(c)` and `c` pairs (child label, `U_0` label),
//!   one per copy of a `U_0` vertex in the child;
//! * the colors of `U_0` in label order.
//!
//! Labels are written 0-based in `⌈log2 k⌉`-bit fields. Decoding rebuilds
//! `H` under the labeling `L_H`: `U_0` first, then the non-copy vertices of
//! each child in child-label order.

use crate::bits::{write_gamma, BitSlice, BitString};
use crate::codec::codebook::Codebook;
use crate::codec::tree::{label_width, Body, DecompositionTree, Node};
use crate::concat::{concat, ConcatView};
use crate::error::FormatError;
use crate::graph::{Graph, Vertex};

/// Nesting deeper than this is treated as corruption.
pub const MAX_DEPTH: usize = 64;

/// `code(H_0)` for an internal node whose labels are assigned.
pub fn encode_h0(tree: &DecompositionTree, node: &Node, symmetric: bool, color_width: usize) -> BitString {
    let sp = node.split().expect("internal node");
    let k = node.k();
    let w = label_width(k);
    let mut out = BitString::new();
    write_gamma(&mut out, k as u64);
    write_gamma(&mut out, sp.u0.len() as u64);
    let mut edges: Vec<(Vertex, Vertex)> = sp.h0.arcs().filter(|&(a, b)| !symmetric || a < b).collect();
    edges.sort_unstable();
    write_gamma(&mut out, edges.len() as u64);
    for (a, b) in edges {
        out.push_bits(a as u64, w);
        out.push_bits(b as u64, w);
    }
    for &c in &sp.children {
        let child = &tree.nodes[c];
        out.push(child.is_leaf());
        let mut copies: Vec<(u32, u32)> = child
            .parent_local
            .iter()
            .enumerate()
            .filter_map(|(cl, &pl)| sp.u0.binary_search(&pl).ok().map(|j| (child.labels[cl] - 1, j as u32)))
            .collect();
        copies.sort_unstable();
        write_gamma(&mut out, copies.len() as u64);
        for (a, b) in copies {
            out.push_bits(a as u64, w);
            out.push_bits(b as u64, w);
        }
    }
    if color_width > 0 {
        for &x in &sp.u0 {
            out.push_bits(node.graph.color(x).unwrap_or(0) as u64, color_width);
        }
    }
    out
}

/// `code(H)` for every node, children before parents. Needs labels and
/// leaf codes.
pub fn encode_nodes(tree: &DecompositionTree, leaf_codes: &[Option<BitString>], symmetric: bool, color_width: usize) -> Vec<BitString> {
    let mut codes: Vec<BitString> = vec![BitString::new(); tree.nodes.len()];
    for i in (0..tree.nodes.len()).rev() {
        let node = &tree.nodes[i];
        codes[i] = match &node.body {
            Body::Leaf { .. } => leaf_codes[i].clone().expect("every leaf has a code"),
            Body::Internal(sp) => {
                let mut parts = vec![encode_h0(tree, node, symmetric, color_width)];
                for &c in &sp.children {
                    parts.push(std::mem::take(&mut codes[c]));
                }
                concat(&parts)
            }
        };
    }
    codes
}

/// Parsed `code(H_0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H0Record {
    pub k: usize,
    pub u0: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    pub children: Vec<ChildRecord>,
    pub colors: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChildRecord {
    pub leaf: bool,
    /// `(child label, U_0 label)`, both 0-based.
    pub copies: Vec<(Vertex, Vertex)>,
}

/// Parses `code(H_0)` of a node with `p` children.
pub fn parse_h0(bits: BitSlice<'_>, p: usize, max_k: usize, color_width: usize) -> Result<H0Record, FormatError> {
    let mut r = bits.reader();
    let k = r.read_gamma()? as usize;
    let u0 = r.read_gamma()? as usize;
    if k > max_k || u0 > k {
        return Err(FormatError::Inconsistent("node size"));
    }
    let w = label_width(k);
    let e = r.read_gamma()? as usize;
    if e > r.remaining() / (2 * w) {
        return Err(FormatError::Truncated("edge list of H0"));
    }
    let mut edges = Vec::with_capacity(e);
    for _ in 0..e {
        let a = r.read(w)? as Vertex;
        let b = r.read(w)? as Vertex;
        if a as usize >= u0 || b as usize >= u0 || a == b {
            return Err(FormatError::Inconsistent("edge of H0 outside U0"));
        }
        edges.push((a, b));
    }
    let mut children = Vec::with_capacity(p);
    for _ in 0..p {
        let leaf = r.read_bit()?;
        let c = r.read_gamma()? as usize;
        if c > r.remaining() / (2 * w) {
            return Err(FormatError::Truncated("copy list"));
        }
        let mut copies = Vec::with_capacity(c);
        for _ in 0..c {
            let a = r.read(w)? as Vertex;
            let b = r.read(w)? as Vertex;
            if b as usize >= u0 {
                return Err(FormatError::Inconsistent("copy of a vertex outside U0"));
            }
            copies.push((a, b));
        }
        children.push(ChildRecord { leaf, copies });
    }
    let colors = if color_width > 0 {
        if r.remaining() < u0 * color_width {
            return Err(FormatError::Truncated("colors of U0"));
        }
        Some((0..u0).map(|_| r.read(color_width).map(|c| c as u32)).collect::<Result<_, _>>()?)
    } else {
        None
    };
    if r.remaining() != 0 {
        return Err(FormatError::Inconsistent("trailing bits in H0"));
    }
    Ok(H0Record { k, u0, edges, children, colors })
}

/// Decodes `code(H)` into `H` on vertices `0..k` (vertex `j` has label
/// `j + 1`).
pub fn decode_node(bits: BitSlice<'_>, leaf: bool, cb: &Codebook, max_k: usize, depth: usize) -> Result<Graph, FormatError> {
    if depth > MAX_DEPTH {
        return Err(FormatError::Inconsistent("decomposition nested too deeply"));
    }
    if leaf {
        let e = cb.decode(bits)?;
        if e.k > max_k {
            return Err(FormatError::Inconsistent("leaf larger than its parent"));
        }
        return Ok(e.graph.clone());
    }
    let v = ConcatView::parse(bits)?;
    if v.part_count() == 0 {
        return Err(FormatError::Inconsistent("internal node without H0"));
    }
    let p = v.part_count() - 1;
    let rec = parse_h0(v.part(1)?, p, max_k, cb.color_width())?;
    if rec.k <= cb.ell {
        return Err(FormatError::Inconsistent("internal node within the leaf threshold"));
    }
    let k = rec.k;
    let symmetric = cb.layout.symmetric;
    let mut lists: Vec<Vec<Vertex>> = vec![Vec::new(); k];
    for &(a, b) in &rec.edges {
        lists[a as usize].push(b);
        if symmetric {
            lists[b as usize].push(a);
        }
    }
    let mut colors: Option<Vec<u32>> = rec.colors.as_ref().map(|c| {
        let mut all = c.clone();
        all.resize(k, 0);
        all
    });
    let mut next = rec.u0;
    for (i, child) in rec.children.iter().enumerate() {
        let h = decode_node(v.part(i + 2)?, child.leaf, cb, k - 1, depth + 1)?;
        let ki = h.n();
        let mut map = vec![Vertex::MAX; ki];
        for &(cl, pl) in &child.copies {
            let slot = map.get_mut(cl as usize).ok_or(FormatError::Inconsistent("copy label outside child"))?;
            if *slot != Vertex::MAX {
                return Err(FormatError::Inconsistent("repeated copy in child"));
            }
            *slot = pl;
        }
        let mut seen_u0: Vec<Vertex> = child.copies.iter().map(|c| c.1).collect();
        seen_u0.sort_unstable();
        if seen_u0.windows(2).any(|w| w[0] == w[1]) {
            return Err(FormatError::Inconsistent("two copies of one vertex in a child"));
        }
        for (cl, slot) in map.iter_mut().enumerate() {
            if *slot == Vertex::MAX {
                if next >= k {
                    return Err(FormatError::Inconsistent("children hold more vertices than the node"));
                }
                *slot = next as Vertex;
                if let (Some(all), Some(hc)) = (colors.as_mut(), h.colors()) {
                    all[next] = hc[cl];
                }
                next += 1;
            }
        }
        for (a, b) in h.arcs() {
            lists[map[a as usize] as usize].push(map[b as usize]);
        }
    }
    if next != k {
        return Err(FormatError::Inconsistent("node size disagrees with its parts"));
    }
    for l in &lists {
        let mut s = l.clone();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(FormatError::Inconsistent("repeated arc"));
        }
    }
    if colors.is_some() != cb.colored {
        return Err(FormatError::Inconsistent("color presence"));
    }
    Ok(Graph::from_lists(lists, colors))
}
