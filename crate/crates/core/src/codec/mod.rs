//! Encoding pipeline: decomposition tree, code-book and recursive code.

pub mod canon;
pub mod code;
pub mod codebook;
pub mod tree;

use crate::bits::{BitSlice, BitString};
use crate::error::FormatError;
use crate::graph::{Graph, Vertex};

pub use canon::{canonicalize, CanonForm, CanonLayout, Canonizer};
pub use codebook::{color_width_for, Codebook};
pub use tree::{build_tree, build_tree_with, leaf_threshold, star_threshold, Body, DecompositionTree, Node, TreeParams};

/// Everything the encoder produces for the base string, kept for the
/// section builders.
#[derive(Clone, Debug)]
pub struct Encoding {
    pub tree: DecompositionTree,
    pub codebook: Codebook,
    pub layout: CanonLayout,
    /// `code(G)`.
    pub code: BitString,
}

impl Encoding {
    /// `L_G` label of every input vertex.
    pub fn root_labels(&self) -> &[u32] {
        &self.tree.nodes[0].labels
    }

    pub fn colored(&self) -> bool {
        self.layout.color_width > 0
    }
}

/// Leaf classification: `H = G(U)` and `|N_G(U)|` at most the threshold.
/// `u` and `h_vertices` are in input ids; `h_arcs` is the arc list of `H`
/// in input ids.
pub fn classify_leaf_occurrence(g: &Graph, h_vertices: &[Vertex], h_arcs: &[(Vertex, Vertex)], u: &[Vertex]) -> bool {
    let in_u: std::collections::HashSet<Vertex> = u.iter().copied().collect();
    let mut closed: Vec<Vertex> = u.to_vec();
    let mut arcs = Vec::new();
    for (a, b) in g.arcs() {
        if in_u.contains(&a) || in_u.contains(&b) {
            arcs.push((a, b));
            closed.push(a);
            closed.push(b);
        }
    }
    closed.sort_unstable();
    closed.dedup();
    let mut hv = h_vertices.to_vec();
    hv.sort_unstable();
    let mut ha = h_arcs.to_vec();
    ha.sort_unstable();
    arcs.sort_unstable();
    closed == hv && ha == arcs && closed.len() - u.len() <= star_threshold(h_vertices.len())
}

/// Runs the three encoding phases.
pub fn encode_base(g: &Graph) -> Encoding {
    encode_base_with(g, TreeParams::default())
}

pub fn encode_base_with(g: &Graph, params: TreeParams) -> Encoding {
    let mut tree = build_tree_with(g, params);
    let layout = CanonLayout { symmetric: g.is_symmetric(), color_width: color_width_for(g) };
    let mut canonizer = Canonizer::new();
    let mut forms: Vec<Option<CanonForm>> = vec![None; tree.nodes.len()];
    let mut records = Vec::new();
    for (i, node) in tree.nodes.iter().enumerate() {
        if let Body::Leaf { star } = node.body {
            let f = canonizer.canonicalize(&node.graph, layout).expect("leaves are within the canonical size limit");
            records.push((f.bits.clone(), star));
            forms[i] = Some(f);
        }
    }
    let codebook =
        Codebook::build(records, layout, layout.color_width > 0, tree.ell).expect("canonical strings are well formed");
    assign_labels(&mut tree, &forms);
    let leaf_codes: Vec<Option<BitString>> =
        forms.iter().map(|f| f.as_ref().map(|f| codebook.code(&f.bits).expect("every leaf is in the code-book"))).collect();
    let mut codes = code::encode_nodes(&tree, &leaf_codes, layout.symmetric, layout.color_width);
    let code = std::mem::take(&mut codes[0]);
    Encoding { tree, codebook, layout, code }
}

/// Assigns `L_H` bottom-up: leaves use their canonical order; an internal
/// node labels `U_0` first (ascending id), then each child's non-copy
/// vertices in child-label order.
fn assign_labels(tree: &mut DecompositionTree, forms: &[Option<CanonForm>]) {
    for i in (0..tree.nodes.len()).rev() {
        let k = tree.nodes[i].k();
        let mut labels = vec![0u32; k];
        match &tree.nodes[i].body {
            Body::Leaf { .. } => {
                let f = forms[i].as_ref().expect("leaf form");
                for (pos, &v) in f.order.iter().enumerate() {
                    labels[v as usize] = pos as u32 + 1;
                }
            }
            Body::Internal(sp) => {
                for (j, &x) in sp.u0.iter().enumerate() {
                    labels[x as usize] = j as u32 + 1;
                }
                let mut next = sp.u0.len() as u32;
                for &c in &sp.children {
                    let child = &tree.nodes[c];
                    let mut by_label = vec![0 as Vertex; child.k()];
                    for (cl, &l) in child.labels.iter().enumerate() {
                        by_label[l as usize - 1] = cl as Vertex;
                    }
                    for cl in by_label {
                        let pl = child.parent_local[cl as usize];
                        if sp.u0.binary_search(&pl).is_err() {
                            next += 1;
                            labels[pl as usize] = next;
                        }
                    }
                }
                debug_assert_eq!(next as usize, k);
            }
        }
        tree.nodes[i].labels = labels;
    }
}

/// Decodes `code(G)` of an `n`-vertex graph into the graph on labels
/// (vertex `j` has label `j + 1`).
pub fn decode_code(code: BitSlice<'_>, cb: &Codebook, n: usize) -> Result<Graph, FormatError> {
    let g = code::decode_node(code, n <= cb.ell, cb, n, 0)?;
    if g.n() != n {
        return Err(FormatError::Inconsistent("decoded vertex count"));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn round_trip(g: &Graph) {
        let enc = encode_base(g);
        let labels = enc.root_labels();
        let mut perm: Vec<Vertex> = labels.iter().map(|&l| l - 1).collect();
        let want = g.permute(&perm);
        let cb = Codebook::from_bits(enc.codebook.to_bits().as_slice()).unwrap();
        let got = decode_code(enc.code.as_slice(), &cb, g.n()).unwrap();
        assert_eq!(got, want);
        perm.sort_unstable();
        assert_eq!(perm, (0..g.n() as Vertex).collect::<Vec<_>>());
    }

    #[test]
    fn round_trips() {
        round_trip(&Graph::empty(1));
        round_trip(&Graph::empty(50));
        round_trip(&corpus::random_tree(3, 1));
        round_trip(&corpus::random_tree(600, 1));
        round_trip(&corpus::grid(17, 23));
        round_trip(&corpus::maximal_planar(400, 2));
        round_trip(&corpus::random_orientation(&corpus::degenerate(300, 3, 4), 9));
        let g = corpus::grid(12, 12);
        round_trip(&g.clone().with_colors(Some(corpus::random_colors(144, 5, 3))));
    }

    #[test]
    fn single_leaf_payload_is_one_code() {
        let g = corpus::random_tree(3, 0);
        let enc = encode_base(&g);
        assert_eq!(enc.tree.nodes.len(), 1);
        assert_eq!(enc.code.len(), 2);
    }

    #[test]
    fn labels_follow_the_offset_rule() {
        let g = corpus::maximal_planar(500, 7);
        let enc = encode_base(&g);
        for node in &enc.tree.nodes {
            let mut sorted = node.labels.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (1..=node.k() as u32).collect::<Vec<_>>());
            if let Some(sp) = node.split() {
                for (j, &x) in sp.u0.iter().enumerate() {
                    assert_eq!(node.labels[x as usize], j as u32 + 1);
                }
                let mut offset = sp.u0.len() as u32;
                for (part, &c) in sp.parts.iter().zip(&sp.children) {
                    let child = &enc.tree.nodes[c];
                    let mut child_labels: Vec<u32> = (0..child.k())
                        .filter(|&cl| part.binary_search(&child.parent_local[cl]).is_ok())
                        .map(|cl| child.labels[cl])
                        .collect();
                    child_labels.sort_unstable();
                    for (j, &cl) in child_labels.iter().enumerate() {
                        let local = child.labels.iter().position(|&l| l == cl).unwrap();
                        assert_eq!(node.labels[child.parent_local[local] as usize], offset + j as u32 + 1);
                    }
                    offset += part.len() as u32;
                }
            }
        }
    }

    #[test]
    fn leaf_classification_matches_formula() {
        let g = corpus::random_tree(400, 5);
        let enc = encode_base(&g);
        for node in &enc.tree.nodes {
            let Some(sp) = node.split() else { continue };
            for (part, &c) in sp.parts.iter().zip(&sp.children) {
                let child = &enc.tree.nodes[c];
                if let Body::Leaf { star } = child.body {
                    let u: Vec<Vertex> = part.iter().map(|&x| node.global[x as usize]).collect();
                    let arcs: Vec<_> =
                        child.graph.arcs().map(|(a, b)| (child.global[a as usize], child.global[b as usize])).collect();
                    assert_eq!(star, classify_leaf_occurrence(&g, &child.global, &arcs, &u));
                }
            }
        }
    }
}
