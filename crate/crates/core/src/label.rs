//! Hierarchical labels `L_H` and the `LBL` section answering the two label
//! queries: which part of a node holds a vertex (descent) and what label a
//! child vertex carries in its parent (ascent).
//!
//! For an internal node with parts `U_0..U_p` the section holds, as one
//! prefixed concatenation,
//!
//! * `χ0 = dict(Y0)`, `Y0` of length `k` with its `i`-th one at
//!   `|U_0| + .. + |U_{i-1}| + 1`;
//! * per child `i`: `dict(Y_i)` where `Y_i[j] = 1` iff child label `j` is a
//!   copy of a `U_0` vertex, followed by the `U_0` labels of those copies in
//!   child-label order;
//! * the sections of the children, empty for leaves.

use crate::bits::{pack_words, BitSlice, BitString};
use crate::codec::tree::{label_width, Body, DecompositionTree};
use crate::concat::{concat, ConcatView};
use crate::dict::{self, FidView};
use crate::error::{FormatError, QueryError};

/// `L_H` for every node of a tree, indexed like `tree.nodes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub per_node: Vec<Vec<u32>>,
}

/// The labeling the encoder assigned to `tree`.
pub fn build_labels(tree: &DecompositionTree) -> Labeling {
    Labeling { per_node: tree.nodes.iter().map(|n| n.labels.clone()).collect() }
}

/// `Y0` of an internal node as a bit string.
pub fn part_marks(k: usize, u0: usize, part_sizes: &[usize]) -> BitString {
    let mut y = BitString::zeros(k);
    let mut at = u0;
    for &s in part_sizes {
        y.set(at, true);
        at += s;
    }
    y
}

/// Serialized `LBL` section of the whole tree.
pub fn build_section(tree: &DecompositionTree) -> BitString {
    let mut out: Vec<BitString> = vec![BitString::new(); tree.nodes.len()];
    for idx in (0..tree.nodes.len()).rev() {
        let node = &tree.nodes[idx];
        let Body::Internal(sp) = &node.body else { continue };
        let k = node.k();
        let w = label_width(k);
        let sizes: Vec<usize> = sp.parts.iter().map(Vec::len).collect();
        let mut parts = vec![dict::encode(part_marks(k, sp.u0.len(), &sizes).as_slice())];
        for &c in &sp.children {
            let child = &tree.nodes[c];
            let mut y = BitString::zeros(child.k());
            let mut copies: Vec<(u32, u64)> = Vec::new();
            for (cl, &pl) in child.parent_local.iter().enumerate() {
                if let Ok(j) = sp.u0.binary_search(&pl) {
                    let lab = child.labels[cl];
                    y.set(lab as usize - 1, true);
                    copies.push((lab, j as u64));
                }
            }
            copies.sort_unstable();
            parts.push(dict::encode(y.as_slice()));
            parts.push(pack_words(copies.into_iter().map(|c| c.1), w));
        }
        for &c in &sp.children {
            parts.push(std::mem::take(&mut out[c]));
        }
        out[idx] = concat(&parts);
    }
    std::mem::take(&mut out[0])
}

/// Reader over one internal node's part of the `LBL` section.
#[derive(Clone, Copy)]
pub struct LabelNode<'a> {
    view: ConcatView<'a>,
    y0: FidView<'a>,
    u0: usize,
}

impl<'a> LabelNode<'a> {
    pub fn parse(bits: BitSlice<'a>) -> Result<LabelNode<'a>, FormatError> {
        let view = ConcatView::parse(bits)?;
        let y0 = FidView::parse(view.part(1)?)?;
        let p = y0.ones();
        if view.part_count() != 1 + 3 * p {
            return Err(FormatError::Inconsistent("label section shape"));
        }
        let u0 = if p == 0 { y0.len() } else { y0.select(1).map_err(|_| FormatError::Inconsistent("Y0"))? - 1 };
        Ok(LabelNode { view, y0, u0 })
    }

    pub fn k(&self) -> usize {
        self.y0.len()
    }

    pub fn u0_len(&self) -> usize {
        self.u0
    }

    pub fn children(&self) -> usize {
        self.y0.ones()
    }

    fn check_child(&self, i: usize) -> Result<(), QueryError> {
        if i == 0 || i > self.children() {
            return Err(FormatError::PartOutOfRange { index: i, count: self.children() }.into());
        }
        Ok(())
    }

    fn child_marks(&self, i: usize) -> Result<FidView<'a>, QueryError> {
        self.check_child(i)?;
        Ok(FidView::parse(self.view.part(2 * i)?)?)
    }

    /// First label of `U_i`'s block in this node.
    pub fn block_start(&self, i: usize) -> Result<usize, QueryError> {
        self.check_child(i)?;
        Ok(self.y0.select(i)?)
    }

    /// Query L1: the part holding the vertex with this label and its label
    /// there (unchanged for `U_0`).
    pub fn locate(&self, label: u32) -> Result<(usize, u32), QueryError> {
        let l = label as usize;
        if l == 0 || l > self.k() {
            return Err(QueryError::Label { label: label as u64, n: self.k() as u64 });
        }
        if l <= self.u0 {
            return Ok((0, label));
        }
        let i = self.y0.rank(l)?;
        let j = l - self.y0.select(i)? + 1;
        let yi = self.child_marks(i)?;
        Ok((i, yi.select_zero(j)? as u32))
    }

    /// Query L2: the label in this node of child `i`'s vertex `child_label`.
    pub fn lift(&self, i: usize, child_label: u32) -> Result<u32, QueryError> {
        if i == 0 {
            return Ok(child_label);
        }
        let yi = self.child_marks(i)?;
        let cl = child_label as usize;
        if yi.access(cl)? {
            let r = yi.rank(cl)?;
            let w = label_width(self.k());
            let table = self.view.part(2 * i + 1)?;
            Ok(table.read((r - 1) * w, w)? as u32 + 1)
        } else {
            let j = cl - yi.rank(cl)?;
            Ok((self.y0.select(i)? + j - 1) as u32)
        }
    }

    /// Reader for child `i`, or `None` when the child is a leaf.
    pub fn child(&self, i: usize) -> Result<Option<LabelNode<'a>>, QueryError> {
        self.check_child(i)?;
        let bits = self.view.part(1 + 2 * self.children() + i)?;
        if bits.is_empty() {
            Ok(None)
        } else {
            Ok(Some(LabelNode::parse(bits)?))
        }
    }
}

/// Where a descent from the root ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    /// Child index taken at each internal node on the way down.
    pub path: Vec<usize>,
    /// Label in the final node.
    pub label: u32,
    /// Whether the final node is a leaf (otherwise the vertex is in its `U_0`).
    pub at_leaf: bool,
}

/// Follows Query L1 from the root until the vertex sits in some `U_0` or in
/// a leaf. `root` is `None` when the whole graph is one leaf.
pub fn resolve(root: Option<LabelNode<'_>>, label: u32) -> Result<Resolution, QueryError> {
    let mut path = Vec::new();
    let mut cur = root;
    let mut label = label;
    while let Some(node) = cur {
        let (i, cl) = node.locate(label)?;
        if i == 0 {
            return Ok(Resolution { path, label, at_leaf: false });
        }
        path.push(i);
        label = cl;
        cur = node.child(i)?;
    }
    Ok(Resolution { path, label, at_leaf: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::encode_base;
    use crate::corpus;
    use crate::graph::Graph;

    fn node_at<'a>(root: LabelNode<'a>, path: &[usize]) -> Option<LabelNode<'a>> {
        let mut cur = Some(root);
        for &i in path {
            cur = cur.unwrap().child(i).unwrap();
        }
        cur
    }

    fn check(g: &Graph) {
        let enc = encode_base(g);
        let tree = &enc.tree;
        let sec = build_section(tree);
        if tree.root().is_leaf() {
            assert!(sec.is_empty());
            return;
        }
        let root = LabelNode::parse(sec.as_slice()).unwrap();
        // tree paths of every node, to pair readers with nodes
        let mut paths: Vec<Vec<usize>> = vec![Vec::new(); tree.nodes.len()];
        for (idx, node) in tree.nodes.iter().enumerate() {
            if let Some(sp) = node.split() {
                for (i, &c) in sp.children.iter().enumerate() {
                    let mut p = paths[idx].clone();
                    p.push(i + 1);
                    paths[c] = p;
                }
            }
        }
        for (idx, node) in tree.nodes.iter().enumerate() {
            let Some(sp) = node.split() else { continue };
            let r = node_at(root, &paths[idx]).expect("internal node has a reader");
            assert_eq!(r.k(), node.k());
            assert_eq!(r.u0_len(), sp.u0.len());
            let mut part_of = vec![0usize; node.k()];
            for (i, part) in sp.parts.iter().enumerate() {
                for &x in part {
                    part_of[x as usize] = i + 1;
                }
            }
            for x in 0..node.k() {
                let l = node.labels[x];
                let (i, cl) = r.locate(l).unwrap();
                assert_eq!(i, part_of[x], "node {idx} vertex {x}");
                if i > 0 {
                    let child = &tree.nodes[sp.children[i - 1]];
                    let cx = child.parent_local.iter().position(|&p| p as usize == x).unwrap();
                    assert_eq!(cl, child.labels[cx]);
                }
                assert_eq!(r.lift(i, cl).unwrap(), l);
            }
            // every child label lifts to the parent label of that vertex
            for (i, &c) in sp.children.iter().enumerate() {
                let child = &tree.nodes[c];
                for (cl, &pl) in child.parent_local.iter().enumerate() {
                    assert_eq!(r.lift(i + 1, child.labels[cl]).unwrap(), node.labels[pl as usize]);
                }
            }
        }
        // resolve agrees with a direct walk
        for v in 0..g.n() {
            let res = resolve(Some(root), tree.root().labels[v]).unwrap();
            let mut idx = 0;
            let mut x = v as u32;
            for &i in &res.path {
                let sp = tree.nodes[idx].split().unwrap();
                let c = sp.children[i - 1];
                x = tree.nodes[c].parent_local.iter().position(|&p| p == x).unwrap() as u32;
                idx = c;
            }
            let node = &tree.nodes[idx];
            assert_eq!(node.labels[x as usize], res.label);
            assert_eq!(node.is_leaf(), res.at_leaf);
            if let Some(sp) = node.split() {
                assert!(sp.u0.binary_search(&x).is_ok());
            }
        }
    }

    #[test]
    fn label_queries_match_the_tree() {
        check(&corpus::random_tree(900, 3));
        check(&corpus::grid(25, 30));
        check(&corpus::maximal_planar(700, 1));
        check(&corpus::random_tree(3, 1));
    }

    #[test]
    fn y0_marks_block_starts() {
        let y = part_marks(10, 3, &[2, 4, 1]);
        assert_eq!(y.to_string(), "0001010001");
    }

    #[test]
    fn u0_labels_stay_put() {
        let g = corpus::grid(20, 20);
        let enc = encode_base(&g);
        let sec = build_section(&enc.tree);
        let root = LabelNode::parse(sec.as_slice()).unwrap();
        for l in 1..=root.u0_len() as u32 {
            assert_eq!(root.locate(l).unwrap(), (0, l));
        }
        assert!(root.locate(0).is_err());
        assert!(root.locate(401).is_err());
    }
}
