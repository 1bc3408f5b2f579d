//! Query sections and the query engine.
//!
//! Every section mirrors the decomposition tree. An internal node's part is
//! a prefixed concatenation of its own tables followed by one part per
//! child, empty for leaves. Leaf answers come from tables derived from the
//! code-book when the engine is opened.
//!
//! * `DEG` is `concat[meta, tree]` with a one-bit meta (directed input). A
//!   node stores `⌈log2 k⌉`-bit degree words for `U_0` in label order:
//!   degree, out-degree and in-degree for directed inputs, degree alone
//!   otherwise.
//! * `ADJ` and `NR<t>` are `concat[meta, tree, in-index]` with `t` in an
//!   8-bit meta. A node stores `dict(Y)` marking `W_0` by label and one
//!   record per `W_0` member in label order: `γ(c)` and then `c` out-arcs of
//!   the combined director as (target label − 1, two direction bits). Only
//!   `ADJ` carries the in-index, which lists for every label the arcs of the
//!   root director entering it.
//!
//! Direction bits describe `G[{u, v}]` from the queried vertex `u`: the high
//! bit is `u → v`, the low bit `v → u`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

use crate::archive::{read_codebook, Archive, Section};
use crate::bits::{pack_words, write_gamma, BitSlice, BitString};
use crate::codec::tree::label_width;
use crate::codec::{Codebook, Encoding};
use crate::concat::{concat, ConcatView};
use crate::dict::{self, FidView};
use crate::director::{leaf_director, tree_directors};
use crate::error::{FormatError, QueryError};
use crate::graph::{Graph, Orientation, Vertex};
use crate::label::LabelNode;

/// Two direction bits, `u → v` high and `v → u` low.
pub type Dir = u8;
pub const FORWARD: Dir = 0b10;
pub const BACKWARD: Dir = 0b01;

fn dir_bits(g: &Graph, symmetric: bool, u: Vertex, v: Vertex) -> Dir {
    if symmetric {
        FORWARD | BACKWARD
    } else {
        (u8::from(g.has_arc(u, v)) << 1) | u8::from(g.has_arc(v, u))
    }
}

/// Swaps the two direction bits, giving the view from the other endpoint.
pub fn flip(d: Dir) -> Dir {
    ((d & 1) << 1) | (d >> 1)
}

/// Degree, out-degree and in-degree of every vertex; the three agree on
/// symmetric graphs.
pub fn degree_table(g: &Graph) -> Vec<[u32; 3]> {
    let und = g.undirected();
    let rev = g.reverse();
    g.vertices().map(|u| [und.out_degree(u) as u32, g.out_degree(u) as u32, rev.out_degree(u) as u32]).collect()
}

/// Body of the `DEG` section.
pub fn build_degree_section(enc: &Encoding) -> BitString {
    let tree = &enc.tree;
    let directed = !enc.layout.symmetric;
    let mut out: Vec<BitString> = vec![BitString::new(); tree.nodes.len()];
    for idx in (0..tree.nodes.len()).rev() {
        let node = &tree.nodes[idx];
        let Some(sp) = node.split() else { continue };
        let degs = degree_table(&node.graph);
        let per = if directed { 3 } else { 1 };
        let words = sp.u0.iter().flat_map(|&x| degs[x as usize][..per].iter().map(|&d| d as u64).collect::<Vec<_>>());
        let mut parts = vec![pack_words(words, label_width(node.k()))];
        for &c in &sp.children {
            parts.push(std::mem::take(&mut out[c]));
        }
        out[idx] = concat(&parts);
    }
    let mut meta = BitString::new();
    meta.push(directed);
    concat(&[meta, std::mem::take(&mut out[0])])
}

/// Body of the `ADJ` section: the recursive 1-director plus the in-index.
pub fn build_adjacency_section(enc: &Encoding) -> BitString {
    build_director_section(enc, 1, true)
}

/// Body of the `NR<t>` section: the recursive `t`-director.
pub fn build_near_section(enc: &Encoding, t: u32) -> BitString {
    build_director_section(enc, t, false)
}

fn record(g: &Graph, labels: &[u32], d: &Orientation, x: Vertex, w: usize, symmetric: bool) -> BitString {
    let mut edges: Vec<(u32, Dir)> =
        d.out(x).iter().map(|&y| (labels[y as usize] - 1, dir_bits(g, symmetric, x, y))).collect();
    edges.sort_unstable();
    let mut b = BitString::new();
    write_gamma(&mut b, edges.len() as u64);
    for (l, dir) in edges {
        b.push_bits(l as u64, w);
        b.push_bits(dir as u64, 2);
    }
    b
}

fn build_director_section(enc: &Encoding, t: u32, with_in_index: bool) -> BitString {
    assert!((1..=255).contains(&t), "t must fit the section meta");
    let tree = &enc.tree;
    let symmetric = enc.layout.symmetric;
    let nds = tree_directors(tree, t);
    let mut out: Vec<BitString> = vec![BitString::new(); tree.nodes.len()];
    for idx in (0..tree.nodes.len()).rev() {
        let node = &tree.nodes[idx];
        let Some(sp) = node.split() else { continue };
        let k = node.k();
        let w = label_width(k);
        let nd = &nds[idx];
        let mut by_label = vec![0 as Vertex; k];
        for (x, &l) in node.labels.iter().enumerate() {
            by_label[l as usize - 1] = x as Vertex;
        }
        let y = BitString::from_bools(by_label.iter().map(|&x| nd.w0[x as usize]));
        let records: Vec<BitString> = by_label
            .iter()
            .filter(|&&x| nd.w0[x as usize])
            .map(|&x| record(&node.graph, &node.labels, &nd.d, x, w, symmetric))
            .collect();
        let mut parts = vec![dict::encode(y.as_slice()), concat(&records)];
        for &c in &sp.children {
            parts.push(std::mem::take(&mut out[c]));
        }
        out[idx] = concat(&parts);
    }
    let mut meta = BitString::new();
    meta.push_bits(t as u64, 8);
    let index = if with_in_index { in_index(enc, &nds[0].d) } else { BitString::new() };
    concat(&[meta, std::mem::take(&mut out[0]), index])
}

fn in_index(enc: &Encoding, d: &Orientation) -> BitString {
    let root = &enc.tree.nodes[0];
    let labels = &root.labels;
    let n = root.k();
    let w = label_width(n);
    let mut lists: Vec<Vec<(u32, Dir)>> = vec![Vec::new(); n];
    for (a, b) in d.arcs() {
        lists[labels[b as usize] as usize - 1].push((labels[a as usize] - 1, dir_bits(&root.graph, enc.layout.symmetric, b, a)));
    }
    let parts: Vec<BitString> = lists
        .into_iter()
        .map(|mut l| {
            l.sort_unstable();
            let mut b = BitString::new();
            for (x, dir) in l {
                b.push_bits(x as u64, w);
                b.push_bits(dir as u64, 2);
            }
            b
        })
        .collect();
    concat(&parts)
}

/// Out-arcs of the `t`-director of every code-book leaf, by label.
type LeafArcs = Vec<Vec<Vec<(u32, Dir)>>>;

struct DirSection<'a> {
    t: u32,
    tree: BitSlice<'a>,
    in_index: Option<ConcatView<'a>>,
    leaves: LeafArcs,
}

/// Where a descent ends.
enum End<'a> {
    Node { lbl: LabelNode<'a>, code: ConcatView<'a>, sec: Option<ConcatView<'a>>, label: u32 },
    Leaf { entry: usize, label: u32 },
}

struct Walk<'a> {
    path: Vec<(LabelNode<'a>, usize)>,
    end: End<'a>,
}

/// What a near query looked at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearTrace {
    pub path: Option<Vec<u32>>,
    /// `|W|`, the vertices within director distance `t` of an endpoint.
    pub w_size: usize,
    /// The `t` of the section used.
    pub section_t: u32,
}

/// Answers queries from an archive's sections. All labels are `L_G` labels
/// in `1..=n`.
pub struct QueryEngine<'a> {
    n: usize,
    symmetric: bool,
    codebook: Codebook,
    code: BitSlice<'a>,
    root_leaf: bool,
    lbl: Option<LabelNode<'a>>,
    deg: Option<(bool, BitSlice<'a>)>,
    leaf_deg: Vec<Vec<[u32; 3]>>,
    adj: Option<DirSection<'a>>,
    near: Vec<DirSection<'a>>,
    sidecar: &'a [u32],
    id_of: Vec<Vertex>,
    reads: AtomicU64,
}

fn leaf_arcs(cb: &Codebook, t: u32) -> LeafArcs {
    cb.entries()
        .map(|(_, e)| {
            let d = leaf_director(&e.graph, t);
            let sym = e.graph.is_symmetric();
            e.graph
                .vertices()
                .map(|u| {
                    let mut l: Vec<(u32, Dir)> = d.out(u).iter().map(|&v| (v + 1, dir_bits(&e.graph, sym, u, v))).collect();
                    l.sort_unstable();
                    l
                })
                .collect()
        })
        .collect()
}

fn parse_director<'a>(bits: BitSlice<'a>, cb: &Codebook, want_index: bool) -> Result<DirSection<'a>, FormatError> {
    let v = ConcatView::parse(bits)?;
    if v.part_count() != 3 || v.part(1)?.len() != 8 {
        return Err(FormatError::Inconsistent("director section shape"));
    }
    let t = v.part(1)?.get_bits(0, 8) as u32;
    if t == 0 {
        return Err(FormatError::Inconsistent("director radius"));
    }
    let index = v.part(3)?;
    let in_index = if want_index { Some(ConcatView::parse(index)?) } else { None };
    Ok(DirSection { t, tree: v.part(2)?, in_index, leaves: leaf_arcs(cb, t) })
}

impl<'a> QueryEngine<'a> {
    pub fn open(archive: &'a Archive) -> Result<QueryEngine<'a>, QueryError> {
        let n = archive.n();
        let view = archive.view()?;
        let codebook = read_codebook(&view, n)?;
        let root_leaf = n <= codebook.ell;
        let lbl = match view.section(Section::Lbl) {
            Some(b) if !root_leaf => Some(LabelNode::parse(b)?),
            _ => None,
        };
        let mut deg = None;
        let mut adj = None;
        let mut near = Vec::new();
        for &(s, bits) in &view.sections {
            match s {
                Section::Lbl => {}
                Section::Deg => {
                    let v = ConcatView::parse(bits)?;
                    if v.part_count() != 2 || v.part(1)?.len() != 1 {
                        return Err(FormatError::Inconsistent("degree section shape").into());
                    }
                    deg = Some((v.part(1)?.get(0), v.part(2)?));
                }
                Section::Adj => adj = Some(parse_director(bits, &codebook, true)?),
                Section::Near(t) => {
                    let d = parse_director(bits, &codebook, false)?;
                    if d.t != t {
                        return Err(FormatError::Inconsistent("near section radius disagrees with its tag").into());
                    }
                    near.push(d);
                }
            }
        }
        near.sort_by_key(|d| d.t);
        let leaf_deg = if deg.is_some() { codebook.entries().map(|(_, e)| degree_table(&e.graph)).collect() } else { Vec::new() };
        let sidecar = archive.sidecar();
        let mut id_of = vec![0 as Vertex; n];
        for (v, &l) in sidecar.iter().enumerate() {
            id_of[l as usize - 1] = v as Vertex;
        }
        Ok(QueryEngine {
            n,
            symmetric: codebook.layout.symmetric,
            code: view.code,
            root_leaf,
            lbl,
            deg,
            leaf_deg,
            adj,
            near,
            sidecar,
            id_of,
            reads: AtomicU64::new(0),
            codebook,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// `L_G` label of an input vertex.
    pub fn label_of(&self, id: Vertex) -> Result<u32, QueryError> {
        self.sidecar.get(id as usize).copied().ok_or(QueryError::Label { label: id as u64, n: self.n as u64 })
    }

    /// Input vertex carrying a label.
    pub fn id_of(&self, label: u32) -> Result<Vertex, QueryError> {
        self.check_label(label)?;
        Ok(self.id_of[label as usize - 1])
    }

    /// Radii of the near sections present.
    pub fn near_radii(&self) -> Vec<u32> {
        self.near.iter().map(|d| d.t).collect()
    }

    pub fn has_section(&self, s: Section) -> bool {
        match s {
            Section::Lbl => self.lbl.is_some() || self.root_leaf,
            Section::Deg => self.deg.is_some(),
            Section::Adj => self.adj.is_some(),
            Section::Near(t) => self.near.iter().any(|d| d.t == t),
        }
    }

    /// Section reads since the last reset.
    pub fn reads(&self) -> u64 {
        self.reads.load(Ordering::Relaxed)
    }

    pub fn reset_reads(&self) {
        self.reads.store(0, Ordering::Relaxed);
    }

    fn tick(&self) {
        self.reads.fetch_add(1, Ordering::Relaxed);
    }

    fn check_label(&self, label: u32) -> Result<(), QueryError> {
        if label == 0 || label as usize > self.n {
            return Err(QueryError::Label { label: label as u64, n: self.n as u64 });
        }
        Ok(())
    }

    /// Descends from the root until `stop` accepts the vertex, it lands in
    /// some `U_0`, or it reaches a leaf. `sec` is a section tree with the
    /// part index of child 1.
    fn walk<F>(&self, label: u32, sec: Option<(BitSlice<'a>, usize)>, stop: F) -> Result<Walk<'a>, QueryError>
    where
        F: Fn(&ConcatView<'a>, u32) -> Result<bool, QueryError>,
    {
        self.check_label(label)?;
        self.tick();
        if self.root_leaf {
            let entry = self.codebook.decode_index(self.code)?;
            return Ok(Walk { path: Vec::new(), end: End::Leaf { entry, label } });
        }
        let mut node = self.lbl.ok_or_else(|| FormatError::MissingSection("LBL".into()))?;
        let mut code = self.code;
        let mut sec_bits = sec.map(|s| s.0);
        let mut label = label;
        let mut path = Vec::new();
        loop {
            let cv = ConcatView::parse(code)?;
            let sv = sec_bits.map(ConcatView::parse).transpose()?;
            let here = match &sv {
                Some(s) => stop(s, label)?,
                None => false,
            };
            let (i, cl) = if here { (0, label) } else { node.locate(label)? };
            if i == 0 {
                return Ok(Walk { path, end: End::Node { lbl: node, code: cv, sec: sv, label } });
            }
            self.tick();
            path.push((node, i));
            code = cv.part(1 + i)?;
            sec_bits = match (sv, sec) {
                (Some(s), Some((_, first))) => Some(s.part(first + i - 1)?),
                _ => None,
            };
            label = cl;
            match node.child(i)? {
                Some(c) => node = c,
                None => {
                    if sec_bits.is_some_and(|b| !b.is_empty()) {
                        return Err(FormatError::Inconsistent("section part of a leaf is not empty").into());
                    }
                    let entry = self.codebook.decode_index(code)?;
                    return Ok(Walk { path, end: End::Leaf { entry, label } });
                }
            }
        }
    }

    fn lift(&self, path: &[(LabelNode<'a>, usize)], label: u32) -> Result<u32, QueryError> {
        let mut l = label;
        for (node, i) in path.iter().rev() {
            l = node.lift(*i, l)?;
        }
        Ok(l)
    }

    fn leaf_vertex(&self, entry: usize, label: u32) -> Result<usize, QueryError> {
        let e = self.codebook.entry(entry).ok_or(FormatError::UnknownCode)?;
        if label == 0 || label as usize > e.k {
            return Err(FormatError::Inconsistent("label outside its leaf").into());
        }
        Ok(label as usize - 1)
    }

    /// `(degree, out-degree, in-degree)`; all three agree on symmetric graphs.
    pub fn degree(&self, label: u32) -> Result<(u32, u32, u32), QueryError> {
        let (directed, tree) = self.deg.ok_or_else(|| FormatError::MissingSection("DEG".into()))?;
        let walk = self.walk(label, Some((tree, 2)), |_, _| Ok(false))?;
        let d = match walk.end {
            End::Node { lbl, sec, label, .. } => {
                let words = sec.ok_or(FormatError::Inconsistent("degree section"))?.part(1)?;
                let w = label_width(lbl.k());
                let per = if directed { 3 } else { 1 };
                let at = (label as usize - 1) * per * w;
                let mut d = [0u32; 3];
                for (j, slot) in d.iter_mut().enumerate().take(per) {
                    *slot = words.read(at + j * w, w)? as u32;
                }
                if !directed {
                    d = [d[0]; 3];
                }
                d
            }
            End::Leaf { entry, label } => {
                let x = self.leaf_vertex(entry, label)?;
                self.leaf_deg[entry][x]
            }
        };
        Ok((d[0], d[1], d[2]))
    }

    pub fn color(&self, label: u32) -> Result<u32, QueryError> {
        if !self.codebook.colored {
            return Err(QueryError::Uncolored);
        }
        let walk = self.walk(label, None, |_, _| Ok(false))?;
        match walk.end {
            End::Node { lbl, code, label, .. } => {
                let h0 = code.part(1)?;
                let cw = self.codebook.color_width();
                let start = h0.len().checked_sub(lbl.u0_len() * cw).ok_or(FormatError::Truncated("colors of U0"))?;
                Ok(h0.read(start + (label as usize - 1) * cw, cw)? as u32)
            }
            End::Leaf { entry, label } => {
                let x = self.leaf_vertex(entry, label)?;
                let e = self.codebook.entry(entry).ok_or(FormatError::UnknownCode)?;
                e.graph.color(x as Vertex).ok_or(QueryError::Uncolored)
            }
        }
    }

    fn director_out(&self, sec: &DirSection<'a>, label: u32) -> Result<Vec<(u32, Dir)>, QueryError> {
        let stop = |s: &ConcatView<'a>, l: u32| -> Result<bool, QueryError> {
            let y = FidView::parse(s.part(1)?)?;
            Ok(y.access(l as usize)?)
        };
        let walk = self.walk(label, Some((sec.tree, 3)), stop)?;
        let local: Vec<(u32, Dir)> = match walk.end {
            End::Node { lbl, sec: sv, label, .. } => {
                let sv = sv.ok_or(FormatError::Inconsistent("director section"))?;
                let y = FidView::parse(sv.part(1)?)?;
                if !y.access(label as usize)? {
                    return Err(FormatError::Inconsistent("U0 vertex outside W0").into());
                }
                let r = y.rank(label as usize)?;
                self.tick();
                let rec = ConcatView::parse(sv.part(2)?)?.part(r)?;
                let k = lbl.k();
                let w = label_width(k);
                let mut rd = rec.reader();
                let c = rd.read_gamma()? as usize;
                if c > rd.remaining() / (w + 2) {
                    return Err(FormatError::Truncated("out-edge record").into());
                }
                let mut out = Vec::with_capacity(c);
                for _ in 0..c {
                    let l = rd.read(w)? as u32 + 1;
                    let dir = rd.read(2)? as Dir;
                    if l as usize > k {
                        return Err(FormatError::Inconsistent("out-edge target outside node").into());
                    }
                    out.push((l, dir));
                }
                out
            }
            End::Leaf { entry, label } => {
                let x = self.leaf_vertex(entry, label)?;
                sec.leaves[entry][x].clone()
            }
        };
        let mut out = Vec::with_capacity(local.len());
        for (l, dir) in local {
            out.push((self.lift(&walk.path, l)?, dir));
        }
        out.sort_unstable();
        Ok(out)
    }

    fn adj_section(&self) -> Result<&DirSection<'a>, QueryError> {
        self.adj.as_ref().ok_or_else(|| FormatError::MissingSection("ADJ".into()).into())
    }

    /// Out-arcs of `label` in the stored 1-director, with direction bits.
    pub fn out_edges(&self, label: u32) -> Result<Vec<(u32, Dir)>, QueryError> {
        self.director_out(self.adj_section()?, label)
    }

    /// Whether `u → v` and `v → u` are arcs of `G`.
    pub fn adjacent(&self, u: u32, v: u32) -> Result<(bool, bool), QueryError> {
        self.check_label(v)?;
        let sec = self.adj_section()?;
        let dir = match self.director_out(sec, u)?.iter().find(|e| e.0 == v) {
            Some(e) => e.1,
            None => self.director_out(sec, v)?.iter().find(|e| e.0 == u).map_or(0, |e| flip(e.1)),
        };
        Ok((dir & FORWARD != 0, dir & BACKWARD != 0))
    }

    /// All neighbors with direction bits, sorted by label.
    pub fn neighbors(&self, label: u32) -> Result<Vec<(u32, Dir)>, QueryError> {
        let sec = self.adj_section()?;
        let mut all: BTreeMap<u32, Dir> = self.director_out(sec, label)?.into_iter().collect();
        let index = sec.in_index.ok_or(FormatError::Inconsistent("adjacency section without in-index"))?;
        self.tick();
        let list = index.part(label as usize)?;
        let w = label_width(self.n);
        if list.len() % (w + 2) != 0 {
            return Err(FormatError::Inconsistent("in-index list length").into());
        }
        for j in 0..list.len() / (w + 2) {
            let l = list.get_bits(j * (w + 2), w) as u32 + 1;
            let dir = list.get_bits(j * (w + 2) + w, 2) as Dir;
            self.check_label(l).map_err(|_| FormatError::Inconsistent("in-index label"))?;
            *all.entry(l).or_insert(0) |= dir;
        }
        Ok(all.into_iter().collect())
    }

    fn near_section(&self, t: u32) -> Result<&DirSection<'a>, QueryError> {
        if let Some(d) = self.near.iter().find(|d| d.t >= t) {
            return Ok(d);
        }
        if t == 1 {
            if let Some(a) = &self.adj {
                return Ok(a);
            }
        }
        match self.near.last() {
            Some(d) => Err(QueryError::Radius { asked: t, built: d.t }),
            None => Err(FormatError::MissingSection(format!("NR{t}")).into()),
        }
    }

    /// A shortest `u`-`v` path in the underlying undirected graph when the
    /// distance is at most `t`, as a label sequence from `u` to `v`.
    pub fn near(&self, u: u32, v: u32, t: u32) -> Result<Option<Vec<u32>>, QueryError> {
        Ok(self.near_traced(u, v, t)?.path)
    }

    pub fn near_traced(&self, u: u32, v: u32, t: u32) -> Result<NearTrace, QueryError> {
        self.check_label(u)?;
        self.check_label(v)?;
        if u == v || t == 0 {
            return Ok(NearTrace { path: (u == v).then(|| vec![u]), w_size: 1, section_t: 0 });
        }
        let sec = self.near_section(t)?;
        let mut out: HashMap<u32, Vec<(u32, Dir)>> = HashMap::new();
        let mut fetch = |x: u32| -> Result<Vec<u32>, QueryError> {
            if let Some(l) = out.get(&x) {
                return Ok(l.iter().map(|e| e.0).collect());
            }
            let l = self.director_out(sec, x)?;
            let ids = l.iter().map(|e| e.0).collect();
            out.insert(x, l);
            Ok(ids)
        };
        // W: director balls of radius t around both endpoints
        let mut w: BTreeSet<u32> = BTreeSet::new();
        for s in [u, v] {
            let mut seen: BTreeMap<u32, u32> = BTreeMap::from([(s, 0)]);
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                let dx = seen[&x];
                if dx == t {
                    continue;
                }
                for y in fetch(x)? {
                    if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(y) {
                        e.insert(dx + 1);
                        q.push_back(y);
                    }
                }
            }
            w.extend(seen.into_keys());
        }
        let mut adj: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
        for &x in &w {
            for y in fetch(x)? {
                if w.contains(&y) {
                    adj.entry(x).or_default().insert(y);
                    adj.entry(y).or_default().insert(x);
                }
            }
        }
        let mut dist: HashMap<u32, u32> = HashMap::from([(v, 0)]);
        let mut q = VecDeque::from([v]);
        while let Some(x) = q.pop_front() {
            let dx = dist[&x];
            if dx == t {
                continue;
            }
            for &y in adj.get(&x).into_iter().flatten() {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(y) {
                    e.insert(dx + 1);
                    q.push_back(y);
                }
            }
        }
        let path = match dist.get(&u) {
            None => None,
            Some(&du) => {
                let mut path = vec![u];
                let mut cur = u;
                for want in (0..du).rev() {
                    cur = *adj[&cur].iter().find(|y| dist.get(y) == Some(&want)).expect("BFS layers are connected");
                    path.push(cur);
                }
                Some(path)
            }
        };
        Ok(NearTrace { path, w_size: w.len(), section_t: sec.t })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::archive::{encode, EncodeOptions};
    use crate::corpus;

    fn all_sections() -> EncodeOptions {
        EncodeOptions::with_sections(&[Section::Deg, Section::Adj, Section::Near(3)])
    }

    fn bfs(g: &Graph, s: Vertex) -> Vec<u32> {
        let und = g.undirected();
        let mut d = vec![u32::MAX; g.n()];
        d[s as usize] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in und.out(x) {
                if d[y as usize] == u32::MAX {
                    d[y as usize] = d[x as usize] + 1;
                    q.push_back(y);
                }
            }
        }
        d
    }

    fn check_all(g: &Graph) {
        let (a, _) = encode(g, &all_sections());
        let q = QueryEngine::open(&a).unwrap();
        let degs = degree_table(g);
        let lab = |v: Vertex| q.label_of(v).unwrap();
        for u in g.vertices() {
            let (d, o, i) = q.degree(lab(u)).unwrap();
            assert_eq!([d, o, i], degs[u as usize], "degree of {u}");
            if let Some(c) = g.color(u) {
                assert_eq!(q.color(lab(u)).unwrap(), c);
            }
            let mut want: Vec<(u32, Dir)> = g
                .undirected()
                .out(u)
                .iter()
                .map(|&v| (lab(v), (u8::from(g.has_arc(u, v)) << 1) | u8::from(g.has_arc(v, u))))
                .collect();
            want.sort_unstable();
            assert_eq!(q.neighbors(lab(u)).unwrap(), want, "neighbors of {u}");
            let dist = bfs(g, u);
            for v in g.vertices() {
                assert_eq!(q.adjacent(lab(u), lab(v)).unwrap(), (g.has_arc(u, v), g.has_arc(v, u)));
                for t in 1..=3 {
                    let p = q.near(lab(u), lab(v), t).unwrap();
                    let d = dist[v as usize];
                    if d > t {
                        assert!(p.is_none(), "{u}->{v} at t={t}");
                        continue;
                    }
                    let p = p.expect("close pair has a path");
                    assert_eq!(p.len() as u32, d + 1);
                    assert_eq!((p[0], *p.last().unwrap()), (lab(u), lab(v)));
                    for e in p.windows(2) {
                        let (f, b) = q.adjacent(e[0], e[1]).unwrap();
                        assert!(f || b);
                    }
                }
            }
        }
    }

    #[test]
    fn exhaustive_small_instances() {
        check_all(&corpus::random_tree(150, 2));
        check_all(&corpus::grid(12, 13));
        check_all(&corpus::maximal_planar(120, 5).with_colors(Some(corpus::random_colors(120, 4, 2))));
        check_all(&corpus::random_orientation(&corpus::degenerate(100, 3, 1), 3));
        check_all(&corpus::random_tree(6, 1));
    }

    #[test]
    fn path_examples() {
        let g = Graph::build(3, &[(0, 1), (1, 2)], None, true).unwrap();
        let (a, _) = encode(&g, &all_sections());
        let q = QueryEngine::open(&a).unwrap();
        let l: Vec<u32> = (0..3).map(|v| q.label_of(v).unwrap()).collect();
        assert_eq!(q.degree(l[1]).unwrap(), (2, 2, 2));
        assert_eq!(q.near(l[0], l[2], 3).unwrap(), Some(vec![l[0], l[1], l[2]]));
        assert_eq!(q.near(l[0], l[2], 1).unwrap(), None);
        assert!(matches!(q.color(l[0]), Err(QueryError::Uncolored)));
        assert!(matches!(q.near(l[0], l[2], 4), Err(QueryError::Radius { asked: 4, built: 3 })));
    }

    #[test]
    fn missing_sections_are_reported() {
        let g = corpus::grid(20, 20);
        let (a, _) = encode(&g, &EncodeOptions::with_sections(&[Section::Deg]));
        let q = QueryEngine::open(&a).unwrap();
        assert!(q.degree(1).is_ok());
        assert!(matches!(q.out_edges(1), Err(QueryError::Format(FormatError::MissingSection(_)))));
        assert!(matches!(q.degree(0), Err(QueryError::Label { .. })));
        assert!(matches!(q.degree(401), Err(QueryError::Label { .. })));
    }

    #[test]
    fn out_edges_cover_every_edge() {
        let g = corpus::maximal_planar(2000, 3);
        let (a, _) = encode(&g, &all_sections());
        let q = QueryEngine::open(&a).unwrap();
        let mut seen = BTreeSet::new();
        for u in 1..=g.n() as u32 {
            for (v, _) in q.out_edges(u).unwrap() {
                seen.insert((u.min(v), u.max(v)));
            }
        }
        assert_eq!(seen.len(), g.arc_count() / 2);
    }
}
