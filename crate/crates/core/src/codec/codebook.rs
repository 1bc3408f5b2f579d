//! The code-book: a two-way table between the distinct leaf graphs and their
//! short codes.
//!
//! Entries are split into two classes: leaves with at least one occurrence
//! passing the near-empty-boundary test (class 0) and the rest (class 1).
//! Within a class entries are ordered by vertex count, then canonical string.
//! The code of an entry with `k` vertices is its class bit followed by its
//! index in the class, written in `max(1, ⌈log2 c_k⌉)` bits where `c_k` is
//! the number of class entries with at most `k` vertices.

use std::collections::{BTreeSet, HashMap};

use crate::bits::{bit_len, ceil_log2, write_gamma, BitSlice, BitString};
use crate::codec::canon::{graph_from_canonical, CanonLayout};
use crate::concat::{concat, ConcatView};
use crate::error::FormatError;
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub canon: BitString,
    pub k: usize,
    /// The graph in canonical labeling.
    pub graph: Graph,
    /// Index width of this entry's code.
    pub width: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codebook {
    pub layout: CanonLayout,
    pub colored: bool,
    pub ell: usize,
    classes: [Vec<Entry>; 2],
    lookup: HashMap<BitString, (usize, usize)>,
}

fn assign_widths(entries: &mut [Entry]) {
    let mut i = 0;
    while i < entries.len() {
        let k = entries[i].k;
        let upto = entries.iter().take_while(|e| e.k <= k).count();
        let w = ceil_log2(upto as u64).max(1);
        while i < entries.len() && entries[i].k == k {
            entries[i].width = w;
            i += 1;
        }
    }
}

fn key(canon: &BitString, k: usize) -> (usize, String) {
    (k, canon.to_string())
}

impl Codebook {
    /// Builds the code-book from `(canonical string, is-star)` leaf records.
    pub fn build<I>(leaves: I, layout: CanonLayout, colored: bool, ell: usize) -> Result<Codebook, FormatError>
    where
        I: IntoIterator<Item = (BitString, bool)>,
    {
        let mut star: HashMap<BitString, bool> = HashMap::new();
        for (canon, s) in leaves {
            *star.entry(canon).or_insert(false) |= s;
        }
        let mut sets: [BTreeSet<(usize, String)>; 2] = [BTreeSet::new(), BTreeSet::new()];
        let mut by_key: HashMap<(usize, String), BitString> = HashMap::new();
        for (canon, s) in star {
            let g = graph_from_canonical(canon.as_slice(), layout)?;
            let kk = key(&canon, g.n());
            sets[if s { 0 } else { 1 }].insert(kk.clone());
            by_key.insert(kk, canon);
        }
        let mut classes: [Vec<Entry>; 2] = [Vec::new(), Vec::new()];
        for c in 0..2 {
            for kk in &sets[c] {
                let canon = by_key[kk].clone();
                let graph = graph_from_canonical(canon.as_slice(), layout)?;
                classes[c].push(Entry { canon, k: kk.0, graph, width: 0 });
            }
        }
        Self::assemble(layout, colored, ell, classes)
    }

    fn assemble(layout: CanonLayout, colored: bool, ell: usize, mut classes: [Vec<Entry>; 2]) -> Result<Codebook, FormatError> {
        let mut lookup = HashMap::new();
        for (c, class) in classes.iter_mut().enumerate() {
            assign_widths(class);
            for (i, e) in class.iter().enumerate() {
                if lookup.insert(e.canon.clone(), (c, i)).is_some() {
                    return Err(FormatError::Inconsistent("duplicate code-book entry"));
                }
            }
        }
        Ok(Codebook { layout, colored, ell, classes, lookup })
    }

    pub fn len(&self) -> usize {
        self.classes[0].len() + self.classes[1].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn star_count(&self) -> usize {
        self.classes[0].len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Entry)> {
        self.classes.iter().enumerate().flat_map(|(c, v)| v.iter().map(move |e| (c, e)))
    }

    /// The code of the leaf with this canonical string.
    pub fn code(&self, canon: &BitString) -> Option<BitString> {
        let &(c, i) = self.lookup.get(canon)?;
        let e = &self.classes[c][i];
        let mut out = BitString::with_capacity(1 + e.width);
        out.push(c == 1);
        out.push_bits(i as u64, e.width);
        Some(out)
    }

    /// The entry a code denotes.
    pub fn decode(&self, code: BitSlice<'_>) -> Result<&Entry, FormatError> {
        let i = self.decode_index(code)?;
        Ok(self.entry(i).expect("index checked"))
    }

    /// Position of the entry a code denotes in [`Codebook::entries`] order.
    pub fn decode_index(&self, code: BitSlice<'_>) -> Result<usize, FormatError> {
        if code.len() < 2 || code.len() > 65 {
            return Err(FormatError::UnknownCode);
        }
        let c = code.get(0) as usize;
        let w = code.len() - 1;
        let i = code.get_bits(1, w) as usize;
        let e = self.classes[c].get(i).ok_or(FormatError::UnknownCode)?;
        if e.width != w {
            return Err(FormatError::UnknownCode);
        }
        Ok(if c == 0 { i } else { self.classes[0].len() + i })
    }

    /// Entry by its position in [`Codebook::entries`] order.
    pub fn entry(&self, idx: usize) -> Option<&Entry> {
        let stars = self.classes[0].len();
        if idx < stars {
            self.classes[0].get(idx)
        } else {
            self.classes[1].get(idx - stars)
        }
    }

    /// Serialized code-book `χ`.
    pub fn to_bits(&self) -> BitString {
        let mut meta = BitString::new();
        meta.push(self.layout.symmetric);
        meta.push(self.colored);
        meta.push_bits(self.layout.color_width as u64, 6);
        meta.push_bits(self.ell as u64, 4);
        write_gamma(&mut meta, self.classes[0].len() as u64);
        let mut parts = vec![meta];
        parts.extend(self.entries().map(|(_, e)| e.canon.clone()));
        concat(&parts)
    }

    pub fn from_bits(bits: BitSlice<'_>) -> Result<Codebook, FormatError> {
        let v = ConcatView::parse(bits)?;
        if v.part_count() == 0 {
            return Err(FormatError::Inconsistent("code-book without meta"));
        }
        let mut r = v.part(1)?.reader();
        let symmetric = r.read_bit()?;
        let colored = r.read_bit()?;
        let color_width = r.read(6)? as usize;
        let ell = r.read(4)? as usize;
        let stars = r.read_gamma()? as usize;
        if r.remaining() != 0 || colored != (color_width > 0) || color_width > 32 {
            return Err(FormatError::Inconsistent("code-book meta"));
        }
        let total = v.part_count() - 1;
        if stars > total {
            return Err(FormatError::Inconsistent("code-book class sizes"));
        }
        let layout = CanonLayout { symmetric, color_width };
        let mut classes: [Vec<Entry>; 2] = [Vec::with_capacity(stars), Vec::with_capacity(total - stars)];
        let mut last: Option<(usize, usize, String)> = None;
        for i in 0..total {
            let canon = v.part(i + 2)?.to_bitstring();
            let graph = graph_from_canonical(canon.as_slice(), layout)?;
            let c = usize::from(i >= stars);
            let k = graph.n();
            let here = (c, k, canon.to_string());
            if last.as_ref().is_some_and(|l| *l >= here) {
                return Err(FormatError::Inconsistent("code-book entries out of order"));
            }
            last = Some(here);
            classes[c].push(Entry { canon, k, graph, width: 0 });
        }
        Self::assemble(layout, colored, ell, classes)
    }

    /// Bits needed for colors in this archive.
    pub fn color_width(&self) -> usize {
        self.layout.color_width
    }
}

/// Color field width for a graph: zero when uncolored.
pub fn color_width_for(g: &Graph) -> usize {
    match g.colors() {
        None => 0,
        Some(_) => bit_len(g.palette_size().saturating_sub(1) as u64).max(1),
    }
}
