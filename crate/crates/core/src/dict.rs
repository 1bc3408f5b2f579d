//! Fully indexable dictionary over a bit string `Y` of length `m` with `r`
//! ones: constant-time `rank`, `select` and `access`, stored in
//! `O(r log m) + o(m)` bits and read directly from its serialized form.
//!
//! With `h = ⌈½ log2 m⌉` the serialized dictionary is the prefixed
//! concatenation of
//!
//! * `meta`: `m` and `r`;
//! * `dict1`: the position of every 1-bit, one wide word each;
//! * `dict2`: rank samples every `h²` bits (`χ2a`) and every `h` bits inside
//!   each `h²` superblock (`χ2b`);
//! * `dict3`: a bitmap marking the nonzero `h`-bit words of `Y` (`χ3a`), a
//!   rank directory over that bitmap (`χ3b`), and the nonzero words
//!   themselves in order (`χ3c`).
//!
//! `Y` itself is not stored: the `h`-bit word needed for the in-block part of
//! a rank query comes back through `dict3`. The in-word popcount table
//! (`χ2c`) depends only on `h` and is shared by every dictionary in the
//! process; its size is still charged in [`Fid::size_bits`].
//!
//! Strings shorter than four bits are stored verbatim.

use std::sync::OnceLock;

use crate::bits::{bit_len, ceil_log2, BitSlice, BitString};
use crate::concat::{concat, ConcatView};
use crate::error::{DictError, FormatError};

/// Block parameter `h = ⌈½ log2 m⌉`.
pub fn block_param(m: usize) -> usize {
    ceil_log2(m.max(1) as u64).div_ceil(2)
}

fn sample_width(m: usize, h: usize) -> usize {
    (2 * h).max(bit_len(m as u64)).max(1)
}

fn inner_width(h: usize) -> usize {
    (2 * ceil_log2(h.max(1) as u64)).max(1)
}

const TABLE_MAX_H: usize = 16;

/// `table[z * (h + 1) + c]` = number of ones among the top `c` bits of the
/// `h`-bit word `z`.
fn prefix_table(h: usize) -> &'static [u8] {
    static TABLES: [OnceLock<Box<[u8]>>; TABLE_MAX_H + 1] = [const { OnceLock::new() }; TABLE_MAX_H + 1];
    TABLES[h].get_or_init(|| {
        let stride = h + 1;
        let mut t = vec![0u8; (1usize << h) * stride];
        for z in 0..1usize << h {
            for c in 1..=h {
                let bit = (z >> (h - c)) & 1;
                t[z * stride + c] = t[z * stride + c - 1] + bit as u8;
            }
        }
        t.into_boxed_slice()
    })
}

#[inline]
fn word_prefix_rank(word: u64, h: usize, c: usize) -> usize {
    if c == 0 {
        return 0;
    }
    if h <= TABLE_MAX_H {
        prefix_table(h)[word as usize * (h + 1) + c] as usize
    } else {
        (word >> (h - c)).count_ones() as usize
    }
}

/// Bits charged for the shared popcount table of parameter `h`.
pub fn table_bits(h: usize) -> usize {
    if h == 0 {
        0
    } else {
        (1usize << h) * h * bit_len(h as u64)
    }
}

#[inline]
fn raw_word(bits: BitSlice<'_>, w: usize, h: usize) -> u64 {
    let pos = w * h;
    let width = h.min(bits.len() - pos);
    bits.get_bits(pos, width) << (h - width)
}

/// Builds `χ2a ‖ χ2b` for `bits` as a prefixed concatenation.
fn build_rank_dir(bits: BitSlice<'_>, h: usize) -> BitString {
    let m = bits.len();
    let sb = h * h;
    let wa = sample_width(m, h);
    let wb = inner_width(h);
    let mut a = BitString::new();
    let mut b = BitString::new();
    let mut total = 0usize;
    let words = m.div_ceil(h);
    for s in 0..m.div_ceil(sb) {
        a.push_bits(total as u64, wa);
        let mut inner = 0usize;
        for t in 0..h {
            let w = s * h + t;
            if t > 0 {
                b.push_bits(inner as u64, wb);
            }
            if w < words {
                inner += raw_word(bits, w, h).count_ones() as usize;
            }
        }
        total += inner;
    }
    concat(&[a, b])
}

#[derive(Clone, Copy)]
struct RankDir<'a> {
    a: BitSlice<'a>,
    b: BitSlice<'a>,
    h: usize,
    wa: usize,
    wb: usize,
}

impl<'a> RankDir<'a> {
    fn parse(slice: BitSlice<'a>, m: usize, h: usize) -> Result<RankDir<'a>, FormatError> {
        let v = ConcatView::parse(slice)?;
        if v.part_count() != 2 {
            return Err(FormatError::Inconsistent("rank directory must have two parts"));
        }
        let (a, b) = (v.part(1)?, v.part(2)?);
        let wa = sample_width(m, h);
        let wb = inner_width(h);
        let supers = m.div_ceil(h * h);
        if a.len() != supers * wa || b.len() != supers * (h - 1) * wb {
            return Err(FormatError::Inconsistent("rank directory size"));
        }
        Ok(RankDir { a, b, h, wa, wb })
    }

    /// Ones among the first `q < m` bits, given a reader for the `h`-bit
    /// word containing position `q`.
    #[inline]
    fn prefix(&self, q: usize, word: impl FnOnce(usize) -> Result<u64, DictError>) -> Result<usize, DictError> {
        let h = self.h;
        let s = q / (h * h);
        let rem = q % (h * h);
        let t = rem / h;
        let c = rem % h;
        let ra = self.a.get_bits(s * self.wa, self.wa) as usize;
        let rb = if t == 0 { 0 } else { self.b.get_bits((s * (h - 1) + t - 1) * self.wb, self.wb) as usize };
        let rc = if c == 0 { 0 } else { word_prefix_rank(word(q / h)?, h, c) };
        Ok(ra + rb + rc)
    }
}

/// An owned, serialized dictionary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fid {
    bits: BitString,
}

impl Fid {
    pub fn build(y: &BitString) -> Fid {
        Fid { bits: encode(y.as_slice()) }
    }

    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    pub fn into_bits(self) -> BitString {
        self.bits
    }

    pub fn view(&self) -> FidView<'_> {
        FidView::parse(self.bits.as_slice()).expect("freshly built dictionary is well formed")
    }

    /// Serialized size plus the shared in-word rank tables it relies on.
    pub fn size_bits(&self) -> usize {
        let v = self.view();
        let mut total = self.bits.len();
        if let Repr::Full { h, h3, .. } = v.repr {
            total += table_bits(h);
            if h3 > 0 {
                total += table_bits(h3);
            }
        }
        total
    }

    pub fn len(&self) -> usize {
        self.view().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ones(&self) -> usize {
        self.view().ones()
    }

    pub fn rank(&self, i: usize) -> Result<usize, DictError> {
        self.view().rank(i)
    }

    pub fn select(&self, j: usize) -> Result<usize, DictError> {
        self.view().select(j)
    }

    pub fn access(&self, i: usize) -> Result<bool, DictError> {
        self.view().access(i)
    }

    pub fn select_zero(&self, j: usize) -> Result<usize, DictError> {
        self.view().select_zero(j)
    }
}

/// Serializes the dictionary of `y`.
pub fn encode(y: BitSlice<'_>) -> BitString {
    let m = y.len();
    let r = (0..m).filter(|&i| y.get(i)).count();
    let wm = bit_len(m as u64).max(1);
    let mut meta = BitString::new();
    meta.push_bits(m as u64, wm);
    meta.push_bits(r as u64, wm);
    if m < 4 {
        return concat(&[meta, y.to_bitstring()]);
    }
    let h = block_param(m);
    let wa = sample_width(m, h);

    let mut d1 = BitString::with_capacity(r * wa);
    for i in 0..m {
        if y.get(i) {
            d1.push_bits(i as u64, wa);
        }
    }
    let d2 = build_rank_dir(y, h);

    let words = m.div_ceil(h);
    let mut x3a = BitString::with_capacity(words);
    let mut x3c = BitString::new();
    for w in 0..words {
        let z = raw_word(y, w, h);
        x3a.push(z != 0);
        if z != 0 {
            x3c.push_bits(z, h);
        }
    }
    let x3b = if x3a.len() >= 4 { build_rank_dir(x3a.as_slice(), block_param(x3a.len())) } else { BitString::new() };
    let d3 = concat(&[x3a, x3b, x3c]);
    concat(&[meta, d1, d2, d3])
}

#[derive(Clone, Copy)]
enum Repr<'a> {
    Verbatim(BitSlice<'a>),
    Full {
        h: usize,
        wa: usize,
        d1: BitSlice<'a>,
        d2: RankDir<'a>,
        x3a: BitSlice<'a>,
        h3: usize,
        x3b: Option<RankDir<'a>>,
        x3c: BitSlice<'a>,
    },
}

/// Zero-copy reader over a serialized dictionary.
#[derive(Clone, Copy)]
pub struct FidView<'a> {
    m: usize,
    r: usize,
    repr: Repr<'a>,
}

impl<'a> FidView<'a> {
    /// Parses and size-checks the header. Constant time.
    pub fn parse(slice: BitSlice<'a>) -> Result<FidView<'a>, FormatError> {
        let top = ConcatView::parse(slice)?;
        let meta = top.part(1)?;
        if meta.len() % 2 != 0 || meta.is_empty() || meta.len() > 128 {
            return Err(FormatError::Inconsistent("dictionary meta"));
        }
        let wm = meta.len() / 2;
        let m = meta.get_bits(0, wm) as usize;
        let r = meta.get_bits(wm, wm) as usize;
        if wm != bit_len(m as u64).max(1) || r > m {
            return Err(FormatError::Inconsistent("dictionary meta"));
        }
        if m < 4 {
            if top.part_count() != 2 {
                return Err(FormatError::Inconsistent("verbatim dictionary shape"));
            }
            let y = top.part(2)?;
            if y.len() != m {
                return Err(FormatError::Inconsistent("verbatim dictionary length"));
            }
            return Ok(FidView { m, r, repr: Repr::Verbatim(y) });
        }
        if top.part_count() != 4 {
            return Err(FormatError::Inconsistent("dictionary must have four parts"));
        }
        let h = block_param(m);
        let wa = sample_width(m, h);
        let d1 = top.part(2)?;
        if d1.len() != r * wa {
            return Err(FormatError::Inconsistent("select table size"));
        }
        let d2 = RankDir::parse(top.part(3)?, m, h)?;
        let d3 = top.nested(4)?;
        if d3.part_count() != 3 {
            return Err(FormatError::Inconsistent("membership structure must have three parts"));
        }
        let x3a = d3.part(1)?;
        if x3a.len() != m.div_ceil(h) {
            return Err(FormatError::Inconsistent("block bitmap size"));
        }
        let (h3, x3b) = if x3a.len() >= 4 {
            let h3 = block_param(x3a.len());
            (h3, Some(RankDir::parse(d3.part(2)?, x3a.len(), h3)?))
        } else {
            (0, None)
        };
        let x3c = d3.part(3)?;
        if x3c.len() % h != 0 {
            return Err(FormatError::Inconsistent("nonzero word table size"));
        }
        Ok(FidView { m, r, repr: Repr::Full { h, wa, d1, d2, x3a, h3, x3b, x3c } })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    #[inline]
    pub fn ones(&self) -> usize {
        self.r
    }

    fn check_pos(&self, i: usize) -> Result<(), DictError> {
        if i == 0 || i > self.m {
            Err(DictError::Position { pos: i, len: self.m })
        } else {
            Ok(())
        }
    }

    /// The `w`-th `h`-bit word of `Y` (0-based), recovered through `dict3`.
    #[inline]
    fn block_word(&self, w: usize) -> Result<u64, DictError> {
        let Repr::Full { h, x3a, h3, x3b, x3c, .. } = self.repr else { unreachable!() };
        if !x3a.get(w) {
            return Ok(0);
        }
        let before = match x3b {
            Some(dir) => dir.prefix(w, |ww| Ok(raw_word(x3a, ww, h3)))?,
            None => (0..w).filter(|&i| x3a.get(i)).count(),
        };
        x3c.read(before * h, h).map_err(|_| DictError::Corrupt)
    }

    /// Number of ones in `Y[1..=i]`.
    pub fn rank(&self, i: usize) -> Result<usize, DictError> {
        self.check_pos(i)?;
        self.prefix(i)
    }

    fn prefix(&self, q: usize) -> Result<usize, DictError> {
        if q == self.m {
            return Ok(self.r);
        }
        match self.repr {
            Repr::Verbatim(y) => Ok((0..q).filter(|&k| y.get(k)).count()),
            Repr::Full { d2, .. } => d2.prefix(q, |w| self.block_word(w)),
        }
    }

    /// Position of the `j`-th 1-bit.
    pub fn select(&self, j: usize) -> Result<usize, DictError> {
        if j == 0 || j > self.r {
            return Err(DictError::Select { index: j, count: self.r });
        }
        match self.repr {
            Repr::Verbatim(y) => Ok((0..self.m).filter(|&k| y.get(k)).nth(j - 1).expect("counted") + 1),
            Repr::Full { wa, d1, .. } => {
                let p = d1.get_bits((j - 1) * wa, wa) as usize + 1;
                if p > self.m {
                    return Err(DictError::Corrupt);
                }
                Ok(p)
            }
        }
    }

    /// The bit `Y[i]`.
    pub fn access(&self, i: usize) -> Result<bool, DictError> {
        self.check_pos(i)?;
        match self.repr {
            Repr::Verbatim(y) => Ok(y.get(i - 1)),
            Repr::Full { h, .. } => {
                let k = i - 1;
                let z = self.block_word(k / h)?;
                Ok(z >> (h - 1 - k % h) & 1 == 1)
            }
        }
    }

    /// Position of the `j`-th 0-bit, by binary search over `rank`.
    pub fn select_zero(&self, j: usize) -> Result<usize, DictError> {
        let zeros = self.m - self.r;
        if j == 0 || j > zeros {
            return Err(DictError::Select { index: j, count: zeros });
        }
        // smallest k with k - rank(k) >= j
        let (mut lo, mut hi) = (j, (j + self.r).min(self.m));
        while lo < hi {
            let mid = (lo + hi) / 2;
            if mid - self.prefix(mid)? >= j {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_rank(y: &BitString, i: usize) -> usize {
        (0..i).filter(|&k| y.get(k)).count()
    }

    fn check_all(y: &BitString) {
        let fid = Fid::build(y);
        let v = fid.view();
        let m = y.len();
        let ones: Vec<usize> = (0..m).filter(|&k| y.get(k)).map(|k| k + 1).collect();
        let zeros: Vec<usize> = (0..m).filter(|&k| !y.get(k)).map(|k| k + 1).collect();
        assert_eq!(v.len(), m);
        assert_eq!(v.ones(), ones.len());
        for i in 1..=m {
            assert_eq!(v.rank(i).unwrap(), naive_rank(y, i), "rank {i} of {y}");
            assert_eq!(v.access(i).unwrap(), y.get(i - 1), "access {i} of {y}");
        }
        for (j, &p) in ones.iter().enumerate() {
            assert_eq!(v.select(j + 1).unwrap(), p);
        }
        for (j, &p) in zeros.iter().enumerate() {
            assert_eq!(v.select_zero(j + 1).unwrap(), p);
        }
        assert!(v.select(ones.len() + 1).is_err());
        assert!(v.select_zero(zeros.len() + 1).is_err());
        assert!(v.rank(0).is_err() && v.rank(m + 1).is_err());
    }

    #[test]
    fn small_examples() {
        let y = BitString::parse("10110");
        let f = Fid::build(&y);
        assert_eq!(f.ones(), 3);
        assert_eq!(f.rank(5).unwrap(), 3);
        assert_eq!(f.select(2).unwrap(), 3);
        assert!(f.access(4).unwrap());
        assert_eq!(f.select_zero(1).unwrap(), 2);
        assert_eq!(Fid::build(&BitString::parse("0001")).select(1).unwrap(), 4);
        assert_eq!(Fid::build(&BitString::parse("0111")).rank(1).unwrap(), 0);
        let z = Fid::build(&BitString::zeros(100));
        assert_eq!(z.ones(), 0);
        assert!((1..=100).all(|i| z.rank(i).unwrap() == 0 && z.select_zero(i).unwrap() == i));
    }

    #[test]
    fn block_parameter() {
        assert_eq!(block_param(4), 1);
        assert_eq!(block_param(16), 2);
        assert_eq!(block_param(17), 3);
        assert_eq!(block_param(1 << 20), 10);
    }

    #[test]
    fn exhaustive_up_to_twelve_bits() {
        for m in 1..=12usize {
            for x in 0u64..1 << m {
                let mut y = BitString::new();
                y.push_bits(x, m);
                check_all(&y);
            }
        }
    }

    proptest! {
        #[test]
        fn random_strings_match_naive(bits in prop::collection::vec(prop::bool::weighted(0.2), 1..3000)) {
            check_all(&BitString::from_bools(bits));
        }

        #[test]
        fn rank_select_identities(bits in prop::collection::vec(any::<bool>(), 1..600)) {
            let y = BitString::from_bools(bits);
            let v = Fid::build(&y);
            let v = v.view();
            let mut prev = 0;
            for i in 1..=y.len() {
                let r = v.rank(i).unwrap();
                prop_assert_eq!(r - prev, v.access(i).unwrap() as usize);
                prev = r;
            }
            for j in 1..=v.ones() {
                let p = v.select(j).unwrap();
                prop_assert_eq!(v.rank(p).unwrap(), j);
                prop_assert!(v.access(p).unwrap());
            }
        }
    }

    #[test]
    fn corrupted_header_is_rejected() {
        let f = Fid::build(&BitString::parse("1011001110001"));
        let mut bits = f.bits().clone();
        bits.truncate(bits.len() - 3);
        assert!(FidView::parse(bits.as_slice()).is_err());
    }
}
