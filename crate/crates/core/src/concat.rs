//! Prefixed concatenation: a self-describing container whose header gives
//! constant-time access to the start of every part.
//!
//! Layout, with every header word `b` bits wide:
//!
//! ```text
//! 0^(b-1) 1 | p | start(1) | ... | start(p) | part 1 | ... | part p
//! ```
//!
//! Starts are 1-based positions inside the payload (the concatenated parts).
//! The reader recovers `b` from the leading run of zeros and never needs the
//! payload length up front: the container's own length comes from whoever
//! holds it.

use crate::bits::{bit_len, ceil_log2, BitSlice, BitString};
use crate::error::FormatError;

/// Header word width for `p` parts carrying `n` payload bits.
pub fn word_width(p: usize, n: usize) -> usize {
    let base = 1 + ceil_log2(n.max(1) as u64);
    base.max(bit_len(p as u64)).max(bit_len(n as u64 + 1))
}

/// An encoded prefixed concatenation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixedConcat {
    bits: BitString,
    b: usize,
    p: usize,
}

impl PrefixedConcat {
    pub fn new<'a, I>(parts: I) -> PrefixedConcat
    where
        I: IntoIterator<Item = BitSlice<'a>>,
    {
        let parts: Vec<BitSlice<'a>> = parts.into_iter().collect();
        let p = parts.len();
        let n: usize = parts.iter().map(|s| s.len()).sum();
        let b = word_width(p, n);
        let mut bits = BitString::with_capacity((p + 2) * b + n);
        bits.push_bits(1, b);
        bits.push_bits(p as u64, b);
        let mut start = 1;
        for s in &parts {
            bits.push_bits(start as u64, b);
            start += s.len();
        }
        for s in &parts {
            bits.append_slice(*s);
        }
        PrefixedConcat { bits, b, p }
    }

    pub fn from_strings(parts: &[BitString]) -> PrefixedConcat {
        PrefixedConcat::new(parts.iter().map(BitString::as_slice))
    }

    pub fn word_width(&self) -> usize {
        self.b
    }

    pub fn part_count(&self) -> usize {
        self.p
    }

    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    pub fn into_bits(self) -> BitString {
        self.bits
    }

    /// `(offset, length)` of part `i` (1-based), offset 1-based in the payload.
    pub fn get(&self, i: usize) -> (usize, usize) {
        ConcatView::parse(self.bits.as_slice())
            .and_then(|v| v.get(i))
            .expect("freshly built container is well formed")
    }
}

/// Convenience: encode parts and return the raw bits.
pub fn concat(parts: &[BitString]) -> BitString {
    PrefixedConcat::from_strings(parts).into_bits()
}

/// Read-only view over an encoded prefixed concatenation.
#[derive(Clone, Copy)]
pub struct ConcatView<'a> {
    slice: BitSlice<'a>,
    b: usize,
    p: usize,
    payload: usize,
}

impl<'a> ConcatView<'a> {
    /// Parses the fixed-size head of the header. Constant time.
    pub fn parse(slice: BitSlice<'a>) -> Result<ConcatView<'a>, FormatError> {
        let first = slice.find_one(0).ok_or(FormatError::BadHeader("no terminating 1 in width prefix"))?;
        let b = first + 1;
        if b > 64 {
            return Err(FormatError::BadHeader("word width above 64"));
        }
        let p = slice.read(b, b)? as usize;
        let payload = p
            .checked_add(2)
            .and_then(|x| x.checked_mul(b))
            .filter(|&x| x <= slice.len())
            .ok_or(FormatError::Truncated("concatenation header longer than container"))?;
        Ok(ConcatView { slice, b, p, payload })
    }

    pub fn part_count(&self) -> usize {
        self.p
    }

    pub fn word_width(&self) -> usize {
        self.b
    }

    pub fn payload_len(&self) -> usize {
        self.slice.len() - self.payload
    }

    fn start(&self, i: usize) -> usize {
        self.slice.get_bits((i + 1) * self.b, self.b) as usize
    }

    /// `(offset, length)` of part `i` (1-based); offset is 1-based in the payload.
    pub fn get(&self, i: usize) -> Result<(usize, usize), FormatError> {
        if i == 0 || i > self.p {
            return Err(FormatError::PartOutOfRange { index: i, count: self.p });
        }
        let start = self.start(i);
        let end = if i == self.p { self.payload_len() + 1 } else { self.start(i + 1) };
        if start == 0 || end < start || end > self.payload_len() + 1 {
            return Err(FormatError::BadHeader("part offsets out of order"));
        }
        Ok((start, end - start))
    }

    pub fn part(&self, i: usize) -> Result<BitSlice<'a>, FormatError> {
        let (off, len) = self.get(i)?;
        Ok(self.slice.sub(self.payload + off - 1, len))
    }

    /// Part `i` parsed as a nested concatenation.
    pub fn nested(&self, i: usize) -> Result<ConcatView<'a>, FormatError> {
        ConcatView::parse(self.part(i)?)
    }

    pub fn parts(&self) -> Result<Vec<BitSlice<'a>>, FormatError> {
        (1..=self.p).map(|i| self.part(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn two_part_golden_vector() {
        let pc = PrefixedConcat::from_strings(&[BitString::parse("101"), BitString::parse("01")]);
        assert_eq!(pc.word_width(), 4);
        assert_eq!(pc.bits().to_string(), "0001001000010100".to_string() + "10101");
        assert_eq!(pc.get(1), (1, 3));
        assert_eq!(pc.get(2), (4, 2));
    }

    #[test]
    fn single_empty_part() {
        let pc = PrefixedConcat::from_strings(&[BitString::new()]);
        assert_eq!(pc.part_count(), 1);
        assert_eq!(pc.get(1), (1, 0));
        let v = ConcatView::parse(pc.bits().as_slice()).unwrap();
        assert_eq!(v.payload_len(), 0);
        assert!(v.get(2).is_err());
    }

    #[test]
    fn many_empty_parts_fit_the_header() {
        let parts = vec![BitString::new(); 9];
        let pc = PrefixedConcat::from_strings(&parts);
        let v = ConcatView::parse(pc.bits().as_slice()).unwrap();
        assert_eq!(v.part_count(), 9);
        assert!((1..=9).all(|i| v.get(i).unwrap() == (1, 0)));
    }

    #[test]
    fn deterministic() {
        let parts = [BitString::parse("1"), BitString::parse("0110")];
        assert_eq!(PrefixedConcat::from_strings(&parts), PrefixedConcat::from_strings(&parts));
    }

    #[test]
    fn rejects_garbage() {
        assert!(ConcatView::parse(BitString::zeros(10).as_slice()).is_err());
        // width 2, p = 3 but only room for the first two header words
        assert!(ConcatView::parse(BitString::parse("0111").as_slice()).is_err());
    }

    proptest! {
        #[test]
        fn parts_round_trip(parts in prop::collection::vec(prop::collection::vec(any::<bool>(), 0..70), 0..12)) {
            let parts: Vec<BitString> = parts.into_iter().map(BitString::from_bools).collect();
            let pc = PrefixedConcat::from_strings(&parts);
            let v = ConcatView::parse(pc.bits().as_slice()).unwrap();
            prop_assert_eq!(v.part_count(), parts.len());
            for (i, p) in parts.iter().enumerate() {
                prop_assert_eq!(&v.part(i + 1).unwrap().to_bitstring(), p);
            }
        }
    }
}
