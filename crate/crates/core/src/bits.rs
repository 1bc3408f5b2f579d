//! Packed bit strings.
//!
//! Bit 0 of a string is the most significant bit of its first `u64` word, so
//! a string reads left to right the way it is written in the docs and golden
//! vectors. Multi-bit fields are stored most significant bit first.

use std::fmt;

use crate::error::FormatError;

/// Number of bits needed to write `x` in binary (0 for 0).
#[inline]
pub fn bit_len(x: u64) -> usize {
    (64 - x.leading_zeros()) as usize
}

/// `⌈log2 x⌉` for `x ≥ 1`.
#[inline]
pub fn ceil_log2(x: u64) -> usize {
    debug_assert!(x >= 1);
    if x <= 1 {
        0
    } else {
        bit_len(x - 1)
    }
}

/// `⌊log2 x⌋` for `x ≥ 1`.
#[inline]
pub fn floor_log2(x: u64) -> usize {
    debug_assert!(x >= 1);
    bit_len(x) - 1
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitString { words: Vec::with_capacity(bits.div_ceil(64)), len: 0 }
    }

    pub fn zeros(len: usize) -> Self {
        BitString { words: vec![0; len.div_ceil(64)], len }
    }

    /// Parses a string of `0`/`1` characters; other characters are skipped so
    /// that `"0001|0010"` style spellings work.
    pub fn parse(s: &str) -> Self {
        let mut b = BitString::new();
        for c in s.chars() {
            match c {
                '0' => b.push(false),
                '1' => b.push(true),
                _ => {}
            }
        }
        b
    }

    pub fn from_bools(bits: impl IntoIterator<Item = bool>) -> Self {
        let mut b = BitString::new();
        for x in bits {
            b.push(x);
        }
        b
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(64) {
            self.words.push(0);
        }
        if bit {
            self.words[self.len / 64] |= 1u64 << (63 - self.len % 64);
        }
        self.len += 1;
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn push_bits(&mut self, value: u64, width: usize) {
        debug_assert!(width <= 64);
        debug_assert!(width == 64 || value >> width == 0, "{value} does not fit in {width} bits");
        if width == 0 {
            return;
        }
        let off = self.len % 64;
        if off == 0 {
            self.words.push(value << (64 - width));
        } else {
            let free = 64 - off;
            let last = self.words.len() - 1;
            if width <= free {
                self.words[last] |= value << (free - width);
            } else {
                self.words[last] |= value >> (width - free);
                self.words.push(value << (64 - (width - free)));
            }
        }
        self.len += width;
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len);
        let mask = 1u64 << (63 - i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (63 - i % 64) & 1 == 1
    }

    /// Reads `width ≤ 64` bits starting at `pos`.
    #[inline]
    pub fn get_bits(&self, pos: usize, width: usize) -> u64 {
        debug_assert!(width <= 64 && pos + width <= self.len);
        if width == 0 {
            return 0;
        }
        let w = pos / 64;
        let off = pos % 64;
        let hi = self.words[w] << off;
        let v = if off + width <= 64 {
            hi
        } else {
            hi | (self.words[w + 1] >> (64 - off))
        };
        v >> (64 - width)
    }

    pub fn append(&mut self, other: &BitString) {
        self.append_slice(other.as_slice());
    }

    pub fn append_slice(&mut self, other: BitSlice<'_>) {
        let mut pos = 0;
        while pos < other.len() {
            let w = (other.len() - pos).min(64);
            self.push_bits(other.get_bits(pos, w), w);
            pos += w;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn as_slice(&self) -> BitSlice<'_> {
        BitSlice { bits: self, start: 0, len: self.len }
    }

    /// Packs into bytes, zero-padding the final byte.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.len.div_ceil(8));
        for (i, w) in self.words.iter().enumerate() {
            let bytes = w.to_be_bytes();
            let remaining = self.len.saturating_sub(i * 64).div_ceil(8).min(8);
            out.extend_from_slice(&bytes[..remaining]);
        }
        out
    }

    /// Inverse of [`BitString::to_bytes`]; `len` may not exceed `8 * bytes.len()`.
    pub fn from_bytes(bytes: &[u8], len: usize) -> BitString {
        assert!(len <= bytes.len() * 8);
        let mut words = Vec::with_capacity(len.div_ceil(64));
        for chunk in bytes[..len.div_ceil(8)].chunks(8) {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            words.push(u64::from_be_bytes(buf));
        }
        let mut b = BitString { words, len };
        // clear padding so equality is structural
        if !len.is_multiple_of(64) {
            let last = b.words.len() - 1;
            b.words[last] &= !0u64 << (64 - len % 64);
        }
        b
    }

    pub fn truncate(&mut self, len: usize) {
        if len >= self.len {
            return;
        }
        self.len = len;
        self.words.truncate(len.div_ceil(64));
        if !len.is_multiple_of(64) {
            let last = self.words.len() - 1;
            self.words[last] &= !0u64 << (64 - len % 64);
        }
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({})", self)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A borrowed window into a [`BitString`].
#[derive(Clone, Copy)]
pub struct BitSlice<'a> {
    bits: &'a BitString,
    start: usize,
    len: usize,
}

impl<'a> BitSlice<'a> {
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.bits.get(self.start + i)
    }

    #[inline]
    pub fn get_bits(&self, pos: usize, width: usize) -> u64 {
        debug_assert!(pos + width <= self.len);
        self.bits.get_bits(self.start + pos, width)
    }

    /// Bounds-checked field read.
    #[inline]
    pub fn read(&self, pos: usize, width: usize) -> Result<u64, FormatError> {
        if width > 64 || pos.checked_add(width).is_none_or(|e| e > self.len) {
            return Err(FormatError::Truncated("field past end of string"));
        }
        Ok(self.get_bits(pos, width))
    }

    #[inline]
    pub fn sub(&self, start: usize, len: usize) -> BitSlice<'a> {
        assert!(start + len <= self.len, "sub-slice out of range");
        BitSlice { bits: self.bits, start: self.start + start, len }
    }

    pub fn to_bitstring(&self) -> BitString {
        let mut b = BitString::with_capacity(self.len);
        b.append_slice(*self);
        b
    }

    pub fn reader(&self) -> BitReader<'a> {
        BitReader { slice: *self, pos: 0 }
    }

    /// Index of the first 1-bit at or after `from`, if any.
    pub fn find_one(&self, from: usize) -> Option<usize> {
        let mut pos = from;
        while pos < self.len {
            let w = (self.len - pos).min(64);
            let chunk = self.get_bits(pos, w);
            if chunk != 0 {
                return Some(pos + (chunk.leading_zeros() as usize - (64 - w)));
            }
            pos += w;
        }
        None
    }
}

/// Sequential reader over a slice with bounds-checked reads.
pub struct BitReader<'a> {
    slice: BitSlice<'a>,
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn read(&mut self, width: usize) -> Result<u64, FormatError> {
        let v = self.slice.read(self.pos, width)?;
        self.pos += width;
        Ok(v)
    }

    pub fn read_bit(&mut self) -> Result<bool, FormatError> {
        Ok(self.read(1)? == 1)
    }

    /// Reads an Elias-gamma coded value written by [`write_gamma`].
    pub fn read_gamma(&mut self) -> Result<u64, FormatError> {
        let mut zeros = 0;
        while !self.read_bit()? {
            zeros += 1;
            if zeros > 63 {
                return Err(FormatError::Inconsistent("gamma code too long"));
            }
        }
        let rest = self.read(zeros)?;
        Ok(((1u64 << zeros) | rest) - 1)
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.slice.len() - self.pos
    }
}

/// Elias-gamma code of `value + 1`, so zero is representable.
pub fn write_gamma(out: &mut BitString, value: u64) {
    let v = value + 1;
    let len = bit_len(v);
    out.push_bits(0, len - 1);
    out.push_bits(v, len);
}

/// Packs fixed-width words into a fresh string.
pub fn pack_words(values: impl IntoIterator<Item = u64>, width: usize) -> BitString {
    let mut b = BitString::new();
    for v in values {
        b.push_bits(v, width);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn log_helpers() {
        assert_eq!(bit_len(0), 0);
        assert_eq!(bit_len(5), 3);
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(8), 3);
        assert_eq!(floor_log2(8), 3);
        assert_eq!(floor_log2(9), 3);
    }

    #[test]
    fn msb_first_layout() {
        let mut b = BitString::new();
        b.push_bits(0b101, 3);
        assert_eq!(b.to_string(), "101");
        assert_eq!(b.to_bytes(), vec![0b1010_0000]);
        assert_eq!(BitString::parse("0001|0010").get_bits(0, 8), 0b0001_0010);
    }

    #[test]
    fn find_one_skips_zero_words() {
        let mut b = BitString::zeros(150);
        b.set(140, true);
        assert_eq!(b.as_slice().find_one(0), Some(140));
        assert_eq!(b.as_slice().sub(100, 50).find_one(0), Some(40));
        assert_eq!(b.as_slice().find_one(141), None);
    }

    proptest! {
        #[test]
        fn fields_round_trip(fields in prop::collection::vec((any::<u64>(), 0usize..=64), 0..40)) {
            let mut b = BitString::new();
            let mut expect = Vec::new();
            for (v, w) in fields {
                let v = if w == 64 { v } else { v & ((1u64 << w) - 1) };
                b.push_bits(v, w);
                expect.push((v, w));
            }
            let mut pos = 0;
            for (v, w) in expect {
                prop_assert_eq!(b.get_bits(pos, w), v);
                pos += w;
            }
            let back = BitString::from_bytes(&b.to_bytes(), b.len());
            prop_assert_eq!(back, b);
        }

        #[test]
        fn gamma_round_trip(values in prop::collection::vec(0u64..1 << 40, 0..30)) {
            let mut b = BitString::new();
            for &v in &values {
                write_gamma(&mut b, v);
            }
            let mut r = b.as_slice().reader();
            for &v in &values {
                prop_assert_eq!(r.read_gamma().unwrap(), v);
            }
            prop_assert_eq!(r.remaining(), 0);
        }
    }
}
