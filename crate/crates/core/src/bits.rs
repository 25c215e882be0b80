//! Packed bit strings.
//!
//! Bit `0` is the first (most significant) position: lexicographic order on [`Bits`]
//! compares bit 0 first, and [`Bits::from_lex_index`] maps `0..2^len` onto strings in
//! that order. Hex text groups bits into nibbles starting at bit 0, each nibble written
//! most-significant-bit first, with the last nibble zero-padded on the right.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use rand::Rng;
use thiserror::Error;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BitsError {
    #[error("expected {expected} hex digits for {len} bits, found {found}")]
    HexLength {
        len: usize,
        expected: usize,
        found: usize,
    },
    #[error("invalid hex digit {0:?}")]
    HexDigit(char),
    #[error("nonzero padding bits in hex string")]
    HexPadding,
    #[error("invalid bit character {0:?}")]
    BitChar(char),
}

fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut b = Bits::zeros(len);
        for i in 0..len {
            b.set(i, true);
        }
        b
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut b = Bits::zeros(bits.len());
        for (i, &v) in bits.iter().enumerate() {
            if v {
                b.set(i, true);
            }
        }
        b
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_bit_str(s: &str) -> Result<Self, BitsError> {
        let mut out = Bits::zeros(0);
        for c in s.chars() {
            match c {
                '0' => out.push(false),
                '1' => out.push(true),
                other => return Err(BitsError::BitChar(other)),
            }
        }
        Ok(out)
    }

    /// The string at position `index` in lexicographic order on `{0,1}^len`.
    pub fn from_lex_index(index: u64, len: usize) -> Self {
        debug_assert!(len >= 64 || index >> len == 0);
        let mut b = Bits::zeros(len);
        for i in 0..len.min(64) {
            if (index >> i) & 1 == 1 {
                b.set(len - 1 - i, true);
            }
        }
        b
    }

    /// Inverse of [`Bits::from_lex_index`]; `None` when the value does not fit in 64 bits.
    pub fn to_lex_index(&self) -> Option<u64> {
        let mut v = 0u64;
        for i in 0..self.len {
            if self.get(i) {
                let shift = self.len - 1 - i;
                if shift >= 64 {
                    return None;
                }
                v |= 1 << shift;
            }
        }
        Some(v)
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut b = Bits::zeros(len);
        for w in b.words.iter_mut() {
            *w = rng.random();
        }
        b.clear_tail();
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        let v = self.get(i);
        self.set(i, !v);
    }

    pub fn push(&mut self, v: bool) {
        if self.len.is_multiple_of(64) {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, v);
    }

    pub fn extend_from(&mut self, other: &Bits) {
        for v in other.iter() {
            self.push(v);
        }
    }

    pub fn concat(parts: &[Bits]) -> Bits {
        let mut out = Bits::zeros(0);
        for p in parts {
            out.extend_from(p);
        }
        out
    }

    /// Bits `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> Bits {
        let mut out = Bits::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of set bits in increasing order.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn to_bools(&self) -> Vec<bool> {
        self.iter().collect()
    }

    /// Panics on length mismatch.
    pub fn xor(&self, other: &Bits) -> Bits {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn xor_assign(&mut self, other: &Bits) {
        assert_eq!(
            self.len, other.len,
            "xor of bit strings with different lengths"
        );
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &Bits) -> bool {
        assert_eq!(
            self.len, other.len,
            "dot of bit strings with different lengths"
        );
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4);
        let mut s = String::with_capacity(digits);
        for d in 0..digits {
            let mut nibble = 0u8;
            for k in 0..4 {
                let i = 4 * d + k;
                nibble <<= 1;
                if i < self.len && self.get(i) {
                    nibble |= 1;
                }
            }
            s.push(char::from_digit(nibble as u32, 16).expect("nibble < 16"));
        }
        s
    }

    pub fn from_hex(s: &str, len: usize) -> Result<Self, BitsError> {
        let expected = len.div_ceil(4);
        let found = s.chars().count();
        if found != expected {
            return Err(BitsError::HexLength {
                len,
                expected,
                found,
            });
        }
        let mut out = Bits::zeros(len);
        for (d, c) in s.chars().enumerate() {
            let nibble = c.to_digit(16).ok_or(BitsError::HexDigit(c))?;
            for k in 0..4 {
                let bit = (nibble >> (3 - k)) & 1 == 1;
                let i = 4 * d + k;
                if i < len {
                    out.set(i, bit);
                } else if bit {
                    return Err(BitsError::HexPadding);
                }
            }
        }
        Ok(out)
    }
}

impl Ord for Bits {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.len == other.len {
            for (a, b) in self.words.iter().zip(&other.words) {
                match a.reverse_bits().cmp(&b.reverse_bits()) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            return Ordering::Equal;
        }
        let common = self.len.min(other.len);
        for i in 0..common {
            match self.get(i).cmp(&other.get(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for Bits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits({self})")
    }
}

impl FromIterator<bool> for Bits {
    fn from_iter<T: IntoIterator<Item = bool>>(iter: T) -> Self {
        let mut b = Bits::zeros(0);
        for v in iter {
            b.push(v);
        }
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lex_index_is_msb_first() {
        assert_eq!(Bits::from_lex_index(1, 2).to_string(), "01");
        assert_eq!(Bits::from_lex_index(4, 3).to_string(), "100");
        assert_eq!(Bits::from_bit_str("001").unwrap().to_lex_index(), Some(1));
    }

    #[test]
    fn hex_layout() {
        let b = Bits::from_bit_str("10011").unwrap();
        assert_eq!(b.to_hex(), "98");
        assert_eq!(Bits::from_hex("98", 5).unwrap(), b);
        assert_eq!(Bits::from_hex("99", 5), Err(BitsError::HexPadding));
        assert!(matches!(
            Bits::from_hex("9", 5),
            Err(BitsError::HexLength { .. })
        ));
    }

    #[test]
    fn ordering_matches_lex_index() {
        for a in 0..16u64 {
            for b in 0..16u64 {
                let x = Bits::from_lex_index(a, 4);
                let y = Bits::from_lex_index(b, 4);
                assert_eq!(x.cmp(&y), a.cmp(&b));
            }
        }
    }

    proptest! {
        #[test]
        fn hex_roundtrip(v in proptest::collection::vec(any::<bool>(), 0..200)) {
            let b = Bits::from_bools(&v);
            prop_assert_eq!(Bits::from_hex(&b.to_hex(), v.len()).unwrap(), b);
        }

        #[test]
        fn long_ordering_is_lexicographic(
            a in proptest::collection::vec(any::<bool>(), 130),
            b in proptest::collection::vec(any::<bool>(), 130),
        ) {
            prop_assert_eq!(Bits::from_bools(&a).cmp(&Bits::from_bools(&b)), a.cmp(&b));
        }
    }
}
