//! Packed 0–1 vectors.
//!
//! [`BitRow`] stores bit `i` in word `i / 64`, position `i % 64`. Bits past
//! `len` are always zero so word-level popcounts and comparisons are exact.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut row = BitRow {
            len,
            words: vec![u64::MAX; len.div_ceil(64)],
        };
        row.clear_tail();
        row
    }

    /// Bits `0..len` taken from the low bits of `value`.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= 64);
        let mut row = BitRow::zeros(len);
        if len > 0 {
            row.words[0] = value;
            row.clear_tail();
        }
        row
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut row = BitRow::zeros(len);
        for i in ones {
            row.set(i, true);
        }
        row
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
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
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Low 64 bits as an integer (only meaningful when `len <= 64`).
    pub fn as_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn or_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    /// Clears every bit that is set in `other`.
    pub fn difference_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, w)| wi * 64 + w.trailing_zeros() as usize)
    }

    /// Popcount of `self XOR other`.
    pub fn distance(&self, other: &BitRow) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Popcount of `self AND other`.
    pub fn overlap(&self, other: &BitRow) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset_of(&self, other: &BitRow) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    /// Lexicographic order reading position 0 first.
    pub fn lex_cmp(&self, other: &BitRow) -> Ordering {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter().zip(&other.words) {
            if a != b {
                // lowest differing position decides; a 0 there sorts first
                let low = (a ^ b).trailing_zeros();
                return if (a >> low) & 1 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }

    /// Renders as a string of `zero`/`one` characters.
    pub fn render(&self, zero: char, one: char) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { one } else { zero })
            .collect()
    }

    /// Parses a string over `{zero, one}`; returns `None` on any other char.
    pub fn parse(text: &str, zero: char, one: char) -> Option<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut row = BitRow::zeros(chars.len());
        for (i, c) in chars.into_iter().enumerate() {
            if c == one {
                row.set(i, true);
            } else if c != zero {
                return None;
            }
        }
        Some(row)
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitRow({})", self.render('0', '1'))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ones_clears_tail() {
        let r = BitRow::ones(70);
        assert_eq!(r.count_ones(), 70);
        assert_eq!(r.words()[1], (1 << 6) - 1);
    }

    #[test]
    fn lex_order_reads_position_zero_first() {
        let a = BitRow::parse("0011", '0', '1').unwrap();
        let b = BitRow::parse("0101", '0', '1').unwrap();
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
        assert_eq!(b.lex_cmp(&a), Ordering::Greater);
        assert_eq!(a.lex_cmp(&a), Ordering::Equal);
    }

    #[test]
    fn parse_rejects_foreign_chars() {
        assert!(BitRow::parse("01x", '0', '1').is_none());
        let r = BitRow::parse("+-+", '+', '-').unwrap();
        assert_eq!(r.iter_ones().collect::<Vec<_>>(), vec![1]);
    }

    proptest! {
        #[test]
        fn lex_cmp_matches_string_order(a in proptest::collection::vec(any::<bool>(), 1..150),
                                        flip in any::<prop::sample::Index>()) {
            let mut b = a.clone();
            let k = flip.index(b.len());
            b[k] = !b[k];
            let ra = BitRow::from_indices(a.len(), a.iter().enumerate().filter(|x| *x.1).map(|x| x.0));
            let rb = BitRow::from_indices(b.len(), b.iter().enumerate().filter(|x| *x.1).map(|x| x.0));
            let sa = ra.render('0', '1');
            let sb = rb.render('0', '1');
            prop_assert_eq!(ra.lex_cmp(&rb), sa.cmp(&sb));
            prop_assert_eq!(ra.distance(&rb), 1);
            prop_assert_eq!(BitRow::parse(&sa, '0', '1').unwrap(), ra.clone());
            prop_assert_eq!(ra.iter_ones().count(), ra.count_ones());
        }
    }
}
