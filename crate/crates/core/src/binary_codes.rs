//! Binary linear seed codes for the spherical construction.
//!
//! A seed code must contain the all-one word (B1) and have a generator
//! matrix whose columns are nonzero and pairwise distinct, i.e. dual
//! distance above 2 (B2). [`rm1`] gives first-order Reed–Muller codes;
//! [`gv_greedy`] grows a seed by random rows that stay at distance at least
//! `d` from the current span.

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::BitRow;
use crate::error::{Error, Result};

pub const MAX_ENUM_DIMENSION: usize = 24;
pub const MAX_GREEDY_LENGTH: usize = 24;
pub const DEFAULT_ATTEMPT_BUDGET: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryLinearCode {
    length: usize,
    rows: Vec<BitRow>,
    design_distance: usize,
}

impl BinaryLinearCode {
    /// Builds a code from generator rows, rejecting dependent rows.
    pub fn new(length: usize, rows: Vec<BitRow>, design_distance: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != length) {
            return Err(Error::DimensionMismatch(format!(
                "generator rows must have length {length}"
            )));
        }
        if rank_gf2(&rows) != rows.len() {
            return Err(Error::DependentRows);
        }
        Ok(BinaryLinearCode {
            length,
            rows,
            design_distance,
        })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn design_distance(&self) -> usize {
        self.design_distance
    }

    pub fn rows(&self) -> &[BitRow] {
        &self.rows
    }

    /// Calls `f` on every codeword, zero word included, in Gray-code order.
    pub fn for_each_codeword(&self, mut f: impl FnMut(&BitRow)) -> Result<()> {
        let k = self.dimension();
        if k > MAX_ENUM_DIMENSION {
            return Err(Error::DimensionTooLarge(k));
        }
        let mut word = BitRow::zeros(self.length);
        f(&word);
        for step in 1u64..(1u64 << k) {
            word.xor_assign(&self.rows[step.trailing_zeros() as usize]);
            f(&word);
        }
        Ok(())
    }

    pub fn codewords(&self) -> Result<Vec<BitRow>> {
        let mut out = Vec::with_capacity(1 << self.dimension().min(MAX_ENUM_DIMENSION));
        self.for_each_codeword(|w| out.push(w.clone()))?;
        Ok(out)
    }

    /// Column `j` of the generator matrix as a κ-bit row.
    pub fn generator_column(&self, j: usize) -> BitRow {
        BitRow::from_indices(
            self.dimension(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.get(j))
                .map(|(i, _)| i),
        )
    }

    /// Text form: `r kappa d`, then one generator row per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} {} {}",
            self.length,
            self.dimension(),
            self.design_distance
        );
        for r in &self.rows {
            let _ = writeln!(s, "{}", r.render('0', '1'));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::parse(1, e.to_string()))?;
        let [r, k, d] = nums[..] else {
            return Err(Error::parse(1, "expected `r kappa d`"));
        };
        let mut rows = Vec::with_capacity(k);
        for (idx, line) in lines.take(k) {
            let row = BitRow::parse(line.trim_end(), '0', '1')
                .filter(|row| row.len() == r)
                .ok_or_else(|| Error::parse(idx + 1, format!("expected {r} chars over {{0,1}}")))?;
            rows.push(row);
        }
        if rows.len() != k {
            return Err(Error::parse(rows.len() + 2, "missing generator rows"));
        }
        BinaryLinearCode::new(r, rows, d)
    }
}

/// Rank over GF(2) by elimination.
pub fn rank_gf2(rows: &[BitRow]) -> usize {
    let mut basis: Vec<(usize, BitRow)> = Vec::new();
    for row in rows {
        let mut v = row.clone();
        for (pivot, b) in &basis {
            if v.get(*pivot) {
                v.xor_assign(b);
            }
        }
        if let Some(p) = v.first_one() {
            basis.push((p, v));
        }
    }
    basis.len()
}

/// Is `target` in the GF(2) span of `rows`?
pub fn in_span(rows: &[BitRow], target: &BitRow) -> bool {
    let mut with = rows.to_vec();
    let base = rank_gf2(rows);
    with.push(target.clone());
    rank_gf2(&with) == base
}

/// First-order Reed–Muller code RM(1, m): the all-one row followed by the
/// `m` coordinate rows `x -> bit_i(x)`.
pub fn rm1(m: u32) -> Result<BinaryLinearCode> {
    if !(1..=16).contains(&m) {
        return Err(Error::RmOutOfRange(m));
    }
    let len = 1usize << m;
    let rows = affine_rows(len, m as usize);
    BinaryLinearCode::new(len, rows, len / 2)
}

/// All-one row plus `bits` rows where column `x` holds the binary digits of `x`.
fn affine_rows(len: usize, bits: usize) -> Vec<BitRow> {
    let mut rows = vec![BitRow::ones(len)];
    for i in 0..bits {
        rows.push(BitRow::from_indices(len, (0..len).filter(|x| (x >> i) & 1 == 1)));
    }
    rows
}

/// Exact minimum Hamming weight over all nonzero codewords.
pub fn min_distance(code: &BinaryLinearCode) -> Result<usize> {
    if code.dimension() == 0 {
        return Err(Error::EmptyCode);
    }
    let mut best = usize::MAX;
    let mut first = true;
    code.for_each_codeword(|w| {
        if first {
            first = false; // zero word
            return;
        }
        best = best.min(w.count_ones());
    })?;
    Ok(best)
}

/// Checks (B1) all-one word in the span and (B2) generator columns nonzero
/// and pairwise distinct.
pub fn check_b1_b2(code: &BinaryLinearCode) -> (bool, bool) {
    let b1 = in_span(code.rows(), &BitRow::ones(code.length()));
    let mut seen = HashSet::with_capacity(code.length());
    let mut b2 = true;
    for j in 0..code.length() {
        let col = code.generator_column(j);
        if col.is_zero() || !seen.insert(col) {
            b2 = false;
            break;
        }
    }
    (b1, b2)
}

/// Greedy Gilbert–Varshamov augmentation of a (B1)/(B2) seed.
///
/// The seed is RM(1, log2 r) when `r` is a power of two, otherwise the
/// all-one row plus the binary-digit rows of `0..r`. Candidates come from a
/// ChaCha8 stream seeded by `seed`; a candidate is accepted when its distance
/// to every word of the current span is at least `d`.
pub fn gv_greedy(r: usize, d: usize, kappa_target: usize, seed: u64) -> Result<BinaryLinearCode> {
    gv_greedy_with_budget(r, d, kappa_target, seed, DEFAULT_ATTEMPT_BUDGET)
}

pub fn gv_greedy_with_budget(
    r: usize,
    d: usize,
    kappa_target: usize,
    seed: u64,
    budget: u64,
) -> Result<BinaryLinearCode> {
    if !(2..=MAX_GREEDY_LENGTH).contains(&r) {
        return Err(Error::LengthOutOfRange(r));
    }
    let bits = r.next_power_of_two().trailing_zeros() as usize;
    let seed_rows = affine_rows(r, bits);
    if kappa_target > r {
        // dimension can never exceed the length, no budget suffices
        return Err(Error::BudgetExhausted {
            attempts: 0,
            best: seed_rows.len(),
            target: kappa_target,
        });
    }
    if 2 * d >= r {
        return Err(Error::DistanceTooLarge {
            d,
            half: r as f64 / 2.0,
        });
    }

    let mut span: Vec<u32> = span_u32(&seed_rows);
    let seed_min = span[1..].iter().map(|w| w.count_ones() as usize).min();
    if let Some(actual) = seed_min {
        if actual < d {
            return Err(Error::InitialDistance { actual, d });
        }
    }

    let mut rows = seed_rows;
    let mask: u32 = if r == 32 { u32::MAX } else { (1u32 << r) - 1 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0u64;
    while rows.len() < kappa_target {
        if attempts >= budget {
            return Err(Error::BudgetExhausted {
                attempts,
                best: rows.len(),
                target: kappa_target,
            });
        }
        attempts += 1;
        let cand = rng.random::<u32>() & mask;
        if span
            .iter()
            .all(|&w| ((w ^ cand).count_ones() as usize) >= d)
        {
            let extra: Vec<u32> = span.iter().map(|&w| w ^ cand).collect();
            span.extend(extra);
            rows.push(BitRow::from_u64(cand as u64, r));
        }
    }
    let code = BinaryLinearCode::new(r, rows, d)?;
    debug_assert_eq!(check_b1_b2(&code), (true, true));
    Ok(code)
}

fn span_u32(rows: &[BitRow]) -> Vec<u32> {
    let mut span = vec![0u32];
    for row in rows {
        let v = row.as_u64() as u32;
        let extra: Vec<u32> = span.iter().map(|&w| w ^ v).collect();
        span.extend(extra);
    }
    span
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn code_from(strs: &[&str], d: usize) -> BinaryLinearCode {
        let rows: Vec<BitRow> = strs.iter().map(|s| BitRow::parse(s, '0', '1').unwrap()).collect();
        BinaryLinearCode::new(rows[0].len(), rows, d).unwrap()
    }

    #[test]
    fn rm1_small_parameters() {
        let c = rm1(2).unwrap();
        assert_eq!((c.length(), c.dimension(), c.design_distance()), (4, 3, 2));
        let words: Vec<String> = c.codewords().unwrap().iter().map(|w| w.render('0', '1')).collect();
        assert!(words.contains(&"0000".to_string()));
        assert!(words.contains(&"1111".to_string()));

        let c3 = rm1(3).unwrap();
        assert_eq!(min_distance(&c3).unwrap(), 4);
        assert_eq!(check_b1_b2(&c3), (true, true));
        assert_eq!(rm1(0).unwrap_err(), Error::RmOutOfRange(0));
        assert_eq!(rm1(17).unwrap_err(), Error::RmOutOfRange(17));
    }

    #[test]
    fn rm1_distance_is_half_length() {
        for m in 1..=8 {
            let c = rm1(m).unwrap();
            assert_eq!(min_distance(&c).unwrap(), 1 << (m - 1), "m={m}");
            assert_eq!(check_b1_b2(&c), (true, true));
        }
    }

    #[test]
    fn min_distance_oracle_cases() {
        assert_eq!(min_distance(&code_from(&["11111"], 5)).unwrap(), 5);
        let empty = BinaryLinearCode::new(4, vec![], 1).unwrap();
        assert_eq!(min_distance(&empty).unwrap_err(), Error::EmptyCode);
    }

    #[test]
    fn b1_b2_inspection_cases() {
        assert_eq!(check_b1_b2(&code_from(&["1100", "0011"], 2)), (true, false));
        assert_eq!(check_b1_b2(&code_from(&["1111"], 4)), (true, false));
        assert!(!check_b1_b2(&code_from(&["1100", "0110"], 2)).0);
    }

    #[test]
    fn gv_greedy_reaches_target_with_distance() {
        let c = gv_greedy(16, 5, 6, 1).unwrap();
        assert_eq!(c.dimension(), 6);
        assert!(min_distance(&c).unwrap() >= 5);
        assert_eq!(check_b1_b2(&c), (true, true));
        // same seed, same code
        assert_eq!(c, gv_greedy(16, 5, 6, 1).unwrap());
    }

    #[test]
    fn gv_greedy_returns_seed_when_target_met() {
        let c = gv_greedy(8, 3, 4, 99).unwrap();
        assert_eq!(c.rows(), rm1(3).unwrap().rows());
    }

    #[test]
    fn gv_greedy_infeasible_target_exhausts_budget() {
        match gv_greedy(8, 5, 10, 0) {
            Err(Error::BudgetExhausted { best, target, .. }) => {
                assert_eq!(best, 4);
                assert_eq!(target, 10);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            gv_greedy_with_budget(16, 7, 12, 3, 2_000),
            Err(Error::BudgetExhausted { attempts: 2_000, .. })
        ));
    }

    #[test]
    fn gv_greedy_non_power_of_two_seed() {
        let c = gv_greedy(12, 3, 6, 5).unwrap();
        assert_eq!(check_b1_b2(&c), (true, true));
        assert!(min_distance(&c).unwrap() >= 3);
        assert!(matches!(gv_greedy(12, 5, 6, 5), Err(Error::InitialDistance { .. })));
    }

    #[test]
    fn text_round_trip() {
        let c = gv_greedy(16, 5, 6, 1).unwrap();
        let text = c.to_text();
        assert!(text.starts_with("16 6 5\n"));
        assert_eq!(BinaryLinearCode::from_text(&text).unwrap(), c);
        assert!(BinaryLinearCode::from_text("4 2 1\n0101\n").is_err());
    }

    proptest! {
        #[test]
        fn greedy_codes_keep_properties(seed in 0u64..500, r in 9usize..=20, d in 2usize..5) {
            if let Ok(c) = gv_greedy_with_budget(r, d, r / 2 + 2, seed, 3_000) {
                prop_assert_eq!(check_b1_b2(&c), (true, true));
                prop_assert!(min_distance(&c).unwrap() >= d);
                // half the codewords start with 0
                let zeros = c.codewords().unwrap().iter().filter(|w| !w.get(0)).count();
                prop_assert_eq!(zeros, 1 << (c.dimension() - 1));
            }
        }
    }
}
