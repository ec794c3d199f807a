use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::SignMatrix;
use crate::error::{Error, Result};

/// Relative tolerance of the null-space membership check.
pub const NULL_SPACE_TOLERANCE: f64 = 1e-9;

/// Linear code over the reals given by the null space of `H`.
#[derive(Debug, Clone)]
pub struct AnalogCode {
    h: SignMatrix,
    rank: usize,
    info_set: Vec<usize>,
    parity_set: Vec<usize>,
    /// k x n systematic encoder: row `t` has a 1 at `info_set[t]` and zeros
    /// on the other information positions.
    encoder: Vec<Vec<f64>>,
    /// Encoder rows scaled to integers, when every entry fits in an `i64`.
    integer_rows: Option<Vec<Vec<i64>>>,
}

impl AnalogCode {
    pub fn parity_check(&self) -> &SignMatrix {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.h.n()
    }

    pub fn r(&self) -> usize {
        self.h.r()
    }

    pub fn k(&self) -> usize {
        self.info_set.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn information_set(&self) -> &[usize] {
        &self.info_set
    }

    pub fn parity_positions(&self) -> &[usize] {
        &self.parity_set
    }

    pub fn encoder(&self) -> &[Vec<f64>] {
        &self.encoder
    }

    pub fn integer_generator(&self) -> Option<&[Vec<i64>]> {
        self.integer_rows.as_deref()
    }

    /// `m * E` for a message of length k.
    pub fn encode(&self, m: &[f64]) -> Vec<f64> {
        assert_eq!(m.len(), self.k(), "message length must equal k");
        let mut c = vec![0.0; self.n()];
        for (row, &mt) in self.encoder.iter().zip(m) {
            if mt != 0.0 {
                for (cj, &e) in c.iter_mut().zip(row) {
                    *cj += mt * e;
                }
            }
        }
        c
    }

    /// Exact integer codeword `m * G` for the integer generator, or `None`
    /// when no integer generator exists or the result overflows.
    pub fn encode_integer(&self, m: &[i64]) -> Option<Vec<i64>> {
        let rows = self.integer_rows.as_ref()?;
        assert_eq!(m.len(), rows.len(), "message length must equal k");
        let mut c = vec![0i64; self.n()];
        for (row, &mt) in rows.iter().zip(m) {
            for (cj, &g) in c.iter_mut().zip(row) {
                *cj = cj.checked_add(mt.checked_mul(g)?)?;
            }
        }
        Some(c)
    }

    /// `||H c^T||_inf <= 1e-9 * ||c||_inf`.
    pub fn in_null_space(&self, c: &[f64]) -> bool {
        let inf = c.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
        let res = self.h.syndrome(c).iter().fold(0.0f64, |a, &x| a.max(x.abs()));
        res <= NULL_SPACE_TOLERANCE * inf
    }
}

/// Builds the code with parity-check matrix `h` by exact rational
/// elimination. Pivots are chosen greedily by largest magnitude, lowest
/// column first; pivot columns become parity positions.
pub fn code_from_parity(h: &SignMatrix) -> Result<AnalogCode> {
    let (r, n) = (h.r(), h.n());
    if h.nnz() == 0 {
        return Err(Error::ZeroMatrix);
    }
    let mut a: Vec<Vec<BigRational>> = (0..r)
        .map(|i| (0..n).map(|j| BigRational::from_integer(BigInt::from(h.sign(i, j)))).collect())
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut used_row = vec![false; r];
    let mut is_pivot = vec![false; n];
    loop {
        let mut best: Option<(usize, usize)> = None;
        for j in (0..n).filter(|&j| !is_pivot[j]) {
            for i in (0..r).filter(|&i| !used_row[i]) {
                if a[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| a[i][j].abs() > a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        let inv = a[pi][pj].recip();
        for x in a[pi].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[pi].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == pi || row[pj].is_zero() {
                continue;
            }
            let f = row[pj].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        used_row[pi] = true;
        is_pivot[pj] = true;
        pivots.push((pi, pj));
    }
    let rank = pivots.len();
    let info_set: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    if info_set.is_empty() {
        return Err(Error::NoInformation);
    }
    let mut parity_set: Vec<usize> = pivots.iter().map(|&(_, j)| j).collect();
    parity_set.sort_unstable();

    let mut exact_rows = Vec::with_capacity(info_set.len());
    for &f in &info_set {
        let mut row = vec![BigRational::zero(); n];
        row[f] = BigRational::one();
        for &(pi, pj) in &pivots {
            row[pj] = -a[pi][f].clone();
        }
        exact_rows.push(row);
    }
    let encoder = exact_rows
        .iter()
        .map(|row| row.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
        .collect();
    let integer_rows = exact_rows.iter().map(Vec::as_slice).map(integer_row).collect::<Option<Vec<_>>>();
    Ok(AnalogCode {
        h: h.clone(),
        rank,
        info_set,
        parity_set,
        encoder,
        integer_rows,
    })
}

fn integer_row(row: &[BigRational]) -> Option<Vec<i64>> {
    let mut l = BigInt::one();
    for x in row {
        l = l.lcm(x.denom());
    }
    row.iter()
        .map(|x| (x.numer() * (&l / x.denom())).to_i64())
        .collect()
}
