use log::debug;

use super::code::AnalogCode;
use super::matrix::SignMatrix;
use crate::bits::BitRow;
use crate::error::{Error, Result};

/// Largest `n^(tau+sigma)` the generic decoder will enumerate (32^3).
pub const GENERIC_BUDGET: u128 = 32 * 32 * 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeOutcome {
    /// Sorted error locations.
    Locations(Vec<usize>),
    /// The "e" flag: errors detected but not located.
    Detected,
}

impl DecodeOutcome {
    pub fn is_detected(&self) -> bool {
        matches!(self, DecodeOutcome::Detected)
    }

    pub fn locations(&self) -> Option<&[usize]> {
        match self {
            DecodeOutcome::Locations(v) => Some(v),
            DecodeOutcome::Detected => None,
        }
    }
}

/// `chi_rho(s)`: bit `i` is set iff `|s_i| > rho`.
pub fn quantize(s: &[f64], rho: f64) -> BitRow {
    BitRow::from_indices(s.len(), s.iter().enumerate().filter(|(_, v)| v.abs() > rho).map(|(i, _)| i))
}

/// `{j : |v_j| > delta}`.
pub fn supp_delta(v: &[f64], delta: f64) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| x.abs() > delta)
        .map(|(j, _)| j)
        .collect()
}

/// Ratio of the largest to the `(lambda+1)`-st largest absolute entry.
pub fn height(x: &[f64], lambda: usize) -> Result<f64> {
    if lambda > x.len() {
        return Err(Error::InvalidParameter(format!(
            "lambda={lambda} exceeds length {}",
            x.len()
        )));
    }
    let mut abs: Vec<f64> = x.iter().map(|v| v.abs()).collect();
    abs.sort_unstable_by(|a, b| b.total_cmp(a));
    if abs.first().is_none_or(|&m| m == 0.0) {
        return Err(Error::ZeroVector);
    }
    if lambda == x.len() || abs[lambda] == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(abs[0] / abs[lambda])
}

fn require_binary(h: &SignMatrix, what: &str) -> Result<()> {
    if !h.is_binary() {
        return Err(Error::Precondition(format!("{what} needs a 0-1 parity-check matrix")));
    }
    Ok(())
}

/// The matrix must be claimed `(lambda-1)`-disjunct.
fn require_order(h: &SignMatrix, lambda: usize) -> Result<()> {
    match h.disjunct_order() {
        Some(d) if d + 1 >= lambda => Ok(()),
        Some(d) => Err(Error::Precondition(format!(
            "matrix is claimed {d}-disjunct, lambda = {lambda} needs order {}",
            lambda.saturating_sub(1)
        ))),
        None => Err(Error::Precondition("matrix carries no claimed disjunct order".into())),
    }
}

#[derive(Debug, Clone)]
struct Check {
    t: Vec<usize>,
    /// Rows of R(T, J) with the single column of T they meet.
    rows: Vec<(usize, usize)>,
}

/// Algorithm over all pairs `T ⊆ J`, `|J| <= tau + sigma`, enumerated in
/// lexicographic `(J, T)` order.
///
/// A pair is accepted when every row that meets `J` only once, and that
/// inside `T`, has a syndrome above `rho`. Pairs with no such rows pass
/// vacuously. On matrices with negative entries each accepted column also
/// needs its syndromes to agree in sign with its column (after dividing out
/// the entry signs); this keeps a column and its sign-flipped twin apart.
#[derive(Debug, Clone)]
pub struct GenericDecoder<'a> {
    h: &'a SignMatrix,
    checks: Vec<Check>,
    vacuous: usize,
    signed: bool,
}

impl<'a> GenericDecoder<'a> {
    pub fn new(h: &'a SignMatrix, tau: usize, sigma: usize) -> Result<Self> {
        let m = tau + sigma;
        if m == 0 {
            return Err(Error::Precondition("tau + sigma must be positive".into()));
        }
        let lambda = 2 * tau + sigma;
        let signed = !h.is_binary();
        if signed {
            let [distinct, two_nonzero, _] = h.baseline_conditions();
            if !(distinct && two_nonzero) || lambda > 2 {
                return Err(Error::Precondition(
                    "signed matrices need distinct two-entry columns and 2*tau + sigma <= 2".into(),
                ));
            }
        } else {
            require_order(h, lambda)?;
        }
        let needed = (h.n() as u128).saturating_pow(m as u32);
        if needed > GENERIC_BUDGET {
            return Err(Error::BudgetExceeded {
                needed,
                budget: GENERIC_BUDGET,
            });
        }
        let mut checks = Vec::new();
        let mut j_set = Vec::with_capacity(m);
        enumerate_subsets(h.n(), m, 0, &mut j_set, &mut |j| {
            let mut t_set = Vec::with_capacity(j.len());
            enumerate_subsets_of(j, 0, &mut t_set, &mut |t| {
                checks.push(Check {
                    t: t.to_vec(),
                    rows: restricted_rows(h, t, j),
                });
            });
        });
        let vacuous = checks.iter().filter(|c| c.rows.is_empty()).count();
        if vacuous > 0 {
            debug!("generic decoder: {vacuous} of {} (T, J) pairs have empty R(T, J)", checks.len());
        }
        Ok(GenericDecoder {
            h,
            checks,
            vacuous,
            signed,
        })
    }

    /// Number of `(T, J)` pairs.
    pub fn pair_count(&self) -> usize {
        self.checks.len()
    }

    /// Pairs with empty `R(T, J)`, which always pass.
    pub fn vacuous_pairs(&self) -> usize {
        self.vacuous
    }

    pub fn decode(&self, y: &[f64], rho: f64) -> DecodeOutcome {
        let s = self.h.syndrome(y);
        let mut hit = vec![false; self.h.n()];
        for c in &self.checks {
            let lit = c.rows.iter().all(|&(i, _)| s[i].abs() > rho);
            if lit && (!self.signed || self.signs_agree(&s, c)) {
                for &t in &c.t {
                    hit[t] = true;
                }
            }
        }
        DecodeOutcome::Locations((0..hit.len()).filter(|&j| hit[j]).collect())
    }

    fn signs_agree(&self, s: &[f64], c: &Check) -> bool {
        c.t.iter().all(|&t| {
            let mut dir = 0i8;
            c.rows.iter().filter(|&&(_, col)| col == t).all(|&(i, _)| {
                let v = if (s[i] > 0.0) == (self.h.sign(i, t) > 0) { 1 } else { -1 };
                let ok = dir == 0 || dir == v;
                dir = v;
                ok
            })
        })
    }
}

/// Sorted subsets of `0..n` of size `1..=max`, in lexicographic order.
fn enumerate_subsets(n: usize, max: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    for k in start..n {
        cur.push(k);
        f(cur);
        if cur.len() < max {
            enumerate_subsets(n, max, k + 1, cur, f);
        }
        cur.pop();
    }
}

/// Nonempty sorted subsets of `set`, in lexicographic order.
fn enumerate_subsets_of(set: &[usize], start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    for k in start..set.len() {
        cur.push(set[k]);
        f(cur);
        enumerate_subsets_of(set, k + 1, cur, f);
        cur.pop();
    }
}

/// Rows meeting `J` in exactly one column, which lies in `T`.
fn restricted_rows(h: &SignMatrix, t: &[usize], j: &[usize]) -> Vec<(usize, usize)> {
    (0..h.r())
        .filter_map(|i| {
            let mut hits = j.iter().filter(|&&c| h.sign(i, c) != 0);
            let first = *hits.next()?;
            (hits.next().is_none() && t.contains(&first)).then_some((i, first))
        })
        .collect()
}

/// Locates errors via `Supp_{lambda-tau-sigma}(chi_rho(s) H)`.
#[derive(Debug, Clone)]
pub struct EfficientDecoder<'a> {
    h: &'a SignMatrix,
    threshold: usize,
    op_bound: usize,
}

impl<'a> EfficientDecoder<'a> {
    pub fn new(h: &'a SignMatrix, tau: usize, sigma: usize, lambda: usize, w: usize) -> Result<Self> {
        require_binary(h, "the efficient decoder")?;
        require_order(h, lambda)?;
        if h.min_row_weight() < 2 {
            return Err(Error::Precondition("(H1) violated: some row has weight below 2".into()));
        }
        if h.max_col_weight() > w {
            return Err(Error::Precondition(format!(
                "(H2) violated: column weight {} exceeds w = {w}",
                h.max_col_weight()
            )));
        }
        if 2 * tau + sigma + w > 2 * lambda {
            return Err(Error::Precondition(format!(
                "2*tau + sigma <= 2*lambda - w violated: {} > {}",
                2 * tau + sigma,
                2 * lambda as isize - w as isize
            )));
        }
        if tau + sigma > lambda {
            return Err(Error::Precondition("tau + sigma must not exceed lambda".into()));
        }
        let op_bound = 2 * (h.r() * h.max_row_weight()).min(w * h.n());
        Ok(EfficientDecoder {
            h,
            threshold: lambda - tau - sigma,
            op_bound,
        })
    }

    /// `2 min{r rho, w n}`.
    pub fn op_bound(&self) -> usize {
        self.op_bound
    }

    /// Returns the outcome and the number of real additions performed.
    pub fn decode(&self, y: &[f64], rho: f64) -> (DecodeOutcome, usize) {
        let mut ops = 0;
        let mut counts = vec![0usize; self.h.n()];
        for i in 0..self.h.r() {
            let cols = self.h.row_support(i);
            let mut s = 0.0;
            for (k, &j) in cols.iter().enumerate() {
                s += y[j];
                if k > 0 {
                    ops += 1;
                }
            }
            if s.abs() > rho {
                for &j in cols {
                    counts[j] += 1;
                    ops += 1;
                }
            }
        }
        debug_assert!(ops <= self.op_bound);
        let out = (0..counts.len()).filter(|&j| counts[j] > self.threshold).collect();
        (DecodeOutcome::Locations(out), ops)
    }
}

/// Returns the empty set when no syndrome exceeds `rho`, otherwise "e".
#[derive(Debug, Clone)]
pub struct DetectDecoder<'a> {
    h: &'a SignMatrix,
}

impl<'a> DetectDecoder<'a> {
    pub fn new(h: &'a SignMatrix, lambda: usize) -> Result<Self> {
        require_binary(h, "the detection decoder")?;
        require_order(h, lambda)?;
        Ok(DetectDecoder { h })
    }

    pub fn decode(&self, y: &[f64], rho: f64) -> DecodeOutcome {
        if quantize(&self.h.syndrome(y), rho).is_zero() {
            DecodeOutcome::Locations(Vec::new())
        } else {
            DecodeOutcome::Detected
        }
    }
}

pub fn decode_generic(code: &AnalogCode, y: &[f64], tau: usize, sigma: usize, rho: f64) -> Result<DecodeOutcome> {
    Ok(GenericDecoder::new(code.parity_check(), tau, sigma)?.decode(y, rho))
}

pub fn decode_efficient(
    code: &AnalogCode,
    y: &[f64],
    tau: usize,
    sigma: usize,
    rho: f64,
    lambda: usize,
    w: usize,
) -> Result<(DecodeOutcome, usize)> {
    Ok(EfficientDecoder::new(code.parity_check(), tau, sigma, lambda, w)?.decode(y, rho))
}

pub fn decode_detect(code: &AnalogCode, y: &[f64], rho: f64, lambda: usize) -> Result<DecodeOutcome> {
    Ok(DetectDecoder::new(code.parity_check(), lambda)?.decode(y, rho))
}
