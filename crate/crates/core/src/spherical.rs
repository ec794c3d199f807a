//! Spherical parity-check matrices built from binary seed codes.
//!
//! Columns are the codewords of the seed code whose first entry is 0, with
//! `0 -> +1/sqrt(r)` and `1 -> -1/sqrt(r)`. The sign pattern is kept as packed
//! bits (set bit = negative entry); inner products between columns and
//! between rows are computed exactly as `len - 2 * popcount(xor)`.

use std::fmt::Write as _;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::binary_codes::{check_b1_b2, BinaryLinearCode, MAX_ENUM_DIMENSION};
use crate::bits::BitRow;
use crate::error::{Error, Result};
use crate::exec::{trial_rng, Execution};

/// Relative slack granted to inequalities that hold mathematically.
pub const GUARANTEED_SLACK: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct SphericalParityMatrix {
    r: usize,
    /// Column sign patterns, each of length r.
    columns: Vec<BitRow>,
    /// Row sign patterns, each of length n.
    rows: Vec<BitRow>,
    source_id: String,
    truncated: bool,
}

impl PartialEq for SphericalParityMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.columns == other.columns && self.source_id == other.source_id
    }
}

impl SphericalParityMatrix {
    pub fn from_columns(r: usize, columns: Vec<BitRow>, source_id: impl Into<String>) -> Result<Self> {
        if columns.iter().any(|c| c.len() != r) {
            return Err(Error::DimensionMismatch(format!("columns must have {r} entries")));
        }
        let n = columns.len();
        let mut rows = vec![BitRow::zeros(n); r];
        for (j, col) in columns.iter().enumerate() {
            for i in col.iter_ones() {
                rows[i].set(j, true);
            }
        }
        let source_id = source_id.into();
        if source_id.contains('\n') {
            return Err(Error::InvalidParameter("source id must be a single line".into()));
        }
        Ok(SphericalParityMatrix {
            r,
            columns,
            rows,
            source_id,
            truncated: false,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn source_id(&self) -> &str {
        &self.source_id
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn column_signs(&self) -> &[BitRow] {
        &self.columns
    }

    pub fn row_signs(&self) -> &[BitRow] {
        &self.rows
    }

    pub fn scale(&self) -> f64 {
        1.0 / (self.r as f64).sqrt()
    }

    /// Sign (+1 or -1) of entry `(i, j)`.
    pub fn sign(&self, i: usize, j: usize) -> f64 {
        if self.columns[j].get(i) {
            -1.0
        } else {
            1.0
        }
    }

    /// Unscaled inner product of columns `a` and `b` (an integer in `-r..=r`).
    pub fn column_dot(&self, a: usize, b: usize) -> i64 {
        self.r as i64 - 2 * self.columns[a].distance(&self.columns[b]) as i64
    }

    /// `H x^T` including the `1/sqrt(r)` scale.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n());
        let scale = self.scale();
        self.rows
            .iter()
            .map(|row| {
                let mut acc = 0.0;
                for (j, &v) in x.iter().enumerate() {
                    if v != 0.0 {
                        acc += if row.get(j) { -v } else { v };
                    }
                }
                acc * scale
            })
            .collect()
    }

    /// Like [`apply`](Self::apply) but only over the listed nonzero positions.
    fn apply_sparse(&self, support: &[(usize, f64)]) -> Vec<f64> {
        let scale = self.scale();
        (0..self.r)
            .map(|i| {
                support
                    .iter()
                    .map(|&(j, v)| if self.columns[j].get(i) { -v } else { v })
                    .sum::<f64>()
                    * scale
            })
            .collect()
    }

    /// Text form: `spherical r n`, the source id, then r lines over `{+,-}`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "spherical {} {}", self.r, self.n());
        let _ = writeln!(s, "{}", self.source_id);
        for row in &self.rows {
            let _ = writeln!(s, "{}", row.render('+', '-'));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let (r, n) = match toks.as_slice() {
            ["spherical", r, n] => (
                r.parse::<usize>().map_err(|e| Error::parse(1, e.to_string()))?,
                n.parse::<usize>().map_err(|e| Error::parse(1, e.to_string()))?,
            ),
            _ => return Err(Error::parse(1, "expected `spherical r n`")),
        };
        let source_id = lines.next().ok_or_else(|| Error::parse(2, "missing source id"))?;
        let mut columns = vec![BitRow::zeros(r); n];
        for i in 0..r {
            let line = lines
                .next()
                .ok_or_else(|| Error::parse(i + 3, "missing matrix row"))?;
            let row = BitRow::parse(line.trim_end(), '+', '-')
                .filter(|row| row.len() == n)
                .ok_or_else(|| Error::parse(i + 3, format!("expected {n} chars over {{+,-}}")))?;
            for j in row.iter_ones() {
                columns[j].set(i, true);
            }
        }
        SphericalParityMatrix::from_columns(r, columns, source_id)
    }
}

/// Builds H(B) from the codewords of `code` with first entry 0, in
/// lexicographic order, optionally keeping only the first `n_truncate`.
pub fn build_spherical(code: &BinaryLinearCode, n_truncate: Option<usize>) -> Result<SphericalParityMatrix> {
    let (b1, b2) = check_b1_b2(code);
    if !b1 {
        return Err(Error::PropertyViolated("(B1): all-one word missing"));
    }
    if !b2 {
        return Err(Error::PropertyViolated("(B2): generator columns not distinct and nonzero"));
    }
    if code.dimension() > MAX_ENUM_DIMENSION {
        return Err(Error::DimensionTooLarge(code.dimension()));
    }
    let full = 1usize << (code.dimension() - 1);
    if let Some(t) = n_truncate {
        if t > full || t == 0 {
            return Err(Error::InvalidParameter(format!(
                "truncation {t} outside 1..={full}"
            )));
        }
    }
    let mut words = Vec::with_capacity(full);
    code.for_each_codeword(|w| {
        if !w.get(0) {
            words.push(w.clone());
        }
    })?;
    words.sort_by(|a, b| a.lex_cmp(b));
    let truncated = n_truncate.is_some_and(|t| t < full);
    if let Some(t) = n_truncate {
        words.truncate(t);
    }
    let id = format!(
        "binary code r={} kappa={} d={}{}",
        code.length(),
        code.dimension(),
        code.design_distance(),
        if truncated { " truncated" } else { "" }
    );
    let mut h = SphericalParityMatrix::from_columns(code.length(), words, id)?;
    h.truncated = truncated;
    Ok(h)
}

/// Exact coherence: the largest unscaled |column inner product| over distinct pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coherence {
    pub max_abs_dot: i64,
    pub r: usize,
}

impl Coherence {
    pub fn value(&self) -> f64 {
        self.max_abs_dot as f64 / self.r as f64
    }
}

pub fn coherence(h: &SphericalParityMatrix) -> Result<Coherence> {
    let n = h.n();
    if n < 2 {
        return Err(Error::InvalidParameter("coherence needs at least two columns".into()));
    }
    let mut best = 0i64;
    for a in 0..n {
        for b in a + 1..n {
            best = best.max(h.column_dot(a, b).abs());
        }
    }
    Ok(Coherence {
        max_abs_dot: best,
        r: h.r(),
    })
}

/// True iff every pair of distinct rows is orthogonal.
pub fn row_orthogonality_check(h: &SphericalParityMatrix) -> bool {
    let n = h.n() as i64;
    let rows = h.row_signs();
    (0..rows.len()).all(|a| (a + 1..rows.len()).all(|b| n - 2 * rows[a].distance(&rows[b]) as i64 == 0))
}

/// `eta_lambda(theta) = 1 / (1/theta + 2 - lambda)`, with `eta = 0` at `theta = 0`.
pub fn eta(theta: f64, lambda: usize) -> f64 {
    if theta == 0.0 {
        return 0.0;
    }
    1.0 / (1.0 / theta + 2.0 - lambda as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    Value(f64),
    Inapplicable,
}

impl Bound {
    pub fn value(self) -> Option<f64> {
        match self {
            Bound::Value(v) => Some(v),
            Bound::Inapplicable => None,
        }
    }
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Bound::Value(v) => write!(f, "{v}"),
            Bound::Inapplicable => write!(f, "inapplicable"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalBoundReport {
    pub theta: f64,
    pub lambda: usize,
    pub eta: f64,
    /// Coherence-to-RIP bound `2n / sqrt(r (1 - (lambda-1) theta))`.
    pub coherence_rip: Bound,
    /// Infinity-norm bound `2n / sqrt(r (1+theta)(1-eta))`.
    pub infinity_norm: Bound,
}

/// Upper bounds on the minimal outlier-to-noise ratio of C(B).
pub fn gamma_bounds(n: usize, r: usize, theta: f64, lambda: usize) -> Result<SphericalBoundReport> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::InvalidParameter(format!("theta={theta} outside (0,1)")));
    }
    let max_lambda = (1.0 / theta).ceil() as usize;
    if lambda < 1 || lambda > max_lambda {
        return Err(Error::InvalidParameter(format!(
            "lambda={lambda} outside 1..={max_lambda}"
        )));
    }
    let two_n = 2.0 * n as f64;
    let r = r as f64;
    let rad5 = r * (1.0 - (lambda as f64 - 1.0) * theta);
    let eta = eta(theta, lambda);
    let rad7 = r * (1.0 + theta) * (1.0 - eta);
    let bound = |rad: f64| {
        if rad > 0.0 {
            Bound::Value(two_n / rad.sqrt())
        } else {
            Bound::Inapplicable
        }
    };
    Ok(SphericalBoundReport {
        theta,
        lambda,
        eta,
        coherence_rip: bound(rad5),
        infinity_norm: bound(rad7),
    })
}

/// `theta = 1 - 2d/r`.
pub fn theta_of(r: usize, d: usize) -> f64 {
    1.0 - 2.0 * d as f64 / r as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollaryParams {
    pub r: usize,
    pub d: usize,
    pub theta: f64,
    /// `lambda = 1`: no distance constraint on the seed code.
    pub degenerate: bool,
}

/// `r = 2 lambda^2 ceil(ln 2n)`, `d = lambda (lambda-1) ceil(ln 2n)`.
pub fn cor8_params(n: usize, lambda: usize) -> Result<CorollaryParams> {
    if lambda == 0 || n == 0 {
        return Err(Error::InvalidParameter("n and lambda must be positive".into()));
    }
    let l = ((2 * n) as f64).ln().ceil() as usize;
    let r = 2 * lambda * lambda * l;
    let d = lambda * (lambda - 1) * l;
    if r >= n {
        return Err(Error::Infeasible(format!(
            "r = 2*lambda^2*ceil(ln 2n) = {r} is not below n = {n}"
        )));
    }
    Ok(CorollaryParams {
        r,
        d,
        theta: 1.0 / lambda as f64,
        degenerate: lambda == 1,
    })
}

fn check_lambda(h: &SphericalParityMatrix, mu: f64, weight: usize, lambda: usize) -> Result<()> {
    if weight > lambda {
        return Err(Error::InvalidParameter(format!(
            "error weight {weight} exceeds lambda {lambda}"
        )));
    }
    let cap = if mu > 0.0 {
        ((1.0 / mu).ceil() as usize).min(h.n())
    } else {
        h.n()
    };
    if lambda == 0 || lambda > cap {
        return Err(Error::InvalidParameter(format!("lambda={lambda} outside 1..={cap}")));
    }
    Ok(())
}

fn support_of(e: &[f64]) -> Vec<(usize, f64)> {
    e.iter().copied().enumerate().filter(|&(_, v)| v != 0.0).collect()
}

/// Both sides of the infinity-norm RIP-type inequality for one sparse vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalitySides {
    pub lhs: f64,
    pub rhs: f64,
}

impl InequalitySides {
    pub fn holds(&self) -> bool {
        self.lhs >= self.rhs * (1.0 - GUARANTEED_SLACK)
    }
}

/// `||H e^T||_2^2 >= (1+mu)(1-eta_lambda(mu)) ||e||_inf^2`.
pub fn rip_alt_sides(h: &SphericalParityMatrix, mu: f64, e: &[f64], lambda: usize) -> Result<InequalitySides> {
    if e.len() != h.n() {
        return Err(Error::DimensionMismatch(format!("e has {} entries, H has {} columns", e.len(), h.n())));
    }
    let support = support_of(e);
    check_lambda(h, mu, support.len(), lambda)?;
    let he = h.apply_sparse(&support);
    let lhs: f64 = he.iter().map(|v| v * v).sum();
    let inf = support.iter().map(|&(_, v)| v.abs()).fold(0.0, f64::max);
    let rhs = (1.0 + mu) * (1.0 - eta(mu, lambda)) * inf * inf;
    Ok(InequalitySides { lhs, rhs })
}

pub fn rip_alt_check(h: &SphericalParityMatrix, mu: f64, e: &[f64], lambda: usize) -> Result<bool> {
    rip_alt_sides(h, mu, e, lambda).map(|s| s.holds())
}

/// `||H e^T||_2^2 >= (1 - (lambda-1) mu) ||e||_2^2`.
pub fn coherence_rip_sides(h: &SphericalParityMatrix, mu: f64, e: &[f64], lambda: usize) -> Result<InequalitySides> {
    let support = support_of(e);
    if support.len() > lambda {
        return Err(Error::InvalidParameter("error weight exceeds lambda".into()));
    }
    let he = h.apply_sparse(&support);
    let lhs: f64 = he.iter().map(|v| v * v).sum();
    let l2: f64 = support.iter().map(|&(_, v)| v * v).sum();
    Ok(InequalitySides {
        lhs,
        rhs: (1.0 - (lambda as f64 - 1.0) * mu) * l2,
    })
}

/// Outcome of a seeded Monte Carlo inequality sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub check: &'static str,
    pub n: usize,
    pub r: usize,
    pub lambda: usize,
    pub trials: usize,
    pub seed: u64,
    pub violations: usize,
    /// Smallest `lhs / rhs` seen for lower bounds, or largest `value / bound`
    /// for upper bounds.
    pub extreme_ratio: f64,
}

impl CheckReport {
    pub const CSV_HEADER: &'static str = "check,n,r,lambda,trials,seed,violations,extreme_ratio";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.17e}",
            self.check, self.n, self.r, self.lambda, self.trials, self.seed, self.violations, self.extreme_ratio
        )
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

pub fn reports_to_csv(reports: &[CheckReport]) -> String {
    let mut s = String::from(CheckReport::CSV_HEADER);
    s.push('\n');
    for r in reports {
        s.push_str(&r.csv_row());
        s.push('\n');
    }
    s
}

/// Random vector with at most `lambda` nonzeros. Mixes Gaussian magnitudes
/// with the equal-tail shape `(1, x, ..., x)` that minimises the
/// infinity-norm bound.
fn sample_sparse<R: Rng>(rng: &mut R, n: usize, lambda: usize, mu: f64) -> Vec<f64> {
    let weight = rng.random_range(1..=lambda.min(n));
    let mut idx: Vec<usize> = rand::seq::index::sample(rng, n, weight).into_vec();
    idx.sort_unstable();
    let mut e = vec![0.0; n];
    let shaped = rng.random_bool(0.5);
    let peak: f64 = rng.random_range(0.1..10.0);
    for (k, &j) in idx.iter().enumerate() {
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let mag = if shaped {
            let x = peak * eta(mu, lambda) * rng.random_range(0.9..1.1);
            if k == 0 { peak } else { x }
        } else {
            let g: f64 = StandardNormal.sample(rng);
            g.abs() + 1e-3
        };
        e[j] = sign * mag;
    }
    e
}

/// Seeded sweep of the infinity-norm inequality and the coherence-RIP
/// inequality over random vectors of weight at most `lambda`.
pub fn rip_monte_carlo(
    h: &SphericalParityMatrix,
    lambda: usize,
    trials: usize,
    seed: u64,
    exec: Execution,
) -> Result<[CheckReport; 2]> {
    let mu = coherence(h)?.value();
    check_lambda(h, mu, 0, lambda)?;
    let outcomes = exec.map_indexed(trials, |t| {
        let mut rng = trial_rng(seed, t as u64);
        let e = sample_sparse(&mut rng, h.n(), lambda, mu);
        let alt = rip_alt_sides(h, mu, &e, lambda).expect("weight within lambda");
        let coh = coherence_rip_sides(h, mu, &e, lambda).expect("weight within lambda");
        (alt, coh)
    });
    let mut reports = [
        CheckReport {
            check: "rip_alt_inf_norm",
            n: h.n(),
            r: h.r(),
            lambda,
            trials,
            seed,
            violations: 0,
            extreme_ratio: f64::INFINITY,
        },
        CheckReport {
            check: "coherence_rip_l2",
            n: h.n(),
            r: h.r(),
            lambda,
            trials,
            seed,
            violations: 0,
            extreme_ratio: f64::INFINITY,
        },
    ];
    for (alt, coh) in outcomes {
        for (rep, sides) in reports.iter_mut().zip([alt, coh]) {
            if !sides.holds() {
                rep.violations += 1;
            }
            if sides.rhs > 0.0 {
                rep.extreme_ratio = rep.extreme_ratio.min(sides.lhs / sides.rhs);
            }
        }
    }
    Ok(reports)
}

/// Seeded sweep of `||H eps^T||_2 <= n / sqrt(r)` over `eps` uniform in
/// `[-1,1]^n`, plus the row-sign patterns that attain equality.
pub fn noise_norm_monte_carlo(h: &SphericalParityMatrix, trials: usize, seed: u64, exec: Execution) -> CheckReport {
    let n = h.n();
    let bound = n as f64 / (h.r() as f64).sqrt();
    let mut ratios = exec.map_indexed(trials, |t| {
        let mut rng = trial_rng(seed, t as u64);
        let eps: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
        norm2(&h.apply(&eps)) / bound
    });
    // eps = sign pattern of a row: that row alone carries n/sqrt(r)
    for row in h.row_signs() {
        let eps: Vec<f64> = (0..n).map(|j| if row.get(j) { -1.0 } else { 1.0 }).collect();
        ratios.push(norm2(&h.apply(&eps)) / bound);
    }
    let violations = ratios.iter().filter(|&&x| x > 1.0 + GUARANTEED_SLACK).count();
    CheckReport {
        check: "noise_l2_norm",
        n,
        r: h.r(),
        lambda: 0,
        trials,
        seed,
        violations,
        extreme_ratio: ratios.iter().copied().fold(0.0, f64::max),
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
