use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analog::AnalogCode;
use crate::error::{Error, Result};

/// Crossbar holding an encoded matrix `A` (one codeword per row), an input
/// vector `u`, a fault plan and a noise level.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossbarInstance {
    pub a: Vec<Vec<f64>>,
    pub u: Vec<f64>,
    /// `(column, magnitude)` outliers added to the read.
    pub faults: Vec<(usize, f64)>,
    /// Tolerable noise is uniform on `[-delta, delta]`.
    pub delta: f64,
    pub seed: u64,
}

impl CrossbarInstance {
    pub fn n(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    /// Every row of `A` must lie in the null space of `code`'s parity check.
    pub fn rows_are_codewords(&self, code: &AnalogCode) -> bool {
        self.a.iter().all(|row| row.len() == code.n() && code.in_null_space(row))
    }

    fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.u.len() != self.a.len() {
            return Err(Error::DimensionMismatch(format!(
                "u has {} entries, A has {} rows",
                self.u.len(),
                self.a.len()
            )));
        }
        if self.a.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch("rows of A differ in length".into()));
        }
        let mut seen = vec![false; n];
        for &(j, _) in &self.faults {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidParameter(format!("fault column {j} out of range or repeated")));
            }
        }
        if self.delta.is_nan() || self.delta < 0.0 {
            return Err(Error::InvalidParameter("delta must be non-negative".into()));
        }
        Ok(())
    }
}

/// `y = u A + eps + e`.
pub fn simulate_read(inst: &CrossbarInstance) -> Result<Vec<f64>> {
    inst.validate()?;
    let mut y = vec![0.0; inst.n()];
    for (row, &ui) in inst.a.iter().zip(&inst.u) {
        for (yj, &aij) in y.iter_mut().zip(row) {
            *yj += ui * aij;
        }
    }
    if inst.delta > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(inst.seed);
        for yj in y.iter_mut() {
            *yj += rng.random_range(-inst.delta..=inst.delta);
        }
    }
    for &(j, v) in &inst.faults {
        y[j] += v;
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst() -> CrossbarInstance {
        CrossbarInstance {
            a: vec![vec![1.0, 2.0, 3.0], vec![-1.0, 0.5, 4.0]],
            u: vec![2.0, 1.0],
            faults: vec![],
            delta: 0.0,
            seed: 5,
        }
    }

    #[test]
    fn noiseless_read_is_exact() {
        assert_eq!(simulate_read(&inst()).unwrap(), vec![1.0, 4.5, 10.0]);
        let mut unit = inst();
        unit.u = vec![0.0, 1.0];
        assert_eq!(simulate_read(&unit).unwrap(), vec![-1.0, 0.5, 4.0]);
    }

    #[test]
    fn noise_is_seeded_and_bounded() {
        let mut x = inst();
        x.delta = 0.5;
        x.faults = vec![(1, 100.0)];
        let a = simulate_read(&x).unwrap();
        assert_eq!(a, simulate_read(&x).unwrap());
        assert!((a[0] - 1.0).abs() <= 0.5 && (a[1] - 104.5).abs() <= 0.5);
    }

    #[test]
    fn rejects_bad_shapes() {
        let mut x = inst();
        x.u.push(1.0);
        assert!(simulate_read(&x).is_err());
        let mut y = inst();
        y.faults = vec![(0, 1.0), (0, 2.0)];
        assert!(simulate_read(&y).is_err());
    }
}
