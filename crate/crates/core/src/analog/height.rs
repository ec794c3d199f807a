use rand_distr::{Distribution, StandardNormal};

use super::code::AnalogCode;
use super::decode::height;
use crate::error::Result;
use crate::exec::{trial_rng, Execution};

/// Entries below this fraction of the largest are treated as exact zeros.
pub const SNAP_RELATIVE: f64 = 1e-12;

/// Sampled LOWER bound on the lambda-height of a code.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeightEstimate {
    pub lambda: usize,
    pub lower_bound: f64,
    /// Codewords examined: random ones plus one per encoder row.
    pub samples: usize,
}

fn snapped_height(c: &mut [f64], lambda: usize) -> Option<f64> {
    let max = c.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    if max == 0.0 {
        return None;
    }
    for x in c.iter_mut() {
        if x.abs() < SNAP_RELATIVE * max {
            *x = 0.0;
        }
    }
    height(c, lambda).ok()
}

/// Max of the lambda-height over `trials` codewords with Gaussian messages
/// and over every encoder row.
pub fn height_estimate(code: &AnalogCode, lambda: usize, trials: usize, seed: u64, exec: Execution) -> Result<HeightEstimate> {
    let k = code.k();
    let sampled = exec.map_indexed(trials, |t| {
        let mut rng = trial_rng(seed, t as u64);
        let m: Vec<f64> = (0..k).map(|_| StandardNormal.sample(&mut rng)).collect();
        snapped_height(&mut code.encode(&m), lambda)
    });
    let rows = code.encoder().iter().map(|row| snapped_height(&mut row.clone(), lambda));
    let mut best = 1.0f64;
    for h in sampled.into_iter().chain(rows).flatten() {
        best = best.max(h);
    }
    Ok(HeightEstimate {
        lambda,
        lower_bound: best,
        samples: trials + k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analog::{code_from_parity, SignMatrix};
    use crate::disjunct::td_disjunct;

    #[test]
    fn estimate_basics() {
        let code = code_from_parity(&SignMatrix::from_disjunct(&td_disjunct(25, 5, 2).unwrap())).unwrap();
        let a = height_estimate(&code, 0, 50, 3, Execution::Sequential).unwrap();
        assert_eq!(a.lower_bound, 1.0);
        let b = height_estimate(&code, 3, 2_000, 3, Execution::Parallel).unwrap();
        assert_eq!(b, height_estimate(&code, 3, 2_000, 3, Execution::Sequential).unwrap());
        assert!(b.lower_bound >= 1.0 && b.lower_bound.is_finite());
        // encoder rows vanish on the other information positions
        let big = height_estimate(&code, 24, 10, 3, Execution::Sequential).unwrap();
        assert_eq!(big.lower_bound, f64::INFINITY);
    }
}
