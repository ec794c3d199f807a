use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::analog::{supp_delta, AnalogCode, DecodeOutcome, DetectDecoder, EfficientDecoder, GenericDecoder};
use crate::error::{Error, Result};
use crate::exec::{trial_rng, Execution};

/// Largest outlier magnitude drawn in random mode.
pub const MAX_OUTLIER: f64 = 1e3;
/// Relative excess over the threshold in adversarial mode.
pub const ADVERSARIAL_EXCESS: f64 = 1e-6;
/// Integer messages are drawn from `-MESSAGE_RANGE..=MESSAGE_RANGE`.
pub const MESSAGE_RANGE: i64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderKind {
    Efficient,
    Generic,
    Detect,
}

impl DecoderKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DecoderKind::Efficient => "efficient",
            DecoderKind::Generic => "generic",
            DecoderKind::Detect => "detect",
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "efficient" => Ok(DecoderKind::Efficient),
            "generic" => Ok(DecoderKind::Generic),
            "detect" => Ok(DecoderKind::Detect),
            other => Err(Error::InvalidParameter(format!("unknown decoder `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    /// Label written to the report; must not contain commas.
    pub construction: String,
    pub decoder: DecoderKind,
    pub tau: usize,
    pub sigma: usize,
    /// Decoder threshold.
    pub rho: f64,
    pub lambda: usize,
    /// Column-weight bound for the efficient decoder.
    pub w: usize,
    /// Outlier threshold; `None` means `2 * rho`.
    pub outlier_threshold: Option<f64>,
    pub trials: usize,
    pub seed: u64,
    pub adversarial: bool,
    /// Relative gap kept above the threshold by random-mode outliers.
    pub margin: f64,
    pub timing: bool,
}

impl CampaignConfig {
    pub fn new(construction: impl Into<String>, decoder: DecoderKind, tau: usize, sigma: usize, rho: f64, lambda: usize) -> Self {
        CampaignConfig {
            construction: construction.into(),
            decoder,
            tau,
            sigma,
            rho,
            lambda,
            w: lambda,
            outlier_threshold: None,
            trials: 1000,
            seed: 0,
            adversarial: false,
            margin: 1e-3,
            timing: false,
        }
    }

    pub fn threshold(&self) -> f64 {
        self.outlier_threshold.unwrap_or(2.0 * self.rho)
    }

    /// One-line description for report headers.
    pub fn describe(&self) -> String {
        format!(
            "construction={} decoder={} tau={} sigma={} rho={} lambda={} w={} threshold={} trials={} seed={} adversarial={} margin={}",
            self.construction,
            self.decoder,
            self.tau,
            self.sigma,
            self.rho,
            self.lambda,
            self.w,
            self.threshold(),
            self.trials,
            self.seed,
            self.adversarial,
            self.margin
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignReport {
    pub construction: String,
    pub decoder: DecoderKind,
    pub n: usize,
    pub r: usize,
    pub lambda: usize,
    pub tau: usize,
    pub sigma: usize,
    pub rho: f64,
    pub trials: usize,
    pub d1_violations: usize,
    pub d2_violations: usize,
    /// Additions per trial (efficient decoder only).
    pub ops: Option<Vec<usize>>,
    pub op_bound: Option<usize>,
    /// First trial index that broke the contract.
    pub first_violation: Option<usize>,
    pub seconds: Option<f64>,
}

impl CampaignReport {
    pub const CSV_HEADER: &'static str = "construction,n,r,lambda,tau,sigma,rho,trials,d1_viol,d2_viol,max_ops,seconds";

    pub fn max_ops(&self) -> Option<usize> {
        self.ops.as_ref().map(|o| o.iter().copied().max().unwrap_or(0))
    }

    pub fn violations(&self) -> usize {
        self.d1_violations + self.d2_violations
    }

    /// True when no trial exceeded the addition bound.
    pub fn ops_within_bound(&self) -> bool {
        match (&self.ops, self.op_bound) {
            (Some(ops), Some(b)) => ops.iter().all(|&o| o <= b),
            _ => true,
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.construction,
            self.n,
            self.r,
            self.lambda,
            self.tau,
            self.sigma,
            self.rho,
            self.trials,
            self.d1_violations,
            self.d2_violations,
            self.max_ops().map(|m| m.to_string()).unwrap_or_default(),
            self.seconds.map(|s| format!("{s:.3}")).unwrap_or_default()
        )
    }
}

/// CSV with `#` comment lines, the header, then one row per report.
pub fn campaign_csv(comments: &[String], reports: &[CampaignReport]) -> String {
    let mut s = String::new();
    for c in comments {
        for line in c.lines() {
            s.push_str("# ");
            s.push_str(line);
            s.push('\n');
        }
    }
    s.push_str(CampaignReport::CSV_HEADER);
    s.push('\n');
    for r in reports {
        s.push_str(&r.csv_row());
        s.push('\n');
    }
    s
}

enum Active<'a> {
    Efficient(EfficientDecoder<'a>),
    Generic(GenericDecoder<'a>),
    Detect(DetectDecoder<'a>),
}

impl Active<'_> {
    fn decode(&self, y: &[f64], rho: f64) -> (DecodeOutcome, Option<usize>) {
        match self {
            Active::Efficient(d) => {
                let (out, ops) = d.decode(y, rho);
                (out, Some(ops))
            }
            Active::Generic(d) => (d.decode(y, rho), None),
            Active::Detect(d) => (d.decode(y, rho), None),
        }
    }
}

/// Single trial: the read, the error vector and the decoder's verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct Trial {
    pub y: Vec<f64>,
    pub e: Vec<f64>,
    pub outcome: DecodeOutcome,
    pub ops: Option<usize>,
    pub d1_violated: bool,
    pub d2_violated: bool,
}

/// (D1): with at most `tau` errors the output is a set inside the support.
/// (D2): any set output contains every entry above the threshold.
pub fn contract_violations(e: &[f64], outcome: &DecodeOutcome, tau: usize, threshold: f64) -> (bool, bool) {
    let support = supp_delta(e, 0.0);
    let d1 = support.len() <= tau
        && match outcome.locations() {
            None => true,
            Some(out) => out.iter().any(|j| support.binary_search(j).is_err()),
        };
    let d2 = match outcome.locations() {
        None => false,
        Some(out) => supp_delta(e, threshold).iter().any(|j| out.binary_search(j).is_err()),
    };
    (d1, d2)
}

fn sample_codeword<R: Rng>(code: &AnalogCode, rng: &mut R) -> Vec<f64> {
    let k = code.k();
    if code.integer_generator().is_some() {
        let m: Vec<i64> = (0..k).map(|_| rng.random_range(-MESSAGE_RANGE..=MESSAGE_RANGE)).collect();
        if let Some(c) = code.encode_integer(&m) {
            if c.iter().all(|&x| x.unsigned_abs() < 1 << 52) {
                return c.into_iter().map(|x| x as f64).collect();
            }
        }
    }
    let m: Vec<f64> = (0..k).map(|_| StandardNormal.sample(rng)).collect();
    code.encode(&m)
}

fn random_sign<R: Rng>(rng: &mut R) -> f64 {
    if rng.random_bool(0.5) {
        1.0
    } else {
        -1.0
    }
}

fn run_trial(code: &AnalogCode, dec: &Active<'_>, cfg: &CampaignConfig, index: usize) -> Trial {
    let h = code.parity_check();
    let n = code.n();
    let threshold = cfg.threshold();
    let mut rng = trial_rng(cfg.seed, index as u64);
    let c = sample_codeword(code, &mut rng);

    let weight = rng.random_range(0..=(cfg.tau + cfg.sigma).min(n));
    let support = rand::seq::index::sample(&mut rng, n, weight).into_vec();
    let mut e = vec![0.0; n];
    for &j in &support {
        let mag = if cfg.adversarial {
            threshold * (1.0 + ADVERSARIAL_EXCESS)
        } else if rng.random_bool(0.75) {
            let lo = (threshold * (1.0 + cfg.margin)).ln();
            let hi = MAX_OUTLIER.ln().max(lo);
            rng.random_range(lo..=hi).exp()
        } else {
            rng.random_range(threshold * 1e-3..=threshold)
        };
        e[j] = random_sign(&mut rng) * mag;
    }

    let mut eps: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
    if cfg.adversarial {
        // saturate one row's noise, with or against the error it sees
        let hit: Vec<usize> = (0..h.r())
            .filter(|&i| h.row_support(i).iter().any(|&j| e[j] != 0.0))
            .collect();
        let i = if hit.is_empty() {
            rng.random_range(0..h.r())
        } else {
            hit[rng.random_range(0..hit.len())]
        };
        let err: f64 = h.row_support(i).iter().map(|&j| h.sign(i, j) as f64 * e[j]).sum();
        let dir = if err == 0.0 || rng.random_bool(0.5) {
            random_sign(&mut rng)
        } else {
            -err.signum()
        };
        for &j in h.row_support(i) {
            eps[j] = dir * h.sign(i, j) as f64;
        }
    }

    let y: Vec<f64> = (0..n).map(|j| c[j] + eps[j] + e[j]).collect();
    let (outcome, ops) = dec.decode(&y, cfg.rho);
    let (d1_violated, d2_violated) = contract_violations(&e, &outcome, cfg.tau, threshold);
    Trial {
        y,
        e,
        outcome,
        ops,
        d1_violated,
        d2_violated,
    }
}

fn activate<'a>(code: &'a AnalogCode, cfg: &CampaignConfig) -> Result<Active<'a>> {
    let h = code.parity_check();
    Ok(match cfg.decoder {
        DecoderKind::Efficient => Active::Efficient(EfficientDecoder::new(h, cfg.tau, cfg.sigma, cfg.lambda, cfg.w)?),
        DecoderKind::Generic => {
            if 2 * cfg.tau + cfg.sigma != cfg.lambda {
                return Err(Error::Precondition(format!(
                    "the generic decoder needs lambda = 2*tau + sigma, got lambda = {}",
                    cfg.lambda
                )));
            }
            Active::Generic(GenericDecoder::new(h, cfg.tau, cfg.sigma)?)
        }
        DecoderKind::Detect => {
            if cfg.tau != 0 || cfg.sigma > cfg.lambda {
                return Err(Error::Precondition("the detection decoder runs with tau = 0 and sigma <= lambda".into()));
            }
            Active::Detect(DetectDecoder::new(h, cfg.lambda)?)
        }
    })
}

/// Replays a single trial of a campaign.
pub fn replay_trial(code: &AnalogCode, cfg: &CampaignConfig, index: usize) -> Result<Trial> {
    let dec = activate(code, cfg)?;
    Ok(run_trial(code, &dec, cfg, index))
}

/// Seeded Monte Carlo check of the decoder contract. Trials are independent
/// and aggregated in index order, so the report does not depend on the
/// execution mode or thread count (apart from `seconds`).
pub fn run_campaign(code: &AnalogCode, cfg: &CampaignConfig, exec: Execution) -> Result<CampaignReport> {
    if cfg.construction.contains(',') || cfg.construction.contains('\n') {
        return Err(Error::InvalidParameter("construction label must not contain commas or newlines".into()));
    }
    if cfg.rho.is_nan() || cfg.rho < 0.0 || cfg.margin.is_nan() || cfg.margin < 0.0 {
        return Err(Error::InvalidParameter("rho and margin must be non-negative".into()));
    }
    let dec = activate(code, cfg)?;
    let op_bound = match &dec {
        Active::Efficient(d) => Some(d.op_bound()),
        _ => None,
    };
    let start = Instant::now();
    let results = exec.map_indexed(cfg.trials, |t| {
        let trial = run_trial(code, &dec, cfg, t);
        (trial.d1_violated, trial.d2_violated, trial.ops)
    });
    let elapsed = start.elapsed().as_secs_f64();

    let mut report = CampaignReport {
        construction: cfg.construction.clone(),
        decoder: cfg.decoder,
        n: code.n(),
        r: code.r(),
        lambda: cfg.lambda,
        tau: cfg.tau,
        sigma: cfg.sigma,
        rho: cfg.rho,
        trials: cfg.trials,
        d1_violations: 0,
        d2_violations: 0,
        ops: op_bound.map(|_| Vec::with_capacity(cfg.trials)),
        op_bound,
        first_violation: None,
        seconds: cfg.timing.then_some(elapsed),
    };
    for (t, (d1, d2, ops)) in results.into_iter().enumerate() {
        report.d1_violations += usize::from(d1);
        report.d2_violations += usize::from(d2);
        if (d1 || d2) && report.first_violation.is_none() {
            report.first_violation = Some(t);
        }
        if let (Some(v), Some(o)) = (report.ops.as_mut(), ops) {
            v.push(o);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analog::{code_from_parity, SignMatrix};
    use crate::disjunct::td_disjunct;

    fn td_code() -> AnalogCode {
        code_from_parity(&SignMatrix::from_disjunct(&td_disjunct(25, 5, 2).unwrap())).unwrap()
    }

    #[test]
    fn contract_evaluation() {
        let e = [0.0, 11.0, 0.0, 3.0];
        let loc = |v: Vec<usize>| DecodeOutcome::Locations(v);
        assert_eq!(contract_violations(&e, &loc(vec![1]), 2, 10.0), (false, false));
        assert_eq!(contract_violations(&e, &loc(vec![0, 1]), 2, 10.0), (true, false));
        assert_eq!(contract_violations(&e, &loc(vec![3]), 2, 10.0), (false, true));
        assert_eq!(contract_violations(&e, &DecodeOutcome::Detected, 2, 10.0), (true, false));
        // two errors with tau = 1: only (D2) applies
        assert_eq!(contract_violations(&e, &DecodeOutcome::Detected, 1, 10.0), (false, false));
    }

    #[test]
    fn small_campaigns_are_clean() {
        let code = td_code();
        for (kind, tau, sigma) in [
            (DecoderKind::Efficient, 1, 1),
            (DecoderKind::Generic, 1, 1),
            (DecoderKind::Detect, 0, 3),
        ] {
            for adversarial in [false, true] {
                let mut cfg = CampaignConfig::new("td", kind, tau, sigma, 5.0, 3);
                cfg.trials = 300;
                cfg.seed = 11;
                cfg.adversarial = adversarial;
                let rep = run_campaign(&code, &cfg, Execution::Parallel).unwrap();
                assert_eq!(rep.violations(), 0, "{kind} adversarial={adversarial}");
                assert!(rep.ops_within_bound());
            }
        }
    }

    #[test]
    fn misdeclared_threshold_is_caught() {
        let code = td_code();
        let mut cfg = CampaignConfig::new("td", DecoderKind::Efficient, 1, 1, 2.5, 3);
        cfg.trials = 500;
        let rep = run_campaign(&code, &cfg, Execution::Parallel).unwrap();
        assert!(rep.violations() > 0);
        let first = rep.first_violation.unwrap();
        let t = replay_trial(&code, &cfg, first).unwrap();
        assert!(t.d1_violated || t.d2_violated);
    }

    #[test]
    fn report_is_independent_of_execution() {
        let code = td_code();
        let mut cfg = CampaignConfig::new("td", DecoderKind::Efficient, 1, 1, 5.0, 3);
        cfg.trials = 400;
        cfg.adversarial = true;
        let a = run_campaign(&code, &cfg, Execution::Sequential).unwrap();
        let b = run_campaign(&code, &cfg, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(campaign_csv(&[], std::slice::from_ref(&a)), campaign_csv(&[], &[b]));
        assert!(a.csv_row().ends_with(','));
        assert_eq!(a.max_ops(), a.ops.as_ref().unwrap().iter().copied().max());
    }

    #[test]
    fn csv_layout() {
        let code = td_code();
        let mut cfg = CampaignConfig::new("td", DecoderKind::Detect, 0, 3, 5.0, 3);
        cfg.trials = 10;
        let rep = run_campaign(&code, &cfg, Execution::Sequential).unwrap();
        let csv = campaign_csv(&["seed=0".into()], &[rep]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# seed=0");
        assert_eq!(lines[1], CampaignReport::CSV_HEADER);
        assert_eq!(lines[2], "td,25,15,3,0,3,5,10,0,0,,");
        cfg.construction = "a,b".into();
        assert!(run_campaign(&code, &cfg, Execution::Sequential).is_err());
    }

    #[test]
    fn generic_needs_matching_lambda() {
        let code = td_code();
        let cfg = CampaignConfig::new("td", DecoderKind::Generic, 1, 0, 5.0, 3);
        assert!(matches!(run_campaign(&code, &cfg, Execution::Sequential), Err(Error::Precondition(_))));
    }
}
