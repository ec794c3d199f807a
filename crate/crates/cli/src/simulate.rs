use std::path::PathBuf;

use analog_ecc::analog::{code_from_parity, SignMatrix};
use analog_ecc::simbench::{campaign_csv, run_campaign, CampaignConfig, DecoderKind};
use anyhow::bail;

use crate::matrix_file::MatrixFile;
use crate::{read_input, write_output, Ctx, Status};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Matrix file (disjunct or baseline format).
    file: PathBuf,
    /// efficient, generic or detect.
    #[arg(long)]
    decoder: DecoderKind,
    #[arg(long)]
    tau: usize,
    #[arg(long)]
    sigma: usize,
    /// Syndrome threshold (default: the largest row weight).
    #[arg(long)]
    rho: Option<f64>,
    /// Default: claimed order + 1 for disjunct matrices, 2 for baseline.
    #[arg(long)]
    lambda: Option<usize>,
    /// Column-weight bound for the efficient decoder (default: largest column weight).
    #[arg(long)]
    w: Option<usize>,
    /// Outlier threshold (default: 2 * rho).
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Near-threshold outliers with saturated noise.
    #[arg(long)]
    adversarial: bool,
    /// Fill the seconds column (makes the report run-dependent).
    #[arg(long)]
    timing: bool,
    /// Construction label for the report (default derived from the file).
    #[arg(long)]
    label: Option<String>,
    /// CSV output file (default: stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

pub fn run(args: Args, ctx: Ctx) -> anyhow::Result<Status> {
    let m = MatrixFile::parse(&read_input(&args.file)?)?;
    let (h, default_lambda) = match &m {
        MatrixFile::Disjunct(d) => (SignMatrix::from_disjunct(d), d.order() + 1),
        MatrixFile::Baseline(b) => (b.clone(), 2),
        MatrixFile::Spherical(_) => bail!("no decoder is available for spherical matrices"),
    };
    let (r, n) = (h.r(), h.n());
    let code = code_from_parity(&h)?;
    let label = args
        .label
        .clone()
        .unwrap_or_else(|| format!("{}-{r}x{n}-{}", m.kind(), args.decoder));
    let mut cfg = CampaignConfig::new(
        label,
        args.decoder,
        args.tau,
        args.sigma,
        args.rho.unwrap_or(h.max_row_weight() as f64),
        args.lambda.unwrap_or(default_lambda),
    );
    cfg.w = args.w.unwrap_or(h.max_col_weight());
    cfg.outlier_threshold = args.threshold;
    cfg.trials = args.trials;
    cfg.seed = args.seed;
    cfg.adversarial = args.adversarial;
    cfg.timing = args.timing;

    let report = run_campaign(&code, &cfg, ctx.exec)?;
    let header = format!("aecc simulate format={} r={r} n={n} k={}", m.kind(), code.k());
    let mut comments = vec![header, cfg.describe()];
    if let Some(b) = report.op_bound {
        comments.push(format!("op_bound={b} ops_within_bound={}", report.ops_within_bound()));
    }
    write_output(args.output.as_deref(), &campaign_csv(&comments, std::slice::from_ref(&report)))?;
    if let Some(t) = report.first_violation {
        eprintln!("contract violated: first at trial {t}");
    }
    Ok(Status::from_pass(report.violations() == 0 && report.ops_within_bound()))
}
