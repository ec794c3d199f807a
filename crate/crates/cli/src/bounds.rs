use analog_ecc::disjunct::{lower_bound_basic, lower_bound_ell};
use analog_ecc::spherical::{cor8_params, gamma_bounds};
use clap::Subcommand;

use crate::Status;

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(subcommand)]
    kind: Kind,
}

#[derive(Subcommand, Debug)]
enum Kind {
    /// Outlier-ratio upper bounds for spherical codes with coherence theta.
    Gamma {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        lambda: usize,
    },
    /// Row count and distance for the spherical family at sparsity lambda.
    Cor8 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: usize,
    },
    /// Row-count lower bounds for (D, rho)-disjunct matrices.
    Disjunct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rho: usize,
        #[arg(long = "D")]
        d: usize,
        /// Also evaluate the l-bound at this l ...
        #[arg(long, requires = "r")]
        ell: Option<usize>,
        /// ... and this row count.
        #[arg(long)]
        r: Option<usize>,
    },
}

pub fn run(args: Args) -> anyhow::Result<Status> {
    match args.kind {
        Kind::Gamma { n, r, theta, lambda } => {
            let b = gamma_bounds(n, r, theta, lambda)?;
            println!("# bounds gamma n={n} r={r} theta={theta} lambda={lambda}");
            println!("eta={}", b.eta);
            println!("coherence_rip={}", b.coherence_rip);
            println!("infinity_norm={}", b.infinity_norm);
        }
        Kind::Cor8 { n, lambda } => {
            let p = cor8_params(n, lambda)?;
            println!("# bounds cor8 n={n} lambda={lambda}");
            println!("r={} d={} theta={} degenerate={}", p.r, p.d, p.theta, p.degenerate);
            println!("ratio_bound={}", 8f64.sqrt() * n as f64 / (p.r as f64).sqrt());
        }
        Kind::Disjunct { n, rho, d, ell, r } => {
            println!("# bounds disjunct n={n} rho={rho} D={d} l={ell:?} r={r:?}");
            println!("basic={}", lower_bound_basic(n, rho, d)?);
            if let (Some(ell), Some(r)) = (ell, r) {
                let b = lower_bound_ell(n, rho, d, ell, r)?;
                println!("ell_bound={} vacuous={}", b.value, b.vacuous);
            }
        }
    }
    Ok(Status::Pass)
}
