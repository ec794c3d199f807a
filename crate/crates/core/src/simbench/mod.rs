//! Crossbar fault-injection simulation, the lambda = 2 baseline matrices,
//! decoder-contract campaigns and the parameter summary table.

mod baseline;
mod campaign;
mod crossbar;
mod table1;

pub use baseline::baseline_lambda2;
pub use campaign::{
    campaign_csv, contract_violations, replay_trial, run_campaign, CampaignConfig, CampaignReport, DecoderKind, Trial,
    ADVERSARIAL_EXCESS, MAX_OUTLIER, MESSAGE_RANGE,
};
pub use crossbar::{simulate_read, CrossbarInstance};
pub use table1::{table1_report, Table1Line, Table1Row};
