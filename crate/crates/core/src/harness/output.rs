//! CSV and JSON writers. Column names are a stable contract with downstream
//! plotting.

use std::io::Write;

use super::{LaiResult, MetricsRecord};
use crate::error::HarnessError;

pub const RECORD_COLUMNS: [&str; 15] = [
    "topology",
    "mechanism",
    "n",
    "lambda_per_s",
    "epsilon_ms",
    "error_model",
    "seed",
    "sw_ratio_all",
    "sw_ratio_feas",
    "reachability",
    "rev_ratio",
    "clearing_latency_ms",
    "compute_time_ms",
    "lai_sup",
    "lai_marginal_1ms",
];

pub const LAI_COLUMNS: [&str; 7] = ["topology", "mechanism", "lambda", "delta_ms", "g_mean", "g_ci_lo", "g_ci_hi"];

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Write sweep records. Wall-clock compute time is only written when
/// `timing` is set, since it differs between runs.
pub fn write_records_csv<W: Write>(w: W, records: &[MetricsRecord], timing: bool) -> Result<(), HarnessError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(RECORD_COLUMNS)?;
    for r in records {
        out.write_record([
            r.topology.as_str().to_string(),
            r.mechanism.clone(),
            r.n.to_string(),
            opt(r.lambda_per_s),
            r.epsilon_ms.to_string(),
            r.error_model.as_str().to_string(),
            r.seed.to_string(),
            r.sw_ratio_all.to_string(),
            opt(r.sw_ratio_feas),
            r.reachability.to_string(),
            r.rev_ratio.to_string(),
            r.clearing_latency_ms.to_string(),
            opt(timing.then_some(r.compute_time_ms)),
            r.lai_sup.to_string(),
            r.lai_marginal_1ms.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_lai_csv<W: Write>(w: W, results: &[LaiResult]) -> Result<(), HarnessError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(LAI_COLUMNS)?;
    for res in results {
        for (k, d) in res.curve.delta_grid.iter().enumerate() {
            out.write_record([
                res.topology.as_str().to_string(),
                res.mechanism.label(),
                opt(res.mechanism.lambda_per_s()),
                d.to_string(),
                res.curve.g_values[k].to_string(),
                res.intervals[k].lo.to_string(),
                res.intervals[k].hi.to_string(),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_json<W: Write, T: serde::Serialize>(w: W, value: &T) -> Result<(), HarnessError> {
    serde_json::to_writer_pretty(w, value)?;
    Ok(())
}
