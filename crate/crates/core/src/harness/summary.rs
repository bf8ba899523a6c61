//! Group statistics and paired differences over sweep records.

use std::collections::HashMap;

use serde::Serialize;

use super::seeds::{derive, BOOTSTRAP_STREAM};
use super::MetricsRecord;
use crate::auction::ErrorKind;
use crate::error::MetricsError;
use crate::exec::Exec;
use crate::metrics::{bootstrap_ci, mean, quantile_sorted};
use crate::topology::TopologyKind;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stat {
    pub count: usize,
    pub mean: f64,
    pub median: f64,
    pub p10: f64,
    pub p90: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

pub fn stat(samples: &[f64], resamples: usize, seed: u64) -> Result<Stat, MetricsError> {
    let ci = bootstrap_ci(samples, 0.95, resamples, seed)?;
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = if sorted.len() % 2 == 1 {
        sorted[sorted.len() / 2]
    } else {
        0.5 * (sorted[sorted.len() / 2 - 1] + sorted[sorted.len() / 2])
    };
    Ok(Stat {
        count: samples.len(),
        mean: ci.mean,
        median,
        p10: quantile_sorted(&sorted, 0.1),
        p90: quantile_sorted(&sorted, 0.9),
        ci_lo: ci.lo,
        ci_hi: ci.hi,
    })
}

/// Mechanism label plus discount rate; identifies a variant across cells.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariantKey {
    pub mechanism: String,
    pub lambda_per_s: Option<f64>,
}

impl VariantKey {
    pub fn of(r: &MetricsRecord) -> Self {
        VariantKey { mechanism: r.mechanism.clone(), lambda_per_s: r.lambda_per_s }
    }

    fn matches(&self, r: &MetricsRecord) -> bool {
        self.mechanism == r.mechanism && self.lambda_per_s == r.lambda_per_s
    }
}

impl std::fmt::Display for VariantKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.lambda_per_s {
            Some(l) => write!(f, "{}(lambda={})", self.mechanism, l),
            None => f.write_str(&self.mechanism),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    pub topology: TopologyKind,
    pub mechanism: String,
    pub lambda_per_s: Option<f64>,
    pub n: usize,
    pub error_model: ErrorKind,
    pub epsilon_ms: f64,
    pub sw_ratio_all: Stat,
    pub sw_ratio_feas: Option<Stat>,
    pub reachability: Stat,
    pub rev_ratio: Stat,
    pub clearing_latency_ms: Stat,
    pub compute_time_ms: Stat,
    pub sw_eff: Stat,
    pub lai_sup: Stat,
    pub lai_marginal_1ms: Stat,
    /// `max(0, max_Δ mean gain)` over this group's designated agents.
    pub lai_population: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairedDiff {
    pub topology: TopologyKind,
    pub a: String,
    pub b: String,
    pub metric: String,
    pub diff: Stat,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub groups: Vec<GroupSummary>,
    pub paired: Vec<PairedDiff>,
}

type GroupKey = (TopologyKind, String, Option<u64>, usize, ErrorKind, u64);

fn group_key(r: &MetricsRecord) -> GroupKey {
    (
        r.topology,
        r.mechanism.clone(),
        r.lambda_per_s.map(f64::to_bits),
        r.n,
        r.error_model,
        r.epsilon_ms.to_bits(),
    )
}

fn summarize_group(rs: &[&MetricsRecord], resamples: usize, seed: u64) -> Result<GroupSummary, MetricsError> {
    let col = |f: &dyn Fn(&MetricsRecord) -> f64| rs.iter().map(|r| f(r)).collect::<Vec<f64>>();
    let s = |k: u64, v: Vec<f64>| stat(&v, resamples, derive(seed, k));
    let feas: Vec<f64> = rs.iter().filter_map(|r| r.sw_ratio_feas).collect();
    let grid_len = rs[0].lai_gains.len();
    let lai_population = (0..grid_len)
        .map(|k| mean(&rs.iter().map(|r| r.lai_gains[k]).collect::<Vec<_>>()))
        .fold(0.0, f64::max);
    let r0 = rs[0];
    Ok(GroupSummary {
        topology: r0.topology,
        mechanism: r0.mechanism.clone(),
        lambda_per_s: r0.lambda_per_s,
        n: r0.n,
        error_model: r0.error_model,
        epsilon_ms: r0.epsilon_ms,
        sw_ratio_all: s(0, col(&|r| r.sw_ratio_all))?,
        sw_ratio_feas: if feas.is_empty() { None } else { Some(s(1, feas)?) },
        reachability: s(2, col(&|r| r.reachability))?,
        rev_ratio: s(3, col(&|r| r.rev_ratio))?,
        clearing_latency_ms: s(4, col(&|r| r.clearing_latency_ms))?,
        compute_time_ms: s(5, col(&|r| r.compute_time_ms))?,
        sw_eff: s(6, col(&|r| r.sw_eff))?,
        lai_sup: s(7, col(&|r| r.lai_sup))?,
        lai_marginal_1ms: s(8, col(&|r| r.lai_marginal_1ms))?,
        lai_population,
    })
}

/// Per-instance `metric(a) − metric(b)` for records sharing an instance seed
/// and noise setting.
pub fn paired_differences(
    records: &[MetricsRecord],
    a: &VariantKey,
    b: &VariantKey,
    metric: impl Fn(&MetricsRecord) -> f64,
) -> Vec<f64> {
    let key = |r: &MetricsRecord| (r.topology, r.n, r.seed, r.error_model, r.epsilon_ms.to_bits());
    let mut lookup = HashMap::new();
    for r in records.iter().filter(|r| b.matches(r)) {
        lookup.insert(key(r), metric(r));
    }
    records
        .iter()
        .filter(|r| a.matches(r))
        .filter_map(|r| lookup.get(&key(r)).map(|vb| metric(r) - vb))
        .collect()
}

/// Group by (topology, mechanism, λ, n, error model, ε) in first-seen order,
/// then pair the reference LIA variant against every other variant.
pub fn summarize(records: &[MetricsRecord], resamples: usize, seed: u64, exec: &Exec) -> Result<Summary, MetricsError> {
    if records.is_empty() {
        return Err(MetricsError::Empty);
    }
    let mut order: Vec<GroupKey> = Vec::new();
    let mut groups: HashMap<GroupKey, Vec<&MetricsRecord>> = HashMap::new();
    for r in records {
        let k = group_key(r);
        groups.entry(k.clone()).or_insert_with(|| {
            order.push(k);
            Vec::new()
        }).push(r);
    }
    let base = derive(seed, BOOTSTRAP_STREAM);
    let summaries = exec.map(order.len(), |i| summarize_group(&groups[&order[i]], resamples, derive(base, i as u64)));
    let groups = summaries.into_iter().collect::<Result<Vec<_>, _>>()?;

    let mut variants: Vec<VariantKey> = Vec::new();
    let mut topologies: Vec<TopologyKind> = Vec::new();
    for r in records {
        let v = VariantKey::of(r);
        if !variants.contains(&v) {
            variants.push(v);
        }
        if !topologies.contains(&r.topology) {
            topologies.push(r.topology);
        }
    }
    let reference = variants
        .iter()
        .find(|v| v.mechanism == "lia" && v.lambda_per_s == Some(1.0))
        .or_else(|| variants.iter().find(|v| v.mechanism == "lia"))
        .cloned();
    let mut paired = Vec::new();
    if let Some(reference) = reference {
        for (t_idx, &t) in topologies.iter().enumerate() {
            let in_topology: Vec<MetricsRecord> = records.iter().filter(|r| r.topology == t).cloned().collect();
            for (v_idx, other) in variants.iter().enumerate().filter(|(_, v)| **v != reference) {
                let d = paired_differences(&in_topology, &reference, other, |r| r.sw_ratio_all);
                if d.is_empty() {
                    continue;
                }
                let s = stat(&d, resamples, derive(base, ((t_idx as u64) << 32) | (1 << 31) | v_idx as u64))?;
                paired.push(PairedDiff {
                    topology: t,
                    a: reference.to_string(),
                    b: other.to_string(),
                    metric: "sw_ratio_all".into(),
                    diff: s,
                });
            }
        }
    }
    Ok(Summary { groups, paired })
}
