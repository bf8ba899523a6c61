//! Welfare and revenue ratios, clearing latency, effective welfare,
//! bootstrap intervals and the latency arbitrage index.

use rand::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::Serialize;

use crate::auction::{Bid, Market, SlackProfile};
use crate::error::MetricsError;
use crate::exec::Exec;
use crate::mechanisms::{run_mechanism, utility, MechanismConfig, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WelfareRatios {
    pub sw_ratio_all: f64,
    /// `None` when no bid is feasible.
    pub sw_ratio_feas: Option<f64>,
    pub reachability: f64,
    pub welfare: f64,
    pub opt_all: f64,
    pub opt_feas: f64,
}

fn top_k_sum(mut values: Vec<f64>, k: usize) -> f64 {
    values.sort_by(|a, b| b.total_cmp(a));
    values.iter().take(k).sum()
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        1.0
    }
}

/// Single-item welfare ratios.
pub fn welfare_ratios(outcome: &Outcome, bids: &[Bid], profile: &SlackProfile) -> WelfareRatios {
    welfare_ratios_k(outcome, bids, profile, 1)
}

/// Welfare ratios for `items` identical items: welfare is the sum of winner
/// values, benchmarks are the sums of the top `items` values.
pub fn welfare_ratios_k(outcome: &Outcome, bids: &[Bid], profile: &SlackProfile, items: usize) -> WelfareRatios {
    let welfare: f64 = outcome
        .winners
        .iter()
        .filter_map(|w| bids.iter().find(|b| b.bidder == *w))
        .map(|b| b.true_value)
        .sum();
    let opt_all = top_k_sum(bids.iter().map(|b| b.true_value).collect(), items);
    let feasible: Vec<f64> = bids
        .iter()
        .zip(&profile.entries)
        .filter(|(_, e)| e.feasible)
        .map(|(b, _)| b.true_value)
        .collect();
    let any_feasible = !feasible.is_empty();
    let opt_feas = top_k_sum(feasible, items);
    let reachability = if any_feasible { ratio(opt_feas, opt_all) } else { 0.0 };
    WelfareRatios {
        sw_ratio_all: ratio(welfare, opt_all),
        sw_ratio_feas: any_feasible.then(|| ratio(welfare, opt_feas)),
        reachability,
        welfare,
        opt_all,
        opt_feas,
    }
}

/// Revenue over `OPT_all`.
pub fn rev_ratio(outcome: &Outcome, opt_all: f64) -> f64 {
    if opt_all > 0.0 {
        outcome.revenue() / opt_all
    } else {
        0.0
    }
}

/// Decision time minus the earliest emission among all bids.
pub fn clearing_latency(outcome: &Outcome, bids: &[Bid]) -> f64 {
    let first = bids.iter().map(|b| b.emission_ms).fold(f64::INFINITY, f64::min);
    outcome.decision_time_ms - first
}

/// `θ_w · e^{−r·T}`.
pub fn effective_welfare(winner_true_value: f64, t_clear_ms: f64, r_per_ms: f64) -> f64 {
    winner_true_value * (-r_per_ms * t_clear_ms).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BootstrapCi {
    pub lo: f64,
    pub hi: f64,
    pub mean: f64,
}

pub const BOOTSTRAP_RESAMPLES: usize = 10_000;

pub fn mean(samples: &[f64]) -> f64 {
    samples.iter().sum::<f64>() / samples.len() as f64
}

/// Nearest-rank quantile of sorted data.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let k = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len()) - 1;
    sorted[k]
}

/// Percentile bootstrap interval for the mean.
pub fn bootstrap_ci(samples: &[f64], level: f64, resamples: usize, seed: u64) -> Result<BootstrapCi, MetricsError> {
    if samples.is_empty() {
        return Err(MetricsError::Empty);
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(MetricsError::Level(level));
    }
    if resamples == 0 {
        return Err(MetricsError::Resamples);
    }
    let first = samples[0];
    if samples.iter().all(|&x| x.to_bits() == first.to_bits()) {
        return Ok(BootstrapCi { lo: first, hi: first, mean: first });
    }
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let n = samples.len();
    let mut means = Vec::with_capacity(resamples);
    for _ in 0..resamples {
        // two multiply-shift indices per draw (bias below n / 2^32) and four
        // independent accumulators; this loop dominates summary time
        let mut acc = [0.0f64; 4];
        let mut j = 0;
        while j < n {
            let x = rng.next_u64();
            acc[j & 3] += samples[(((x & 0xffff_ffff) * n as u64) >> 32) as usize];
            if j + 1 < n {
                acc[(j + 1) & 3] += samples[(((x >> 32) * n as u64) >> 32) as usize];
            }
            j += 2;
        }
        means.push((acc[0] + acc[1]) + (acc[2] + acc[3]));
    }
    for m in &mut means {
        *m /= n as f64;
    }
    means.sort_by(f64::total_cmp);
    let tail = (1.0 - level) / 2.0;
    Ok(BootstrapCi {
        lo: quantile_sorted(&means, tail),
        hi: quantile_sorted(&means, 1.0 - tail),
        mean: mean(samples),
    })
}

/// Reduction grid for LAI curves, scaled to the topology's delay span and
/// always containing 1 ms.
pub fn lai_grid(span_ms: f64) -> Vec<f64> {
    const BASE: [f64; 8] = [0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0];
    let s = if span_ms > 0.0 && span_ms.is_finite() { span_ms / 50.0 } else { 1.0 };
    let mut g: Vec<f64> = BASE.iter().map(|b| b * s).collect();
    g.push(1.0);
    g.sort_by(f64::total_cmp);
    g.dedup();
    g
}

fn validate_grid(grid: &[f64]) -> Result<(), MetricsError> {
    if grid.is_empty() || grid[0] <= 0.0 || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(MetricsError::Grid);
    }
    Ok(())
}

/// Utility change for bid `agent` when its delay to the horizon shrinks by
/// each grid value, everything else held fixed. A reduction never exceeds
/// the agent's current delay.
pub fn counterfactual_gains<U>(market: &Market, agent: usize, grid: &[f64], utility_of: U) -> Vec<f64>
where
    U: Fn(&Market, usize) -> f64,
{
    let base = utility_of(market, agent);
    let mut cf = market.clone();
    grid.iter()
        .map(|&d| {
            let step = d.min(market.delays[agent]);
            cf.profile = market.profile.clone();
            cf.profile.advance(agent, step);
            utility_of(&cf, agent) - base
        })
        .collect()
}

/// Truthful-value utility of bid `agent` under a mechanism.
pub fn mechanism_utility(config: &MechanismConfig) -> impl Fn(&Market, usize) -> f64 + '_ {
    move |m: &Market, agent: usize| {
        let out = run_mechanism(config, &m.bids, &m.profile, m.horizon);
        let b = &m.bids[agent];
        utility(b.bidder, &out, b.true_value)
    }
}

/// One sampled instance together with its designated agent.
#[derive(Debug, Clone)]
pub struct LaiSample {
    pub market: Market,
    pub agent: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LaiCurve {
    pub delta_grid: Vec<f64>,
    pub g_values: Vec<f64>,
    pub agent: String,
    pub samples: usize,
    /// Per grid point, the per-sample gains.
    #[serde(skip)]
    pub gains: Vec<Vec<f64>>,
}

impl LaiCurve {
    pub fn g_at(&self, delta_ms: f64) -> Option<f64> {
        self.delta_grid
            .iter()
            .position(|&d| d == delta_ms)
            .map(|k| self.g_values[k])
    }

    /// Percentile bootstrap interval of `g` at each grid point.
    pub fn intervals(&self, level: f64, resamples: usize, seed: u64) -> Result<Vec<BootstrapCi>, MetricsError> {
        self.gains
            .iter()
            .enumerate()
            .map(|(k, g)| bootstrap_ci(g, level, resamples, seed.wrapping_add(k as u64)))
            .collect()
    }

    /// Largest per-sample gain anywhere on the grid.
    pub fn max_sample_gain(&self) -> f64 {
        self.gains
            .iter()
            .flatten()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Expected counterfactual gain `g(Δ)` over `samples` draws.
///
/// `sampler(k, seed)` yields the k-th instance and its designated agent, or
/// `None` to skip the draw (e.g. no feasible bidder).
pub fn lai_curve_with<S, U>(
    utility_of: U,
    sampler: S,
    delta_grid: &[f64],
    samples: usize,
    seed: u64,
    exec: &Exec,
    agent_tag: &str,
) -> Result<LaiCurve, MetricsError>
where
    S: Fn(usize, u64) -> Option<LaiSample> + Sync + Send,
    U: Fn(&Market, usize) -> f64 + Sync + Send,
{
    validate_grid(delta_grid)?;
    if samples == 0 {
        return Err(MetricsError::Empty);
    }
    let per_sample: Vec<Option<Vec<f64>>> = exec.map(samples, |k| {
        let s = sampler(k, crate::harness::seeds::derive(seed, k as u64))?;
        Some(counterfactual_gains(&s.market, s.agent, delta_grid, &utility_of))
    });
    let mut gains = vec![Vec::new(); delta_grid.len()];
    for g in per_sample.into_iter().flatten() {
        for (col, v) in gains.iter_mut().zip(g) {
            col.push(v);
        }
    }
    if gains[0].is_empty() {
        return Err(MetricsError::Empty);
    }
    Ok(LaiCurve {
        delta_grid: delta_grid.to_vec(),
        g_values: gains.iter().map(|g| mean(g)).collect(),
        agent: agent_tag.to_string(),
        samples: gains[0].len(),
        gains,
    })
}

/// [`lai_curve_with`] for a mechanism with truthful reports.
pub fn lai_curve<S>(
    config: &MechanismConfig,
    sampler: S,
    delta_grid: &[f64],
    samples: usize,
    seed: u64,
    exec: &Exec,
) -> Result<LaiCurve, MetricsError>
where
    S: Fn(usize, u64) -> Option<LaiSample> + Sync + Send,
{
    lai_curve_with(mechanism_utility(config), sampler, delta_grid, samples, seed, exec, "population")
}

/// `max(0, max_Δ g(Δ))`.
pub fn lai_index(curve: &LaiCurve) -> f64 {
    curve.g_values.iter().copied().fold(0.0, f64::max)
}
