//! LIA (single item and K identical items) and the waiting-based baselines.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::auction::{log_score, Bid, BidderId, ClearingHorizon, DiscountParams, SlackProfile};
use crate::error::AuctionError;

/// Arrivals closer than this are treated as simultaneous by Fast-VCG.
pub const ARRIVAL_TIE_MS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub mechanism: String,
    pub winners: Vec<BidderId>,
    pub payments: Vec<f64>,
    pub decision_time_ms: f64,
    pub compute_time_ms: f64,
}

impl Outcome {
    pub fn is_sale(&self) -> bool {
        !self.winners.is_empty()
    }

    pub fn payment_of(&self, bidder: BidderId) -> Option<f64> {
        self.winners
            .iter()
            .position(|&w| w == bidder)
            .map(|k| self.payments[k])
    }

    pub fn revenue(&self) -> f64 {
        self.payments.iter().sum()
    }

    /// Same winners, payments and decision time; compute time ignored.
    pub fn same_result(&self, other: &Outcome) -> bool {
        self.winners == other.winners
            && self.payments == other.payments
            && self.decision_time_ms == other.decision_time_ms
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum MechanismConfig {
    Lia { lambda_per_s: f64 },
    SyncVcg,
    FastVcg,
    BatchVcg { batch_ms: f64 },
    Holdback,
    LiaK { lambda_per_s: f64, k: usize },
}

impl MechanismConfig {
    /// Selection string used by the CLI and config files.
    pub fn name(&self) -> &'static str {
        match self {
            MechanismConfig::Lia { .. } => "lia",
            MechanismConfig::SyncVcg => "sync_vcg",
            MechanismConfig::FastVcg => "fast_vcg",
            MechanismConfig::BatchVcg { .. } => "batch_vcg",
            MechanismConfig::Holdback => "holdback",
            MechanismConfig::LiaK { .. } => "lia_k",
        }
    }

    /// Name plus any parameter that has no dedicated output column.
    pub fn label(&self) -> String {
        match self {
            MechanismConfig::BatchVcg { batch_ms } => format!("batch_vcg(B={batch_ms})"),
            MechanismConfig::LiaK { k, .. } => format!("lia_k(K={k})"),
            m => m.name().to_string(),
        }
    }

    pub fn lambda_per_s(&self) -> Option<f64> {
        match self {
            MechanismConfig::Lia { lambda_per_s } | MechanismConfig::LiaK { lambda_per_s, .. } => {
                Some(*lambda_per_s)
            }
            _ => None,
        }
    }

    /// Number of identical items on sale.
    pub fn items(&self) -> usize {
        match self {
            MechanismConfig::LiaK { k, .. } => *k,
            _ => 1,
        }
    }

    pub fn validate(&self) -> Result<(), AuctionError> {
        let bad = |m: &str| Err(AuctionError::Parameter(m.to_string()));
        match *self {
            MechanismConfig::Lia { lambda_per_s } if !(lambda_per_s >= 0.0 && lambda_per_s.is_finite()) => {
                bad("lambda must be finite and >= 0")
            }
            MechanismConfig::LiaK { lambda_per_s, .. } if !(lambda_per_s >= 0.0 && lambda_per_s.is_finite()) => {
                bad("lambda must be finite and >= 0")
            }
            MechanismConfig::LiaK { k: 0, .. } => bad("K must be >= 1"),
            MechanismConfig::BatchVcg { batch_ms } if !(batch_ms > 0.0) => bad("batch interval must be > 0"),
            _ => Ok(()),
        }
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

fn no_sale(mechanism: String, decision_time_ms: f64, start: Instant) -> Outcome {
    Outcome {
        mechanism,
        winners: Vec::new(),
        payments: Vec::new(),
        decision_time_ms,
        compute_time_ms: elapsed_ms(start),
    }
}

/// Decision time when nothing is feasible: the announced horizon, or the
/// latest arrival if no horizon is in scope.
fn idle_time(profile: &SlackProfile) -> f64 {
    profile
        .entries
        .iter()
        .map(|e| e.arrival_ms + e.true_slack)
        .find(|t| t.is_finite())
        .unwrap_or(0.0)
}

fn latest_feasible_arrival(profile: &SlackProfile) -> f64 {
    profile
        .entries
        .iter()
        .filter(|e| e.feasible)
        .map(|e| e.arrival_ms)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Higher score first, then lower bidder id.
fn ranks_before(score_a: f64, id_a: BidderId, score_b: f64, id_b: BidderId) -> bool {
    score_a > score_b || (score_a == score_b && id_a < id_b)
}

fn lia_payment(threshold: f64, bid: &Bid, score_slack: f64, params: DiscountParams) -> f64 {
    // the winner's score is >= threshold, so this never exceeds the report;
    // the clamp only absorbs rounding
    (threshold + params.lambda_per_ms * score_slack)
        .exp()
        .min(bid.reported_value)
}

/// Single-item LIA: highest discounted bid among feasible bids, critical-value payment.
pub fn lia_single(bids: &[Bid], profile: &SlackProfile, params: DiscountParams) -> Outcome {
    let start = Instant::now();
    let mut best: Option<(usize, f64)> = None;
    let mut runner_up = f64::NEG_INFINITY;
    for (i, (b, e)) in bids.iter().zip(&profile.entries).enumerate() {
        if !e.feasible {
            continue;
        }
        let s = log_score(b.reported_value, e.score_slack(), params);
        match best {
            Some((j, sj)) if !ranks_before(s, b.bidder, sj, bids[j].bidder) => {
                runner_up = runner_up.max(s);
            }
            Some((_, sj)) => {
                runner_up = runner_up.max(sj);
                best = Some((i, s));
            }
            None => best = Some((i, s)),
        }
    }
    let Some((w, _)) = best else {
        return no_sale("lia".into(), idle_time(profile), start);
    };
    let payment = lia_payment(runner_up, &bids[w], profile.entries[w].score_slack(), params);
    let decision = latest_feasible_arrival(profile);
    Outcome {
        mechanism: "lia".into(),
        winners: vec![bids[w].bidder],
        payments: vec![payment],
        decision_time_ms: decision,
        compute_time_ms: elapsed_ms(start),
    }
}

/// K identical items: the K highest discounted bids win; each pays the
/// (K+1)-th discounted bid divided by its own discount factor.
pub fn lia_k_items(bids: &[Bid], profile: &SlackProfile, params: DiscountParams, k: usize) -> Outcome {
    let start = Instant::now();
    let mut ranked: Vec<(f64, BidderId, usize)> = bids
        .iter()
        .zip(&profile.entries)
        .enumerate()
        .filter(|(_, (_, e))| e.feasible)
        .map(|(i, (b, e))| (log_score(b.reported_value, e.score_slack(), params), b.bidder, i))
        .collect();
    if ranked.is_empty() || k == 0 {
        return no_sale("lia_k".into(), idle_time(profile), start);
    }
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let threshold = ranked.get(k).map_or(f64::NEG_INFINITY, |r| r.0);
    let take = k.min(ranked.len());
    let winners = ranked[..take].iter().map(|r| r.1).collect();
    let payments = ranked[..take]
        .iter()
        .map(|r| lia_payment(threshold, &bids[r.2], profile.entries[r.2].score_slack(), params))
        .collect();
    Outcome {
        mechanism: "lia_k".into(),
        winners,
        payments,
        decision_time_ms: latest_feasible_arrival(profile),
        compute_time_ms: elapsed_ms(start),
    }
}

/// Lowest report that still wins for `bidder`, holding every other bid fixed.
pub fn critical_value(
    bidder: BidderId,
    bids: &[Bid],
    profile: &SlackProfile,
    params: DiscountParams,
) -> Result<f64, AuctionError> {
    let i = bids
        .iter()
        .position(|b| b.bidder == bidder)
        .ok_or(AuctionError::UnknownBidder(bidder))?;
    if !profile.entries[i].feasible {
        return Err(AuctionError::Infeasible(bidder));
    }
    let best_other = bids
        .iter()
        .zip(&profile.entries)
        .enumerate()
        .filter(|&(j, (_, e))| j != i && e.feasible)
        .map(|(_, (b, e))| log_score(b.reported_value, e.score_slack(), params))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok((best_other + params.lambda_per_ms * profile.entries[i].score_slack()).exp())
}

/// Second price among the candidate indices, ties to the lowest id.
fn second_price(bids: &[Bid], candidates: impl Iterator<Item = usize>) -> Option<(usize, f64)> {
    let mut best: Option<usize> = None;
    let mut second = 0.0f64;
    for i in candidates {
        let b = &bids[i];
        match best {
            Some(j) if !ranks_before(b.reported_value, b.bidder, bids[j].reported_value, bids[j].bidder) => {
                second = second.max(b.reported_value);
            }
            Some(j) => {
                second = second.max(bids[j].reported_value);
                best = Some(i);
            }
            None => best = Some(i),
        }
    }
    best.map(|w| (w, second))
}

fn vcg_at(tag: &str, bids: &[Bid], profile: &SlackProfile, horizon: ClearingHorizon) -> Outcome {
    let start = Instant::now();
    let feasible = profile.entries.iter().enumerate().filter(|(_, e)| e.feasible).map(|(i, _)| i);
    match second_price(bids, feasible) {
        Some((w, p)) => Outcome {
            mechanism: tag.into(),
            winners: vec![bids[w].bidder],
            payments: vec![p],
            decision_time_ms: horizon.time_ms,
            compute_time_ms: elapsed_ms(start),
        },
        None => no_sale(tag.into(), horizon.time_ms, start),
    }
}

/// Second price among all feasible bids after waiting for the horizon.
pub fn sync_vcg(bids: &[Bid], profile: &SlackProfile, horizon: ClearingHorizon) -> Outcome {
    vcg_at("sync_vcg", bids, profile, horizon)
}

/// Early arrivals are held until the horizon; single-item outcome equals Sync-VCG.
pub fn holdback(bids: &[Bid], profile: &SlackProfile, horizon: ClearingHorizon) -> Outcome {
    vcg_at("holdback", bids, profile, horizon)
}

/// Clears on the first feasible arrival.
pub fn fast_vcg(bids: &[Bid], profile: &SlackProfile) -> Outcome {
    let start = Instant::now();
    let first = profile
        .entries
        .iter()
        .filter(|e| e.feasible)
        .map(|e| e.arrival_ms)
        .fold(f64::INFINITY, f64::min);
    if !first.is_finite() {
        return no_sale("fast_vcg".into(), idle_time(profile), start);
    }
    let cutoff = first + ARRIVAL_TIE_MS;
    clear_window("fast_vcg", bids, profile, cutoff, start, |latest| latest)
}

/// Opens at the first feasible arrival and clears `batch_ms` later (or at the
/// horizon, whichever is earlier) on everything that arrived by then.
pub fn batch_vcg(bids: &[Bid], profile: &SlackProfile, horizon: ClearingHorizon, batch_ms: f64) -> Outcome {
    let start = Instant::now();
    let first = profile
        .entries
        .iter()
        .filter(|e| e.feasible)
        .map(|e| e.arrival_ms)
        .fold(f64::INFINITY, f64::min);
    if !first.is_finite() {
        return no_sale("batch_vcg".into(), horizon.time_ms, start);
    }
    let close = (first + batch_ms).min(horizon.time_ms);
    clear_window("batch_vcg", bids, profile, close, start, |_| close)
}

fn clear_window(
    tag: &str,
    bids: &[Bid],
    profile: &SlackProfile,
    cutoff: f64,
    start: Instant,
    decision: impl Fn(f64) -> f64,
) -> Outcome {
    let in_window = || {
        profile
            .entries
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.feasible && e.arrival_ms <= cutoff)
            .map(|(i, _)| i)
    };
    let latest = in_window()
        .map(|i| profile.entries[i].arrival_ms)
        .fold(f64::NEG_INFINITY, f64::max);
    let (w, p) = second_price(bids, in_window()).expect("window holds the first feasible arrival");
    Outcome {
        mechanism: tag.into(),
        winners: vec![bids[w].bidder],
        payments: vec![p],
        decision_time_ms: decision(latest),
        compute_time_ms: elapsed_ms(start),
    }
}

/// Dispatch on a mechanism configuration.
pub fn run_mechanism(
    config: &MechanismConfig,
    bids: &[Bid],
    profile: &SlackProfile,
    horizon: ClearingHorizon,
) -> Outcome {
    match *config {
        MechanismConfig::Lia { lambda_per_s } => lia_single(bids, profile, DiscountParams::per_second(lambda_per_s)),
        MechanismConfig::SyncVcg => sync_vcg(bids, profile, horizon),
        MechanismConfig::FastVcg => fast_vcg(bids, profile),
        MechanismConfig::BatchVcg { batch_ms } => batch_vcg(bids, profile, horizon, batch_ms),
        MechanismConfig::Holdback => holdback(bids, profile, horizon),
        MechanismConfig::LiaK { lambda_per_s, k } => {
            lia_k_items(bids, profile, DiscountParams::per_second(lambda_per_s), k)
        }
    }
}

/// `θ − p` for a winner, 0 otherwise.
pub fn utility(bidder: BidderId, outcome: &Outcome, true_value: f64) -> f64 {
    outcome.payment_of(bidder).map_or(0.0, |p| true_value - p)
}

/// Check `θ_w ≥ e^{−λ(Δ + B_η)} · OPT_feas` for a single-item LIA outcome.
///
/// Returns the slack of the inequality in log space (non-negative when it
/// holds, up to `1e-9` relative rounding), or a description of the violation.
pub fn check_welfare_bound(
    outcome: &Outcome,
    bids: &[Bid],
    profile: &SlackProfile,
    params: DiscountParams,
) -> Result<f64, String> {
    let opt_feas = bids
        .iter()
        .zip(&profile.entries)
        .filter(|(_, e)| e.feasible)
        .map(|(b, _)| b.true_value)
        .fold(0.0, f64::max);
    if opt_feas == 0.0 {
        return Ok(f64::INFINITY);
    }
    let Some(&w) = outcome.winners.first() else {
        return Err("feasible bids present but no winner".into());
    };
    let theta_w = bids.iter().find(|b| b.bidder == w).map_or(0.0, |b| b.true_value);
    let gap = params.lambda_per_ms * (profile.delta_spread + profile.error_spread);
    let margin = theta_w.ln() - (opt_feas.ln() - gap);
    if margin >= -1e-9 {
        Ok(margin)
    } else {
        Err(format!(
            "winner {w} value {theta_w} below exp(-{gap}) * {opt_feas}"
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EndogenousSlackReport {
    pub competitor_value: f64,
    pub utility_at_delta: f64,
    pub utility_at_delta_prime: f64,
}

/// A lone competitor at zero slack whose value lies strictly between the
/// agent's discounted bids at slack δ and δ′: shrinking slack turns a loss
/// into a strictly profitable win.
pub fn endogenous_slack_demo(
    theta: f64,
    delta: f64,
    delta_prime: f64,
    params: DiscountParams,
) -> Result<EndogenousSlackReport, AuctionError> {
    if !(delta_prime >= 0.0 && delta_prime < delta) {
        return Err(AuctionError::EmptyInterval { delta, delta_prime });
    }
    if !(theta > 0.0 && params.lambda_per_ms > 0.0) {
        return Err(AuctionError::Parameter("need theta > 0 and lambda > 0".into()));
    }
    let lo = crate::auction::discount(theta, delta, params);
    let hi = crate::auction::discount(theta, delta_prime, params);
    let c = 0.5 * (lo + hi);
    let bids = [
        Bid { bidder: 0, true_value: theta, reported_value: theta, node: 0, emission_ms: 0.0 },
        Bid { bidder: 1, true_value: c, reported_value: c, node: 0, emission_ms: 0.0 },
    ];
    let run = |slack: f64| {
        let profile = SlackProfile::from_true_slacks(&[slack, 0.0]);
        let out = lia_single(&bids, &profile, params);
        utility(0, &out, theta)
    };
    Ok(EndogenousSlackReport {
        competitor_value: c,
        utility_at_delta: run(delta),
        utility_at_delta_prime: run(delta_prime),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bids(values: &[f64]) -> Vec<Bid> {
        values
            .iter()
            .enumerate()
            .map(|(i, &v)| Bid {
                bidder: i as BidderId + 1,
                true_value: v,
                reported_value: v,
                node: 0,
                emission_ms: 0.0,
            })
            .collect()
    }

    const H: ClearingHorizon = ClearingHorizon { node: 0, time_ms: 0.0 };

    #[test]
    fn timing_rent_example() {
        let b = bids(&[100.0, 120.0]);
        let p = SlackProfile::from_true_slacks(&[10.0, 0.0]);
        let out = lia_single(&b, &p, DiscountParams::per_ms(0.05));
        assert_eq!(out.winners, vec![2]);
        let exact = 100.0 * (-0.5f64).exp();
        assert!((out.payments[0] - exact).abs() < 1e-12);
        assert!((utility(2, &out, 120.0) - (120.0 - exact)).abs() < 1e-12);
        assert_eq!(utility(1, &out, 100.0), 0.0);
        let cv = critical_value(2, &b, &p, DiscountParams::per_ms(0.05)).unwrap();
        assert!((cv - out.payments[0]).abs() < 1e-12);
    }

    #[test]
    fn k_items_example() {
        let b = bids(&[100.0, 120.0, 90.0, 80.0]);
        let p = SlackProfile::from_true_slacks(&[10.0, 30.0, 5.0, 2.0]);
        let out = lia_k_items(&b, &p, DiscountParams::per_ms(0.05), 2);
        let mut w = out.winners.clone();
        w.sort();
        assert_eq!(w, vec![3, 4]);
        assert!((out.payment_of(3).unwrap() - 77.88).abs() < 0.01);
        assert!((out.payment_of(4).unwrap() - 67.03).abs() < 0.01);
    }

    #[test]
    fn k_at_least_feasible_count() {
        let b = bids(&[5.0, 7.0, 9.0]);
        let p = SlackProfile::from_true_slacks(&[1.0, -1.0, 3.0]);
        let out = lia_k_items(&b, &p, DiscountParams::per_ms(0.01), 2);
        assert_eq!(out.winners.len(), 2);
        assert!(out.payments.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn lone_bid_pays_nothing() {
        let b = bids(&[50.0]);
        let p = SlackProfile::from_true_slacks(&[4.0]);
        let out = lia_single(&b, &p, DiscountParams::per_ms(0.05));
        assert_eq!(out.winners, vec![1]);
        assert_eq!(out.payments, vec![0.0]);
        assert_eq!(critical_value(1, &b, &p, DiscountParams::per_ms(0.05)).unwrap(), 0.0);
    }

    #[test]
    fn nothing_feasible() {
        let b = bids(&[50.0, 10.0]);
        let p = SlackProfile::from_true_slacks(&[-1.0, -2.0]);
        assert!(!lia_single(&b, &p, DiscountParams::per_ms(0.05)).is_sale());
        assert!(!sync_vcg(&b, &p, H).is_sale());
        assert!(!fast_vcg(&b, &p).is_sale());
        assert!(!batch_vcg(&b, &p, H, 5.0).is_sale());
        assert!(matches!(
            critical_value(1, &b, &p, DiscountParams::per_ms(0.05)),
            Err(AuctionError::Infeasible(1))
        ));
    }

    #[test]
    fn second_price_basics() {
        let b = bids(&[1.0, 2.0, 3.0]);
        let p = SlackProfile::from_true_slacks(&[0.0, 0.0, 0.0]);
        let out = sync_vcg(&b, &p, H);
        assert_eq!((out.winners[0], out.payments[0]), (3, 2.0));
        let p = SlackProfile::from_true_slacks(&[0.0, -1.0, -1.0]);
        let out = sync_vcg(&b, &p, H);
        assert_eq!((out.winners[0], out.payments[0]), (1, 0.0));
    }

    #[test]
    fn ties_go_to_lowest_id() {
        let b = bids(&[5.0, 5.0]);
        let p = SlackProfile::from_true_slacks(&[0.0, 0.0]);
        assert_eq!(sync_vcg(&b, &p, H).winners, vec![1]);
        let out = lia_single(&b, &p, DiscountParams::per_ms(0.1));
        assert_eq!(out.winners, vec![1]);
        assert!((out.payments[0] - 5.0).abs() < 1e-12);
    }

    #[test]
    fn fast_first_arrival_wins() {
        // slacks relative to horizon 0: arrival = -slack
        let b = bids(&[1.0, 100.0]);
        let p = SlackProfile::from_true_slacks(&[9.0, 5.0]);
        let out = fast_vcg(&b, &p);
        assert_eq!((out.winners[0], out.payments[0]), (1, 0.0));
        assert_eq!(out.decision_time_ms, -9.0);
    }

    #[test]
    fn fast_simultaneous_is_second_price() {
        let b = bids(&[7.0, 4.0]);
        let p = SlackProfile::from_true_slacks(&[3.0, 3.0]);
        let out = fast_vcg(&b, &p);
        assert_eq!((out.winners[0], out.payments[0]), (1, 4.0));
    }

    #[test]
    fn batch_limits() {
        let b = bids(&[1.0, 100.0, 30.0]);
        let p = SlackProfile::from_true_slacks(&[9.0, 5.0, 1.0]);
        let wide = batch_vcg(&b, &p, H, 1e9);
        let sync = sync_vcg(&b, &p, H);
        assert_eq!((wide.winners.clone(), wide.payments.clone()), (sync.winners, sync.payments));
        assert_eq!(wide.decision_time_ms, H.time_ms);
        let narrow = batch_vcg(&b, &p, H, 1e-6);
        assert_eq!(narrow.winners, fast_vcg(&b, &p).winners);
        let mid = batch_vcg(&b, &p, H, 4.5);
        assert_eq!((mid.winners[0], mid.payments[0]), (2, 1.0));
        assert_eq!(mid.decision_time_ms, -4.5);
    }

    #[test]
    fn holdback_matches_sync() {
        let b = bids(&[3.0, 8.0, 8.0, 1.0]);
        let p = SlackProfile::from_true_slacks(&[2.0, -1.0, 4.0, 0.0]);
        let h = holdback(&b, &p, H);
        assert!(h.same_result(&sync_vcg(&b, &p, H)));
        assert_eq!(h.mechanism, "holdback");
        assert_eq!(h.decision_time_ms, H.time_ms);
    }

    #[test]
    fn lia_clears_at_last_feasible_arrival() {
        let b = bids(&[3.0, 8.0, 4.0]);
        let p = SlackProfile::from_true_slacks(&[2.0, -1.0, 4.0]);
        let out = lia_single(&b, &p, DiscountParams::per_ms(0.01));
        assert_eq!(out.decision_time_ms, -2.0);
    }

    #[test]
    fn endogenous_example() {
        let r = endogenous_slack_demo(100.0, 10.0, 0.0, DiscountParams::per_ms(0.05)).unwrap();
        assert!((r.competitor_value - 80.3).abs() < 0.05);
        assert_eq!(r.utility_at_delta, 0.0);
        assert!((r.utility_at_delta_prime - (100.0 - r.competitor_value)).abs() < 1e-9);
        assert!(endogenous_slack_demo(100.0, 3.0, 3.0, DiscountParams::per_ms(0.05)).is_err());
    }

    #[test]
    fn config_labels() {
        assert_eq!(MechanismConfig::BatchVcg { batch_ms: 50.0 }.label(), "batch_vcg(B=50)");
        assert_eq!(MechanismConfig::Lia { lambda_per_s: 1.0 }.label(), "lia");
        assert_eq!(MechanismConfig::LiaK { lambda_per_s: 1.0, k: 2 }.items(), 2);
        assert!(MechanismConfig::BatchVcg { batch_ms: 0.0 }.validate().is_err());
        assert!(MechanismConfig::LiaK { lambda_per_s: 1.0, k: 0 }.validate().is_err());
        let json = serde_json::to_string(&MechanismConfig::BatchVcg { batch_ms: 10.0 }).unwrap();
        assert_eq!(json, r#"{"name":"batch_vcg","batch_ms":10.0}"#);
    }
}
