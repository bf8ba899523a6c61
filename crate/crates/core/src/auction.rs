//! Bids, clearing horizons, horizon slacks, discounting and slack-error models.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::AuctionError;
use crate::topology::{DelayMap, NodeId, Topology};

pub type BidderId = u32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bid {
    pub bidder: BidderId,
    pub true_value: f64,
    pub reported_value: f64,
    pub node: NodeId,
    pub emission_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClearingHorizon {
    pub node: NodeId,
    pub time_ms: f64,
}

/// Discount rate, stored per millisecond.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscountParams {
    pub lambda_per_ms: f64,
}

impl DiscountParams {
    pub fn per_ms(lambda_per_ms: f64) -> Self {
        DiscountParams { lambda_per_ms }
    }

    pub fn per_second(lambda_per_s: f64) -> Self {
        DiscountParams {
            lambda_per_ms: lambda_per_s / 1000.0,
        }
    }

    pub fn per_second_value(&self) -> f64 {
        self.lambda_per_ms * 1000.0
    }
}

/// `value · e^{−λ·slack}`.
pub fn discount(value: f64, slack_ms: f64, params: DiscountParams) -> f64 {
    value * (-params.lambda_per_ms * slack_ms).exp()
}

/// `ln(value) − λ·slack`, the log of the discounted bid. Zero values map to −∞.
pub fn log_score(value: f64, slack_ms: f64, params: DiscountParams) -> f64 {
    value.ln() - params.lambda_per_ms * slack_ms
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BidSlack {
    /// Arrival at the horizon node, ms.
    pub arrival_ms: f64,
    pub true_slack: f64,
    pub est_slack: f64,
    /// Total estimation error, `est_slack − true_slack`.
    pub eta: f64,
    /// Part of `eta` not shared by every bid.
    pub eta_own: f64,
    pub feasible: bool,
}

impl BidSlack {
    /// Slack used for ranking. A bias common to all bids cancels in every
    /// comparison, so only the bid's own error component enters.
    pub fn score_slack(&self) -> f64 {
        self.true_slack + self.eta_own
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlackProfile {
    pub entries: Vec<BidSlack>,
    pub shared_eta: f64,
    /// max − min of feasible true slacks, 0 with fewer than two feasible bids.
    pub delta_spread: f64,
    /// max η − min η over all bids.
    pub error_spread: f64,
}

impl SlackProfile {
    fn from_entries(entries: Vec<BidSlack>, shared_eta: f64) -> Self {
        let mut p = SlackProfile {
            entries,
            shared_eta,
            delta_spread: 0.0,
            error_spread: 0.0,
        };
        p.refresh();
        p
    }

    /// Noise-free profile from given true slacks, horizon at time 0.
    pub fn from_true_slacks(slacks: &[f64]) -> Self {
        let entries = slacks
            .iter()
            .map(|&s| BidSlack {
                arrival_ms: -s,
                true_slack: s,
                est_slack: s,
                eta: 0.0,
                eta_own: 0.0,
                feasible: s >= 0.0,
            })
            .collect();
        Self::from_entries(entries, 0.0)
    }

    /// Recompute the aggregate spreads after editing entries.
    pub fn refresh(&mut self) {
        let feasible: Vec<f64> = self
            .entries
            .iter()
            .filter(|e| e.feasible)
            .map(|e| e.true_slack)
            .collect();
        self.delta_spread = if feasible.len() < 2 {
            0.0
        } else {
            spread(feasible.iter().copied())
        };
        self.error_spread = if self.entries.is_empty() {
            0.0
        } else {
            spread(self.entries.iter().map(|e| e.eta))
        };
    }

    pub fn feasible_count(&self) -> usize {
        self.entries.iter().filter(|e| e.feasible).count()
    }

    pub fn feasible_fraction(&self) -> f64 {
        if self.entries.is_empty() {
            0.0
        } else {
            self.feasible_count() as f64 / self.entries.len() as f64
        }
    }

    /// Move bid `i` closer to the horizon by `delta_ms`: earlier arrival,
    /// larger slack, feasibility recomputed.
    pub fn advance(&mut self, i: usize, delta_ms: f64) {
        let e = &mut self.entries[i];
        e.arrival_ms -= delta_ms;
        e.true_slack += delta_ms;
        e.est_slack = e.true_slack + e.eta;
        e.feasible = e.true_slack >= 0.0;
        self.refresh();
    }
}

fn spread(values: impl Iterator<Item = f64>) -> f64 {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    hi - lo
}

fn validate_bid(b: &Bid, node_count: usize) -> Result<(), AuctionError> {
    let bad = |reason| Err(AuctionError::InvalidBid { bidder: b.bidder, reason });
    if !(b.true_value >= 0.0) || !b.true_value.is_finite() {
        return bad("true_value must be finite and non-negative");
    }
    if !(b.reported_value >= 0.0) || !b.reported_value.is_finite() {
        return bad("reported_value must be finite and non-negative");
    }
    if !(b.emission_ms >= 0.0) || !b.emission_ms.is_finite() {
        return bad("emission must be finite and non-negative");
    }
    if b.node >= node_count {
        return Err(AuctionError::UnknownNode { bidder: b.bidder, node: b.node });
    }
    Ok(())
}

/// True slacks with zero estimation error.
pub fn compute_slacks(
    bids: &[Bid],
    horizon: ClearingHorizon,
    delay_map: &DelayMap,
) -> Result<SlackProfile, AuctionError> {
    if delay_map.horizon_node != horizon.node {
        return Err(AuctionError::HorizonMismatch {
            map: delay_map.horizon_node,
            horizon: horizon.node,
        });
    }
    let mut entries = Vec::with_capacity(bids.len());
    for b in bids {
        validate_bid(b, delay_map.dist.len())?;
        let arrival = delay_map.earliest_arrival(b.node, b.emission_ms);
        let slack = horizon.time_ms - arrival;
        entries.push(BidSlack {
            arrival_ms: arrival,
            true_slack: slack,
            est_slack: slack,
            eta: 0.0,
            eta_own: 0.0,
            feasible: slack >= 0.0,
        });
    }
    Ok(SlackProfile::from_entries(entries, 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    None,
    Iid,
    ClockBias,
    Distance,
    Subnet,
}

impl ErrorKind {
    pub const NOISY: [ErrorKind; 4] = [
        ErrorKind::Iid,
        ErrorKind::ClockBias,
        ErrorKind::Distance,
        ErrorKind::Subnet,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::None => "none",
            ErrorKind::Iid => "iid",
            ErrorKind::ClockBias => "clock_bias",
            ErrorKind::Distance => "distance",
            ErrorKind::Subnet => "subnet",
        }
    }
}

/// Slack-estimation error model, `{model, epsilon_ms}` in config files.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorModel {
    pub model: ErrorKind,
    pub epsilon_ms: f64,
}

impl ErrorModel {
    pub const NONE: ErrorModel = ErrorModel {
        model: ErrorKind::None,
        epsilon_ms: 0.0,
    };

    pub fn new(model: ErrorKind, epsilon_ms: f64) -> Self {
        ErrorModel { model, epsilon_ms }
    }
}

/// Perturb estimated slacks. Feasibility stays tied to true slack.
pub fn apply_error_model(
    profile: &SlackProfile,
    bids: &[Bid],
    topology: &Topology,
    delay_map: &DelayMap,
    model: ErrorModel,
    rng_seed: u64,
) -> SlackProfile {
    let n = profile.entries.len();
    let eps = model.epsilon_ms;
    if model.model == ErrorKind::None || eps == 0.0 || n == 0 {
        return profile.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut shared = 0.0;
    let own: Vec<f64> = match model.model {
        ErrorKind::None => vec![0.0; n],
        ErrorKind::Iid => (0..n).map(|_| rng.random_range(-eps..=eps)).collect(),
        ErrorKind::ClockBias => {
            shared = rng.random_range(-eps..=eps);
            vec![0.0; n]
        }
        ErrorKind::Distance => {
            let dists: Vec<f64> = bids.iter().map(|b| delay_map.dist[b.node]).collect();
            let max = dists
                .iter()
                .copied()
                .filter(|d| d.is_finite())
                .fold(0.0, f64::max);
            dists
                .iter()
                .map(|&d| if max > 0.0 && d.is_finite() { -eps * d / max } else { 0.0 })
                .collect()
        }
        ErrorKind::Subnet => {
            let per_region: Vec<f64> = (0..topology.region_count)
                .map(|_| rng.random_range(-eps..=eps))
                .collect();
            bids.iter()
                .map(|b| per_region[topology.nodes[b.node].region as usize])
                .collect()
        }
    };
    let entries = profile
        .entries
        .iter()
        .zip(own)
        .map(|(e, own)| {
            let eta = own + shared;
            BidSlack {
                est_slack: e.true_slack + eta,
                eta,
                eta_own: own,
                ..*e
            }
        })
        .collect();
    SlackProfile::from_entries(entries, shared)
}

/// Draw `n` bids: node uniform over non-horizon nodes, value uniform in
/// `[value_lo, value_hi]` reported truthfully, emission uniform in `[0, window]`.
pub fn sample_bids<R: Rng>(
    rng: &mut R,
    node_count: usize,
    horizon_node: NodeId,
    n: usize,
    window_ms: f64,
    value_lo: f64,
    value_hi: f64,
) -> Vec<Bid> {
    (0..n)
        .map(|i| {
            let mut node = rng.random_range(0..node_count.saturating_sub(1).max(1));
            if node_count > 1 && node >= horizon_node {
                node += 1;
            }
            let value = if value_hi > value_lo {
                rng.random_range(value_lo..=value_hi)
            } else {
                value_lo
            };
            let emission = if window_ms > 0.0 {
                rng.random_range(0.0..=window_ms)
            } else {
                0.0
            };
            Bid {
                bidder: i as BidderId,
                true_value: value,
                reported_value: value,
                node,
                emission_ms: emission,
            }
        })
        .collect()
}

/// A ready-to-clear instance: bids, their slacks, the horizon, and each
/// bid's shortest delay to the horizon node.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Market {
    pub bids: Vec<Bid>,
    pub profile: SlackProfile,
    pub horizon: ClearingHorizon,
    pub delays: Vec<f64>,
}

impl Market {
    pub fn new(bids: Vec<Bid>, horizon: ClearingHorizon, delay_map: &DelayMap) -> Result<Self, AuctionError> {
        let profile = compute_slacks(&bids, horizon, delay_map)?;
        let delays = bids.iter().map(|b| delay_map.dist[b.node]).collect();
        Ok(Market { bids, profile, horizon, delays })
    }

    /// Index of the bid from `bidder`.
    pub fn index_of(&self, bidder: BidderId) -> Option<usize> {
        self.bids.iter().position(|b| b.bidder == bidder)
    }

    /// Uniformly chosen feasible bid index, if any.
    pub fn pick_feasible<R: Rng>(&self, rng: &mut R) -> Option<usize> {
        let feasible: Vec<usize> = (0..self.bids.len())
            .filter(|&i| self.profile.entries[i].feasible)
            .collect();
        if feasible.is_empty() {
            None
        } else {
            Some(feasible[rng.random_range(0..feasible.len())])
        }
    }

    pub fn earliest_emission(&self) -> f64 {
        self.bids
            .iter()
            .map(|b| b.emission_ms)
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HorizonChoice {
    pub time_ms: f64,
    /// Fraction of pilot arrivals at or before `time_ms`.
    pub achieved_fraction: f64,
    pub pilot_instances: usize,
}

pub const PILOT_INSTANCES: usize = 1000;

/// Calibrate τ_H as the `target` quantile of pilot arrival times.
///
/// If the quantile is unreachable the horizon falls back to the latest
/// finite arrival and the achieved fraction says how far short it is.
pub fn choose_horizon(
    delay_map: &DelayMap,
    n: usize,
    window_ms: f64,
    target: f64,
    pilot_seed: u64,
) -> Result<HorizonChoice, AuctionError> {
    if !(target > 0.0 && target <= 1.0) {
        return Err(AuctionError::Target(target));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(pilot_seed);
    let mut arrivals = Vec::with_capacity(PILOT_INSTANCES * n);
    for _ in 0..PILOT_INSTANCES {
        for b in sample_bids(&mut rng, delay_map.dist.len(), delay_map.horizon_node, n, window_ms, 0.0, 0.0) {
            arrivals.push(delay_map.earliest_arrival(b.node, b.emission_ms));
        }
    }
    if arrivals.is_empty() {
        return Err(AuctionError::Parameter("pilot needs n >= 1".into()));
    }
    arrivals.sort_by(f64::total_cmp);
    let k = ((target * arrivals.len() as f64).ceil() as usize).clamp(1, arrivals.len()) - 1;
    let mut time = arrivals[k];
    if !time.is_finite() {
        time = arrivals
            .iter()
            .rev()
            .copied()
            .find(|a| a.is_finite())
            .unwrap_or(0.0);
    }
    let covered = arrivals.partition_point(|&a| a <= time);
    Ok(HorizonChoice {
        time_ms: time,
        achieved_fraction: covered as f64 / arrivals.len() as f64,
        pilot_instances: PILOT_INSTANCES,
    })
}
