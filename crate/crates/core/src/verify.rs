//! Worked examples with known answers, and randomized checks of the
//! mechanism properties against independent oracles. Shared by the CLI's
//! `verify` command and the acceptance tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::auction::{discount, Bid, BidderId, ClearingHorizon, DiscountParams, Market, SlackProfile};
use crate::exec::Exec;
use crate::mechanisms::{critical_value, lia_k_items, lia_single, utility};
use crate::metrics::{effective_welfare, lai_curve_with, LaiSample};
use crate::topology::{distances_to_horizon, Link, Node, Topology, TopologyKind};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, expected: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            value,
            expected,
            tolerance,
            pass: (value - expected).abs() <= tolerance,
        }
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {}: got {:.6}, want {} ± {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.value,
            self.expected,
            if self.tolerance == 0.0 || self.tolerance >= 1e-3 {
                format!("{}", self.tolerance)
            } else {
                format!("{:e}", self.tolerance)
            }
        )
    }
}

fn bid(bidder: BidderId, value: f64) -> Bid {
    Bid { bidder, true_value: value, reported_value: value, node: 0, emission_ms: 0.0 }
}

fn bids_from(values: &[f64]) -> Vec<Bid> {
    values.iter().enumerate().map(|(i, &v)| bid(i as BidderId + 1, v)).collect()
}

/// Two bidders, λ = 0.05 ms⁻¹: the nearby low-value bid loses to the far
/// high-value one, which pays the near bid's discounted value.
pub fn timing_rent_checks() -> Vec<Check> {
    let b = bids_from(&[100.0, 120.0]);
    let p = SlackProfile::from_true_slacks(&[10.0, 0.0]);
    let out = lia_single(&b, &p, DiscountParams::per_ms(0.05));
    let winner = out.winners.first().copied().map_or(0.0, f64::from);
    vec![
        Check::new("timing-rent winner", winner, 2.0, 0.0),
        Check::new("timing-rent payment", out.payments.first().copied().unwrap_or(f64::NAN), 60.6, 0.05),
    ]
}

/// Four bidders, two items, λ = 0.05 ms⁻¹.
pub fn k_items_checks() -> Vec<Check> {
    let b = bids_from(&[100.0, 120.0, 90.0, 80.0]);
    let p = SlackProfile::from_true_slacks(&[10.0, 30.0, 5.0, 2.0]);
    let out = lia_k_items(&b, &p, DiscountParams::per_ms(0.05), 2);
    vec![
        Check::new("k-items payment bidder 3", out.payment_of(3).unwrap_or(f64::NAN), 77.88, 0.01),
        Check::new("k-items payment bidder 4", out.payment_of(4).unwrap_or(f64::NAN), 67.03, 0.01),
    ]
}

/// Welfare-bound factors `e^{−λΔ}` for the quoted slack spreads.
pub fn discount_factor_checks() -> Vec<Check> {
    let per_s = DiscountParams::per_second(1.0);
    vec![
        Check::new("bound factor, spread 50.98 ms", discount(1.0, 50.98, per_s), 0.950, 0.001),
        Check::new("bound factor, spread 13.15 ms", discount(1.0, 13.15, per_s), 0.987, 0.001),
        Check::new(
            "bound factor, spread 20 ms + 2·2 ms error",
            discount(1.0, 20.0 + 2.0 * 2.0, DiscountParams::per_ms(0.001)),
            0.976,
            0.001,
        ),
    ]
}

/// First-price illustration: θ = 100, fixed bid 80, and a one-millisecond
/// speed-up lifts the win rate from 0.60 to 0.65, so `g(1 ms) = 1`.
///
/// Runs through the general LAI estimator with a stratified sampler: in
/// sample k the rival arrives at a time chosen so that exactly 60 of 100
/// samples are won at delay 10 ms and 65 at 9 ms.
pub fn first_price_lai_check() -> Check {
    const SAMPLES: usize = 100;
    const THETA: f64 = 100.0;
    const BID: f64 = 80.0;
    let sampler = |k: usize, _seed: u64| {
        // agent emits at 0 with delay 10; rival arrival in three strata
        let rival_arrival = if k < 60 {
            20.0
        } else if k < 65 {
            9.5
        } else {
            5.0
        };
        let horizon = 30.0;
        let bids = vec![bid(0, THETA), bid(1, 0.0)];
        let mut profile = SlackProfile::from_true_slacks(&[horizon - 10.0, horizon - rival_arrival]);
        for e in &mut profile.entries {
            e.arrival_ms += horizon;
        }
        let market = Market {
            bids,
            profile,
            horizon: ClearingHorizon { node: 0, time_ms: horizon },
            delays: vec![10.0, 0.0],
        };
        Some(LaiSample { market, agent: 0 })
    };
    let first_price = |m: &Market, agent: usize| {
        let mine = m.profile.entries[agent].arrival_ms;
        let rival = m.profile.entries[1 - agent].arrival_ms;
        if mine < rival {
            THETA - BID
        } else {
            0.0
        }
    };
    let curve = lai_curve_with(first_price, sampler, &[1.0], SAMPLES, 0, &Exec::sequential(), "first-price agent");
    let g = curve.ok().and_then(|c| c.g_at(1.0)).unwrap_or(f64::NAN);
    Check::new("first-price g(1 ms)", g, 1.0, 1e-9)
}

/// One bid of value 1 available now and one of value 1/ε available after
/// `D = ln(1/ε)/r`: clearing now and waiting both keep only a fraction ε of
/// `OPT_all` once value decays at rate r.
pub fn waiting_cost_checks(eps: f64, r_per_ms: f64) -> Vec<Check> {
    let opt = 1.0 / eps;
    let d = (1.0 / eps).ln() / r_per_ms;
    vec![
        Check::new("waiting cost, clear now", effective_welfare(1.0, 0.0, r_per_ms) / opt, eps, 1e-12),
        Check::new("waiting cost, wait for D", effective_welfare(opt, d, r_per_ms) / opt, eps, 1e-12),
    ]
}

/// Golden checks whose quoted target disagrees with exact arithmetic, with the
/// reason. Such a failure is reported, never hidden.
pub fn known_conflict(check: &Check) -> Option<&'static str> {
    match check.name.as_str() {
        "timing-rent payment" if !check.pass => Some(
            "the quoted 60.6 rounds e^-0.5 down to 0.606; the discounted runner-up is exactly \
             100*e^-0.5 = 60.653, 0.003 outside the stated tolerance",
        ),
        _ => None,
    }
}

/// Every worked example.
pub fn golden_checks() -> Vec<Check> {
    let mut v = timing_rent_checks();
    v.extend(k_items_checks());
    v.extend(discount_factor_checks());
    v.push(first_price_lai_check());
    v.extend(waiting_cost_checks(0.05, 0.002));
    v
}

/// Random fixed-slack instance: values in [0, 1000], slacks in [-10, 60] ms,
/// λ in [0, 0.1] ms⁻¹.
pub fn random_instance<R: Rng>(rng: &mut R, max_n: usize) -> (Vec<Bid>, SlackProfile, DiscountParams) {
    let n = rng.random_range(1..=max_n);
    let bids = (0..n).map(|i| bid(i as BidderId, rng.random_range(0.0..1000.0))).collect();
    let slacks: Vec<f64> = (0..n).map(|_| rng.random_range(-10.0..60.0)).collect();
    let lambda = rng.random_range(0.0..0.1);
    (bids, SlackProfile::from_true_slacks(&slacks), DiscountParams::per_ms(lambda))
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct TruthfulnessReport {
    pub triples: usize,
    pub violations: usize,
    pub ir_violations: usize,
}

/// Utility under truth vs. a random misreport for a random bidder, on
/// `triples` random instances split between one-item and K-item LIA.
///
/// Comparisons allow `1e-9` relative rounding.
pub fn truthfulness_suite(triples: usize, seed: u64) -> TruthfulnessReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = TruthfulnessReport { triples, ..Default::default() };
    for t in 0..triples {
        let (bids, profile, params) = random_instance(&mut rng, 20);
        let i = rng.random_range(0..bids.len());
        let theta = bids[i].true_value;
        let lie = match rng.random_range(0..3) {
            0 => rng.random_range(0.0..2000.0),
            1 => theta * rng.random_range(0.5..1.5),
            _ => (theta + rng.random_range(-5.0..5.0)).max(0.0),
        };
        let k = rng.random_range(1..=4);
        let run = |reported: f64| {
            let mut b = bids.clone();
            b[i].reported_value = reported;
            let out = if t % 2 == 0 {
                lia_single(&b, &profile, params)
            } else {
                lia_k_items(&b, &profile, params, k)
            };
            utility(b[i].bidder, &out, theta)
        };
        let honest = run(theta);
        let tol = 1e-9 * theta.max(1.0);
        if run(lie) > honest + tol {
            report.violations += 1;
        }
        if honest < -tol {
            report.ir_violations += 1;
        }
    }
    report
}

/// Largest win threshold for `bids[i]` found by bisection on its report.
fn bisect_threshold(bids: &[Bid], profile: &SlackProfile, params: DiscountParams, i: usize) -> f64 {
    let wins = |v: f64| {
        let mut b = bids.to_vec();
        b[i].reported_value = v;
        lia_single(&b, profile, params).winners.first() == Some(&b[i].bidder)
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while !wins(hi) {
        hi *= 2.0;
    }
    if wins(lo) {
        return 0.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if wins(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Max |critical_value − bisection threshold| over random instances with a
/// feasible designated bidder.
pub fn critical_value_suite(instances: usize, seed: u64) -> (usize, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut worst = 0.0f64;
    while checked < instances {
        let (bids, profile, params) = random_instance(&mut rng, 12);
        let Some(i) = (0..bids.len()).find(|&i| profile.entries[i].feasible) else {
            continue;
        };
        let cv = critical_value(bids[i].bidder, &bids, &profile, params).expect("feasible bidder");
        worst = worst.max((cv - bisect_threshold(&bids, &profile, params, i)).abs());
        checked += 1;
    }
    (checked, worst)
}

/// Count of random instances where K = 1 disagrees with single-item LIA on
/// winners or payments.
pub fn k1_equivalence_suite(instances: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..instances)
        .filter(|_| {
            let (bids, profile, params) = random_instance(&mut rng, 20);
            let a = lia_single(&bids, &profile, params);
            let b = lia_k_items(&bids, &profile, params, 1);
            a.winners != b.winners || a.payments != b.payments
        })
        .count()
}

/// Random directed graph on 2..=8 co-located nodes with integer delays, so
/// every path sum is exact.
pub fn random_small_graph<R: Rng>(rng: &mut R) -> Topology {
    let n = rng.random_range(2..=8);
    let nodes = (0..n).map(|id| Node { id, position: [0.0; 3], region: 0 }).collect();
    let p_edge = rng.random_range(0.2..0.8);
    let mut links = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.random_bool(p_edge) {
                links.push(Link { src: a, dst: b, delay_ms: f64::from(rng.random_range(1u32..=100)) });
            }
        }
    }
    Topology::new(TopologyKind::Custom, 0, 1, nodes, links).expect("valid small graph")
}

/// Shortest delay from `src` to `dst` by enumerating every simple path.
pub fn brute_force_delay(t: &Topology, src: usize, dst: usize) -> f64 {
    fn walk(t: &Topology, at: usize, dst: usize, seen: &mut Vec<bool>, acc: f64, best: &mut f64) {
        if at == dst {
            *best = best.min(acc);
            return;
        }
        for l in t.links.iter().filter(|l| l.src == at) {
            if !seen[l.dst] {
                seen[l.dst] = true;
                walk(t, l.dst, dst, seen, acc + l.delay_ms, best);
                seen[l.dst] = false;
            }
        }
    }
    let mut seen = vec![false; t.node_count()];
    seen[src] = true;
    let mut best = f64::INFINITY;
    walk(t, src, dst, &mut seen, 0.0, &mut best);
    best
}

/// Number of random graphs on which the horizon delay map differs from
/// brute-force enumeration for some node.
pub fn shortest_path_suite(graphs: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..graphs)
        .filter(|_| {
            let t = random_small_graph(&mut rng);
            let h = rng.random_range(0..t.node_count());
            let map = distances_to_horizon(&t, h).expect("horizon exists");
            (0..t.node_count()).any(|v| map.dist[v] != brute_force_delay(&t, v, h))
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_values() {
        for c in golden_checks() {
            // the timing-rent payment is exactly 100·e^{-0.5} = 60.653
            if c.name == "timing-rent payment" {
                assert!((c.value - 100.0 * (-0.5f64).exp()).abs() < 1e-12);
                continue;
            }
            assert!(c.pass, "{c}");
        }
    }

    #[test]
    fn suites_small() {
        let t = truthfulness_suite(500, 3);
        assert_eq!((t.violations, t.ir_violations), (0, 0));
        let (n, worst) = critical_value_suite(50, 4);
        assert_eq!(n, 50);
        assert!(worst < 1e-9, "{worst}");
        assert_eq!(k1_equivalence_suite(200, 5), 0);
        assert_eq!(shortest_path_suite(50, 6), 0);
    }
}
