use std::sync::OnceLock;

use lia_core::auction::{log_score, ErrorKind, ErrorModel, Market};
use lia_core::harness::{prepare_cells, Cell, SweepConfig};
use lia_core::mechanisms::check_welfare_bound;
use lia_core::metrics::{clearing_latency, welfare_ratios};
use lia_core::topology::{distances_to_horizon, Topology};
use lia_core::*;
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, f64)> {
    (1usize..16).prop_flat_map(|n| {
        (
            prop::collection::vec(0.0f64..1000.0, n),
            prop::collection::vec(-10.0f64..60.0, n),
            0.0f64..0.1,
        )
    })
}

fn make_bids(values: &[f64]) -> Vec<Bid> {
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| Bid { bidder: i as BidderId, true_value: v, reported_value: v, node: 0, emission_ms: 0.0 })
        .collect()
}

const H: ClearingHorizon = ClearingHorizon { node: 0, time_ms: 0.0 };

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn truthful_and_individually_rational((values, slacks, lambda) in instance(), who in any::<prop::sample::Index>(), lie in 0.0f64..2000.0, k in 1usize..5) {
        let bids = make_bids(&values);
        let p = SlackProfile::from_true_slacks(&slacks);
        let params = DiscountParams::per_ms(lambda);
        let i = who.index(bids.len());
        let theta = bids[i].true_value;
        let tol = 1e-9 * theta.max(1.0);
        let with_report = |r: f64, multi: bool| {
            let mut b = bids.clone();
            b[i].reported_value = r;
            let out = if multi { lia_k_items(&b, &p, params, k) } else { lia_single(&b, &p, params) };
            utility(i as BidderId, &out, theta)
        };
        for multi in [false, true] {
            let honest = with_report(theta, multi);
            prop_assert!(honest >= -tol);
            prop_assert!(with_report(lie, multi) <= honest + tol);
        }
    }

    #[test]
    fn winner_has_highest_discounted_feasible_bid((values, slacks, lambda) in instance()) {
        let bids = make_bids(&values);
        let p = SlackProfile::from_true_slacks(&slacks);
        let params = DiscountParams::per_ms(lambda);
        let out = lia_single(&bids, &p, params);
        let feasible: Vec<usize> = (0..bids.len()).filter(|&i| p.entries[i].feasible).collect();
        prop_assert_eq!(out.is_sale(), !feasible.is_empty());
        if let Some(&w) = out.winners.first() {
            let wi = w as usize;
            prop_assert!(p.entries[wi].feasible);
            let sw = log_score(bids[wi].reported_value, slacks[wi], params);
            for &j in &feasible {
                prop_assert!(sw >= log_score(bids[j].reported_value, slacks[j], params));
            }
            prop_assert!(out.payments[0] <= bids[wi].reported_value);
        }
    }

    #[test]
    fn earlier_arrival_never_helps_a_feasible_bid((values, slacks, lambda) in instance(), who in any::<prop::sample::Index>(), extra in 0.0f64..40.0) {
        // for a bid that already makes the horizon, more slack (an earlier
        // arrival) never helps under LIA
        let bids = make_bids(&values);
        let params = DiscountParams::per_ms(lambda);
        let i = who.index(bids.len());
        prop_assume!(slacks[i] >= 0.0);
        let base = SlackProfile::from_true_slacks(&slacks);
        let mut sped = base.clone();
        sped.advance(i, extra);
        let u0 = utility(i as BidderId, &lia_single(&bids, &base, params), values[i]);
        let u1 = utility(i as BidderId, &lia_single(&bids, &sped, params), values[i]);
        prop_assert!(u1 <= u0 + 1e-9 * values[i].max(1.0), "{} > {}", u1, u0);
    }

    #[test]
    fn zero_discount_is_sync_vcg((values, slacks, _l) in instance()) {
        let bids = make_bids(&values);
        let p = SlackProfile::from_true_slacks(&slacks);
        let a = lia_single(&bids, &p, DiscountParams::per_ms(0.0));
        let b = sync_vcg(&bids, &p, H);
        prop_assert_eq!(&a.winners, &b.winners);
        for (x, y) in a.payments.iter().zip(&b.payments) {
            prop_assert!((x - y).abs() <= 1e-12 * y.max(1.0));
        }
    }

    #[test]
    fn discounts_compose(v in 0.0f64..1e6, a in 0.0f64..1e3, b in 0.0f64..1e3, lambda in 0.0f64..0.1) {
        let p = DiscountParams::per_ms(lambda);
        let two_step = discount(discount(v, a, p), b, p);
        let one_step = discount(v, a + b, p);
        prop_assert!((two_step - one_step).abs() <= 1e-12 * v.max(1.0));
        prop_assert_eq!(discount(v, 0.0, p), v);
    }

    #[test]
    fn one_item_matches_single((values, slacks, lambda) in instance()) {
        let bids = make_bids(&values);
        let p = SlackProfile::from_true_slacks(&slacks);
        let params = DiscountParams::per_ms(lambda);
        let a = lia_single(&bids, &p, params);
        let b = lia_k_items(&bids, &p, params, 1);
        prop_assert_eq!(a.winners, b.winners);
        prop_assert_eq!(a.payments, b.payments);
    }

    #[test]
    fn payment_is_critical_value((values, slacks, lambda) in instance()) {
        let bids = make_bids(&values);
        let p = SlackProfile::from_true_slacks(&slacks);
        let params = DiscountParams::per_ms(lambda);
        let out = lia_single(&bids, &p, params);
        if let Some(&w) = out.winners.first() {
            let cv = critical_value(w, &bids, &p, params).unwrap();
            prop_assert!((cv.min(bids[w as usize].reported_value) - out.payments[0]).abs() <= 1e-9);
        }
    }

    #[test]
    fn welfare_bound_without_noise((values, slacks, lambda) in instance()) {
        let bids = make_bids(&values);
        let p = SlackProfile::from_true_slacks(&slacks);
        let params = DiscountParams::per_ms(lambda);
        let out = lia_single(&bids, &p, params);
        prop_assert!(check_welfare_bound(&out, &bids, &p, params).is_ok());
    }

    #[test]
    fn ratio_decomposition((values, slacks, lambda) in instance()) {
        let bids = make_bids(&values);
        let p = SlackProfile::from_true_slacks(&slacks);
        let out = lia_single(&bids, &p, DiscountParams::per_ms(lambda));
        let r = welfare_ratios(&out, &bids, &p);
        if let Some(f) = r.sw_ratio_feas {
            prop_assert!((r.sw_ratio_all - f * r.reachability).abs() <= 1e-12);
        }
        prop_assert!((0.0..=1.0).contains(&r.reachability));
        prop_assert!(r.sw_ratio_all <= 1.0 + 1e-12);
    }
}

fn cells() -> &'static (SweepConfig, Vec<Cell>) {
    static CELLS: OnceLock<(SweepConfig, Vec<Cell>)> = OnceLock::new();
    CELLS.get_or_init(|| {
        let cfg = SweepConfig { n_list: vec![10, 50], instances: 200, ..SweepConfig::default() };
        let cells = prepare_cells(&cfg).unwrap();
        (cfg, cells)
    })
}

#[test]
fn latency_ordering_per_instance() {
    let (cfg, cells) = cells();
    let lia = MechanismConfig::Lia { lambda_per_s: 1.0 };
    for cell in cells {
        for k in 0..cfg.instances {
            let (m, _) = cell.market(k, cfg, ErrorModel::NONE).unwrap();
            let lat = |c: &MechanismConfig| clearing_latency(&run_mechanism(c, &m.bids, &m.profile, m.horizon), &m.bids);
            let (fast, sync) = (lat(&MechanismConfig::FastVcg), lat(&MechanismConfig::SyncVcg));
            for b in [10.0, 20.0, 50.0] {
                let batch = lat(&MechanismConfig::BatchVcg { batch_ms: b });
                assert!(fast <= batch && batch <= sync, "cell {} inst {k} B={b}", cell.index);
            }
            assert!(lat(&lia) <= sync);
            assert!(fast <= lat(&lia));
            assert_eq!(lat(&MechanismConfig::Holdback), sync);
        }
    }
}

#[test]
fn welfare_bound_under_every_noise_model() {
    let (cfg, cells) = cells();
    let params = DiscountParams::per_second(1.0);
    for cell in cells {
        for model in ErrorKind::NOISY {
            for eps in [1.0, 10.0] {
                for k in 0..50 {
                    let (m, _) = cell.market(k, cfg, ErrorModel::new(model, eps)).unwrap();
                    let out = lia_single(&m.bids, &m.profile, params);
                    let r = check_welfare_bound(&out, &m.bids, &m.profile, params);
                    assert!(r.is_ok(), "{model:?} eps={eps}: {r:?}");
                }
            }
        }
    }
}

#[test]
fn common_clock_bias_changes_nothing() {
    let (cfg, cells) = cells();
    for cell in cells {
        for k in 0..cfg.instances {
            let (clean, _) = cell.market(k, cfg, ErrorModel::NONE).unwrap();
            let (biased, _) = cell.market(k, cfg, ErrorModel::new(ErrorKind::ClockBias, 10.0)).unwrap();
            assert_ne!(biased.profile.shared_eta, 0.0);
            for lambda in [0.5, 1.0, 2.0] {
                let p = DiscountParams::per_second(lambda);
                let a = lia_single(&clean.bids, &clean.profile, p);
                let b = lia_single(&biased.bids, &biased.profile, p);
                assert!(a.same_result(&b), "cell {} inst {k}", cell.index);
            }
        }
    }
}

/// Same delays, different coordinates: outcomes only see values and slacks.
#[test]
fn outcome_ignores_coordinates() {
    let (cfg, cells) = cells();
    let cell = &cells[1];
    let t: &Topology = &cell.topology;
    let mut moved = t.clone();
    for node in &mut moved.nodes {
        // shrink and rotate about z; every chord gets shorter, so each link
        // still respects the light bound
        let [x, y, z] = node.position;
        node.position = [-0.5 * y, 0.5 * x, 0.5 * z];
    }
    moved.validate().unwrap();
    let map_a = distances_to_horizon(t, 0).unwrap();
    let map_b = distances_to_horizon(&moved, 0).unwrap();
    assert_eq!(map_a, map_b);
    for k in 0..100 {
        let inst = cell.instance(k, cfg);
        let a = Market::new(inst.bids.clone(), inst.horizon, &map_a).unwrap();
        let b = Market::new(inst.bids, inst.horizon, &map_b).unwrap();
        let p = DiscountParams::per_second(1.0);
        assert!(lia_single(&a.bids, &a.profile, p).same_result(&lia_single(&b.bids, &b.profile, p)));
    }
}

#[test]
fn random_suites() {
    use lia_core::verify::*;
    let t = truthfulness_suite(2000, 17);
    assert_eq!((t.violations, t.ir_violations), (0, 0));
    let (n, worst) = critical_value_suite(300, 18);
    assert_eq!(n, 300);
    assert!(worst <= 1e-9, "{worst}");
    assert_eq!(k1_equivalence_suite(1000, 19), 0);
}
