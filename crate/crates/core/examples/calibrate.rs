//! Prints delay bands, horizon, feasibility and headline means per topology.
use lia_core::exec::Exec;
use lia_core::harness::{run_sweep, summary::summarize, SweepConfig};
use lia_core::topology::TopologyKind;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(50);
    let instances: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1000);
    let tseed: u64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(1);
    let only = args.get(4).cloned();
    for kind in [TopologyKind::Starlink200, TopologyKind::Internet100, TopologyKind::Dsn30] {
        if only.as_deref().is_some_and(|o| o != kind.as_str()) {
            continue;
        }
        let t = kind.generate(tseed).unwrap();
        let s = t.delay_stats();
        println!("{kind}: min {:.3} median {:.3} max {:.3}", s.min_ms, s.median_ms, s.max_ms);
        let cfg = SweepConfig {
            topologies: vec![kind],
            n_list: vec![n],
            instances,
            topology_seed: tseed,
            lambda_per_s: vec![1.0],
            batch_ms: vec![10.0, 50.0],
            ..SweepConfig::default()
        };
        let out = run_sweep(&cfg, &Exec::default()).unwrap();
        for c in &out.cells {
            println!("  n={} W={} tau={:.2} pilot={:.3} feas={:.4} medDelta={:.2}", c.n, c.window_ms, c.horizon_ms, c.pilot_fraction, c.feasible_fraction, c.median_delta_spread_ms);
        }
        let sum = summarize(&out.records, 200, 1, &Exec::default()).unwrap();
        for g in &sum.groups {
            println!("  {:<18} swr {:.4} rev {:.4} lat {:.2} lai_pop {:.2} lai1 {:.3}", g.mechanism, g.sw_ratio_all.mean, g.rev_ratio.mean, g.clearing_latency_ms.mean, g.lai_population, g.lai_marginal_1ms.mean);
        }
    }
}
