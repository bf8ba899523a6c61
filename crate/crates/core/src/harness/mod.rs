//! Paired Monte Carlo sweeps over topologies, market sizes and mechanisms.
//!
//! Every (topology, n) cell calibrates its horizon once, draws its instance
//! list once, and evaluates all mechanism variants on the same instances.
//! Seeds are derived from the master seed and the cell identity, so any cell
//! or instance can be regenerated on its own.

pub mod output;
pub mod seeds;
pub mod summary;

use std::collections::HashMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::auction::{
    apply_error_model, choose_horizon, sample_bids, Bid, BidderId, ClearingHorizon, DiscountParams, ErrorKind,
    ErrorModel, HorizonChoice, Market,
};
use crate::error::HarnessError;
use crate::exec::Exec;
use crate::mechanisms::{check_welfare_bound, run_mechanism, MechanismConfig};
use crate::metrics::{
    clearing_latency, counterfactual_gains, effective_welfare, lai_curve, lai_grid, mechanism_utility, rev_ratio,
    welfare_ratios_k, BootstrapCi, LaiCurve, LaiSample,
};
use crate::topology::{distances_to_horizon, DelayMap, NodeId, Topology, TopologyKind};

use seeds::{derive, AGENT_STREAM, NOISE_STREAM, PILOT_STREAM};

/// Designated clearing site of every generated topology.
pub const CLEARING_NODE: NodeId = 0;

const KNOWN_MECHANISMS: [&str; 6] = ["lia", "sync_vcg", "fast_vcg", "batch_vcg", "holdback", "lia_k"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub topologies: Vec<TopologyKind>,
    pub topology_seed: u64,
    pub n_list: Vec<usize>,
    pub mechanisms: Vec<String>,
    pub lambda_per_s: Vec<f64>,
    pub batch_ms: Vec<f64>,
    pub k_items: Vec<usize>,
    pub instances: usize,
    /// Noise applied in `sweep`, `large` and `lai` runs.
    pub error_model: ErrorModel,
    /// Robustness grid.
    pub error_models: Vec<ErrorKind>,
    pub epsilon_list_ms: Vec<f64>,
    pub value_lo: f64,
    pub value_hi: f64,
    pub target_feasible: f64,
    /// Decay rate for effective welfare, s⁻¹.
    pub decay_per_s: f64,
    pub master_seed: u64,
    /// Per-record counterfactual gains (lai_sup, lai_marginal_1ms).
    pub lai: bool,
    pub lai_samples: usize,
    pub bootstrap_resamples: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            topologies: vec![TopologyKind::Starlink200, TopologyKind::Internet100, TopologyKind::Dsn30],
            topology_seed: 1,
            n_list: vec![10, 20, 30, 40, 50],
            mechanisms: ["lia", "sync_vcg", "fast_vcg", "batch_vcg", "holdback"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            lambda_per_s: vec![0.5, 1.0, 2.0],
            batch_ms: vec![10.0, 20.0, 50.0],
            k_items: vec![2],
            instances: 1000,
            error_model: ErrorModel::NONE,
            error_models: ErrorKind::NOISY.to_vec(),
            epsilon_list_ms: vec![0.0, 0.5, 1.0, 2.0, 5.0, 10.0],
            value_lo: 0.0,
            value_hi: 1000.0,
            target_feasible: 0.95,
            decay_per_s: 1.0,
            master_seed: 1,
            lai: true,
            lai_samples: 4000,
            bootstrap_resamples: crate::metrics::BOOTSTRAP_RESAMPLES,
        }
    }
}

impl SweepConfig {
    pub fn from_json(s: &str) -> Result<Self, HarnessError> {
        let c: SweepConfig = serde_json::from_str(s).map_err(|e| HarnessError::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.topologies.is_empty() {
            return bad("topologies: empty".into());
        }
        if self.topologies.contains(&TopologyKind::Custom) {
            return bad("topologies: custom has no generator".into());
        }
        if self.n_list.is_empty() || self.n_list.contains(&0) {
            return bad("n_list: needs at least one entry, all >= 1".into());
        }
        if self.instances == 0 {
            return bad("instances: must be >= 1".into());
        }
        if self.mechanisms.is_empty() {
            return bad("mechanisms: empty".into());
        }
        for m in &self.mechanisms {
            if !KNOWN_MECHANISMS.contains(&m.as_str()) {
                return bad(format!("mechanisms: unknown '{m}' (known: {})", KNOWN_MECHANISMS.join(", ")));
            }
        }
        let needs = |name: &str| self.mechanisms.iter().any(|m| m == name);
        if (needs("lia") || needs("lia_k")) && self.lambda_per_s.is_empty() {
            return bad("lambda_per_s: empty but lia requested".into());
        }
        if needs("batch_vcg") && self.batch_ms.is_empty() {
            return bad("batch_ms: empty but batch_vcg requested".into());
        }
        if needs("lia_k") && self.k_items.is_empty() {
            return bad("k_items: empty but lia_k requested".into());
        }
        if self.lambda_per_s.iter().any(|l| !(*l >= 0.0 && l.is_finite())) {
            return bad("lambda_per_s: every rate must be finite and >= 0".into());
        }
        if self.batch_ms.iter().any(|b| !(*b > 0.0)) {
            return bad("batch_ms: every interval must be > 0".into());
        }
        if self.k_items.contains(&0) {
            return bad("k_items: every K must be >= 1".into());
        }
        for v in self.variants() {
            v.validate().map_err(|e| HarnessError::Config(format!("mechanisms: {e}")))?;
        }
        if !(self.error_model.epsilon_ms >= 0.0) || self.epsilon_list_ms.iter().any(|e| !(*e >= 0.0)) {
            return bad("epsilon: must be >= 0".into());
        }
        if !(self.value_lo >= 0.0 && self.value_hi >= self.value_lo && self.value_hi.is_finite()) {
            return bad("value_lo/value_hi: need 0 <= lo <= hi".into());
        }
        if !(self.target_feasible > 0.0 && self.target_feasible <= 1.0) {
            return bad("target_feasible: must be in (0, 1]".into());
        }
        if !(self.decay_per_s >= 0.0) {
            return bad("decay_per_s: must be >= 0".into());
        }
        if self.lai_samples == 0 || self.bootstrap_resamples == 0 {
            return bad("lai_samples/bootstrap_resamples: must be >= 1".into());
        }
        Ok(())
    }

    /// Mechanism list expanded over its parameter grids, in config order.
    pub fn variants(&self) -> Vec<MechanismConfig> {
        let mut out = Vec::new();
        for m in &self.mechanisms {
            match m.as_str() {
                "lia" => out.extend(self.lambda_per_s.iter().map(|&l| MechanismConfig::Lia { lambda_per_s: l })),
                "lia_k" => {
                    for &l in &self.lambda_per_s {
                        for &k in &self.k_items {
                            out.push(MechanismConfig::LiaK { lambda_per_s: l, k });
                        }
                    }
                }
                "batch_vcg" => out.extend(self.batch_ms.iter().map(|&b| MechanismConfig::BatchVcg { batch_ms: b })),
                "sync_vcg" => out.push(MechanismConfig::SyncVcg),
                "fast_vcg" => out.push(MechanismConfig::FastVcg),
                "holdback" => out.push(MechanismConfig::Holdback),
                _ => {}
            }
        }
        out
    }
}

/// Serializable auction instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuctionInstance {
    pub topology_ref: String,
    pub horizon: ClearingHorizon,
    pub bids: Vec<Bid>,
    #[serde(default)]
    pub seed: u64,
}

pub fn topology_ref(t: &Topology) -> String {
    format!("{}:{}", t.kind, t.seed)
}

/// Draw one instance; a pure function of the seed.
#[allow(clippy::too_many_arguments)]
pub fn gen_instance(
    topology: &Topology,
    delay_map: &DelayMap,
    n: usize,
    horizon_ms: f64,
    window_ms: f64,
    value_lo: f64,
    value_hi: f64,
    seed: u64,
) -> AuctionInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bids = sample_bids(
        &mut rng,
        topology.node_count(),
        delay_map.horizon_node,
        n,
        window_ms,
        value_lo,
        value_hi,
    );
    AuctionInstance {
        topology_ref: topology_ref(topology),
        horizon: ClearingHorizon { node: delay_map.horizon_node, time_ms: horizon_ms },
        bids,
        seed,
    }
}

/// One (topology, n) cell with its calibrated horizon.
#[derive(Debug, Clone)]
pub struct Cell {
    pub index: usize,
    pub topology: Arc<Topology>,
    pub delay_map: Arc<DelayMap>,
    pub n: usize,
    pub seed: u64,
    pub window_ms: f64,
    pub horizon: HorizonChoice,
    pub grid: Vec<f64>,
}

impl Cell {
    pub fn instance_seed(&self, k: usize) -> u64 {
        derive(self.seed, k as u64)
    }

    pub fn instance(&self, k: usize, config: &SweepConfig) -> AuctionInstance {
        gen_instance(
            &self.topology,
            &self.delay_map,
            self.n,
            self.horizon.time_ms,
            self.window_ms,
            config.value_lo,
            config.value_hi,
            self.instance_seed(k),
        )
    }

    /// Instance `k` ready to clear under `error`, with its designated agent.
    pub fn market(&self, k: usize, config: &SweepConfig, error: ErrorModel) -> Result<(Market, Option<usize>), HarnessError> {
        let inst = self.instance(k, config);
        let mut market = Market::new(inst.bids, inst.horizon, &self.delay_map)?;
        let seed = inst.seed;
        if error.model != ErrorKind::None && error.epsilon_ms > 0.0 {
            let noise_seed = derive(seed, NOISE_STREAM + error.model as u64);
            market.profile = apply_error_model(
                &market.profile,
                &market.bids,
                &self.topology,
                &self.delay_map,
                error,
                noise_seed,
            );
        }
        let mut rng = ChaCha8Rng::seed_from_u64(derive(seed, AGENT_STREAM));
        let agent = market.pick_feasible(&mut rng);
        Ok((market, agent))
    }
}

fn kind_code(kind: TopologyKind) -> u64 {
    match kind {
        TopologyKind::Starlink200 => 1,
        TopologyKind::Internet100 => 2,
        TopologyKind::Dsn30 => 3,
        TopologyKind::Custom => 4,
    }
}

/// Generate topologies, delay maps and horizons for every (topology, n) cell.
pub fn prepare_cells(config: &SweepConfig) -> Result<Vec<Cell>, HarnessError> {
    config.validate()?;
    let mut cells = Vec::new();
    for &kind in &config.topologies {
        let topology = Arc::new(
            kind.generate(config.topology_seed)
                .ok_or_else(|| HarnessError::Config(format!("no generator for {kind}")))?,
        );
        let delay_map = Arc::new(distances_to_horizon(&topology, CLEARING_NODE)?);
        let window_ms = topology.emission_window_ms();
        let span = topology.delay_stats();
        let grid = lai_grid(span.max_ms - span.min_ms);
        for &n in &config.n_list {
            let seed = derive(derive(config.master_seed, kind_code(kind)), n as u64);
            let horizon = choose_horizon(&delay_map, n, window_ms, config.target_feasible, derive(seed, PILOT_STREAM))?;
            cells.push(Cell {
                index: cells.len(),
                topology: Arc::clone(&topology),
                delay_map: Arc::clone(&delay_map),
                n,
                seed,
                window_ms,
                horizon,
                grid: grid.clone(),
            });
        }
    }
    Ok(cells)
}

/// One row per (instance, mechanism variant).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsRecord {
    pub topology: TopologyKind,
    pub mechanism: String,
    pub n: usize,
    pub lambda_per_s: Option<f64>,
    pub epsilon_ms: f64,
    pub error_model: ErrorKind,
    pub seed: u64,
    pub sw_ratio_all: f64,
    pub sw_ratio_feas: Option<f64>,
    pub reachability: f64,
    pub rev_ratio: f64,
    pub clearing_latency_ms: f64,
    pub compute_time_ms: f64,
    pub lai_sup: f64,
    pub lai_marginal_1ms: f64,
    pub sw_eff: f64,
    pub cell: usize,
    pub instance: usize,
    pub variant: usize,
    pub feasible_fraction: f64,
    pub delta_spread_ms: f64,
    pub error_spread_ms: f64,
    pub winners: Vec<BidderId>,
    pub payments: Vec<f64>,
    pub decision_time_ms: f64,
    /// Counterfactual gain at each point of the cell's grid.
    pub lai_gains: Vec<f64>,
}

/// Evaluate every variant on instance `k` of `cell`.
pub fn evaluate_instance(
    cell: &Cell,
    k: usize,
    config: &SweepConfig,
    variants: &[MechanismConfig],
    error: ErrorModel,
) -> Result<(Vec<MetricsRecord>, usize), HarnessError> {
    let (market, agent) = cell.market(k, config, error)?;
    let bids = &market.bids;
    let r_per_ms = config.decay_per_s / 1000.0;
    let one_ms = cell.grid.iter().position(|&d| d == 1.0);
    let mut records = Vec::with_capacity(variants.len());
    let mut checks = 0;
    for (vi, v) in variants.iter().enumerate() {
        let out = run_mechanism(v, bids, &market.profile, market.horizon);
        if let MechanismConfig::Lia { lambda_per_s } = *v {
            check_welfare_bound(&out, bids, &market.profile, DiscountParams::per_second(lambda_per_s)).map_err(
                |detail| HarnessError::WelfareBound {
                    seed: market_seed(cell, k),
                    detail,
                    instance: serde_json::to_string(&cell.instance(k, config)).unwrap_or_default(),
                },
            )?;
            checks += 1;
        }
        let w = welfare_ratios_k(&out, bids, &market.profile, v.items());
        let latency = clearing_latency(&out, bids);
        let gains = match (config.lai, agent) {
            (true, Some(a)) => counterfactual_gains(&market, a, &cell.grid, mechanism_utility(v)),
            _ => vec![0.0; cell.grid.len()],
        };
        records.push(MetricsRecord {
            topology: cell.topology.kind,
            mechanism: v.label(),
            n: cell.n,
            lambda_per_s: v.lambda_per_s(),
            epsilon_ms: error.epsilon_ms,
            error_model: error.model,
            seed: market_seed(cell, k),
            sw_ratio_all: w.sw_ratio_all,
            sw_ratio_feas: w.sw_ratio_feas,
            reachability: w.reachability,
            rev_ratio: rev_ratio(&out, w.opt_all),
            clearing_latency_ms: latency,
            compute_time_ms: out.compute_time_ms,
            lai_sup: gains.iter().copied().fold(0.0, f64::max),
            lai_marginal_1ms: one_ms.map_or(0.0, |i| gains[i]),
            sw_eff: effective_welfare(w.welfare, latency, r_per_ms),
            cell: cell.index,
            instance: k,
            variant: vi,
            feasible_fraction: market.profile.feasible_fraction(),
            delta_spread_ms: market.profile.delta_spread,
            error_spread_ms: market.profile.error_spread,
            winners: out.winners,
            payments: out.payments,
            decision_time_ms: out.decision_time_ms,
            lai_gains: gains,
        });
    }
    Ok((records, checks))
}

fn market_seed(cell: &Cell, k: usize) -> u64 {
    cell.instance_seed(k)
}

#[derive(Debug, Clone, Serialize)]
pub struct CellReport {
    pub topology: TopologyKind,
    pub n: usize,
    pub window_ms: f64,
    pub horizon_ms: f64,
    pub pilot_fraction: f64,
    pub feasible_fraction: f64,
    pub median_delta_spread_ms: f64,
    pub instances: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepOutput {
    pub records: Vec<MetricsRecord>,
    pub cells: Vec<CellReport>,
    /// Number of inline welfare-bound checks that ran (all passed).
    pub bound_checks: usize,
}

fn run_cells(
    cells: &[Cell],
    config: &SweepConfig,
    errors: &[ErrorModel],
    exec: &Exec,
) -> Result<SweepOutput, HarnessError> {
    let variants = config.variants();
    let mut records = Vec::new();
    let mut reports = Vec::new();
    let mut bound_checks = 0;
    for cell in cells {
        let mut fractions = Vec::new();
        let mut spreads = Vec::new();
        for &error in errors {
            let per_instance = exec.map(config.instances, |k| evaluate_instance(cell, k, config, &variants, error));
            for r in per_instance {
                let (recs, checks) = r?;
                bound_checks += checks;
                if let Some(first) = recs.first() {
                    fractions.push(first.feasible_fraction);
                    spreads.push(first.delta_spread_ms);
                }
                records.extend(recs);
            }
        }
        spreads.sort_by(f64::total_cmp);
        reports.push(CellReport {
            topology: cell.topology.kind,
            n: cell.n,
            window_ms: cell.window_ms,
            horizon_ms: cell.horizon.time_ms,
            pilot_fraction: cell.horizon.achieved_fraction,
            feasible_fraction: crate::metrics::mean(&fractions),
            median_delta_spread_ms: spreads.get(spreads.len() / 2).copied().unwrap_or(0.0),
            instances: config.instances,
        });
    }
    Ok(SweepOutput { records, cells: reports, bound_checks })
}

/// Paired sweep under `config.error_model`.
pub fn run_sweep(config: &SweepConfig, exec: &Exec) -> Result<SweepOutput, HarnessError> {
    let cells = prepare_cells(config)?;
    run_cells(&cells, config, &[config.error_model], exec)
}

/// Large-market run: `config` with every cell at `n`.
pub fn run_large(config: &SweepConfig, n: usize, exec: &Exec) -> Result<SweepOutput, HarnessError> {
    let mut c = config.clone();
    c.n_list = vec![n];
    run_sweep(&c, exec)
}

#[derive(Debug, Clone, Serialize)]
pub struct RobustnessOutput {
    pub sweep: SweepOutput,
    /// Clock-bias records compared against their noiseless twin.
    pub clock_bias_compared: usize,
    pub clock_bias_mismatches: usize,
}

/// Every (error model, ε) on the same instances. ε = 0 rows are the
/// noiseless baseline of their model.
pub fn run_robustness(config: &SweepConfig, exec: &Exec) -> Result<RobustnessOutput, HarnessError> {
    if !config.mechanisms.iter().any(|m| m == "lia") {
        return Err(HarnessError::Config("mechanisms: robustness needs lia".into()));
    }
    let cells = prepare_cells(config)?;
    let mut errors = Vec::new();
    for &m in &config.error_models {
        for &e in &config.epsilon_list_ms {
            errors.push(ErrorModel::new(m, e));
        }
    }
    let sweep = run_cells(&cells, config, &errors, exec)?;

    let mut baseline: HashMap<(usize, usize, usize), &MetricsRecord> = HashMap::new();
    for r in &sweep.records {
        if r.epsilon_ms == 0.0 {
            baseline.insert((r.cell, r.instance, r.variant), r);
        }
    }
    let mut compared = 0;
    let mut mismatches = 0;
    for r in sweep.records.iter().filter(|r| r.error_model == ErrorKind::ClockBias && r.epsilon_ms > 0.0) {
        if let Some(b) = baseline.get(&(r.cell, r.instance, r.variant)) {
            if b.feasible_fraction == r.feasible_fraction {
                compared += 1;
                if b.winners != r.winners || b.payments != r.payments {
                    mismatches += 1;
                }
            }
        }
    }
    Ok(RobustnessOutput {
        sweep,
        clock_bias_compared: compared,
        clock_bias_mismatches: mismatches,
    })
}

/// One LAI curve for a (cell, variant).
#[derive(Debug, Clone)]
pub struct LaiResult {
    pub topology: TopologyKind,
    pub n: usize,
    pub mechanism: MechanismConfig,
    pub curve: LaiCurve,
    pub intervals: Vec<BootstrapCi>,
}

/// Population LAI curves over `config.lai_samples` instances per cell.
pub fn run_lai(config: &SweepConfig, exec: &Exec) -> Result<Vec<LaiResult>, HarnessError> {
    let cells = prepare_cells(config)?;
    let variants = config.variants();
    if variants.is_empty() {
        return Err(HarnessError::Config("mechanisms: empty".into()));
    }
    let mut out = Vec::new();
    for cell in &cells {
        let sampler = |k: usize, _seed: u64| {
            let (market, agent) = cell.market(k, config, config.error_model).ok()?;
            Some(LaiSample { market, agent: agent? })
        };
        for v in &variants {
            let curve = lai_curve(v, sampler, &cell.grid, config.lai_samples, cell.seed, exec)?;
            let intervals = curve.intervals(0.95, config.bootstrap_resamples, derive(cell.seed, seeds::BOOTSTRAP_STREAM))?;
            out.push(LaiResult {
                topology: cell.topology.kind,
                n: cell.n,
                mechanism: *v,
                curve,
                intervals,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SweepConfig {
        SweepConfig {
            topologies: vec![TopologyKind::Internet100],
            n_list: vec![10],
            instances: 20,
            mechanisms: vec!["lia".into(), "sync_vcg".into(), "holdback".into()],
            lambda_per_s: vec![1.0],
            ..SweepConfig::default()
        }
    }

    #[test]
    fn default_config_is_valid() {
        SweepConfig::default().validate().unwrap();
        assert_eq!(SweepConfig::default().variants().len(), 3 + 1 + 1 + 3 + 1);
    }

    #[test]
    fn config_errors_name_the_field() {
        let mut c = small();
        c.mechanisms.push("dutch".into());
        let e = c.validate().unwrap_err().to_string();
        assert!(e.contains("mechanisms") && e.contains("dutch"));
        let e = SweepConfig::from_json(r#"{"instances": 0}"#).unwrap_err().to_string();
        assert!(e.contains("instances"));
        assert!(SweepConfig::from_json(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn config_json_round_trip() {
        let c = small();
        let back = SweepConfig::from_json(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(c, back);
    }

    #[test]
    fn gen_instance_is_deterministic() {
        let t = crate::topology::generate_internet(1);
        let m = distances_to_horizon(&t, 0).unwrap();
        let a = gen_instance(&t, &m, 1, 20.0, 5.0, 0.0, 1000.0, 77);
        let b = gen_instance(&t, &m, 1, 20.0, 5.0, 0.0, 1000.0, 77);
        assert_eq!(a, b);
        assert_eq!(a.bids.len(), 1);
        assert!((0.0..=1000.0).contains(&a.bids[0].true_value));
        let json = serde_json::to_string(&a).unwrap();
        let back: AuctionInstance = serde_json::from_str(&json).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn sweep_pairs_instances() {
        let out = run_sweep(&small(), &Exec::sequential()).unwrap();
        assert_eq!(out.records.len(), 20 * 3);
        for chunk in out.records.chunks(3) {
            assert!(chunk.iter().all(|r| r.seed == chunk[0].seed));
            assert_eq!(chunk[1].winners, chunk[2].winners);
            assert_eq!(chunk[1].payments, chunk[2].payments);
        }
        assert_eq!(out.bound_checks, 20);
    }

    #[test]
    fn robustness_zero_noise_matches_baseline() {
        let mut c = small();
        c.epsilon_list_ms = vec![0.0, 2.0];
        c.instances = 10;
        let r = run_robustness(&c, &Exec::sequential()).unwrap();
        let base = run_sweep(&c, &Exec::sequential()).unwrap();
        let zero: Vec<_> = r
            .sweep
            .records
            .iter()
            .filter(|x| x.error_model == ErrorKind::Iid && x.epsilon_ms == 0.0)
            .collect();
        assert_eq!(zero.len(), base.records.len());
        for (a, b) in zero.iter().zip(&base.records) {
            assert_eq!((a.sw_ratio_all, &a.winners, &a.payments), (b.sw_ratio_all, &b.winners, &b.payments));
        }
        assert_eq!(r.clock_bias_mismatches, 0);
        assert!(r.clock_bias_compared > 0);
    }

    #[test]
    fn robustness_requires_lia() {
        let mut c = small();
        c.mechanisms = vec!["sync_vcg".into()];
        assert!(run_robustness(&c, &Exec::sequential()).is_err());
    }
}
