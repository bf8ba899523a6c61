use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lia_core::exec::Exec;
use lia_core::harness::output::{write_json, write_lai_csv, write_records_csv};
use lia_core::harness::summary::{summarize, GroupSummary, Summary};
use lia_core::harness::{run_lai, run_large, run_robustness, run_sweep, SweepConfig, SweepOutput};
use lia_core::topology::{Topology, TopologyKind};
use lia_core::verify;
use lia_core::HarnessError;
use serde_json::json;

#[derive(Parser)]
#[command(name = "lia", version, about = "Slack-discounted auctions over heterogeneous-delay networks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// JSON sweep config; missing fields take their defaults
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory (a file for `topology gen`); LIA_OUT wins over this
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Master seed (topology seed for `topology`)
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,
    /// Worker threads; 1 runs sequentially
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Instances per cell
    #[arg(long, global = true, value_name = "N")]
    instances: Option<usize>,
    /// Comma-separated mechanism list
    #[arg(long, global = true, value_delimiter = ',', num_args = 0..)]
    mechanisms: Option<Vec<String>>,
    /// Only print errors
    #[arg(long, global = true)]
    quiet: bool,
    /// Add per-record wall-clock compute time to records.csv (breaks byte-identity)
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Generate or inspect a topology
    #[command(subcommand)]
    Topology(TopologyCmd),
    /// Mechanism comparison over every configured cell
    Sweep,
    /// LIA under slack-estimation error
    Robustness,
    /// One large market size per topology
    Large {
        #[arg(long, default_value_t = 1000)]
        n: usize,
    },
    /// Population LAI curves
    Lai,
    /// Worked examples plus randomized property suites
    Verify {
        /// Truthfulness triples
        #[arg(long, default_value_t = 10_000)]
        triples: usize,
        /// Instances for critical-value and K = 1 checks
        #[arg(long, default_value_t = 1000)]
        checks: usize,
        /// Random graphs for the shortest-path oracle
        #[arg(long, default_value_t = 500)]
        graphs: usize,
    },
}

#[derive(Subcommand)]
enum TopologyCmd {
    /// Write a generated topology as JSON
    Gen {
        #[arg(long)]
        kind: String,
    },
    /// Print node and link counts plus delay quantiles
    Inspect {
        /// Topology JSON file; otherwise generate from --kind
        path: Option<PathBuf>,
        #[arg(long)]
        kind: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Config(String),
    Assertion(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Config(_) => 2,
            Failure::Assertion(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Config(m) | Failure::Assertion(m) => m,
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::WelfareBound { .. } => Failure::Assertion(e.to_string()),
            e => Failure::Config(e.to_string()),
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Config(format!("{}: {e}", path.display()))
}

type Result<T> = std::result::Result<T, Failure>;

struct Ctx {
    g: Global,
    exec: Exec,
}

impl Ctx {
    fn say(&self, msg: impl AsRef<str>) {
        if !self.g.quiet {
            println!("{}", msg.as_ref());
        }
    }

    fn out_path(&self) -> Option<PathBuf> {
        std::env::var_os("LIA_OUT").map(PathBuf::from).or_else(|| self.g.out.clone())
    }

    fn out_dir(&self) -> Result<PathBuf> {
        let dir = self.out_path().unwrap_or_else(|| PathBuf::from("out"));
        fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
        Ok(dir)
    }

    /// `preset` applies when no config file is given; flags go on top.
    fn config(&self, preset: impl FnOnce(&mut SweepConfig)) -> Result<SweepConfig> {
        let mut c = match &self.g.config {
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|e| io_err(p, e))?;
                serde_json::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", p.display())))?
            }
            None => {
                let mut c = SweepConfig::default();
                preset(&mut c);
                c
            }
        };
        if let Some(s) = self.g.seed {
            c.master_seed = s;
        }
        if let Some(k) = self.g.instances {
            c.instances = k;
        }
        if let Some(m) = &self.g.mechanisms {
            c.mechanisms = m.iter().filter(|s| !s.is_empty()).cloned().collect();
        }
        Ok(c)
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| io_err(path, e))
}

fn finish(mut w: BufWriter<File>, path: &Path) -> Result<()> {
    w.flush().map_err(|e| io_err(path, e))
}

fn write_outputs(ctx: &Ctx, config: &SweepConfig, out: &SweepOutput, extra: serde_json::Value) -> Result<Summary> {
    let dir = ctx.out_dir()?;
    let path = dir.join("records.csv");
    let mut w = create(&path)?;
    write_records_csv(&mut w, &out.records, ctx.g.timing)?;
    finish(w, &path)?;

    let summary = summarize(&out.records, config.bootstrap_resamples, config.master_seed, &ctx.exec)
        .map_err(HarnessError::from)?;
    let path = dir.join("summary.json");
    let mut w = create(&path)?;
    let doc = json!({
        "config": config,
        "cells": out.cells,
        "bound_checks": out.bound_checks,
        "summary": summary,
        "extra": extra,
    });
    write_json(&mut w, &doc)?;
    finish(w, &path)?;
    ctx.say(format!("wrote {} records to {}", out.records.len(), dir.display()));
    Ok(summary)
}

fn feas(g: &GroupSummary) -> String {
    g.sw_ratio_feas.map_or("-".into(), |s| format!("{:.3}", s.mean))
}

fn print_comparison(ctx: &Ctx, summary: &Summary) {
    if ctx.g.quiet {
        return;
    }
    let mut topologies: Vec<TopologyKind> = Vec::new();
    for g in &summary.groups {
        if !topologies.contains(&g.topology) {
            topologies.push(g.topology);
        }
    }
    for t in topologies {
        let n = summary.groups.iter().filter(|g| g.topology == t).map(|g| g.n).max().unwrap_or(0);
        println!("\n{t}, n = {n}");
        println!(
            "{:<24} {:>10} {:>10} {:>8} {:>13} {:>10}",
            "mechanism", "SW/OPT_all", "SW/OPT_fs", "Rev/OPT", "latency (ms)", "LAI"
        );
        for g in summary.groups.iter().filter(|g| g.topology == t && g.n == n) {
            let label = match g.lambda_per_s {
                Some(l) => format!("{}(lambda={l})", g.mechanism),
                None => g.mechanism.clone(),
            };
            println!(
                "{:<24} {:>10.3} {:>10} {:>8.3} {:>13.2} {:>10.2}",
                label,
                g.sw_ratio_all.mean,
                feas(g),
                g.rev_ratio.mean,
                g.clearing_latency_ms.mean,
                g.lai_population
            );
        }
    }
}

fn parse_kind(s: &str) -> Result<TopologyKind> {
    match TopologyKind::parse(s) {
        Some(TopologyKind::Custom) | None => {
            Err(Failure::Usage(format!("--kind: expected starlink200, internet100 or dsn30, got '{s}'")))
        }
        Some(k) => Ok(k),
    }
}

fn cmd_topology(ctx: &Ctx, cmd: &TopologyCmd) -> Result<()> {
    let seed = ctx.g.seed.unwrap_or(1);
    let generate = |kind: &str| -> Result<Topology> {
        let k = parse_kind(kind)?;
        Ok(k.generate(seed).expect("generated kinds only"))
    };
    match cmd {
        TopologyCmd::Gen { kind } => {
            let t = generate(kind)?;
            match ctx.out_path() {
                Some(path) => {
                    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                        fs::create_dir_all(parent).map_err(|e| io_err(parent, e))?;
                    }
                    fs::write(&path, t.to_json()).map_err(|e| io_err(&path, e))?;
                    ctx.say(format!("wrote {} to {}", t.kind, path.display()));
                }
                None => println!("{}", t.to_json()),
            }
        }
        TopologyCmd::Inspect { path, kind } => {
            let t = match (path, kind) {
                (Some(p), None) => {
                    let text = fs::read_to_string(p).map_err(|e| io_err(p, e))?;
                    Topology::from_json(&text).map_err(|e| Failure::Config(format!("{}: {e}", p.display())))?
                }
                (None, Some(k)) => generate(k)?,
                _ => return Err(Failure::Usage("inspect takes a file path or --kind, not both".into())),
            };
            let d = t.delay_stats();
            println!("kind        {}", t.kind);
            println!("seed        {}", t.seed);
            println!("nodes       {}", t.node_count());
            println!("links       {}", t.links.len());
            println!("regions     {}", t.region_count);
            println!("window (ms) {}", t.emission_window_ms());
            println!("delay (ms)  min {:.3}  median {:.3}  max {:.3}", d.min_ms, d.median_ms, d.max_ms);
        }
    }
    Ok(())
}

fn cmd_sweep(ctx: &Ctx) -> Result<()> {
    let config = ctx.config(|_| {})?;
    config.validate()?;
    let out = run_sweep(&config, &ctx.exec)?;
    let summary = write_outputs(ctx, &config, &out, json!({}))?;
    print_comparison(ctx, &summary);
    Ok(())
}

fn cmd_large(ctx: &Ctx, n: usize) -> Result<()> {
    let config = ctx.config(|c| c.instances = 200)?;
    config.validate()?;
    if n == 0 {
        return Err(Failure::Usage("--n: must be >= 1".into()));
    }
    let out = run_large(&config, n, &ctx.exec)?;
    let summary = write_outputs(ctx, &config, &out, json!({ "n": n }))?;
    print_comparison(ctx, &summary);
    Ok(())
}

fn cmd_robustness(ctx: &Ctx) -> Result<()> {
    let config = ctx.config(|c| {
        c.topologies = vec![TopologyKind::Starlink200, TopologyKind::Internet100];
        c.n_list = vec![50];
        c.mechanisms = vec!["lia".into()];
        c.epsilon_list_ms = (0..=10).map(f64::from).collect();
    })?;
    config.validate()?;
    let res = run_robustness(&config, &ctx.exec)?;
    let extra = json!({
        "clock_bias_compared": res.clock_bias_compared,
        "clock_bias_mismatches": res.clock_bias_mismatches,
    });
    let summary = write_outputs(ctx, &config, &res.sweep, extra)?;
    if !ctx.g.quiet {
        println!("\n{:<12} {:<10} {:>6} {:<16} {:>10} {:>8}", "topology", "model", "eps", "mechanism", "SW/OPT_all", "LAI");
        for g in summary.groups.iter().filter(|g| g.mechanism == "lia" || g.mechanism.starts_with("lia_k")) {
            let label = format!("{}({})", g.mechanism, g.lambda_per_s.unwrap_or(f64::NAN));
            println!(
                "{:<12} {:<10} {:>6} {:<16} {:>10.4} {:>8.2}",
                g.topology.as_str(),
                g.error_model.as_str(),
                g.epsilon_ms,
                label,
                g.sw_ratio_all.mean,
                g.lai_population
            );
        }
        println!("clock bias: {} outcomes compared, {} changed", res.clock_bias_compared, res.clock_bias_mismatches);
    }
    if res.clock_bias_mismatches > 0 {
        return Err(Failure::Assertion(format!(
            "a common clock bias changed {} of {} outcomes",
            res.clock_bias_mismatches, res.clock_bias_compared
        )));
    }
    Ok(())
}

fn cmd_lai(ctx: &Ctx) -> Result<()> {
    let config = ctx.config(|_| {})?;
    if config.mechanisms.is_empty() {
        return Err(Failure::Usage("lai: mechanism list is empty".into()));
    }
    config.validate()?;
    let results = run_lai(&config, &ctx.exec)?;
    let dir = ctx.out_dir()?;
    let path = dir.join("lai_curves.csv");
    let mut w = create(&path)?;
    write_lai_csv(&mut w, &results)?;
    finish(w, &path)?;
    ctx.say(format!("wrote {} curves to {}", results.len(), path.display()));
    for r in &results {
        let g: Vec<String> = r.curve.g_values.iter().map(|g| format!("{g:.2}")).collect();
        ctx.say(format!("{} n={} {}: g = [{}]", r.topology, r.n, r.mechanism.label(), g.join(", ")));
    }
    Ok(())
}

fn cmd_verify(ctx: &Ctx, triples: usize, checks: usize, graphs: usize) -> Result<()> {
    let seed = ctx.g.seed.unwrap_or(1);
    let mut failed: Vec<String> = Vec::new();
    for c in verify::golden_checks() {
        ctx.say(c.to_string());
        if let Some(note) = verify::known_conflict(&c) {
            ctx.say(format!("     note: {note}"));
        }
        if !c.pass {
            failed.push(c.name.clone());
        }
    }
    let mut suite = |name: &str, pass: bool, detail: String| {
        ctx.say(format!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" }));
        if !pass {
            failed.push(name.to_string());
        }
    };
    let t = verify::truthfulness_suite(triples, seed);
    suite(
        "truthfulness and IR",
        t.violations == 0 && t.ir_violations == 0,
        format!("{} triples, {} misreport gains, {} IR violations", t.triples, t.violations, t.ir_violations),
    );
    let (n, worst) = verify::critical_value_suite(checks, seed.wrapping_add(1));
    suite("critical-value payments", worst <= 1e-9, format!("{n} winners, worst error {worst:.3e}"));
    let k1 = verify::k1_equivalence_suite(checks, seed.wrapping_add(2));
    suite("K = 1 equals single item", k1 == 0, format!("{checks} instances, {k1} mismatches"));
    let sp = verify::shortest_path_suite(graphs, seed.wrapping_add(3));
    suite("shortest paths vs enumeration", sp == 0, format!("{graphs} graphs, {sp} mismatches"));

    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Assertion(format!("verify failed: {}", failed.join(", "))))
    }
}

fn run(cli: Cli) -> Result<()> {
    if cli.global.jobs == Some(0) {
        return Err(Failure::Usage("--jobs: must be >= 1".into()));
    }
    let exec = Exec::new(cli.global.jobs);
    let ctx = Ctx { g: cli.global, exec };
    match &cli.command {
        Command::Topology(cmd) => cmd_topology(&ctx, cmd),
        Command::Sweep => cmd_sweep(&ctx),
        Command::Robustness => cmd_robustness(&ctx),
        Command::Large { n } => cmd_large(&ctx, *n),
        Command::Lai => cmd_lai(&ctx),
        Command::Verify { triples, checks, graphs } => cmd_verify(&ctx, *triples, *checks, *graphs),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
