//! Subcommand definitions and their file outputs.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use swarmsec_core::baselines::{evaluate_lrs, evaluate_mrs, BaselineObjectives, LrsConfig, MrsConfig};
use swarmsec_core::energy::{overhead_report, OverheadParams};
use swarmsec_core::imogoa::OptimizerConfig;
use swarmsec_core::problem::{Evaluator, Solution};
use swarmsec_core::scenario::{default_scenario, load_scenario, EavesMode};
use swarmsec_core::Scenario;

use crate::experiments::{self, front_hv, median, quadrature, run_seeds, shared_normalization, Algo, SeedRun};
use crate::export::{
    archive_table, baseline_row, hash_json, num, pattern_table, solution_patterns, trace_table, trajectory_table,
    Sidecar, Table,
};

#[derive(Debug, Parser)]
#[command(name = "swarmsec", version, about = "Secure UAV-swarm relaying experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimize per seed and export archives, traces, trajectories and patterns.
    Run(Common),
    /// IMOGOA against vanilla MOGOA under a shared hypervolume normalization.
    Compare(Common),
    /// Objectives against the number of eavesdroppers, per collusion mode.
    EavesSweep(EavesArgs),
    /// Multi-hop and linear-array relay baselines.
    Baselines(BaselineArgs),
    /// Communication energy of one scheduling round.
    Overhead(OverheadArgs),
    /// Gain patterns of one archive member's beams.
    Beampattern(PatternArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Octd,
    Ctsd,
    Both,
}

impl ModeArg {
    fn modes(self) -> Vec<EavesMode> {
        match self {
            ModeArg::Octd => vec![EavesMode::Octd],
            ModeArg::Ctsd => vec![EavesMode::Ctsd],
            ModeArg::Both => vec![EavesMode::Octd, EavesMode::Ctsd],
        }
    }
}

fn mode_name(m: EavesMode) -> &'static str {
    match m {
        EavesMode::Octd => "octd",
        EavesMode::Ctsd => "ctsd",
    }
}

#[derive(Clone, Debug, Args)]
pub struct Common {
    /// Scenario JSON; the bundled default scenario when absent.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// Optimizer config JSON; missing fields take their defaults.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Seeds, e.g. `0,2,5-9`.
    #[arg(long, default_value = "0")]
    pub seeds: String,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "imogoa")]
    pub algo: Algo,
    /// Gain quadrature cell size, degrees.
    #[arg(long, default_value_t = 5.0)]
    pub quad_deg: f64,
    /// Eavesdropper collusion mode; the scenario's own when absent.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Overrides the config's population size.
    #[arg(long)]
    pub pop: Option<usize>,
    /// Overrides the config's iteration count.
    #[arg(long)]
    pub iters: Option<usize>,
    /// 1-based device whose beams are exported.
    #[arg(long, default_value_t = 1)]
    pub device: usize,
}

#[derive(Clone, Debug, Args)]
pub struct EavesArgs {
    #[command(flatten)]
    pub common: Common,
    /// Eavesdropper counts, e.g. `1-5`.
    #[arg(long, default_value = "1-5")]
    pub counts: String,
    /// Seed for placing eavesdroppers beyond the scenario's own.
    #[arg(long, default_value_t = 7)]
    pub placement_seed: u64,
}

#[derive(Clone, Debug, Args)]
pub struct BaselineArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = LrsConfig::DEFAULT_DRAWS)]
    pub draws: usize,
    /// Also optimize and add the swarm relay's per-objective best values.
    #[arg(long)]
    pub urs: bool,
}

#[derive(Clone, Debug, Args)]
pub struct OverheadArgs {
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Packet loss probabilities, comma separated.
    #[arg(long, default_value = "0,0.05,0.1,0.2,0.3,0.5")]
    pub loss: String,
    #[arg(long, default_value_t = 3)]
    pub n_re: u32,
}

#[derive(Clone, Debug, Args)]
pub struct PatternArgs {
    #[command(flatten)]
    pub common: Common,
    /// Archive CSV written by `run`; the hovering baseline solution when absent.
    #[arg(long)]
    pub archive: Option<PathBuf>,
    /// 1-based archive row.
    #[arg(long, default_value_t = 1)]
    pub row: usize,
}

pub fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(c) => cmd_run(&c),
        Command::Compare(c) => cmd_compare(&c),
        Command::EavesSweep(a) => cmd_eaves_sweep(&a),
        Command::Baselines(a) => cmd_baselines(&a),
        Command::Overhead(a) => cmd_overhead(&a),
        Command::Beampattern(a) => cmd_beampattern(&a),
    }
}

fn read_scenario(path: &Option<PathBuf>) -> Result<Scenario> {
    match path {
        Some(p) => load_scenario(p).with_context(|| format!("loading scenario {}", p.display())),
        None => Ok(default_scenario()),
    }
}

/// Scenario, effective optimizer config (seed left at 0) and seeds.
fn setup(c: &Common) -> Result<(Scenario, OptimizerConfig, Vec<u64>)> {
    let mut scenario = read_scenario(&c.scenario)?;
    match c.mode {
        Some(ModeArg::Both) => bail!("--mode both is only meaningful for eaves-sweep"),
        Some(m) => scenario = scenario.with_eaves_mode(m.modes()[0]),
        None => {}
    }
    let mut cfg = match &c.config {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing config {}", p.display()))?
        }
        None => OptimizerConfig::default(),
    };
    if let Some(p) = c.pop {
        cfg.pop_size = p;
    }
    if let Some(i) = c.iters {
        cfg.iter_max = i;
    }
    cfg.seed = 0;
    let cfg = c.algo.configure(&cfg);
    cfg.validate()?;
    Ok((scenario, cfg, experiments::parse_seeds(&c.seeds)?))
}

fn out_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).with_context(|| format!("creating {}", path.display()))
}

fn write_effective_config(out: &Path, cfg: &OptimizerConfig, algo: Algo) -> Result<String> {
    let hash = hash_json(cfg)?;
    let record = serde_json::json!({ "algo": algo.name(), "config_hash": hash, "config": cfg });
    fs::write(out.join("effective_config.json"), serde_json::to_vec_pretty(&record)?)?;
    Ok(hash)
}

/// Per-seed artifacts of one run.
pub fn write_seed_outputs(
    out: &Path,
    run: &SeedRun,
    scenario: &Scenario,
    meta: &Sidecar,
    device: usize,
    quad_deg: f64,
) -> Result<()> {
    let s = run.seed;
    let meta = Sidecar {
        seed: Some(s),
        ..meta.clone()
    };
    archive_table(&run.archive, scenario).write(&out.join(format!("archive_seed{s}.csv")), &meta)?;
    trace_table(&run.trace).write(&out.join(format!("trace_seed{s}.csv")), &meta)?;
    let Some(best) = run
        .archive
        .iter()
        .max_by(|a, b| a.objectives.f1().total_cmp(&b.objectives.f1()))
    else {
        return Ok(());
    };
    trajectory_table(&best.solution, scenario).write(&out.join(format!("trajectory_seed{s}.csv")), &meta)?;
    let (paa, uvaa) = solution_patterns(&best.solution, scenario, device.saturating_sub(1), &quadrature(quad_deg)?)?;
    pattern_table(&paa).write(&out.join(format!("pattern_paa_seed{s}.csv")), &meta)?;
    pattern_table(&uvaa).write(&out.join(format!("pattern_uvaa_seed{s}.csv")), &meta)?;
    Ok(())
}

pub fn cmd_run(c: &Common) -> Result<()> {
    let (scenario, cfg, seeds) = setup(c)?;
    out_dir(&c.out)?;
    let hash = write_effective_config(&c.out, &cfg, c.algo)?;
    let meta = Sidecar::new(&format!("run --algo {}", c.algo.name()), None, &hash, &scenario)?;
    let evaluator = Evaluator::new(scenario.clone(), quadrature(c.quad_deg)?);
    let runs = run_seeds(&cfg, &evaluator, &seeds)?;
    for r in &runs {
        write_seed_outputs(&c.out, r, &scenario, &meta, c.device, c.quad_deg)?;
    }
    let fronts: Vec<Vec<[f64; 3]>> = runs.iter().map(SeedRun::front).collect();
    let mut summary = Table::new(["seed", "archive_size", "hv", "best_f1", "best_f2", "best_f3"]);
    let mut hvs = Vec::new();
    if let Some(norm) = shared_normalization(fronts.iter().map(Vec::as_slice)) {
        for (r, f) in runs.iter().zip(&fronts) {
            let hv = front_hv(f, &norm, cfg.hv_samples, r.seed)?;
            hvs.push(hv);
            let b = r.best();
            summary.push(vec![
                r.seed.to_string(),
                r.archive.len().to_string(),
                num(hv),
                num(b[0]),
                num(b[1]),
                num(b[2]),
            ]);
        }
    }
    let col = |i: usize| -> Vec<f64> { runs.iter().map(|r| r.best()[i]).collect() };
    summary.push(vec![
        "median".into(),
        "".into(),
        num(median(&hvs)),
        num(median(&col(0))),
        num(median(&col(1))),
        num(median(&col(2))),
    ]);
    summary.write(&c.out.join("summary.csv"), &meta)?;
    println!("{} seeds, median HV {:.4}", runs.len(), median(&hvs));
    Ok(())
}

pub fn cmd_compare(c: &Common) -> Result<()> {
    let (scenario, cfg, seeds) = setup(&Common {
        algo: Algo::Imogoa,
        ..c.clone()
    })?;
    out_dir(&c.out)?;
    let hash = write_effective_config(&c.out, &cfg, Algo::Imogoa)?;
    let meta = Sidecar::new("compare", None, &hash, &scenario)?;
    let evaluator = Evaluator::new(scenario, quadrature(c.quad_deg)?);
    let cmp = experiments::compare(&cfg, &evaluator, &seeds)?;
    let mut hv = Table::new(["algo", "seed", "hv", "archive_size"]);
    let mut curves = Table::new(["algo", "seed", "iteration", "hv", "archive_size"]);
    for (algo, runs, hvs) in [
        (Algo::Imogoa, &cmp.imogoa, &cmp.imogoa_hv),
        (Algo::Mogoa, &cmp.mogoa, &cmp.mogoa_hv),
    ] {
        for (r, h) in runs.iter().zip(hvs.iter()) {
            hv.push(vec![algo.name().into(), r.seed.to_string(), num(*h), r.archive.len().to_string()]);
            for rec in &r.trace.records {
                curves.push(vec![
                    algo.name().into(),
                    r.seed.to_string(),
                    rec.iteration.to_string(),
                    num(rec.hv),
                    rec.archive_size.to_string(),
                ]);
            }
        }
    }
    let mut summary = Table::new(["algo", "median_hv", "seeds"]);
    summary.push(vec!["imogoa".into(), num(cmp.median_imogoa()), seeds.len().to_string()]);
    summary.push(vec!["mogoa".into(), num(cmp.median_mogoa()), seeds.len().to_string()]);
    hv.write(&c.out.join("compare_hv.csv"), &meta)?;
    curves.write(&c.out.join("compare_curves.csv"), &meta)?;
    summary.write(&c.out.join("compare_summary.csv"), &meta)?;
    println!(
        "median HV: imogoa {:.4}, mogoa {:.4}",
        cmp.median_imogoa(),
        cmp.median_mogoa()
    );
    Ok(())
}

pub fn cmd_eaves_sweep(a: &EavesArgs) -> Result<()> {
    let c = &a.common;
    let (scenario, cfg, seeds) = setup(&Common { mode: None, ..c.clone() })?;
    let counts: Vec<usize> = experiments::parse_seeds(&a.counts)?.into_iter().map(|n| n as usize).collect();
    if counts.contains(&0) {
        bail!("eavesdropper counts must be at least 1");
    }
    out_dir(&c.out)?;
    let hash = write_effective_config(&c.out, &cfg, c.algo)?;
    let meta = Sidecar::new("eaves-sweep", None, &hash, &scenario)?;
    let quad = quadrature(c.quad_deg)?;
    let mut frozen = Table::new(["mode", "count", "f1", "f2", "f3"]);
    let mut sweep = Table::new(["mode", "count", "seed", "best_f1", "best_f2", "best_f3", "archive_size"]);
    for mode in c.mode.unwrap_or(ModeArg::Both).modes() {
        for &n in &counts {
            let s = scenario.with_eavesdropper_count(n, a.placement_seed)?.with_eaves_mode(mode);
            let evaluator = Evaluator::new(s.clone(), quad.clone());
            let o = evaluator.evaluate(Solution::baseline(&s))?.objectives;
            frozen.push(vec![mode_name(mode).into(), n.to_string(), num(o.f1()), num(o.f2()), num(o.f3())]);
            for r in run_seeds(&cfg, &evaluator, &seeds)? {
                let b = r.best();
                sweep.push(vec![
                    mode_name(mode).into(),
                    n.to_string(),
                    r.seed.to_string(),
                    num(b[0]),
                    num(b[1]),
                    num(b[2]),
                    r.archive.len().to_string(),
                ]);
            }
        }
    }
    frozen.write(&c.out.join("eaves_frozen.csv"), &meta)?;
    sweep.write(&c.out.join("eaves_sweep.csv"), &meta)?;
    Ok(())
}

fn log_row(label: String, o: &BaselineObjectives) -> Vec<String> {
    let mut row = baseline_row(label, o);
    row.extend([o.f1, o.f2, o.f3].map(|v| num(if v > 0.0 { v.log10() } else { f64::NAN })));
    row
}

pub fn cmd_baselines(a: &BaselineArgs) -> Result<()> {
    let c = &a.common;
    let (scenario, cfg, seeds) = setup(c)?;
    out_dir(&c.out)?;
    let hash = write_effective_config(&c.out, &cfg, c.algo)?;
    let meta = Sidecar::new("baselines", Some(seeds[0]), &hash, &scenario)?;
    let evaluator = Evaluator::new(scenario.clone(), quadrature(c.quad_deg)?);

    let urs = if a.urs {
        let runs = run_seeds(&cfg, &evaluator, &seeds)?;
        let col = |i: usize| -> Vec<f64> { runs.iter().map(|r| r.best()[i]).collect() };
        Some(BaselineObjectives {
            f1: median(&col(0)),
            f2: median(&col(1)),
            f3: median(&col(2)),
        })
    } else {
        None
    };

    let mut mrs = Table::new(["strategy", "f1", "f2", "f3", "log10_f1", "log10_f2", "log10_f3"]);
    for n in MrsConfig::HOP_COUNTS {
        mrs.push(log_row(format!("mrs_{n}"), &evaluate_mrs(&MrsConfig::new(n), &scenario)?));
    }
    let mut lrs = Table::new(["strategy", "f1", "f2", "f3"]);
    let mut rng = ChaCha8Rng::seed_from_u64(seeds[0]);
    for spacing in LrsConfig::SPACINGS {
        let cfg = LrsConfig {
            draws: a.draws,
            ..LrsConfig::new(spacing)
        };
        let o = evaluate_lrs(&cfg, evaluator.link_model(), &mut rng)?;
        lrs.push(baseline_row(format!("lrs_{spacing}m"), &o));
    }
    if let Some(u) = urs {
        mrs.push(log_row("urs".into(), &u));
        lrs.push(baseline_row("urs".into(), &u));
    }
    mrs.write(&c.out.join("baselines_mrs.csv"), &meta)?;
    lrs.write(&c.out.join("baselines_lrs.csv"), &meta)?;
    Ok(())
}

pub fn cmd_overhead(a: &OverheadArgs) -> Result<()> {
    let scenario = read_scenario(&a.scenario)?;
    out_dir(&a.out)?;
    let paa = scenario.paa();
    let base = OverheadParams {
        n_re: a.n_re,
        ..OverheadParams::for_system(scenario.uav_count(), scenario.device_count(), paa.rows, paa.cols)
    };
    let mut t = Table::new(["loss", "n_re", "expected_transmissions", "step1_j", "step3_j", "total_j"]);
    for part in a.loss.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let loss: f64 = part.parse().with_context(|| format!("bad loss {part}"))?;
        let r = overhead_report(&OverheadParams { loss, ..base.clone() })?;
        t.push(vec![
            num(loss),
            a.n_re.to_string(),
            num(r.expected_transmissions),
            num(r.step1_joules),
            num(r.step3_joules),
            num(r.total_joules),
        ]);
        println!("loss {loss}: {:.6} J", r.total_joules);
    }
    let meta = Sidecar::new("overhead", None, &hash_json(&a.n_re)?, &scenario)?;
    t.write(&a.out.join("overhead.csv"), &meta)
}

pub fn cmd_beampattern(a: &PatternArgs) -> Result<()> {
    let c = &a.common;
    let scenario = read_scenario(&c.scenario)?;
    out_dir(&c.out)?;
    let sol = match &a.archive {
        Some(p) => read_archive_row(p, a.row, &scenario)?,
        None => Solution::baseline(&scenario),
    };
    let (paa, uvaa) = solution_patterns(&sol, &scenario, c.device.saturating_sub(1), &quadrature(c.quad_deg)?)?;
    let meta = Sidecar::new("beampattern", None, &hash_json(&sol.to_record())?, &scenario)?;
    pattern_table(&paa).write(&c.out.join("pattern_paa.csv"), &meta)?;
    pattern_table(&uvaa).write(&c.out.join("pattern_uvaa.csv"), &meta)?;
    Ok(())
}

/// Solution stored in a 1-based row of an archive CSV.
pub fn read_archive_row(path: &Path, row: usize, scenario: &Scenario) -> Result<Solution> {
    let mut rdr = csv::Reader::from_path(path).with_context(|| format!("opening {}", path.display()))?;
    let rec = rdr
        .records()
        .nth(row.saturating_sub(1))
        .with_context(|| format!("archive has no row {row}"))??;
    // objective and status columns precede the record
    let values: Vec<f64> = rec.iter().skip(6).map(str::parse).collect::<std::result::Result<_, _>>()?;
    Ok(Solution::from_record(&values, scenario)?)
}
