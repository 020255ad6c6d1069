//! IMOGOA and vanilla MOGOA.
//!
//! Random draws happen sequentially on one seeded stream. Offspring are
//! fully drawn (including the tie-break coin) before the parallel evaluation
//! phase, which gathers results by index, so a seed fixes the whole run
//! regardless of the worker count.

pub mod crossover;
pub mod init;
pub mod operators;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beamforming::GainQuadrature;
use crate::error::{Error, Result};
use crate::moea::{normalized_hypervolume, roulette_select_target, Archive, Normalization, PrunePolicy};
use crate::problem::{continuous_bounds, dominates, EvaluatedSolution, Evaluator, Solution};
use crate::scenario::Scenario;

pub use crossover::{pmx, tpc};
pub use operators::{goa_step, levy_sigma, GoaParams};

/// Switches for the five improvements over MOGOA.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Toggles {
    pub h3c_init: bool,
    pub nonlinear_c: bool,
    pub levy: bool,
    pub archive_mutation: bool,
    pub dcde: bool,
}

impl Toggles {
    pub const ALL: Toggles = Toggles {
        h3c_init: true,
        nonlinear_c: true,
        levy: true,
        archive_mutation: true,
        dcde: true,
    };
    pub const NONE: Toggles = Toggles {
        h3c_init: false,
        nonlinear_c: false,
        levy: false,
        archive_mutation: false,
        dcde: false,
    };
}

impl Default for Toggles {
    fn default() -> Self {
        Toggles::ALL
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerConfig {
    pub pop_size: usize,
    pub iter_max: usize,
    pub c_max: f64,
    pub c_min: f64,
    pub levy_beta: f64,
    /// Levy step size, in units of `step_scale`.
    pub alpha1: f64,
    /// Cauchy step size, in units of `step_scale`.
    pub alpha2: f64,
    pub step_scale: StepScale,
    pub goa_f: f64,
    pub goa_l: f64,
    /// Roulette neighborhood radius in normalized objective space.
    pub r_nbh: f64,
    pub chaos_a: f64,
    pub chaos_b: f64,
    /// Defaults to `pop_size`.
    pub archive_cap: Option<usize>,
    /// Monte Carlo samples per trace hypervolume.
    pub hv_samples: usize,
    pub toggles: Toggles,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            pop_size: 30,
            iter_max: 500,
            c_max: 1.0,
            c_min: 0.0004,
            levy_beta: 1.5,
            alpha1: 0.2,
            alpha2: 0.2,
            step_scale: StepScale::Difference,
            goa_f: 0.5,
            goa_l: 1.5,
            r_nbh: 0.1,
            chaos_a: 0.5,
            chaos_b: 0.2,
            archive_cap: None,
            hv_samples: 10_000,
            toggles: Toggles::ALL,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn imogoa() -> Self {
        Self::default()
    }

    pub fn vanilla() -> Self {
        Self {
            toggles: Toggles::NONE,
            ..Self::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_budget(mut self, pop_size: usize, iter_max: usize) -> Self {
        self.pop_size = pop_size;
        self.iter_max = iter_max;
        self
    }

    pub fn cap(&self) -> usize {
        self.archive_cap.unwrap_or(self.pop_size)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |r: &str| Err(Error::invalid("optimizer config", r));
        if self.pop_size < 4 {
            return bad("pop_size must be at least 4");
        }
        if !(self.c_min > 0.0 && self.c_min < self.c_max) {
            return bad("need 0 < c_min < c_max");
        }
        if !(self.levy_beta > 0.0 && self.levy_beta <= 2.0) {
            return bad("levy_beta must lie in (0, 2]");
        }
        if !(self.alpha1 >= 0.0 && self.alpha2 >= 0.0) {
            return bad("step scales must be non-negative");
        }
        if !(self.goa_f.is_finite() && self.goa_l > 0.0) {
            return bad("goa_l must be positive");
        }
        if !(self.r_nbh > 0.0) {
            return bad("r_nbh must be positive");
        }
        if self.cap() == 0 {
            return bad("archive_cap must be positive");
        }
        if self.hv_samples == 0 {
            return bad("hv_samples must be positive");
        }
        Ok(())
    }

    pub fn coefficient(&self, iter: usize) -> f64 {
        if self.toggles.nonlinear_c {
            operators::nonlinear_coefficient(iter, self.iter_max, self.c_max, self.c_min)
        } else {
            operators::linear_coefficient(iter, self.iter_max, self.c_max, self.c_min)
        }
    }

    fn prune_policy(&self) -> PrunePolicy {
        if self.toggles.dcde {
            PrunePolicy::Dynamic
        } else {
            PrunePolicy::Static
        }
    }
}

/// Per-dimension unit of the Levy and Cauchy steps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepScale {
    /// `|x - reference|`: the gap to the target (Levy) or to the crossover
    /// partner (Cauchy), so steps shrink as the search contracts.
    #[default]
    Difference,
    /// The box range `ub - lb`.
    Range,
    /// Raw units of each variable.
    Absolute,
}

fn step_scale(mode: StepScale, bounds: &(Vec<f64>, Vec<f64>), x: &[f64], reference: &[f64]) -> Vec<f64> {
    match mode {
        StepScale::Difference => x.iter().zip(reference).map(|(a, b)| (a - b).abs()).collect(),
        StepScale::Range => bounds.0.iter().zip(&bounds.1).map(|(l, u)| u - l).collect(),
        StepScale::Absolute => vec![1.0; x.len()],
    }
}

/// Two offspring sharing their continuous block, plus the pre-drawn coin
/// used when neither dominates.
#[derive(Clone, Debug)]
pub struct OffspringPair {
    pub o1: Solution,
    pub o2: Solution,
    pub prefer_first: bool,
}

fn pair_from<R: Rng + ?Sized>(base: &Solution, x: &[f64], partner: &Solution, rng: &mut R) -> OffspringPair {
    let mut o1 = base.clone();
    o1.set_continuous(x);
    let (r1, r2) = crossover::tpc(&base.s_recv, &partner.s_recv, rng);
    let (q1, q2) = crossover::pmx(&base.order, &partner.order, rng);
    let mut o2 = o1.clone();
    o1.s_recv = r1;
    o1.order = q1;
    o2.s_recv = r2;
    o2.order = q2;
    OffspringPair {
        o1,
        o2,
        prefer_first: rng.gen::<f64>() < 0.5,
    }
}

/// Draws the offspring of grasshopper `i`: GOA step toward `target`, optional
/// Levy flight, box clamp, then TPC/PMX against the target's discrete genes.
pub fn propose_update<R: Rng + ?Sized>(
    pop_x: &[Vec<f64>],
    i: usize,
    current: &Solution,
    target: &Solution,
    c: f64,
    cfg: &OptimizerConfig,
    bounds: &(Vec<f64>, Vec<f64>),
    rng: &mut R,
) -> OffspringPair {
    let (lb, ub) = bounds;
    let p = GoaParams {
        c,
        f: cfg.goa_f,
        l: cfg.goa_l,
    };
    let mut x = goa_step(pop_x, i, &target.continuous(), lb, ub, &p);
    if cfg.toggles.levy {
        let scale = step_scale(cfg.step_scale, bounds, &pop_x[i], &target.continuous());
        operators::levy_perturb(&mut x, &scale, cfg.alpha1, cfg.levy_beta, rng);
    }
    operators::clamp_box(&mut x, lb, ub);
    pair_from(current, &x, target, rng)
}

/// Draws the mutation offspring of an archive member: Cauchy step on the
/// continuous block, TPC/PMX against `partner`.
pub fn propose_mutation<R: Rng + ?Sized>(
    member: &Solution,
    partner: &Solution,
    cfg: &OptimizerConfig,
    bounds: &(Vec<f64>, Vec<f64>),
    rng: &mut R,
) -> OffspringPair {
    let (lb, ub) = bounds;
    let mut x = member.continuous();
    let scale = step_scale(cfg.step_scale, bounds, &x, &partner.continuous());
    operators::cauchy_perturb(&mut x, &scale, cfg.alpha2, rng);
    operators::clamp_box(&mut x, lb, ub);
    pair_from(member, &x, partner, rng)
}

/// Dominance winner of two offspring, else the pre-drawn coin.
pub fn select(o1: EvaluatedSolution, o2: EvaluatedSolution, prefer_first: bool) -> EvaluatedSolution {
    if dominates(&o1, &o2) {
        o1
    } else if dominates(&o2, &o1) || !prefer_first {
        o2
    } else {
        o1
    }
}

/// Evaluates both offspring, sharing their UVAA terms, and keeps one.
pub fn resolve(evaluator: &Evaluator, pair: OffspringPair) -> Result<EvaluatedSolution> {
    let cache = evaluator.uvaa_cache(&pair.o1);
    let e1 = evaluator.evaluate_cached(pair.o1, &cache)?;
    let e2 = evaluator.evaluate_cached(pair.o2, &cache)?;
    Ok(select(e1, e2, pair.prefer_first))
}

fn resolve_all(evaluator: &Evaluator, pairs: Vec<OffspringPair>) -> Result<Vec<EvaluatedSolution>> {
    pairs.into_par_iter().map(|p| resolve(evaluator, p)).collect()
}

/// Archive-mutation offspring for every member, each crossed with a
/// uniformly drawn member.
pub fn archive_mutation<R: Rng + ?Sized>(
    archive: &Archive,
    cfg: &OptimizerConfig,
    bounds: &(Vec<f64>, Vec<f64>),
    rng: &mut R,
) -> Result<Vec<OffspringPair>> {
    let members = archive.members();
    if members.is_empty() {
        return Err(Error::EmptyArchive);
    }
    Ok(members
        .iter()
        .map(|m| {
            let partner = &members[rng.gen_range(0..members.len())];
            propose_mutation(&m.solution, &partner.solution, cfg, bounds, rng)
        })
        .collect())
}

/// Snapshot of the archive after one iteration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub c: f64,
    pub archive_size: usize,
    /// Filled in after the run, once the normalization is known.
    pub hv: f64,
    /// Best raw values: largest f1, smallest f2, smallest f3.
    pub best: [f64; 3],
    /// Archive objective vectors in minimization form.
    pub front: Vec<[f64; 3]>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub records: Vec<IterationRecord>,
}

impl RunTrace {
    fn push(&mut self, iteration: usize, c: f64, archive: &Archive) {
        let front: Vec<[f64; 3]> = archive.members().iter().map(|m| m.objectives.0).collect();
        let mut best = [f64::NEG_INFINITY, f64::INFINITY, f64::INFINITY];
        for m in archive.members() {
            best[0] = best[0].max(m.objectives.f1());
            best[1] = best[1].min(m.objectives.f2());
            best[2] = best[2].min(m.objectives.f3());
        }
        self.records.push(IterationRecord {
            iteration,
            c,
            archive_size: archive.len(),
            hv: 0.0,
            best,
            front,
        });
    }

    pub fn final_front(&self) -> &[[f64; 3]] {
        self.records.last().map_or(&[], |r| &r.front)
    }

    /// Bounds over every snapshot of this run.
    pub fn normalization(&self) -> Option<Normalization> {
        Normalization::from_points(self.records.iter().flat_map(|r| r.front.iter().map(|p| p.as_slice())))
    }

    /// Refills every record's hypervolume under `norm`. The same sample
    /// stream is reused for each snapshot so the series is comparable.
    pub fn recompute_hv(&mut self, norm: &Normalization, n_samples: usize, seed: u64) -> Result<()> {
        for r in &mut self.records {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            r.hv = normalized_hypervolume(r.front.iter().map(|p| p.as_slice()), norm, n_samples, &mut rng)?;
        }
        Ok(())
    }

    pub fn hv_series(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.hv).collect()
    }
}

/// Seed of the hypervolume sample stream for a run seed.
pub fn hv_seed(seed: u64) -> u64 {
    seed ^ 0x9e37_79b9_7f4a_7c15
}

struct Loop<'a, O: FnMut(usize, &Archive)> {
    cfg: &'a OptimizerConfig,
    evaluator: &'a Evaluator,
    bounds: (Vec<f64>, Vec<f64>),
    rng: ChaCha8Rng,
    archive: Archive,
    observer: O,
}

impl<O: FnMut(usize, &Archive)> Loop<'_, O> {
    /// Merges `candidates`, then optionally mutates the archive and merges
    /// the winners.
    fn archive_pass(&mut self, iter: usize, candidates: Vec<EvaluatedSolution>) -> Result<()> {
        self.archive.update(candidates, &mut self.rng);
        (self.observer)(iter, &self.archive);
        if self.cfg.toggles.archive_mutation && !self.archive.is_empty() {
            let pairs = archive_mutation(&self.archive, self.cfg, &self.bounds, &mut self.rng)?;
            let winners = resolve_all(self.evaluator, pairs)?;
            self.archive.update(winners, &mut self.rng);
            (self.observer)(iter, &self.archive);
        }
        Ok(())
    }
}

/// Runs the optimizer, calling `observer` after every archive update.
pub fn run_observed<O: FnMut(usize, &Archive)>(
    cfg: &OptimizerConfig,
    evaluator: &Evaluator,
    observer: O,
) -> Result<(Archive, RunTrace)> {
    cfg.validate()?;
    let scenario = evaluator.scenario();
    let mut lp = Loop {
        cfg,
        evaluator,
        bounds: continuous_bounds(scenario),
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        archive: Archive::new(cfg.cap(), cfg.prune_policy()),
        observer,
    };
    let init = if cfg.toggles.h3c_init {
        init::h3c_population(scenario, cfg.pop_size, cfg.chaos_a, cfg.chaos_b, &mut lp.rng)
    } else {
        init::random_population(scenario, cfg.pop_size, &mut lp.rng)
    };
    let mut pop: Vec<EvaluatedSolution> = init
        .into_par_iter()
        .map(|s| evaluator.evaluate(s))
        .collect::<Result<_>>()?;
    let mut trace = RunTrace::default();
    lp.archive_pass(0, pop.clone())?;
    trace.push(0, cfg.coefficient(0), &lp.archive);

    for iter in 1..=cfg.iter_max {
        let c = cfg.coefficient(iter);
        let target = roulette_select_target(&lp.archive, cfg.r_nbh, &mut lp.rng)?.solution.clone();
        let pop_x: Vec<Vec<f64>> = pop.iter().map(|g| g.solution.continuous()).collect();
        let pairs: Vec<OffspringPair> = (0..pop.len())
            .map(|i| propose_update(&pop_x, i, &pop[i].solution, &target, c, cfg, &lp.bounds, &mut lp.rng))
            .collect();
        pop = resolve_all(evaluator, pairs)?;
        lp.archive_pass(iter, pop.clone())?;
        trace.push(iter, c, &lp.archive);
    }

    if let Some(norm) = trace.normalization() {
        trace.recompute_hv(&norm, cfg.hv_samples, hv_seed(cfg.seed))?;
    }
    Ok((lp.archive, trace))
}

pub fn run_with(cfg: &OptimizerConfig, evaluator: &Evaluator) -> Result<(Archive, RunTrace)> {
    run_observed(cfg, evaluator, |_, _| {})
}

pub fn run(cfg: &OptimizerConfig, scenario: &Scenario, quad: &GainQuadrature) -> Result<(Archive, RunTrace)> {
    run_with(cfg, &Evaluator::new(scenario.clone(), quad.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moea::non_dominated;
    use crate::problem::ObjectiveVector;
    use crate::scenario::{generate_scenario_with, GenerateOptions};

    fn small_scenario() -> Scenario {
        let opts = GenerateOptions {
            paa_size: 2,
            ..GenerateOptions::default()
        };
        generate_scenario_with(3, 4, 3, 40.0, &opts).unwrap()
    }

    fn quad() -> GainQuadrature {
        GainQuadrature::from_resolution_deg(15.0).unwrap()
    }

    fn small_cfg(seed: u64) -> OptimizerConfig {
        OptimizerConfig::imogoa().with_budget(6, 4).with_seed(seed)
    }

    fn fake(obj: [f64; 3]) -> EvaluatedSolution {
        EvaluatedSolution {
            solution: Solution::baseline(&small_scenario()),
            objectives: ObjectiveVector(obj),
            feasible: true,
            violation: 0.0,
            degenerate: false,
        }
    }

    #[test]
    fn config_validation() {
        assert!(OptimizerConfig::default().validate().is_ok());
        assert!(OptimizerConfig::vanilla().validate().is_ok());
        let mut c = OptimizerConfig::default();
        c.pop_size = 3;
        assert!(c.validate().is_err());
        let mut c = OptimizerConfig::default();
        c.c_min = 2.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn config_json_fills_defaults() {
        let c: OptimizerConfig = serde_json::from_str(r#"{"pop_size": 8, "seed": 3}"#).unwrap();
        assert_eq!(c.pop_size, 8);
        assert_eq!(c.seed, 3);
        assert_eq!(c.alpha1, 0.2);
        assert_eq!(c.toggles, Toggles::ALL);
    }

    #[test]
    fn select_prefers_dominating_offspring() {
        let a = fake([-2.0, 1.0, 1.0]);
        let b = fake([-1.0, 2.0, 2.0]);
        assert_eq!(select(a.clone(), b.clone(), false).objectives, a.objectives);
        assert_eq!(select(b.clone(), a.clone(), true).objectives, a.objectives);
        let c = fake([-3.0, 3.0, 1.0]);
        assert_eq!(select(a.clone(), c.clone(), true).objectives, a.objectives);
        assert_eq!(select(a, c.clone(), false).objectives, c.objectives);
    }

    #[test]
    fn identical_parents_give_identical_offspring() {
        let s = small_scenario();
        let sol = Solution::baseline(&s);
        let bounds = continuous_bounds(&s);
        let mut cfg = OptimizerConfig::imogoa();
        cfg.alpha2 = 0.0;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pair = propose_mutation(&sol, &sol, &cfg, &bounds, &mut rng);
        assert_eq!(pair.o1, sol);
        assert_eq!(pair.o2, sol);
    }

    #[test]
    fn mutation_candidates_stay_in_box() {
        let s = small_scenario();
        let bounds = continuous_bounds(&s);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let pop = init::random_population(&s, 5, &mut rng);
        let cfg = OptimizerConfig::imogoa();
        for m in &pop {
            let pair = propose_mutation(m, &pop[0], &cfg, &bounds, &mut rng);
            for o in [pair.o1, pair.o2] {
                let x = o.continuous();
                assert!(x.iter().zip(&bounds.0).zip(&bounds.1).all(|((v, l), u)| v >= l && v <= u));
            }
        }
    }

    #[test]
    fn update_step_matches_direct_formula() {
        // toggles off, alpha = 0: continuous block is exactly the GOA rule
        let s = small_scenario();
        let bounds = continuous_bounds(&s);
        let (lb, ub) = &bounds;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pop = init::random_population(&s, 4, &mut rng);
        let xs: Vec<Vec<f64>> = pop.iter().map(|p| p.continuous()).collect();
        let target = &pop[3];
        let tx = target.continuous();
        let mut cfg = OptimizerConfig::vanilla();
        cfg.alpha1 = 0.0;
        let c = 0.37;
        let pair = propose_update(&xs, 1, &pop[1], target, c, &cfg, &bounds, &mut rng);
        let dim = tx.len();
        let n = |x: &Vec<f64>, d: usize| x[d] / (ub[d] - lb[d]);
        let mut want = tx.clone();
        for d in 0..dim {
            let mut acc = 0.0;
            for j in [0, 2, 3] {
                let dist = (0..dim).map(|e| (n(&xs[j], e) - n(&xs[1], e)).powi(2)).sum::<f64>().sqrt();
                let g = n(&xs[j], d) - n(&xs[1], d);
                let r = 1.0 + 3.0 * g.abs();
                let sf = 0.5 * (-r / 1.5).exp() - (-r).exp();
                acc += c * (ub[d] - lb[d]) / 2.0 * sf * g / dist;
            }
            want[d] = (c * acc + tx[d]).clamp(lb[d], ub[d]);
        }
        let got = pair.o1.continuous();
        for d in 0..dim {
            assert!((got[d] - want[d]).abs() < 1e-9 * (1.0 + want[d].abs()));
        }
        assert_eq!(pair.o1.continuous(), pair.o2.continuous());
    }

    #[test]
    fn seeded_runs_repeat() {
        let s = small_scenario();
        let (a1, t1) = run(&small_cfg(5), &s, &quad()).unwrap();
        let (a2, t2) = run(&small_cfg(5), &s, &quad()).unwrap();
        assert_eq!(t1, t2);
        assert_eq!(a1.members(), a2.members());
        assert_eq!(t1.records.len(), 5);
    }

    #[test]
    fn zero_iterations_keep_initial_front() {
        let s = small_scenario();
        let mut cfg = small_cfg(6);
        cfg.iter_max = 0;
        cfg.toggles.archive_mutation = false;
        let (archive, trace) = run(&cfg, &s, &quad()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let init = init::h3c_population(&s, cfg.pop_size, cfg.chaos_a, cfg.chaos_b, &mut rng);
        let ev = Evaluator::new(s.clone(), quad());
        let pop: Vec<_> = init.into_iter().map(|x| ev.evaluate(x).unwrap()).collect();
        let front = non_dominated(pop);
        assert_eq!(trace.records.len(), 1);
        if front.len() <= cfg.cap() {
            assert_eq!(archive.members(), front.as_slice());
        }
    }

    #[test]
    fn archive_stays_consistent() {
        let s = small_scenario();
        let mut checks = 0;
        for cfg in [small_cfg(7), OptimizerConfig::vanilla().with_budget(6, 4).with_seed(7)] {
            run_observed(&cfg, &Evaluator::new(s.clone(), quad()), |_, a| {
                assert!(a.is_consistent());
                checks += 1;
            })
            .unwrap();
        }
        assert!(checks >= 10);
    }

    #[test]
    fn trace_hv_is_in_unit_range() {
        let (_, trace) = run(&small_cfg(8), &small_scenario(), &quad()).unwrap();
        assert!(trace.hv_series().iter().all(|h| (0.0..=1.0).contains(h)));
        assert!(trace.records.iter().all(|r| r.archive_size == r.front.len()));
    }
}
