//! Seeded experiment drivers shared by the subcommands and the tests.

use anyhow::{bail, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use swarmsec_core::beamforming::GainQuadrature;
use swarmsec_core::imogoa::{hv_seed, run_with, OptimizerConfig, RunTrace, Toggles};
use swarmsec_core::moea::{normalized_hypervolume, Normalization};
use swarmsec_core::problem::{EvaluatedSolution, Evaluator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Imogoa,
    Mogoa,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Imogoa => "imogoa",
            Algo::Mogoa => "mogoa",
        }
    }

    /// `base` with the toggles this algorithm requires.
    pub fn configure(self, base: &OptimizerConfig) -> OptimizerConfig {
        let mut cfg = base.clone();
        if self == Algo::Mogoa {
            cfg.toggles = Toggles::NONE;
        }
        cfg
    }
}

/// Parses `"0,3,5-8"` into `[0, 3, 5, 6, 7, 8]`.
pub fn parse_seeds(text: &str) -> Result<Vec<u64>> {
    let mut seeds = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (u64, u64) = (a.trim().parse()?, b.trim().parse()?);
                if b < a {
                    bail!("empty seed range {part}");
                }
                seeds.extend(a..=b);
            }
            None => seeds.push(part.parse()?),
        }
    }
    if seeds.is_empty() {
        bail!("at least one seed is required");
    }
    Ok(seeds)
}

pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

#[derive(Clone, Debug)]
pub struct SeedRun {
    pub seed: u64,
    pub archive: Vec<EvaluatedSolution>,
    pub trace: RunTrace,
}

impl SeedRun {
    pub fn front(&self) -> Vec<[f64; 3]> {
        self.archive.iter().map(|m| m.objectives.0).collect()
    }

    /// Largest f1, smallest f2, smallest f3 over the final archive.
    pub fn best(&self) -> [f64; 3] {
        self.trace.records.last().map_or([f64::NAN; 3], |r| r.best)
    }
}

/// Runs one optimizer per seed; seeds run in parallel, results in seed order.
pub fn run_seeds(cfg: &OptimizerConfig, evaluator: &Evaluator, seeds: &[u64]) -> Result<Vec<SeedRun>> {
    seeds
        .par_iter()
        .map(|&seed| {
            let (archive, trace) = run_with(&cfg.clone().with_seed(seed), evaluator)?;
            Ok(SeedRun {
                seed,
                archive: archive.members().to_vec(),
                trace,
            })
        })
        .collect()
}

/// Bounds spanning every point of every front.
pub fn shared_normalization<'a>(fronts: impl IntoIterator<Item = &'a [[f64; 3]]>) -> Option<Normalization> {
    Normalization::from_points(fronts.into_iter().flat_map(|f| f.iter().map(|p| p.as_slice())))
}

/// Hypervolume of `front` under `norm`, sampled with the stream of `seed`.
pub fn front_hv(front: &[[f64; 3]], norm: &Normalization, n_samples: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(hv_seed(seed));
    Ok(normalized_hypervolume(front.iter().map(|p| p.as_slice()), norm, n_samples, &mut rng)?)
}

#[derive(Clone, Debug)]
pub struct Comparison {
    pub imogoa: Vec<SeedRun>,
    pub mogoa: Vec<SeedRun>,
    pub normalization: Normalization,
    pub imogoa_hv: Vec<f64>,
    pub mogoa_hv: Vec<f64>,
}

impl Comparison {
    pub fn median_imogoa(&self) -> f64 {
        median(&self.imogoa_hv)
    }

    pub fn median_mogoa(&self) -> f64 {
        median(&self.mogoa_hv)
    }
}

/// Final-front hypervolumes of both algorithms, normalized over the union
/// of every final front. Seed `s` of either algorithm uses the same sample
/// stream. Traces are rescored under the shared bounds.
pub fn compare(base: &OptimizerConfig, evaluator: &Evaluator, seeds: &[u64]) -> Result<Comparison> {
    if seeds.len() < 3 {
        bail!("compare needs at least 3 seeds, got {}", seeds.len());
    }
    let mut imogoa = run_seeds(&Algo::Imogoa.configure(base), evaluator, seeds)?;
    let mut mogoa = run_seeds(&Algo::Mogoa.configure(base), evaluator, seeds)?;
    let fronts: Vec<Vec<[f64; 3]>> = imogoa.iter().chain(&mogoa).map(SeedRun::front).collect();
    let Some(norm) = shared_normalization(fronts.iter().map(Vec::as_slice)) else {
        bail!("all archives are empty");
    };
    let score = |runs: &mut Vec<SeedRun>| -> Result<Vec<f64>> {
        runs.iter_mut()
            .map(|r| {
                r.trace.recompute_hv(&norm, base.hv_samples, hv_seed(r.seed))?;
                front_hv(&r.front(), &norm, base.hv_samples, r.seed)
            })
            .collect()
    };
    let imogoa_hv = score(&mut imogoa)?;
    let mogoa_hv = score(&mut mogoa)?;
    Ok(Comparison {
        imogoa,
        mogoa,
        normalization: norm,
        imogoa_hv,
        mogoa_hv,
    })
}

/// Quadrature with cells of roughly `deg` degrees.
pub fn quadrature(deg: f64) -> Result<GainQuadrature> {
    Ok(GainQuadrature::from_resolution_deg(deg)?)
}
