//! Shared fixtures for the benchmarks in `benches/`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use swarmsec_core::beamforming::GainQuadrature;
use swarmsec_core::imogoa::init::h3c_population;
use swarmsec_core::problem::{Evaluator, Solution};
use swarmsec_core::scenario::default_scenario;

/// Default scenario evaluated on a `deg` degree quadrature.
pub fn evaluator(deg: f64) -> Evaluator {
    Evaluator::new(default_scenario(), GainQuadrature::from_resolution_deg(deg).expect("valid resolution"))
}

/// `n` chaotic initial solutions for the default scenario.
pub fn population(n: usize, seed: u64) -> Vec<Solution> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    h3c_population(&default_scenario(), n, 0.5, 0.2, &mut rng)
}
