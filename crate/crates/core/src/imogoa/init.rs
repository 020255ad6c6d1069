//! Population initialization: uniform random, or the hybrid of Halton
//! points and circle-map chaos.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::problem::{continuous_bounds, receiver_from_real, Solution};
use crate::scenario::Scenario;

/// Radical inverse of `index` in `base`.
pub fn halton(mut index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

/// One circle-map iteration wrapped into `[0, 1)`.
pub fn circle_map(c: f64, a: f64, b: f64) -> f64 {
    (c + b - a / (2.0 * PI) * (2.0 * PI * c).sin()).rem_euclid(1.0)
}

const HALTON_BASES: [u64; 4] = [2, 3, 5, 7];
const HALTON_MAX_OFFSET: u64 = 1 << 16;

/// Unit-cube samples: the first `ceil(n/2)` rows from per-dimension Halton
/// sequences, the rest from per-dimension circle-map streams.
///
/// Each dimension draws its base from the primes below 10 and a random
/// starting index, so dimensions sharing a base are not identical.
pub fn h3c_unit<R: Rng + ?Sized>(n: usize, dim: usize, a: f64, b: f64, rng: &mut R) -> Vec<Vec<f64>> {
    let n_halton = n.div_ceil(2);
    let mut rows = vec![vec![0.0; dim]; n];
    for d in 0..dim {
        let base = HALTON_BASES[rng.gen_range(0..HALTON_BASES.len())];
        let offset = rng.gen_range(0..HALTON_MAX_OFFSET);
        for (i, row) in rows.iter_mut().take(n_halton).enumerate() {
            row[d] = halton(offset + i as u64 + 1, base);
        }
        let mut c: f64 = rng.gen();
        for row in rows.iter_mut().skip(n_halton) {
            c = circle_map(c, a, b);
            row[d] = c;
        }
    }
    rows
}

/// Order whose ranks follow ascending keys (stable on ties).
pub fn argsort(keys: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by(|&i, &j| keys[i].total_cmp(&keys[j]));
    idx
}

/// Number of unit-cube coordinates one solution is decoded from.
pub fn encoding_len(scenario: &Scenario) -> usize {
    continuous_bounds(scenario).0.len() + 2 * scenario.device_count()
}

/// Builds a solution from unit-cube coordinates: continuous block, then one
/// receiver gene per device, then one order key per device.
pub fn decode_unit(u: &[f64], scenario: &Scenario) -> Solution {
    let (lb, ub) = continuous_bounds(scenario);
    let nc = lb.len();
    let t = scenario.device_count();
    let k = scenario.uav_count();
    let x: Vec<f64> = (0..nc).map(|d| lb[d] + u[d] * (ub[d] - lb[d])).collect();
    let mut sol = Solution::baseline(scenario);
    sol.set_continuous(&x);
    sol.s_recv = (0..t)
        .map(|i| receiver_from_real(1.0 + u[nc + i] * (k as f64 - 1.0), k))
        .collect();
    sol.order = argsort(&u[nc + t..nc + 2 * t]);
    sol
}

pub fn h3c_population<R: Rng + ?Sized>(scenario: &Scenario, n: usize, a: f64, b: f64, rng: &mut R) -> Vec<Solution> {
    h3c_unit(n, encoding_len(scenario), a, b, rng)
        .iter()
        .map(|u| decode_unit(u, scenario))
        .collect()
}

/// Uniform continuous values, uniform receivers, shuffled order.
pub fn random_population<R: Rng + ?Sized>(scenario: &Scenario, n: usize, rng: &mut R) -> Vec<Solution> {
    let (lb, ub) = continuous_bounds(scenario);
    let k = scenario.uav_count();
    (0..n)
        .map(|_| {
            let mut sol = Solution::baseline(scenario);
            let x: Vec<f64> = lb.iter().zip(&ub).map(|(l, u)| rng.gen_range(*l..=*u)).collect();
            sol.set_continuous(&x);
            for r in &mut sol.s_recv {
                *r = rng.gen_range(0..k);
            }
            sol.order.shuffle(rng);
            sol
        })
        .collect()
}
