//! Continuous-space operators: the GOA social step, the decreasing
//! coefficient, Levy flight and Cauchy mutation.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Cauchy, Distribution, StandardNormal};

/// GOA social force `f e^{-r/l} - e^{-r}`.
pub fn social_force(r: f64, f: f64, l: f64) -> f64 {
    f * (-r / l).exp() - (-r).exp()
}

/// Linear schedule from `c_max` at iteration 0 to `c_min` at `iter_max`.
pub fn linear_coefficient(iter: usize, iter_max: usize, c_max: f64, c_min: f64) -> f64 {
    if iter_max == 0 {
        return c_max;
    }
    let t = (iter as f64 / iter_max as f64).min(1.0);
    (c_max - t * (c_max - c_min)).clamp(c_min, c_max)
}

/// `c_max - (c_max - c_min) sin(pi/2 sqrt(iter / iter_max))`: fast early
/// decay that flattens out toward `c_min`.
pub fn nonlinear_coefficient(iter: usize, iter_max: usize, c_max: f64, c_min: f64) -> f64 {
    if iter_max == 0 {
        return c_max;
    }
    let t = (iter as f64 / iter_max as f64).min(1.0);
    (c_max - (c_max - c_min) * (0.5 * PI * t.sqrt()).sin()).clamp(c_min, c_max)
}

/// Parameters of [`goa_step`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GoaParams {
    pub c: f64,
    pub f: f64,
    pub l: f64,
}

/// GOA position proposal for individual `i`.
///
/// Distances and directions are taken in the box-normalized space so that
/// weights and coordinates mix on equal footing. Each per-dimension gap is
/// mapped from `[0, 1]` onto `[1, 4]` before entering the social force.
pub fn goa_step(pop: &[Vec<f64>], i: usize, target: &[f64], lb: &[f64], ub: &[f64], p: &GoaParams) -> Vec<f64> {
    let dim = target.len();
    let span: Vec<f64> = (0..dim).map(|d| ub[d] - lb[d]).collect();
    let norm = |x: &[f64], d: usize| if span[d] > 0.0 { x[d] / span[d] } else { 0.0 };
    let xi = &pop[i];
    let mut social = vec![0.0; dim];
    let mut delta = vec![0.0; dim];
    for (j, xj) in pop.iter().enumerate() {
        if j == i {
            continue;
        }
        let mut dist2 = 0.0;
        for d in 0..dim {
            delta[d] = norm(xj, d) - norm(xi, d);
            dist2 += delta[d] * delta[d];
        }
        let dist = dist2.sqrt();
        if dist == 0.0 {
            continue;
        }
        for d in 0..dim {
            let r = 1.0 + 3.0 * delta[d].abs().min(1.0);
            social[d] += p.c * span[d] / 2.0 * social_force(r, p.f, p.l) * delta[d] / dist;
        }
    }
    (0..dim).map(|d| p.c * social[d] + target[d]).collect()
}

/// Mantegna scale `sigma_u` of a Levy-stable step with index `beta`.
pub fn levy_sigma(beta: f64) -> f64 {
    let num = libm::tgamma(1.0 + beta) * (PI * beta / 2.0).sin();
    let den = libm::tgamma((1.0 + beta) / 2.0) * beta * 2f64.powf((beta - 1.0) / 2.0);
    (num / den).powf(1.0 / beta)
}

/// One Mantegna draw `mu / |w|^{1/beta}`.
pub fn levy_draw<R: Rng + ?Sized>(beta: f64, sigma: f64, rng: &mut R) -> f64 {
    let mu: f64 = rng.sample::<f64, _>(StandardNormal) * sigma;
    let w: f64 = rng.sample(StandardNormal);
    mu / w.abs().powf(1.0 / beta)
}

/// `x + alpha scale Levy(beta)` elementwise. Bounds are not enforced here.
pub fn levy_perturb<R: Rng + ?Sized>(x: &mut [f64], scale: &[f64], alpha: f64, beta: f64, rng: &mut R) {
    if alpha == 0.0 {
        return;
    }
    let sigma = levy_sigma(beta);
    for d in 0..x.len() {
        x[d] += alpha * scale[d] * levy_draw(beta, sigma, rng);
    }
}

/// `x + alpha scale Cauchy(0, 1)` elementwise. Bounds are not enforced here.
pub fn cauchy_perturb<R: Rng + ?Sized>(x: &mut [f64], scale: &[f64], alpha: f64, rng: &mut R) {
    if alpha == 0.0 {
        return;
    }
    let cauchy = Cauchy::new(0.0, 1.0).expect("unit scale is valid");
    for d in 0..x.len() {
        x[d] += alpha * scale[d] * cauchy.sample(rng);
    }
}

/// Clips each coordinate into its box; NaN goes to the lower bound.
pub fn clamp_box(x: &mut [f64], lb: &[f64], ub: &[f64]) {
    for d in 0..x.len() {
        x[d] = if x[d].is_nan() { lb[d] } else { x[d].clamp(lb[d], ub[d]) };
    }
}
