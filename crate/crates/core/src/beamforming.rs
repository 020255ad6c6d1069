//! Array factors, steering phases and quadrature-normalized array gains.
//!
//! Directions follow the physics convention: `theta` is measured from +z
//! (zenith) in `[0, pi]`, `phi` is the azimuth from +x in `[-pi, pi]`.
//!
//! The gain of a steered array toward a direction is
//! `4 pi |AF(dir)|^2 eta / integral(|AF|^2 sin(theta))`, where the integral
//! runs over the sphere with a [`GainQuadrature`]. Elements are isotropic.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scenario::{PaaGeometry, Position3D};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction {
    pub theta: f64,
    pub phi: f64,
}

impl Direction {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    pub fn unit_vector(&self) -> Position3D {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        Position3D::new(st * cp, st * sp, ct)
    }

    pub fn is_valid(&self) -> bool {
        (0.0..=PI).contains(&self.theta) && (-PI..=PI).contains(&self.phi)
    }
}

pub fn direction_between(from: &Position3D, to: &Position3D) -> Result<Direction> {
    let v = *to - *from;
    let d = v.norm();
    if d == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    let theta = (v.z / d).clamp(-1.0, 1.0).acos();
    let phi = v.y.atan2(v.x);
    Ok(Direction { theta, phi })
}

/// Element layout, excitation weights and wavelength of one array.
#[derive(Clone, Debug, PartialEq)]
pub struct ArraySpec {
    pub element_offsets: Vec<Position3D>,
    pub weights: Vec<f64>,
    pub wavelength: f64,
}

impl ArraySpec {
    pub fn new(element_offsets: Vec<Position3D>, weights: Vec<f64>, wavelength: f64) -> Result<Self> {
        if element_offsets.is_empty() || element_offsets.len() != weights.len() {
            return Err(Error::Dimension(format!(
                "{} offsets vs {} weights",
                element_offsets.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(0.0..=1.0).contains(*w)) {
            return Err(Error::invalid("weights", format!("{w} outside [0, 1]")));
        }
        if !(wavelength > 0.0) {
            return Err(Error::invalid("wavelength", "must be positive"));
        }
        Ok(Self {
            element_offsets,
            weights,
            wavelength,
        })
    }

    /// Array whose elements sit at absolute `positions`, with offsets taken from their centroid.
    pub fn from_positions(positions: &[Position3D], weights: Vec<f64>, wavelength: f64) -> Result<Self> {
        let center = Position3D::centroid(positions);
        let offsets = positions.iter().map(|p| *p - center).collect();
        Self::new(offsets, weights, wavelength)
    }

    pub fn wave_number(&self) -> f64 {
        2.0 * PI / self.wavelength
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Initial phase of each element that aligns the array toward `target`.
pub fn steering_phases(spec: &ArraySpec, target: &Direction) -> Vec<f64> {
    let k = spec.wave_number();
    let u0 = target.unit_vector();
    spec.element_offsets.iter().map(|r| -k * r.dot(&u0)).collect()
}

/// Complex array factor toward `eval` for an array steered to `target`.
pub fn array_factor(spec: &ArraySpec, target: &Direction, eval: &Direction) -> Complex64 {
    array_factor_unit(spec, &target.unit_vector(), &eval.unit_vector())
}

fn array_factor_unit(spec: &ArraySpec, u0: &Position3D, u: &Position3D) -> Complex64 {
    af_raw(&spec.element_offsets, &spec.weights, spec.wave_number(), u0, u)
}

pub(crate) fn af_raw(offsets: &[Position3D], weights: &[f64], k: f64, u0: &Position3D, u: &Position3D) -> Complex64 {
    let du = *u - *u0;
    offsets
        .iter()
        .zip(weights)
        .map(|(r, &w)| Complex64::from_polar(w, k * r.dot(&du)))
        .sum()
}

/// Product midpoint rule over a uniform `(theta, phi)` grid.
///
/// Each node carries the exact solid angle of its cell,
/// `(cos theta_lo - cos theta_hi) * dphi`, so the weights integrate the
/// constant 1 to `4 pi` up to rounding.
#[derive(Clone, Debug)]
pub struct GainQuadrature {
    n_theta: usize,
    n_phi: usize,
    ux: Vec<f64>,
    uy: Vec<f64>,
    uz: Vec<f64>,
    w: Vec<f64>,
}

impl GainQuadrature {
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < 8 || n_phi < 8 {
            return Err(Error::invalid("quadrature", "n_theta and n_phi must be at least 8"));
        }
        let d_theta = PI / n_theta as f64;
        let d_phi = 2.0 * PI / n_phi as f64;
        let n = n_theta * n_phi;
        let (mut ux, mut uy, mut uz, mut w) = (
            Vec::with_capacity(n),
            Vec::with_capacity(n),
            Vec::with_capacity(n),
            Vec::with_capacity(n),
        );
        for i in 0..n_theta {
            let lo = i as f64 * d_theta;
            let hi = lo + d_theta;
            let theta = lo + d_theta / 2.0;
            let cell = (lo.cos() - hi.cos()) * d_phi;
            let (st, ct) = theta.sin_cos();
            for j in 0..n_phi {
                let phi = -PI + (j as f64 + 0.5) * d_phi;
                let (sp, cp) = phi.sin_cos();
                ux.push(st * cp);
                uy.push(st * sp);
                uz.push(ct);
                w.push(cell);
            }
        }
        Ok(Self {
            n_theta,
            n_phi,
            ux,
            uy,
            uz,
            w,
        })
    }

    /// Grid with the given angular step in degrees (180/deg by 360/deg nodes).
    pub fn from_resolution_deg(deg: f64) -> Result<Self> {
        if !(deg > 0.0) {
            return Err(Error::invalid("quadrature", "resolution must be positive"));
        }
        let n_theta = (180.0 / deg).round() as usize;
        let n_phi = (360.0 / deg).round() as usize;
        Self::new(n_theta, n_phi)
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn weight_sum(&self) -> f64 {
        self.w.iter().sum()
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.w[i]
    }

    pub fn unit_vector(&self, i: usize) -> Position3D {
        Position3D::new(self.ux[i], self.uy[i], self.uz[i])
    }

    pub fn direction(&self, i: usize) -> Direction {
        let u = self.unit_vector(i);
        Direction::new(u.z.clamp(-1.0, 1.0).acos(), u.y.atan2(u.x))
    }

    /// `sum_i w_i f(u_i)`.
    pub fn integrate(&self, mut f: impl FnMut(&Position3D) -> f64) -> f64 {
        (0..self.len())
            .map(|i| self.w[i] * f(&self.unit_vector(i)))
            .sum()
    }
}

/// Quadrature value of `integral |AF|^2 sin(theta) dtheta dphi`.
pub fn radiated_power(spec: &ArraySpec, target: &Direction, quad: &GainQuadrature) -> f64 {
    radiated_power_unit(spec, &target.unit_vector(), quad)
}

fn radiated_power_unit(spec: &ArraySpec, u0: &Position3D, quad: &GainQuadrature) -> f64 {
    radiated_power_raw(&spec.element_offsets, &spec.weights, spec.wave_number(), u0, quad)
}

pub(crate) fn radiated_power_raw(
    offsets: &[Position3D],
    weights: &[f64],
    k: f64,
    u0: &Position3D,
    quad: &GainQuadrature,
) -> f64 {
    let n = quad.len();
    let mut re = vec![0.0; n];
    let mut im = vec![0.0; n];
    for (r, &amp) in offsets.iter().zip(weights) {
        if amp == 0.0 {
            continue;
        }
        let (kx, ky, kz) = (k * r.x, k * r.y, k * r.z);
        let psi = -(kx * u0.x + ky * u0.y + kz * u0.z);
        for i in 0..n {
            let phase = kx * quad.ux[i] + ky * quad.uy[i] + kz * quad.uz[i] + psi;
            let (s, c) = phase.sin_cos();
            re[i] += amp * c;
            im[i] += amp * s;
        }
    }
    (0..n)
        .map(|i| quad.w[i] * (re[i] * re[i] + im[i] * im[i]))
        .sum()
}

/// Linear gain toward `eval` for an array steered to `target`.
pub fn array_gain(
    spec: &ArraySpec,
    target: &Direction,
    eval: &Direction,
    quad: &GainQuadrature,
    eta: f64,
) -> Result<f64> {
    let steered = SteeredArray::new(spec, target, quad, eta)?;
    Ok(steered.gain(eval))
}

/// An array steered at a fixed target with its normalization computed once.
#[derive(Clone, Debug)]
pub struct SteeredArray<'a> {
    spec: &'a ArraySpec,
    target: Position3D,
    scale: f64,
}

impl<'a> SteeredArray<'a> {
    pub fn new(spec: &'a ArraySpec, target: &Direction, quad: &GainQuadrature, eta: f64) -> Result<Self> {
        if spec.weight_sum() <= 0.0 {
            return Err(Error::DegenerateWeights);
        }
        let u0 = target.unit_vector();
        let denom = radiated_power_unit(spec, &u0, quad);
        Ok(Self::with_radiated_power(spec, u0, denom, eta))
    }

    pub(crate) fn with_radiated_power(spec: &'a ArraySpec, target: Position3D, denom: f64, eta: f64) -> Self {
        Self {
            spec,
            target,
            scale: 4.0 * PI * eta / denom,
        }
    }

    pub fn gain(&self, eval: &Direction) -> f64 {
        self.gain_unit(&eval.unit_vector())
    }

    pub fn gain_unit(&self, u: &Position3D) -> f64 {
        self.scale * array_factor_unit(self.spec, &self.target, u).norm_sqr()
    }

    /// Gain in the steering direction, `4 pi eta (sum I)^2 / denominator`.
    pub fn peak_gain(&self) -> f64 {
        let s = self.spec.weight_sum();
        self.scale * s * s
    }
}

/// Precomputed quadrature sums for a regular planar array.
///
/// For elements on a grid, `|AF|^2` only depends on element index
/// differences, so the sphere integral reduces to
/// `sum_D Re(Q(D) e^{-j k D.u0} C(D))` where `Q(D) = sum_i w_i e^{j k D.u_i}`
/// is fixed by the geometry and quadrature, and `C(D)` is the weight
/// autocorrelation. This evaluates the same quadrature sum as
/// [`radiated_power`] at a fraction of the cost.
#[derive(Clone, Debug)]
pub struct PlanarArrayTable {
    rows: usize,
    cols: usize,
    k: f64,
    col_step: Position3D,
    row_step: Position3D,
    q: Vec<Complex64>,
}

impl PlanarArrayTable {
    pub fn new(paa: &PaaGeometry, wavelength: f64, quad: &GainQuadrature) -> Self {
        let (col_axis, row_axis) = paa.plane_basis();
        let col_step = col_axis.scale(paa.element_spacing);
        let row_step = row_axis.scale(paa.element_spacing);
        let k = 2.0 * PI / wavelength;
        let (rows, cols) = (paa.rows, paa.cols);
        let (nr, nc) = (2 * rows - 1, 2 * cols - 1);
        let mut q = vec![Complex64::new(0.0, 0.0); nr * nc];
        for dr in 0..nr {
            for dc in 0..nc {
                let delta = row_step.scale(dr as f64 - (rows as f64 - 1.0))
                    + col_step.scale(dc as f64 - (cols as f64 - 1.0));
                let (kx, ky, kz) = (k * delta.x, k * delta.y, k * delta.z);
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..quad.len() {
                    let phase = kx * quad.ux[i] + ky * quad.uy[i] + kz * quad.uz[i];
                    acc += Complex64::from_polar(quad.w[i], phase);
                }
                q[dr * nc + dc] = acc;
            }
        }
        Self {
            rows,
            cols,
            k,
            col_step,
            row_step,
            q,
        }
    }

    /// Quadrature integral of `|AF|^2` for row-major `weights` steered to `u0`.
    pub fn radiated_power(&self, weights: &[f64], u0: &Position3D) -> f64 {
        let (rows, cols) = (self.rows, self.cols);
        let nc = 2 * cols - 1;
        let mut total = 0.0;
        for dr in 0..(2 * rows - 1) {
            let off_r = dr as isize - (rows as isize - 1);
            for dc in 0..nc {
                let off_c = dc as isize - (cols as isize - 1);
                let mut corr = 0.0;
                for r in 0..rows as isize {
                    let rm = r + off_r;
                    if rm < 0 || rm >= rows as isize {
                        continue;
                    }
                    for c in 0..cols as isize {
                        let cm = c + off_c;
                        if cm < 0 || cm >= cols as isize {
                            continue;
                        }
                        corr += weights[(rm as usize) * cols + cm as usize]
                            * weights[(r as usize) * cols + c as usize];
                    }
                }
                if corr == 0.0 {
                    continue;
                }
                let delta = self.row_step.scale(off_r as f64) + self.col_step.scale(off_c as f64);
                let steer = Complex64::from_polar(1.0, -self.k * delta.dot(u0));
                total += corr * (self.q[dr * nc + dc] * steer).re;
            }
        }
        total
    }
}

/// One sample of an exported beam pattern.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PatternSample {
    pub theta: f64,
    pub phi: f64,
    pub gain_db: f64,
}

/// Gain samples over the quadrature grid for plotting.
pub fn beam_pattern(
    spec: &ArraySpec,
    target: &Direction,
    quad: &GainQuadrature,
    eta: f64,
) -> Result<Vec<PatternSample>> {
    let steered = SteeredArray::new(spec, target, quad, eta)?;
    Ok((0..quad.len())
        .map(|i| {
            let d = quad.direction(i);
            let g = steered.gain_unit(&quad.unit_vector(i));
            PatternSample {
                theta: d.theta,
                phi: d.phi,
                gain_db: 10.0 * g.max(1e-300).log10(),
            }
        })
        .collect())
}
