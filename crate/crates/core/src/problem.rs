//! Decision vector, objective evaluation and constraint handling.
//!
//! Every per-service block is indexed by device id: column `i` holds the
//! variables used while serving device `i`, whenever that happens. `order`
//! lists device ids in service order and only affects flight energy.
//! All indices are 0-based in memory; exported records are 1-based.

use serde::{Deserialize, Serialize};

use crate::beamforming::GainQuadrature;
use crate::energy::swarm_energy;
use crate::error::{Error, Result};
use crate::link_budget::{LinkModel, UvaaTerms};
use crate::scenario::{Position3D, Scenario};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    /// `i_paa[i][m]`: PAA weight of element `m` (row-major) for device `i`.
    pub i_paa: Vec<Vec<f64>>,
    /// Receiving UAV for each device.
    pub s_recv: Vec<usize>,
    /// `i_uvaa[i][k]`: weight of UAV `k` for device `i`.
    pub i_uvaa: Vec<Vec<f64>>,
    /// `p_uav[i][k]`: position of UAV `k` while serving device `i`.
    pub p_uav: Vec<Vec<Position3D>>,
    /// Device ids in service order.
    pub order: Vec<usize>,
}

impl Solution {
    /// Full weights, first UAV receives, the swarm hovers at its initial
    /// positions and devices are served in id order.
    pub fn baseline(scenario: &Scenario) -> Self {
        let t = scenario.device_count();
        let k = scenario.uav_count();
        let mn = scenario.paa().element_count();
        Self {
            i_paa: vec![vec![1.0; mn]; t],
            s_recv: vec![0; t],
            i_uvaa: vec![vec![1.0; k]; t],
            p_uav: vec![scenario.uav_init_positions().to_vec(); t],
            order: (0..t).collect(),
        }
    }

    pub fn service_count(&self) -> usize {
        self.order.len()
    }

    /// Checks block shapes, receiver range and the service permutation.
    pub fn check_shape(&self, scenario: &Scenario) -> Result<()> {
        let t = scenario.device_count();
        let k = scenario.uav_count();
        let mn = scenario.paa().element_count();
        fn rows_ok<T>(block: &[Vec<T>], t: usize, width: usize) -> bool {
            block.len() == t && block.iter().all(|c| c.len() == width)
        }
        if !rows_ok(&self.i_paa, t, mn)
            || !rows_ok(&self.i_uvaa, t, k)
            || !rows_ok(&self.p_uav, t, k)
            || self.s_recv.len() != t
            || self.order.len() != t
        {
            return Err(Error::Dimension(format!(
                "solution blocks do not match T={t}, K={k}, MN={mn}"
            )));
        }
        if let Some(r) = self.s_recv.iter().find(|&&r| r >= k) {
            return Err(Error::invalid("s_recv", format!("receiver {r} outside 0..{k}")));
        }
        if !is_permutation(&self.order) {
            return Err(Error::invalid("order", "not a permutation of the devices"));
        }
        Ok(())
    }

    /// Continuous decision variables in a fixed order:
    /// PAA weights, UVAA weights, then UAV coordinates, each device-major.
    pub fn continuous(&self) -> Vec<f64> {
        let mut x = Vec::new();
        for col in &self.i_paa {
            x.extend_from_slice(col);
        }
        for col in &self.i_uvaa {
            x.extend_from_slice(col);
        }
        for col in &self.p_uav {
            for p in col {
                x.extend_from_slice(&[p.x, p.y, p.z]);
            }
        }
        x
    }

    /// Inverse of [`Solution::continuous`]. The slice length must match.
    pub fn set_continuous(&mut self, x: &[f64]) {
        let mut it = x.iter().copied();
        for col in self.i_paa.iter_mut().chain(self.i_uvaa.iter_mut()) {
            for v in col.iter_mut() {
                *v = it.next().expect("continuous vector too short");
            }
        }
        for col in &mut self.p_uav {
            for p in col.iter_mut() {
                p.x = it.next().expect("continuous vector too short");
                p.y = it.next().expect("continuous vector too short");
                p.z = it.next().expect("continuous vector too short");
            }
        }
        debug_assert!(it.next().is_none(), "continuous vector too long");
    }

    /// Flat numeric record: PAA weights, receivers (1-based), UVAA weights,
    /// UAV coordinates, service order (1-based device ids).
    pub fn to_record(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for col in &self.i_paa {
            out.extend_from_slice(col);
        }
        out.extend(self.s_recv.iter().map(|&r| (r + 1) as f64));
        for col in &self.i_uvaa {
            out.extend_from_slice(col);
        }
        for col in &self.p_uav {
            for p in col {
                out.extend_from_slice(&[p.x, p.y, p.z]);
            }
        }
        out.extend(self.order.iter().map(|&d| (d + 1) as f64));
        out
    }

    pub fn from_record(record: &[f64], scenario: &Scenario) -> Result<Self> {
        let t = scenario.device_count();
        let k = scenario.uav_count();
        let mn = scenario.paa().element_count();
        let expected = record_len(scenario);
        if record.len() != expected {
            return Err(Error::Dimension(format!(
                "record has {} values, expected {expected}",
                record.len()
            )));
        }
        let mut it = record.iter().copied();
        let mut take = |n: usize| -> Vec<f64> { it.by_ref().take(n).collect() };
        let i_paa = (0..t).map(|_| take(mn)).collect();
        let index = |v: f64| (v.round() as i64 - 1).max(0) as usize;
        let s_recv = take(t).into_iter().map(index).collect();
        let i_uvaa = (0..t).map(|_| take(k)).collect();
        let p_uav = (0..t)
            .map(|_| {
                take(3 * k)
                    .chunks(3)
                    .map(|c| Position3D::new(c[0], c[1], c[2]))
                    .collect()
            })
            .collect();
        let order = take(t).into_iter().map(index).collect();
        let sol = Self {
            i_paa,
            s_recv,
            i_uvaa,
            p_uav,
            order,
        };
        sol.check_shape(scenario)?;
        Ok(sol)
    }
}

pub fn record_len(scenario: &Scenario) -> usize {
    let t = scenario.device_count();
    let k = scenario.uav_count();
    t * (scenario.paa().element_count() + 1 + k + 3 * k + 1)
}

/// Column names matching [`Solution::to_record`], 1-based.
pub fn record_header(scenario: &Scenario) -> Vec<String> {
    let t = scenario.device_count();
    let k = scenario.uav_count();
    let mn = scenario.paa().element_count();
    let mut h = Vec::with_capacity(record_len(scenario));
    for i in 1..=t {
        h.extend((1..=mn).map(|m| format!("i_paa_{i}_{m}")));
    }
    h.extend((1..=t).map(|i| format!("s_recv_{i}")));
    for i in 1..=t {
        h.extend((1..=k).map(|u| format!("i_uvaa_{i}_{u}")));
    }
    for i in 1..=t {
        for u in 1..=k {
            h.extend(["x", "y", "z"].iter().map(|c| format!("p_{c}_{i}_{u}")));
        }
    }
    h.extend((1..=t).map(|s| format!("order_{s}")));
    h
}

/// Lower and upper bounds of [`Solution::continuous`].
pub fn continuous_bounds(scenario: &Scenario) -> (Vec<f64>, Vec<f64>) {
    let t = scenario.device_count();
    let k = scenario.uav_count();
    let n_w = t * (scenario.paa().element_count() + k);
    let b = scenario.bounds();
    let mut lb = vec![0.0; n_w];
    let mut ub = vec![1.0; n_w];
    for _ in 0..t * k {
        lb.extend_from_slice(&[b.min.x, b.min.y, b.min.z]);
        ub.extend_from_slice(&[b.max.x, b.max.y, b.max.z]);
    }
    (lb, ub)
}

pub fn is_permutation(order: &[usize]) -> bool {
    let mut seen = vec![false; order.len()];
    order.iter().all(|&d| d < seen.len() && !std::mem::replace(&mut seen[d], true))
}

/// Maps a real-valued receiver gene to a 0-based UAV index: round the
/// 1-based value, then clip to `1..=k`.
pub fn receiver_from_real(x: f64, k: usize) -> usize {
    let r = if x.is_finite() { x.round() } else { 1.0 };
    (r.clamp(1.0, k as f64) as usize) - 1
}

/// Clips weights to `[0, 1]` and positions into the flight box.
pub fn clamp_repair(mut sol: Solution, scenario: &Scenario) -> Solution {
    let k = scenario.uav_count();
    for col in sol.i_paa.iter_mut().chain(sol.i_uvaa.iter_mut()) {
        for w in col.iter_mut() {
            *w = if w.is_nan() { 0.0 } else { w.clamp(0.0, 1.0) };
        }
    }
    let b = scenario.bounds();
    for col in &mut sol.p_uav {
        for p in col.iter_mut() {
            let q = Position3D::new(
                if p.x.is_nan() { b.min.x } else { p.x },
                if p.y.is_nan() { b.min.y } else { p.y },
                if p.z.is_nan() { b.min.z } else { p.z },
            );
            *p = b.clamp(&q);
        }
    }
    for r in &mut sol.s_recv {
        *r = (*r).min(k - 1);
    }
    sol
}

/// Sum over services and UAV pairs of the shortfall below `d_min`.
pub fn collision_violation(sol: &Solution, d_min: f64) -> f64 {
    let mut v = 0.0;
    for col in &sol.p_uav {
        for a in 0..col.len() {
            for b in a + 1..col.len() {
                v += (d_min - col[a].distance(&col[b])).max(0.0);
            }
        }
    }
    v
}

/// Objectives in minimization form `(-f1, f2, f3)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveVector(pub [f64; 3]);

impl ObjectiveVector {
    pub fn from_raw(f1: f64, f2: f64, f3: f64) -> Self {
        Self([-f1, f2, f3])
    }

    /// Legitimate sum rate, bps.
    pub fn f1(&self) -> f64 {
        -self.0[0]
    }

    /// Eavesdropping sum rate, bps.
    pub fn f2(&self) -> f64 {
        self.0[1]
    }

    /// Flight energy, J.
    pub fn f3(&self) -> f64 {
        self.0[2]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Plain Pareto dominance for minimization.
pub fn pareto_dominates(a: &[f64], b: &[f64]) -> bool {
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly = true;
        }
    }
    strictly
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvaluatedSolution {
    pub solution: Solution,
    pub objectives: ObjectiveVector,
    pub feasible: bool,
    /// Total collision shortfall, meters.
    pub violation: f64,
    /// Some service had an all-zero weight column.
    pub degenerate: bool,
}

/// Constrained dominance: feasible beats infeasible, infeasible pairs are
/// ranked by violation, feasible pairs by Pareto dominance.
pub fn dominates(a: &EvaluatedSolution, b: &EvaluatedSolution) -> bool {
    match (a.feasible, b.feasible) {
        (true, false) => true,
        (false, true) => false,
        (false, false) => a.violation < b.violation,
        (true, true) => pareto_dominates(a.objectives.as_slice(), b.objectives.as_slice()),
    }
}

/// Evaluates solutions against one scenario and quadrature.
#[derive(Clone, Debug)]
pub struct Evaluator {
    model: LinkModel,
}

impl Evaluator {
    pub fn new(scenario: Scenario, quad: GainQuadrature) -> Self {
        Self {
            model: LinkModel::new(scenario, quad),
        }
    }

    pub fn scenario(&self) -> &Scenario {
        self.model.scenario()
    }

    pub fn link_model(&self) -> &LinkModel {
        &self.model
    }

    /// UVAA terms of every device column. Only the UVAA weights and the UAV
    /// positions enter, so solutions sharing those blocks can share this.
    pub fn uvaa_cache(&self, sol: &Solution) -> Vec<UvaaTerms> {
        (0..sol.i_uvaa.len())
            .map(|i| self.model.uvaa_terms(&sol.p_uav[i], &sol.i_uvaa[i], i))
            .collect()
    }

    pub fn evaluate(&self, sol: Solution) -> Result<EvaluatedSolution> {
        sol.check_shape(self.scenario())?;
        let cache = self.uvaa_cache(&sol);
        self.evaluate_cached(sol, &cache)
    }

    /// Evaluates `sol` with UVAA terms computed for a solution with the same
    /// continuous blocks.
    pub fn evaluate_cached(&self, sol: Solution, uvaa: &[UvaaTerms]) -> Result<EvaluatedSolution> {
        sol.check_shape(self.scenario())?;
        let s = self.scenario();
        let (mut f1, mut f2) = (0.0, 0.0);
        let mut degenerate = false;
        for dev in 0..s.device_count() {
            let rx = sol.p_uav[dev][sol.s_recv[dev]];
            let paa = self.model.paa_terms(&sol.i_paa[dev], &rx);
            let rates = self.model.combine(&paa, &uvaa[dev], &rx);
            f1 += rates.r_legit;
            f2 += rates.r_eaves;
            degenerate |= rates.degenerate;
        }
        let f3 = swarm_energy(
            &sol.p_uav,
            s.uav_init_positions(),
            &sol.order,
            s.aero(),
            s.flight_speed(),
            s.energy_floor(),
        )?;
        let violation = collision_violation(&sol, s.d_min_uav());
        Ok(EvaluatedSolution {
            solution: sol,
            objectives: ObjectiveVector::from_raw(f1, f2, f3),
            feasible: violation == 0.0,
            violation,
            degenerate,
        })
    }
}

/// One-shot evaluation. Prefer [`Evaluator`] when evaluating many solutions.
pub fn evaluate(sol: Solution, scenario: &Scenario, quad: &GainQuadrature) -> Result<EvaluatedSolution> {
    Evaluator::new(scenario.clone(), quad.clone()).evaluate(sol)
}
