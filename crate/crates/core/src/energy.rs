//! Rotary-wing propulsion energy and the scheduling overhead estimate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scenario::{AeroParams, Position3D};

/// Propulsion power (W) of level flight at speed `v` (m/s).
pub fn propulsion_power(v: f64, aero: &AeroParams) -> f64 {
    let v2 = v * v;
    let u0_2 = aero.u_0 * aero.u_0;
    let blade = aero.p_blade * (1.0 + 3.0 * v2 / (aero.u_tips * aero.u_tips));
    let inner = (1.0 + v2 * v2 / (4.0 * u0_2 * u0_2)).sqrt() - v2 / (2.0 * u0_2);
    // inner is positive in exact arithmetic but cancels badly at high speed
    let induced = aero.p_induced * inner.max(0.0).sqrt();
    let parasite = 0.5 * aero.d0 * aero.rho * aero.s * aero.area * v2 * v;
    blade + induced + parasite
}

/// Speed minimizing energy per meter, `argmin P(v)/v` on `[1, 40]` m/s.
pub fn max_range_speed(aero: &AeroParams) -> f64 {
    golden_section_min(|v| propulsion_power(v, aero) / v, 1.0, 40.0, 0.01)
}

fn golden_section_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    (a + b) / 2.0
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlightLeg {
    pub start: Position3D,
    pub end: Position3D,
    pub speed: f64,
}

/// Energy (J) of a straight hover-to-hover leg at constant speed.
pub fn leg_energy(leg: &FlightLeg, aero: &AeroParams) -> Result<f64> {
    let dist = leg.start.distance(&leg.end);
    if dist == 0.0 {
        return Ok(0.0);
    }
    if !(leg.speed > 0.0) {
        return Err(Error::ZeroSpeed { distance: dist });
    }
    let flight = propulsion_power(leg.speed, aero) * dist / leg.speed;
    let potential = aero.mass * aero.g * (leg.end.z - leg.start.z);
    Ok(flight + potential)
}

/// Total swarm flight energy over all services.
///
/// `positions[i][k]` is UAV `k`'s position while serving device `i`
/// (device identity, not service slot). `order` lists device ids in service
/// order. Each UAV flies from its initial position to its position for the
/// first served device, then between successive devices.
pub fn swarm_energy(
    positions: &[Vec<Position3D>],
    initial: &[Position3D],
    order: &[usize],
    aero: &AeroParams,
    speed: f64,
    floor_at_zero: bool,
) -> Result<f64> {
    if positions.len() != order.len() {
        return Err(Error::Dimension(format!(
            "{} position columns vs {} ordered services",
            positions.len(),
            order.len()
        )));
    }
    if let Some(col) = positions.iter().find(|c| c.len() != initial.len()) {
        return Err(Error::Dimension(format!(
            "column of {} UAVs vs {} initial positions",
            col.len(),
            initial.len()
        )));
    }
    let mut total = 0.0;
    for (k, start) in initial.iter().enumerate() {
        let mut prev = *start;
        for &dev in order {
            let next = *positions
                .get(dev)
                .ok_or_else(|| Error::Dimension(format!("device id {dev} out of range")))?
                .get(k)
                .expect("column length checked");
            let leg = FlightLeg {
                start: prev,
                end: next,
                speed,
            };
            let e = leg_energy(&leg, aero)?;
            total += if floor_at_zero { e.max(0.0) } else { e };
            prev = next;
        }
    }
    Ok(total)
}

/// Message sizes and link parameters of the centralized scheduling exchange.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverheadParams {
    /// Retransmission cap.
    pub n_re: u32,
    /// Packet loss probability in `[0, 1)`.
    pub loss: f64,
    pub bits_start: f64,
    pub bits_fusion: f64,
    pub bits_solution: f64,
    pub bits_ack1: f64,
    pub bits_ack3: f64,
    /// Link rate, bps.
    pub rate: f64,
    /// Transmit power, W.
    pub power: f64,
    pub uav_count: usize,
}

impl OverheadParams {
    /// Message sizes for a swarm of `k` UAVs, `t` devices and an `m x n` PAA.
    ///
    /// Every message carries 8 bytes of addressing plus 4 bytes per value.
    pub fn for_system(k: usize, t: usize, m: usize, n: usize) -> Self {
        let bytes = |values: usize| (8 + 4 * values) as f64;
        Self {
            n_re: 3,
            loss: 0.05,
            bits_start: 8.0 * bytes(5),
            bits_fusion: 8.0 * bytes(3 * k + 2),
            bits_solution: 8.0 * bytes((m * n + 2 + 4 * k) * t),
            bits_ack1: 8.0 * bytes(5),
            // the acknowledgement is a fixed 9-byte frame
            bits_ack3: 8.0 * 9.0,
            rate: 1e6,
            power: 0.1,
            uav_count: k,
        }
    }

    /// The worked example: 16 UAVs, 8 devices, 6x6 PAA, 1 Mbps, 0.1 W.
    pub fn worked_example() -> Self {
        Self {
            n_re: 3,
            loss: 0.05,
            bits_start: 8.0 * 28.0,
            bits_fusion: 8.0 * 208.0,
            bits_solution: 8.0 * 3272.0,
            bits_ack1: 8.0 * 28.0,
            bits_ack3: 8.0 * 9.0,
            rate: 1e6,
            power: 0.1,
            uav_count: 16,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_re < 1 {
            return Err(Error::invalid("overhead", "retransmission cap must be >= 1"));
        }
        if !(0.0..1.0).contains(&self.loss) {
            return Err(Error::invalid("overhead", "loss probability must lie in [0, 1)"));
        }
        if !(self.rate > 0.0) {
            return Err(Error::invalid("overhead", "rate must be positive"));
        }
        Ok(())
    }
}

/// Expected number of transmissions with loss `f` and cap `n_re`.
pub fn expected_transmissions(loss: f64, n_re: u32) -> f64 {
    if loss == 0.0 {
        return 1.0;
    }
    (1.0 - loss.powi(n_re as i32)) / (1.0 - loss)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OverheadReport {
    pub expected_transmissions: f64,
    pub step1_joules: f64,
    pub step3_joules: f64,
    pub total_joules: f64,
}

/// Communication energy (J) of one scheduling round.
pub fn scheduling_overhead(p: &OverheadParams) -> Result<f64> {
    Ok(overhead_report(p)?.total_joules)
}

pub fn overhead_report(p: &OverheadParams) -> Result<OverheadReport> {
    p.validate()?;
    let n_t = expected_transmissions(p.loss, p.n_re);
    let others = p.uav_count.saturating_sub(1) as f64;
    let step1 = p.power * ((p.bits_start + p.bits_fusion) * n_t + others * p.bits_ack1) / p.rate;
    let step3 = p.power * (p.bits_solution * n_t + others * p.bits_ack3) / p.rate;
    Ok(OverheadReport {
        expected_transmissions: n_t,
        step1_joules: step1,
        step3_joules: step3,
        total_joules: step1 + step3,
    })
}
