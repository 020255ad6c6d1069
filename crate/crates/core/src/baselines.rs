//! Fixed comparison strategies: multi-hop relaying (MRS) and a static
//! linear antenna array relay (LRS).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{gain_between, LinkKind};
use crate::energy::swarm_energy;
use crate::error::{Error, Result};
use crate::link_budget::{eaves_rate_from_snr, shannon_rate, LinkModel, ServiceContext};
use crate::scenario::{Position3D, Scenario};

/// Objective values of a baseline. `f3` is 0 for static geometries.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselineObjectives {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MrsConfig {
    pub n_hops: usize,
    /// Relay altitude; the middle of the flight box when absent.
    pub altitude: Option<f64>,
    /// Transmit power of each relay UAV; the scenario's per-UAV power when absent.
    pub hop_power_w: Option<Vec<f64>>,
}

impl MrsConfig {
    pub const HOP_COUNTS: [usize; 4] = [2, 4, 8, 16];

    pub fn new(n_hops: usize) -> Self {
        Self {
            n_hops,
            altitude: None,
            hop_power_w: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_hops < 2 {
            return Err(Error::invalid("mrs config", "n_hops must be at least 2"));
        }
        if let Some(p) = &self.hop_power_w {
            if p.len() != self.n_hops {
                return Err(Error::Dimension(format!("{} hop powers for {} hops", p.len(), self.n_hops)));
            }
            if p.iter().any(|w| !(*w >= 0.0)) {
                return Err(Error::invalid("mrs config", "hop powers must be non-negative"));
            }
        }
        Ok(())
    }
}

/// Relay positions for one device: equally spaced on the horizontal
/// MBS-to-device segment, at the relay altitude.
pub fn mrs_hop_positions(cfg: &MrsConfig, scenario: &Scenario, device: usize) -> Vec<Position3D> {
    let b = scenario.bounds();
    let z = cfg.altitude.unwrap_or(0.5 * (b.min.z + b.max.z));
    let s = scenario.paa().center;
    let d = scenario.devices()[device];
    (1..=cfg.n_hops)
        .map(|h| {
            let t = h as f64 / (cfg.n_hops + 1) as f64;
            Position3D::new(s.x + t * (d.x - s.x), s.y + t * (d.y - s.y), z)
        })
        .collect()
}

fn hop_powers(cfg: &MrsConfig, scenario: &Scenario) -> Vec<f64> {
    cfg.hop_power_w
        .clone()
        .unwrap_or_else(|| vec![scenario.uav_power(); cfg.n_hops])
}

/// SNR of every link of the chain MBS, relay 1, ..., relay n, device.
/// All nodes use a single omnidirectional antenna.
pub fn mrs_hop_snrs(cfg: &MrsConfig, scenario: &Scenario, device: usize) -> Vec<f64> {
    let ch = scenario.channel();
    let relays = mrs_hop_positions(cfg, scenario, device);
    let powers = hop_powers(cfg, scenario);
    let dev = scenario.devices()[device];
    let mut snrs = Vec::with_capacity(cfg.n_hops + 1);
    let s = scenario.paa().center;
    snrs.push(scenario.mbs_power() * gain_between(LinkKind::G2A, &s, &relays[0], ch) / ch.noise_power);
    for h in 0..cfg.n_hops - 1 {
        snrs.push(powers[h] * gain_between(LinkKind::A2A, &relays[h], &relays[h + 1], ch) / ch.noise_power);
    }
    let last = cfg.n_hops - 1;
    snrs.push(powers[last] * gain_between(LinkKind::A2G, &relays[last], &dev, ch) / ch.noise_power);
    snrs
}

/// Combined wiretap SNR of each eavesdropper over the MBS transmission and
/// every relay transmission.
pub fn mrs_eaves_snrs(cfg: &MrsConfig, scenario: &Scenario, device: usize) -> Vec<f64> {
    let ch = scenario.channel();
    let relays = mrs_hop_positions(cfg, scenario, device);
    let powers = hop_powers(cfg, scenario);
    let s = scenario.paa().center;
    scenario
        .eavesdroppers()
        .iter()
        .map(|e| {
            let mut g = scenario.mbs_power() * gain_between(LinkKind::G2G, &s, e, ch);
            for (r, p) in relays.iter().zip(&powers) {
                g += p * gain_between(LinkKind::A2G, r, e, ch);
            }
            g / ch.noise_power
        })
        .collect()
}

/// Multi-hop relay objectives. The chain rate is set by its weakest hop;
/// energy covers each relay flying from its start to every device's chain
/// in turn.
pub fn evaluate_mrs(cfg: &MrsConfig, scenario: &Scenario) -> Result<BaselineObjectives> {
    cfg.validate()?;
    let bw = scenario.channel().bandwidth;
    let t = scenario.device_count();
    let (mut f1, mut f2) = (0.0, 0.0);
    let mut columns = Vec::with_capacity(t);
    for dev in 0..t {
        let bottleneck = mrs_hop_snrs(cfg, scenario, dev).into_iter().fold(f64::INFINITY, f64::min);
        f1 += shannon_rate(bw, bottleneck);
        let eaves = mrs_eaves_snrs(cfg, scenario, dev);
        f2 += eaves_rate_from_snr(bw, &eaves, scenario.eaves_mode(), scenario.octd_aggregation());
        columns.push(mrs_hop_positions(cfg, scenario, dev));
    }
    let init = scenario.uav_init_positions();
    let initial: Vec<Position3D> = (0..cfg.n_hops).map(|h| init[h % init.len()]).collect();
    let order: Vec<usize> = (0..t).collect();
    let f3 = swarm_energy(
        &columns,
        &initial,
        &order,
        scenario.aero(),
        scenario.flight_speed(),
        scenario.energy_floor(),
    )?;
    Ok(BaselineObjectives { f1, f2, f3 })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LrsConfig {
    pub spacing: f64,
    pub draws: usize,
    /// Line direction; normalized before use.
    pub axis: Position3D,
}

impl LrsConfig {
    pub const SPACINGS: [f64; 5] = [1.0, 2.0, 3.0, 4.0, 5.0];
    pub const DEFAULT_DRAWS: usize = 100;

    pub fn new(spacing: f64) -> Self {
        Self {
            spacing,
            draws: Self::DEFAULT_DRAWS,
            axis: Position3D::new(1.0, 0.0, 0.0),
        }
    }
}

/// Element positions: the swarm's UAVs on a line through the box center.
pub fn lrs_positions(cfg: &LrsConfig, scenario: &Scenario) -> Vec<Position3D> {
    let k = scenario.uav_count();
    let c = scenario.bounds().center();
    let axis = cfg.axis.normalized();
    (0..k)
        .map(|j| c + axis.scale((j as f64 - (k as f64 - 1.0) / 2.0) * cfg.spacing))
        .collect()
}

/// One draw: uniform PAA and UVAA weights and a uniform receiver for every
/// device, summed over devices.
fn lrs_draw<R: Rng + ?Sized>(model: &LinkModel, positions: &[Position3D], rng: &mut R) -> (f64, f64) {
    let s = model.scenario();
    let mn = s.paa().element_count();
    let k = s.uav_count();
    let (mut f1, mut f2) = (0.0, 0.0);
    for device in 0..s.device_count() {
        let paa: Vec<f64> = (0..mn).map(|_| rng.gen()).collect();
        let uvaa: Vec<f64> = (0..k).map(|_| rng.gen()).collect();
        let ctx = ServiceContext {
            receiver: rng.gen_range(0..k),
            device,
            positions,
            paa_weights: &paa,
            uvaa_weights: &uvaa,
        };
        let r = model.service_rates(&ctx);
        f1 += r.r_legit;
        f2 += r.r_eaves;
    }
    (f1, f2)
}

/// Mean objectives of the static linear array over `cfg.draws` random
/// excitations. Each draw has its own stream derived from one value of `rng`.
pub fn evaluate_lrs<R: Rng + ?Sized>(cfg: &LrsConfig, model: &LinkModel, rng: &mut R) -> Result<BaselineObjectives> {
    if cfg.draws == 0 {
        return Err(Error::NoDraws);
    }
    if !(cfg.spacing > 0.0) {
        return Err(Error::invalid("lrs config", "spacing must be positive"));
    }
    if !(cfg.axis.norm() > 0.0) {
        return Err(Error::invalid("lrs config", "axis must be non-zero"));
    }
    let positions = lrs_positions(cfg, model.scenario());
    let base: u64 = rng.gen();
    let sums: Vec<(f64, f64)> = (0..cfg.draws)
        .into_par_iter()
        .map(|i| {
            let mut sub = ChaCha8Rng::seed_from_u64(base);
            sub.set_stream(i as u64);
            lrs_draw(model, &positions, &mut sub)
        })
        .collect();
    let n = cfg.draws as f64;
    Ok(BaselineObjectives {
        f1: sums.iter().map(|s| s.0).sum::<f64>() / n,
        f2: sums.iter().map(|s| s.1).sum::<f64>() / n,
        f3: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beamforming::GainQuadrature;
    use crate::scenario::default_scenario;

    #[test]
    fn hops_are_evenly_spaced() {
        let s = default_scenario();
        let cfg = MrsConfig::new(4);
        let p = mrs_hop_positions(&cfg, &s, 0);
        let gaps: Vec<f64> = p.windows(2).map(|w| w[0].horizontal_distance(&w[1])).collect();
        assert!(gaps.iter().all(|g| (g - gaps[0]).abs() < 1e-9));
        let total = s.paa().center.horizontal_distance(&s.devices()[0]);
        assert!((gaps[0] - total / 5.0).abs() < 1e-9);
    }

    #[test]
    fn mrs_trends_over_hops() {
        let s = default_scenario();
        let r: Vec<BaselineObjectives> = MrsConfig::HOP_COUNTS
            .iter()
            .map(|&n| evaluate_mrs(&MrsConfig::new(n), &s).unwrap())
            .collect();
        for w in r.windows(2) {
            assert!(w[1].f2 > w[0].f2);
            assert!(w[1].f3 > w[0].f3);
        }
    }

    #[test]
    fn silent_hop_cuts_the_chain() {
        let s = default_scenario();
        let mut cfg = MrsConfig::new(2);
        cfg.hop_power_w = Some(vec![s.uav_power(), 0.0]);
        assert_eq!(evaluate_mrs(&cfg, &s).unwrap().f1, 0.0);
    }

    #[test]
    fn only_the_bottleneck_sets_the_rate() {
        let s = default_scenario();
        let mut cfg = MrsConfig::new(4);
        let base = evaluate_mrs(&cfg, &s).unwrap().f1;
        let snrs = mrs_hop_snrs(&cfg, &s, 0);
        // relay h drives link h + 1; boost every relay whose link is not the weakest in any service
        let weakest: Vec<usize> = (0..s.device_count())
            .map(|d| {
                let v = mrs_hop_snrs(&cfg, &s, d);
                (0..v.len()).min_by(|&a, &b| v[a].total_cmp(&v[b])).unwrap()
            })
            .collect();
        let mut powers = vec![s.uav_power(); 4];
        for (h, p) in powers.iter_mut().enumerate() {
            if !weakest.contains(&(h + 1)) {
                *p *= 10.0;
            }
        }
        assert!(snrs.len() == 5);
        cfg.hop_power_w = Some(powers);
        assert_eq!(evaluate_mrs(&cfg, &s).unwrap().f1, base);
    }

    #[test]
    fn mrs_rejects_single_hop() {
        assert!(evaluate_mrs(&MrsConfig::new(1), &default_scenario()).is_err());
    }

    #[test]
    fn lrs_line_geometry() {
        let s = default_scenario();
        let p = lrs_positions(&LrsConfig::new(3.0), &s);
        assert_eq!(p.len(), s.uav_count());
        assert!((p[1].x - p[0].x - 3.0).abs() < 1e-12);
        let c = Position3D::centroid(&p);
        assert!(c.distance(&s.bounds().center()) < 1e-9);
    }

    #[test]
    fn lrs_is_seeded_and_rejects_zero_draws() {
        let model = LinkModel::new(default_scenario(), GainQuadrature::from_resolution_deg(10.0).unwrap());
        let mut cfg = LrsConfig::new(2.0);
        cfg.draws = 8;
        let a = evaluate_lrs(&cfg, &model, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
        let b = evaluate_lrs(&cfg, &model, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.f3, 0.0);
        assert!(a.f1 > 0.0 && a.f2 > 0.0);
        cfg.draws = 0;
        assert!(matches!(
            evaluate_lrs(&cfg, &model, &mut ChaCha8Rng::seed_from_u64(4)),
            Err(Error::NoDraws)
        ));
    }
}
