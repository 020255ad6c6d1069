//! SNRs and achievable rates of one relayed service.
//!
//! A service runs in three phases: the MBS beams to the receiving UAV
//! through the PAA, the receiver broadcasts inside the swarm, and the swarm
//! beams to the device as a virtual array. An eavesdropper overhears every
//! phase and combines the three SNRs (MRC).

use std::f64::consts::PI;

use crate::beamforming::{af_raw, radiated_power_raw, GainQuadrature, PlanarArrayTable};
use crate::channel::{gain_between, LinkKind};
use crate::scenario::{EavesMode, OctdAggregation, Position3D, Scenario};

/// `B log2(1 + snr)`.
pub fn shannon_rate(bandwidth: f64, snr: f64) -> f64 {
    bandwidth * snr.max(0.0).ln_1p() / std::f64::consts::LN_2
}

/// Rate of the relayed link, limited by its weaker hop.
pub fn legit_rate_from_snr(bandwidth: f64, s2uk: f64, c2d: f64) -> f64 {
    shannon_rate(bandwidth, s2uk.min(c2d))
}

/// Wiretap SNRs one eavesdropper collects over the three phases.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EavesSnr {
    pub s2e: f64,
    pub uk2e: f64,
    pub c2e: f64,
}

impl EavesSnr {
    /// MRC output: the sum of the phase SNRs.
    pub fn combined(&self) -> f64 {
        self.s2e + self.uk2e + self.c2e
    }
}

/// Eavesdropping rate of a service given each eavesdropper's combined SNR.
pub fn eaves_rate_from_snr(bandwidth: f64, combined: &[f64], mode: EavesMode, agg: OctdAggregation) -> f64 {
    match mode {
        EavesMode::Ctsd => shannon_rate(bandwidth, combined.iter().sum()),
        EavesMode::Octd => {
            let rates = combined.iter().map(|&g| shannon_rate(bandwidth, g));
            match agg {
                OctdAggregation::Max => rates.fold(0.0, f64::max),
                OctdAggregation::SumOfRates => rates.sum(),
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SnrBreakdown {
    pub s2uk: f64,
    pub c2d: f64,
    /// One entry per eavesdropper, in scenario order.
    pub eaves: Vec<EavesSnr>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RatePair {
    pub r_legit: f64,
    pub r_eaves: f64,
    pub snr: SnrBreakdown,
    /// An array had all-zero weights, so its beam carries no power.
    pub degenerate: bool,
}

/// One service: which UAV receives, which device is served, and the
/// decision-variable columns used for it. Indices are 0-based.
#[derive(Clone, Copy, Debug)]
pub struct ServiceContext<'a> {
    pub receiver: usize,
    pub device: usize,
    pub positions: &'a [Position3D],
    pub paa_weights: &'a [f64],
    pub uvaa_weights: &'a [f64],
}

/// Gains of the PAA beam aimed at one receiver.
#[derive(Clone, Debug, PartialEq)]
pub struct PaaTerms {
    pub peak_gain: f64,
    /// Gain toward each eavesdropper.
    pub eaves_gain: Vec<f64>,
    pub degenerate: bool,
}

/// Gains and channels of the UVAA beam aimed at one device. These do not
/// depend on which UAV received in phase I.
#[derive(Clone, Debug, PartialEq)]
pub struct UvaaTerms {
    pub peak_gain: f64,
    pub eaves_gain: Vec<f64>,
    pub h_c2d: f64,
    pub h_c2e: Vec<f64>,
    pub degenerate: bool,
}

/// Scenario plus quadrature, with the PAA quadrature table built once.
#[derive(Clone, Debug)]
pub struct LinkModel {
    scenario: Scenario,
    quad: GainQuadrature,
    paa_table: PlanarArrayTable,
    h_s2e: Vec<f64>,
}

impl LinkModel {
    pub fn new(scenario: Scenario, quad: GainQuadrature) -> Self {
        let paa_table = PlanarArrayTable::new(scenario.paa(), scenario.channel().wavelength, &quad);
        let center = scenario.paa().center;
        let h_s2e = scenario
            .eavesdroppers()
            .iter()
            .map(|e| gain_between(LinkKind::G2G, &center, e, scenario.channel()))
            .collect();
        Self {
            scenario,
            quad,
            paa_table,
            h_s2e,
        }
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn quadrature(&self) -> &GainQuadrature {
        &self.quad
    }

    fn wave_number(&self) -> f64 {
        2.0 * PI / self.scenario.channel().wavelength
    }

    pub fn paa_terms(&self, weights: &[f64], receiver_pos: &Position3D) -> PaaTerms {
        let s = &self.scenario;
        let n_e = s.eavesdroppers().len();
        let sum: f64 = weights.iter().sum();
        if !(sum > 0.0) {
            return PaaTerms {
                peak_gain: 0.0,
                eaves_gain: vec![0.0; n_e],
                degenerate: true,
            };
        }
        let center = s.paa().center;
        let u0 = (*receiver_pos - center).normalized();
        let denom = self.paa_table.radiated_power(weights, &u0);
        let scale = 4.0 * PI * s.paa_efficiency() / denom;
        let k = self.wave_number();
        let eaves_gain = s
            .eavesdroppers()
            .iter()
            .map(|e| {
                let u = (*e - center).normalized();
                scale * af_raw(s.paa_offsets(), weights, k, &u0, &u).norm_sqr()
            })
            .collect();
        PaaTerms {
            peak_gain: scale * sum * sum,
            eaves_gain,
            degenerate: false,
        }
    }

    pub fn uvaa_terms(&self, positions: &[Position3D], weights: &[f64], device: usize) -> UvaaTerms {
        let s = &self.scenario;
        let ch = s.channel();
        let center = Position3D::centroid(positions);
        let dev = s.devices()[device];
        let h_c2d = gain_between(LinkKind::A2G, &center, &dev, ch);
        let h_c2e = s
            .eavesdroppers()
            .iter()
            .map(|e| gain_between(LinkKind::A2G, &center, e, ch))
            .collect();
        let sum: f64 = weights.iter().sum();
        if !(sum > 0.0) {
            return UvaaTerms {
                peak_gain: 0.0,
                eaves_gain: vec![0.0; s.eavesdroppers().len()],
                h_c2d,
                h_c2e,
                degenerate: true,
            };
        }
        let offsets: Vec<Position3D> = positions.iter().map(|p| *p - center).collect();
        let u0 = (dev - center).normalized();
        let k = self.wave_number();
        let denom = radiated_power_raw(&offsets, weights, k, &u0, &self.quad);
        let scale = 4.0 * PI * s.uvaa_efficiency() / denom;
        let eaves_gain = s
            .eavesdroppers()
            .iter()
            .map(|e| {
                let u = (*e - center).normalized();
                scale * af_raw(&offsets, weights, k, &u0, &u).norm_sqr()
            })
            .collect();
        UvaaTerms {
            peak_gain: scale * sum * sum,
            eaves_gain,
            h_c2d,
            h_c2e,
            degenerate: false,
        }
    }

    /// Rates of a service from precomputed array terms.
    pub fn combine(&self, paa: &PaaTerms, uvaa: &UvaaTerms, receiver_pos: &Position3D) -> RatePair {
        let s = &self.scenario;
        let ch = s.channel();
        let noise = ch.noise_power;
        let center = s.paa().center;
        let h_s2uk = gain_between(LinkKind::G2A, &center, receiver_pos, ch);
        let s2uk = s.mbs_power() * paa.peak_gain * h_s2uk / noise;
        let c2d = s.uvaa_power() * uvaa.peak_gain * uvaa.h_c2d / noise;
        let eaves: Vec<EavesSnr> = s
            .eavesdroppers()
            .iter()
            .enumerate()
            .map(|(e, pos)| EavesSnr {
                s2e: s.mbs_power() * paa.eaves_gain[e] * self.h_s2e[e] / noise,
                uk2e: s.uav_power() * gain_between(LinkKind::A2G, receiver_pos, pos, ch) / noise,
                c2e: s.uvaa_power() * uvaa.eaves_gain[e] * uvaa.h_c2e[e] / noise,
            })
            .collect();
        let combined: Vec<f64> = eaves.iter().map(EavesSnr::combined).collect();
        RatePair {
            r_legit: legit_rate_from_snr(ch.bandwidth, s2uk, c2d),
            r_eaves: eaves_rate_from_snr(ch.bandwidth, &combined, s.eaves_mode(), s.octd_aggregation()),
            snr: SnrBreakdown { s2uk, c2d, eaves },
            degenerate: paa.degenerate || uvaa.degenerate,
        }
    }

    pub fn service_rates(&self, ctx: &ServiceContext) -> RatePair {
        let receiver_pos = ctx.positions[ctx.receiver];
        let paa = self.paa_terms(ctx.paa_weights, &receiver_pos);
        let uvaa = self.uvaa_terms(ctx.positions, ctx.uvaa_weights, ctx.device);
        self.combine(&paa, &uvaa, &receiver_pos)
    }

    /// Legitimate rate with its SNR breakdown.
    pub fn legit_rate(&self, ctx: &ServiceContext) -> (f64, SnrBreakdown) {
        let r = self.service_rates(ctx);
        (r.r_legit, r.snr)
    }

    /// Eavesdropping rate under `mode` with the per-eavesdropper SNRs.
    pub fn eaves_rate(&self, ctx: &ServiceContext, mode: EavesMode) -> (f64, Vec<EavesSnr>) {
        let r = self.service_rates(ctx);
        let combined: Vec<f64> = r.snr.eaves.iter().map(EavesSnr::combined).collect();
        let bw = self.scenario.channel().bandwidth;
        let rate = eaves_rate_from_snr(bw, &combined, mode, self.scenario.octd_aggregation());
        (rate, r.snr.eaves)
    }
}
