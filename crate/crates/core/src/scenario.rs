//! World description shared by every model and optimizer.
//!
//! A [`Scenario`] is built from a serializable [`ScenarioConfig`]. Building
//! validates every invariant and precomputes the linear-scale channel
//! constants, the PAA element offsets and the flight speed, so the rest of
//! the crate never converts from dB at runtime.

use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::energy;
use crate::error::{Error, Result};

/// Speed of light used for the carrier wavelength.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Position3D {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Position3D {
    pub const ORIGIN: Position3D = Position3D::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn distance(&self, other: &Position3D) -> f64 {
        (*other - *self).norm()
    }

    pub fn horizontal_distance(&self, other: &Position3D) -> f64 {
        (other.x - self.x).hypot(other.y - self.y)
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &Position3D) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Position3D) -> Position3D {
        Position3D::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn scale(&self, k: f64) -> Position3D {
        Position3D::new(self.x * k, self.y * k, self.z * k)
    }

    pub fn normalized(&self) -> Position3D {
        self.scale(1.0 / self.norm())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Arithmetic mean of a non-empty set of points.
    pub fn centroid(points: &[Position3D]) -> Position3D {
        let n = points.len() as f64;
        let sum = points
            .iter()
            .fold(Position3D::ORIGIN, |acc, p| acc + *p);
        sum.scale(1.0 / n)
    }
}

impl std::ops::Add for Position3D {
    type Output = Position3D;
    fn add(self, rhs: Position3D) -> Position3D {
        Position3D::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl std::ops::Sub for Position3D {
    type Output = Position3D;
    fn sub(self, rhs: Position3D) -> Position3D {
        Position3D::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

/// Planar M x N array at the macro base station.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaaGeometry {
    pub rows: usize,
    pub cols: usize,
    /// Element spacing in meters.
    pub element_spacing: f64,
    pub center: Position3D,
    /// Normal of the array plane. Need not be unit length in the config.
    pub orientation: Position3D,
}

impl PaaGeometry {
    pub fn element_count(&self) -> usize {
        self.rows * self.cols
    }

    /// Orthonormal in-plane basis `(column axis, row axis)`.
    pub fn plane_basis(&self) -> (Position3D, Position3D) {
        let n = self.orientation.normalized();
        let up = if n.z.abs() > 0.99 {
            Position3D::new(1.0, 0.0, 0.0)
        } else {
            Position3D::new(0.0, 0.0, 1.0)
        };
        let col_axis = up.cross(&n).normalized();
        let row_axis = n.cross(&col_axis).normalized();
        (col_axis, row_axis)
    }

    /// Element offsets from the array center, row-major (`m = row * cols + col`).
    pub fn element_offsets(&self) -> Vec<Position3D> {
        let (col_axis, row_axis) = self.plane_basis();
        let r0 = (self.rows as f64 - 1.0) / 2.0;
        let c0 = (self.cols as f64 - 1.0) / 2.0;
        let mut out = Vec::with_capacity(self.element_count());
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = (c as f64 - c0) * self.element_spacing;
                let b = (r as f64 - r0) * self.element_spacing;
                out.push(col_axis.scale(a) + row_axis.scale(b));
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        if self.rows < 1 || self.cols < 1 {
            return Err(Error::invalid("paa", "rows and cols must be at least 1"));
        }
        if !(self.element_spacing > 0.0) {
            return Err(Error::invalid("paa", "element_spacing must be positive"));
        }
        if !self.center.is_finite() || self.center.z < 0.0 {
            return Err(Error::invalid("paa", "center must be finite with z >= 0"));
        }
        let n = self.orientation.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::invalid("paa", "orientation must be a nonzero vector"));
        }
        Ok(())
    }
}

/// Channel parameters as configured (dB scales where customary).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    /// S-curve parameter `a`.
    pub a: f64,
    /// S-curve parameter `b`.
    pub b: f64,
    /// Reference gain at 1 m, dB.
    pub beta0_db: f64,
    /// Extra NLoS attenuation, dB.
    pub mu_db: f64,
    pub alpha_los: f64,
    pub alpha_nlos: f64,
    pub alpha_g: f64,
    pub noise_psd_dbm_hz: f64,
    pub bandwidth_hz: f64,
    pub carrier_freq_hz: f64,
}

impl Default for ChannelParams {
    fn default() -> Self {
        Self {
            a: 9.61,
            b: 0.16,
            beta0_db: -60.0,
            mu_db: -20.0,
            alpha_los: 2.5,
            alpha_nlos: 3.5,
            alpha_g: 3.5,
            noise_psd_dbm_hz: -174.0,
            bandwidth_hz: 20e6,
            carrier_freq_hz: 2.4e9,
        }
    }
}

impl ChannelParams {
    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_freq_hz
    }

    pub fn linear(&self) -> LinearChannel {
        LinearChannel {
            a: self.a,
            b: self.b,
            beta0: db_to_linear(self.beta0_db),
            mu: db_to_linear(self.mu_db),
            alpha_los: self.alpha_los,
            alpha_nlos: self.alpha_nlos,
            alpha_g: self.alpha_g,
            noise_power: db_to_linear(self.noise_psd_dbm_hz - 30.0) * self.bandwidth_hz,
            bandwidth: self.bandwidth_hz,
            wavelength: self.wavelength(),
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = [
            self.a,
            self.b,
            self.beta0_db,
            self.mu_db,
            self.alpha_los,
            self.alpha_nlos,
            self.noise_psd_dbm_hz,
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("channel", "parameters must be finite"));
        }
        if !(self.alpha_g > 2.0) {
            return Err(Error::invalid("channel", "alpha_g must exceed 2"));
        }
        if !(self.bandwidth_hz > 0.0) {
            return Err(Error::invalid("channel", "bandwidth must be positive"));
        }
        if !(self.carrier_freq_hz > 0.0 && self.carrier_freq_hz.is_finite()) {
            return Err(Error::invalid("channel", "carrier frequency must be positive"));
        }
        Ok(())
    }
}

/// Channel constants on linear scale, derived once per scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearChannel {
    pub a: f64,
    pub b: f64,
    pub beta0: f64,
    pub mu: f64,
    pub alpha_los: f64,
    pub alpha_nlos: f64,
    pub alpha_g: f64,
    /// Noise power over the full bandwidth, watts.
    pub noise_power: f64,
    pub bandwidth: f64,
    pub wavelength: f64,
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Rotary-wing aerodynamic constants.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AeroParams {
    pub p_blade: f64,
    pub p_induced: f64,
    pub u_tips: f64,
    pub u_0: f64,
    pub d0: f64,
    pub rho: f64,
    pub s: f64,
    pub area: f64,
    pub mass: f64,
    pub g: f64,
}

impl Default for AeroParams {
    fn default() -> Self {
        Self {
            p_blade: 79.86,
            p_induced: 88.63,
            u_tips: 120.0,
            u_0: 4.03,
            d0: 0.6,
            rho: 1.225,
            s: 0.05,
            area: 0.053,
            mass: 2.0,
            g: 9.81,
        }
    }
}

impl AeroParams {
    fn validate(&self) -> Result<()> {
        let all = [
            self.p_blade,
            self.p_induced,
            self.u_tips,
            self.u_0,
            self.d0,
            self.rho,
            self.s,
            self.area,
            self.mass,
            self.g,
        ];
        if all.iter().all(|v| v.is_finite() && *v > 0.0) {
            Ok(())
        } else {
            Err(Error::invalid("aero", "all parameters must be strictly positive"))
        }
    }
}

/// Axis-aligned flight box.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub min: Position3D,
    pub max: Position3D,
}

impl Bounds {
    pub fn contains(&self, p: &Position3D) -> bool {
        (self.min.x..=self.max.x).contains(&p.x)
            && (self.min.y..=self.max.y).contains(&p.y)
            && (self.min.z..=self.max.z).contains(&p.z)
    }

    pub fn clamp(&self, p: &Position3D) -> Position3D {
        Position3D::new(
            p.x.clamp(self.min.x, self.max.x),
            p.y.clamp(self.min.y, self.max.y),
            p.z.clamp(self.min.z, self.max.z),
        )
    }

    pub fn center(&self) -> Position3D {
        (self.min + self.max).scale(0.5)
    }
}

/// How several eavesdroppers combine their observations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EavesMode {
    /// Each eavesdropper combines its own three phases; no cooperation.
    #[default]
    Octd,
    /// Eavesdroppers also pool their SNRs across space.
    Ctsd,
}

/// Per-service aggregation of non-colluding eavesdroppers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OctdAggregation {
    #[default]
    Max,
    SumOfRates,
}

/// Serializable scenario description. See the README for the JSON schema.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub paa: PaaGeometry,
    /// MBS transmit power, watts.
    pub mbs_power_w: f64,
    pub devices: Vec<Position3D>,
    pub eavesdroppers: Vec<Position3D>,
    pub uav_init_positions: Vec<Position3D>,
    /// Per-UAV transmit power, watts.
    pub uav_power_w: f64,
    /// Total UVAA radiated power; defaults to `K * uav_power_w` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uvaa_power_w: Option<f64>,
    pub bounds: Bounds,
    pub d_min_uav: f64,
    #[serde(default)]
    pub channel: ChannelParams,
    #[serde(default)]
    pub aero: AeroParams,
    #[serde(default)]
    pub eaves_mode: EavesMode,
    #[serde(default)]
    pub octd_aggregation: OctdAggregation,
    /// Clamp each leg's energy at zero (descents otherwise recover energy).
    #[serde(default)]
    pub energy_floor: bool,
    /// Antenna efficiency of the PAA.
    #[serde(default = "unit_efficiency")]
    pub paa_efficiency: f64,
    /// Antenna efficiency of the UAV virtual array.
    #[serde(default = "unit_efficiency")]
    pub uvaa_efficiency: f64,
}

fn unit_efficiency() -> f64 {
    1.0
}

/// Validated, immutable world description.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    config: ScenarioConfig,
    channel: LinearChannel,
    paa_offsets: Vec<Position3D>,
    flight_speed: f64,
}

impl Scenario {
    pub fn from_config(config: ScenarioConfig) -> Result<Self> {
        validate(&config)?;
        let channel = config.channel.linear();
        let paa_offsets = config.paa.element_offsets();
        let flight_speed = energy::max_range_speed(&config.aero);
        Ok(Self {
            config,
            channel,
            paa_offsets,
            flight_speed,
        })
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.config
    }

    pub fn into_config(self) -> ScenarioConfig {
        self.config
    }

    pub fn uav_count(&self) -> usize {
        self.config.uav_init_positions.len()
    }

    pub fn device_count(&self) -> usize {
        self.config.devices.len()
    }

    pub fn paa(&self) -> &PaaGeometry {
        &self.config.paa
    }

    pub fn paa_offsets(&self) -> &[Position3D] {
        &self.paa_offsets
    }

    pub fn devices(&self) -> &[Position3D] {
        &self.config.devices
    }

    pub fn eavesdroppers(&self) -> &[Position3D] {
        &self.config.eavesdroppers
    }

    pub fn uav_init_positions(&self) -> &[Position3D] {
        &self.config.uav_init_positions
    }

    pub fn bounds(&self) -> &Bounds {
        &self.config.bounds
    }

    pub fn d_min_uav(&self) -> f64 {
        self.config.d_min_uav
    }

    pub fn mbs_power(&self) -> f64 {
        self.config.mbs_power_w
    }

    pub fn uav_power(&self) -> f64 {
        self.config.uav_power_w
    }

    pub fn uvaa_power(&self) -> f64 {
        self.config
            .uvaa_power_w
            .unwrap_or(self.uav_count() as f64 * self.config.uav_power_w)
    }

    pub fn channel(&self) -> &LinearChannel {
        &self.channel
    }

    pub fn aero(&self) -> &AeroParams {
        &self.config.aero
    }

    /// Cruise speed used for every leg (maximum-range speed).
    pub fn flight_speed(&self) -> f64 {
        self.flight_speed
    }

    pub fn eaves_mode(&self) -> EavesMode {
        self.config.eaves_mode
    }

    pub fn octd_aggregation(&self) -> OctdAggregation {
        self.config.octd_aggregation
    }

    pub fn energy_floor(&self) -> bool {
        self.config.energy_floor
    }

    pub fn paa_efficiency(&self) -> f64 {
        self.config.paa_efficiency
    }

    pub fn uvaa_efficiency(&self) -> f64 {
        self.config.uvaa_efficiency
    }

    /// Copy of this scenario with a different eavesdropper mode.
    pub fn with_eaves_mode(&self, mode: EavesMode) -> Scenario {
        let mut s = self.clone();
        s.config.eaves_mode = mode;
        s
    }

    /// Copy with exactly `count` eavesdroppers: the existing ones first, then
    /// extra points drawn as the generator places eavesdroppers.
    pub fn with_eavesdropper_count(&self, count: usize, seed: u64) -> Result<Scenario> {
        let mut eaves: Vec<Position3D> = self.eavesdroppers().iter().take(count).copied().collect();
        let opts = GenerateOptions::default();
        let sector = opts.sector_half_angle_deg.to_radians();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        while eaves.len() < count {
            let r = rng.gen_range(opts.eaves_range.0..=opts.eaves_range.1);
            let psi = rng.gen_range(-sector..=sector);
            eaves.push(Position3D::new(r * psi.cos(), r * psi.sin(), 0.0));
        }
        self.with_eavesdroppers(eaves)
    }

    /// Copy with a different eavesdropper set. Fails if the set is empty.
    pub fn with_eavesdroppers(&self, eaves: Vec<Position3D>) -> Result<Scenario> {
        let mut cfg = self.config.clone();
        cfg.eavesdroppers = eaves;
        Scenario::from_config(cfg)
    }
}

fn validate(cfg: &ScenarioConfig) -> Result<()> {
    cfg.paa.validate()?;
    cfg.channel.validate()?;
    cfg.aero.validate()?;

    if !(cfg.mbs_power_w > 0.0 && cfg.mbs_power_w.is_finite()) {
        return Err(Error::invalid("mbs_power_w", "must be positive"));
    }
    if !(cfg.uav_power_w > 0.0 && cfg.uav_power_w.is_finite()) {
        return Err(Error::invalid("uav_power_w", "must be positive"));
    }
    if let Some(p) = cfg.uvaa_power_w {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::invalid("uvaa_power_w", "must be positive"));
        }
    }
    for (what, eta) in [
        ("paa_efficiency", cfg.paa_efficiency),
        ("uvaa_efficiency", cfg.uvaa_efficiency),
    ] {
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::invalid(what, "must lie in (0, 1]"));
        }
    }
    if cfg.devices.is_empty() {
        return Err(Error::invalid("devices", "at least one device is required"));
    }
    if cfg.eavesdroppers.is_empty() {
        return Err(Error::invalid("eavesdroppers", "at least one eavesdropper is required"));
    }
    for (what, pts) in [
        ("devices", &cfg.devices),
        ("eavesdroppers", &cfg.eavesdroppers),
        ("uav_init_positions", &cfg.uav_init_positions),
    ] {
        if let Some(p) = pts.iter().find(|p| !p.is_finite() || p.z < 0.0) {
            return Err(Error::invalid(
                what,
                format!("position {p:?} must be finite with z >= 0"),
            ));
        }
    }
    let b = &cfg.bounds;
    if !(b.min.is_finite() && b.max.is_finite())
        || b.min.x > b.max.x
        || b.min.y > b.max.y
        || b.min.z > b.max.z
        || b.min.z < 0.0
    {
        return Err(Error::invalid("bounds", "min must not exceed max and z must be >= 0"));
    }
    if !(cfg.d_min_uav >= 0.0 && cfg.d_min_uav.is_finite()) {
        return Err(Error::invalid("d_min_uav", "must be nonnegative"));
    }
    let uavs = &cfg.uav_init_positions;
    if uavs.len() < 2 {
        return Err(Error::invalid("uav_init_positions", "a swarm array needs at least 2 UAVs"));
    }
    if let Some(p) = uavs.iter().find(|p| !b.contains(p)) {
        return Err(Error::invalid(
            "uav_init_positions",
            format!("{p:?} lies outside the flight bounds"),
        ));
    }
    for i in 0..uavs.len() {
        for j in i + 1..uavs.len() {
            let d = uavs[i].distance(&uavs[j]);
            if d < cfg.d_min_uav {
                return Err(Error::invalid(
                    "uav_init_positions",
                    format!(
                        "collision constraint violated: UAVs {i} and {j} are {d:.3} m apart (d_min {})",
                        cfg.d_min_uav
                    ),
                ));
            }
        }
    }
    Ok(())
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_scenario(&text)
}

pub fn parse_scenario(json: &str) -> Result<Scenario> {
    let cfg: ScenarioConfig = serde_json::from_str(json)?;
    Scenario::from_config(cfg)
}

pub fn save_scenario(scenario: &Scenario, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = serde_json::to_string_pretty(scenario.config())?;
    fs::write(path, text + "\n").map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Layout knobs for [`generate_scenario_with`].
#[derive(Clone, Debug, PartialEq)]
pub struct GenerateOptions {
    pub eavesdroppers: usize,
    pub d_min_uav: f64,
    pub z_min: f64,
    pub z_max: f64,
    /// Distance from the MBS to the swarm box center along +x.
    pub swarm_offset: f64,
    pub device_range: (f64, f64),
    pub eaves_range: (f64, f64),
    /// Half-width of the device/eavesdropper sector around +x, degrees.
    pub sector_half_angle_deg: f64,
    pub paa_height: f64,
    pub paa_size: usize,
    pub mbs_power_w: f64,
    pub uav_power_w: f64,
    pub max_attempts: usize,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        Self {
            eavesdroppers: 1,
            d_min_uav: 5.0,
            z_min: 70.0,
            z_max: 120.0,
            swarm_offset: 450.0,
            device_range: (800.0, 1200.0),
            eaves_range: (600.0, 750.0),
            sector_half_angle_deg: 30.0,
            paa_height: 25.0,
            paa_size: 6,
            mbs_power_w: 3.6,
            uav_power_w: 0.1,
            max_attempts: 10_000,
        }
    }
}

/// Generates a random scenario with the default layout options.
pub fn generate_scenario(seed: u64, uavs: usize, devices: usize, area: f64) -> Result<Scenario> {
    generate_scenario_with(seed, uavs, devices, area, &GenerateOptions::default())
}

pub fn generate_scenario_with(
    seed: u64,
    uavs: usize,
    devices: usize,
    area: f64,
    opts: &GenerateOptions,
) -> Result<Scenario> {
    if uavs < 2 {
        return Err(Error::invalid("uav_count", "a swarm array needs at least 2 UAVs"));
    }
    if devices < 1 {
        return Err(Error::invalid("device_count", "at least one device is required"));
    }
    if opts.eavesdroppers < 1 {
        return Err(Error::invalid("eavesdroppers", "at least one eavesdropper is required"));
    }
    if !(area > 0.0) {
        return Err(Error::invalid("area", "must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = area / 2.0;
    let bounds = Bounds {
        min: Position3D::new(opts.swarm_offset - half, -half, opts.z_min),
        max: Position3D::new(opts.swarm_offset + half, half, opts.z_max),
    };

    let mut placed: Vec<Position3D> = Vec::with_capacity(uavs);
    let mut attempts = 0;
    while placed.len() < uavs {
        if attempts >= opts.max_attempts {
            return Err(Error::Placement {
                count: uavs,
                d_min: opts.d_min_uav,
                area,
                attempts,
            });
        }
        attempts += 1;
        let p = Position3D::new(
            rng.gen_range(bounds.min.x..=bounds.max.x),
            rng.gen_range(bounds.min.y..=bounds.max.y),
            rng.gen_range(bounds.min.z..=bounds.max.z),
        );
        if placed.iter().all(|q| q.distance(&p) >= opts.d_min_uav) {
            placed.push(p);
        }
    }

    let sector = opts.sector_half_angle_deg.to_radians();
    let mut ground_point = |range: (f64, f64)| {
        let r = rng.gen_range(range.0..=range.1);
        let psi = rng.gen_range(-sector..=sector);
        Position3D::new(r * psi.cos(), r * psi.sin(), 0.0)
    };
    let device_pts: Vec<_> = (0..devices).map(|_| ground_point(opts.device_range)).collect();
    let eaves_pts: Vec<_> = (0..opts.eavesdroppers)
        .map(|_| ground_point(opts.eaves_range))
        .collect();

    let channel = ChannelParams::default();
    let center = Position3D::new(0.0, 0.0, opts.paa_height);
    let paa = PaaGeometry {
        rows: opts.paa_size,
        cols: opts.paa_size,
        element_spacing: channel.wavelength() / 2.0,
        center,
        orientation: bounds.center() - center,
    };

    Scenario::from_config(ScenarioConfig {
        paa,
        mbs_power_w: opts.mbs_power_w,
        devices: device_pts,
        eavesdroppers: eaves_pts,
        uav_init_positions: placed,
        uav_power_w: opts.uav_power_w,
        uvaa_power_w: None,
        bounds,
        d_min_uav: opts.d_min_uav,
        channel,
        aero: AeroParams::default(),
        eaves_mode: EavesMode::Octd,
        octd_aggregation: OctdAggregation::Max,
        energy_floor: false,
        paa_efficiency: 1.0,
        uvaa_efficiency: 1.0,
    })
}

/// Seed of the bundled default scenario.
pub const DEFAULT_SCENARIO_SEED: u64 = 1;

const DEFAULT_SCENARIO_JSON: &str = include_str!("../data/default_scenario.json");

/// The bundled default scenario: 16 UAVs, 8 devices, 6x6 PAA.
pub fn default_scenario() -> Scenario {
    parse_scenario(DEFAULT_SCENARIO_JSON).expect("bundled scenario is valid")
}

pub fn default_scenario_json() -> &'static str {
    DEFAULT_SCENARIO_JSON
}
