//! CSV tables and their JSON metadata sidecars.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

use swarmsec_core::baselines::BaselineObjectives;
use swarmsec_core::beamforming::{beam_pattern, direction_between, ArraySpec, GainQuadrature, PatternSample};
use swarmsec_core::imogoa::RunTrace;
use swarmsec_core::problem::{record_header, EvaluatedSolution, Solution};
use swarmsec_core::Scenario;

/// Header plus rows of already formatted cells.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv_bytes(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        Ok(w.into_inner()?)
    }

    /// Writes `path` and `path.meta.json`.
    pub fn write(&self, path: &Path, meta: &Sidecar) -> Result<()> {
        fs::write(path, self.to_csv_bytes()?).with_context(|| format!("writing {}", path.display()))?;
        let mut meta = meta.clone();
        meta.file = path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
        meta.rows = self.rows.len();
        let side = sidecar_path(path);
        fs::write(&side, serde_json::to_vec_pretty(&meta)?).with_context(|| format!("writing {}", side.display()))?;
        Ok(())
    }
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

/// Shortest text that parses back to the same `f64`.
pub fn num(v: f64) -> String {
    format!("{v}")
}

/// Provenance written next to every CSV.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sidecar {
    pub file: String,
    pub command: String,
    pub seed: Option<u64>,
    pub config_hash: String,
    pub scenario_hash: String,
    pub version: String,
    pub rows: usize,
}

impl Sidecar {
    pub fn new(command: &str, seed: Option<u64>, config_hash: &str, scenario: &Scenario) -> Result<Self> {
        Ok(Self {
            file: String::new(),
            command: command.to_string(),
            seed,
            config_hash: config_hash.to_string(),
            scenario_hash: hash_json(scenario.config())?,
            version: env!("CARGO_PKG_VERSION").to_string(),
            rows: 0,
        })
    }
}

/// SHA-256 of the compact JSON encoding of `value`.
pub fn hash_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let bytes = serde_json::to_vec(value)?;
    Ok(Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect())
}

/// One row per member: raw objectives, feasibility, then the flat record.
pub fn archive_table(members: &[EvaluatedSolution], scenario: &Scenario) -> Table {
    let mut t = Table::new(
        ["f1", "f2", "f3", "feasible", "violation", "degenerate"]
            .into_iter()
            .map(String::from)
            .chain(record_header(scenario)),
    );
    for m in members {
        let o = &m.objectives;
        let mut row = vec![
            num(o.f1()),
            num(o.f2()),
            num(o.f3()),
            (m.feasible as u8).to_string(),
            num(m.violation),
            (m.degenerate as u8).to_string(),
        ];
        row.extend(m.solution.to_record().into_iter().map(num));
        t.push(row);
    }
    t
}

pub fn trace_table(trace: &RunTrace) -> Table {
    let mut t = Table::new(["iteration", "c", "hv", "archive_size", "best_f1", "best_f2", "best_f3"]);
    for r in &trace.records {
        t.push(vec![
            r.iteration.to_string(),
            num(r.c),
            num(r.hv),
            r.archive_size.to_string(),
            num(r.best[0]),
            num(r.best[1]),
            num(r.best[2]),
        ]);
    }
    t
}

/// Ordered waypoints of every UAV: its start, then its position in each
/// service. `device` is 1-based, 0 marks the start.
pub fn trajectory_table(sol: &Solution, scenario: &Scenario) -> Table {
    let mut t = Table::new(["uav", "step", "device", "x", "y", "z"]);
    for (k, start) in scenario.uav_init_positions().iter().enumerate() {
        t.push(vec![
            (k + 1).to_string(),
            "0".into(),
            "0".into(),
            num(start.x),
            num(start.y),
            num(start.z),
        ]);
        for (step, &dev) in sol.order.iter().enumerate() {
            let p = sol.p_uav[dev][k];
            t.push(vec![
                (k + 1).to_string(),
                (step + 1).to_string(),
                (dev + 1).to_string(),
                num(p.x),
                num(p.y),
                num(p.z),
            ]);
        }
    }
    t
}

pub fn pattern_table(samples: &[PatternSample]) -> Table {
    let mut t = Table::new(["theta_deg", "phi_deg", "gain_db"]);
    for s in samples {
        t.push(vec![num(s.theta.to_degrees()), num(s.phi.to_degrees()), num(s.gain_db)]);
    }
    t
}

/// PAA and UVAA gain patterns of the beams a solution uses for `device`.
pub fn solution_patterns(
    sol: &Solution,
    scenario: &Scenario,
    device: usize,
    quad: &GainQuadrature,
) -> Result<(Vec<PatternSample>, Vec<PatternSample>)> {
    anyhow::ensure!(device < scenario.device_count(), "device {} out of range", device + 1);
    let lambda = scenario.channel().wavelength;
    let rx = sol.p_uav[device][sol.s_recv[device]];
    let paa = ArraySpec::new(scenario.paa_offsets().to_vec(), sol.i_paa[device].clone(), lambda)?;
    let paa_dir = direction_between(&scenario.paa().center, &rx)?;
    let positions = &sol.p_uav[device];
    let uvaa = ArraySpec::from_positions(positions, sol.i_uvaa[device].clone(), lambda)?;
    let center = swarmsec_core::Position3D::centroid(positions);
    let uvaa_dir = direction_between(&center, &scenario.devices()[device])?;
    Ok((
        beam_pattern(&paa, &paa_dir, quad, scenario.paa_efficiency())?,
        beam_pattern(&uvaa, &uvaa_dir, quad, scenario.uvaa_efficiency())?,
    ))
}

pub fn baseline_row(label: String, o: &BaselineObjectives) -> Vec<String> {
    vec![label, num(o.f1), num(o.f2), num(o.f3)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use swarmsec_core::scenario::default_scenario;

    #[test]
    fn csv_has_header_and_rows() {
        let mut t = Table::new(["a", "b"]);
        t.push(vec![num(0.1), num(2.0)]);
        assert_eq!(String::from_utf8(t.to_csv_bytes().unwrap()).unwrap(), "a,b\n0.1,2\n");
    }

    #[test]
    fn numbers_round_trip() {
        for v in [0.1, 1.0 / 3.0, 2.5e-300, 123456789.123456789] {
            assert_eq!(num(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn hash_is_stable_hex() {
        let h = hash_json(&[1, 2, 3]).unwrap();
        assert_eq!(h.len(), 64);
        assert_eq!(h, hash_json(&[1, 2, 3]).unwrap());
        assert_ne!(h, hash_json(&[1, 2, 4]).unwrap());
    }

    #[test]
    fn trajectory_lists_every_uav_step() {
        let s = default_scenario();
        let sol = Solution::baseline(&s);
        let t = trajectory_table(&sol, &s);
        assert_eq!(t.rows.len(), s.uav_count() * (s.device_count() + 1));
    }

    #[test]
    fn patterns_cover_the_grid() {
        let s = default_scenario();
        let q = GainQuadrature::from_resolution_deg(10.0).unwrap();
        let (p, u) = solution_patterns(&Solution::baseline(&s), &s, 0, &q).unwrap();
        assert_eq!(p.len(), q.len());
        assert_eq!(u.len(), q.len());
        assert!(solution_patterns(&Solution::baseline(&s), &s, 99, &q).is_err());
    }
}
