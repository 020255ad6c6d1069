use std::fs;
use std::path::Path;
use std::process::Command;

fn swarmsec(args: &[&str], out: &Path) {
    let status = Command::new(env!("CARGO_BIN_EXE_swarmsec"))
        .args(args)
        .arg("--out")
        .arg(out)
        .status()
        .expect("binary runs");
    assert!(status.success(), "swarmsec {args:?} failed");
}

const SMALL: [&str; 6] = ["--pop", "5", "--iters", "3", "--quad-deg", "15"];

fn run_small(extra: &[&str], out: &Path) {
    let mut args = vec!["run"];
    args.extend(SMALL);
    args.extend(extra);
    swarmsec(&args, out);
}

#[test]
fn run_writes_per_seed_outputs() {
    let dir = tempfile::tempdir().unwrap();
    run_small(&["--seeds", "0,1"], dir.path());
    for seed in [0, 1] {
        for stem in ["archive", "trace", "trajectory", "pattern_paa", "pattern_uvaa"] {
            let f = dir.path().join(format!("{stem}_seed{seed}.csv"));
            assert!(f.is_file(), "missing {}", f.display());
            let meta: serde_json::Value =
                serde_json::from_slice(&fs::read(dir.path().join(format!("{stem}_seed{seed}.csv.meta.json"))).unwrap())
                    .unwrap();
            assert_eq!(meta["seed"], seed);
            assert_eq!(meta["config_hash"].as_str().unwrap().len(), 64);
        }
    }
    let trace = fs::read_to_string(dir.path().join("trace_seed0.csv")).unwrap();
    assert!(trace.starts_with("iteration,c,hv,archive_size,best_f1,best_f2,best_f3"));
    assert!(dir.path().join("summary.csv").is_file());
}

#[test]
fn mogoa_config_has_every_toggle_off() {
    let dir = tempfile::tempdir().unwrap();
    run_small(&["--algo", "mogoa"], dir.path());
    let cfg: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("effective_config.json")).unwrap()).unwrap();
    assert_eq!(cfg["algo"], "mogoa");
    let toggles = cfg["config"]["toggles"].as_object().unwrap();
    assert_eq!(toggles.len(), 5);
    assert!(toggles.values().all(|v| v == false));
}

#[test]
fn rerun_is_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    run_small(&["--seeds", "2"], a.path());
    run_small(&["--seeds", "2"], b.path());
    for name in ["archive_seed2.csv", "trace_seed2.csv", "trajectory_seed2.csv", "effective_config.json"] {
        assert_eq!(
            fs::read(a.path().join(name)).unwrap(),
            fs::read(b.path().join(name)).unwrap(),
            "{name} differs"
        );
    }
}

#[test]
fn beampattern_reads_an_archive_row() {
    let dir = tempfile::tempdir().unwrap();
    run_small(&["--seeds", "0"], dir.path());
    let archive = dir.path().join("archive_seed0.csv");
    let out = dir.path().join("pattern");
    swarmsec(
        &["beampattern", "--archive", archive.to_str().unwrap(), "--row", "1", "--quad-deg", "15"],
        &out,
    );
    for name in ["pattern_paa.csv", "pattern_uvaa.csv"] {
        let rows = fs::read_to_string(out.join(name)).unwrap().lines().count();
        assert_eq!(rows, 1 + 12 * 24);
    }
}

#[test]
fn overhead_of_the_default_swarm() {
    let dir = tempfile::tempdir().unwrap();
    swarmsec(&["overhead", "--loss", "0,0.05"], dir.path());
    let text = fs::read_to_string(dir.path().join("overhead.csv")).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][2], 1.0);
    assert!((rows[1][5] - 0.0034).abs() < 0.0034 * 0.05, "{}", rows[1][5]);
}
