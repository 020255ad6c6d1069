use swarmsec_core::beamforming::GainQuadrature;
use swarmsec_core::imogoa::{run_with, OptimizerConfig};
use swarmsec_core::problem::{is_permutation, Evaluator, Solution};
use swarmsec_core::scenario::{
    default_scenario, generate_scenario, load_scenario, parse_scenario, save_scenario, EavesMode,
};

fn quad() -> GainQuadrature {
    GainQuadrature::from_resolution_deg(10.0).unwrap()
}

#[test]
fn scenario_file_round_trip() {
    let s = generate_scenario(21, 6, 3, 400.0).unwrap();
    let path = std::env::temp_dir().join(format!("swarmsec-scenario-{}.json", std::process::id()));
    save_scenario(&s, &path).unwrap();
    let back = load_scenario(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(back.config(), s.config());
    assert!(parse_scenario("{not json").is_err());
}

#[test]
fn archive_members_re_evaluate_exactly() {
    let s = generate_scenario(5, 4, 3, 300.0).unwrap();
    let ev = Evaluator::new(s.clone(), quad());
    let (archive, trace) = run_with(&OptimizerConfig::imogoa().with_budget(6, 4).with_seed(9), &ev).unwrap();
    assert_eq!(trace.records.len(), 5);
    for m in archive.members() {
        let sol = Solution::from_record(&m.solution.to_record(), &s).unwrap();
        assert_eq!(&sol, &m.solution);
        assert!(is_permutation(&sol.order));
        for service in &sol.p_uav {
            assert!(service.iter().all(|p| s.bounds().contains(p)));
        }
        let again = ev.evaluate(sol).unwrap();
        assert_eq!(again.objectives, m.objectives);
        assert_eq!(again.feasible, m.feasible);
    }
}

#[test]
fn colluding_eavesdroppers_never_lower_leakage() {
    let s = default_scenario();
    let sol = Solution::baseline(&s);
    let f2 = |mode| {
        Evaluator::new(s.with_eaves_mode(mode), quad())
            .evaluate(sol.clone())
            .unwrap()
            .objectives
            .f2()
    };
    assert!(f2(EavesMode::Ctsd) >= f2(EavesMode::Octd));
}

#[test]
fn hovering_baseline_spends_no_flight_energy() {
    let s = default_scenario();
    let e = Evaluator::new(s.clone(), quad()).evaluate(Solution::baseline(&s)).unwrap();
    assert!(e.feasible);
    assert!(e.objectives.f1() > 0.0 && e.objectives.f2() > 0.0);
    assert_eq!(e.objectives.f3(), 0.0);
}
