//! Acceptance report: one line per criterion, then a non-zero exit if any
//! criterion outside `KNOWN_GAPS` failed.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use swarmsec_cli::experiments::{compare, quadrature, run_seeds};
use swarmsec_cli::export::{archive_table, trace_table};
use swarmsec_core::baselines::{evaluate_lrs, evaluate_mrs, LrsConfig, MrsConfig};
use swarmsec_core::beamforming::{array_factor, ArraySpec, Direction, GainQuadrature, SteeredArray};
use swarmsec_core::energy::{expected_transmissions, scheduling_overhead, OverheadParams};
use swarmsec_core::imogoa::crossover::pmx_with;
use swarmsec_core::imogoa::{pmx, run_observed, OptimizerConfig};
use swarmsec_core::link_budget::{shannon_rate, LinkModel, ServiceContext};
use swarmsec_core::moea::{dcde_prune, hypervolume, hypervolume_2d};
use swarmsec_core::problem::{dominates, is_permutation, EvaluatedSolution, Evaluator, ObjectiveVector, Solution};
use swarmsec_core::scenario::{default_scenario, EavesMode};
use swarmsec_core::Position3D;

/// Criteria that fail on this implementation and are documented in the README.
const KNOWN_GAPS: &[u32] = &[8];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn random_direction(rng: &mut impl Rng) -> Direction {
    Direction::new(rng.gen::<f64>().mul_add(2.0, -1.0).acos(), rng.gen_range(-PI..PI))
}

fn c1_gain_normalization() -> Outcome {
    let t0 = Instant::now();
    let quad = GainQuadrature::from_resolution_deg(2.0).unwrap();
    let iso = ArraySpec::new(vec![Position3D::ORIGIN], vec![1.0], 0.1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let target = random_direction(&mut rng);
    let steered = SteeredArray::new(&iso, &target, &quad, 1.0).unwrap();
    let worst_db = (0..50)
        .map(|_| (10.0 * steered.gain(&random_direction(&mut rng)).log10()).abs())
        .fold(0.0, f64::max);

    let eta = 0.8;
    let offsets: Vec<Position3D> = (0..6)
        .map(|_| Position3D::new(rng.gen_range(-0.2..0.2), rng.gen_range(-0.2..0.2), rng.gen_range(-0.2..0.2)))
        .collect();
    let weights: Vec<f64> = (0..6).map(|_| rng.gen_range(0.1..1.0)).collect();
    let spec = ArraySpec::new(offsets, weights, 0.1).unwrap();
    let arr = SteeredArray::new(&spec, &target, &quad, eta).unwrap();
    let avg = quad.integrate(|u| arr.gain_unit(u)) / (4.0 * PI);
    let secs = t0.elapsed().as_secs_f64();
    outcome(
        worst_db <= 0.01 && (avg - eta).abs() <= 1e-3 && secs < 1.0,
        format!("isotropic |G| {worst_db:.2e} dB, sphere mean {avg:.6} vs eta {eta}, {secs:.2} s"),
    )
}

fn c2_steering_identity() -> Outcome {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=36);
        let lambda = rng.gen_range(0.01..1.0);
        let offsets: Vec<Position3D> = (0..n)
            .map(|_| Position3D::new(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0)))
            .collect();
        let weights: Vec<f64> = (0..n).map(|_| rng.gen()).collect();
        let spec = ArraySpec::new(offsets, weights, lambda).unwrap();
        let target = random_direction(&mut rng);
        let af = array_factor(&spec, &target, &target).norm();
        worst = worst.max((af - spec.weight_sum()).abs());
    }
    let secs = t0.elapsed().as_secs_f64();
    outcome(worst <= 1e-9 && secs < 5.0, format!("max | |AF| - sum I | = {worst:.2e}, {secs:.2} s"))
}

fn c3_overhead() -> Outcome {
    let e = scheduling_overhead(&OverheadParams::worked_example()).unwrap();
    let rel = (e - 0.0034).abs() / 0.0034;
    let n0 = expected_transmissions(0.0, 3);
    let nh = expected_transmissions(0.5, 3);
    outcome(
        rel <= 0.05 && n0 == 1.0 && nh == 1.75,
        format!("{e:.6} J ({:.2}% off 0.0034), N_T(0) = {n0}, N_T(0.5, 3) = {nh}", rel * 100.0),
    )
}

fn c4_collusion_modes() -> Outcome {
    let base = default_scenario();
    let quad = quadrature(5.0).unwrap();
    let models: Vec<LinkModel> = (1..=4)
        .map(|m| LinkModel::new(base.with_eavesdropper_count(m, 11).unwrap(), quad.clone()))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut sum_ok, mut order_ok, mut single_ok) = (true, true, true);
    for trial in 0..1000 {
        let model = &models[trial % models.len()];
        let s = model.scenario();
        let b = s.bounds();
        let positions: Vec<Position3D> = (0..s.uav_count())
            .map(|_| {
                Position3D::new(
                    rng.gen_range(b.min.x..=b.max.x),
                    rng.gen_range(b.min.y..=b.max.y),
                    rng.gen_range(b.min.z..=b.max.z),
                )
            })
            .collect();
        let paa: Vec<f64> = (0..s.paa().element_count()).map(|_| rng.gen_range(0.01..1.0)).collect();
        let uvaa: Vec<f64> = (0..s.uav_count()).map(|_| rng.gen_range(0.01..1.0)).collect();
        let ctx = ServiceContext {
            receiver: rng.gen_range(0..s.uav_count()),
            device: rng.gen_range(0..s.device_count()),
            positions: &positions,
            paa_weights: &paa,
            uvaa_weights: &uvaa,
        };
        let (ctsd, snrs) = model.eaves_rate(&ctx, EavesMode::Ctsd);
        let (octd, _) = model.eaves_rate(&ctx, EavesMode::Octd);
        let gamma: f64 = snrs.iter().map(|e| e.combined()).sum();
        let by_phase: f64 = snrs.iter().map(|e| e.s2e + e.uk2e + e.c2e).sum();
        sum_ok &= gamma == by_phase && ctsd == shannon_rate(s.channel().bandwidth, by_phase);
        order_ok &= ctsd >= octd;
        if snrs.len() == 1 {
            single_ok &= ctsd == octd;
        }
    }
    outcome(
        sum_ok && order_ok && single_ok,
        format!("MRC sum exact {sum_ok}, CTSD >= OCTD on 1000 draws {order_ok}, single eavesdropper equal {single_ok}"),
    )
}

fn staircase(rng: &mut impl Rng) -> Vec<[f64; 2]> {
    let n = rng.gen_range(1..=12);
    let mut xs: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    let mut ys: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(|a, b| b.total_cmp(a));
    xs.into_iter().zip(ys).map(|(x, y)| [x, y]).collect()
}

fn c5_hypervolume() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    let mut dominated_delta: f64 = 0.0;
    for f in 0..20 {
        let front = staircase(&mut rng);
        let exact = hypervolume_2d(&front, [1.0, 1.0]);
        let pts: Vec<Vec<f64>> = front.iter().map(|p| p.to_vec()).collect();
        let mc = hypervolume(&pts, &[1.0, 1.0], 100_000, &mut ChaCha8Rng::seed_from_u64(f)).unwrap();
        worst = worst.max((mc - exact).abs());

        let mut padded = pts.clone();
        for p in &front {
            padded.push(vec![rng.gen_range(p[0]..=1.0), rng.gen_range(p[1]..=1.0)]);
        }
        let mc_padded = hypervolume(&padded, &[1.0, 1.0], 100_000, &mut ChaCha8Rng::seed_from_u64(f)).unwrap();
        let exact_padded = hypervolume_2d(
            &padded.iter().map(|p| [p[0], p[1]]).collect::<Vec<_>>(),
            [1.0, 1.0],
        );
        dominated_delta = dominated_delta
            .max((mc_padded - mc).abs())
            .max((exact_padded - exact).abs());
    }
    outcome(
        worst <= 0.02 && dominated_delta == 0.0,
        format!("max |MC - exact| = {worst:.4} over 20 fronts, dominated-point change {dominated_delta:e}"),
    )
}

fn c6_archive() -> Outcome {
    let evaluator = Evaluator::new(default_scenario(), quadrature(10.0).unwrap());
    let cfg = OptimizerConfig::imogoa().with_budget(12, 25).with_seed(6);
    let cap = cfg.cap();
    let (mut updates, mut run_ok) = (0usize, true);
    run_observed(&cfg, &evaluator, |_, archive| {
        updates += 1;
        let m = archive.members();
        run_ok &= m.len() <= cap;
        for a in m {
            for b in m {
                run_ok &= !dominates(a, b);
            }
        }
    })
    .unwrap();

    let template = Solution::baseline(&default_scenario());
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let mut extremes_ok = true;
    for _ in 0..200 {
        let n = rng.gen_range(8..40);
        let members: Vec<EvaluatedSolution> = (0..n)
            .map(|_| EvaluatedSolution {
                solution: template.clone(),
                objectives: ObjectiveVector(std::array::from_fn(|_| rng.gen())),
                feasible: true,
                violation: 0.0,
                degenerate: false,
            })
            .collect();
        let mut extremes: Vec<[f64; 3]> = Vec::new();
        for d in 0..3 {
            for pick in [f64::min, f64::max] {
                let v = members.iter().map(|m| m.objectives.0[d]).fold(members[0].objectives.0[d], pick);
                let p = members.iter().find(|m| m.objectives.0[d] == v).unwrap().objectives.0;
                if !extremes.contains(&p) {
                    extremes.push(p);
                }
            }
        }
        let cap = rng.gen_range(extremes.len()..n);
        let kept = dcde_prune(members, cap, &mut rng);
        extremes_ok &= extremes.iter().all(|e| kept.iter().any(|m| &m.objectives.0 == e));
    }
    outcome(
        run_ok && extremes_ok && updates > 0,
        format!("{updates} observed updates non-dominated and <= cap {run_ok}, DCDE keeps extremes {extremes_ok}"),
    )
}

fn c7_pmx() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut valid = true;
    for _ in 0..10_000 {
        let mut a: Vec<usize> = (0..8).collect();
        let mut b = a.clone();
        a.shuffle(&mut rng);
        b.shuffle(&mut rng);
        let (c1, c2) = pmx(&a, &b, &mut rng);
        valid &= is_permutation(&c1) && is_permutation(&c2);
    }
    let (c1, _) = pmx_with(&[0, 1, 2, 3, 4], &[4, 3, 2, 1, 0], (1, 2));
    let child: Vec<usize> = c1.iter().map(|v| v + 1).collect();
    let example = child == [1, 4, 3, 2, 5];
    outcome(
        valid && example,
        format!("1e4 crossovers valid {valid}, worked example child {child:?}"),
    )
}

fn c8_hv_ordering() -> Outcome {
    let t0 = Instant::now();
    let evaluator = Evaluator::new(default_scenario(), quadrature(5.0).unwrap());
    let base = OptimizerConfig::imogoa().with_budget(20, 100);
    let seeds: Vec<u64> = (0..10).collect();
    let cmp = compare(&base, &evaluator, &seeds).unwrap();
    let (im, mo) = (cmp.median_imogoa(), cmp.median_mogoa());
    outcome(
        im > mo,
        format!(
            "median HV imogoa {im:.4} vs mogoa {mo:.4} over 10 seeds, {:.0} s",
            t0.elapsed().as_secs_f64()
        ),
    )
}

fn c9_urs_vs_lrs() -> Outcome {
    let evaluator = Evaluator::new(default_scenario(), quadrature(5.0).unwrap());
    let cfg = OptimizerConfig::imogoa().with_budget(20, 100);
    let urs = run_seeds(&cfg, &evaluator, &[0]).unwrap()[0].best();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut ok = true;
    let (mut lrs_f1, mut lrs_f2) = (f64::NEG_INFINITY, f64::INFINITY);
    for spacing in LrsConfig::SPACINGS {
        let o = evaluate_lrs(&LrsConfig::new(spacing), evaluator.link_model(), &mut rng).unwrap();
        ok &= urs[0] > o.f1 && urs[1] < o.f2;
        lrs_f1 = lrs_f1.max(o.f1);
        lrs_f2 = lrs_f2.min(o.f2);
    }
    outcome(
        ok,
        format!(
            "URS f1 {:.4e} vs best LRS {lrs_f1:.4e}, URS f2 {:.4e} vs lowest LRS {lrs_f2:.4e}",
            urs[0], urs[1]
        ),
    )
}

fn c10_mrs_trends() -> Outcome {
    let s = default_scenario();
    let rows: Vec<_> = MrsConfig::HOP_COUNTS
        .iter()
        .map(|&n| evaluate_mrs(&MrsConfig::new(n), &s).unwrap())
        .collect();
    let ok = rows.windows(2).all(|w| w[1].f2 > w[0].f2 && w[1].f3 > w[0].f3);
    let f2: Vec<String> = rows.iter().map(|o| format!("{:.3e}", o.f2)).collect();
    let f3: Vec<String> = rows.iter().map(|o| format!("{:.3e}", o.f3)).collect();
    outcome(ok, format!("hops 2/4/8/16 f2 [{}] f3 [{}]", f2.join(", "), f3.join(", ")))
}

fn outputs_with_threads(threads: usize) -> Vec<Vec<u8>> {
    let scenario = default_scenario();
    let evaluator = Evaluator::new(scenario.clone(), quadrature(10.0).unwrap());
    let cfg = OptimizerConfig::imogoa().with_budget(10, 15);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    let runs = pool.install(|| run_seeds(&cfg, &evaluator, &[3, 4]).unwrap());
    runs.iter()
        .flat_map(|r| {
            [
                archive_table(&r.archive, &scenario).to_csv_bytes().unwrap(),
                trace_table(&r.trace).to_csv_bytes().unwrap(),
            ]
        })
        .collect()
}

fn c11_determinism() -> Outcome {
    let one = outputs_with_threads(1);
    let four = outputs_with_threads(4);
    let again = outputs_with_threads(1);
    let bytes: usize = one.iter().map(Vec::len).sum();
    outcome(
        one == four && one == again,
        format!("archive and trace CSVs of 2 seeds ({bytes} bytes) identical across 1 and 4 workers and reruns"),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 11] = [
        (1, "array gain normalization", c1_gain_normalization),
        (2, "steering identity", c2_steering_identity),
        (3, "scheduling overhead", c3_overhead),
        (4, "MRC and collusion modes", c4_collusion_modes),
        (5, "hypervolume oracle", c5_hypervolume),
        (6, "archive invariants", c6_archive),
        (7, "PMX validity and worked example", c7_pmx),
        (8, "IMOGOA vs MOGOA hypervolume ordering", c8_hv_ordering),
        (9, "URS vs LRS ordering", c9_urs_vs_lrs),
        (10, "MRS trends", c10_mrs_trends),
        (11, "determinism", c11_determinism),
    ];
    let mut unexpected = Vec::new();
    for (id, name, check) in criteria {
        let o = check();
        let status = match (o.pass, KNOWN_GAPS.contains(&id)) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known gap)",
            (false, false) => {
                unexpected.push(id);
                "FAIL"
            }
        };
        println!("criterion {id:>2} {name}: {status} | {}", o.detail);
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
