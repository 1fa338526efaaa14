//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sweepbv::bvpath::d_inf;
use sweepbv::corpus::{regression_corpus, run_item, ItemReport, SolveRequest};
use sweepbv::experiment::{bv_continuity, ContinuityConfig, Family};
use sweepbv::geometry::{project, TOL_PROJ};
use sweepbv::reparam::{constant_speed_check, fill_segments, SetPath};
use sweepbv::solver::{catching_up, geodesic_solution, play, Grid};
use sweepbv::verify::{check_rate_independence, check_sq_identities, reparam_identity_defect, CheckResult};
use sweepbv::{BVPath, ConvexSet, NondecreasingMap, Point};

const STEPS: [f64; 2] = [1e-2, 1e-3];
const SEED: u64 = 7;
/// Normalized stop/Q defects at or below this are roundoff.
const SQ_FLOOR: f64 = 1e-9;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

/// Ratio in the first-order band `2 ± 30%`.
fn halves(coarse: f64, fine: f64) -> bool {
    (1.4..=2.6).contains(&(coarse / fine))
}

fn check<'a>(report: &'a ItemReport, name: &str) -> Vec<&'a CheckResult> {
    [&report.direct, &report.reparam].into_iter().flat_map(|r| r.checks.iter()).filter(|c| c.name == name).collect()
}

fn scalar_oracle() -> Outcome {
    let z = ConvexSet::interval(-1.0, 1.0).unwrap();
    let u = BVPath::polyline(&[0.0, 2.0], &[Point::scalar(0.0), Point::scalar(2.0)]).unwrap();
    let start = Instant::now();
    let mut worst_ratio = 0.0_f64;
    for h in [1e-2, 1e-3, 1e-4] {
        let grid = Grid::uniform(2.0, h, &[]).unwrap();
        let y = play(&Point::scalar(0.0), &u, &z, &grid).unwrap().trajectory;
        let err = grid.times().iter().map(|&t| (y.eval(t).unwrap()[0] - (t - 1.0).max(0.0)).abs()).fold(0.0, f64::max);
        worst_ratio = worst_ratio.max(err / h);
    }
    let elapsed = start.elapsed().as_secs_f64();
    outcome(worst_ratio <= 2.0 && elapsed < 1.0, format!("max err/h = {worst_ratio:.3e}, runtime {elapsed:.3} s"))
}

fn random_point(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> Point {
    Point::new((0..dim).map(|_| rng.gen_range(-scale..scale)).collect()).unwrap()
}

fn random_pair(rng: &mut ChaCha8Rng, index: usize) -> (ConvexSet, ConvexSet) {
    let dim = 2 + index % 2;
    if index % 4 < 2 {
        let a = ConvexSet::ball(random_point(rng, dim, 1.0), rng.gen_range(0.2..1.5)).unwrap();
        let b = ConvexSet::ball(random_point(rng, dim, 1.0), rng.gen_range(0.2..1.5)).unwrap();
        (a, b)
    } else {
        let cuboid = |rng: &mut ChaCha8Rng| {
            let lo = random_point(rng, dim, 1.0);
            let width = Point::new((0..dim).map(|_| rng.gen_range(0.1..1.5)).collect()).unwrap();
            ConvexSet::cuboid(lo.clone(), &lo + &width).unwrap()
        };
        (cuboid(rng), cuboid(rng))
    }
}

fn geodesic_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let h = 1e-3;
    let (mut worst, mut sum_coarse, mut sum_fine) = (0.0_f64, 0.0, 0.0);
    let count = 24;
    for index in 0..count {
        let (a, b) = random_pair(&mut rng, index);
        let far = random_point(&mut rng, a.dim(), 3.0);
        // alternate between boundary and interior starting points
        let u0 = if index % 3 == 0 {
            project(&a, &far).unwrap().lerp(&project(&a, &Point::zeros(a.dim())).unwrap(), 0.5)
        } else {
            project(&a, &far).unwrap()
        };
        let exact = geodesic_solution(&a, &b, &u0).unwrap();
        let c = SetPath::geodesic(a, b).unwrap();
        let err = |step: f64| {
            let y = catching_up(&c, &u0, &Grid::uniform(1.0, step, &[]).unwrap()).unwrap().trajectory;
            d_inf(&y, &exact).unwrap()
        };
        let (coarse, fine) = (err(h), err(h / 2.0));
        worst = worst.max(coarse / h);
        sum_coarse += coarse;
        sum_fine += fine;
    }
    let ratio = sum_coarse / sum_fine;
    outcome(
        worst <= 5.0 && halves(sum_coarse, sum_fine),
        format!("{count} instances, max err/h = {worst:.3e}, mean error ratio under halving {ratio:.3}"),
    )
}

fn pipeline(reports: &[ItemReport]) -> Outcome {
    let worst = reports.iter().map(|r| r.pipeline.residual / r.h).fold(0.0, f64::max);
    outcome(reports.iter().all(|r| r.pipeline.passed), format!("max d_inf/h = {worst:.3e} over {} runs", reports.len()))
}

fn jump_law(reports: &[ItemReport]) -> Outcome {
    let worst = reports
        .iter()
        .flat_map(|r| r.direct.checks.iter().filter(|c| c.name == "jump_law"))
        .map(|c| c.residual)
        .fold(0.0, f64::max);
    outcome(worst <= TOL_PROJ, format!("max jump residual = {worst:.3e}"))
}

fn integral_vi(reports: &[ItemReport]) -> Outcome {
    let worst = reports
        .iter()
        .flat_map(|r| check(r, "integral_vi").into_iter().map(move |c| c.residual / r.h))
        .fold(f64::NEG_INFINITY, f64::max);
    outcome(worst <= 10.0, format!("max residual/h = {worst:.3e}"))
}

fn normal_cone(reports: &[ItemReport]) -> Outcome {
    let failures: f64 = reports.iter().flat_map(|r| check(r, "normal_cone_failures")).map(|c| c.residual).sum();
    let controls = reports.iter().map(|r| r.negative_control_failures).min().unwrap_or(0);
    outcome(
        failures == 0.0 && controls >= 1,
        format!("{failures} failures on solver outputs, min {controls} detected per negative control"),
    )
}

fn rate_independence(corpus: &[SolveRequest]) -> Outcome {
    let mut worst = 0.0_f64;
    for item in corpus {
        let horizon = item.u.horizon();
        let gammas = [
            NondecreasingMap::from_fn(horizon, horizon, 64, |t| t * t / horizon).unwrap(),
            // includes a pause on [0.3T, 0.5T]
            NondecreasingMap::from_fn(horizon, horizon, 10, |t| {
                let s = t / horizon;
                horizon
                    * if s <= 0.3 {
                        2.0 * s
                    } else if s <= 0.5 {
                        0.6
                    } else {
                        0.6 + 0.8 * (s - 0.5)
                    }
            })
            .unwrap(),
            NondecreasingMap::from_fn(2.0 * horizon, horizon, 128, |t| horizon * (t / (2.0 * horizon)).powi(3))
                .unwrap(),
        ];
        for h in STEPS {
            let grid = Grid::uniform(horizon, h, &[]).unwrap();
            for gamma in &gammas {
                let defect = check_rate_independence(&item.z0, &item.u, &item.z, gamma, &grid).unwrap();
                worst = worst.max(defect / h);
            }
        }
    }
    outcome(worst <= 10.0, format!("max defect/h = {worst:.3e} over 3 reparametrizations"))
}

fn reparam_identities(corpus: &[SolveRequest]) -> Outcome {
    let (mut identity, mut speed) = (0.0_f64, 0.0_f64);
    for item in corpus {
        identity = identity.max(reparam_identity_defect(&item.u).unwrap());
        let (_, u_tilde) = fill_segments(&item.u);
        speed = speed.max(constant_speed_check(&u_tilde, item.u.total_variation(), item.u.horizon()));
    }
    outcome(
        identity == 0.0 && speed <= 1e-9,
        format!("identity defect = {identity:e}, constant-speed defect = {speed:.3e}"),
    )
}

fn bv_experiment(corpus: &[SolveRequest]) -> Outcome {
    let start = Instant::now();
    let (mut bound, mut exact_distance, mut flagged) = (true, true, true);
    let mut fitted = Vec::new();
    for item in corpus {
        let reports = bv_continuity(&ContinuityConfig::from_request(item, 1e-3, SEED)).unwrap();
        for r in reports {
            if r.bv_convergent {
                bound &= r.bound_holds;
                exact_distance &= r.rows.iter().all(|row| (row.input_bv_dist - 1.0 / row.n as f64).abs() <= 1e-12);
                fitted.push(r.fitted_c);
            } else {
                flagged &= r.flagged && r.family == Family::Staircase;
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let c_max = fitted.iter().copied().fold(0.0, f64::max);
    outcome(
        bound && exact_distance && flagged && elapsed < 60.0,
        format!(
            "bound holds: {bound}, input distance 1/n: {exact_distance}, contrast flagged: {flagged}, max fitted C = {c_max:.3}, runtime {elapsed:.2} s"
        ),
    )
}

fn sq_identities(corpus: &[SolveRequest]) -> Outcome {
    let mut lines = Vec::new();
    let mut passed = true;
    for item in corpus.iter().filter(|i| i.u.is_continuous()) {
        let defects: Vec<(f64, f64)> = [1e-2, 5e-3]
            .iter()
            .map(|&h| {
                check_sq_identities(&item.z0, &item.u, &item.z, &Grid::uniform(item.u.horizon(), h, &[]).unwrap())
                    .unwrap()
            })
            .collect();
        let ok = |coarse: f64, fine: f64| coarse.max(fine) <= SQ_FLOOR || halves(coarse, fine);
        let item_ok = ok(defects[0].0, defects[1].0) && ok(defects[0].1, defects[1].1);
        passed &= item_ok;
        lines.push(format!(
            "{} orth {:.2e}->{:.2e} speed {:.2e}->{:.2e}",
            item.label(),
            defects[0].0,
            defects[1].0,
            defects[0].1,
            defects[1].1
        ));
    }
    outcome(passed, lines.join("; "))
}

fn main() {
    let corpus = regression_corpus(1e-3);
    let reports: Vec<ItemReport> =
        STEPS.iter().flat_map(|&h| corpus.iter().map(move |item| run_item(item, h, SEED).unwrap())).collect();

    let results = [
        ("scalar play oracle", scalar_oracle()),
        ("geodesic solution equivalence", geodesic_equivalence()),
        ("direct and reparametrized pipelines agree", pipeline(&reports)),
        ("jump law", jump_law(&reports)),
        ("discrete integral variational inequality", integral_vi(&reports)),
        ("normal-cone inclusion", normal_cone(&reports)),
        ("rate independence", rate_independence(&corpus)),
        ("reparametrization identities", reparam_identities(&corpus)),
        ("BV-continuity experiment", bv_experiment(&corpus)),
        ("stop/Q identities", sq_identities(&corpus)),
    ];
    let mut all = true;
    for (i, (name, o)) in results.iter().enumerate() {
        all &= o.passed;
        println!("{} criterion {:>2} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    if !all {
        std::process::exit(1);
    }
}
