//! Residual checks of the variational characterizations of the play and of
//! the identities satisfied by the stop and `Q` operators.

mod checks;
mod families;

pub use checks::{
    check_constant_speed_w, check_integral_vi, check_jump_law, check_normal_cone, check_rate_independence,
    check_sq_identities, TOL_NC, TOL_Z,
};
pub use families::{corrupted, vi_test_functions};

use serde::{Deserialize, Serialize};

use crate::bvpath::{compose, d_inf, BVPath, NondecreasingMap};
use crate::error::Result;
use crate::geometry::{ConvexSet, Point, TOL_PROJ};
use crate::reparam::{constant_speed_check, fill_segments, SetPath};
use crate::solver::{play, play_via_reparam, reparam_solution, Grid, Method, SweepOutput};

/// Number of random piecewise-constant VI test functions per item.
pub const RANDOM_VI_TESTS: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub h: f64,
}

impl CheckResult {
    pub fn new(name: &str, residual: f64, tolerance: f64, h: f64) -> Self {
        CheckResult { name: name.to_string(), residual, tolerance, passed: residual <= tolerance, h }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub method: Method,
    pub h: f64,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Largest segment slope of `u`.
pub fn lipschitz_constant(u: &BVPath) -> f64 {
    let nodes = u.nodes();
    (0..nodes.len() - 1).map(|i| u.segment_length(i) / (nodes[i + 1].t - nodes[i].t)).fold(0.0, f64::max)
}

/// `d_inf(play, play_via_reparam)` on the same step.
pub fn pipeline_defect(z0: &Point, u: &BVPath, z: &ConvexSet, grid: &Grid) -> Result<f64> {
    let direct = play(z0, u, z, grid)?.trajectory;
    let reparam = play_via_reparam(z0, u, z, grid)?.trajectory;
    d_inf(&direct, &reparam)
}

/// Exactness defect of `u = ũ ∘ ℓ` plus `|V(ũ) - V(u)|`.
pub fn reparam_identity_defect(u: &BVPath) -> Result<f64> {
    let (ell, u_tilde) = fill_segments(u);
    let back = compose(&u_tilde, &ell)?;
    Ok(d_inf(&back, u)? + (u_tilde.total_variation() - u.total_variation()).abs())
}

/// Runs every applicable check on a play output produced with `grid`.
pub fn verify_play(
    z0: &Point,
    u: &BVPath,
    z: &ConvexSet,
    grid: &Grid,
    output: &SweepOutput,
    seed: u64,
) -> Result<VerificationReport> {
    let h = grid.h();
    let y = &output.trajectory;
    let lip = lipschitz_constant(u);
    let speed = u.total_variation() / u.horizon();
    let c = SetPath::translate(u.clone(), z.clone())?;
    let mut checks = vec![CheckResult::new("constraint", output.residuals.max_constraint, 10.0 * TOL_PROJ, h)];

    let jump = check_jump_law(u, z, y)?;
    let nc_failures = match output.method {
        Method::Direct => {
            checks.push(CheckResult::new("jump_law", jump, TOL_PROJ, h));
            check_normal_cone(&c, output)?
        }
        Method::Reparam => {
            checks.push(CheckResult::new("jump_discrepancy", jump, 10.0 * h, h));
            let sol = reparam_solution(z0, u, z, grid)?;
            checks::normal_cone_failures(&sol.c_tilde, &sol.y_hat)?
        }
    };
    checks.push(CheckResult::new("normal_cone_failures", nc_failures as f64, 0.0, h));

    let tests = vi_test_functions(z0, u, y, z, RANDOM_VI_TESTS, seed)?;
    checks.push(CheckResult::new("integral_vi", check_integral_vi(u, y, z, &tests)?, 10.0 * h, h));

    let horizon = u.horizon();
    let gamma = NondecreasingMap::from_fn(horizon, horizon, 64, |t| t * t / horizon)?;
    checks.push(CheckResult::new("rate_independence", check_rate_independence(z0, u, z, &gamma, grid)?, 10.0 * h, h));

    if u.is_continuous() {
        let (orth, sq_speed) = check_sq_identities(z0, u, z, grid)?;
        let tol = 10.0 * h * (1.0 + lip).powi(2);
        checks.push(CheckResult::new("sq_orthogonality", orth, tol, h));
        checks.push(CheckResult::new("sq_speed", sq_speed, tol, h));
    }

    checks.push(CheckResult::new("reparam_identity", reparam_identity_defect(u)?, 0.0, h));
    let (_, u_tilde) = fill_segments(u);
    checks.push(CheckResult::new(
        "constant_speed_u_tilde",
        constant_speed_check(&u_tilde, u.total_variation(), horizon),
        1e-9,
        h,
    ));
    checks.push(CheckResult::new(
        "constant_speed_w_hat",
        check_constant_speed_w(z0, u, z, grid)?,
        10.0 * h * (1.0 + speed).powi(2),
        h,
    ));

    Ok(VerificationReport { method: output.method, h, checks })
}
