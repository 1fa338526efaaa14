use crate::bvpath::{compose, d_inf, linear_combination, merge_times, BVPath, NondecreasingMap};
use crate::error::{Error, Result};
use crate::geometry::{normal_cone_contains, project, ConvexSet, Point};
use crate::reparam::{fill_segments, SetPath};
use crate::solver::{play, rate_transform, reparam_solution, Grid, SweepOutput};

/// Tolerance of the normal-cone membership test.
pub const TOL_NC: f64 = 1e-8;
/// Slack for test functions to count as `Z`-valued.
pub const TOL_Z: f64 = 1e-9;
/// Increments below this norm count as no motion.
const MOTION_TOL: f64 = 1e-13;

/// Discrete integral variational inequality of the play:
/// `max_z Σ ⟨z - u + y, dy⟩`, where each continuous increment
/// `y(τ_{k+1}-) - y(τ_k)` is paired with values at `τ_k` and each jump
/// `y(τ) - y(τ-)` with values at `τ`. Nonpositive in the limit.
pub fn check_integral_vi(u: &BVPath, y: &BVPath, z: &ConvexSet, z_tests: &[BVPath]) -> Result<f64> {
    let mut worst = f64::NEG_INFINITY;
    for zt in z_tests {
        for n in zt.nodes() {
            for v in [&n.left, &n.right] {
                let distance = z.distance(v)?;
                if distance > TOL_Z {
                    return Err(Error::TestFunctionOutsideZ { t: n.t, distance });
                }
            }
        }
        let times = merge_times(&merge_times(&u.times(), &y.times()), &zt.times());
        let w = |t: f64| -> Result<Point> { Ok(&(&zt.eval(t)? - &u.eval(t)?) + &y.eval(t)?) };
        let mut sum = 0.0;
        for pair in times.windows(2) {
            let (t0, t1) = (pair[0], pair[1]);
            let (y1_left, y1) = y.one_sided(t1)?;
            sum += w(t0)?.dot(&(&y1_left - &y.eval(t0)?));
            if y1_left != y1 {
                sum += w(t1)?.dot(&(&y1 - &y1_left));
            }
        }
        worst = worst.max(sum);
    }
    Ok(if worst.is_finite() { worst } else { 0.0 })
}

/// Number of trajectory steps violating `-Δy ∈ N_{C(τ_{k+1})}(y(τ_{k+1}))`.
/// Jumps are steps; a point outside `C` is a failure.
pub fn check_normal_cone(c: &SetPath, output: &SweepOutput) -> Result<usize> {
    normal_cone_failures(c, &output.trajectory)
}

pub(crate) fn normal_cone_failures(c: &SetPath, y: &BVPath) -> Result<usize> {
    let holds = |k: &ConvexSet, x: &Point, v: &Point| match normal_cone_contains(k, x, v, TOL_NC) {
        Ok(b) => Ok(b),
        Err(Error::PointNotInSet { .. }) => Ok(false),
        Err(e) => Err(e),
    };
    let mut failures = 0;
    let nodes = y.nodes();
    if c.eval(0.0)?.distance(&nodes[0].right)? > TOL_NC {
        failures += 1;
    }
    for pair in nodes.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if !holds(&c.left_limit(b.t)?, &b.left, &(&a.right - &b.left))? {
            failures += 1;
        }
        if b.left != b.right && !holds(&c.eval(b.t)?, &b.right, &(&b.left - &b.right))? {
            failures += 1;
        }
    }
    Ok(failures)
}

/// `max` over jump times of `u` of `|y(t) - Proj_{u(t) - Z}(y(t-))|`, with the
/// translated set built independently of the solver's projection shortcut.
pub fn check_jump_law(u: &BVPath, z: &ConvexSet, y: &BVPath) -> Result<f64> {
    let mut worst = 0.0_f64;
    for t in u.jump_times() {
        let set = ConvexSet::translate(z.clone(), u.eval(t)?)?;
        let expected = project(&set, &y.left_limit(t)?)?;
        worst = worst.max(expected.dist(&y.eval(t)?));
    }
    Ok(worst)
}

/// `d_inf(P(z0, u ∘ γ), P(z0, u) ∘ γ)`, both sides solved with the step of
/// `grid`.
pub fn check_rate_independence(
    z0: &Point,
    u: &BVPath,
    z: &ConvexSet,
    gamma: &NondecreasingMap,
    grid: &Grid,
) -> Result<f64> {
    let ug = rate_transform(u, gamma)?;
    let lhs = play(z0, &ug, z, &Grid::uniform(gamma.horizon(), grid.h(), &[])?)?.trajectory;
    let rhs = compose(&play(z0, u, z, grid)?.trajectory, gamma)?;
    d_inf(&lhs, &rhs)
}

/// Per-cell defects of the stop/play decomposition for continuous `u`:
/// `orth = max |⟨Δs, Δy⟩| / h²` and `speed = max | |Δq| - |Δu| | / h`.
///
/// Excluded cells: those starting at an interior node of `u` (slope change)
/// and those where the play starts moving after resting.
pub fn check_sq_identities(z0: &Point, u: &BVPath, z: &ConvexSet, grid: &Grid) -> Result<(f64, f64)> {
    if let Some(&t) = u.jump_times().first() {
        return Err(Error::NotContinuousInput(t));
    }
    let y = play(z0, u, z, grid)?.trajectory;
    let kinks: Vec<f64> = u.times();
    let h = grid.h();
    let nodes = y.nodes();
    let (mut orth, mut speed) = (0.0_f64, 0.0_f64);
    let mut was_moving = false;
    for pair in nodes.windows(2) {
        let (t0, t1) = (pair[0].t, pair[1].t);
        let dy = &pair[1].left - &pair[0].right;
        let du = &u.left_limit(t1)? - &u.eval(t0)?;
        let moving = dy.norm() > MOTION_TOL;
        let kink = t0 > 0.0 && kinks.binary_search_by(|s| s.total_cmp(&t0)).is_ok();
        let onset = moving && !was_moving;
        was_moving = moving;
        if kink || onset {
            continue;
        }
        let ds = &du - &dy;
        let dq = &dy - &ds;
        orth = orth.max(ds.dot(&dy).abs() / (h * h));
        speed = speed.max((dq.norm() - du.norm()).abs() / h);
    }
    Ok((orth, speed))
}

/// `max | |ŵ'| - V(u)/T |` over cells of reparametrized time outside the jump
/// gaps, where `ŵ = 2ŷ - ũ`. Cells at slope changes of `ũ` and motion onsets
/// of `ŷ` are excluded; `V(u) = 0` gives 0.
pub fn check_constant_speed_w(z0: &Point, u: &BVPath, z: &ConvexSet, grid: &Grid) -> Result<f64> {
    let v = u.total_variation();
    if v == 0.0 {
        return Ok(0.0);
    }
    let sol = reparam_solution(z0, u, z, grid)?;
    let (ell, u_tilde) = fill_segments(u);
    let gaps: Vec<(f64, f64)> = u
        .nodes()
        .iter()
        .zip(ell.nodes())
        .filter(|(n, _)| n.left != n.right)
        .map(|(_, s)| (s.left[0], s.right[0]))
        .collect();
    let target = v / u.horizon();
    let kinks = u_tilde.times();
    let w_hat = linear_combination(2.0, &sol.y_hat, -1.0, &u_tilde)?;
    let mut worst = 0.0_f64;
    let mut was_moving = false;
    for pair in w_hat.nodes().windows(2) {
        let (s0, s1) = (pair[0].t, pair[1].t);
        let dy = &sol.y_hat.left_limit(s1)? - &sol.y_hat.eval(s0)?;
        let moving = dy.norm() > MOTION_TOL;
        let onset = moving && !was_moving;
        was_moving = moving;
        let mid = 0.5 * (s0 + s1);
        let in_gap = gaps.iter().any(|&(a, b)| a <= mid && mid <= b);
        let kink = s0 > 0.0 && kinks.binary_search_by(|s| s.total_cmp(&s0)).is_ok();
        if in_gap || kink || onset {
            continue;
        }
        let slope = pair[1].left.dist(&pair[0].right) / (s1 - s0);
        worst = worst.max((slope - target).abs());
    }
    Ok(worst)
}
