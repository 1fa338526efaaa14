use super::geodesic::INITIAL_TOL;
use super::grid::Grid;
use super::sweep::{catching_up, catching_up_path, Method, Residuals, SweepOutput};
use crate::bvpath::{compose, linear_combination, BVPath, NondecreasingMap};
use crate::error::{Error, Result};
use crate::geometry::{ConvexSet, Point};
use crate::reparam::{fill_geodesics, SetPath};

fn check_initial(z0: &Point, u: &BVPath, z: &ConvexSet) -> Result<()> {
    if u.dim() != z.dim() {
        return Err(Error::DimensionMismatch { expected: z.dim(), found: u.dim() });
    }
    let distance = z.distance(z0)?;
    if distance > INITIAL_TOL {
        return Err(Error::InvalidInitialState { distance });
    }
    Ok(())
}

/// Play operator `P(z0, u)` with characteristic `Z`: catching-up on
/// `C_u(t) = u(t) - Z` from `u(0) - z0`.
pub fn play(z0: &Point, u: &BVPath, z: &ConvexSet, grid: &Grid) -> Result<SweepOutput> {
    check_initial(z0, u, z)?;
    let c = SetPath::translate(u.clone(), z.clone())?;
    let y0 = &u.eval(0.0)? - z0;
    catching_up(&c, &y0, grid)
}

/// Stop and `Q` operators from a play output: `s = u - y`, `q = 2y - u`.
pub fn stop_and_q(z0: &Point, u: &BVPath, y: &BVPath) -> Result<(BVPath, BVPath)> {
    if u.horizon() != y.horizon() || u.dim() != y.dim() || z0.dim() != u.dim() {
        return Err(Error::GridMismatch);
    }
    let s = linear_combination(1.0, u, -1.0, y)?;
    let distance = s.eval(0.0)?.dist(z0);
    if distance > INITIAL_TOL {
        return Err(Error::InvalidInitialState { distance });
    }
    let q = linear_combination(2.0, y, -1.0, u)?;
    Ok((s, q))
}

/// Intermediate objects of the reparametrized pipeline.
#[derive(Clone, Debug)]
pub struct ReparamSolution {
    pub ell: NondecreasingMap,
    pub c_tilde: SetPath,
    /// Solution `ŷ` on reparametrized time.
    pub y_hat: BVPath,
    /// `y = ŷ ∘ ℓ`.
    pub y: BVPath,
}

/// Runs catching-up on the arc-length reparametrized `C̃_u` with the step of
/// `grid` and composes back with `ℓ_u`. Jump gaps are resolved by sweeping
/// along the filled geodesics.
pub fn reparam_solution(z0: &Point, u: &BVPath, z: &ConvexSet, grid: &Grid) -> Result<ReparamSolution> {
    check_initial(z0, u, z)?;
    let y0 = &u.eval(0.0)? - z0;
    let c = SetPath::translate(u.clone(), z.clone())?;
    let (ell, c_tilde) = fill_geodesics(&c)?;
    if c.variation() == 0.0 {
        let y = BVPath::constant(u.horizon(), y0)?.refined(grid.times());
        return Ok(ReparamSolution { ell, c_tilde, y_hat: y.clone(), y });
    }
    let sigma_grid = Grid::uniform(u.horizon(), grid.h(), &[])?;
    let y_hat = catching_up_path(&c_tilde, &y0, &sigma_grid)?;
    let y = compose(&y_hat, &ell)?;
    Ok(ReparamSolution { ell, c_tilde, y_hat, y })
}

/// Play operator through the reparametrized pipeline `M(y0, C) = M(y0, C̃) ∘ ℓ_C`.
pub fn play_via_reparam(z0: &Point, u: &BVPath, z: &ConvexSet, grid: &Grid) -> Result<SweepOutput> {
    let sol = reparam_solution(z0, u, z, grid)?;
    let c = SetPath::translate(u.clone(), z.clone())?;
    let residuals = Residuals::compute(&c, &sol.y)?;
    Ok(SweepOutput { trajectory: sol.y, residuals, h: grid.h(), method: Method::Reparam })
}

/// `u ∘ γ` for a continuous nondecreasing `γ: [0, T'] -> [0, T]` onto.
pub fn rate_transform(u: &BVPath, gamma: &NondecreasingMap) -> Result<BVPath> {
    if let Some(&t) = gamma.jump_times().first() {
        return Err(Error::JumpyReparametrization(t));
    }
    let (lo, hi) = gamma.range();
    let horizon = u.horizon();
    if lo != 0.0 || (hi - horizon).abs() > 1e-12 * horizon.max(1.0) {
        return Err(Error::RangeMismatch { lo, hi, horizon });
    }
    compose(u, gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bvpath::d_inf;

    fn s(x: f64) -> Point {
        Point::scalar(x)
    }

    fn ramp() -> BVPath {
        BVPath::polyline(&[0.0, 2.0], &[s(0.0), s(2.0)]).unwrap()
    }

    fn jump() -> BVPath {
        BVPath::builder(s(0.0)).hold_to(0.5).jump(s(3.0)).hold_to(1.0).build().unwrap()
    }

    fn unit_interval() -> ConvexSet {
        ConvexSet::interval(-1.0, 1.0).unwrap()
    }

    #[test]
    fn scalar_ramp_play() {
        let exact = BVPath::polyline(&[0.0, 1.0, 2.0], &[s(0.0), s(0.0), s(1.0)]).unwrap();
        for h in [0.1, 0.03] {
            let g = Grid::uniform(2.0, h, &[]).unwrap();
            let y = play(&s(0.0), &ramp(), &unit_interval(), &g).unwrap().trajectory;
            assert!(d_inf(&y, &exact).unwrap() <= 2.0 * h);
        }
    }

    #[test]
    fn scalar_jump_play() {
        let g = Grid::uniform(1.0, 0.1, &[]).unwrap();
        let y = play(&s(0.0), &jump(), &unit_interval(), &g).unwrap().trajectory;
        assert_eq!(y.left_limit(0.5).unwrap(), s(0.0));
        assert_eq!(y.eval(0.5).unwrap(), s(2.0));
        let r = play_via_reparam(&s(0.0), &jump(), &unit_interval(), &g).unwrap().trajectory;
        assert!((r.eval(0.5).unwrap()[0] - 2.0).abs() < 1e-12);
        assert_eq!(r.left_limit(0.5).unwrap(), s(0.0));
    }

    #[test]
    fn constant_input_gives_constant_output() {
        let u = BVPath::constant(1.0, s(0.7)).unwrap();
        let g = Grid::uniform(1.0, 0.25, &[]).unwrap();
        for out in [
            play(&s(0.5), &u, &unit_interval(), &g).unwrap(),
            play_via_reparam(&s(0.5), &u, &unit_interval(), &g).unwrap(),
        ] {
            assert_eq!(out.trajectory.total_variation(), 0.0);
            assert!((out.trajectory.eval(0.6).unwrap()[0] - 0.2).abs() < 1e-15);
        }
    }

    #[test]
    fn stop_and_q_on_ramp() {
        let g = Grid::uniform(2.0, 0.01, &[]).unwrap();
        let y = play(&s(0.0), &ramp(), &unit_interval(), &g).unwrap().trajectory;
        let (st, q) = stop_and_q(&s(0.0), &ramp(), &y).unwrap();
        for t in [0.3, 1.0, 1.7] {
            let yt = (t - 1.0f64).max(0.0);
            assert!((st.eval(t).unwrap()[0] - t.min(1.0)).abs() < 0.02);
            assert!((q.eval(t).unwrap()[0] - (2.0 * yt - t)).abs() < 0.04);
        }
        assert_eq!(linear_combination(1.0, &st, 1.0, &y).unwrap().eval(1.3).unwrap(), ramp().eval(1.3).unwrap());
    }

    #[test]
    fn play_and_reparam_agree_on_continuous_input() {
        let u = BVPath::polyline(&[0.0, 1.0, 2.0], &[s(0.0), s(2.5), s(-1.0)]).unwrap();
        let g = Grid::uniform(2.0, 0.01, &[]).unwrap();
        let a = play(&s(0.0), &u, &unit_interval(), &g).unwrap().trajectory;
        let b = play_via_reparam(&s(0.0), &u, &unit_interval(), &g).unwrap().trajectory;
        assert!(d_inf(&a, &b).unwrap() <= 10.0 * 0.01);
    }

    #[test]
    fn invalid_initial_state() {
        let g = Grid::uniform(2.0, 0.1, &[]).unwrap();
        assert!(matches!(play(&s(1.5), &ramp(), &unit_interval(), &g), Err(Error::InvalidInitialState { .. })));
    }

    #[test]
    fn rate_transform_of_ramp() {
        let u = BVPath::polyline(&[0.0, 1.0], &[s(0.0), s(1.0)]).unwrap();
        assert_eq!(rate_transform(&u, &NondecreasingMap::identity(1.0).unwrap()).unwrap(), u);
        let gamma = NondecreasingMap::from_fn(1.0, 1.0, 100, |t| t * t).unwrap();
        let v = rate_transform(&u, &gamma).unwrap();
        assert!((v.eval(0.5).unwrap()[0] - 0.25).abs() < 1e-4);
        let jumpy =
            NondecreasingMap::new(BVPath::builder(s(0.0)).hold_to(0.5).jump(s(1.0)).hold_to(1.0).build().unwrap(), 1.0)
                .unwrap();
        assert!(matches!(rate_transform(&u, &jumpy), Err(Error::JumpyReparametrization(_))));
    }
}
