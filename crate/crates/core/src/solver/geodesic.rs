use crate::bvpath::{BVPath, Node};
use crate::error::{Error, Result};
use crate::geometry::{hausdorff_distance, project, ConvexSet, Point};

/// Tolerance for `u0 ∈ A`.
pub const INITIAL_TOL: f64 = 1e-9;

/// Switching time `t0 ∈ [0, 1]` of the geodesic sweep from `u0 ∈ A`:
/// `|u0 - Proj_B(u0)| = (1 - t0) ρ`, and `t0 = 1` when `ρ = 0`.
pub fn switching_time(a: &ConvexSet, b: &ConvexSet, u0: &Point) -> Result<f64> {
    let rho = hausdorff_distance(a, b)?;
    let d = u0.dist(&project(b, u0)?);
    Ok(if rho == 0.0 { 1.0 } else { (1.0 - d / rho).clamp(0.0, 1.0) })
}

/// Exact solution on `[0, 1]` of the sweeping process driven by the geodesic
/// `t ↦ (A + D_{tρ}) ∩ (B + D_{(1-t)ρ})` from `u0 ∈ A`: it rests at `u0` until
/// `t0` and then moves affinely to `Proj_B(u0)`.
pub fn geodesic_solution(a: &ConvexSet, b: &ConvexSet, u0: &Point) -> Result<BVPath> {
    let distance = a.distance(u0)?;
    if distance > INITIAL_TOL {
        return Err(Error::InvalidInitialState { distance });
    }
    let t0 = switching_time(a, b, u0)?;
    let end = project(b, u0)?;
    let mut nodes = vec![Node::continuous(0.0, u0.clone())];
    if t0 > 0.0 && t0 < 1.0 {
        nodes.push(Node::continuous(t0, u0.clone()));
    }
    nodes.push(Node::continuous(1.0, if t0 < 1.0 { end } else { u0.clone() }));
    BVPath::new(1.0, nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bvpath::d_inf;
    use crate::reparam::SetPath;
    use crate::solver::{catching_up, Grid};

    fn p(c: &[f64]) -> Point {
        Point::from_slice(c)
    }

    #[test]
    fn singletons_move_affinely() {
        let a = ConvexSet::point(p(&[0.0, 0.0]));
        let b = ConvexSet::point(p(&[2.0, 0.0]));
        let y = geodesic_solution(&a, &b, &p(&[0.0, 0.0])).unwrap();
        assert_eq!(y.eval(0.25).unwrap(), p(&[0.5, 0.0]));
        assert_eq!(y.eval(1.0).unwrap(), p(&[2.0, 0.0]));
    }

    #[test]
    fn common_interior_point_never_moves() {
        let a = ConvexSet::ball(p(&[0.0, 0.0]), 1.0).unwrap();
        let b = ConvexSet::ball(p(&[1.0, 0.0]), 1.0).unwrap();
        let y = geodesic_solution(&a, &b, &p(&[0.5, 0.0])).unwrap();
        assert_eq!(y, BVPath::constant(1.0, p(&[0.5, 0.0])).unwrap());
    }

    #[test]
    fn equal_sets_give_constant_solution() {
        let a = ConvexSet::interval(-1.0, 1.0).unwrap();
        let y = geodesic_solution(&a, &a, &Point::scalar(0.3)).unwrap();
        assert_eq!(y.total_variation(), 0.0);
    }

    #[test]
    fn far_point_matches_catching_up() {
        let a = ConvexSet::ball(p(&[0.0, 0.0]), 1.0).unwrap();
        let b = ConvexSet::ball(p(&[1.0, 0.0]), 1.0).unwrap();
        let u0 = p(&[-1.0, 0.0]);
        let y = geodesic_solution(&a, &b, &u0).unwrap();
        assert_eq!(y.eval(0.5).unwrap(), p(&[-0.5, 0.0]));
        let c = SetPath::geodesic(a, b).unwrap();
        let mut errs = Vec::new();
        for h in [0.02, 0.01] {
            let out = catching_up(&c, &u0, &Grid::uniform(1.0, h, &[]).unwrap()).unwrap();
            errs.push(d_inf(&out.trajectory, &y).unwrap());
        }
        assert!(errs.iter().all(|&e| e <= 5.0 * 0.02), "{errs:?}");
    }

    #[test]
    fn rejects_initial_state_outside_a() {
        let a = ConvexSet::interval(-1.0, 1.0).unwrap();
        let b = ConvexSet::interval(0.0, 2.0).unwrap();
        assert!(matches!(geodesic_solution(&a, &b, &Point::scalar(3.0)), Err(Error::InvalidInitialState { .. })));
    }
}
