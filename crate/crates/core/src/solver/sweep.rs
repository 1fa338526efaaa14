use serde::{Deserialize, Serialize};

use super::grid::Grid;
use crate::bvpath::{BVPath, Node};
use crate::error::Result;
use crate::geometry::Point;
use crate::reparam::SetPath;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Catching-up directly in physical time, one-shot projection at jumps.
    Direct,
    /// Catching-up on the arc-length reparametrized set path, composed back.
    Reparam,
}

/// Diagnostics of a discrete trajectory against its moving set.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// `max(dist(y(τ-), C(τ-)), dist(y(τ), C(τ)))` per trajectory node.
    pub constraint: Vec<f64>,
    /// `|Proj_{C(τ_{k+1})}(y_k) - y_{k+1}|` per step; jumps count as steps.
    pub normal_cone: Vec<f64>,
    pub max_constraint: f64,
    pub max_normal_cone: f64,
}

impl Residuals {
    /// Evaluates the residuals of `y` against `c` at the nodes of `y`.
    pub fn compute(c: &SetPath, y: &BVPath) -> Result<Self> {
        let mut constraint = Vec::with_capacity(y.nodes().len());
        let mut normal_cone = Vec::with_capacity(y.nodes().len());
        let mut prev: Option<&Point> = None;
        for n in y.nodes() {
            let left_set_proj = c.project_left(n.t, &n.left)?;
            let mut viol = n.left.dist(&left_set_proj);
            if n.left != n.right {
                viol = viol.max(n.right.dist(&c.project(n.t, &n.right)?));
            }
            constraint.push(viol);
            if let Some(p) = prev {
                normal_cone.push(c.project_left(n.t, p)?.dist(&n.left));
            }
            if n.left != n.right {
                normal_cone.push(c.project(n.t, &n.left)?.dist(&n.right));
            }
            prev = Some(&n.right);
        }
        let max = |v: &[f64]| v.iter().copied().fold(0.0, f64::max);
        Ok(Residuals { max_constraint: max(&constraint), max_normal_cone: max(&normal_cone), constraint, normal_cone })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepOutput {
    pub trajectory: BVPath,
    pub residuals: Residuals,
    /// Largest grid step used.
    pub h: f64,
    pub method: Method,
}

/// Moreau's catching-up scheme `y_{k+1} = Proj_{C(τ_{k+1})}(y_k)` started from
/// `Proj_{C(0)}(y0)`.
///
/// The grid is refined by the breakpoints of `c`. At a jump time `τ` of `c`
/// the step is split: `y(τ-) = Proj_{C(τ-)}(y_k)`, then `y(τ) = Proj_{C(τ)}(y(τ-))`.
/// The trajectory is affine between grid times.
pub fn catching_up(c: &SetPath, y0: &Point, grid: &Grid) -> Result<SweepOutput> {
    let trajectory = catching_up_path(c, y0, grid)?;
    let residuals = Residuals::compute(c, &trajectory)?;
    Ok(SweepOutput { trajectory, residuals, h: grid.h(), method: Method::Direct })
}

pub(crate) fn catching_up_path(c: &SetPath, y0: &Point, grid: &Grid) -> Result<BVPath> {
    let grid = grid.including(&c.breakpoints())?;
    let jumps = c.jump_times();
    let mut y = c.project(0.0, y0)?;
    let mut nodes = Vec::with_capacity(grid.len());
    nodes.push(Node::continuous(0.0, y.clone()));
    for &t in &grid.times()[1..] {
        let left = c.project_left(t, &y)?;
        let right =
            if jumps.binary_search_by(|s| s.total_cmp(&t)).is_ok() { c.project(t, &left)? } else { left.clone() };
        y = right.clone();
        nodes.push(Node { t, left, right });
    }
    BVPath::new(c.horizon(), nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bvpath::d_inf;
    use crate::geometry::ConvexSet;

    fn p(c: &[f64]) -> Point {
        Point::from_slice(c)
    }

    #[test]
    fn constant_set_does_not_sweep() {
        let k = ConvexSet::ball(p(&[0.0, 0.0]), 1.0).unwrap();
        let c = SetPath::constant(k, 1.0).unwrap();
        let out = catching_up(&c, &p(&[3.0, 4.0]), &Grid::uniform(1.0, 0.1, &[]).unwrap()).unwrap();
        let expected = BVPath::constant(1.0, p(&[0.6, 0.8])).unwrap();
        assert!(d_inf(&out.trajectory, &expected).unwrap() < 1e-15);
        assert_eq!(out.residuals.max_constraint, 0.0);
    }

    /// C(t) = Ball((t, 0), 1) pushes y0 = (-1, 0) at unit speed: y(t) = (t - 1, 0).
    #[test]
    fn moving_ball_pushes_at_unit_speed() {
        let u = BVPath::polyline(&[0.0, 1.0], &[p(&[0.0, 0.0]), p(&[1.0, 0.0])]).unwrap();
        let c = SetPath::translate(u, ConvexSet::ball(p(&[0.0, 0.0]), 1.0).unwrap()).unwrap();
        let exact = BVPath::polyline(&[0.0, 1.0], &[p(&[-1.0, 0.0]), p(&[0.0, 0.0])]).unwrap();
        let mut errs = Vec::new();
        for h in [0.1, 0.05, 0.025] {
            let out = catching_up(&c, &p(&[-1.0, 0.0]), &Grid::uniform(1.0, h, &[]).unwrap()).unwrap();
            errs.push(d_inf(&out.trajectory, &exact).unwrap());
        }
        // head-on push is reproduced exactly on every grid
        assert!(errs.iter().all(|&e| e < 1e-12), "{errs:?}");
    }

    #[test]
    fn off_axis_push_converges_at_first_order() {
        // y0 sits on the rim at 90 degrees from the direction of motion, so the
        // contact point rotates and catching-up lags by O(h)
        let u = BVPath::polyline(&[0.0, 1.0], &[p(&[0.0, 0.0]), p(&[1.0, 0.0])]).unwrap();
        let c = SetPath::translate(u, ConvexSet::ball(p(&[0.0, 0.0]), 1.0).unwrap()).unwrap();
        let fine = catching_up(&c, &p(&[0.0, 1.0]), &Grid::uniform(1.0, 1e-5, &[]).unwrap()).unwrap();
        let mut errs = Vec::new();
        for h in [0.02, 0.01, 0.005] {
            let out = catching_up(&c, &p(&[0.0, 1.0]), &Grid::uniform(1.0, h, &[]).unwrap()).unwrap();
            errs.push(d_inf(&out.trajectory, &fine.trajectory).unwrap());
        }
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            assert!((1.4..=2.6).contains(&ratio), "{errs:?}");
        }
    }

    #[test]
    fn jump_of_the_set_is_a_projection() {
        let u = BVPath::builder(p(&[0.0, 0.0])).hold_to(0.4).jump(p(&[3.0, 1.0])).hold_to(1.0).build().unwrap();
        let z = ConvexSet::ball(p(&[0.0, 0.0]), 1.0).unwrap();
        let c = SetPath::translate(u, z).unwrap();
        let out = catching_up(&c, &p(&[0.0, 0.0]), &Grid::uniform(1.0, 0.1, &[]).unwrap()).unwrap();
        let y = &out.trajectory;
        assert_eq!(y.jump_times(), vec![0.4]);
        let before = y.left_limit(0.4).unwrap();
        assert_eq!(y.eval(0.4).unwrap(), c.project(0.4, &before).unwrap());
        assert!(out.residuals.max_normal_cone < 1e-15);
    }
}
