use super::point::Point;
use super::set::ConvexSet;
use crate::error::{Error, Result};

/// Stopping threshold on the movement of Dykstra iterates and of their
/// correction terms over one sweep.
pub const TOL_PROJ: f64 = 1e-10;
/// Maximum number of Dykstra sweeps.
pub const MAX_ITER: usize = 10_000;

/// Projector onto one member of an intersection.
pub(crate) type Projector<'a> = &'a dyn Fn(&Point) -> Result<Point>;

pub(crate) enum DykstraOutcome {
    Converged(Point),
    /// Hit the iteration cap; carries the last iterate and its final step.
    Stalled(Point, f64),
}

/// Dykstra's alternating projection onto the intersection of the sets whose
/// projectors are given.
pub(crate) fn dykstra(x: &Point, projectors: &[Projector], tol: f64, max_iter: usize) -> Result<DykstraOutcome> {
    let mut current = x.clone();
    let mut increments = vec![Point::zeros(x.dim()); projectors.len()];
    let mut step = f64::INFINITY;
    for _ in 0..max_iter {
        // the iterate can return to its start while the corrections still move
        let start = current.clone();
        let mut drift = 0.0f64;
        for (proj, inc) in projectors.iter().zip(increments.iter_mut()) {
            let shifted = &current + inc;
            let next = proj(&shifted)?;
            let updated = &shifted - &next;
            drift = drift.max(updated.dist(inc));
            *inc = updated;
            current = next;
        }
        step = start.dist(&current).max(drift);
        if step < tol {
            return Ok(DykstraOutcome::Converged(current));
        }
    }
    Ok(DykstraOutcome::Stalled(current, step))
}

fn dykstra_strict(x: &Point, projectors: &[Projector]) -> Result<Point> {
    match dykstra(x, projectors, TOL_PROJ, MAX_ITER)? {
        DykstraOutcome::Converged(p) => Ok(p),
        DykstraOutcome::Stalled(_, last_step) => Err(Error::NonConvergence { iterations: MAX_ITER, last_step }),
    }
}

/// Metric projection of `x` onto `k`.
///
/// Balls, boxes, half-spaces and their reflections/dilations are projected in
/// closed form; so are intersections of two balls and of two boxes. Polyhedra
/// and the remaining dilation intersections go through Dykstra's algorithm.
pub fn project(k: &ConvexSet, x: &Point) -> Result<Point> {
    x.check_dim(k.dim())?;
    match k {
        ConvexSet::Ball { center, radius } => Ok(project_ball(center, *radius, x)),
        ConvexSet::Box { lower, upper } => Ok(project_box(lower, upper, x)),
        ConvexSet::HalfSpace(h) => Ok(h.project(x)),
        ConvexSet::Polyhedron { halfspaces } => {
            if let [h] = halfspaces.as_slice() {
                return Ok(h.project(x));
            }
            let projectors: Vec<_> = halfspaces.iter().map(|h| move |p: &Point| Ok(h.project(p))).collect();
            let refs: Vec<Projector> = projectors.iter().map(|p| p as Projector).collect();
            dykstra_strict(x, &refs)
        }
        ConvexSet::Translate { base, shift } => {
            // y ∈ shift - Z closest to x  <=>  shift - y = Proj_Z(shift - x)
            let inner = project(base, &(shift - x))?;
            Ok(shift - &inner)
        }
        ConvexSet::Dilation { base, radius } => project_dilation(base, *radius, x),
        ConvexSet::DilationIntersection { a, ra, b, rb } => project_dilation_intersection(a, *ra, b, *rb, x),
    }
}

/// Projection onto `base + D_r`, given the projection onto `base`.
pub fn project_dilation(base: &ConvexSet, r: f64, x: &Point) -> Result<Point> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::Invalid(format!("dilation radius must be >= 0, got {r}")));
    }
    let p = project(base, x)?;
    let d = x.dist(&p);
    if d <= r {
        Ok(x.clone())
    } else {
        Ok(p.lerp(x, r / d))
    }
}

fn project_ball(center: &Point, radius: f64, x: &Point) -> Point {
    let d = x.dist(center);
    if d <= radius {
        x.clone()
    } else {
        center.lerp(x, radius / d)
    }
}

fn project_box(lower: &Point, upper: &Point, x: &Point) -> Point {
    let lifted = x.zip_map(lower, f64::max);
    lifted.zip_map(upper, f64::min)
}

fn project_dilation_intersection(a: &ConvexSet, ra: f64, b: &ConvexSet, rb: f64, x: &Point) -> Result<Point> {
    let first = ConvexSet::Dilation { base: a.clone().into(), radius: ra }.normalize();
    let second = ConvexSet::Dilation { base: b.clone().into(), radius: rb }.normalize();
    match (&first, &second) {
        (ConvexSet::Ball { center: c1, radius: r1 }, ConvexSet::Ball { center: c2, radius: r2 }) => {
            Ok(project_lens(c1, *r1, c2, *r2, x))
        }
        (ConvexSet::Box { lower: l1, upper: u1 }, ConvexSet::Box { lower: l2, upper: u2 }) => {
            let lower = l1.zip_map(l2, f64::max);
            let upper = u1.zip_map(u2, f64::min);
            // touching boxes may cross by rounding; collapse to the midpoint
            let mid = lower.zip_map(&upper, |l, u| 0.5 * (l + u));
            let lower = lower.zip_map(&mid, f64::min);
            let upper = upper.zip_map(&mid, f64::max);
            Ok(project_box(&lower, &upper, x))
        }
        _ => {
            let pa = |p: &Point| project(&first, p);
            let pb = |p: &Point| project(&second, p);
            dykstra_strict(x, &[&pa, &pb])
        }
    }
}

/// Projection onto the intersection of two balls.
///
/// When neither single-ball projection lies in the other ball, the minimizer
/// sits on both spheres, i.e. on the (d-2)-sphere where they meet.
fn project_lens(c1: &Point, r1: f64, c2: &Point, r2: f64, x: &Point) -> Point {
    let in1 = |p: &Point| p.dist(c1) <= r1 * (1.0 + 1e-12) + 1e-14;
    let in2 = |p: &Point| p.dist(c2) <= r2 * (1.0 + 1e-12) + 1e-14;
    if in1(x) && in2(x) {
        return x.clone();
    }
    let p1 = project_ball(c1, r1, x);
    if in2(&p1) {
        return p1;
    }
    let p2 = project_ball(c2, r2, x);
    if in1(&p2) {
        return p2;
    }
    let axis = c2 - c1;
    let dist = axis.norm();
    if dist == 0.0 {
        // concentric: the smaller ball is the intersection
        return if r1 <= r2 { p1 } else { p2 };
    }
    let e = &axis * (1.0 / dist);
    let along = ((dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist)).clamp(-r1, r1);
    let rim = (r1 * r1 - along * along).max(0.0).sqrt();
    let mid = c1 + &(&e * along);
    let offset = x - &mid;
    let radial = &offset - &(&e * offset.dot(&e));
    let rn = radial.norm();
    if rim == 0.0 {
        return mid;
    }
    if rn > 0.0 {
        return &mid + &(&radial * (rim / rn));
    }
    // x on the axis: every rim point is equidistant, pick one orthogonal to e
    let k = (0..x.dim()).min_by(|&i, &j| e[i].abs().total_cmp(&e[j].abs())).unwrap_or(0);
    let mut coords = vec![0.0; x.dim()];
    coords[k] = 1.0;
    let dir = Point::from_slice(&coords);
    let ortho = &dir - &(&e * dir.dot(&e));
    let on = ortho.norm();
    if on == 0.0 {
        return mid;
    }
    &mid + &(&ortho * (rim / on))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::set::HalfSpace;
    use approx::assert_abs_diff_eq;

    fn p(c: &[f64]) -> Point {
        Point::from_slice(c)
    }

    #[test]
    fn closed_form_examples() {
        let ball = ConvexSet::ball(p(&[0.0, 0.0]), 1.0).unwrap();
        assert_eq!(project(&ball, &p(&[3.0, 0.0])).unwrap(), p(&[1.0, 0.0]));
        let bx = ConvexSet::cuboid(p(&[-1.0, -1.0]), p(&[1.0, 1.0])).unwrap();
        assert_eq!(project(&bx, &p(&[0.5, 2.0])).unwrap(), p(&[0.5, 1.0]));
    }

    /// Brute-force oracle: minimize |x - y| over a dense grid of the feasible set.
    fn grid_argmin(x: &Point, lo: f64, hi: f64, n: usize, feasible: impl Fn(&Point) -> bool) -> Point {
        let mut best = (f64::INFINITY, Point::zeros(2));
        for i in 0..=n {
            for j in 0..=n {
                let y = p(&[lo + (hi - lo) * i as f64 / n as f64, lo + (hi - lo) * j as f64 / n as f64]);
                if feasible(&y) {
                    let d = x.dist(&y);
                    if d < best.0 {
                        best = (d, y);
                    }
                }
            }
        }
        best.1
    }

    #[test]
    fn quadrant_polyhedron_matches_grid_search() {
        let k = ConvexSet::polyhedron(vec![
            HalfSpace::new(p(&[1.0, 0.0]), 0.0).unwrap(),
            HalfSpace::new(p(&[0.0, 1.0]), 0.0).unwrap(),
        ])
        .unwrap();
        let x = p(&[1.0, 1.0]);
        let y = project(&k, &x).unwrap();
        let oracle = grid_argmin(&x, -2.0, 2.0, 400, |q| q[0] <= 0.0 && q[1] <= 0.0);
        assert_abs_diff_eq!(y[0], oracle[0], epsilon = 1e-2);
        assert_abs_diff_eq!(y[1], oracle[1], epsilon = 1e-2);
        assert!(y.norm() < 1e-9);
    }

    #[test]
    fn dilation_examples() {
        let origin = ConvexSet::point(p(&[0.0, 0.0]));
        assert_eq!(project_dilation(&origin, 1.0, &p(&[3.0, 0.0])).unwrap(), p(&[1.0, 0.0]));
        let unit = ConvexSet::ball(p(&[0.0, 0.0]), 1.0).unwrap();
        let x = p(&[1.2, 0.3]);
        assert_eq!(project_dilation(&unit, 0.5, &x).unwrap(), x);

        let square = ConvexSet::cuboid(p(&[0.0, 0.0]), p(&[1.0, 1.0])).unwrap();
        let x = p(&[2.0, 2.0]);
        let y = project_dilation(&square, 1.0, &x).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert_abs_diff_eq!(y[0], 1.0 + s, epsilon = 1e-14);
        assert_abs_diff_eq!(y[1], 1.0 + s, epsilon = 1e-14);
        // oracle: dense search over {q : dist(q, square) <= 1}
        let dist_sq = |q: &Point| {
            let dx = (q[0] - q[0].clamp(0.0, 1.0)).abs();
            let dy = (q[1] - q[1].clamp(0.0, 1.0)).abs();
            (dx * dx + dy * dy).sqrt()
        };
        let oracle = grid_argmin(&x, -1.0, 2.5, 700, |q| dist_sq(q) <= 1.0);
        assert_abs_diff_eq!(y[0], oracle[0], epsilon = 1e-2);
        assert_abs_diff_eq!(y[1], oracle[1], epsilon = 1e-2);
    }

    #[test]
    fn lens_projection_agrees_with_dykstra() {
        let a = ConvexSet::ball(p(&[0.0, 0.0]), 1.0).unwrap();
        let b = ConvexSet::ball(p(&[1.5, 0.5]), 1.2).unwrap();
        for x in [p(&[3.0, 3.0]), p(&[-2.0, 0.1]), p(&[0.7, 2.0]), p(&[0.8, -1.5])] {
            let exact = project_lens(&p(&[0.0, 0.0]), 1.0, &p(&[1.5, 0.5]), 1.2, &x);
            let pa = |q: &Point| project(&a, q);
            let pb = |q: &Point| project(&b, q);
            let iterative = dykstra_strict(&x, &[&pa, &pb]).unwrap();
            assert!(exact.dist(&iterative) < 1e-7, "{exact:?} vs {iterative:?}");
        }
    }

    #[test]
    fn tangent_lens_is_a_point() {
        let y = project_lens(&p(&[0.0, 0.0]), 1.0, &p(&[2.0, 0.0]), 1.0, &p(&[5.0, 3.0]));
        assert!(y.dist(&p(&[1.0, 0.0])) < 1e-12);
    }
}
