use std::sync::Arc;

use super::point::Point;
use super::set::ConvexSet;
use crate::error::{Error, Result};

/// Hausdorff distance between two sets of a supported pair class.
///
/// Supported: reflections `u - Z`, `v - Z` of a common base (distance `|u - v|`),
/// pairs of balls, pairs of boxes (points count as either), and identical sets.
/// Everything else is rejected with `UnsupportedPair`.
pub fn hausdorff_distance(a: &ConvexSet, b: &ConvexSet) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    if let (ConvexSet::Translate { base: za, shift: u }, ConvexSet::Translate { base: zb, shift: v }) = (a, b) {
        if Arc::ptr_eq(za, zb) || za == zb {
            return Ok(u.dist(v));
        }
    }
    if a == b {
        return Ok(0.0);
    }
    let (na, nb) = (a.normalize(), b.normalize());
    if let (Some((c1, r1)), Some((c2, r2))) = (as_ball(&na), as_ball(&nb)) {
        return Ok(c1.dist(c2) + (r1 - r2).abs());
    }
    if let (Some((l1, u1)), Some((l2, u2))) = (as_box(&na), as_box(&nb)) {
        return Ok(directed_box(&l1, &u1, &l2, &u2).max(directed_box(&l2, &u2, &l1, &u1)));
    }
    Err(Error::UnsupportedPair(format!("{} vs {}", kind(a), kind(b))))
}

fn as_ball(s: &ConvexSet) -> Option<(&Point, f64)> {
    match s {
        ConvexSet::Ball { center, radius } => Some((center, *radius)),
        ConvexSet::Box { lower, upper } if lower == upper => Some((lower, 0.0)),
        _ => None,
    }
}

fn as_box(s: &ConvexSet) -> Option<(Point, Point)> {
    match s {
        ConvexSet::Box { lower, upper } => Some((lower.clone(), upper.clone())),
        ConvexSet::Ball { center, radius } if *radius == 0.0 => Some((center.clone(), center.clone())),
        _ => None,
    }
}

/// `sup_{a ∈ A} dist(a, B)` for boxes: the supremum is separable across
/// coordinates and attained at a vertex of A.
fn directed_box(la: &Point, ua: &Point, lb: &Point, ub: &Point) -> f64 {
    (0..la.dim())
        .map(|i| {
            let e = (lb[i] - la[i]).max(ua[i] - ub[i]).max(0.0);
            e * e
        })
        .sum::<f64>()
        .sqrt()
}

fn kind(s: &ConvexSet) -> &'static str {
    match s {
        ConvexSet::Ball { .. } => "ball",
        ConvexSet::Box { .. } => "box",
        ConvexSet::HalfSpace(_) => "halfspace",
        ConvexSet::Polyhedron { .. } => "polyhedron",
        ConvexSet::Translate { .. } => "translate",
        ConvexSet::Dilation { .. } => "dilation",
        ConvexSet::DilationIntersection { .. } => "dilation_intersection",
    }
}

/// Point at parameter `t` of the geodesic `(A + D_{tρ}) ∩ (B + D_{(1-t)ρ})`
/// joining `A` to `B`, with `ρ = d_H(A, B)`.
pub fn geodesic_set(a: &ConvexSet, b: &ConvexSet, t: f64) -> Result<ConvexSet> {
    let rho = hausdorff_distance(a, b)?;
    geodesic_set_with_distance(a, b, rho, t)
}

/// As [`geodesic_set`] with a precomputed `ρ`.
pub fn geodesic_set_with_distance(a: &ConvexSet, b: &ConvexSet, rho: f64, t: f64) -> Result<ConvexSet> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Invalid(format!("geodesic parameter {t} outside [0, 1]")));
    }
    if rho == 0.0 || t == 0.0 {
        return Ok(a.clone());
    }
    if t == 1.0 {
        return Ok(b.clone());
    }
    Ok(ConvexSet::DilationIntersection {
        a: Arc::new(a.clone()),
        ra: t * rho,
        b: Arc::new(b.clone()),
        rb: (1.0 - t) * rho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::project;

    fn p(c: &[f64]) -> Point {
        Point::from_slice(c)
    }

    #[test]
    fn translates_of_common_base() {
        let z = ConvexSet::cuboid(p(&[-1.0, -2.0]), p(&[1.0, 0.5])).unwrap();
        let a = ConvexSet::translate(z.clone(), p(&[0.0, 0.0])).unwrap();
        let b = ConvexSet::translate(z, p(&[3.0, 4.0])).unwrap();
        assert_eq!(hausdorff_distance(&a, &b).unwrap(), 5.0);
    }

    #[test]
    fn balls() {
        let a = ConvexSet::ball(p(&[0.0, 0.0]), 1.0).unwrap();
        assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
        let b = ConvexSet::ball(p(&[3.0, 0.0]), 1.0).unwrap();
        let d = hausdorff_distance(&a, &b).unwrap();
        assert_eq!(d, 3.0);
        // oracle: sup over dense boundary samples of the distance to the other ball
        let n = 4000;
        let sup = (0..n)
            .map(|k| {
                let th = std::f64::consts::TAU * k as f64 / n as f64;
                let q = p(&[th.cos(), th.sin()]);
                q.dist(&project(&b, &q).unwrap())
            })
            .fold(0.0, f64::max);
        assert!((sup - d).abs() < 1e-6);
    }

    #[test]
    fn boxes_against_vertex_enumeration() {
        let a = ConvexSet::cuboid(p(&[0.0, 0.0]), p(&[2.0, 1.0])).unwrap();
        let b = ConvexSet::cuboid(p(&[1.0, -1.0]), p(&[1.5, 3.0])).unwrap();
        let d = hausdorff_distance(&a, &b).unwrap();
        let verts =
            |l: [f64; 2], u: [f64; 2]| vec![p(&[l[0], l[1]]), p(&[l[0], u[1]]), p(&[u[0], l[1]]), p(&[u[0], u[1]])];
        let sup = |vs: Vec<Point>, other: &ConvexSet| {
            vs.iter().map(|v| v.dist(&project(other, v).unwrap())).fold(0.0, f64::max)
        };
        let expected = sup(verts([0.0, 0.0], [2.0, 1.0]), &b).max(sup(verts([1.0, -1.0], [1.5, 3.0]), &a));
        assert!((d - expected).abs() < 1e-14);
    }

    #[test]
    fn unsupported_pair_is_rejected() {
        let a = ConvexSet::ball(p(&[0.0, 0.0]), 1.0).unwrap();
        let b = ConvexSet::halfspace(p(&[1.0, 0.0]), 0.0).unwrap();
        assert!(matches!(hausdorff_distance(&a, &b), Err(Error::UnsupportedPair(_))));
    }

    #[test]
    fn geodesic_endpoints_and_singletons() {
        let a = ConvexSet::point(p(&[0.0, 0.0]));
        let b = ConvexSet::point(p(&[2.0, 0.0]));
        assert_eq!(geodesic_set(&a, &b, 0.0).unwrap(), a);
        assert_eq!(geodesic_set(&a, &b, 1.0).unwrap(), b);
        let mid = geodesic_set(&a, &b, 0.5).unwrap();
        for x in [p(&[5.0, 1.0]), p(&[-3.0, 0.0]), p(&[1.0, 7.0])] {
            assert!(project(&mid, &x).unwrap().dist(&p(&[1.0, 0.0])) < 1e-12);
        }
        assert!(geodesic_set(&a, &b, 1.5).is_err());
        // degenerate rho = 0
        assert_eq!(geodesic_set(&a, &a, 0.3).unwrap(), a);
    }

    #[test]
    fn geodesic_between_unit_balls_contains_band() {
        let a = ConvexSet::ball(p(&[0.0, 0.0]), 1.0).unwrap();
        let b = ConvexSet::ball(p(&[1.0, 0.0]), 1.0).unwrap();
        let g = geodesic_set(&a, &b, 0.5).unwrap();
        // oracle: grid membership in both dilated balls
        for i in -20..=20 {
            for j in -20..=20 {
                let x = p(&[0.5 + 0.1 * i as f64, 0.1 * j as f64]);
                let margin = (1.5 - x.norm()).min(1.5 - x.dist(&p(&[1.0, 0.0])));
                if margin.abs() < 1e-9 {
                    continue;
                }
                let inside = margin > 0.0;
                let member = g.distance(&x).unwrap() <= 1e-12;
                assert_eq!(inside, member, "{x:?}");
            }
        }
        for y in [-1.0, 0.0, 1.0] {
            assert!(g.contains(&p(&[0.5, y]), 1e-12).unwrap());
        }
    }
}
