use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::point::Point;
use super::projection::{dykstra, DykstraOutcome, Projector};
use crate::error::{invalid, Error, Result};

/// Constraint violation above which a polyhedron is declared empty.
const FEASIBILITY_TOL: f64 = 1e-7;

/// Closed half-space `{x : <normal, x> <= offset}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: Point,
    pub offset: f64,
}

impl HalfSpace {
    pub fn new(normal: Point, offset: f64) -> Result<Self> {
        let h = HalfSpace { normal, offset };
        h.validate()?;
        Ok(h)
    }

    fn validate(&self) -> Result<()> {
        if self.normal.is_zero() {
            return invalid("half-space normal must be nonzero");
        }
        if !self.offset.is_finite() {
            return invalid("half-space offset must be finite");
        }
        Ok(())
    }

    /// Signed distance of `x` beyond the boundary (positive outside).
    pub fn violation(&self, x: &Point) -> f64 {
        (self.normal.dot(x) - self.offset) / self.normal.norm()
    }

    pub fn project(&self, x: &Point) -> Point {
        let excess = self.normal.dot(x) - self.offset;
        if excess <= 0.0 {
            x.clone()
        } else {
            x - &(&self.normal * (excess / self.normal.dot(&self.normal)))
        }
    }
}

/// Nonempty closed convex subset of ℝ^d in one of the supported representations.
///
/// `Translate { base, shift }` stands for the reflected copy `shift - base =
/// {shift - z : z ∈ base}`, which is the moving set `u(t) - Z` of the play
/// operator. `Dilation { base, radius }` is the Minkowski sum `base + D_radius`
/// with the closed ball `D_r`. `DilationIntersection` is `(a + D_ra) ∩ (b + D_rb)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", try_from = "ConvexSetRepr")]
pub enum ConvexSet {
    Ball {
        center: Point,
        radius: f64,
    },
    Box {
        lower: Point,
        upper: Point,
    },
    #[serde(rename = "halfspace")]
    HalfSpace(HalfSpace),
    Polyhedron {
        halfspaces: Vec<HalfSpace>,
    },
    Translate {
        base: Arc<ConvexSet>,
        shift: Point,
    },
    Dilation {
        base: Arc<ConvexSet>,
        radius: f64,
    },
    DilationIntersection {
        a: Arc<ConvexSet>,
        ra: f64,
        b: Arc<ConvexSet>,
        rb: f64,
    },
}

impl ConvexSet {
    pub fn ball(center: Point, radius: f64) -> Result<Self> {
        let s = ConvexSet::Ball { center, radius };
        s.validate()?;
        Ok(s)
    }

    pub fn point(p: Point) -> Self {
        ConvexSet::Ball { center: p, radius: 0.0 }
    }

    pub fn cuboid(lower: Point, upper: Point) -> Result<Self> {
        let s = ConvexSet::Box { lower, upper };
        s.validate()?;
        Ok(s)
    }

    /// The interval `[lo, hi]` of ℝ.
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        ConvexSet::cuboid(Point::new(vec![lo])?, Point::new(vec![hi])?)
    }

    pub fn halfspace(normal: Point, offset: f64) -> Result<Self> {
        Ok(ConvexSet::HalfSpace(HalfSpace::new(normal, offset)?))
    }

    /// Intersection of half-spaces; fails with `InfeasibleSet` when it is empty.
    pub fn polyhedron(halfspaces: Vec<HalfSpace>) -> Result<Self> {
        let s = ConvexSet::Polyhedron { halfspaces };
        s.validate()?;
        Ok(s)
    }

    /// `shift - base`.
    pub fn translate(base: ConvexSet, shift: Point) -> Result<Self> {
        let s = ConvexSet::Translate { base: Arc::new(base), shift };
        s.validate()?;
        Ok(s)
    }

    /// `base + D_radius`.
    pub fn dilation(base: ConvexSet, radius: f64) -> Result<Self> {
        let s = ConvexSet::Dilation { base: Arc::new(base), radius };
        s.validate()?;
        Ok(s)
    }

    /// `(a + D_ra) ∩ (b + D_rb)`. Nonemptiness is the caller's responsibility;
    /// [`geodesic_set`](super::geodesic_set) always produces a nonempty one.
    pub fn dilation_intersection(a: ConvexSet, ra: f64, b: ConvexSet, rb: f64) -> Result<Self> {
        let s = ConvexSet::DilationIntersection { a: Arc::new(a), ra, b: Arc::new(b), rb };
        s.validate()?;
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexSet::Ball { center, .. } => center.dim(),
            ConvexSet::Box { lower, .. } => lower.dim(),
            ConvexSet::HalfSpace(h) => h.normal.dim(),
            ConvexSet::Polyhedron { halfspaces } => halfspaces[0].normal.dim(),
            ConvexSet::Translate { shift, .. } => shift.dim(),
            ConvexSet::Dilation { base, .. } => base.dim(),
            ConvexSet::DilationIntersection { a, .. } => a.dim(),
        }
    }

    /// Checks dimensions, radii, box ordering and polyhedron feasibility.
    pub fn validate(&self) -> Result<()> {
        let check_radius = |r: f64| {
            if r.is_finite() && r >= 0.0 {
                Ok(())
            } else {
                invalid(format!("radius must be finite and >= 0, got {r}"))
            }
        };
        match self {
            ConvexSet::Ball { radius, .. } => check_radius(*radius),
            ConvexSet::Box { lower, upper } => {
                upper.check_dim(lower.dim())?;
                if lower.coords().iter().zip(upper.coords()).any(|(l, u)| l > u) {
                    return invalid("box lower corner must be <= upper corner");
                }
                Ok(())
            }
            ConvexSet::HalfSpace(h) => h.validate(),
            ConvexSet::Polyhedron { halfspaces } => {
                let Some(first) = halfspaces.first() else {
                    return invalid("polyhedron needs at least one half-space");
                };
                for h in halfspaces {
                    h.validate()?;
                    h.normal.check_dim(first.normal.dim())?;
                }
                check_feasible(halfspaces)
            }
            ConvexSet::Translate { base, shift } => {
                base.validate()?;
                shift.check_dim(base.dim())
            }
            ConvexSet::Dilation { base, radius } => {
                base.validate()?;
                check_radius(*radius)
            }
            ConvexSet::DilationIntersection { a, ra, b, rb } => {
                a.validate()?;
                b.validate()?;
                if a.dim() != b.dim() {
                    return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
                }
                check_radius(*ra)?;
                check_radius(*rb)
            }
        }
    }

    /// Rewrites the set so that no `Translate` remains and dilations of balls
    /// (and of intervals) are folded into the base. The represented set is unchanged.
    pub fn normalize(&self) -> ConvexSet {
        match self {
            ConvexSet::Translate { base, shift } => reflect(&base.normalize(), shift),
            ConvexSet::Dilation { base, radius } => dilate(base.normalize(), *radius),
            ConvexSet::DilationIntersection { a, ra, b, rb } => ConvexSet::DilationIntersection {
                a: Arc::new(a.normalize()),
                ra: *ra,
                b: Arc::new(b.normalize()),
                rb: *rb,
            },
            other => other.clone(),
        }
    }

    /// Euclidean distance from `x` to the set.
    pub fn distance(&self, x: &Point) -> Result<f64> {
        Ok(x.dist(&super::project(self, x)?))
    }

    pub fn contains(&self, x: &Point, tol: f64) -> Result<bool> {
        Ok(self.distance(x)? <= tol)
    }
}

fn reflect(base: &ConvexSet, shift: &Point) -> ConvexSet {
    match base {
        ConvexSet::Ball { center, radius } => ConvexSet::Ball { center: shift - center, radius: *radius },
        ConvexSet::Box { lower, upper } => ConvexSet::Box { lower: shift - upper, upper: shift - lower },
        ConvexSet::HalfSpace(h) => ConvexSet::HalfSpace(reflect_halfspace(h, shift)),
        ConvexSet::Polyhedron { halfspaces } => {
            ConvexSet::Polyhedron { halfspaces: halfspaces.iter().map(|h| reflect_halfspace(h, shift)).collect() }
        }
        // s - (X + D_r) = (s - X) + D_r because D_r is symmetric
        ConvexSet::Dilation { base, radius } => dilate(reflect(base, shift), *radius),
        ConvexSet::DilationIntersection { a, ra, b, rb } => ConvexSet::DilationIntersection {
            a: Arc::new(reflect(a, shift)),
            ra: *ra,
            b: Arc::new(reflect(b, shift)),
            rb: *rb,
        },
        ConvexSet::Translate { .. } => reflect(&base.normalize(), shift),
    }
}

fn reflect_halfspace(h: &HalfSpace, shift: &Point) -> HalfSpace {
    // <n, s - x> <= c  <=>  <-n, x> <= c - <n, s>
    HalfSpace { normal: -&h.normal, offset: h.offset - h.normal.dot(shift) }
}

fn dilate(base: ConvexSet, r: f64) -> ConvexSet {
    if r == 0.0 {
        return base;
    }
    match base {
        ConvexSet::Ball { center, radius } => ConvexSet::Ball { center, radius: radius + r },
        ConvexSet::Box { lower, upper } if lower.dim() == 1 => {
            ConvexSet::Box { lower: lower.map(|l| l - r), upper: upper.map(|u| u + r) }
        }
        ConvexSet::Dilation { base, radius } => ConvexSet::Dilation { base, radius: radius + r },
        other => ConvexSet::Dilation { base: Arc::new(other), radius: r },
    }
}

fn check_feasible(halfspaces: &[HalfSpace]) -> Result<()> {
    let start = Point::zeros(halfspaces[0].normal.dim());
    let projections: Vec<_> = halfspaces.iter().map(|h| move |x: &Point| Ok(h.project(x))).collect();
    let refs: Vec<Projector> = projections.iter().map(|p| p as Projector).collect();
    let x = match dykstra(&start, &refs, 1e-10, 10_000)? {
        DykstraOutcome::Converged(x) | DykstraOutcome::Stalled(x, _) => x,
    };
    let violation = halfspaces.iter().map(|h| h.violation(&x)).fold(0.0, f64::max);
    if violation > FEASIBILITY_TOL {
        Err(Error::InfeasibleSet { violation })
    } else {
        Ok(())
    }
}

/// Mirror of [`ConvexSet`] used only to validate deserialized input.
#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum ConvexSetRepr {
    Ball {
        center: Point,
        radius: f64,
    },
    Box {
        lower: Point,
        upper: Point,
    },
    #[serde(rename = "halfspace")]
    HalfSpace {
        normal: Point,
        offset: f64,
    },
    Polyhedron {
        halfspaces: Vec<HalfSpace>,
    },
    Translate {
        base: ConvexSet,
        shift: Point,
    },
    Dilation {
        base: ConvexSet,
        radius: f64,
    },
    DilationIntersection {
        a: ConvexSet,
        ra: f64,
        b: ConvexSet,
        rb: f64,
    },
}

impl TryFrom<ConvexSetRepr> for ConvexSet {
    type Error = Error;

    fn try_from(r: ConvexSetRepr) -> Result<Self> {
        match r {
            ConvexSetRepr::Ball { center, radius } => ConvexSet::ball(center, radius),
            ConvexSetRepr::Box { lower, upper } => ConvexSet::cuboid(lower, upper),
            ConvexSetRepr::HalfSpace { normal, offset } => ConvexSet::halfspace(normal, offset),
            ConvexSetRepr::Polyhedron { halfspaces } => ConvexSet::polyhedron(halfspaces),
            ConvexSetRepr::Translate { base, shift } => ConvexSet::translate(base, shift),
            ConvexSetRepr::Dilation { base, radius } => ConvexSet::dilation(base, radius),
            ConvexSetRepr::DilationIntersection { a, ra, b, rb } => ConvexSet::dilation_intersection(a, ra, b, rb),
        }
    }
}
