use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bvpath::{d_inf, BVPath};
use crate::error::{invalid, Error, Result};
use crate::geometry::{geodesic_set_with_distance, hausdorff_distance, project, ConvexSet, Point};

/// A jump gap `[start, end]` of reparametrized time, filled by the geodesic
/// from `from - Z` to `to - Z`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gap {
    pub start: f64,
    pub end: f64,
    pub from: Point,
    pub to: Point,
}

impl Gap {
    pub fn contains(&self, sigma: f64) -> bool {
        self.start < sigma && sigma < self.end
    }

    pub fn lambda(&self, sigma: f64) -> f64 {
        ((sigma - self.start) / (self.end - self.start)).clamp(0.0, 1.0)
    }
}

/// Set-valued path `[0, T] -> Conv(ℝ^d)` in one of the representable families.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SetPath {
    Constant {
        set: ConvexSet,
        horizon: f64,
    },
    /// `C(t) = u(t) - Z`.
    Translate {
        u: BVPath,
        z: Arc<ConvexSet>,
    },
    /// `C(t) = G_(A,B)(t)` on `[0, 1]`, with `rho = d_H(A, B)`.
    Geodesic {
        a: ConvexSet,
        b: ConvexSet,
        rho: f64,
    },
    /// Arc-length reparametrization of a `Translate` path: `ũ(σ) - Z` off the
    /// gaps, the dilation-intersection geodesic on each gap.
    Filled {
        u_tilde: BVPath,
        z: Arc<ConvexSet>,
        gaps: Vec<Gap>,
    },
}

impl SetPath {
    pub fn constant(set: ConvexSet, horizon: f64) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return invalid(format!("horizon must be > 0, got {horizon}"));
        }
        Ok(SetPath::Constant { set, horizon })
    }

    /// `C_u(t) = u(t) - Z`.
    pub fn translate(u: BVPath, z: ConvexSet) -> Result<Self> {
        if u.dim() != z.dim() {
            return Err(Error::DimensionMismatch { expected: z.dim(), found: u.dim() });
        }
        Ok(SetPath::Translate { u, z: Arc::new(z) })
    }

    pub fn geodesic(a: ConvexSet, b: ConvexSet) -> Result<Self> {
        let rho = hausdorff_distance(&a, &b)?;
        Ok(SetPath::Geodesic { a, b, rho })
    }

    pub fn horizon(&self) -> f64 {
        match self {
            SetPath::Constant { horizon, .. } => *horizon,
            SetPath::Translate { u, .. } => u.horizon(),
            SetPath::Geodesic { .. } => 1.0,
            SetPath::Filled { u_tilde, .. } => u_tilde.horizon(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SetPath::Constant { set, .. } => set.dim(),
            SetPath::Translate { z, .. } | SetPath::Filled { z, .. } => z.dim(),
            SetPath::Geodesic { a, .. } => a.dim(),
        }
    }

    /// Times where the path changes its affine/geodesic description; every
    /// solver grid includes them.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            SetPath::Constant { horizon, .. } => vec![0.0, *horizon],
            SetPath::Translate { u, .. } => u.times(),
            SetPath::Geodesic { .. } => vec![0.0, 1.0],
            SetPath::Filled { u_tilde, .. } => u_tilde.times(),
        }
    }

    pub fn jump_times(&self) -> Vec<f64> {
        match self {
            SetPath::Translate { u, .. } => u.jump_times(),
            _ => Vec::new(),
        }
    }

    /// Total variation with respect to the Hausdorff distance.
    pub fn variation(&self) -> f64 {
        match self {
            SetPath::Constant { .. } => 0.0,
            SetPath::Translate { u, .. } => u.total_variation(),
            SetPath::Geodesic { rho, .. } => *rho,
            SetPath::Filled { u_tilde, .. } => u_tilde.total_variation(),
        }
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if (0.0..=self.horizon()).contains(&t) {
            Ok(())
        } else {
            Err(Error::OutOfDomain { t, horizon: self.horizon() })
        }
    }

    fn reflected(z: &Arc<ConvexSet>, shift: Point) -> ConvexSet {
        ConvexSet::Translate { base: Arc::clone(z), shift }
    }

    fn gap_at(gaps: &[Gap], sigma: f64) -> Option<&Gap> {
        let i = gaps.partition_point(|g| g.end <= sigma);
        gaps.get(i).filter(|g| g.contains(sigma))
    }

    /// `C(t)`.
    pub fn eval(&self, t: f64) -> Result<ConvexSet> {
        self.check_time(t)?;
        match self {
            SetPath::Constant { set, .. } => Ok(set.clone()),
            SetPath::Translate { u, z } => Ok(Self::reflected(z, u.eval(t)?)),
            SetPath::Geodesic { a, b, rho } => geodesic_set_with_distance(a, b, *rho, t),
            SetPath::Filled { u_tilde, z, gaps } => match Self::gap_at(gaps, t) {
                Some(g) => {
                    let from = Self::reflected(z, g.from.clone());
                    let to = Self::reflected(z, g.to.clone());
                    geodesic_set_with_distance(&from, &to, g.from.dist(&g.to), g.lambda(t))
                }
                None => Ok(Self::reflected(z, u_tilde.eval(t)?)),
            },
        }
    }

    /// `C(t-)`; equal to `C(t)` except at jumps of a `Translate` path.
    pub fn left_limit(&self, t: f64) -> Result<ConvexSet> {
        match self {
            SetPath::Translate { u, z } => Ok(Self::reflected(z, u.left_limit(t)?)),
            _ => self.eval(t),
        }
    }

    /// `Proj_{C(t)}(x)`.
    pub fn project(&self, t: f64, x: &Point) -> Result<Point> {
        match self {
            SetPath::Translate { u, z } => {
                let ut = u.eval(t)?;
                Ok(&ut - &project(z, &(&ut - x))?)
            }
            _ => project(&self.eval(t)?, x),
        }
    }

    /// `Proj_{C(t-)}(x)`.
    pub fn project_left(&self, t: f64, x: &Point) -> Result<Point> {
        match self {
            SetPath::Translate { u, z } => {
                let ut = u.left_limit(t)?;
                Ok(&ut - &project(z, &(&ut - x))?)
            }
            _ => self.project(t, x),
        }
    }

    /// Uniform strict distance between two set paths whose values are
    /// translates `v(t) - Z` of the same `Z` at every time; then
    /// `d_H(C_1(t), C_2(t)) = |v_1(t) - v_2(t)|`. Paths with filled gaps
    /// have no exact formula and are rejected.
    pub fn d_us(&self, other: &SetPath) -> Result<f64> {
        let (v1, z1) = self.translate_parts()?;
        let (v2, z2) = other.translate_parts()?;
        if z1 != z2 {
            return Err(Error::UnsupportedPair("set paths with different characteristic sets".into()));
        }
        Ok(d_inf(v1, v2)? + (self.variation() - other.variation()).abs())
    }

    fn translate_parts(&self) -> Result<(&BVPath, &ConvexSet)> {
        match self {
            SetPath::Translate { u, z } => Ok((u, z)),
            SetPath::Filled { u_tilde, z, gaps } if gaps.is_empty() => Ok((u_tilde, z)),
            _ => Err(Error::UnsupportedPair("set path is not a pure translate family".into())),
        }
    }
}
