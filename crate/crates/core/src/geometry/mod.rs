//! Points of ℝ^d, closed convex sets with projection oracles, normal cones,
//! Hausdorff distances and the dilation-intersection geodesics between sets.

mod hausdorff;
mod point;
mod projection;
mod set;

pub use hausdorff::{geodesic_set, geodesic_set_with_distance, hausdorff_distance};
pub use point::Point;
pub use projection::{project, project_dilation, MAX_ITER, TOL_PROJ};
pub use set::{ConvexSet, HalfSpace};

use crate::error::{Error, Result};

/// Tests `v ∈ N_K(x)` through `N_K(x) = Proj_K^{-1}(x) - x`: the answer is
/// yes iff `x + v` projects back onto `x`.
pub fn normal_cone_contains(k: &ConvexSet, x: &Point, v: &Point, tol: f64) -> Result<bool> {
    let distance = k.distance(x)?;
    if distance > tol {
        return Err(Error::PointNotInSet { distance, tol });
    }
    let back = project(k, &(x + v))?;
    Ok(back.dist(x) <= tol)
}
