//! Reparametrization by arc length with jump filling.
//!
//! A path `u` is written as `u = ũ ∘ ℓ_u`, where `ℓ_u` is the normalized arc
//! length and `ũ` is Lipschitz with constant speed `V(u)/T`. Each jump of `u`
//! opens a gap `[ℓ(t-), ℓ(t)]` in reparametrized time, which `ũ` crosses along
//! the segment from `u(t-)` to `u(t)`. For set-valued paths `C_u = u - Z` the
//! gaps are crossed along the dilation-intersection geodesic instead.

mod setpath;

pub use setpath::{Gap, SetPath};

use crate::bvpath::{BVPath, Node, NondecreasingMap};
use crate::error::Result;
use crate::geometry::Point;

/// Segment filling: returns `(ℓ_u, ũ)` with `u = ũ ∘ ℓ_u`.
///
/// When `V(u) = 0` the arc length is `ℓ ≡ 0` and `ũ ≡ u(0)`.
pub fn fill_segments(u: &BVPath) -> (NondecreasingMap, BVPath) {
    let ell = u.arc_length();
    let horizon = u.horizon();
    if u.total_variation() == 0.0 {
        let start = u.eval(0.0).expect("0 is in the domain");
        return (ell, BVPath::constant(horizon, start).expect("positive horizon"));
    }
    let mut nodes: Vec<Node> = Vec::with_capacity(2 * u.nodes().len());
    let mut push = |sigma: f64, value: &Point| match nodes.last_mut() {
        Some(last) if last.t == sigma => *last = Node::continuous(sigma, value.clone()),
        _ => nodes.push(Node::continuous(sigma, value.clone())),
    };
    for (node, sigma) in u.nodes().iter().zip(ell.nodes()) {
        push(sigma.left[0], &node.left);
        push(sigma.right[0], &node.right);
    }
    let u_tilde = BVPath::new(horizon, nodes).expect("arc length spans [0, T] strictly");
    (ell, u_tilde)
}

/// Geodesic filling of a set-valued path: returns `(ℓ_C, C̃)` with
/// `C = C̃ ∘ ℓ_C`.
///
/// For `C = u - Z` we have `ℓ_C = ℓ_u` because `d_H(u(t) - Z, u(s) - Z) =
/// |u(t) - u(s)|`; off the gaps `C̃(σ) = ũ(σ) - Z`.
pub fn fill_geodesics(c: &SetPath) -> Result<(NondecreasingMap, SetPath)> {
    let horizon = c.horizon();
    match c {
        SetPath::Translate { u, z } => {
            let (ell, u_tilde) = fill_segments(u);
            let gaps = u
                .nodes()
                .iter()
                .zip(ell.nodes())
                .filter(|(n, _)| n.left != n.right)
                .map(|(n, sigma)| Gap {
                    start: sigma.left[0],
                    end: sigma.right[0],
                    from: n.left.clone(),
                    to: n.right.clone(),
                })
                .collect();
            Ok((ell, SetPath::Filled { u_tilde, z: z.clone(), gaps }))
        }
        _ if c.variation() == 0.0 => {
            let zero = BVPath::constant(horizon, Point::scalar(0.0))?;
            Ok((NondecreasingMap::new(zero, horizon)?, c.clone()))
        }
        // geodesics and filled paths already run at constant speed
        _ => Ok((NondecreasingMap::identity(horizon)?, c.clone())),
    }
}

/// Largest deviation of the slope norm of `ũ` from `V/T` over segments where
/// `ũ` moves; constant segments are excluded, and `V = 0` gives 0.
pub fn constant_speed_check(u_tilde: &BVPath, variation: f64, horizon: f64) -> f64 {
    if variation == 0.0 {
        return 0.0;
    }
    let target = variation / horizon;
    let nodes = u_tilde.nodes();
    (0..nodes.len() - 1)
        .filter_map(|i| {
            let len = u_tilde.segment_length(i);
            (len > 0.0).then(|| (len / (nodes[i + 1].t - nodes[i].t) - target).abs())
        })
        .fold(0.0, f64::max)
}
