use serde::{Deserialize, Serialize};

use super::{BVPath, Node};
use crate::error::{invalid, Error, Result};
use crate::geometry::Point;

/// Slack allowed when checking monotonicity and range of a time map.
const MONOTONE_TOL: f64 = 1e-12;

/// Nondecreasing right-continuous map `[0, horizon] -> [0, codomain]`, stored
/// as a scalar [`BVPath`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NondecreasingMap {
    path: BVPath,
    codomain: f64,
}

impl NondecreasingMap {
    pub fn new(path: BVPath, codomain: f64) -> Result<Self> {
        if path.dim() != 1 {
            return Err(Error::DimensionMismatch { expected: 1, found: path.dim() });
        }
        if !(codomain.is_finite() && codomain >= 0.0) {
            return invalid(format!("codomain bound must be finite and >= 0, got {codomain}"));
        }
        let mut prev = f64::NEG_INFINITY;
        for n in path.nodes() {
            for v in [n.left[0], n.right[0]] {
                if v < prev - MONOTONE_TOL {
                    return invalid(format!("time map decreases at t = {}", n.t));
                }
                if v < -MONOTONE_TOL || v > codomain + MONOTONE_TOL {
                    return Err(Error::RangeMismatch { lo: v.min(0.0), hi: v.max(codomain), horizon: codomain });
                }
                prev = prev.max(v);
            }
        }
        Ok(NondecreasingMap { path, codomain })
    }

    pub fn identity(horizon: f64) -> Result<Self> {
        let path = BVPath::polyline(&[0.0, horizon], &[Point::scalar(0.0), Point::scalar(horizon)])?;
        NondecreasingMap::new(path, horizon)
    }

    /// Piecewise-linear interpolant of a continuous nondecreasing `f` on `n`
    /// uniform cells of `[0, horizon]`.
    pub fn from_fn(horizon: f64, codomain: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let n = n.max(1);
        let mut times: Vec<f64> = (0..n).map(|k| horizon * k as f64 / n as f64).collect();
        times.push(horizon);
        let mut last = 0.0_f64;
        let values: Vec<Point> = times
            .iter()
            .map(|&t| {
                last = last.max(f(t).clamp(0.0, codomain));
                Point::scalar(last)
            })
            .collect();
        NondecreasingMap::new(BVPath::polyline(&times, &values)?, codomain)
    }

    pub fn horizon(&self) -> f64 {
        self.path.horizon()
    }

    pub fn codomain(&self) -> f64 {
        self.codomain
    }

    pub fn as_path(&self) -> &BVPath {
        &self.path
    }

    pub fn nodes(&self) -> &[Node] {
        self.path.nodes()
    }

    /// Value at `t`, clamped into the domain.
    pub fn eval(&self, t: f64) -> f64 {
        self.path.eval(t.clamp(0.0, self.horizon())).expect("clamped")[0]
    }

    pub fn left_limit(&self, t: f64) -> f64 {
        self.path.left_limit(t.clamp(0.0, self.horizon())).expect("clamped")[0]
    }

    pub fn is_continuous(&self) -> bool {
        self.path.is_continuous()
    }

    pub fn jump_times(&self) -> Vec<f64> {
        self.path.jump_times()
    }

    /// Smallest and largest value taken.
    pub fn range(&self) -> (f64, f64) {
        let nodes = self.path.nodes();
        (nodes[0].right[0], nodes[nodes.len() - 1].right[0])
    }
}
