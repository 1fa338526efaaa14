//! Right-continuous paths of bounded variation, piecewise affine with finitely
//! many jumps.
//!
//! A [`BVPath`] on `[0, T]` is stored as a list of nodes `0 = t_0 < ... < t_m = T`.
//! Each node carries the left limit `f(t_i-)` and the value `f(t_i) = f(t_i+)`;
//! between consecutive nodes the path is the affine interpolation from
//! `f(t_i)` to `f(t_{i+1}-)`. With this class the pointwise variation, the
//! arc-length function and all Stieltjes measures of intervals are exact.

mod compose;
mod io;
mod map;
mod metrics;
mod stieltjes;

pub use compose::compose;
pub use map::NondecreasingMap;
pub use metrics::{bv_norm_dist, d_inf, d_us, linear_combination};
pub use stieltjes::{stieltjes, Interval};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::Point;

/// Times closer than this are identified when node sets are merged.
pub const TIME_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub t: f64,
    pub left: Point,
    pub right: Point,
}

impl Node {
    pub fn continuous(t: f64, value: Point) -> Self {
        Node { t, left: value.clone(), right: value }
    }

    pub fn jump(&self) -> f64 {
        self.left.dist(&self.right)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BVPathRepr")]
pub struct BVPath {
    #[serde(rename = "T")]
    horizon: f64,
    nodes: Vec<Node>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BVPathRepr {
    #[serde(rename = "T")]
    horizon: f64,
    nodes: Vec<Node>,
}

impl TryFrom<BVPathRepr> for BVPath {
    type Error = Error;
    fn try_from(r: BVPathRepr) -> Result<Self> {
        BVPath::new(r.horizon, r.nodes)
    }
}

/// Where a time falls relative to the node list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Location {
    Node(usize),
    /// Strictly inside the segment between node `i` and node `i + 1`.
    Segment(usize),
}

impl BVPath {
    /// Validates and builds a path. The left value of the first node is reset
    /// to its right value (`f(0-) := f(0)`).
    pub fn new(horizon: f64, mut nodes: Vec<Node>) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return invalid(format!("horizon must be finite and > 0, got {horizon}"));
        }
        if nodes.len() < 2 {
            return invalid("a path needs at least the nodes 0 and T");
        }
        if nodes[0].t != 0.0 {
            return invalid(format!("first node must be at t = 0, got {}", nodes[0].t));
        }
        if nodes[nodes.len() - 1].t != horizon {
            return invalid(format!("last node must be at t = T = {horizon}, got {}", nodes[nodes.len() - 1].t));
        }
        let dim = nodes[0].right.dim();
        for w in nodes.windows(2) {
            if !(w[1].t > w[0].t) {
                return invalid(format!("node times must increase strictly ({} -> {})", w[0].t, w[1].t));
            }
        }
        for n in &nodes {
            n.left.check_dim(dim)?;
            n.right.check_dim(dim)?;
        }
        nodes[0].left = nodes[0].right.clone();
        Ok(BVPath { horizon, nodes })
    }

    pub fn constant(horizon: f64, value: Point) -> Result<Self> {
        BVPath::new(horizon, vec![Node::continuous(0.0, value.clone()), Node::continuous(horizon, value)])
    }

    /// Continuous polyline through `(times[i], values[i])`; `times` must start at 0.
    pub fn polyline(times: &[f64], values: &[Point]) -> Result<Self> {
        if times.len() != values.len() {
            return invalid("times and values differ in length");
        }
        let Some(&horizon) = times.last() else {
            return invalid("empty polyline");
        };
        BVPath::new(horizon, times.iter().zip(values).map(|(&t, v)| Node::continuous(t, v.clone())).collect())
    }

    pub fn builder(start: Point) -> PathBuilder {
        PathBuilder { nodes: vec![Node::continuous(0.0, start)] }
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn dim(&self) -> usize {
        self.nodes[0].right.dim()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn times(&self) -> Vec<f64> {
        self.nodes.iter().map(|n| n.t).collect()
    }

    /// Times at which `f(t-) != f(t)`.
    pub fn jump_times(&self) -> Vec<f64> {
        self.nodes.iter().filter(|n| n.left != n.right).map(|n| n.t).collect()
    }

    pub fn is_continuous(&self) -> bool {
        self.nodes.iter().all(|n| n.left == n.right)
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if (0.0..=self.horizon).contains(&t) {
            Ok(())
        } else {
            Err(Error::OutOfDomain { t, horizon: self.horizon })
        }
    }

    pub(crate) fn locate(&self, t: f64) -> Location {
        let i = self.nodes.partition_point(|n| n.t < t);
        if i < self.nodes.len() && self.nodes[i].t == t {
            Location::Node(i)
        } else {
            Location::Segment(i - 1)
        }
    }

    fn segment_value(&self, i: usize, t: f64) -> Point {
        let (a, b) = (&self.nodes[i], &self.nodes[i + 1]);
        let lambda = (t - a.t) / (b.t - a.t);
        a.right.lerp(&b.left, lambda)
    }

    /// `f(t) = f(t+)`.
    pub fn eval(&self, t: f64) -> Result<Point> {
        self.check_time(t)?;
        Ok(match self.locate(t) {
            Location::Node(i) => self.nodes[i].right.clone(),
            Location::Segment(i) => self.segment_value(i, t),
        })
    }

    /// `f(t-)`, with `f(0-) = f(0)`.
    pub fn left_limit(&self, t: f64) -> Result<Point> {
        self.check_time(t)?;
        Ok(match self.locate(t) {
            Location::Node(i) => self.nodes[i].left.clone(),
            Location::Segment(i) => self.segment_value(i, t),
        })
    }

    /// `(f(t-), f(t))`.
    pub fn one_sided(&self, t: f64) -> Result<(Point, Point)> {
        self.check_time(t)?;
        Ok(match self.locate(t) {
            Location::Node(i) => (self.nodes[i].left.clone(), self.nodes[i].right.clone()),
            Location::Segment(i) => {
                let v = self.segment_value(i, t);
                (v.clone(), v)
            }
        })
    }

    /// Length of the affine piece between node `i` and node `i + 1`.
    pub fn segment_length(&self, i: usize) -> f64 {
        self.nodes[i].right.dist(&self.nodes[i + 1].left)
    }

    /// Pointwise variation on `[s, t]`: segment lengths inside the interval
    /// plus the jumps at nodes in `]s, t]`.
    pub fn variation(&self, s: f64, t: f64) -> Result<f64> {
        self.check_time(s)?;
        self.check_time(t)?;
        if s > t {
            return invalid(format!("variation needs s <= t, got [{s}, {t}]"));
        }
        let mut total = 0.0;
        for i in 0..self.nodes.len() - 1 {
            let (a, b) = (self.nodes[i].t, self.nodes[i + 1].t);
            let lo = a.max(s);
            let hi = b.min(t);
            if hi > lo {
                let len = self.segment_length(i);
                total += if lo == a && hi == b { len } else { len * (hi - lo) / (b - a) };
            }
        }
        for n in &self.nodes {
            if n.t > s && n.t <= t {
                total += n.jump();
            }
        }
        Ok(total)
    }

    /// Summed in time order, segment before the jump that ends it, so that
    /// a jump-filled reparametrization reproduces the value bit for bit.
    pub fn total_variation(&self) -> f64 {
        self.nodes.windows(2).fold(0.0, |acc, w| acc + w[0].right.dist(&w[1].left) + w[1].jump())
    }

    /// `sup_t |f(t)|`, attained at a node value or left limit.
    pub fn sup_norm(&self) -> f64 {
        self.nodes.iter().map(|n| n.left.norm().max(n.right.norm())).fold(0.0, f64::max)
    }

    /// Arc-length function `ℓ_f(t) = T V(f,[0,t]) / V(f,[0,T])`, or `ℓ ≡ 0`
    /// when `f` is constant. It has the same nodes (hence the same jump
    /// points) as `f`.
    pub fn arc_length(&self) -> NondecreasingMap {
        let total = self.total_variation();
        let scale = if total > 0.0 { self.horizon / total } else { 0.0 };
        let mut acc = 0.0;
        let mut nodes = Vec::with_capacity(self.nodes.len());
        for (i, n) in self.nodes.iter().enumerate() {
            if i > 0 {
                acc += self.segment_length(i - 1);
            }
            let left = (acc * scale).min(self.horizon);
            acc += n.jump();
            let right = (acc * scale).min(self.horizon);
            nodes.push(Node { t: n.t, left: Point::scalar(left), right: Point::scalar(right) });
        }
        if total > 0.0 {
            // pin the endpoint against rounding in the running sum
            let last = nodes.last_mut().expect("at least two nodes");
            last.right = Point::scalar(self.horizon);
            if self.nodes.last().map(Node::jump) == Some(0.0) {
                last.left = Point::scalar(self.horizon);
            }
        }
        let path = BVPath { horizon: self.horizon, nodes };
        NondecreasingMap::new(path, self.horizon).expect("arc length is monotone by construction")
    }

    /// Adds a constant vector.
    pub fn shifted(&self, by: &Point) -> BVPath {
        self.map_values(|p| p + by)
    }

    pub fn scaled(&self, by: f64) -> BVPath {
        self.map_values(|p| p * by)
    }

    /// Applies an affine-compatible map to every node value.
    pub(crate) fn map_values(&self, f: impl Fn(&Point) -> Point) -> BVPath {
        BVPath {
            horizon: self.horizon,
            nodes: self.nodes.iter().map(|n| Node { t: n.t, left: f(&n.left), right: f(&n.right) }).collect(),
        }
    }

    /// Same function with extra (continuous) nodes inserted at `times`.
    pub fn refined(&self, times: &[f64]) -> BVPath {
        let merged = merge_times(&self.times(), times);
        let nodes = merged
            .into_iter()
            .filter(|&t| (0.0..=self.horizon).contains(&t))
            .map(|t| {
                let (left, right) = self.one_sided(t).expect("t in domain");
                Node { t, left, right }
            })
            .collect();
        BVPath { horizon: self.horizon, nodes }
    }

    /// Restriction to `[0, t]`.
    pub fn truncated(&self, t: f64) -> Result<BVPath> {
        self.check_time(t)?;
        if t == 0.0 {
            return invalid("cannot truncate to an empty interval");
        }
        let mut nodes: Vec<Node> = self.nodes.iter().filter(|n| n.t < t).cloned().collect();
        let (left, right) = self.one_sided(t)?;
        nodes.push(Node { t, left, right });
        BVPath::new(t, nodes)
    }
}

/// Incremental construction of a path from its start value.
#[derive(Clone, Debug)]
pub struct PathBuilder {
    nodes: Vec<Node>,
}

impl PathBuilder {
    /// Affine motion from the current value to `value` at time `t`.
    pub fn line_to(mut self, t: f64, value: Point) -> Self {
        self.nodes.push(Node::continuous(t, value));
        self
    }

    /// Stay at the current value until `t`.
    pub fn hold_to(self, t: f64) -> Self {
        let v = self.current().clone();
        self.line_to(t, v)
    }

    /// Jump at the current time to `value`.
    pub fn jump(mut self, value: Point) -> Self {
        let last = self.nodes.last_mut().expect("builder has a start node");
        if last.t == 0.0 {
            last.left = value.clone();
        }
        last.right = value;
        self
    }

    pub fn current(&self) -> &Point {
        &self.nodes.last().expect("builder has a start node").right
    }

    pub fn build(self) -> Result<BVPath> {
        let horizon = self.nodes.last().map(|n| n.t).unwrap_or(0.0);
        BVPath::new(horizon, self.nodes)
    }
}

/// Sorted union of two time lists; times within [`TIME_TOL`] of an earlier
/// kept time are dropped, with entries of `primary` taking precedence.
pub fn merge_times(primary: &[f64], secondary: &[f64]) -> Vec<f64> {
    let mut tagged: Vec<(f64, bool)> =
        primary.iter().map(|&t| (t, true)).chain(secondary.iter().map(|&t| (t, false))).collect();
    tagged.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut out: Vec<(f64, bool)> = Vec::with_capacity(tagged.len());
    for (t, is_primary) in tagged {
        match out.last_mut() {
            Some(last) if (t - last.0).abs() <= TIME_TOL => {
                if is_primary && !last.1 {
                    *last = (t, true);
                }
            }
            _ => out.push((t, is_primary)),
        }
    }
    out.into_iter().map(|(t, _)| t).collect()
}
