//! Solve requests and the built-in regression corpus.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bvpath::{d_inf, BVPath};
use crate::error::Result;
use crate::geometry::{ConvexSet, HalfSpace, Point};
use crate::reparam::SetPath;
use crate::solver::{play, play_via_reparam, Grid, GridSpec, Method, SweepOutput};
use crate::verify::{corrupted, verify_play, CheckResult, VerificationReport};

fn default_method() -> Method {
    Method::Direct
}

/// Play problem `P(z0, u)` with characteristic `Z` and a grid request.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveRequest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(rename = "Z")]
    pub z: ConvexSet,
    pub z0: Point,
    pub u: BVPath,
    pub grid: GridSpec,
    #[serde(default = "default_method")]
    pub method: Method,
}

impl SolveRequest {
    pub fn grid(&self) -> Result<Grid> {
        self.grid.build(self.u.horizon(), &self.u.times())
    }

    pub fn with_step(mut self, h: f64) -> Self {
        self.grid = GridSpec::Step { h };
        self
    }

    pub fn solve(&self, method: Method) -> Result<SweepOutput> {
        let grid = self.grid()?;
        match method {
            Method::Direct => play(&self.z0, &self.u, &self.z, &grid),
            Method::Reparam => play_via_reparam(&self.z0, &self.u, &self.z, &grid),
        }
    }

    pub fn label(&self) -> &str {
        self.name.as_deref().unwrap_or("unnamed")
    }
}

fn p(c: &[f64]) -> Point {
    Point::from_slice(c)
}

fn request(name: &str, z: ConvexSet, z0: Point, u: BVPath, h: f64) -> SolveRequest {
    SolveRequest { name: Some(name.into()), z, z0, u, grid: GridSpec::Step { h }, method: Method::Direct }
}

/// Regression items in dimensions 1 to 3, with and without jumps.
pub fn regression_corpus(h: f64) -> Vec<SolveRequest> {
    let s = Point::scalar;
    let unit = ConvexSet::interval(-1.0, 1.0).expect("valid interval");
    let disk = ConvexSet::ball(p(&[0.0, 0.0]), 1.0).expect("valid ball");
    let mut items = Vec::new();

    let ramp = BVPath::polyline(&[0.0, 2.0], &[s(0.0), s(2.0)]).expect("valid path");
    items.push(request("scalar_ramp", unit.clone(), s(0.0), ramp, h));

    let zigzag = BVPath::polyline(&[0.0, 1.0, 2.0, 3.0], &[s(0.0), s(2.0), s(-1.5), s(1.0)]).expect("valid path");
    items.push(request("scalar_zigzag", unit.clone(), s(0.0), zigzag, h));

    let jump = BVPath::builder(s(0.0)).hold_to(0.5).jump(s(3.0)).hold_to(1.0).build().expect("valid path");
    items.push(request("scalar_jump", unit, s(0.0), jump, h));

    let n = 64;
    let times: Vec<f64> = (0..=n).map(|k| 2.0 * PI * k as f64 / n as f64).collect();
    let circle: Vec<Point> = times.iter().map(|t| p(&[1.5 * t.cos(), 1.5 * t.sin()])).collect();
    let circle = BVPath::polyline(&times, &circle).expect("valid path");
    items.push(request("circle_in_disk", disk.clone(), p(&[0.0, 0.0]), circle, h));

    let rect = ConvexSet::cuboid(p(&[-1.0, -0.5]), p(&[1.0, 0.5])).expect("valid box");
    let u = BVPath::builder(p(&[0.0, 0.0]))
        .line_to(1.0, p(&[1.0, 1.0]))
        .jump(p(&[-1.0, 2.0]))
        .line_to(2.0, p(&[0.0, 0.0]))
        .build()
        .expect("valid path");
    items.push(request("box_with_jump", rect, p(&[0.0, 0.0]), u, h));

    let triangle = ConvexSet::polyhedron(vec![
        HalfSpace::new(p(&[-1.0, 0.0]), 1.0).expect("valid halfspace"),
        HalfSpace::new(p(&[0.0, -1.0]), 1.0).expect("valid halfspace"),
        HalfSpace::new(p(&[1.0, 1.0]), 1.0).expect("valid halfspace"),
    ])
    .expect("nonempty triangle");
    let u = BVPath::builder(p(&[0.0, 0.0]))
        .line_to(1.0, p(&[1.0, 0.5]))
        .jump(p(&[-1.0, -1.0]))
        .line_to(2.0, p(&[0.5, -0.5]))
        .build()
        .expect("valid path");
    items.push(request("triangle_with_jump", triangle, p(&[0.0, 0.0]), u, h));

    let ball3 = ConvexSet::ball(p(&[0.0, 0.0, 0.0]), 1.0).expect("valid ball");
    let u = BVPath::builder(p(&[0.0, 0.0, 0.0]))
        .line_to(1.0, p(&[1.0, 1.0, 0.0]))
        .jump(p(&[1.0, 1.0, 2.0]))
        .line_to(2.0, p(&[0.0, 0.0, 0.0]))
        .build()
        .expect("valid path");
    items.push(request("ball3d_with_jump", ball3, p(&[0.0, 0.0, 0.0]), u, h));

    let u = BVPath::builder(p(&[0.0, 0.0]))
        .line_to(0.3, p(&[0.8, 0.0]))
        .jump(p(&[0.8, 1.5]))
        .line_to(0.6, p(&[0.0, 1.0]))
        .jump(p(&[-1.2, -0.5]))
        .hold_to(0.8)
        .line_to(1.0, p(&[0.0, 0.0]))
        .build()
        .expect("valid path");
    items.push(request("disk_multi_jump", disk, p(&[0.0, 0.0]), u, h));

    items
}

/// Errors of successive halvings `d_inf(y_h, y_{h/2})`, `d_inf(y_{h/2}, y_{h/4})`
/// of the direct solver and their ratio; `None` when the finer error is at
/// roundoff level.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalvingStudy {
    pub errors: [f64; 2],
    pub ratio: Option<f64>,
    /// Ratio within the first-order band `[1.4, 2.6]`; diagnostic only.
    pub first_order: Option<bool>,
}

/// Full verification of one corpus item at one step size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ItemReport {
    pub name: String,
    pub h: f64,
    pub direct: VerificationReport,
    pub reparam: VerificationReport,
    pub pipeline: CheckResult,
    /// Normal-cone failures detected on a noisy copy of the direct trajectory.
    pub negative_control_failures: usize,
    pub halving: HalvingStudy,
}

impl ItemReport {
    pub fn passed(&self) -> bool {
        self.direct.passed() && self.reparam.passed() && self.pipeline.passed && self.negative_control_failures > 0
    }
}

/// Errors below this are treated as exact in the halving study.
pub const HALVING_FLOOR: f64 = 1e-12;

/// Amplitude of the noise added for the negative control.
pub const NEGATIVE_CONTROL_NOISE: f64 = 1e-3;

/// Runs both solvers and every check on `item` with step `h`.
pub fn run_item(item: &SolveRequest, h: f64, seed: u64) -> Result<ItemReport> {
    let item = item.clone().with_step(h);
    let grid = item.grid()?;
    let direct_out = item.solve(Method::Direct)?;
    let reparam_out = item.solve(Method::Reparam)?;
    let direct = verify_play(&item.z0, &item.u, &item.z, &grid, &direct_out, seed)?;
    let reparam = verify_play(&item.z0, &item.u, &item.z, &grid, &reparam_out, seed)?;
    let defect = d_inf(&direct_out.trajectory, &reparam_out.trajectory)?;
    let pipeline = CheckResult::new("pipeline_equivalence", defect, 10.0 * h, h);

    let c = SetPath::translate(item.u.clone(), item.z.clone())?;
    let noisy = SweepOutput {
        trajectory: corrupted(&direct_out.trajectory, NEGATIVE_CONTROL_NOISE, seed)?,
        ..direct_out.clone()
    };
    let negative_control_failures = crate::verify::check_normal_cone(&c, &noisy)?;

    let half = item.clone().with_step(h / 2.0).solve(Method::Direct)?.trajectory;
    let quarter = item.clone().with_step(h / 4.0).solve(Method::Direct)?.trajectory;
    let errors = [d_inf(&direct_out.trajectory, &half)?, d_inf(&half, &quarter)?];
    let ratio = (errors[1] > HALVING_FLOOR).then(|| errors[0] / errors[1]);

    Ok(ItemReport {
        name: item.label().to_string(),
        h,
        direct,
        reparam,
        pipeline,
        negative_control_failures,
        halving: HalvingStudy { errors, ratio, first_order: ratio.map(|r| (1.4..=2.6).contains(&r)) },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn request_json_round_trip() {
        for item in regression_corpus(0.01) {
            let text = serde_json::to_string(&item).unwrap();
            let back: SolveRequest = serde_json::from_str(&text).unwrap();
            assert_eq!(back, item);
        }
    }

    #[test]
    fn method_defaults_to_direct() {
        let text = r#"{"Z": {"kind": "box", "lower": [-1], "upper": [1]}, "z0": [0],
            "u": {"T": 1, "nodes": [{"t": 0, "left": [0], "right": [0]}, {"t": 1, "left": [1], "right": [1]}]},
            "grid": {"h": 0.1}}"#;
        let r: SolveRequest = serde_json::from_str(text).unwrap();
        assert_eq!(r.method, Method::Direct);
        assert!(serde_json::from_str::<SolveRequest>(&text.replace("\"z0\"", "\"zz\"")).is_err());
    }
}
