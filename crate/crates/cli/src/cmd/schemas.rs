use std::io::{ErrorKind, Write};

use anyhow::Result;
use serde_json::{json, to_value, Value};
use sweepbv::corpus::regression_corpus;
use sweepbv::experiment::{ContinuityConfig, Family};
use sweepbv::solver::Method;
use sweepbv::{BVPath, ConvexSet, Point};

use crate::files::{create_dir, write_json};
use crate::Common;

fn p(c: &[f64]) -> Point {
    Point::from_slice(c)
}

fn describe() -> Result<Value> {
    let ball = ConvexSet::ball(p(&[0.0, 0.0]), 1.0)?;
    let path = BVPath::builder(Point::scalar(0.0)).hold_to(0.5).jump(Point::scalar(3.0)).hold_to(1.0).build()?;
    let request = regression_corpus(0.01).swap_remove(2);
    let output = request.solve(Method::Direct)?;
    let mut small = output.clone();
    small.trajectory = path.clone();
    small.residuals.constraint.truncate(3);
    small.residuals.normal_cone.truncate(3);
    let continuity = ContinuityConfig {
        families: vec![Family::Shift, Family::JumpSize],
        ..ContinuityConfig::from_request(&request, 1e-3, 0)
    };
    Ok(json!({
        "Point": {
            "description": "array of finite reals, length d >= 1",
            "example": to_value(p(&[0.5, -1.0]))?,
        },
        "ConvexSet": {
            "description": "closed convex set tagged by \"kind\"",
            "kinds": {
                "ball": "{center: Point, radius >= 0}",
                "box": "{lower: Point, upper: Point}, lower <= upper componentwise",
                "halfspace": "{normal: Point != 0, offset}: {x : <normal, x> <= offset}",
                "polyhedron": "{halfspaces: [halfspace]}, nonempty intersection",
                "translate": "{base: ConvexSet, shift: Point}: {shift - z : z in base}",
                "dilation": "{base: ConvexSet, radius >= 0}: base + closed ball of radius",
                "dilation_intersection": "{a, ra, b, rb}: (a + D_ra) intersected with (b + D_rb)",
            },
            "example": to_value(&ball)?,
        },
        "BVPath": {
            "description": "right-continuous piecewise-affine path on [0, T]; nodes carry the left limit and the value, t strictly increasing from 0 to T; affine between nodes",
            "example": to_value(&path)?,
        },
        "SolveRequest": {
            "description": "play problem; grid is {\"h\": step} or {\"times\": [0, ..., T]}; method defaults to direct",
            "fields": {"Z": "ConvexSet", "z0": "Point in Z", "u": "BVPath", "grid": "grid request", "method": "direct | reparam", "name": "optional label"},
            "example": to_value(&request)?,
        },
        "SweepOutput": {
            "description": "trajectory with per-node constraint violation and per-step normal-cone residual |Proj_{C(t_{k+1})}(y_k) - y_{k+1}|",
            "example": to_value(&small)?,
        },
        "TrajectoryCsv": {
            "description": "header t,f1..fd; one row per grid or node time; a jump time has two rows, the left limit first",
        },
        "VerificationReport": {
            "description": "per-check name, residual, tolerance, passed, h",
            "example": to_value(sweepbv::verify::verify_play(&request.z0, &request.u, &request.z, &request.grid()?, &output, 0)?)?,
        },
        "ContinuityConfig": {
            "description": "base problem and perturbation families for bv-continuity; h defaults to 1e-3, families to all, seed to 0",
            "families": ["shift", "amplitude", "jump_size", "wiggle", "reshape", "staircase"],
            "example": to_value(&continuity)?,
        },
        "ContinuityTableCsv": {
            "description": "columns family,n,input_bv_dist,input_us_dist,output_d_inf,output_bv_dist,h",
        },
    }))
}

pub fn run(args: &Common) -> Result<bool> {
    let doc = describe()?;
    if args.config.is_some() || args.h.is_some() || args.method.is_some() {
        eprintln!("note: describe-schemas ignores --config, --h and --method");
    }
    create_dir(&args.out)?;
    write_json(&args.out.join("schemas.json"), &doc)?;
    let mut stdout = std::io::stdout().lock();
    match writeln!(stdout, "{}", serde_json::to_string_pretty(&doc)?) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(true),
    }
}
