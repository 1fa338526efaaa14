use std::fs::File;
use std::io::BufWriter;

use anyhow::{Context, Result};
use serde::Serialize;
use sweepbv::bvpath::d_inf;
use sweepbv::corpus::SolveRequest;
use sweepbv::solver::Method;
use sweepbv::verify::{verify_play, CheckResult, VerificationReport};

use crate::files::{create_dir, read_json, write_json};
use crate::{Common, MethodArg};

#[derive(Serialize)]
struct SolveReport {
    reports: Vec<VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pipeline: Option<CheckResult>,
}

pub fn run(args: &Common) -> Result<bool> {
    let path = args.config.as_ref().context("solve needs --config PATH")?;
    let mut request: SolveRequest = read_json(path)?;
    if let Some(h) = args.h {
        request = request.with_step(h);
    }
    let methods = match args.method {
        None => vec![request.method],
        Some(MethodArg::Direct) => vec![Method::Direct],
        Some(MethodArg::Reparam) => vec![Method::Reparam],
        Some(MethodArg::Both) => vec![Method::Direct, Method::Reparam],
    };
    create_dir(&args.out)?;
    let grid = request.grid()?;
    let mut reports = Vec::new();
    let mut trajectories = Vec::new();
    for &method in &methods {
        let output = request.solve(method)?;
        let suffix = if methods.len() > 1 { format!("_{}", method_name(method)) } else { String::new() };
        let csv_path = args.out.join(format!("trajectory{suffix}.csv"));
        let file = File::create(&csv_path).with_context(|| format!("creating {}", csv_path.display()))?;
        output.trajectory.write_csv(BufWriter::new(file), grid.times())?;
        write_json(&args.out.join(format!("sweep_output{suffix}.json")), &output)?;
        let report = verify_play(&request.z0, &request.u, &request.z, &grid, &output, args.seed)?;
        for c in &report.checks {
            println!(
                "{:8} {:24} {:>11.3e} <= {:<10.3e} {}",
                method_name(method),
                c.name,
                c.residual,
                c.tolerance,
                if c.passed { "PASS" } else { "FAIL" }
            );
        }
        reports.push(report);
        trajectories.push(output.trajectory);
    }
    let pipeline = match trajectories.as_slice() {
        [a, b] => Some(CheckResult::new("pipeline_equivalence", d_inf(a, b)?, 10.0 * grid.h(), grid.h())),
        _ => None,
    };
    if let Some(p) = &pipeline {
        println!(
            "both     {:24} {:>11.3e} <= {:<10.3e} {}",
            p.name,
            p.residual,
            p.tolerance,
            if p.passed { "PASS" } else { "FAIL" }
        );
    }
    let passed = reports.iter().all(VerificationReport::passed) && pipeline.as_ref().is_none_or(|p| p.passed);
    write_json(&args.out.join("report.json"), &SolveReport { reports, pipeline })?;
    Ok(passed)
}

pub fn method_name(m: Method) -> &'static str {
    match m {
        Method::Direct => "direct",
        Method::Reparam => "reparam",
    }
}
