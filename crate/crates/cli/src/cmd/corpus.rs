use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use sweepbv::corpus::{regression_corpus, run_item, ItemReport, SolveRequest};
use sweepbv::solver::GridSpec;

use crate::files::{create_dir, read_json, write_json};
use crate::Common;

const DEFAULT_H: f64 = 1e-3;

#[derive(Serialize)]
struct ItemOutcome {
    name: String,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<ItemReport>,
}

fn load_dir(dir: &Path) -> Result<Vec<SolveRequest>> {
    let mut paths: Vec<_> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "json"));
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let mut r: SolveRequest = read_json(p)?;
            if r.name.is_none() {
                r.name = p.file_stem().map(|s| s.to_string_lossy().into_owned());
            }
            Ok(r)
        })
        .collect()
}

pub fn run(args: &Common) -> Result<bool> {
    let items = match &args.config {
        Some(dir) => load_dir(dir)?,
        None => regression_corpus(args.h.unwrap_or(DEFAULT_H)),
    };
    create_dir(&args.out)?;
    if args.config.is_none() {
        let req_dir = args.out.join("requests");
        create_dir(&req_dir)?;
        for (i, item) in items.iter().enumerate() {
            write_json(&req_dir.join(format!("{:02}_{}.json", i + 1, item.label())), item)?;
        }
    }
    let outcomes: Vec<ItemOutcome> = items
        .par_iter()
        .map(|item| {
            let h = args.h.unwrap_or(match item.grid {
                GridSpec::Step { h } => h,
                GridSpec::Times { .. } => DEFAULT_H,
            });
            match run_item(item, h, args.seed) {
                Ok(report) => ItemOutcome {
                    name: item.label().into(),
                    passed: report.passed(),
                    error: None,
                    report: Some(report),
                },
                Err(e) => {
                    ItemOutcome { name: item.label().into(), passed: false, error: Some(e.to_string()), report: None }
                }
            }
        })
        .collect();
    for o in &outcomes {
        let detail = match (&o.report, &o.error) {
            (Some(r), _) => {
                let failed: Vec<&str> = r
                    .direct
                    .checks
                    .iter()
                    .chain(&r.reparam.checks)
                    .chain(std::iter::once(&r.pipeline))
                    .filter(|c| !c.passed)
                    .map(|c| c.name.as_str())
                    .collect();
                let ratio = r.halving.ratio.map_or("n/a".to_string(), |x| format!("{x:.2}"));
                format!(
                    "pipeline {:.2e}, negative control {} failures, halving ratio {ratio}{}",
                    r.pipeline.residual,
                    r.negative_control_failures,
                    if failed.is_empty() { String::new() } else { format!(", failed: {}", failed.join(" ")) }
                )
            }
            (None, Some(e)) => format!("error: {e}"),
            (None, None) => String::new(),
        };
        println!("{} {:20} {detail}", if o.passed { "PASS" } else { "FAIL" }, o.name);
    }
    write_json(&args.out.join("corpus_report.json"), &outcomes)?;
    Ok(outcomes.iter().all(|o| o.passed))
}
