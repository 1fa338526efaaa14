use std::fs::File;
use std::io::BufWriter;

use anyhow::{Context, Result};
use sweepbv::corpus::regression_corpus;
use sweepbv::experiment::{bv_continuity, write_table, ContinuityConfig};

use crate::files::{create_dir, read_json, write_json};
use crate::Common;

/// Corpus item used when no configuration is given.
const DEFAULT_ITEM: &str = "disk_multi_jump";

pub fn run(args: &Common) -> Result<bool> {
    let mut config: ContinuityConfig = match &args.config {
        Some(path) => read_json(path)?,
        None => {
            let item = regression_corpus(1e-3)
                .into_iter()
                .find(|r| r.label() == DEFAULT_ITEM)
                .context("built-in item missing")?;
            ContinuityConfig::from_request(&item, 1e-3, args.seed)
        }
    };
    if let Some(h) = args.h {
        config.h = h;
    }
    if args.config.is_none() || args.seed != 0 {
        config.seed = args.seed;
    }
    let reports = bv_continuity(&config)?;
    create_dir(&args.out)?;
    let path = args.out.join("bv_continuity.csv");
    let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    write_table(&reports, BufWriter::new(file))?;
    write_json(&args.out.join("bv_continuity.json"), &reports)?;
    let mut passed = true;
    for r in &reports {
        let status = if r.flagged {
            "FLAGGED (d_us-only convergence)"
        } else if r.bound_holds {
            "PASS"
        } else {
            passed = false;
            "FAIL"
        };
        println!("{:10} C = {:<8.4} {}", format!("{:?}", r.family), r.fitted_c, status);
    }
    Ok(passed)
}
