use serde::{Deserialize, Serialize};

use crate::bvpath::merge_times;
use crate::error::{invalid, Result};

/// Time grid `0 = τ_0 < ... < τ_N = T`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    times: Vec<f64>,
}

impl Grid {
    /// Uniform steps of size `h` (the last one possibly shorter) merged with
    /// `breakpoints`, which are kept exactly.
    pub fn uniform(horizon: f64, h: f64, breakpoints: &[f64]) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return invalid(format!("grid step must be > 0, got {h}"));
        }
        if !(horizon.is_finite() && horizon > 0.0) {
            return invalid(format!("grid horizon must be > 0, got {horizon}"));
        }
        let n = (horizon / h - 1e-9).ceil().max(1.0) as usize;
        let mut times: Vec<f64> = (0..n).map(|k| k as f64 * h).collect();
        times.push(horizon);
        Grid::from_times(times)?.including(breakpoints)
    }

    pub fn from_times(times: Vec<f64>) -> Result<Self> {
        if times.len() < 2 || times[0] != 0.0 {
            return invalid("grid must start at 0 and have at least two times");
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return invalid("grid times must increase strictly");
        }
        Ok(Grid { times })
    }

    /// The grid refined by `breakpoints` inside `[0, T]`; breakpoints replace
    /// grid times closer than the merge tolerance.
    pub fn including(&self, breakpoints: &[f64]) -> Result<Self> {
        let horizon = self.horizon();
        let inside: Vec<f64> = breakpoints.iter().copied().filter(|t| (0.0..=horizon).contains(t)).collect();
        Grid::from_times(merge_times(&inside, &self.times))
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn horizon(&self) -> f64 {
        self.times[self.times.len() - 1]
    }

    /// Largest step.
    pub fn h(&self) -> f64 {
        self.times.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Grid request as it appears in solve configurations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    Step { h: f64 },
    Times { times: Vec<f64> },
}

impl GridSpec {
    pub fn build(&self, horizon: f64, breakpoints: &[f64]) -> Result<Grid> {
        match self {
            GridSpec::Step { h } => Grid::uniform(horizon, *h, breakpoints),
            GridSpec::Times { times } => {
                if times.last() != Some(&horizon) {
                    return invalid(format!("explicit grid must end at T = {horizon}"));
                }
                Grid::from_times(times.clone())?.including(breakpoints)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_grid_keeps_breakpoints_exactly() {
        let bp = 0.1 + 0.2; // not a multiple of h in floating point
        let g = Grid::uniform(1.0, 0.1, &[bp]).unwrap();
        assert!(g.times().contains(&bp));
        assert_eq!(g.times()[0], 0.0);
        assert_eq!(g.horizon(), 1.0);
        assert!(g.h() <= 0.1 + 1e-15);
        assert_eq!(g.len(), 11);
    }

    #[test]
    fn spec_parsing() {
        let s: GridSpec = serde_json::from_str(r#"{"h": 0.01}"#).unwrap();
        assert_eq!(s, GridSpec::Step { h: 0.01 });
        let s: GridSpec = serde_json::from_str(r#"{"times": [0, 0.5, 1]}"#).unwrap();
        assert_eq!(s.build(1.0, &[0.25]).unwrap().times(), &[0.0, 0.25, 0.5, 1.0]);
        assert!(GridSpec::Times { times: vec![0.0, 0.5] }.build(1.0, &[]).is_err());
        assert!(Grid::uniform(1.0, 0.0, &[]).is_err());
    }
}
