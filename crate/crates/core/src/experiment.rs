//! Continuity of the play in the BV-norm topology, measured on perturbation
//! families `u_n -> u`.
//!
//! Every BV-convergent family is scaled so that `|u_n - u|_BV = 1/n` exactly.
//! The staircase family converges in the uniform strict metric only and is
//! flagged as a contrast case.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use std::io::Write;

use crate::bvpath::{bv_norm_dist, d_inf, d_us, linear_combination, BVPath, Node};
use crate::corpus::SolveRequest;
use crate::error::{invalid, Error, Result};
use crate::geometry::{ConvexSet, Point};
use crate::solver::{play, Grid};

/// Number of teeth of the wiggle perturbation.
pub const WIGGLE_TEETH: usize = 4;
/// Sequence indices used to fit the constant `C`.
pub const FIT_NS: [usize; 3] = [1, 2, 4];
/// Held-out sequence indices checked against `C/n + 10h`.
pub const HOLDOUT_NS: [usize; 4] = [8, 16, 32, 64];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `u + e/n` for a unit vector `e`.
    Shift,
    /// `(1 + c/n) u` with `c = 1/|u|_BV`.
    Amplitude,
    /// Step of size `1/(2n)` at the first jump, along the jump direction.
    JumpSize,
    /// Zigzag of amplitude `1/(n(1 + 2k))` with `k` teeth along a seeded direction.
    Wiggle,
    /// Tent of height `1/(3n)`; jump times are preserved.
    Reshape,
    /// Piecewise-constant sampling of `u` on `n` cells; small in `d_us` only.
    Staircase,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::Shift, Family::Amplitude, Family::JumpSize, Family::Wiggle, Family::Reshape, Family::Staircase];

    pub fn bv_convergent(self) -> bool {
        self != Family::Staircase
    }

    /// `u_n`, or `None` when the family does not apply to `u`.
    pub fn perturb(self, u: &BVPath, n: usize, seed: u64) -> Result<Option<BVPath>> {
        let horizon = u.horizon();
        let dim = u.dim();
        let eps = 1.0 / n as f64;
        let out = match self {
            Family::Shift => {
                let mut e = vec![0.0; dim];
                e[0] = eps;
                Some(u.shifted(&Point::new(e)?))
            }
            Family::Amplitude => {
                let norm = u.sup_norm() + u.total_variation();
                (norm > 0.0).then(|| u.scaled(1.0 + eps / norm))
            }
            Family::JumpSize => match u.nodes().iter().find(|n| n.left != n.right) {
                None => None,
                Some(node) => {
                    let dir = &(&node.right - &node.left) * (0.5 * eps / node.jump());
                    let step = BVPath::builder(Point::zeros(dim)).hold_to(node.t).jump(dir).hold_to(horizon).build()?;
                    Some(linear_combination(1.0, u, 1.0, &step)?)
                }
            },
            Family::Wiggle => {
                let dir = unit_direction(dim, seed)?;
                let amp = eps / (1.0 + 2.0 * WIGGLE_TEETH as f64);
                let mut b = BVPath::builder(Point::zeros(dim));
                let cell = horizon / WIGGLE_TEETH as f64;
                for k in 0..WIGGLE_TEETH {
                    let t = k as f64 * cell;
                    b = b.line_to(t + 0.5 * cell, &dir * amp);
                    b = b.line_to(if k + 1 == WIGGLE_TEETH { horizon } else { t + cell }, Point::zeros(dim));
                }
                Some(linear_combination(1.0, u, 1.0, &b.build()?)?)
            }
            Family::Reshape => {
                let mut e = vec![0.0; dim];
                e[0] = eps / 3.0;
                let tent = BVPath::polyline(
                    &[0.0, 0.5 * horizon, horizon],
                    &[Point::zeros(dim), Point::new(e)?, Point::zeros(dim)],
                )?;
                Some(linear_combination(1.0, u, 1.0, &tent)?)
            }
            Family::Staircase => {
                let mut nodes = vec![Node::continuous(0.0, u.eval(0.0)?)];
                let mut prev = u.eval(0.0)?;
                for k in 1..=n {
                    let t = if k == n { horizon } else { horizon * k as f64 / n as f64 };
                    let value = if k == n { u.left_limit(t)? } else { u.eval(t)? };
                    nodes.push(Node { t, left: prev.clone(), right: value.clone() });
                    prev = value;
                }
                let last = nodes.last_mut().expect("n >= 1");
                last.right = u.eval(horizon)?;
                Some(BVPath::new(horizon, nodes)?)
            }
        };
        Ok(out)
    }
}

fn unit_direction(dim: usize, seed: u64) -> Result<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let p = Point::new(v)?;
        let norm = p.norm();
        if norm > 0.1 {
            return Ok(&p * (1.0 / norm));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContinuityConfig {
    #[serde(rename = "Z")]
    pub z: ConvexSet,
    pub z0: Point,
    pub u: BVPath,
    #[serde(default = "default_h")]
    pub h: f64,
    #[serde(default = "default_families")]
    pub families: Vec<Family>,
    #[serde(default)]
    pub seed: u64,
}

impl ContinuityConfig {
    /// Experiment on the data of a solve request with every family.
    pub fn from_request(request: &SolveRequest, h: f64, seed: u64) -> Self {
        ContinuityConfig {
            z: request.z.clone(),
            z0: request.z0.clone(),
            u: request.u.clone(),
            h,
            families: default_families(),
            seed,
        }
    }
}

fn default_h() -> f64 {
    1e-3
}

fn default_families() -> Vec<Family> {
    Family::ALL.to_vec()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuityRow {
    pub family: Family,
    pub n: usize,
    pub input_bv_dist: f64,
    pub input_us_dist: f64,
    pub output_d_inf: f64,
    pub output_bv_dist: f64,
    pub h: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family: Family,
    pub bv_convergent: bool,
    /// Set for families that converge only in the uniform strict metric.
    pub flagged: bool,
    /// `max n |y_n - y|_BV` over the fitting indices.
    pub fitted_c: f64,
    /// Whether every held-out row satisfies `|y_n - y|_BV <= C/n + 10h`.
    pub bound_holds: bool,
    pub rows: Vec<ContinuityRow>,
}

/// Runs every applicable family of `config` for `n ∈ {1, 2, ..., 64}`.
pub fn bv_continuity(config: &ContinuityConfig) -> Result<Vec<FamilyReport>> {
    if !(config.h > 0.0) {
        return invalid(format!("step must be > 0, got {}", config.h));
    }
    let base_grid = Grid::uniform(config.u.horizon(), config.h, &config.u.times())?;
    let y = play(&config.z0, &config.u, &config.z, &base_grid)?.trajectory;
    let mut reports = Vec::new();
    for &family in &config.families {
        let mut rows = Vec::new();
        for n in FIT_NS.iter().chain(&HOLDOUT_NS).copied() {
            let Some(un) = family.perturb(&config.u, n, config.seed)? else { break };
            let grid = Grid::uniform(un.horizon(), config.h, &un.times())?;
            let yn = play(&config.z0, &un, &config.z, &grid)?.trajectory;
            rows.push(ContinuityRow {
                family,
                n,
                input_bv_dist: bv_norm_dist(&un, &config.u)?,
                input_us_dist: d_us(&un, &config.u)?,
                output_d_inf: d_inf(&yn, &y)?,
                output_bv_dist: bv_norm_dist(&yn, &y)?,
                h: config.h,
            });
        }
        if rows.is_empty() {
            continue;
        }
        let fitted_c =
            rows.iter().filter(|r| FIT_NS.contains(&r.n)).map(|r| r.n as f64 * r.output_bv_dist).fold(0.0, f64::max);
        let bound_holds = rows
            .iter()
            .filter(|r| HOLDOUT_NS.contains(&r.n))
            .all(|r| r.output_bv_dist <= fitted_c / r.n as f64 + 10.0 * config.h);
        reports.push(FamilyReport {
            family,
            bv_convergent: family.bv_convergent(),
            flagged: !family.bv_convergent(),
            fitted_c,
            bound_holds,
            rows,
        });
    }
    Ok(reports)
}

/// Writes all rows of `reports` as one CSV table.
pub fn write_table<W: Write>(reports: &[FamilyReport], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for row in reports.iter().flat_map(|r| &r.rows) {
        w.serialize(row).map_err(|e| Error::Invalid(format!("csv: {e}")))?;
    }
    w.flush().map_err(|e| Error::Invalid(format!("csv: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bvpath::bv_norm_dist;

    fn base() -> BVPath {
        BVPath::builder(Point::from_slice(&[0.0, 0.0]))
            .line_to(0.4, Point::from_slice(&[1.0, 0.5]))
            .jump(Point::from_slice(&[-0.5, 1.5]))
            .line_to(1.0, Point::from_slice(&[0.0, 0.0]))
            .build()
            .unwrap()
    }

    #[test]
    fn convergent_families_are_at_bv_distance_one_over_n() {
        let u = base();
        for family in Family::ALL.into_iter().filter(|f| f.bv_convergent()) {
            for n in [1, 3, 10] {
                let un = family.perturb(&u, n, 7).unwrap().unwrap();
                let d = bv_norm_dist(&un, &u).unwrap();
                assert!((d - 1.0 / n as f64).abs() < 1e-12, "{family:?} n={n}: {d}");
                assert_eq!(un.jump_times(), u.jump_times(), "{family:?}");
            }
        }
    }

    #[test]
    fn staircase_is_strictly_close_but_not_in_norm() {
        let u = BVPath::polyline(&[0.0, 1.0], &[Point::scalar(0.0), Point::scalar(1.0)]).unwrap();
        let un = Family::Staircase.perturb(&u, 50, 0).unwrap().unwrap();
        assert!(d_us(&un, &u).unwrap() <= 0.02 + 1e-12);
        assert!(bv_norm_dist(&un, &u).unwrap() > 1.9);
    }

    #[test]
    fn jump_size_needs_a_jump() {
        let u = BVPath::polyline(&[0.0, 1.0], &[Point::scalar(0.0), Point::scalar(1.0)]).unwrap();
        assert!(Family::JumpSize.perturb(&u, 2, 0).unwrap().is_none());
    }

    #[test]
    fn unperturbed_family_gives_zero_rows() {
        let cfg = ContinuityConfig {
            z: ConvexSet::ball(Point::from_slice(&[0.0, 0.0]), 1.0).unwrap(),
            z0: Point::from_slice(&[0.0, 0.0]),
            u: base(),
            h: 0.01,
            families: vec![Family::Shift],
            seed: 0,
        };
        let reports = bv_continuity(&cfg).unwrap();
        assert_eq!(reports[0].rows.len(), 7);
        assert!(reports[0].bound_holds);
    }
}
