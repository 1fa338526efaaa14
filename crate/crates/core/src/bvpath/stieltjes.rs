use serde::{Deserialize, Serialize};

use super::BVPath;
use crate::error::{invalid, Result};
use crate::geometry::Point;

/// Interval shapes for the Lebesgue–Stieltjes measure `μ_f = Df`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Interval {
    /// `]c, d]`
    LeftOpen,
    /// `[c, d]`
    Closed,
    /// `[c, d[`
    RightOpen,
    /// `]c, d[`
    Open,
}

/// Measure of an interval under `Df`, from one-sided limits of the
/// right-continuous path (with `f(0-) = f(0)` and `f(T+) = f(T)`).
pub fn stieltjes(f: &BVPath, c: f64, d: f64, interval: Interval) -> Result<Point> {
    let (c_minus, c_plus) = f.one_sided(c)?;
    let (d_minus, d_plus) = f.one_sided(d)?;
    if c > d {
        return invalid(format!("interval endpoints out of order: {c} > {d}"));
    }
    let empty = c == d && interval != Interval::Closed;
    if empty {
        return Ok(Point::zeros(f.dim()));
    }
    Ok(match interval {
        Interval::LeftOpen => &d_plus - &c_plus,
        Interval::Closed => &d_plus - &c_minus,
        Interval::RightOpen => &d_minus - &c_minus,
        Interval::Open => &d_minus - &c_plus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn whole_interval_and_atoms() {
        let f = BVPath::builder(Point::from_slice(&[1.0, 0.0]))
            .line_to(0.4, Point::from_slice(&[2.0, 0.0]))
            .jump(Point::from_slice(&[2.0, 3.0]))
            .line_to(1.0, Point::from_slice(&[0.0, 1.0]))
            .build()
            .unwrap();
        let all = stieltjes(&f, 0.0, 1.0, Interval::Closed).unwrap();
        assert_eq!(all, &f.eval(1.0).unwrap() - &f.eval(0.0).unwrap());
        let atom = stieltjes(&f, 0.4, 0.4, Interval::Closed).unwrap();
        assert_eq!(atom, Point::from_slice(&[0.0, 3.0]));
        assert_eq!(stieltjes(&f, 0.4, 0.4, Interval::Open).unwrap(), Point::zeros(2));
        let before = stieltjes(&f, 0.0, 0.4, Interval::RightOpen).unwrap();
        assert_eq!(before, Point::from_slice(&[1.0, 0.0]));
        assert!(matches!(stieltjes(&f, 0.0, 2.0, Interval::Open), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn constant_path_has_zero_measure() {
        let f = BVPath::constant(2.0, Point::scalar(5.0)).unwrap();
        for iv in [Interval::LeftOpen, Interval::Closed, Interval::RightOpen, Interval::Open] {
            assert_eq!(stieltjes(&f, 0.5, 1.5, iv).unwrap(), Point::scalar(0.0));
        }
    }
}
