use super::{merge_times, BVPath, Node};
use crate::error::{Error, Result};

fn check_compatible(f: &BVPath, g: &BVPath) -> Result<()> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: g.dim() });
    }
    if f.horizon() != g.horizon() {
        return Err(Error::HorizonMismatch(f.horizon(), g.horizon()));
    }
    Ok(())
}

/// `a f + b g` on the merged node set; exact for this path class.
pub fn linear_combination(a: f64, f: &BVPath, b: f64, g: &BVPath) -> Result<BVPath> {
    check_compatible(f, g)?;
    let times = merge_times(&f.times(), &g.times());
    let nodes = times
        .into_iter()
        .map(|t| {
            let (fl, fr) = f.one_sided(t)?;
            let (gl, gr) = g.one_sided(t)?;
            Ok(Node { t, left: &(&fl * a) + &(&gl * b), right: &(&fr * a) + &(&gr * b) })
        })
        .collect::<Result<Vec<_>>>()?;
    BVPath::new(f.horizon(), nodes)
}

/// Uniform distance `sup_t |f(t) - g(t)|`.
pub fn d_inf(f: &BVPath, g: &BVPath) -> Result<f64> {
    Ok(linear_combination(1.0, f, -1.0, g)?.sup_norm())
}

/// Uniform strict distance `d_inf(f, g) + |V(f) - V(g)|`.
pub fn d_us(f: &BVPath, g: &BVPath) -> Result<f64> {
    Ok(d_inf(f, g)? + (f.total_variation() - g.total_variation()).abs())
}

/// BV-norm distance `|f - g|_inf + V(f - g)`.
pub fn bv_norm_dist(f: &BVPath, g: &BVPath) -> Result<f64> {
    let diff = linear_combination(1.0, f, -1.0, g)?;
    Ok(diff.sup_norm() + diff.total_variation())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    fn s(x: f64) -> Point {
        Point::scalar(x)
    }

    #[test]
    fn identical_and_constant_offsets() {
        let f = BVPath::polyline(&[0.0, 0.3, 1.0], &[s(0.0), s(2.0), s(-1.0)]).unwrap();
        assert_eq!(d_inf(&f, &f).unwrap(), 0.0);
        assert_eq!(d_us(&f, &f).unwrap(), 0.0);
        assert_eq!(bv_norm_dist(&f, &f).unwrap(), 0.0);
        let zero = BVPath::constant(1.0, s(0.0)).unwrap();
        let eps = BVPath::constant(1.0, s(0.125)).unwrap();
        assert_eq!(d_inf(&zero, &eps).unwrap(), 0.125);
        assert_eq!(d_us(&zero, &eps).unwrap(), 0.125);
        assert_eq!(bv_norm_dist(&zero, &eps).unwrap(), 0.125);
    }

    #[test]
    fn zigzag_is_us_small_but_bv_large() {
        let (eps, k) = (0.01, 25usize);
        // k teeth: 0 -> eps -> 0 repeated
        let mut times = vec![0.0];
        let mut values = vec![s(0.0)];
        for i in 0..k {
            times.push((2 * i + 1) as f64 / (2 * k) as f64);
            values.push(s(eps));
            times.push((2 * i + 2) as f64 / (2 * k) as f64);
            values.push(s(0.0));
        }
        let zig = BVPath::polyline(&times, &values).unwrap();
        let zero = BVPath::constant(1.0, s(0.0)).unwrap();
        assert_eq!(d_inf(&zero, &zig).unwrap(), eps);
        let bv = bv_norm_dist(&zero, &zig).unwrap();
        assert!((bv - (eps + 2.0 * k as f64 * eps)).abs() < 1e-12);
    }

    #[test]
    fn mismatches_are_errors() {
        let a = BVPath::constant(1.0, s(0.0)).unwrap();
        let b = BVPath::constant(2.0, s(0.0)).unwrap();
        let c = BVPath::constant(1.0, Point::zeros(2)).unwrap();
        assert!(matches!(d_inf(&a, &b), Err(Error::HorizonMismatch(..))));
        assert!(matches!(d_inf(&a, &c), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn sup_includes_left_limits_at_jumps() {
        let f = BVPath::builder(s(0.0)).line_to(0.5, s(1.0)).jump(s(0.0)).hold_to(1.0).build().unwrap();
        let zero = BVPath::constant(1.0, s(0.0)).unwrap();
        assert_eq!(d_inf(&f, &zero).unwrap(), 1.0);
    }
}
