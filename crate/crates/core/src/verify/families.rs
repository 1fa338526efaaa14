use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bvpath::{linear_combination, BVPath, Node};
use crate::error::Result;
use crate::geometry::{project, ConvexSet, Point};

/// Test functions for the integral variational inequality: constants in `Z`
/// (the initial state and projections of axis points), the stop trajectory
/// `u - y`, and `count` random piecewise-constant `Z`-valued paths.
pub fn vi_test_functions(
    z0: &Point,
    u: &BVPath,
    y: &BVPath,
    z: &ConvexSet,
    count: usize,
    seed: u64,
) -> Result<Vec<BVPath>> {
    let horizon = u.horizon();
    let dim = u.dim();
    let radius = u.sup_norm() + z0.norm() + 1.0;
    let mut tests = vec![BVPath::constant(horizon, z0.clone())?];
    for i in 0..dim {
        for sign in [-1.0, 1.0] {
            let mut e = vec![0.0; dim];
            e[i] = sign * radius;
            tests.push(BVPath::constant(horizon, project(z, &Point::new(e)?)?)?);
        }
    }
    tests.push(linear_combination(1.0, u, -1.0, y)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let pieces = rng.gen_range(2..=8);
        let mut times: Vec<f64> = (1..pieces).map(|_| rng.gen_range(0.0..horizon)).collect();
        times.sort_by(f64::total_cmp);
        times.dedup();
        let sample = |rng: &mut ChaCha8Rng| -> Result<Point> {
            let x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-radius..radius)).collect();
            project(z, &(&Point::new(x)? + z0))
        };
        let mut builder = BVPath::builder(sample(&mut rng)?);
        for &t in times.iter().filter(|&&t| t > 0.0) {
            builder = builder.hold_to(t).jump(sample(&mut rng)?);
        }
        tests.push(builder.hold_to(horizon).build()?);
    }
    Ok(tests)
}

/// Copy of `y` with every node displaced by an independent uniform vector in
/// `[-amplitude, amplitude]^d`; negative control for the normal-cone check.
pub fn corrupted(y: &BVPath, amplitude: f64, seed: u64) -> Result<BVPath> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut noise = |p: &Point| {
        let offsets: Vec<f64> = (0..p.dim()).map(|_| rng.gen_range(-amplitude..=amplitude)).collect();
        p.zip_map(&Point::from_slice(&offsets), |a, b| a + b)
    };
    let nodes = y
        .nodes()
        .iter()
        .map(|n| {
            let left = noise(&n.left);
            let right = if n.left == n.right { left.clone() } else { noise(&n.right) };
            Node { t: n.t, left, right }
        })
        .collect();
    BVPath::new(y.horizon(), nodes)
}
