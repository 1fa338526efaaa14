//! Browser demo: thin `wasm-bindgen` wrappers around the solver. The inner
//! functions are plain Rust so they run in native tests.

use sweepbv::geometry::{geodesic_set, hausdorff_distance};
use sweepbv::solver::{play, Grid};
use sweepbv::{BVPath, ConvexSet, Point};
use wasm_bindgen::prelude::*;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Scalar play with `Z = [-half_width, half_width]` driven by a triangle wave
/// of the given amplitude, one cycle per unit time. Returns `[u_0, y_0, u_1, y_1, ...]`
/// at the grid times.
pub fn hysteresis_loop_impl(amplitude: f64, half_width: f64, cycles: u32, h: f64) -> Result<Vec<f64>, String> {
    if cycles == 0 || cycles > 100 {
        return Err("cycles must be in 1..=100".into());
    }
    let mut times = vec![0.0];
    let mut values = vec![Point::scalar(0.0)];
    for k in 0..cycles {
        let t = k as f64;
        times.extend([t + 0.25, t + 0.75, t + 1.0]);
        values.extend([Point::scalar(amplitude), Point::scalar(-amplitude), Point::scalar(0.0)]);
    }
    let u = BVPath::polyline(&times, &values).map_err(err)?;
    let z = ConvexSet::interval(-half_width, half_width).map_err(err)?;
    let grid = Grid::uniform(u.horizon(), h, &u.times()).map_err(err)?;
    let y = play(&Point::scalar(0.0), &u, &z, &grid).map_err(err)?.trajectory;
    let mut out = Vec::with_capacity(2 * grid.len());
    for &t in grid.times() {
        out.push(u.eval(t).map_err(err)?[0]);
        out.push(y.eval(t).map_err(err)?[0]);
    }
    Ok(out)
}

/// `kind` is `"ball"` with `params = [cx, cy, r]` or `"box"` with
/// `params = [lx, ly, ux, uy]`.
pub fn planar_set(kind: &str, params: &[f64]) -> Result<ConvexSet, String> {
    let p = |c: &[f64]| Point::new(c.to_vec()).map_err(err);
    match (kind, params) {
        ("ball", [cx, cy, r]) => ConvexSet::ball(p(&[*cx, *cy])?, *r).map_err(err),
        ("box", [lx, ly, ux, uy]) => ConvexSet::cuboid(p(&[*lx, *ly])?, p(&[*ux, *uy])?).map_err(err),
        _ => Err(format!("unknown set {kind:?} with {} parameters", params.len())),
    }
}

/// Planar play along the closed polygon through `vertices = [x0, y0, x1, y1, ...]`
/// (one unit of time per edge) with characteristic set `kind`/`params`,
/// starting from `z0 = 0` (which must lie in `Z`). Returns `[ux, uy, yx, yy, ...]`
/// at the grid times.
pub fn play_2d_impl(kind: &str, params: &[f64], vertices: &[f64], h: f64) -> Result<Vec<f64>, String> {
    if vertices.len() < 4 || !vertices.len().is_multiple_of(2) {
        return Err("need at least two vertices as x, y pairs".into());
    }
    let z = planar_set(kind, params)?;
    let mut points: Vec<Point> =
        vertices.chunks(2).map(|c| Point::new(c.to_vec()).map_err(err)).collect::<Result<_, _>>()?;
    points.push(points[0].clone());
    let times: Vec<f64> = (0..points.len()).map(|k| k as f64).collect();
    let u = BVPath::polyline(&times, &points).map_err(err)?;
    let grid = Grid::uniform(u.horizon(), h, &u.times()).map_err(err)?;
    let y = play(&Point::zeros(2), &u, &z, &grid).map_err(err)?.trajectory;
    let mut out = Vec::with_capacity(4 * grid.len());
    for &t in grid.times() {
        out.extend_from_slice(u.eval(t).map_err(err)?.coords());
        out.extend_from_slice(y.eval(t).map_err(err)?.coords());
    }
    Ok(out)
}

/// Membership of the cell centers of an `n × n` grid over
/// `[-extent, extent]²` in the geodesic set `G(t)` between `A` and `B`.
/// Returns `[ρ, m_00, m_01, ...]` with `m = 1` inside, row-major from the top.
pub fn geodesic_grid_impl(
    kind_a: &str,
    params_a: &[f64],
    kind_b: &str,
    params_b: &[f64],
    t: f64,
    n: u32,
    extent: f64,
) -> Result<Vec<f64>, String> {
    if n == 0 || n > 512 {
        return Err("n must be in 1..=512".into());
    }
    let a = planar_set(kind_a, params_a)?;
    let b = planar_set(kind_b, params_b)?;
    let rho = hausdorff_distance(&a, &b).map_err(err)?;
    let g = geodesic_set(&a, &b, t).map_err(err)?;
    let cell = 2.0 * extent / n as f64;
    let mut out = Vec::with_capacity(1 + (n * n) as usize);
    out.push(rho);
    for row in 0..n {
        let y = extent - (row as f64 + 0.5) * cell;
        for col in 0..n {
            let x = -extent + (col as f64 + 0.5) * cell;
            let inside = g.contains(&Point::from_slice(&[x, y]), 1e-9).map_err(err)?;
            out.push(if inside { 1.0 } else { 0.0 });
        }
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn hysteresis_loop(amplitude: f64, half_width: f64, cycles: u32, h: f64) -> Result<Vec<f64>, JsValue> {
    hysteresis_loop_impl(amplitude, half_width, cycles, h).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn play_2d(kind: &str, params: &[f64], vertices: &[f64], h: f64) -> Result<Vec<f64>, JsValue> {
    play_2d_impl(kind, params, vertices, h).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn geodesic_grid(
    kind_a: &str,
    params_a: &[f64],
    kind_b: &str,
    params_b: &[f64],
    t: f64,
    n: u32,
    extent: f64,
) -> Result<Vec<f64>, JsValue> {
    geodesic_grid_impl(kind_a, params_a, kind_b, params_b, t, n, extent).map_err(|e| JsValue::from_str(&e))
}
