use serde::Serialize;

use crate::error::{Error, Result};

/// Axis-aligned box in a two-price plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Region {
    pub x: (f64, f64),
    pub y: (f64, f64),
}

impl Region {
    pub fn square(lo: f64, hi: f64) -> Self {
        Region { x: (lo, hi), y: (lo, hi) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldSample {
    pub x: f64,
    pub y: f64,
    pub gx: f64,
    pub gy: f64,
    pub magnitude: f64,
}

/// Central-difference gradient of `f` at one point.
pub fn central_gradient<F: Fn(f64, f64) -> f64>(f: &F, x: f64, y: f64, step: f64) -> (f64, f64) {
    let gx = (f(x + step, y) - f(x - step, y)) / (2.0 * step);
    let gy = (f(x, y + step) - f(x, y - step)) / (2.0 * step);
    (gx, gy)
}

/// Central-difference gradient of `f` on a `nx × ny` grid over `region`.
///
/// Samples are row-major: `y` is the row index, `x` varies fastest.
pub fn gradient_field<F: Fn(f64, f64) -> f64>(
    f: F,
    region: Region,
    resolution: (usize, usize),
    step: f64,
) -> Result<Vec<FieldSample>> {
    let (nx, ny) = resolution;
    if nx < 2 || ny < 2 {
        return Err(Error::domain(format!("field resolution must be at least 2x2, got {nx}x{ny}")));
    }
    if !(region.x.1 > region.x.0 && region.y.1 > region.y.0) {
        return Err(Error::domain(format!("empty field region {region:?}")));
    }
    if !(step > 0.0) {
        return Err(Error::domain(format!("difference step must be positive, got {step}")));
    }
    let coord = |(lo, hi): (f64, f64), i: usize, n: usize| lo + (hi - lo) * i as f64 / (n - 1) as f64;
    let mut samples = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        let y = coord(region.y, j, ny);
        for i in 0..nx {
            let x = coord(region.x, i, nx);
            let (gx, gy) = central_gradient(&f, x, y, step);
            samples.push(FieldSample { x, y, gx, gy, magnitude: gx.hypot(gy) });
        }
    }
    Ok(samples)
}
