use super::roots::bisect;
use crate::error::{Error, Result};

/// `φ(x) = (1 - x) e^{-x}`, a decreasing bijection of `[0, 1]`.
pub fn phi(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("phi is defined on [0, 1], got {x}")));
    }
    Ok(phi_unchecked(x))
}

pub(crate) fn phi_unchecked(x: f64) -> f64 {
    (1.0 - x) * (-x).exp()
}

/// Inverse of [`phi`] on `[0, 1]` by bisection.
pub fn phi_inverse(y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::domain(format!("phi^-1 is defined on [0, 1], got {y}")));
    }
    bisect(|x| phi_unchecked(x) - y, 0.0, 1.0, 200)
}
