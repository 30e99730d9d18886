use serde::Serialize;

use super::{ClassParams, MarketParams};
use crate::error::{Error, Result};

/// Linear demand `max(0, D0 - d * total_price)`.
pub fn linear_demand(params: &MarketParams, total_price: f64) -> Result<f64> {
    if !(total_price >= 0.0) {
        return Err(Error::domain(format!("total price must be non-negative, got {total_price}")));
    }
    Ok(clamped_demand(params, total_price))
}

pub(crate) fn clamped_demand(params: &MarketParams, total_price: f64) -> f64 {
    (params.d0() - params.d() * total_price).max(0.0)
}

/// Demand of the two-class ISP market split between the low and high class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassSplit {
    pub low: f64,
    pub high: f64,
    pub total: f64,
}

/// Splits total demand between the two service classes.
///
/// `δ = (ph - pl) / (γ pmax)` and `Dl = (1 - e^{-δ}) D`. When split
/// coefficients are present the total is `D0 - dl pl - dh ph - d2 p2`
/// (clamped), otherwise the plain linear demand on `pl + ph + p2`.
pub fn class_split(params: &MarketParams, class: &ClassParams, pl: f64, ph: f64, p2: f64) -> Result<ClassSplit> {
    check_class_prices(pl, ph, p2)?;
    Ok(split_unchecked(params, class, pl, ph, p2))
}

pub(crate) fn check_class_prices(pl: f64, ph: f64, p2: f64) -> Result<()> {
    if !(pl >= 0.0) {
        return Err(Error::domain(format!("pl must be non-negative, got {pl}")));
    }
    if !(ph >= pl) {
        return Err(Error::domain(format!("ph >= pl required, got pl = {pl}, ph = {ph}")));
    }
    if !(p2 >= 0.0) {
        return Err(Error::domain(format!("p2 must be non-negative, got {p2}")));
    }
    Ok(())
}

pub(crate) fn class_total_demand(params: &MarketParams, class: &ClassParams, pl: f64, ph: f64, p2: f64) -> f64 {
    match class.split() {
        Some(c) => (params.d0() - c.dl * pl - c.dh * ph - c.d2 * p2).max(0.0),
        None => clamped_demand(params, pl + ph + p2),
    }
}

/// Class-choice pressure `δ = Δp / (γ pmax)`.
pub(crate) fn class_pressure(params: &MarketParams, class: &ClassParams, pl: f64, ph: f64) -> f64 {
    (ph - pl) / (class.gamma() * params.pmax())
}

pub(crate) fn split_unchecked(params: &MarketParams, class: &ClassParams, pl: f64, ph: f64, p2: f64) -> ClassSplit {
    let total = class_total_demand(params, class, pl, ph, p2);
    let delta = class_pressure(params, class, pl, ph);
    // -expm1(-δ) = 1 - e^{-δ} without cancellation for small δ
    let low = (-(-delta).exp_m1()) * total;
    ClassSplit { low, high: total - low, total }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> MarketParams {
        MarketParams::default()
    }

    #[test]
    fn demand_examples() {
        assert_eq!(linear_demand(&unit(), 0.0).unwrap(), 1.0);
        assert!((linear_demand(&unit(), 2.0 / 3.0).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(linear_demand(&unit(), 1.5).unwrap(), 0.0);
        assert!(linear_demand(&unit(), -0.1).is_err());
        assert!(linear_demand(&unit(), f64::NAN).is_err());
    }

    #[test]
    fn split_equal_prices_is_all_high() {
        let class = ClassParams::new(1.0).unwrap();
        let s = class_split(&unit(), &class, 0.2, 0.2, 0.1).unwrap();
        assert_eq!(s.low, 0.0);
        assert_eq!(s.high, s.total);
        assert!((s.total - 0.5).abs() < 1e-15);
    }

    #[test]
    fn split_direct_evaluation() {
        let class = ClassParams::new(1.0).unwrap();
        let s = class_split(&unit(), &class, 0.0, 0.2, 0.0).unwrap();
        assert!((s.total - 0.8).abs() < 1e-15);
        let expected = 0.8 * (1.0 - (-0.2f64).exp());
        assert!((s.low - expected).abs() < 1e-15);
        assert!((s.low + s.high - s.total).abs() < 1e-15);
    }

    #[test]
    fn small_gamma_sends_everyone_low() {
        let class = ClassParams::new(1e-9).unwrap();
        let s = class_split(&unit(), &class, 0.0, 0.1, 0.0).unwrap();
        assert_eq!(s.low, s.total);
    }

    #[test]
    fn split_rejects_inverted_classes() {
        let class = ClassParams::new(1.0).unwrap();
        assert!(class_split(&unit(), &class, 0.3, 0.2, 0.0).is_err());
    }

    #[test]
    fn split_coefficients_change_total() {
        let class = ClassParams::with_split(1.0, 0.5, 0.5, 1.0).unwrap();
        let s = class_split(&unit(), &class, 0.1, 0.3, 0.2).unwrap();
        assert!((s.total - (1.0 - 0.05 - 0.15 - 0.2)).abs() < 1e-15);
    }
}
