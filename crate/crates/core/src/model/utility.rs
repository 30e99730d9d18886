use super::demand::{check_class_prices, clamped_demand, split_unchecked};
use super::stickiness::stickiness_share;
use super::{ClassParams, MarketParams, StickinessKind, Transfers};
use crate::error::{Error, Result};

/// `U1 = D (p1 + ps)`, `U2 = D (p2 - ps + pa)` with `D` the linear demand
/// on `p1 + p2`.
pub fn utilities_two_player(params: &MarketParams, transfers: &Transfers, p1: f64, p2: f64) -> Result<(f64, f64)> {
    if !(p1 >= 0.0 && p2 >= 0.0) {
        return Err(Error::domain(format!("prices must be non-negative, got p1 = {p1}, p2 = {p2}")));
    }
    Ok(two_player_unchecked(params, transfers, p1, p2))
}

pub(crate) fn two_player_unchecked(params: &MarketParams, transfers: &Transfers, p1: f64, p2: f64) -> (f64, f64) {
    let demand = clamped_demand(params, p1 + p2);
    (demand * (p1 + transfers.ps), demand * (p2 - transfers.ps + transfers.pa))
}

/// Two-class ISP revenue `U1 = D (pl + Δp e^{-δ})` and CP revenue `U2 = D p2`.
pub fn utilities_multiclass(
    params: &MarketParams,
    class: &ClassParams,
    pl: f64,
    ph: f64,
    p2: f64,
) -> Result<(f64, f64)> {
    check_class_prices(pl, ph, p2)?;
    Ok(multiclass_unchecked(params, class, pl, ph, p2))
}

pub(crate) fn multiclass_unchecked(
    params: &MarketParams,
    class: &ClassParams,
    pl: f64,
    ph: f64,
    p2: f64,
) -> (f64, f64) {
    let split = split_unchecked(params, class, pl, ph, p2);
    let gap = ph - pl;
    let delta = gap / (class.gamma() * params.pmax());
    (split.total * (pl + gap * (-delta).exp()), split.total * p2)
}

/// ISP and the two CPs' revenues under customer stickiness.
///
/// Each CP earns `s(pi, pj) D(p1, pi) (pi - ps)` with `D(p1, pi) = D0 - d (p1 + pi)`.
/// The ISP carries the share-weighted demand of both CPs times `p1 + ps`,
/// which is `D(p1, p̄) (p1 + ps)` when the CPs price alike.
pub fn utilities_duopoly(
    params: &MarketParams,
    kind: StickinessKind,
    ps: f64,
    p1: f64,
    p2: f64,
    p3: f64,
) -> Result<(f64, f64, f64)> {
    let pmax = params.pmax();
    for (name, p) in [("p1", p1), ("p2", p2), ("p3", p3)] {
        if !(p >= 0.0 && p <= pmax) {
            return Err(Error::domain(format!("{name} = {p} outside [0, {pmax}]")));
        }
    }
    Ok(duopoly_unchecked(params, kind, ps, p1, p2, p3))
}

pub(crate) fn duopoly_unchecked(
    params: &MarketParams,
    kind: StickinessKind,
    ps: f64,
    p1: f64,
    p2: f64,
    p3: f64,
) -> (f64, f64, f64) {
    let pmax = params.pmax();
    let s2 = stickiness_share(kind, p2, p3, pmax);
    let s3 = stickiness_share(kind, p3, p2, pmax);
    let d2 = clamped_demand(params, p1 + p2);
    let d3 = clamped_demand(params, p1 + p3);
    let isp_demand = if p2 == p3 { d2 } else { s2 * d2 + s3 * d3 };
    (isp_demand * (p1 + ps), s2 * d2 * (p2 - ps), s3 * d3 * (p3 - ps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> MarketParams {
        MarketParams::default()
    }

    #[test]
    fn two_player_examples() {
        let none = Transfers::default();
        let (u1, u2) = utilities_two_player(&unit(), &none, 1.0 / 3.0, 1.0 / 3.0).unwrap();
        assert!((u1 - 1.0 / 9.0).abs() < 1e-15 && (u2 - 1.0 / 9.0).abs() < 1e-15);

        let side = Transfers::side_payment(0.5).unwrap();
        let (u1, u2) = utilities_two_player(&unit(), &side, 0.0, 0.75).unwrap();
        assert!((u1 - 0.125).abs() < 1e-15);
        assert!((u2 - 0.0625).abs() < 1e-15);

        let (u1, u2) = utilities_two_player(&unit(), &none, 0.4, 0.6).unwrap();
        assert_eq!((u1, u2), (0.0, 0.0));
        assert!(utilities_two_player(&unit(), &none, -0.1, 0.2).is_err());
    }

    #[test]
    fn multiclass_collapses_to_single_class() {
        let class = ClassParams::new(0.7).unwrap();
        let (u1, u2) = utilities_multiclass(&unit(), &class, 0.2, 0.2, 0.1).unwrap();
        let d = 1.0 - 0.5;
        assert!((u1 - d * 0.2).abs() < 1e-15);
        assert!((u2 - d * 0.1).abs() < 1e-15);
    }

    #[test]
    fn multiclass_flat_low_class() {
        let class = ClassParams::new(2.0).unwrap();
        let (u1, _) = utilities_multiclass(&unit(), &class, 0.0, 0.4, 0.1).unwrap();
        let expected = 0.5 * 0.4 * (-0.2f64).exp();
        assert!((u1 - expected).abs() < 1e-15);
    }

    #[test]
    fn multiclass_direct_evaluation() {
        let class = ClassParams::new(1.0).unwrap();
        let (u1, u2) = utilities_multiclass(&unit(), &class, 0.1, 0.3, 0.2).unwrap();
        let expected = 0.4 * (0.1 + 0.2 * (-0.2f64).exp());
        assert!((u1 - expected).abs() < 1e-15);
        assert!((u2 - 0.4 * 0.2).abs() < 1e-15);
        let split = split_unchecked(&unit(), &class, 0.1, 0.3, 0.2);
        assert!((split.low * 0.1 + split.high * 0.3 - u1).abs() < 1e-15);
    }

    #[test]
    fn duopoly_examples() {
        let (u1, u2, u3) = utilities_duopoly(&unit(), StickinessKind::Reciprocal, 0.0, 0.4, 0.2, 0.2).unwrap();
        assert!((u1 - 0.16).abs() < 1e-15);
        assert!((u2 - 0.04).abs() < 1e-15);
        assert_eq!(u2, u3);

        let (u1, u2, u3) =
            utilities_duopoly(&unit(), StickinessKind::Slackness, 0.0, 5.0 / 14.0, 2.0 / 7.0, 2.0 / 7.0).unwrap();
        assert!((u1 - 25.0 / 196.0).abs() < 1e-15);
        assert!((u2 - 10.0 / 196.0).abs() < 1e-15);
        assert_eq!(u2, u3);
        assert!(utilities_duopoly(&unit(), StickinessKind::Slackness, 0.0, 1.2, 0.1, 0.1).is_err());
    }

    #[test]
    fn duopoly_asymmetric_uses_own_demand() {
        let k = StickinessKind::Reciprocal;
        let (u1, u2, u3) = utilities_duopoly(&unit(), k, 0.0, 0.3, 0.1, 0.3).unwrap();
        assert!((u2 - 0.75 * 0.6 * 0.1).abs() < 1e-15);
        assert!((u3 - 0.25 * 0.4 * 0.3).abs() < 1e-15);
        assert!((u1 - (0.75 * 0.6 + 0.25 * 0.4) * 0.3).abs() < 1e-15);
    }
}
