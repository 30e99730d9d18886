//! One ISP, two CPs with customer stickiness.

use super::views::duopoly_view;
use super::{EquilibriumOutcome, Regime, Source, Stability};
use crate::error::{Error, Result};
use crate::model::{MarketParams, PriceProfile, StickinessKind, Transfers};
use crate::numerics::stability_probe;

/// `ψ(η) = √(1 + 28η + 36η²)`. Errors where the radicand is negative,
/// i.e. strictly between the two roots of `36η² + 28η + 1`.
pub fn psi(eta: f64) -> Result<f64> {
    let radicand = 1.0 + 28.0 * eta + 36.0 * eta * eta;
    if radicand < 0.0 {
        return Err(Error::domain(format!("psi undefined at eta = {eta}")));
    }
    Ok(radicand.sqrt())
}

/// Side payment at or below which the symmetric CP equilibria vanish:
/// `(-7 + 2√10)/18 · pmax ≈ -0.0375247 pmax`.
pub fn duopoly_threshold(pmax: f64) -> f64 {
    (-7.0 + 2.0 * 10f64.sqrt()) / 18.0 * pmax
}

/// Probe step around a symmetric CP price, shrunk near zero so the
/// probe stays inside the price box.
pub(crate) fn probe_step(params: &MarketParams, pbar: f64) -> f64 {
    (1e-4 * params.pmax()).min(0.5 * pbar)
}

fn probe(params: &MarketParams, kind: StickinessKind, ps: f64, p1: f64, pbar: f64) -> Stability {
    let h = probe_step(params, pbar);
    if !(h > 0.0) {
        return Stability::NotApplicable;
    }
    stability_probe(&duopoly_view(*params, kind, ps), &[p1, pbar, pbar], h).unwrap_or(Stability::NotApplicable)
}

fn outcome(
    p1: f64,
    pbar: f64,
    demand: f64,
    u1: f64,
    ui: f64,
    regime: Regime,
    stability: Stability,
) -> EquilibriumOutcome {
    EquilibriumOutcome {
        prices: PriceProfile::duopoly(p1, pbar, pbar),
        demand,
        class_split: None,
        utilities: vec![u1, ui, ui],
        regime,
        stability,
        source: Source::ClosedForm,
    }
}

/// Symmetric equilibrium without side payments.
///
/// `Reciprocal`: `p1 = 2pmax/5`, `p̄ = pmax/5`, `U1 = 4Umax/25`, `Ui = Umax/25`.
/// `Slackness`: `p1 = 5pmax/14`, `p̄ = 2pmax/7`, `U1 = 25Umax/196`, `Ui = 10Umax/196`.
pub fn solve_duopoly(params: &MarketParams, kind: StickinessKind) -> EquilibriumOutcome {
    let (pmax, umax, d0) = (params.pmax(), params.umax(), params.d0());
    let (p1, pbar, share, u1, ui) = match kind {
        StickinessKind::Reciprocal => (2.0 / 5.0, 1.0 / 5.0, 2.0 / 5.0, 4.0 / 25.0, 1.0 / 25.0),
        StickinessKind::Slackness => (5.0 / 14.0, 2.0 / 7.0, 5.0 / 14.0, 25.0 / 196.0, 10.0 / 196.0),
    };
    let (p1, pbar) = (p1 * pmax, pbar * pmax);
    let stability = probe(params, kind, 0.0, p1, pbar);
    outcome(p1, pbar, share * d0, u1 * umax, ui * umax, Regime::Interior, stability)
}

/// Symmetric equilibria under a side payment `ps` from each CP to the ISP.
///
/// With `η = ps/pmax` the CP price solves `5p̄² - (1+4η)pmax p̄ - (η+η²)pmax² = 0`.
/// For `ps >= 0` only the larger root `p̄₁` is admissible. Between the
/// threshold and zero both roots are, and the smaller `p̄₀` is returned
/// second. At or below the threshold the CPs price usage at zero and the
/// outcome is tagged [`Regime::BelowThreshold`]. Stability labels come
/// from the probe, never from the branch.
pub fn solve_duopoly_side_payments(params: &MarketParams, ps: f64) -> Result<Vec<EquilibriumOutcome>> {
    Transfers::side_payment(ps)?.check_against(params)?;
    let (pmax, umax, d0) = (params.pmax(), params.umax(), params.d0());
    let kind = StickinessKind::Reciprocal;
    let eta = ps / pmax;
    let radicand = 1.0 + 28.0 * eta + 36.0 * eta * eta;

    if ps <= duopoly_threshold(pmax) || radicand <= 0.0 {
        let p1 = (pmax - ps) / 2.0;
        let demand = d0 - params.d() * p1;
        let u1 = demand * (p1 + ps);
        let ui = 0.5 * demand * -ps;
        return Ok(vec![outcome(p1, 0.0, demand, u1, ui, Regime::BelowThreshold, Stability::NotApplicable)]);
    }

    let psi = radicand.sqrt();
    let cross = 2.0 - 19.0 * eta - 18.0 * eta * eta;
    let root = |sign: f64| {
        let pbar = pmax * (1.0 + 4.0 * eta + sign * psi) / 10.0;
        let p1 = pmax * (9.0 - 14.0 * eta - sign * psi) / 20.0;
        let lift = 9.0 + 6.0 * eta - sign * psi;
        let u1 = umax * lift * lift / 400.0;
        let ui = umax * (cross + sign * (2.0 + 3.0 * eta) * psi) / 100.0;
        let stability = probe(params, kind, ps, p1, pbar);
        outcome(p1, pbar, d0 * lift / 20.0, u1, ui, Regime::Interior, stability)
    };
    let mut out = vec![root(1.0)];
    if ps < 0.0 {
        out.push(root(-1.0));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::utilities_duopoly;
    use crate::numerics::solve_quadratic;

    fn unit() -> MarketParams {
        MarketParams::default()
    }

    #[test]
    fn reciprocal_and_slackness_values() {
        let r = solve_duopoly(&unit(), StickinessKind::Reciprocal);
        assert_eq!(r.prices.values(), vec![0.4, 0.2, 0.2]);
        assert_eq!(r.utilities, vec![0.16, 0.04, 0.04]);
        assert_eq!(r.stability, Stability::Stable);
        let s = solve_duopoly(&unit(), StickinessKind::Slackness);
        assert_eq!(s.prices.values(), vec![5.0 / 14.0, 2.0 / 7.0, 2.0 / 7.0]);
        assert!((s.utilities[0] - 0.12).abs() < 0.01);
        assert!((s.utilities[1] - 0.051).abs() < 0.001);
    }

    #[test]
    fn zero_side_payment_is_plain_reciprocal() {
        let plain = solve_duopoly(&unit(), StickinessKind::Reciprocal);
        let paid = solve_duopoly_side_payments(&unit(), 0.0).unwrap();
        assert_eq!(paid, vec![plain]);
        assert_eq!(psi(0.0).unwrap(), 1.0);
    }

    #[test]
    fn roots_match_quadratic() {
        for eta in [-0.03, -0.02, 0.0, 0.1, 0.3] {
            let roots = solve_quadratic(5.0, -(1.0 + 4.0 * eta), -(eta + eta * eta));
            let disc = (1.0 + 4.0 * eta).powi(2) + 20.0 * (eta + eta * eta);
            assert!((disc - psi(eta).unwrap().powi(2)).abs() < 1e-12);
            let outs = solve_duopoly_side_payments(&unit(), eta).unwrap();
            let top = outs[0].prices.values()[1];
            assert!((top - roots[1]).abs() < 1e-12);
            if eta < 0.0 {
                assert!((outs[1].prices.values()[1] - roots[0]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn outcomes_reevaluate_through_model() {
        for eta in [-0.035, -0.02, 0.05, 0.2] {
            for o in solve_duopoly_side_payments(&unit(), eta).unwrap() {
                let p = o.prices.values();
                let (u1, u2, u3) =
                    utilities_duopoly(&unit(), StickinessKind::Reciprocal, eta, p[0], p[1], p[2]).unwrap();
                assert!((u1 - o.utilities[0]).abs() < 1e-12);
                assert!((u2 - o.utilities[1]).abs() < 1e-12 && (u3 - o.utilities[2]).abs() < 1e-12);
                assert!((o.demand - (1.0 - p[0] - p[1])).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn negative_side_payment_labels() {
        let outs = solve_duopoly_side_payments(&unit(), -0.02).unwrap();
        assert_eq!(outs.len(), 2);
        assert!((outs[0].prices.values()[1] - 0.15941).abs() < 1e-5);
        assert!((outs[1].prices.values()[1] - 0.02459).abs() < 1e-5);
        assert_eq!(outs[0].stability, Stability::Stable);
        assert_eq!(outs[1].stability, Stability::Unstable);
        assert!(outs[1].utilities[0] > outs[0].utilities[0]);
    }

    #[test]
    fn threshold_and_below() {
        let t = duopoly_threshold(1.0);
        assert!((36.0 * t * t + 28.0 * t + 1.0).abs() < 1e-14);
        assert!((t + 0.0375247).abs() < 1e-7);
        let outs = solve_duopoly_side_payments(&unit(), -0.05).unwrap();
        assert_eq!(outs.len(), 1);
        assert_eq!(outs[0].regime, Regime::BelowThreshold);
        assert_eq!(outs[0].prices.values(), vec![0.525, 0.0, 0.0]);
        assert!(solve_duopoly_side_payments(&unit(), 1.5).is_err());
    }
}
