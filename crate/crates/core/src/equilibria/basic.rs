//! One ISP, one CP: competition, collaboration, side payments and
//! advertising.

use super::views::{polish, two_player_view};
use super::{EquilibriumOutcome, Regime, Source, Stability};
use crate::error::{Error, Result};
use crate::model::{linear_demand, utilities_two_player, MarketParams, PriceProfile, Transfers};
use crate::numerics::{best_response_dynamics, DynamicsOptions};

fn closed_form(p1: f64, p2: f64, demand: f64, u1: f64, u2: f64, regime: Regime) -> EquilibriumOutcome {
    EquilibriumOutcome {
        prices: PriceProfile::two_player(p1, p2),
        demand,
        class_split: None,
        utilities: vec![u1, u2],
        regime,
        stability: Stability::NotApplicable,
        source: Source::ClosedForm,
    }
}

/// Competitive NEP: `p1 = p2 = pmax/3`, `D = D0/3`, `Ui = Umax/9`.
pub fn solve_basic_competition(params: &MarketParams) -> EquilibriumOutcome {
    let p = params.pmax() / 3.0;
    let u = params.umax() / 9.0;
    closed_form(p, p, params.d0() / 3.0, u, u, Regime::Interior)
}

/// Coalition optimum: total price `pmax/2`, pooled revenue `Umax/4` shared
/// equally. Only the total price is determined; the symmetric split is
/// reported and every split on `p1 + p2 = pmax/2` earns the same.
pub fn solve_basic_collaboration(params: &MarketParams) -> EquilibriumOutcome {
    let p = params.pmax() / 4.0;
    let u = params.umax() / 8.0;
    closed_form(p, p, params.d0() / 2.0, u, u, Regime::Interior)
}

/// Competition under a regulated side payment `ps` (CP pays ISP when positive).
///
/// For `|ps| <= pmax/3` prices shift by `∓ps` and revenues are unchanged.
/// Beyond that the receiving side prices usage at zero.
pub fn solve_side_payment(params: &MarketParams, ps: f64) -> Result<EquilibriumOutcome> {
    Transfers::side_payment(ps)?.check_against(params)?;
    let (d0, d, pmax) = (params.d0(), params.d(), params.pmax());
    let third = pmax / 3.0;
    Ok(if ps.abs() <= third {
        let u = params.umax() / 9.0;
        closed_form(third - ps, third + ps, d0 / 3.0, u, u, Regime::Interior)
    } else if ps > 0.0 {
        let slack = d0 - d * ps;
        closed_form(
            0.0,
            (pmax + ps) / 2.0,
            slack / 2.0,
            slack * d * ps / (2.0 * d),
            slack * slack / (4.0 * d),
            Regime::BoundaryP1Zero,
        )
    } else {
        let slack = d0 + d * ps;
        closed_form(
            (pmax - ps) / 2.0,
            0.0,
            slack / 2.0,
            slack * slack / (4.0 * d),
            -slack * d * ps / (2.0 * d),
            Regime::BoundaryP2Zero,
        )
    })
}

/// Competition with advertising revenue `pa` accruing to the CP.
///
/// Interior NEP `p1 = pmax/3 - ps + pa/3`, `p2 = pmax/3 + ps - 2pa/3` with
/// `Ui = (D0 + d pa)² / (9d)`. When one of those prices would be negative the
/// boundary equilibrium is found by best-response dynamics instead and the
/// outcome is tagged [`Source::Oracle`].
pub fn solve_advertising_competition(params: &MarketParams, ps: f64, pa: f64) -> Result<EquilibriumOutcome> {
    let transfers = Transfers::new(ps, pa)?;
    transfers.check_against(params)?;
    let (d0, d, pmax) = (params.d0(), params.d(), params.pmax());
    let p1 = pmax / 3.0 - ps + pa / 3.0;
    let p2 = pmax / 3.0 + ps - 2.0 * pa / 3.0;
    if p1 >= 0.0 && p2 >= 0.0 {
        let lifted = d0 + d * pa;
        let u = lifted * lifted / (9.0 * d);
        return Ok(closed_form(p1, p2, lifted / 3.0, u, u, Regime::Interior));
    }

    let view = two_player_view(*params, transfers);
    let start = [p1.clamp(0.0, pmax), p2.clamp(0.0, pmax)];
    let fixed = best_response_dynamics(&view, &start, &DynamicsOptions::default())?;
    let x = polish(&view, &fixed.profile);
    let (u1, u2) = utilities_two_player(params, &transfers, x[0], x[1])?;
    let regime = match (x[0] == 0.0, x[1] == 0.0) {
        (true, false) => Regime::BoundaryP1Zero,
        (false, true) => Regime::BoundaryP2Zero,
        (false, false) => Regime::Interior,
        (true, true) => return Err(Error::domain("advertising competition collapsed to zero prices")),
    };
    Ok(EquilibriumOutcome {
        prices: PriceProfile::two_player(x[0], x[1]),
        demand: linear_demand(params, x[0] + x[1])?,
        class_split: None,
        utilities: vec![u1, u2],
        regime,
        stability: Stability::NotApplicable,
        source: Source::Oracle,
    })
}

/// Coalition with advertising: total price `(pmax - pa)/2`, per-provider
/// share `(D0 + d pa)² / (8d)`.
pub fn solve_advertising_collaboration(params: &MarketParams, pa: f64) -> Result<EquilibriumOutcome> {
    Transfers::new(0.0, pa)?;
    if pa > params.pmax() {
        return Err(Error::domain(format!("pa <= pmax required, got pa = {pa}, pmax = {}", params.pmax())));
    }
    let (d0, d) = (params.d0(), params.d());
    let total = (params.pmax() - pa) / 2.0;
    let lifted = d0 + d * pa;
    let u = lifted * lifted / (8.0 * d);
    Ok(closed_form(total / 2.0, total / 2.0, lifted / 2.0, u, u, Regime::Interior))
}
