//! Leader-follower pricing.

use super::{EquilibriumOutcome, Leader, Regime, Source, Stability};
use crate::error::{Error, Result};
use crate::model::{MarketParams, PriceProfile, Transfers};

/// Leader-follower equilibrium with fixed `ps` and `pa`.
///
/// ISP leading: `p1 = pmax/2 - ps + pa/2`, `p2 = pmax/4 + ps - 3pa/4`.
/// CP leading: `p2 = pmax/2 + ps - pa/2`, `p1 = pmax/4 - ps + pa/4`.
/// Either way `D = (D0 + d pa)/4`, the leader earns `(D0 + d pa)²/(8d)`
/// and the follower half of that.
///
/// Requires `ps <= pmax/2 + pa/2` and `pa <= pmax/3 + ps/4`, and that the
/// resulting prices lie in `[0, pmax]`.
pub fn solve_stackelberg(params: &MarketParams, transfers: &Transfers, leader: Leader) -> Result<EquilibriumOutcome> {
    transfers.check_against(params)?;
    let (d0, d, pmax) = (params.d0(), params.d(), params.pmax());
    let Transfers { ps, pa } = *transfers;
    if ps > pmax / 2.0 + pa / 2.0 {
        return Err(Error::domain(format!("ps <= pmax/2 + pa/2 violated: ps = {ps}, pa = {pa}, pmax = {pmax}")));
    }
    if pa > pmax / 3.0 + ps / 4.0 {
        return Err(Error::domain(format!("pa <= pmax/3 + ps/4 violated: ps = {ps}, pa = {pa}, pmax = {pmax}")));
    }
    let (p1, p2) = match leader {
        Leader::Isp => (pmax / 2.0 - ps + pa / 2.0, pmax / 4.0 + ps - 3.0 * pa / 4.0),
        Leader::Cp => (pmax / 4.0 - ps + pa / 4.0, pmax / 2.0 + ps - pa / 2.0),
    };
    for (name, p) in [("p1", p1), ("p2", p2)] {
        if !(0.0..=pmax).contains(&p) {
            return Err(Error::domain(format!("{leader}-led equilibrium puts {name} = {p} outside [0, {pmax}]")));
        }
    }
    let lifted = d0 + d * pa;
    let top = lifted * lifted / (8.0 * d);
    let utilities = match leader {
        Leader::Isp => vec![top, top / 2.0],
        Leader::Cp => vec![top / 2.0, top],
    };
    Ok(EquilibriumOutcome {
        prices: PriceProfile::two_player(p1, p2),
        demand: lifted / 4.0,
        class_split: None,
        utilities,
        regime: Regime::Interior,
        stability: Stability::NotApplicable,
        source: Source::ClosedForm,
    })
}
