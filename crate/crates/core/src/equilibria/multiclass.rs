//! One ISP with a low and a high service class, one CP.
//!
//! None of these games has a usable closed form: the printed formulas for
//! the collaboration branch and for the ISP's competitive price do not
//! satisfy the model's first-order conditions. Every outcome here therefore
//! comes from numeric maximization, and the printed values are attached
//! alongside for comparison.

use serde::Serialize;

use super::reference::{
    compare_outcomes, printed_collab_p2_zero, printed_collab_pl_zero, printed_competition, Comparison,
};
use super::views::{polish, scenario_game};
use super::{EquilibriumOutcome, Regime, Scenario, ScenarioSpec, Source, Stability};
use crate::error::{Error, Result};
use crate::model::demand::split_unchecked;
use crate::model::utility::multiclass_unchecked;
use crate::model::{ClassParams, MarketParams, PriceProfile};
use crate::numerics::{argmax_2d, best_response_dynamics, bisect, phi_inverse, DynamicsOptions};

/// Grid for the nested two-dimensional searches.
const GRID_2D: usize = 401;

/// Points reported along an equilibrium line.
const LINE_SAMPLES: usize = 11;

/// Pooled two-class revenue `U1 + U2` at `(pl, ph, p2)`.
pub fn coalition_revenue(params: &MarketParams, class: &ClassParams, pl: f64, ph: f64, p2: f64) -> f64 {
    let (u1, u2) = multiclass_unchecked(params, class, pl, ph, p2);
    u1 + u2
}

/// Outcome of a coalition at `(pl, ph, p2)`: each provider reported with half
/// of the pooled revenue.
pub(crate) fn coalition_outcome(
    params: &MarketParams,
    class: &ClassParams,
    prices: (f64, f64, f64),
    regime: Regime,
    source: Source,
) -> EquilibriumOutcome {
    let (pl, ph, p2) = prices;
    let split = split_unchecked(params, class, pl, ph, p2);
    let half = 0.5 * coalition_revenue(params, class, pl, ph, p2);
    EquilibriumOutcome {
        prices: PriceProfile::multiclass(pl, ph, p2),
        demand: split.total,
        class_split: Some(split),
        utilities: vec![half, half],
        regime,
        stability: Stability::NotApplicable,
        source,
    }
}

/// The two boundary optima of the coalition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// Content is free, the ISP prices both classes.
    P2Zero,
    /// Access is flat-rate, the CP prices content.
    PlZero,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollabBranches {
    pub p2_zero: EquilibriumOutcome,
    pub pl_zero: EquilibriumOutcome,
    /// Printed formulas for the `p2 = 0` branch, uncorrected.
    pub p2_zero_printed: EquilibriumOutcome,
    pub best: Branch,
}

/// Coalition optimum on each boundary.
///
/// On `p2 = 0` the pooled revenue is maximized numerically over
/// `(pl, Δp)`; the first-order candidate `φ(δ) = 1/2`,
/// `pl = pmax (1 - γδ(1 + 2e^{-δ}))/4` replaces the numeric point when it is
/// feasible and no worse. On `pl = 0` the ISP prices nothing and the CP
/// charges `pmax/2` for `Umax/4`.
pub fn solve_multiclass_collab_boundary(params: &MarketParams, class: &ClassParams) -> Result<CollabBranches> {
    let pmax = params.pmax();
    let gamma = class.gamma();
    let utot = |pl: f64, gap: f64| coalition_revenue(params, class, pl, pl + gap, 0.0);

    let found = argmax_2d(utot, (0.0, pmax / 2.0), (0.0, pmax), GRID_2D);
    let (mut pl, mut gap, mut best_value) = (found.x, found.y, found.value);
    let delta = phi_inverse(0.5)?;
    let pl_foc = pmax * (1.0 - gamma * delta * (1.0 + 2.0 * (-delta).exp())) / 4.0;
    let gap_foc = gamma * pmax * delta;
    if pl_foc > 0.0 && pl_foc + gap_foc <= pmax {
        let v = utot(pl_foc, gap_foc);
        if v >= best_value - 1e-12 * params.umax() {
            (pl, gap, best_value) = (pl_foc, gap_foc, v);
        }
    }
    let _ = best_value;
    let p2_zero = coalition_outcome(params, class, (pl, pl + gap, 0.0), Regime::BoundaryP2Zero, Source::Oracle);
    let pl_zero = printed_collab_pl_zero(params, class);
    let pl_zero = EquilibriumOutcome { source: Source::ClosedForm, ..pl_zero };
    let best = if pl_zero.total_utility() >= p2_zero.total_utility() { Branch::PlZero } else { Branch::P2Zero };
    Ok(CollabBranches { p2_zero, pl_zero, p2_zero_printed: printed_collab_p2_zero(params, class)?, best })
}

/// Equilibrium set of the split-coefficient coalition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineFamily {
    /// `φ⁻¹(dh/d2)`.
    pub delta_star: f64,
    /// Price gap `ph - pl = γ pmax δ*` along the line.
    pub gap: f64,
    /// Stationary total `pl + p2`.
    pub total: f64,
    /// Evenly spaced points from `pl = 0` to the largest admissible `pl`.
    pub points: Vec<EquilibriumOutcome>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum LineSolution {
    /// `d2 = dl + dh`: revenue depends on `(pl + p2, Δp)` only, and its
    /// stationary set is a segment.
    Line(LineFamily),
    /// Otherwise the gradient along the would-be line is non-zero and play
    /// drifts to the better boundary optimum.
    NoLine { delta_star: f64, attractor: EquilibriumOutcome },
}

impl LineSolution {
    pub fn delta_star(&self) -> f64 {
        match self {
            LineSolution::Line(f) => f.delta_star,
            LineSolution::NoLine { delta_star, .. } => *delta_star,
        }
    }

    /// Midpoint of the line, or the boundary attractor.
    pub fn representative(&self) -> EquilibriumOutcome {
        match self {
            LineSolution::Line(f) => f.points[f.points.len() / 2].clone(),
            LineSolution::NoLine { attractor, .. } => attractor.clone(),
        }
    }
}

/// Coalition with demand `D0 - dl pl - dh ph - d2 p2`.
///
/// `δ* = φ⁻¹(dh/d2)`. When `d2 = dl + dh` the stationary total `pl + p2` is
/// found by bisection on the numeric derivative of the pooled revenue in
/// `p2` at `pl = 0`, `Δp = γ pmax δ*`, and the whole segment is returned.
pub fn solve_multiclass_line(params: &MarketParams, class: &ClassParams) -> Result<LineSolution> {
    let split = class.split().ok_or_else(|| Error::domain("equilibrium line needs split coefficients dl, dh, d2"))?;
    if split.dh > split.d2 {
        return Err(Error::domain(format!("dh <= d2 required, got dh = {}, d2 = {}", split.dh, split.d2)));
    }
    let pmax = params.pmax();
    let delta_star = phi_inverse(split.dh / split.d2)?;
    if !split.is_balanced() {
        return Ok(LineSolution::NoLine { delta_star, attractor: boundary_attractor(params, class) });
    }

    let gap = class.gamma() * pmax * delta_star;
    if gap > pmax {
        return Err(Error::domain(format!("line price gap {gap} exceeds pmax = {pmax}")));
    }
    let h = 1e-6 * pmax;
    let slope = |p2: f64| {
        (coalition_revenue(params, class, 0.0, gap, p2 + h) - coalition_revenue(params, class, 0.0, gap, p2 - h))
            / (2.0 * h)
    };
    let zero_demand = ((params.d0() - split.dh * gap) / split.d2).min(pmax);
    let total = bisect(slope, 0.0, zero_demand, 200)?;
    let pl_max = total.min(pmax - gap);
    let points = (0..LINE_SAMPLES)
        .map(|k| {
            let pl = pl_max * k as f64 / (LINE_SAMPLES - 1) as f64;
            coalition_outcome(params, class, (pl, pl + gap, total - pl), Regime::Line, Source::Oracle)
        })
        .collect();
    Ok(LineSolution::Line(LineFamily { delta_star, gap, total, points }))
}

/// Better of the two boundary optima: the `pl = 0` face searched over
/// `(ph, p2)` and the `p2 = 0` face over `(pl, Δp)`.
fn boundary_attractor(params: &MarketParams, class: &ClassParams) -> EquilibriumOutcome {
    let pmax = params.pmax();
    let flat = argmax_2d(|ph, p2| coalition_revenue(params, class, 0.0, ph, p2), (0.0, pmax), (0.0, pmax), GRID_2D);
    let free = argmax_2d(
        |pl, gap| coalition_revenue(params, class, pl, pl + gap, 0.0),
        (0.0, pmax / 2.0),
        (0.0, pmax),
        GRID_2D,
    );
    let prices = if flat.value >= free.value { (0.0, flat.x, flat.y) } else { (free.x, free.x + free.y, 0.0) };
    coalition_outcome(params, class, prices, Regime::NoLine, Source::Oracle)
}

/// A numerically solved outcome with the printed values it is checked against.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleCheckedOutcome {
    pub outcome: EquilibriumOutcome,
    pub printed: EquilibriumOutcome,
    pub comparisons: Vec<Comparison>,
}

/// Competition with `pl = 0`: the ISP prices only the high class.
///
/// `(ph, p2)` come from damped best-response dynamics in which the ISP
/// maximizes `D ph e^{-δ}` and the CP `D p2`.
pub fn solve_multiclass_competition(params: &MarketParams, class: &ClassParams) -> Result<OracleCheckedOutcome> {
    let spec = ScenarioSpec::new(Scenario::MulticlassCompetition, *params).with_class(*class);
    let pmax = params.pmax();
    let seed = competition_outcome(params, class, pmax / 3.0, pmax / 3.0, Source::Oracle);
    let game = scenario_game(&spec, &seed)?;
    let fixed = best_response_dynamics(&game.view, &[pmax / 3.0, pmax / 3.0], &DynamicsOptions::default())?;
    let x = polish(&game.view, &fixed.profile);
    let outcome = competition_outcome(params, class, x[0], x[1], Source::Oracle);
    let printed = printed_competition(params, class);
    let comparisons = compare_outcomes(&printed, &outcome);
    Ok(OracleCheckedOutcome { outcome, printed, comparisons })
}

pub(crate) fn competition_outcome(
    params: &MarketParams,
    class: &ClassParams,
    ph: f64,
    p2: f64,
    source: Source,
) -> EquilibriumOutcome {
    let split = split_unchecked(params, class, 0.0, ph, p2);
    let (u1, u2) = multiclass_unchecked(params, class, 0.0, ph, p2);
    EquilibriumOutcome {
        prices: PriceProfile::multiclass(0.0, ph, p2),
        demand: split.total,
        class_split: Some(split),
        utilities: vec![u1, u2],
        regime: Regime::BoundaryPlZero,
        stability: Stability::NotApplicable,
        source,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PriceName;
    use crate::numerics::phi;

    fn unit() -> MarketParams {
        MarketParams::default()
    }

    /// First-order conditions of the `p2 = 0` coalition branch, solved
    /// independently by nested bisection on the two partial derivatives.
    fn p2_zero_by_foc(gamma: f64) -> f64 {
        let c = ClassParams::new(gamma).unwrap();
        let u = |pl: f64, gap: f64| coalition_revenue(&unit(), &c, pl, pl + gap, 0.0);
        let h = 1e-6;
        let gap_for = |pl: f64| {
            let g = |gap: f64| (u(pl, gap + h) - u(pl, gap - h)) / (2.0 * h);
            if g(1e-9) <= 0.0 {
                0.0
            } else {
                bisect(g, 1e-9, 1.0 - 2.0 * pl, 200).unwrap()
            }
        };
        let dpl = |pl: f64| {
            let gap = gap_for(pl);
            (u(pl + h, gap) - u(pl - h, gap)) / (2.0 * h)
        };
        let pl = if dpl(1e-6) <= 0.0 { 0.0 } else { bisect(dpl, 1e-6, 0.4, 200).unwrap() };
        u(pl, gap_for(pl))
    }

    #[test]
    fn collab_p2_zero_matches_foc() {
        for gamma in [0.5, 1.0, 2.0] {
            let c = ClassParams::new(gamma).unwrap();
            let b = solve_multiclass_collab_boundary(&unit(), &c).unwrap();
            assert!((b.p2_zero.total_utility() - p2_zero_by_foc(gamma)).abs() < 1e-9, "gamma {gamma}");
            assert_eq!(b.best, Branch::PlZero);
            assert_eq!(b.pl_zero.total_utility(), 0.25);
        }
    }

    #[test]
    fn collab_gamma_one_reference_values() {
        let c = ClassParams::new(1.0).unwrap();
        let b = solve_multiclass_collab_boundary(&unit(), &c).unwrap();
        let p = &b.p2_zero.prices;
        let delta = p.get(PriceName::Ph).unwrap() - p.get(PriceName::Pl).unwrap();
        assert!((phi(delta).unwrap() - 0.5).abs() < 1e-9);
        assert!((p.get(PriceName::Pl).unwrap() - 0.0563).abs() < 1e-4);
        assert!((b.p2_zero.total_utility() - 0.1638).abs() < 1e-4);
        assert!(b.p2_zero_printed.source == Source::PaperPrinted);
    }

    #[test]
    fn competition_gamma_one() {
        let c = ClassParams::new(1.0).unwrap();
        let out = solve_multiclass_competition(&unit(), &c).unwrap().outcome;
        let p = &out.prices;
        let root = 12f64.sqrt();
        assert!((p.get(PriceName::P2).unwrap() - (root - 2.0) / 4.0).abs() < 1e-7);
        // ph from the ISP's first-order condition at pl = 0, γ = 1
        assert!((p.get(PriceName::Ph).unwrap() - (4.0 - root) / 2.0).abs() < 1e-7);
        assert_eq!(p.get(PriceName::Pl), Some(0.0));
        assert!(out.utilities[1] > out.utilities[0]);
    }

    #[test]
    fn balanced_split_gives_line() {
        let c = ClassParams::with_split(1.0, 0.5, 0.5, 1.0).unwrap();
        let LineSolution::Line(f) = solve_multiclass_line(&unit(), &c).unwrap() else {
            panic!("expected a line");
        };
        let e = (-f.delta_star).exp();
        let expected = (1.0 - 0.5 * f.gap - f.gap * e) / 2.0;
        assert!((f.total - expected).abs() < 1e-9);
        assert!((phi(f.delta_star).unwrap() - 0.5).abs() < 1e-12);
        let first = f.points[0].total_utility();
        for p in &f.points {
            assert!((p.total_utility() - first).abs() < 1e-12);
        }
    }

    #[test]
    fn unbalanced_split_has_no_line() {
        let c = ClassParams::with_split(1.0, 0.8, 0.5, 1.0).unwrap();
        let sol = solve_multiclass_line(&unit(), &c).unwrap();
        let rep = sol.representative();
        assert_eq!(rep.regime, Regime::NoLine);
        let p = rep.prices.values();
        assert!(p[0] == 0.0 || p[2] == 0.0);
        assert!((sol.delta_star() - phi_inverse(0.5).unwrap()).abs() < 1e-15);
        let dh_over = ClassParams::with_split(1.0, 0.5, 0.5, 0.5).unwrap();
        assert!(solve_multiclass_line(&unit(), &dh_over).is_ok());
        assert!(solve_multiclass_line(&unit(), &ClassParams::new(1.0).unwrap()).is_err());
    }
}
