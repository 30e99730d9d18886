//! Game views of each scenario for the numeric oracle, plus re-evaluation
//! of outcomes through the model.

use std::sync::Arc;

use super::{EquilibriumOutcome, Leader, Regime, Scenario, ScenarioSpec, Source, Stability};
use crate::error::Result;
use crate::model::demand::{clamped_demand, split_unchecked};
use crate::model::utility::{duopoly_unchecked, multiclass_unchecked, two_player_unchecked};
use crate::model::{ClassParams, ClassSplit, MarketParams, PriceName, PriceProfile, StickinessKind, Transfers};
use crate::numerics::{
    best_response, best_response_dynamics, stability_probe, verify_epsilon_nash, DynamicsOptions, GameView,
    Verification,
};

/// Grid used by the follower's nested best response in leader-follower views.
const FOLLOWER_GRID: usize = 401;

pub(crate) fn two_player_view(params: MarketParams, transfers: Transfers) -> GameView {
    let pmax = params.pmax();
    GameView::new(
        vec![(0.0, pmax), (0.0, pmax)],
        Arc::new(move |i, p: &[f64]| {
            let (u1, u2) = two_player_unchecked(&params, &transfers, p[0], p[1]);
            if i == 0 {
                u1
            } else {
                u2
            }
        }),
    )
}

pub(crate) fn duopoly_view(params: MarketParams, kind: StickinessKind, ps: f64) -> GameView {
    let pmax = params.pmax();
    GameView::new(
        vec![(0.0, pmax); 3],
        Arc::new(move |i, p: &[f64]| {
            let u = duopoly_unchecked(&params, kind, ps, p[0], p[1], p[2]);
            [u.0, u.1, u.2][i]
        }),
    )
    .with_coupling(1, 2)
}

/// One undamped best-response sweep; lands boundary prices exactly on
/// the boundary after damped iteration has only approached it.
pub(crate) fn polish(view: &GameView, x: &[f64]) -> Vec<f64> {
    let mut out = x.to_vec();
    for (player, slot) in out.iter_mut().enumerate() {
        if matches!(view.coupling(), Some((_, b)) if b == player) {
            continue;
        }
        *slot = best_response(view, player, x, crate::numerics::DEFAULT_GRID);
    }
    if let Some((a, b)) = view.coupling() {
        out[b] = out[a];
    }
    out
}

/// A scenario's game view together with the map between its coordinates
/// and named prices. Prices that are not coordinates stay pinned at their
/// value in `base`.
#[derive(Debug, Clone)]
pub struct ScenarioGame {
    pub view: GameView,
    pub coords: Vec<PriceName>,
    pub base: PriceProfile,
}

impl ScenarioGame {
    pub fn coordinates_of(&self, prices: &PriceProfile) -> Vec<f64> {
        self.coords.iter().map(|&n| prices.at(n)).collect()
    }

    pub fn profile_of(&self, coords: &[f64]) -> PriceProfile {
        let entries = self
            .base
            .entries()
            .iter()
            .map(|&(name, v)| match self.coords.iter().position(|&c| c == name) {
                Some(i) => (name, coords[i]),
                None => (name, v),
            })
            .collect();
        PriceProfile::new(entries)
    }
}

/// Builds a view whose coordinates are `coords` and whose players' utilities
/// come from `utility` evaluated on the full named profile.
fn embedded<U>(base: &PriceProfile, coords: Vec<PriceName>, pmax: f64, utility: U) -> ScenarioGame
where
    U: Fn(usize, &PriceProfile) -> f64 + Send + Sync + 'static,
{
    let layout: Vec<usize> =
        coords.iter().map(|c| base.names().iter().position(|n| n == c).expect("coordinate in profile")).collect();
    let template = base.clone();
    let view = GameView::new(
        vec![(0.0, pmax); coords.len()],
        Arc::new(move |i, x: &[f64]| {
            let mut entries = template.entries().to_vec();
            for (k, &slot) in layout.iter().enumerate() {
                entries[slot].1 = x[k];
            }
            utility(i, &PriceProfile::new(entries))
        }),
    );
    ScenarioGame { view, coords, base: base.clone() }
}

fn team_multiclass(params: MarketParams, class: ClassParams) -> impl Fn(usize, &PriceProfile) -> f64 + Send + Sync {
    move |_, p: &PriceProfile| {
        let (pl, ph, p2) = (p.at(PriceName::Pl), p.at(PriceName::Ph), p.at(PriceName::P2));
        if ph < pl {
            return 0.0;
        }
        let (u1, u2) = multiclass_unchecked(&params, &class, pl, ph, p2);
        0.5 * (u1 + u2)
    }
}

/// The game in which `outcome` is claimed to be an equilibrium.
///
/// Collaborative scenarios become team games where every coordinate earns
/// the shared revenue. Boundary branches of the two-class scenarios pin the
/// zero price. The leader-follower game gives the leader its revenue after
/// the follower's best response.
pub fn scenario_game(spec: &ScenarioSpec, outcome: &EquilibriumOutcome) -> Result<ScenarioGame> {
    spec.validate()?;
    let params = spec.params;
    let t = spec.transfers;
    let pmax = params.pmax();
    let base = &outcome.prices;
    use PriceName::*;
    Ok(match spec.scenario {
        Scenario::BasicCompetition | Scenario::SidePayment | Scenario::AdCompetition => {
            ScenarioGame { view: two_player_view(params, t), coords: vec![P1, P2], base: base.clone() }
        }
        Scenario::BasicCollaboration | Scenario::AdCollaboration => embedded(base, vec![P1, P2], pmax, move |_, p| {
            let (u1, u2) = two_player_unchecked(&params, &t, p.at(P1), p.at(P2));
            0.5 * (u1 + u2)
        }),
        Scenario::Stackelberg => {
            let leader = spec.leader.expect("validated");
            let inner = two_player_view(params, t);
            let (l, f) = match leader {
                Leader::Isp => (0, 1),
                Leader::Cp => (1, 0),
            };
            let view = GameView::new(
                vec![(0.0, pmax), (0.0, pmax)],
                Arc::new(move |i, p: &[f64]| {
                    if i == l {
                        let mut q = p.to_vec();
                        q[f] = best_response(&inner, f, &q, FOLLOWER_GRID);
                        inner.utility(l, &q)
                    } else {
                        inner.utility(i, p)
                    }
                }),
            );
            ScenarioGame { view, coords: vec![P1, P2], base: base.clone() }
        }
        Scenario::MulticlassCollab | Scenario::MulticlassLine => {
            let class = *spec.class_params()?;
            let coords = match outcome.regime {
                Regime::BoundaryP2Zero => vec![Pl, Ph],
                Regime::NoLine if base.at(P2) == 0.0 => vec![Pl, Ph],
                Regime::NoLine if base.at(Pl) == 0.0 => vec![Ph, P2],
                _ => vec![Pl, Ph, P2],
            };
            embedded(base, coords, pmax, team_multiclass(params, class))
        }
        Scenario::MulticlassCompetition => {
            let class = *spec.class_params()?;
            embedded(base, vec![Ph, P2], pmax, move |i, p| {
                let (u1, u2) = multiclass_unchecked(&params, &class, p.at(Pl), p.at(Ph), p.at(P2));
                if i == 0 {
                    u1
                } else {
                    u2
                }
            })
        }
        Scenario::Duopoly | Scenario::DuopolySidePayment => {
            let kind = spec.kind.unwrap_or(StickinessKind::Reciprocal);
            ScenarioGame { view: duopoly_view(params, kind, t.ps), coords: vec![P1, P2, P3], base: base.clone() }
        }
    })
}

/// Per-player utilities of `spec` at `prices`, straight from the model.
/// Collaborative scenarios return the equal shares of the pooled revenue.
pub fn evaluate_utilities(spec: &ScenarioSpec, prices: &PriceProfile) -> Vec<f64> {
    let params = &spec.params;
    let t = &spec.transfers;
    use PriceName::*;
    match spec.scenario {
        Scenario::BasicCompetition | Scenario::SidePayment | Scenario::AdCompetition | Scenario::Stackelberg => {
            let (u1, u2) = two_player_unchecked(params, t, prices.at(P1), prices.at(P2));
            vec![u1, u2]
        }
        Scenario::BasicCollaboration | Scenario::AdCollaboration => {
            let (u1, u2) = two_player_unchecked(params, t, prices.at(P1), prices.at(P2));
            vec![0.5 * (u1 + u2); 2]
        }
        Scenario::MulticlassCollab | Scenario::MulticlassLine | Scenario::MulticlassCompetition => {
            let class = spec.class.expect("multiclass scenario carries class parameters");
            let (u1, u2) = multiclass_unchecked(params, &class, prices.at(Pl), prices.at(Ph), prices.at(P2));
            if spec.scenario == Scenario::MulticlassCompetition {
                vec![u1, u2]
            } else {
                vec![0.5 * (u1 + u2); 2]
            }
        }
        Scenario::Duopoly | Scenario::DuopolySidePayment => {
            let kind = spec.kind.unwrap_or(StickinessKind::Reciprocal);
            let (u1, u2, u3) = duopoly_unchecked(params, kind, t.ps, prices.at(P1), prices.at(P2), prices.at(P3));
            vec![u1, u2, u3]
        }
    }
}

pub(crate) fn demand_at(spec: &ScenarioSpec, prices: &PriceProfile) -> (f64, Option<ClassSplit>) {
    use PriceName::*;
    if spec.scenario.is_multiclass() {
        let class = spec.class.expect("multiclass scenario carries class parameters");
        let split = split_unchecked(&spec.params, &class, prices.at(Pl), prices.at(Ph), prices.at(P2));
        (split.total, Some(split))
    } else {
        (clamped_demand(&spec.params, prices.at(P1) + prices.at(P2)), None)
    }
}

/// ε-Nash check of `outcome` in its scenario game.
pub fn verify_outcome(
    spec: &ScenarioSpec,
    outcome: &EquilibriumOutcome,
    grid_points: usize,
    epsilon: f64,
) -> Result<Verification> {
    let game = scenario_game(spec, outcome)?;
    let x = game.coordinates_of(&outcome.prices);
    Ok(verify_epsilon_nash(&game.view, &x, grid_points, epsilon))
}

/// Runs best-response dynamics in the scenario game of `seed`, starting
/// from the seed's prices, and returns the fixed point as an oracle outcome
/// with the seed's regime.
pub fn oracle_outcome(spec: &ScenarioSpec, seed: &EquilibriumOutcome) -> Result<EquilibriumOutcome> {
    let game = scenario_game(spec, seed)?;
    let start = game.coordinates_of(&seed.prices);
    let opts = DynamicsOptions { max_iter: 5000, grid_points: 801, ..Default::default() };
    let fixed = best_response_dynamics(&game.view, &start, &opts)?;
    let x = polish(&game.view, &fixed.profile);
    let prices = game.profile_of(&x);
    let (demand, class_split) = demand_at(spec, &prices);
    let stability = if spec.scenario == Scenario::DuopolySidePayment {
        stability_probe(&game.view, &x, super::duopoly::probe_step(&spec.params, x[1]))
            .unwrap_or(Stability::NotApplicable)
    } else {
        Stability::NotApplicable
    };
    Ok(EquilibriumOutcome {
        utilities: evaluate_utilities(spec, &prices),
        prices,
        demand,
        class_split,
        regime: seed.regime,
        stability,
        source: Source::Oracle,
    })
}
