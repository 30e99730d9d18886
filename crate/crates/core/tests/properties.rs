use std::sync::Arc;

use proptest::prelude::*;
use usage_pricing::equilibria::{self, evaluate_utilities};
use usage_pricing::model::{stickiness_share, utilities_two_player};
use usage_pricing::numerics::{best_response, central_gradient, phi, phi_inverse, solve_quadratic, GameView};
use usage_pricing::{Leader, MarketParams, Scenario, ScenarioSpec, StickinessKind, Transfers};

fn market() -> impl Strategy<Value = MarketParams> {
    (0.5f64..5.0, 0.2f64..4.0).prop_map(|(d0, d)| MarketParams::new(d0, d).unwrap())
}

proptest! {
    #[test]
    fn side_payments_inside_a_third_change_nothing(params in market(), t in -1.0f64..1.0) {
        let ps = t * params.pmax() / 3.0;
        let o = equilibria::solve_side_payment(&params, ps).unwrap();
        let u = params.umax() / 9.0;
        for ui in &o.utilities {
            prop_assert!((ui - u).abs() <= 1e-12 * u);
        }
        let total: f64 = o.prices.values().iter().sum();
        prop_assert!((total - 2.0 * params.pmax() / 3.0).abs() <= 1e-12 * params.pmax());
    }

    #[test]
    fn phi_inverse_round_trips(x in 0.0f64..=1.0) {
        let back = phi_inverse(phi(x).unwrap()).unwrap();
        prop_assert!((back - x).abs() <= 1e-10);
    }

    #[test]
    fn quadratic_roots_have_small_residual(a in -10.0f64..10.0, b in -10.0f64..10.0, c in -10.0f64..10.0) {
        let scale = a.abs() + b.abs() + c.abs();
        for r in solve_quadratic(a, b, c) {
            let residual = (a * r + b) * r + c;
            prop_assert!(residual.abs() <= 1e-9 * scale * (1.0 + r * r), "root {r}, residual {residual:e}");
        }
    }

    #[test]
    fn best_response_beats_a_fine_grid(params in market(), t in 0.0f64..1.0, ps in -0.3f64..0.3) {
        let pmax = params.pmax();
        let transfers = Transfers::side_payment(ps * pmax).unwrap();
        let u = move |player: usize, p: &[f64]| {
            let (u1, u2) = utilities_two_player(&params, &transfers, p[0], p[1]).unwrap();
            if player == 0 { u1 } else { u2 }
        };
        let game = GameView::new(vec![(0.0, pmax); 2], Arc::new(u));
        let profile = [0.0, t * pmax];
        let br = best_response(&game, 0, &profile, 2001);
        let at_br = u(0, &[br, profile[1]]);
        let sampled = (0..=10_000)
            .map(|k| u(0, &[pmax * k as f64 / 10_000.0, profile[1]]))
            .fold(f64::MIN, f64::max);
        prop_assert!(at_br >= sampled - 1e-12 * params.umax());
    }

    #[test]
    fn stackelberg_leader_earns_twice_the_follower(
        params in market(),
        ps in 0.0f64..0.3,
        pa in 0.0f64..0.3,
        isp_leads in any::<bool>(),
    ) {
        let pmax = params.pmax();
        let transfers = Transfers::new(ps * pmax, pa * pmax).unwrap();
        let leader = if isp_leads { Leader::Isp } else { Leader::Cp };
        // transfers that push a price out of [0, pmax] are rejected, not solved
        let solved = equilibria::solve_stackelberg(&params, &transfers, leader);
        prop_assume!(solved.is_ok());
        let o = solved.unwrap();
        let (l, f) = if isp_leads { (0, 1) } else { (1, 0) };
        prop_assert!((o.utilities[l] - 2.0 * o.utilities[f]).abs() <= 1e-12 * params.umax());
    }

    #[test]
    fn reported_utilities_match_the_model(params in market(), t in -0.9f64..0.9) {
        let spec = ScenarioSpec::new(Scenario::SidePayment, params)
            .with_transfers(Transfers::side_payment(t * params.pmax()).unwrap());
        for o in equilibria::solve(&spec).unwrap() {
            let again = evaluate_utilities(&spec, &o.prices);
            for (a, b) in again.iter().zip(&o.utilities) {
                prop_assert!((a - b).abs() <= 1e-12 * params.umax());
            }
        }
    }

    #[test]
    fn advertising_scales_with_the_square(pa in 0.0f64..0.5) {
        let params = MarketParams::default();
        let base = equilibria::solve_advertising_competition(&params, 0.0, 0.0).unwrap();
        let o = equilibria::solve_advertising_competition(&params, 0.0, pa).unwrap();
        let law = (1.0 + pa) * (1.0 + pa);
        for (u, u0) in o.utilities.iter().zip(&base.utilities) {
            prop_assert!((u / u0 - law).abs() <= 1e-12 * law);
        }
    }

    #[test]
    fn stickiness_shares_are_symmetric_and_complementary(x in 0.0f64..=1.0, y in 0.0f64..=1.0, slack in any::<bool>()) {
        let kind = if slack { StickinessKind::Slackness } else { StickinessKind::Reciprocal };
        prop_assert_eq!(stickiness_share(kind, x, x, 1.0), 0.5);
        let sum = stickiness_share(kind, x, y, 1.0) + stickiness_share(kind, y, x, 1.0);
        prop_assert!((sum - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn finite_difference_gradient_matches_calculus(params in market(), a in 0.05f64..0.45, b in 0.05f64..0.45) {
        let pmax = params.pmax();
        let total = |p1: f64, p2: f64| (params.d0() - params.d() * (p1 + p2)) * (p1 + p2);
        let (p1, p2) = (a * pmax, b * pmax);
        let (g1, g2) = central_gradient(&total, p1, p2, 1e-6 * pmax);
        let exact = params.d0() - 2.0 * params.d() * (p1 + p2);
        prop_assert!((g1 - exact).abs() <= 1e-6 * params.d0());
        prop_assert!((g2 - exact).abs() <= 1e-6 * params.d0());
    }
}
