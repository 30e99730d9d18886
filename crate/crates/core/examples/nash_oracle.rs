// The numeric machinery on a game of your own: damped best-response
// dynamics to a fixed point, then an epsilon-Nash certificate.
//
// Here two CPs sell through a free ISP and the second has a cost per unit.

use std::sync::Arc;

use usage_pricing::numerics::{best_response_dynamics, verify_epsilon_nash, DynamicsOptions, GameView};
use usage_pricing::Result;

pub fn run() -> Result<()> {
    let cost = 0.1;
    let game = GameView::new(
        vec![(0.0, 1.0), (0.0, 1.0)],
        Arc::new(move |player, p: &[f64]| {
            let demand = (1.0 - p[0] - p[1]).max(0.0);
            demand * if player == 0 { p[0] } else { p[1] - cost }
        }),
    );
    let fixed = best_response_dynamics(&game, &[0.5, 0.5], &DynamicsOptions::default())?;
    println!("fixed point {:?} after {} sweeps", fixed.profile, fixed.iterations);
    println!("closed form  [{}, {}]", (1.0 - cost) / 3.0, (1.0 + 2.0 * cost) / 3.0);

    let check = verify_epsilon_nash(&game, &fixed.profile, 2001, 1e-9);
    println!("gains {:?}, passed: {}", check.gains, check.passed);
    Ok(())
}

fn main() {
    run().expect("nash oracle example");
}
