// Side payments in the sticky duopoly. Small negative payments admit two
// symmetric equilibria, one stable and one not; below a threshold the CPs
// give content away.

use usage_pricing::equilibria::{self, duopoly_threshold};
use usage_pricing::{MarketParams, PriceName, Result};

pub fn run() -> Result<()> {
    let params = MarketParams::default();
    println!("threshold eta = {:.7}", duopoly_threshold(params.pmax()));
    for eta in [-0.05, -0.03, -0.02, -0.01, 0.0, 0.1, 0.2, 0.3] {
        for o in equilibria::solve_duopoly_side_payments(&params, eta * params.pmax())? {
            println!(
                "eta {eta:>5.2}: p1 {:.5} p2 {:.5} U1 {:.5} Ui {:.5} {:?} {}",
                o.prices.get(PriceName::P1).unwrap_or(f64::NAN),
                o.prices.get(PriceName::P2).unwrap_or(f64::NAN),
                o.utilities[0],
                o.utilities[1],
                o.regime,
                o.stability,
            );
        }
    }
    Ok(())
}

fn main() {
    run().expect("duopoly side payment example");
}
