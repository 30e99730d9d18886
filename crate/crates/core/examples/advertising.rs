// Advertising income per unit of traffic lifts both providers' revenue by
// the same factor `(1 + pa)^2`.

use usage_pricing::equilibria;
use usage_pricing::{MarketParams, Result};

pub fn run() -> Result<()> {
    let params = MarketParams::default();
    let base = equilibria::solve_advertising_competition(&params, 0.0, 0.0)?;
    for pa in [0.0, 0.1, 0.2, 0.3, 0.5] {
        let comp = equilibria::solve_advertising_competition(&params, 0.0, pa)?;
        let joint = equilibria::solve_advertising_collaboration(&params, pa)?;
        println!(
            "pa = {pa:.1}: competitive prices {:?}, U1 ratio {:.4}, joint U1 {:.5}",
            comp.prices.values().iter().map(|p| format!("{p:.4}")).collect::<Vec<_>>(),
            comp.utilities[0] / base.utilities[0],
            joint.utilities[0],
        );
    }
    Ok(())
}

fn main() {
    run().expect("advertising example");
}
