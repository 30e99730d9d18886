// One ISP, two competing CPs whose customers are sticky.

use usage_pricing::equilibria;
use usage_pricing::{MarketParams, Result, StickinessKind};

pub fn run() -> Result<()> {
    let params = MarketParams::default();
    let monopoly = equilibria::solve_basic_competition(&params).utilities[0];
    for kind in [StickinessKind::Reciprocal, StickinessKind::Slackness] {
        let o = equilibria::solve_duopoly(&params, kind);
        println!(
            "{kind}: prices {:?}, utilities {:?}, ISP gain over a single CP x{:.3}",
            o.prices.values(),
            o.utilities,
            o.utilities[0] / monopoly
        );
    }
    Ok(())
}

fn main() {
    run().expect("duopoly example");
}
