// Sequential pricing: whoever moves first ends up with twice the
// follower's revenue.

use usage_pricing::equilibria;
use usage_pricing::{Leader, MarketParams, Result, Transfers};

pub fn run() -> Result<()> {
    let params = MarketParams::default();
    for (ps, pa) in [(0.0, 0.0), (0.1, 0.0), (0.0, 0.2), (0.1, 0.1)] {
        let transfers = Transfers::new(ps, pa)?;
        for leader in [Leader::Isp, Leader::Cp] {
            let o = equilibria::solve_stackelberg(&params, &transfers, leader)?;
            println!(
                "ps {ps:.1} pa {pa:.1} {leader} leads: prices {:?} U {:?}",
                o.prices.values().iter().map(|p| format!("{p:.4}")).collect::<Vec<_>>(),
                o.utilities.iter().map(|u| format!("{u:.4}")).collect::<Vec<_>>(),
            );
        }
    }
    Ok(())
}

fn main() {
    run().expect("stackelberg example");
}
