// Settlement-free vs. paid peering: sweep the CP-to-ISP payment `ps`.
//
// Inside `|ps| <= pmax/3` the payment is fully passed through and nobody's
// revenue moves; beyond it the ISP is pinned at a zero price.

use usage_pricing::equilibria;
use usage_pricing::{MarketParams, Result};

pub fn run() -> Result<()> {
    let params = MarketParams::default();
    println!("{:>6} {:>9} {:>9} {:>9} {:>9}  regime", "ps", "p1", "p2", "U1", "U2");
    for k in -4..=9 {
        let ps = 0.1 * k as f64;
        let o = equilibria::solve_side_payment(&params, ps)?;
        let p = o.prices.values();
        println!(
            "{ps:>6.2} {:>9.5} {:>9.5} {:>9.5} {:>9.5}  {:?}",
            p[0], p[1], o.utilities[0], o.utilities[1], o.regime
        );
    }
    Ok(())
}

fn main() {
    run().expect("side payment example");
}
