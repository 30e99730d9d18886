// Two-class ISP against a CP: the numeric equilibrium next to the
// published approximation, over the class-choice sensitivity `gamma`.

use usage_pricing::equilibria;
use usage_pricing::{ClassParams, MarketParams, PriceName, Result};

pub fn run() -> Result<()> {
    let params = MarketParams::default();
    println!("{:>7} {:>9} {:>9} {:>9} {:>9} {:>9}", "gamma", "ph", "printed", "p2", "U1", "U2");
    for gamma in [0.1, 0.5, 1.0, 2.0, 10.0, 100.0] {
        let checked = equilibria::solve_multiclass_competition(&params, &ClassParams::new(gamma)?)?;
        let (o, printed) = (&checked.outcome, &checked.printed);
        println!(
            "{gamma:>7.1} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>9.5}",
            o.prices.get(PriceName::Ph).unwrap_or(f64::NAN),
            printed.prices.get(PriceName::Ph).unwrap_or(f64::NAN),
            o.prices.get(PriceName::P2).unwrap_or(f64::NAN),
            o.utilities[0],
            o.utilities[1],
        );
    }
    Ok(())
}

fn main() {
    run().expect("multiclass competition example");
}
