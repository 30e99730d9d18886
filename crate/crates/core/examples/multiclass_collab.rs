// A two-class ISP (premium and ordinary service) pricing jointly with the
// CP. Compares the "CP gives content away" branch with the flat-rate
// branch and with the value the closed-form approximation predicts.

use usage_pricing::equilibria::{self, paper_reference};
use usage_pricing::{ClassParams, MarketParams, PriceName, Result, Scenario, ScenarioSpec};

pub fn run() -> Result<()> {
    let params = MarketParams::default();
    println!("{:>6} {:>8} {:>8} {:>10} {:>10} {:>10}", "gamma", "pl", "ph", "Utot p2=0", "printed", "flat rate");
    for gamma in [0.25, 0.5, 1.0, 1.5, 2.0, 3.0] {
        let class = ClassParams::new(gamma)?;
        let b = equilibria::solve_multiclass_collab_boundary(&params, &class)?;
        let spec = ScenarioSpec::new(Scenario::MulticlassCollab, params).with_class(class);
        let printed = &paper_reference(&spec)?[0];
        println!(
            "{gamma:>6.2} {:>8.5} {:>8.5} {:>10.5} {:>10.5} {:>10.5}",
            b.p2_zero.prices.get(PriceName::Pl).unwrap_or(f64::NAN),
            b.p2_zero.prices.get(PriceName::Ph).unwrap_or(f64::NAN),
            b.p2_zero.total_utility(),
            printed.total_utility(),
            b.pl_zero.total_utility(),
        );
    }
    Ok(())
}

fn main() {
    run().expect("multiclass collaboration example");
}
