// With split demand coefficients `d2 = dl + dh` the joint optimum is a
// whole segment rather than a point. Prints the segment and the revenue
// gradient field around it as CSV.

use usage_pricing::equilibria::{self, LineSolution};
use usage_pricing::harness::{field, PartialConfig, RunConfig};
use usage_pricing::{ClassParams, MarketParams, Result};

pub fn run() -> Result<()> {
    let params = MarketParams::default();
    match equilibria::solve_multiclass_line(&params, &ClassParams::with_split(1.0, 0.5, 0.5, 1.0)?)? {
        LineSolution::Line(family) => {
            println!("delta* = {:.6}, ph - pl = {:.6}, pl + p2 = {:.6}", family.delta_star, family.gap, family.total);
            for o in family.points.iter().step_by(5) {
                println!("  prices {:?}  Utot {:.6}", o.prices.values(), o.total_utility());
            }
        }
        LineSolution::NoLine { .. } => unreachable!("balanced coefficients"),
    }

    let config = RunConfig::from_partial(PartialConfig::from_toml_str(
        r#"
        scenario = "multiclass-line"
        gamma = 1.0
        dl = 0.5
        dh = 0.5
        d2 = 1.0
        resolution = "5:5"
        "#,
    )?)?;
    field(&config)?.write(std::io::stdout())
}

fn main() {
    run().expect("equilibrium line example");
}
