// One ISP, one CP, linear demand: competing vs. pricing jointly.
//
// ```text
// cargo run --example basic_competition
// ```

use usage_pricing::equilibria::{self, verify_outcome};
use usage_pricing::{MarketParams, Result, Scenario, ScenarioSpec};

pub fn run() -> Result<()> {
    let params = MarketParams::new(2.0, 0.5)?;
    let nep = equilibria::solve_basic_competition(&params);
    let joint = equilibria::solve_basic_collaboration(&params);
    println!("pmax = {}, Umax = {}", params.pmax(), params.umax());
    println!("competition:   prices {:?} utilities {:?}", nep.prices.values(), nep.utilities);
    println!("collaboration: prices {:?} utilities {:?}", joint.prices.values(), joint.utilities);
    println!("efficiency loss of competing: {:.4}", 1.0 - nep.total_utility() / joint.total_utility());

    // the closed form survives a brute-force deviation scan
    let spec = ScenarioSpec::new(Scenario::BasicCompetition, params);
    let check = verify_outcome(&spec, &nep, 2001, 1e-9 * params.umax())?;
    println!("largest unilateral gain {:.2e}, passed: {}", check.max_gain(), check.passed);
    Ok(())
}

fn main() {
    run().expect("basic competition example");
}
