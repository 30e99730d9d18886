// Every printed closed-form value next to the numeric oracle, with the
// relative gap and a CONSISTENT / DISCREPANT verdict.

use usage_pricing::harness::{default_report_specs, report};
use usage_pricing::Result;

pub fn run() -> Result<()> {
    let rows = report(&default_report_specs())?;
    let flagged: Vec<_> = rows.iter().filter(|r| r.verdict() == "DISCREPANT").collect();
    println!("{} comparisons, {} discrepant", rows.len(), flagged.len());
    for r in flagged {
        let c = r.comparison.as_ref().expect("discrepant rows carry a comparison");
        println!(
            "  {} #{} {}: printed {:.6}, oracle {:.6}, rel gap {:.2e}",
            r.scenario, r.outcome, r.field, c.printed, c.computed, c.rel_gap
        );
    }
    Ok(())
}

fn main() {
    run().expect("discrepancy report example");
}
