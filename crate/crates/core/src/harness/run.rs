use std::fmt::Write as _;

use serde::Serialize;

use super::config::RunConfig;
use super::table::format_number;
use crate::equilibria::{solve, verify_outcome, EquilibriumOutcome, ScenarioSpec};
use crate::error::Result;
use crate::numerics::Verification;

/// Machine-readable result of `solve` / `verify`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub spec: ScenarioSpec,
    pub outcomes: Vec<EquilibriumOutcome>,
    pub verification: Option<Vec<Verification>>,
}

impl RunRecord {
    /// False only when a verification ran and failed.
    pub fn passed(&self) -> bool {
        self.verification.as_ref().is_none_or(|v| v.iter().all(|r| r.passed))
    }

    pub fn summary(&self) -> String {
        let s = &self.spec;
        let mut text = format!("{} (D0 = {}, d = {})\n", s.scenario, s.params.d0(), s.params.d());
        for (i, o) in self.outcomes.iter().enumerate() {
            let _ = writeln!(text, "outcome {}: {}, {}, {}", i + 1, o.regime, o.stability, o.source);
            let prices: Vec<String> = o.prices.entries().iter().map(|(n, v)| format!("{n} = {}", short(*v))).collect();
            let _ = writeln!(text, "  {}", prices.join("  "));
            let _ = writeln!(text, "  demand = {}", short(o.demand));
            let utils: Vec<String> =
                o.utilities.iter().enumerate().map(|(k, u)| format!("u{} = {}", k + 1, short(*u))).collect();
            let _ = writeln!(text, "  {}", utils.join("  "));
            if let Some(v) = self.verification.as_ref().and_then(|v| v.get(i)) {
                let verdict = if v.passed { "passed" } else { "FAILED" };
                let _ = writeln!(
                    text,
                    "  epsilon-Nash {verdict}: max gain {} (epsilon {})",
                    format_number(v.max_gain()),
                    format_number(v.epsilon)
                );
            }
        }
        text
    }
}

fn short(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Solves the configured scenario and, when asked, ε-Nash-checks each
/// outcome with `epsilon · Umax`.
pub fn run_scenario(config: &RunConfig) -> Result<RunRecord> {
    let spec = config.spec()?;
    let outcomes = solve(&spec)?;
    let verification = if config.verify {
        let eps = config.epsilon * spec.params.umax();
        Some(outcomes.iter().map(|o| verify_outcome(&spec, o, config.grid, eps)).collect::<Result<_>>()?)
    } else {
        None
    };
    Ok(RunRecord { spec, outcomes, verification })
}
