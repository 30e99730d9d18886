use std::io::Write;

use rayon::prelude::*;

use super::table::{format_number, write_csv};
use crate::equilibria::{
    compare_outcomes, oracle_outcome, paper_reference, solve, Comparison, EquilibriumOutcome, Leader, Scenario,
    ScenarioSpec,
};
use crate::error::{Error, Result};
use crate::model::{ClassParams, MarketParams, StickinessKind, Transfers};

/// One compared field. `printed` is measured against `oracle`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub scenario: Scenario,
    pub outcome: usize,
    pub field: String,
    pub closed_form: Option<f64>,
    pub comparison: Option<Comparison>,
}

impl ReportRow {
    pub fn verdict(&self) -> &'static str {
        self.comparison.as_ref().map_or("UNSUPPORTED", Comparison::verdict)
    }
}

/// The specs reported when none is given: each scenario at default units
/// with representative transfers.
pub fn default_report_specs() -> Vec<ScenarioSpec> {
    let p = MarketParams::default();
    let t = |ps, pa| Transfers::new(ps, pa).expect("valid transfers");
    let class = ClassParams::new(1.0).expect("valid gamma");
    vec![
        ScenarioSpec::new(Scenario::BasicCompetition, p),
        ScenarioSpec::new(Scenario::BasicCollaboration, p),
        ScenarioSpec::new(Scenario::SidePayment, p).with_transfers(t(0.1, 0.0)),
        ScenarioSpec::new(Scenario::SidePayment, p).with_transfers(t(0.5, 0.0)),
        ScenarioSpec::new(Scenario::AdCompetition, p).with_transfers(t(0.0, 0.3)),
        ScenarioSpec::new(Scenario::AdCollaboration, p).with_transfers(t(0.0, 0.3)),
        ScenarioSpec::new(Scenario::MulticlassCollab, p).with_class(class),
        ScenarioSpec::new(Scenario::MulticlassCompetition, p).with_class(class),
        ScenarioSpec::new(Scenario::Duopoly, p).with_kind(StickinessKind::Reciprocal),
        ScenarioSpec::new(Scenario::Duopoly, p).with_kind(StickinessKind::Slackness),
        ScenarioSpec::new(Scenario::DuopolySidePayment, p).with_transfers(t(-0.02, 0.0)),
        ScenarioSpec::new(Scenario::Stackelberg, p).with_leader(Leader::Isp),
        ScenarioSpec::new(Scenario::Stackelberg, p).with_leader(Leader::Cp),
    ]
}

fn field_value(outcome: &EquilibriumOutcome, field: &str) -> Option<f64> {
    if field == "demand" {
        return Some(outcome.demand);
    }
    if let Some(i) = field.strip_prefix('u').and_then(|n| n.parse::<usize>().ok()) {
        return outcome.utilities.get(i.checked_sub(1)?).copied();
    }
    outcome.prices.entries().iter().find(|(n, _)| n.as_str() == field).map(|&(_, v)| v)
}

fn report_one(spec: &ScenarioSpec) -> Result<Vec<ReportRow>> {
    let closed = solve(spec)?;
    let printed = match paper_reference(spec) {
        Ok(p) => p,
        Err(Error::Unsupported(_)) => {
            return Ok(vec![ReportRow {
                scenario: spec.scenario,
                outcome: 0,
                field: "all".into(),
                closed_form: None,
                comparison: None,
            }])
        }
        Err(e) => return Err(e),
    };
    let oracle: Vec<EquilibriumOutcome> = closed.iter().map(|c| oracle_outcome(spec, c)).collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for (i, (p, o)) in printed.iter().zip(&oracle).enumerate() {
        for cmp in compare_outcomes(p, o) {
            rows.push(ReportRow {
                scenario: spec.scenario,
                outcome: i,
                closed_form: field_value(&closed[i], &cmp.field),
                field: cmp.field.clone(),
                comparison: Some(cmp),
            });
        }
    }
    if spec.scenario == Scenario::MulticlassCollab {
        // the printed conclusion: flat-rate access (second branch) wins
        let flag =
            |outs: &[EquilibriumOutcome]| f64::from(u8::from(outs[1].total_utility() >= outs[0].total_utility()));
        rows.push(ReportRow {
            scenario: spec.scenario,
            outcome: 1,
            field: "flat_rate_wins".into(),
            closed_form: Some(flag(&closed)),
            comparison: Some(Comparison::new("flat_rate_wins", 1.0, flag(&oracle))),
        });
    }
    Ok(rows)
}

/// Printed versus oracle values for each spec, closed forms alongside.
pub fn report(specs: &[ScenarioSpec]) -> Result<Vec<ReportRow>> {
    let per_spec: Vec<Vec<ReportRow>> = specs.par_iter().map(report_one).collect::<Result<_>>()?;
    Ok(per_spec.into_iter().flatten().collect())
}

pub fn write_report<W: Write>(out: W, metadata: &str, rows: &[ReportRow]) -> Result<()> {
    let header: Vec<String> =
        ["scenario", "outcome", "field", "closed_form", "printed", "oracle", "abs_gap", "rel_gap", "verdict"]
            .map(String::from)
            .to_vec();
    let opt = |v: Option<f64>| v.map(format_number).unwrap_or_default();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let c = r.comparison.as_ref();
            vec![
                r.scenario.to_string(),
                r.outcome.to_string(),
                r.field.clone(),
                opt(r.closed_form),
                opt(c.map(|c| c.printed)),
                opt(c.map(|c| c.computed)),
                opt(c.map(|c| c.abs_gap)),
                opt(c.map(|c| c.rel_gap)),
                r.verdict().to_string(),
            ]
        })
        .collect();
    write_csv(out, metadata, &header, &cells)
}
