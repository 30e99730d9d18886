use std::io::Write;

use rayon::prelude::*;

use super::config::RunConfig;
use super::table::{format_number, write_csv, Layout};
use crate::equilibria::{solve, EquilibriumOutcome};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    /// `None` where the point violates a precondition.
    pub outcome: Option<EquilibriumOutcome>,
}

/// Rows in sweep order; a point with several equilibria contributes one
/// row per equilibrium, in solver order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub layout: Layout,
    pub metadata: String,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn header(&self) -> Vec<String> {
        let mut h = vec!["x".to_string()];
        h.extend(self.layout.columns());
        h
    }

    pub fn write<W: Write>(&self, out: W) -> Result<()> {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                let mut cells = vec![format_number(r.x)];
                cells.extend(self.layout.cells(r.outcome.as_ref()));
                cells
            })
            .collect();
        write_csv(out, &self.metadata, &self.header(), &rows)
    }
}

/// Solves the configured scenario at every sweep point, in parallel.
///
/// Precondition violations become `Invalid` rows; oracle non-convergence
/// aborts the sweep.
pub fn sweep(config: &RunConfig) -> Result<SweepTable> {
    let scenario = config.scenario()?;
    let spec = config.sweep.ok_or_else(|| Error::Config("sweep needs --sweep param:start:stop:step".into()))?;
    let points: Vec<Vec<SweepRow>> = spec
        .values()
        .par_iter()
        .map(|&x| {
            let point = config.with_param(spec.param, x);
            match point.spec().and_then(|s| solve(&s)) {
                Ok(outcomes) => Ok(outcomes.into_iter().map(|o| SweepRow { x, outcome: Some(o) }).collect()),
                Err(e @ Error::Divergence { .. }) => Err(e),
                Err(_) => Ok(vec![SweepRow { x, outcome: None }]),
            }
        })
        .collect::<Result<_>>()?;
    Ok(SweepTable {
        layout: Layout::of(scenario),
        metadata: config.metadata(),
        rows: points.into_iter().flatten().collect(),
    })
}
