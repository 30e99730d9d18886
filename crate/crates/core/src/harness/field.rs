use std::io::Write;

use super::config::RunConfig;
use super::table::{format_number, write_csv};
use crate::equilibria::{coalition_revenue, solve_multiclass_line, LineSolution, Scenario};
use crate::error::{Error, Result};
use crate::numerics::{gradient_field, FieldSample, Region};

/// Gradient samples of the pooled revenue in the `(pl, p2)` plane, with
/// `ph = pl + γ pmax δ*` so that the plane contains the equilibrium line.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldTable {
    pub metadata: String,
    pub line: LineSolution,
    pub samples: Vec<FieldSample>,
}

impl FieldTable {
    pub fn write<W: Write>(&self, out: W) -> Result<()> {
        let header: Vec<String> = ["pl", "p2", "grad_pl", "grad_p2", "magnitude"].map(String::from).to_vec();
        let rows: Vec<Vec<String>> =
            self.samples.iter().map(|s| [s.x, s.y, s.gx, s.gy, s.magnitude].map(format_number).to_vec()).collect();
        write_csv(out, &self.metadata, &header, &rows)
    }
}

/// Samples the split-coefficient coalition's revenue gradient. The
/// default region is `[0, pmax/2]²`, the default resolution 21×21.
pub fn field(config: &RunConfig) -> Result<FieldTable> {
    if config.scenario()? != Scenario::MulticlassLine {
        return Err(Error::domain("field sampling needs scenario multiclass-line with dl, dh, d2"));
    }
    let spec = config.spec()?;
    let params = spec.params;
    let class = *spec.class_params()?;
    let pmax = params.pmax();
    let line = solve_multiclass_line(&params, &class)?;
    let gap = class.gamma() * pmax * line.delta_star();
    let region = config.region.unwrap_or(Region::square(0.0, pmax / 2.0));
    for (lo, hi) in [region.x, region.y] {
        if lo < 0.0 || hi > pmax {
            return Err(Error::domain(format!("field region [{lo}, {hi}] leaves [0, {pmax}]")));
        }
    }
    let samples = gradient_field(
        |pl, p2| coalition_revenue(&params, &class, pl, pl + gap, p2),
        region,
        config.resolution,
        1e-6 * pmax,
    )?;
    let mut metadata = config.metadata();
    metadata += &format!(" delta_star={} gap={}", format_number(line.delta_star()), format_number(gap));
    match &line {
        LineSolution::Line(f) => metadata += &format!(" regime=Line total={}", format_number(f.total)),
        LineSolution::NoLine { .. } => metadata += " regime=NoLine",
    }
    Ok(FieldTable { metadata, line, samples })
}
