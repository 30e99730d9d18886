//! Run configuration, sweeps, field dumps and reports.
//!
//! Every command writes CSV: a `#` metadata line, a header row, then
//! numbers with 12 significant digits. Output is deterministic for a fixed
//! configuration even though sweep points are solved in parallel.

pub mod cli;
mod config;
mod field;
mod report;
mod run;
mod sweep;
mod table;

pub use config::{PartialConfig, RunConfig, SweepParam, SweepSpec};
pub use field::{field, FieldTable};
pub use report::{default_report_specs, report, write_report, ReportRow};
pub use run::{run_scenario, RunRecord};
pub use sweep::{sweep, SweepRow, SweepTable};
pub use table::{format_number, Layout};
