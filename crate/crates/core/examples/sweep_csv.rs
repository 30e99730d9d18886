// Parameter sweeps from code rather than the command line. The table is
// the same CSV the `sweep` subcommand writes.

use usage_pricing::harness::{sweep, PartialConfig, RunConfig};
use usage_pricing::Result;

pub fn run() -> Result<()> {
    let config = RunConfig::from_partial(PartialConfig::from_toml_str(
        r#"
        scenario = "multiclass-competition"
        sweep = "gamma:0.5:3:0.5"
        "#,
    )?)?;
    let table = sweep(&config)?;
    table.write(std::io::stdout())
}

fn main() {
    run().expect("sweep example");
}
