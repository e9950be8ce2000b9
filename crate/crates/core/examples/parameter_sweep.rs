//! Sweep the coalition size and print the table as CSV.

use paybid::config::{Scenario, ScenarioConfig};
use paybid::report::Format;
use paybid::sweep::{run_sweep, SweepSpec};

fn main() -> anyhow::Result<()> {
    let spec = SweepSpec {
        config: ScenarioConfig::for_scenario(Scenario::Collusion),
        param: "k".into(),
        from: 2.0,
        to: 10.0,
        step: 2.0,
        trials: 0,
        seed: 1,
    };
    print!("{}", run_sweep(&spec)?.render(Format::Csv));
    Ok(())
}
