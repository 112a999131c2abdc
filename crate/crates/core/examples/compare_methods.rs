// Baseline vs TS vs cwMCS TS in one comparison report.
//
// ```bash
// cargo run --release --example compare_methods
// ```

use miscal::failure::default_proportions;
use miscal::synthetic::{self, SyntheticConfig};
use miscal::{compare, ComparisonReport, FitConfig};

pub fn run_example() -> Result<ComparisonReport, Box<dyn std::error::Error>> {
    let cfg = SyntheticConfig {
        samples: 2000,
        classes: 4,
        spread: 0.5,
        margin: 4.0,
        seed: 40,
    };
    let val = synthetic::heterogeneous(&cfg)?;
    let test = synthetic::heterogeneous(&SyntheticConfig { seed: 41, ..cfg })?;
    let report = compare(&val, &test, &FitConfig::default(), &default_proportions())?;

    println!(
        "{:<10} {:>8} {:>8} {:>9} {:>9} {:>10}",
        "method", "acc", "ECE", "wsECE", "MCS", "acc@20%"
    );
    for m in &report.methods {
        let at20 = m
            .risk_coverage
            .points
            .iter()
            .find(|p| p.proportion == 0.2)
            .map_or(f64::NAN, |p| p.accuracy);
        println!(
            "{:<10} {:>8.4} {:>8.4} {:>9.4} {:>+9.4} {:>10.4}",
            m.name, m.metrics.accuracy, m.metrics.ece, m.metrics.wsece, m.metrics.mcs, at20
        );
    }
    Ok(report)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()?;
    Ok(())
}
