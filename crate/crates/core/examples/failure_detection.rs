// Entropy-ranked failure detection: refer the most uncertain samples and
// watch the accuracy of the rest.
//
// ```bash
// cargo run --example failure_detection
// ```

use miscal::failure::{proportion_grid, rank_by_uncertainty};
use miscal::synthetic::{self, SyntheticConfig};
use miscal::{risk_coverage, RiskCoverageCurve};

pub fn run_example() -> Result<RiskCoverageCurve, Box<dyn std::error::Error>> {
    let pred = synthetic::calibrated(&SyntheticConfig {
        samples: 2000,
        classes: 5,
        ..Default::default()
    })?;
    let probs = pred.softmax();

    let order = rank_by_uncertainty(&probs);
    println!("most uncertain rows: {:?}", &order[..5]);

    let curve = risk_coverage(&probs, &proportion_grid(0.0, 0.5, 0.1)?)?;
    for p in &curve.points {
        println!(
            "refer {:>4.0}%  accuracy {:.4}  kept {}",
            p.proportion * 100.0,
            p.accuracy,
            p.remaining_count
        );
    }
    Ok(curve)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()?;
    Ok(())
}
