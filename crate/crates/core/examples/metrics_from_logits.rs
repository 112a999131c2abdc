// Signed and absolute calibration metrics of a small logit dump.
//
// ```bash
// cargo run --example metrics_from_logits
// ```

use miscal::{BinningConfig, CalibrationReport, PredictionSet};

pub fn run_example() -> Result<CalibrationReport, Box<dyn std::error::Error>> {
    let pred = PredictionSet::from_rows(
        &[
            vec![4.0, 0.0, 0.0],
            vec![3.5, 0.5, 0.0],
            vec![0.0, 5.0, 0.0],
            vec![0.0, 4.0, 1.0],
            vec![0.2, 0.0, 0.1],
            vec![0.0, 0.3, 0.2],
        ],
        vec![0, 1, 1, 2, 2, 2],
    )?;
    let report = CalibrationReport::from_probs(&pred.softmax(), &BinningConfig::new(5)?)?;

    println!("accuracy {:.3}", report.accuracy);
    println!("ECE {:.4}  MCS {:+.4}", report.ece, report.mcs);
    println!("wsECE {:.4}  wsMCS {:+.4}", report.wsece, report.wsmcs);
    for (k, (e, m)) in report.cwece.iter().zip(&report.cwmcs).enumerate() {
        println!(
            "class {k}: n={} cwECE {e:.4} cwMCS {m:+.4}",
            report.class_sizes[k]
        );
    }
    Ok(report)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()?;
    Ok(())
}
