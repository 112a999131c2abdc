// Reliability-diagram data as a text chart, plus the CSV export.
//
// ```bash
// cargo run --example reliability_diagram
// ```

use miscal::synthetic::{self, SyntheticConfig};
use miscal::{io, mcs, reliability, BinningConfig, ReliabilityData};

pub fn run_example() -> Result<ReliabilityData, Box<dyn std::error::Error>> {
    let pred = synthetic::uniformly_scaled(
        &SyntheticConfig {
            samples: 2000,
            classes: 4,
            ..Default::default()
        },
        0.4,
    )?;
    let probs = pred.softmax();
    let bins = BinningConfig::new(10)?;
    let data = reliability(&probs, &bins);

    for row in &data.rows {
        let bar = |x: Option<f64>| "#".repeat(x.map_or(0, |v| (v * 40.0).round() as usize));
        println!(
            "[{:.1},{:.1}] n={:5} acc {}",
            row.lo,
            row.hi,
            row.count,
            bar(row.accuracy)
        );
        println!("{:>21} {}", "conf", bar(row.confidence));
    }
    // Count-weighted gaps add up to the MCS.
    println!(
        "sum of gaps {:+.6}, MCS {:+.6}",
        data.weighted_gap(),
        mcs(&probs.top1(), &bins)?
    );
    print!("{}", io::reliability_to_csv(&data));
    Ok(data)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()?;
    Ok(())
}
