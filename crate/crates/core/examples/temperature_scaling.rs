// Scalar temperature scaling on over-confident synthetic logits.
//
// ```bash
// cargo run --release --example temperature_scaling
// ```

use miscal::synthetic::{self, SyntheticConfig};
use miscal::{ece, fit_scalar, BinningConfig, FitConfig};

pub fn run_example() -> Result<(f64, f64, f64), Box<dyn std::error::Error>> {
    let cfg = SyntheticConfig {
        samples: 3000,
        classes: 5,
        ..Default::default()
    };
    // Logits three times too sharp.
    let val = synthetic::uniformly_scaled(&SyntheticConfig { seed: 1, ..cfg }, 3.0)?;
    let test = synthetic::uniformly_scaled(&SyntheticConfig { seed: 2, ..cfg }, 3.0)?;

    let model = fit_scalar(&val, &FitConfig::default())?;
    let bins = BinningConfig::default();
    let before = ece(&test.softmax().top1(), &bins)?;
    let after = ece(&model.apply(&test)?.top1(), &bins)?;
    println!(
        "T = {:.4} (validation NLL {:.4})",
        model.base_temperature(),
        model.fit_objective_value
    );
    println!("test ECE {before:.4} -> {after:.4}");
    Ok((model.base_temperature(), before, after))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()?;
    Ok(())
}
