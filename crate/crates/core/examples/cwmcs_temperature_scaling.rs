// Class-wise temperature scaling when some classes are over-confident and
// others under-confident.
//
// ```bash
// cargo run --release --example cwmcs_temperature_scaling
// ```

use miscal::synthetic::{self, SyntheticConfig};
use miscal::{fit_cwmcs_traced, BinningConfig, CalibrationReport, FitConfig, Temperature};

pub fn run_example() -> Result<(f64, f64), Box<dyn std::error::Error>> {
    let cfg = SyntheticConfig {
        samples: 3000,
        classes: 6,
        spread: 0.5,
        margin: 4.0,
        seed: 10,
    };
    let val = synthetic::heterogeneous(&cfg)?;
    let test = synthetic::heterogeneous(&SyntheticConfig { seed: 11, ..cfg })?;

    // A coarser grid keeps the example quick; the default step is 0.001.
    let fit_cfg = FitConfig {
        gamma_step: 0.01,
        gamma_lo: -0.99,
        gamma_hi: 0.99,
        ..FitConfig::default()
    };
    let fit = fit_cwmcs_traced(&val, &fit_cfg)?;
    if let Temperature::PerClass {
        base,
        gamma,
        values,
    } = &fit.model.temperature
    {
        println!("T = {base:.4}, gamma = {gamma:.3}");
        for (k, (t, c)) in values.iter().zip(&fit.cwmcs).enumerate() {
            println!("class {k}: cwMCS after TS {c:+.4} -> T_k {t:.4}");
        }
    }

    let bins = BinningConfig::default();
    let ts = CalibrationReport::from_probs(&fit.scalar.apply(&test)?, &bins)?;
    let cw = CalibrationReport::from_probs(&fit.model.apply(&test)?, &bins)?;
    println!("test ECE: TS {:.4}, cwMCS TS {:.4}", ts.ece, cw.ece);
    println!(
        "under/over-confidence: TS {:+.4}/{:+.4}, cwMCS TS {:+.4}/{:+.4}",
        ts.uc_oc.uc_mean_mcs, ts.uc_oc.oc_mean_mcs, cw.uc_oc.uc_mean_mcs, cw.uc_oc.oc_mean_mcs
    );
    Ok((ts.ece, cw.ece))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()?;
    Ok(())
}
