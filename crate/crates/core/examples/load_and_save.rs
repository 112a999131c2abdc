// Reading prediction files and writing models, reports and curves.
//
// ```bash
// cargo run --example load_and_save
// ```

use miscal::io::{self, PredictionFileSpec};
use miscal::{fit_scalar, risk_coverage, CalibrationReport, FitConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("miscal-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;

    let csv = dir.join("val.csv");
    std::fs::write(
        &csv,
        "label,logit_0,logit_1\n0,2.5,0.1\n1,0.3,1.9\n0,0.2,0.4\n1,-1.0,3.0\n",
    )?;
    let jsonl = dir.join("test.jsonl");
    std::fs::write(
        &jsonl,
        "{\"label\": 0, \"logits\": [1.5, -0.5]}\n{\"label\": 1, \"logits\": [0.1, 0.2]}\n",
    )?;

    let spec = PredictionFileSpec::default();
    let val = io::load_predictions(&csv, &spec)?;
    let test = io::load_predictions(&jsonl, &spec)?;

    let model = fit_scalar(&val, &FitConfig::default())?;
    let model_path = dir.join("model.json");
    io::save_model(&model, &model_path)?;
    assert_eq!(io::load_model(&model_path)?, model);

    let probs = model.apply(&test)?;
    io::save_report(
        &CalibrationReport::from_probs(&probs, &model.bins)?,
        dir.join("report.json"),
    )?;
    io::save_curve(&risk_coverage(&probs, &[0.0, 0.5])?, dir.join("curve.csv"))?;

    print!("{}", std::fs::read_to_string(&model_path)?);
    print!("{}", std::fs::read_to_string(dir.join("curve.csv"))?);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
