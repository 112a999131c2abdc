//! Reliability-diagram data and baseline / TS / cwMCS-TS comparison reports.

use serde::{Deserialize, Serialize};

use crate::calibrate::{fit_cwmcs_traced, FitConfig, TemperatureModel};
use crate::dataset::{bin_stats, BinningConfig, PredictionSet, ProbabilitySet};
use crate::error::{Error, Result};
use crate::failure::{risk_coverage, RiskCoverageCurve};
use crate::metrics::CalibrationReport;

/// One bar of a reliability diagram. Mean fields are `None` for empty bins.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityRow {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub confidence: Option<f64>,
    pub accuracy: Option<f64>,
    /// `confidence - accuracy`; positive bars are over-confident.
    pub gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityData {
    pub rows: Vec<ReliabilityRow>,
    pub samples: usize,
    pub accuracy: f64,
    pub mean_confidence: f64,
}

impl ReliabilityData {
    /// Count-weighted sum of the bin gaps; equals the signed MCS.
    pub fn weighted_gap(&self) -> f64 {
        let n = self.samples as f64;
        self.rows
            .iter()
            .filter_map(|r| Some(r.count as f64 / n * r.gap?))
            .sum()
    }
}

pub fn reliability(probs: &ProbabilitySet, cfg: &BinningConfig) -> ReliabilityData {
    let top = probs.top1();
    let stats = bin_stats(&top, cfg);
    ReliabilityData {
        rows: stats
            .bins
            .iter()
            .map(|b| ReliabilityRow {
                lo: b.lo,
                hi: b.hi,
                count: b.count,
                confidence: b.confidence,
                accuracy: b.accuracy,
                gap: b.gap(),
            })
            .collect(),
        samples: top.len(),
        accuracy: top.accuracy(),
        mean_confidence: top.mean_confidence(),
    }
}

/// Everything measured for one calibration method on the test set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodEntry {
    pub name: String,
    /// `None` for the uncalibrated baseline.
    pub model: Option<TemperatureModel>,
    pub metrics: CalibrationReport,
    pub reliability: ReliabilityData,
    pub risk_coverage: RiskCoverageCurve,
    /// Test rows whose predicted class differs from the baseline's.
    pub changed_predictions: usize,
    /// Set when the test accuracy differs from the baseline's.
    pub accuracy_changed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub fit_config: FitConfig,
    pub proportions: Vec<f64>,
    pub val_samples: usize,
    pub test_samples: usize,
    pub classes: usize,
    pub methods: Vec<MethodEntry>,
}

impl ComparisonReport {
    pub fn method(&self, name: &str) -> Option<&MethodEntry> {
        self.methods.iter().find(|m| m.name == name)
    }
}

fn evaluate(
    name: &str,
    model: Option<TemperatureModel>,
    probs: &ProbabilitySet,
    baseline: Option<&ProbabilitySet>,
    bins: &BinningConfig,
    proportions: &[f64],
) -> Result<MethodEntry> {
    let metrics = CalibrationReport::from_probs(probs, bins)?;
    let (changed_predictions, accuracy_changed) = match baseline {
        Some(base) => (
            probs
                .predicted()
                .iter()
                .zip(base.predicted())
                .filter(|(a, b)| a != b)
                .count(),
            probs.accuracy() != base.accuracy(),
        ),
        None => (0, false),
    };
    Ok(MethodEntry {
        name: name.to_string(),
        model,
        metrics,
        reliability: reliability(probs, bins),
        risk_coverage: risk_coverage(probs, proportions)?,
        changed_predictions,
        accuracy_changed,
    })
}

/// Fits scalar TS and class-wise MCS TS on `val` and evaluates the baseline
/// and both calibrators on `test` with the bins of `cfg`. Entries are named
/// `baseline`, `ts` and `cwmcs_ts`.
pub fn compare(
    val: &PredictionSet,
    test: &PredictionSet,
    cfg: &FitConfig,
    proportions: &[f64],
) -> Result<ComparisonReport> {
    if val.num_classes() != test.num_classes() {
        return Err(Error::ClassCountMismatch {
            context: "test set".into(),
            expected: val.num_classes(),
            found: test.num_classes(),
        });
    }
    if test.is_empty() {
        return Err(Error::invalid("test set is empty"));
    }
    let fit = fit_cwmcs_traced(val, cfg)?;
    let base = test.softmax();
    let ts = fit.scalar.apply(test)?;
    let cw = fit.model.apply(test)?;
    let methods = vec![
        evaluate("baseline", None, &base, None, &cfg.bins, proportions)?,
        evaluate(
            "ts",
            Some(fit.scalar),
            &ts,
            Some(&base),
            &cfg.bins,
            proportions,
        )?,
        evaluate(
            "cwmcs_ts",
            Some(fit.model),
            &cw,
            Some(&base),
            &cfg.bins,
            proportions,
        )?,
    ];
    Ok(ComparisonReport {
        fit_config: *cfg,
        proportions: proportions.to_vec(),
        val_samples: val.len(),
        test_samples: test.len(),
        classes: test.num_classes(),
        methods,
    })
}
