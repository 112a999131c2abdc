//! Calibration toolkit for classifier prediction dumps.
//!
//! Given raw logits and true labels, `miscal` measures how far confidence
//! departs from accuracy, both in absolute terms (ECE and its class-wise and
//! class-size weighted variants) and with a sign that tells over-confidence
//! (positive) from under-confidence (negative): the miscalibration score
//! (MCS), its class-wise form, and the weighted-subset MCS. It fits scalar
//! temperature scaling and a class-wise variant whose per-class temperatures
//! follow the class-wise MCS, ranks samples by predictive entropy for
//! failure detection, and exports reliability-diagram and risk-coverage
//! data.
//!
//! ```
//! use miscal::{BinningConfig, CalibrationReport, PredictionSet};
//!
//! let pred = PredictionSet::from_rows(
//!     &[vec![2.0, 0.0], vec![0.5, 1.5], vec![3.0, -1.0]],
//!     vec![0, 0, 0],
//! )?;
//! let report = CalibrationReport::from_probs(&pred.softmax(), &BinningConfig::default())?;
//! assert!(report.mcs.abs() <= report.ece);
//! # Ok::<(), miscal::Error>(())
//! ```

pub mod calibrate;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod failure;
pub mod io;
pub mod metrics;
pub mod report;
pub mod synthetic;

pub use calibrate::{
    apply_scalar, apply_vector, build_cwmcs_temperature, fit_cwmcs, fit_cwmcs_traced, fit_scalar,
    CwmcsFit, CwmcsSource, FitConfig, Objective, Temperature, TemperatureModel,
};
pub use dataset::{
    bin_assign, bin_stats, BinRecord, BinStats, BinningConfig, ClassSubset, ConfidenceSet,
    PredictionSet, ProbabilitySet,
};
pub use error::{Error, Result};
pub use failure::{rank_by_uncertainty, risk_coverage, CoveragePoint, RiskCoverageCurve};
pub use metrics::{
    class_wise, ece, mcs, nll, uc_oc_summary, wsece, wsmcs, wsmcs_parts, CalibrationReport,
    ClassWise, UcOcSummary, WsMcs,
};
pub use report::{
    compare, reliability, ComparisonReport, MethodEntry, ReliabilityData, ReliabilityRow,
};
