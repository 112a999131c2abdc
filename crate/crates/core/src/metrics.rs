//! Calibration metrics over top-1 confidences.
//!
//! `ece` is the bin-weighted mean of `|conf_m - acc_m|`; `mcs` keeps the
//! sign, so positive values mean over-confidence and negative values
//! under-confidence. The class-wise variants evaluate the same quantities on
//! the rows of each true class, and the weighted-subset aggregates combine
//! them by class size. `wsmcs` additionally splits classes by the sign of
//! their MCS and weights each group by its share of the class count.
//!
//! All sums run in ascending row and bin order so results are reproducible
//! bit for bit.

use serde::{Deserialize, Serialize};

use crate::dataset::{
    bin_stats, finish_bins, BinAccumulator, BinningConfig, ConfidenceSet, ProbabilitySet,
};
use crate::error::{Error, Result};

/// Floor applied to the true-class probability inside [`nll`].
pub const NLL_FLOOR: f64 = 1e-12;

fn require_rows(set: &ConfidenceSet) -> Result<()> {
    if set.is_empty() {
        return Err(Error::invalid(
            "calibration metrics need at least one sample",
        ));
    }
    Ok(())
}

/// Expected calibration error.
pub fn ece(set: &ConfidenceSet, cfg: &BinningConfig) -> Result<f64> {
    require_rows(set)?;
    Ok(bin_stats(set, cfg).weighted_gaps().0)
}

/// Signed miscalibration score.
pub fn mcs(set: &ConfidenceSet, cfg: &BinningConfig) -> Result<f64> {
    require_rows(set)?;
    Ok(bin_stats(set, cfg).weighted_gaps().1)
}

/// Per-class ECE and MCS, computed on the rows of each true class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassWise {
    pub cwece: Vec<f64>,
    pub cwmcs: Vec<f64>,
    pub class_sizes: Vec<usize>,
}

/// Class-wise ECE/MCS in a single pass. A class with no rows gets 0 for both.
pub fn class_wise(set: &ConfidenceSet, cfg: &BinningConfig) -> ClassWise {
    let k = set.num_classes();
    let m = cfg.bins();
    let mut acc = vec![BinAccumulator::default(); k * m];
    for ((&c, &ok), &y) in set.confidence().iter().zip(set.correct()).zip(set.labels()) {
        acc[y * m + cfg.slot(c)].push(c, ok);
    }
    let mut out = ClassWise {
        cwece: Vec::with_capacity(k),
        cwmcs: Vec::with_capacity(k),
        class_sizes: Vec::with_capacity(k),
    };
    for class_acc in acc.chunks(m) {
        let stats = finish_bins(class_acc, cfg);
        let (abs, signed) = if stats.total == 0 {
            (0.0, 0.0)
        } else {
            stats.weighted_gaps()
        };
        out.cwece.push(abs);
        out.cwmcs.push(signed);
        out.class_sizes.push(stats.total);
    }
    out
}

fn check_sizes(values: &[f64], sizes: &[usize]) -> Result<f64> {
    if values.len() != sizes.len() {
        return Err(Error::invalid(format!(
            "{} class scores but {} class sizes",
            values.len(),
            sizes.len()
        )));
    }
    let total: usize = sizes.iter().sum();
    if total == 0 {
        return Err(Error::invalid("class sizes sum to zero"));
    }
    Ok(total as f64)
}

/// Class-size weighted mean of per-class ECEs.
pub fn wsece(cwece: &[f64], class_sizes: &[usize]) -> Result<f64> {
    let n = check_sizes(cwece, class_sizes)?;
    Ok(cwece
        .iter()
        .zip(class_sizes)
        .map(|(e, &s)| s as f64 / n * e)
        .sum())
}

/// Components of the weighted-subset MCS.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WsMcs {
    /// Size-weighted MCS of the over-confident classes (`> 0`).
    pub over: f64,
    /// Size-weighted MCS of the under-confident classes (`< 0`).
    pub under: f64,
    pub k_plus: usize,
    pub k_minus: usize,
    /// `(k_plus / K) * over + (k_minus / K) * under`
    pub value: f64,
}

/// Weighted-subset MCS with its over/under-confident group breakdown.
/// Classes whose MCS is exactly zero belong to neither group.
pub fn wsmcs_parts(cwmcs: &[f64], class_sizes: &[usize]) -> Result<WsMcs> {
    let n = check_sizes(cwmcs, class_sizes)?;
    let k = cwmcs.len() as f64;
    let mut over = 0.0;
    let mut under = 0.0;
    let mut k_plus = 0;
    let mut k_minus = 0;
    for (&s, &size) in cwmcs.iter().zip(class_sizes) {
        let w = size as f64 / n;
        if s > 0.0 {
            over += w * s;
            k_plus += 1;
        } else if s < 0.0 {
            under += w * s;
            k_minus += 1;
        }
    }
    Ok(WsMcs {
        over,
        under,
        k_plus,
        k_minus,
        value: k_plus as f64 / k * over + k_minus as f64 / k * under,
    })
}

/// Weighted-subset MCS.
pub fn wsmcs(cwmcs: &[f64], class_sizes: &[usize]) -> Result<f64> {
    Ok(wsmcs_parts(cwmcs, class_sizes)?.value)
}

/// Mean under- and over-confidence across classes and the share of classes
/// in each sign group.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UcOcSummary {
    /// Mean MCS over classes with MCS < 0 (0 if there are none).
    pub uc_mean_mcs: f64,
    /// Mean MCS over classes with MCS > 0 (0 if there are none).
    pub oc_mean_mcs: f64,
    pub uc_class_fraction: f64,
    pub oc_class_fraction: f64,
    pub zero_class_fraction: f64,
    pub k_minus: usize,
    pub k_plus: usize,
}

pub fn uc_oc_summary(cwmcs: &[f64]) -> UcOcSummary {
    let (mut uc_sum, mut oc_sum) = (0.0, 0.0);
    let (mut k_minus, mut k_plus) = (0usize, 0usize);
    for &s in cwmcs {
        if s < 0.0 {
            uc_sum += s;
            k_minus += 1;
        } else if s > 0.0 {
            oc_sum += s;
            k_plus += 1;
        }
    }
    let mean = |sum: f64, count: usize| if count == 0 { 0.0 } else { sum / count as f64 };
    let k = cwmcs.len().max(1) as f64;
    let zero = cwmcs.len() - k_minus - k_plus;
    UcOcSummary {
        uc_mean_mcs: mean(uc_sum, k_minus),
        oc_mean_mcs: mean(oc_sum, k_plus),
        uc_class_fraction: k_minus as f64 / k,
        oc_class_fraction: k_plus as f64 / k,
        zero_class_fraction: zero as f64 / k,
        k_minus,
        k_plus,
    }
}

/// Mean negative log-likelihood of the true class, with probabilities
/// floored at [`NLL_FLOOR`].
pub fn nll(probs: &ProbabilitySet) -> f64 {
    if probs.is_empty() {
        return 0.0;
    }
    let total: f64 = probs
        .rows()
        .zip(probs.labels())
        .map(|(row, &y)| -row[y].max(NLL_FLOOR).ln())
        .sum();
    total / probs.len() as f64
}

/// Every calibration metric of one prediction batch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub samples: usize,
    pub accuracy: f64,
    pub ece: f64,
    pub wsece: f64,
    pub mcs: f64,
    pub wsmcs: f64,
    pub wsmcs_over: f64,
    pub wsmcs_under: f64,
    pub cwece: Vec<f64>,
    pub cwmcs: Vec<f64>,
    pub uc_oc: UcOcSummary,
    pub bins_used: usize,
    pub class_sizes: Vec<usize>,
}

impl CalibrationReport {
    pub fn new(set: &ConfidenceSet, cfg: &BinningConfig) -> Result<Self> {
        require_rows(set)?;
        let (ece, mcs) = bin_stats(set, cfg).weighted_gaps();
        let cw = class_wise(set, cfg);
        let ws = wsmcs_parts(&cw.cwmcs, &cw.class_sizes)?;
        Ok(Self {
            samples: set.len(),
            accuracy: set.accuracy(),
            ece,
            wsece: wsece(&cw.cwece, &cw.class_sizes)?,
            mcs,
            wsmcs: ws.value,
            wsmcs_over: ws.over,
            wsmcs_under: ws.under,
            uc_oc: uc_oc_summary(&cw.cwmcs),
            cwece: cw.cwece,
            cwmcs: cw.cwmcs,
            bins_used: cfg.bins(),
            class_sizes: cw.class_sizes,
        })
    }

    pub fn from_probs(probs: &ProbabilitySet, cfg: &BinningConfig) -> Result<Self> {
        Self::new(&probs.top1(), cfg)
    }
}

/// Convenience wrapper for [`CalibrationReport::new`].
pub fn report(set: &ConfidenceSet, cfg: &BinningConfig) -> Result<CalibrationReport> {
    CalibrationReport::new(set, cfg)
}
