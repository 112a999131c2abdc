//! Prediction data model: logits, probabilities, top-1 outcomes and
//! equal-width confidence binning.
//!
//! Every downstream computation starts from a [`PredictionSet`] (raw logits
//! plus true labels), turns it into a [`ProbabilitySet`] through a softmax,
//! and then reduces it to a [`ConfidenceSet`] holding the top-1 confidence
//! and correctness of each row. Calibration metrics are defined on the
//! latter only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on probability row sums.
pub const ROW_SUM_TOLERANCE: f64 = 1e-9;

/// Default number of equal-width confidence bins.
pub const DEFAULT_BINS: usize = 15;

/// Index of the largest value; ties resolve to the lowest index.
pub fn argmax(row: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in row.iter().enumerate().skip(1) {
        if v > row[best] {
            best = i;
        }
    }
    best
}

/// Numerically stable softmax of `scaled` written into `out`.
fn softmax_into(scaled: &[f64], out: &mut [f64]) {
    let max = scaled.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut sum = 0.0;
    for (o, &z) in out.iter_mut().zip(scaled) {
        *o = (z - max).exp();
        sum += *o;
    }
    for o in out.iter_mut() {
        *o /= sum;
    }
}

/// How logits are rescaled before the softmax.
#[derive(Debug, Clone, Copy)]
pub(crate) enum LogitScale<'a> {
    Identity,
    Scalar(f64),
    PerClass(&'a [f64]),
}

/// Batch of raw logits and true labels.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionSet {
    logits: Vec<f64>,
    labels: Vec<usize>,
    classes: usize,
}

impl PredictionSet {
    /// Builds a set from row-major logits (`labels.len() * classes` values).
    ///
    /// An empty set is accepted so that class subsets can be represented;
    /// metric and fitting entry points reject it.
    pub fn new(logits: Vec<f64>, labels: Vec<usize>, classes: usize) -> Result<Self> {
        if classes < 2 {
            return Err(Error::invalid(format!(
                "class count must be at least 2, got {classes}"
            )));
        }
        if logits.len() != labels.len() * classes {
            return Err(Error::invalid(format!(
                "{} logits do not form {} rows of {} classes",
                logits.len(),
                labels.len(),
                classes
            )));
        }
        for (n, row) in logits.chunks(classes).enumerate() {
            if let Some(k) = row.iter().position(|z| !z.is_finite()) {
                return Err(Error::invalid(format!(
                    "row {n}: logit {k} is not finite ({})",
                    row[k]
                )));
            }
        }
        check_labels(&labels, classes)?;
        Ok(Self {
            logits,
            labels,
            classes,
        })
    }

    /// Builds a set from one logit vector per sample.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R], labels: Vec<usize>) -> Result<Self> {
        let classes = rows.first().map_or(0, |r| r.as_ref().len());
        if let Some((n, r)) = rows
            .iter()
            .enumerate()
            .find(|(_, r)| r.as_ref().len() != classes)
        {
            return Err(Error::invalid(format!(
                "row {n} has {} logits, expected {classes}",
                r.as_ref().len()
            )));
        }
        if rows.len() != labels.len() {
            return Err(Error::invalid(format!(
                "{} logit rows but {} labels",
                rows.len(),
                labels.len()
            )));
        }
        let logits = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().copied())
            .collect();
        Self::new(logits, labels, classes)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.classes
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Row-major logits.
    pub fn logits(&self) -> &[f64] {
        &self.logits
    }

    pub fn row(&self, n: usize) -> &[f64] {
        &self.logits[n * self.classes..(n + 1) * self.classes]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.logits.chunks(self.classes)
    }

    /// Returns a new set with every logit multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.logits.iter().map(|z| z * factor).collect(),
            self.labels.clone(),
            self.classes,
        )
    }

    /// Row-wise softmax.
    pub fn softmax(&self) -> ProbabilitySet {
        self.softmax_scaled(LogitScale::Identity)
    }

    /// Softmax of rescaled logits. The predicted class of every row is taken
    /// from the rescaled logits for a per-class scale and from the raw logits
    /// otherwise, so that a monotone rescaling keeps the raw prediction even
    /// when the exponentials of two nearly equal logits round to the same
    /// value.
    pub(crate) fn softmax_scaled(&self, scale: LogitScale<'_>) -> ProbabilitySet {
        let k = self.classes;
        let mut probs = vec![0.0; self.logits.len()];
        let mut predicted = Vec::with_capacity(self.len());
        let mut scaled = vec![0.0; k];
        for (row, out) in self.rows().zip(probs.chunks_mut(k)) {
            predicted.push(rescale_row(row, scale, &mut scaled));
            softmax_into(&scaled, out);
        }
        ProbabilitySet {
            probs,
            labels: self.labels.clone(),
            classes: k,
            predicted,
        }
    }

    /// Same as `self.softmax_scaled(scale).top1()` without materialising the
    /// probability matrix; results are bitwise identical.
    pub(crate) fn top1_scaled(&self, scale: LogitScale<'_>) -> ConfidenceSet {
        let mut scaled = vec![0.0; self.classes];
        let mut confidence = Vec::with_capacity(self.len());
        let mut correct = Vec::with_capacity(self.len());
        for (row, &y) in self.rows().zip(&self.labels) {
            let pick = rescale_row(row, scale, &mut scaled);
            let max = scaled.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let sum: f64 = scaled.iter().map(|&z| (z - max).exp()).sum();
            confidence.push((scaled[pick] - max).exp() / sum);
            correct.push(pick == y);
        }
        ConfidenceSet {
            confidence,
            correct,
            labels: self.labels.clone(),
            classes: self.classes,
        }
    }
}

/// Writes the rescaled row into `scaled` and returns the predicted class.
fn rescale_row(row: &[f64], scale: LogitScale<'_>, scaled: &mut [f64]) -> usize {
    match scale {
        LogitScale::Identity => {
            scaled.copy_from_slice(row);
            argmax(row)
        }
        LogitScale::Scalar(t) => {
            for (s, &z) in scaled.iter_mut().zip(row) {
                *s = z / t;
            }
            argmax(row)
        }
        LogitScale::PerClass(temps) => {
            for ((s, &z), &t) in scaled.iter_mut().zip(row).zip(temps) {
                *s = z / t;
            }
            argmax(scaled)
        }
    }
}

fn check_labels(labels: &[usize], classes: usize) -> Result<()> {
    match labels.iter().position(|&y| y >= classes) {
        Some(n) => Err(Error::invalid(format!(
            "row {n}: label {} outside [0, {classes})",
            labels[n]
        ))),
        None => Ok(()),
    }
}

/// Row-stochastic class probabilities with true labels.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilitySet {
    probs: Vec<f64>,
    labels: Vec<usize>,
    classes: usize,
    predicted: Vec<usize>,
}

impl ProbabilitySet {
    /// Builds a set from row-major probabilities, validating that every
    /// entry lies in [0, 1] and every row sums to 1 within
    /// [`ROW_SUM_TOLERANCE`].
    pub fn new(probs: Vec<f64>, labels: Vec<usize>, classes: usize) -> Result<Self> {
        if classes < 2 {
            return Err(Error::invalid(format!(
                "class count must be at least 2, got {classes}"
            )));
        }
        if probs.len() != labels.len() * classes {
            return Err(Error::invalid(format!(
                "{} probabilities do not form {} rows of {} classes",
                probs.len(),
                labels.len(),
                classes
            )));
        }
        for (n, row) in probs.chunks(classes).enumerate() {
            if let Some(k) = row.iter().position(|p| !(0.0..=1.0).contains(p)) {
                return Err(Error::invalid(format!(
                    "row {n}: probability {k} = {} outside [0, 1]",
                    row[k]
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
                return Err(Error::invalid(format!(
                    "row {n}: probabilities sum to {sum}"
                )));
            }
        }
        check_labels(&labels, classes)?;
        let predicted = probs.chunks(classes).map(argmax).collect();
        Ok(Self {
            probs,
            labels,
            classes,
            predicted,
        })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R], labels: Vec<usize>) -> Result<Self> {
        let classes = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != classes) || rows.len() != labels.len() {
            return Err(Error::invalid("ragged probability rows"));
        }
        let probs = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().copied())
            .collect();
        Self::new(probs, labels, classes)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.classes
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn row(&self, n: usize) -> &[f64] {
        &self.probs[n * self.classes..(n + 1) * self.classes]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.probs.chunks(self.classes)
    }

    /// Predicted class per row (lowest index among maximal entries).
    pub fn predicted(&self) -> &[usize] {
        &self.predicted
    }

    /// Top-1 confidence and correctness of every row.
    pub fn top1(&self) -> ConfidenceSet {
        let confidence = self
            .rows()
            .zip(&self.predicted)
            .map(|(row, &p)| row[p])
            .collect();
        let correct = self
            .predicted
            .iter()
            .zip(&self.labels)
            .map(|(p, y)| p == y)
            .collect();
        ConfidenceSet {
            confidence,
            correct,
            labels: self.labels.clone(),
            classes: self.classes,
        }
    }

    /// Fraction of rows whose predicted class equals the label.
    pub fn accuracy(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        let hits = self
            .predicted
            .iter()
            .zip(&self.labels)
            .filter(|(p, y)| p == y)
            .count();
        hits as f64 / self.len() as f64
    }

    /// Shannon entropy (nats) of every row, with `0 ln 0 = 0`.
    pub fn entropy(&self) -> Vec<f64> {
        self.rows()
            .map(|row| {
                row.iter()
                    .filter(|&&p| p > 0.0)
                    .map(|&p| -p * p.ln())
                    .sum::<f64>()
            })
            .collect()
    }
}

/// Top-1 view of a prediction batch: confidence of the predicted class,
/// whether the prediction was correct, and the true label.
///
/// This is the input of every calibration metric. It can be built directly
/// when only confidences and outcomes are known; unlike the logit and
/// probability sets it accepts a single class.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceSet {
    confidence: Vec<f64>,
    correct: Vec<bool>,
    labels: Vec<usize>,
    classes: usize,
}

impl ConfidenceSet {
    pub fn new(
        confidence: Vec<f64>,
        correct: Vec<bool>,
        labels: Vec<usize>,
        classes: usize,
    ) -> Result<Self> {
        if classes == 0 {
            return Err(Error::invalid("class count must be at least 1"));
        }
        if confidence.len() != correct.len() || confidence.len() != labels.len() {
            return Err(Error::invalid(format!(
                "length mismatch: {} confidences, {} outcomes, {} labels",
                confidence.len(),
                correct.len(),
                labels.len()
            )));
        }
        if let Some(n) = confidence.iter().position(|c| !(0.0..=1.0).contains(c)) {
            return Err(Error::invalid(format!(
                "row {n}: confidence {} outside [0, 1]",
                confidence[n]
            )));
        }
        check_labels(&labels, classes)?;
        Ok(Self {
            confidence,
            correct,
            labels,
            classes,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.classes
    }

    pub fn confidence(&self) -> &[f64] {
        &self.confidence
    }

    pub fn correct(&self) -> &[bool] {
        &self.correct
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn accuracy(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        self.correct.iter().filter(|&&c| c).count() as f64 / self.len() as f64
    }

    pub fn mean_confidence(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        self.confidence.iter().sum::<f64>() / self.len() as f64
    }
}

/// Restriction of a batch to the rows whose true label is a given class.
pub trait ClassSubset: Sized {
    /// Rows with label `class`, in their original order. An empty result is
    /// legal; `class` outside `[0, K)` is an error.
    fn class_subset(&self, class: usize) -> Result<Self>;
}

fn subset_rows(labels: &[usize], class: usize, classes: usize) -> Result<Vec<usize>> {
    if class >= classes {
        return Err(Error::invalid(format!(
            "class {class} outside [0, {classes})"
        )));
    }
    Ok(labels
        .iter()
        .enumerate()
        .filter(|(_, &y)| y == class)
        .map(|(n, _)| n)
        .collect())
}

impl ClassSubset for PredictionSet {
    fn class_subset(&self, class: usize) -> Result<Self> {
        let rows = subset_rows(&self.labels, class, self.classes)?;
        Ok(Self {
            logits: rows
                .iter()
                .flat_map(|&n| self.row(n).iter().copied())
                .collect(),
            labels: vec![class; rows.len()],
            classes: self.classes,
        })
    }
}

impl ClassSubset for ProbabilitySet {
    fn class_subset(&self, class: usize) -> Result<Self> {
        let rows = subset_rows(&self.labels, class, self.classes)?;
        Ok(Self {
            probs: rows
                .iter()
                .flat_map(|&n| self.row(n).iter().copied())
                .collect(),
            labels: vec![class; rows.len()],
            classes: self.classes,
            predicted: rows.iter().map(|&n| self.predicted[n]).collect(),
        })
    }
}

impl ClassSubset for ConfidenceSet {
    fn class_subset(&self, class: usize) -> Result<Self> {
        let rows = subset_rows(&self.labels, class, self.classes)?;
        Ok(Self {
            confidence: rows.iter().map(|&n| self.confidence[n]).collect(),
            correct: rows.iter().map(|&n| self.correct[n]).collect(),
            labels: vec![class; rows.len()],
            classes: self.classes,
        })
    }
}

/// Number of equal-width confidence bins on [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct BinningConfig {
    bins: usize,
}

impl BinningConfig {
    pub fn new(bins: usize) -> Result<Self> {
        if bins == 0 {
            return Err(Error::invalid("bin count must be at least 1"));
        }
        Ok(Self { bins })
    }

    pub fn bins(&self) -> usize {
        self.bins
    }

    /// Lower and upper edge of 1-based bin `m`.
    pub fn edges(&self, m: usize) -> (f64, f64) {
        let b = self.bins as f64;
        ((m - 1) as f64 / b, m as f64 / b)
    }

    /// 0-based bin of a confidence already known to lie in [0, 1].
    pub(crate) fn slot(&self, confidence: f64) -> usize {
        let idx = (confidence * self.bins as f64).ceil() as usize;
        idx.clamp(1, self.bins) - 1
    }
}

impl Default for BinningConfig {
    fn default() -> Self {
        Self { bins: DEFAULT_BINS }
    }
}

impl TryFrom<usize> for BinningConfig {
    type Error = Error;

    fn try_from(bins: usize) -> Result<Self> {
        Self::new(bins)
    }
}

impl From<BinningConfig> for usize {
    fn from(cfg: BinningConfig) -> usize {
        cfg.bins
    }
}

/// 1-based bin owning `confidence`: bin `m` covers `((m-1)/M, m/M]` and bin 1
/// additionally owns 0.
pub fn bin_assign(confidence: f64, cfg: &BinningConfig) -> Result<usize> {
    if !(0.0..=1.0).contains(&confidence) {
        return Err(Error::invalid(format!(
            "confidence {confidence} outside [0, 1]"
        )));
    }
    Ok(cfg.slot(confidence) + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinRecord {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    /// Mean top-1 confidence; `None` for an empty bin.
    pub confidence: Option<f64>,
    /// Mean top-1 correctness; `None` for an empty bin.
    pub accuracy: Option<f64>,
}

impl BinRecord {
    /// `confidence - accuracy`, if the bin is non-empty.
    pub fn gap(&self) -> Option<f64> {
        Some(self.confidence? - self.accuracy?)
    }
}

/// Per-bin aggregates of a [`ConfidenceSet`]. `bins[m - 1]` is bin `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinStats {
    pub bins: Vec<BinRecord>,
    pub total: usize,
}

impl BinStats {
    /// `(Σ w_m |conf_m - acc_m|, Σ w_m (conf_m - acc_m))` with `w_m = |B_m| / N`,
    /// skipping empty bins.
    pub fn weighted_gaps(&self) -> (f64, f64) {
        let n = self.total as f64;
        let mut abs = 0.0;
        let mut signed = 0.0;
        for b in &self.bins {
            if let Some(gap) = b.gap() {
                let w = b.count as f64 / n;
                abs += w * gap.abs();
                signed += w * gap;
            }
        }
        (abs, signed)
    }
}

/// Accumulator for one bin; sums are taken in row order.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct BinAccumulator {
    pub count: usize,
    pub confidence: f64,
    pub correct: f64,
}

impl BinAccumulator {
    pub(crate) fn push(&mut self, confidence: f64, correct: bool) {
        self.count += 1;
        self.confidence += confidence;
        if correct {
            self.correct += 1.0;
        }
    }
}

pub(crate) fn finish_bins(acc: &[BinAccumulator], cfg: &BinningConfig) -> BinStats {
    let bins = acc
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let (lo, hi) = cfg.edges(i + 1);
            let (confidence, accuracy) = if a.count == 0 {
                (None, None)
            } else {
                let c = a.count as f64;
                (Some(a.confidence / c), Some(a.correct / c))
            };
            BinRecord {
                lo,
                hi,
                count: a.count,
                confidence,
                accuracy,
            }
        })
        .collect();
    BinStats {
        bins,
        total: acc.iter().map(|a| a.count).sum(),
    }
}

/// Equal-width bin aggregates of top-1 confidence and correctness.
pub fn bin_stats(set: &ConfidenceSet, cfg: &BinningConfig) -> BinStats {
    let mut acc = vec![BinAccumulator::default(); cfg.bins()];
    for (&c, &ok) in set.confidence().iter().zip(set.correct()) {
        acc[cfg.slot(c)].push(c, ok);
    }
    finish_bins(&acc, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    pub(crate) fn four_sample_fixture() -> ConfidenceSet {
        ConfidenceSet::new(
            vec![0.6, 0.8, 0.9, 0.4],
            vec![true, false, true, true],
            vec![0; 4],
            1,
        )
        .unwrap()
    }

    #[test]
    fn softmax_closed_forms() {
        let pred = PredictionSet::from_rows(
            &[vec![0.0, 0.0], vec![3f64.ln(), 0.0], vec![1000.0, 0.0]],
            vec![0, 0, 0],
        )
        .unwrap();
        let p = pred.softmax();
        assert_eq!(p.row(0), &[0.5, 0.5]);
        assert!(close(p.row(1)[0], 0.75, 1e-15));
        assert!(close(p.row(1)[1], 0.25, 1e-15));
        assert_eq!(p.row(2), &[1.0, 0.0]);
    }

    #[test]
    fn softmax_rejects_non_finite() {
        assert!(PredictionSet::from_rows(&[vec![f64::NAN, 0.0]], vec![0]).is_err());
        assert!(PredictionSet::from_rows(&[vec![f64::INFINITY, 0.0]], vec![0]).is_err());
    }

    #[test]
    fn prediction_set_validation() {
        assert!(PredictionSet::from_rows(&[vec![0.0]], vec![0]).is_err());
        assert!(PredictionSet::from_rows(&[vec![0.0, 1.0]], vec![2]).is_err());
        assert!(PredictionSet::from_rows(&[vec![0.0, 1.0], vec![0.0]], vec![0, 0]).is_err());
        assert!(PredictionSet::new(vec![0.0; 3], vec![0], 2).is_err());
    }

    #[test]
    fn top1_examples() {
        let p = ProbabilitySet::from_rows(
            &[vec![0.2, 0.8], vec![0.5, 0.5], vec![0.9, 0.1]],
            vec![1, 0, 1],
        )
        .unwrap();
        let t = p.top1();
        assert_eq!(t.confidence(), &[0.8, 0.5, 0.9]);
        assert_eq!(p.predicted(), &[1, 0, 0]);
        assert_eq!(t.correct(), &[true, true, false]);
    }

    #[test]
    fn probability_set_validation() {
        assert!(ProbabilitySet::from_rows(&[vec![0.6, 0.6]], vec![0]).is_err());
        assert!(ProbabilitySet::from_rows(&[vec![1.2, -0.2]], vec![0]).is_err());
        assert!(ProbabilitySet::from_rows(&[vec![0.5, 0.5 + 5e-10]], vec![0]).is_ok());
    }

    #[test]
    fn bin_assign_boundaries() {
        let m15 = BinningConfig::default();
        let m2 = BinningConfig::new(2).unwrap();
        assert_eq!(bin_assign(0.0, &m15).unwrap(), 1);
        assert_eq!(bin_assign(1.0, &m15).unwrap(), 15);
        assert_eq!(bin_assign(0.5, &m2).unwrap(), 1);
        assert_eq!(bin_assign(0.73, &m15).unwrap(), 11);
        assert!(bin_assign(1.0001, &m15).is_err());
        assert!(bin_assign(-0.1, &m15).is_err());
        assert!(bin_assign(f64::NAN, &m15).is_err());
        assert!(BinningConfig::new(0).is_err());
    }

    #[test]
    fn bin_stats_four_sample_fixture() {
        let stats = bin_stats(&four_sample_fixture(), &BinningConfig::new(2).unwrap());
        let b1 = stats.bins[0];
        let b2 = stats.bins[1];
        assert_eq!(b1.count, 1);
        assert!(close(b1.confidence.unwrap(), 0.4, 1e-15));
        assert_eq!(b1.accuracy, Some(1.0));
        assert_eq!(b2.count, 3);
        assert!(close(b2.confidence.unwrap(), 2.3 / 3.0, 1e-15));
        assert!(close(b2.accuracy.unwrap(), 2.0 / 3.0, 1e-15));
        assert_eq!(stats.total, 4);
    }

    #[test]
    fn bin_stats_single_sample_and_single_bin() {
        let one = ConfidenceSet::new(vec![0.73], vec![true], vec![0], 1).unwrap();
        let stats = bin_stats(&one, &BinningConfig::default());
        assert_eq!(stats.bins[10].count, 1);
        assert_eq!(stats.bins[10].confidence, Some(0.73));
        assert_eq!(stats.bins[10].accuracy, Some(1.0));
        assert!(stats
            .bins
            .iter()
            .enumerate()
            .all(|(i, b)| i == 10 || (b.count == 0 && b.confidence.is_none())));

        let same =
            ConfidenceSet::new(vec![0.91, 0.95, 0.99], vec![true; 3], vec![0; 3], 1).unwrap();
        let stats = bin_stats(&same, &BinningConfig::new(4).unwrap());
        assert_eq!(stats.bins[3].count, 3);
        assert_eq!(stats.bins.iter().map(|b| b.count).sum::<usize>(), 3);
    }

    #[test]
    fn class_subset_examples() {
        let pred = PredictionSet::from_rows(
            &[
                vec![1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 2.0],
            ],
            vec![0, 1, 0],
        )
        .unwrap();
        let sub = pred.class_subset(0).unwrap();
        assert_eq!(sub.len(), 2);
        assert_eq!(sub.row(0), pred.row(0));
        assert_eq!(sub.row(1), pred.row(2));
        assert!(pred.class_subset(3).is_err());

        let two = PredictionSet::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]], vec![1, 1]).unwrap();
        assert!(two.class_subset(0).unwrap().is_empty());

        let three = ProbabilitySet::from_rows(
            &[
                vec![1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0],
            ],
            vec![0, 1, 2],
        )
        .unwrap();
        let total: usize = (0..3).map(|k| three.class_subset(k).unwrap().len()).sum();
        assert_eq!(total, 3);
    }

    #[test]
    fn entropy_examples() {
        let p = ProbabilitySet::from_rows(
            &[
                vec![0.25, 0.25, 0.25, 0.25],
                vec![0.0, 1.0, 0.0, 0.0],
                vec![0.8, 0.2, 0.0, 0.0],
                vec![0.2, 0.8, 0.0, 0.0],
            ],
            vec![0, 0, 0, 0],
        )
        .unwrap();
        let h = p.entropy();
        assert!(close(h[0], 4f64.ln(), 1e-15));
        assert_eq!(h[1], 0.0);
        let expected = -0.8 * 0.8f64.ln() - 0.2 * 0.2f64.ln();
        assert!(close(h[2], expected, 1e-15));
        assert!(close(h[2], 0.50040, 1e-5));
        assert_eq!(h[2], h[3]);
    }

    #[test]
    fn binning_config_serde() {
        let cfg: BinningConfig = serde_json::from_str("15").unwrap();
        assert_eq!(cfg.bins(), 15);
        assert!(serde_json::from_str::<BinningConfig>("0").is_err());
    }
}
