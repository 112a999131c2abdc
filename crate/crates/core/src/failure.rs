//! Entropy-ranked failure detection.
//!
//! Samples are ranked by the entropy of their predictive distribution, most
//! uncertain first. Referring the top fraction `p` of that ranking to a human
//! expert leaves the rest to the model; the risk-coverage curve reports the
//! accuracy of what remains as a function of `p`.
//!
//! Entropy is symmetric in the class probabilities, so `[0.8, 0.2]` and
//! `[0.2, 0.8]` rank identically regardless of which class is the label.
//! Plain entropy is all the ranking uses, so a correct and a wrong prediction
//! with the same distribution shape cannot be told apart.

use serde::{Deserialize, Serialize};

use crate::dataset::ProbabilitySet;
use crate::error::{Error, Result};

/// Row indices sorted by entropy, highest first; equal entropies keep their
/// original order.
pub fn rank_by_uncertainty(probs: &ProbabilitySet) -> Vec<usize> {
    rank_by_scores(&probs.entropy())
}

pub(crate) fn rank_by_scores(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    // stable sort keeps index order among ties
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    order
}

/// Number of samples removed for a referred proportion: `ceil(p * N)`, with
/// products within floating-point noise of an integer snapped to it so that
/// e.g. `0.3 * 10` removes 3 rows, not 4.
pub fn removal_count(proportion: f64, total: usize) -> usize {
    let x = proportion * total as f64;
    let nearest = x.round();
    let removed = if (x - nearest).abs() <= 1e-9 * x.abs().max(1.0) {
        nearest
    } else {
        x.ceil()
    };
    (removed as usize).min(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoveragePoint {
    pub proportion: f64,
    /// Accuracy of the retained samples; 1.0 when nothing is retained.
    pub accuracy: f64,
    pub remaining_count: usize,
    /// Set when every sample was referred and `accuracy` is a convention.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiskCoverageCurve {
    pub points: Vec<CoveragePoint>,
}

impl RiskCoverageCurve {
    /// Proportions at which the curve was evaluated.
    pub fn grid(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.proportion).collect()
    }
}

/// Evenly spaced proportions `start, start + step, ..., stop` (inclusive,
/// within rounding), each rounded to 12 decimals so that grids print
/// cleanly.
pub fn proportion_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::invalid(format!(
            "proportion step must be positive, got {step}"
        )));
    }
    if !(0.0..=1.0).contains(&start) || !(0.0..=1.0).contains(&stop) || start > stop {
        return Err(Error::invalid(format!(
            "proportion range {start}:{stop} must satisfy 0 <= start <= stop <= 1"
        )));
    }
    let steps = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=steps)
        .map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

/// Default grid: 0 to 0.5 in steps of 0.05.
pub fn default_proportions() -> Vec<f64> {
    proportion_grid(0.0, 0.5, 0.05).expect("static grid")
}

fn check_proportions(proportions: &[f64]) -> Result<()> {
    if let Some(p) = proportions.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::invalid(format!("proportion {p} outside [0, 1]")));
    }
    if proportions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("proportions must be strictly increasing"));
    }
    Ok(())
}

/// Accuracy of the retained samples after referring the most uncertain
/// `ceil(p * N)` rows, for each proportion `p`.
pub fn risk_coverage(probs: &ProbabilitySet, proportions: &[f64]) -> Result<RiskCoverageCurve> {
    check_proportions(proportions)?;
    let order = rank_by_uncertainty(probs);
    let correct: Vec<bool> = probs
        .predicted()
        .iter()
        .zip(probs.labels())
        .map(|(p, y)| p == y)
        .collect();
    Ok(curve_from_ranking(&order, &correct, proportions))
}

pub(crate) fn curve_from_ranking(
    order: &[usize],
    correct: &[bool],
    proportions: &[f64],
) -> RiskCoverageCurve {
    let n = order.len();
    // suffix_hits[i] = correct rows among order[i..]
    let mut suffix_hits = vec![0usize; n + 1];
    for i in (0..n).rev() {
        suffix_hits[i] = suffix_hits[i + 1] + usize::from(correct[order[i]]);
    }
    let points = proportions
        .iter()
        .map(|&p| {
            let removed = removal_count(p, n);
            let remaining = n - removed;
            let degenerate = remaining == 0;
            let accuracy = if degenerate {
                1.0
            } else {
                suffix_hits[removed] as f64 / remaining as f64
            };
            CoveragePoint {
                proportion: p,
                accuracy,
                remaining_count: remaining,
                degenerate,
            }
        })
        .collect();
    RiskCoverageCurve { points }
}
