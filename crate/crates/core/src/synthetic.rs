//! Seeded generators of synthetic prediction batches with a known
//! calibration status.
//!
//! The calibrated generator picks a dominant class uniformly at random,
//! draws latent logits `z ~ N(0, spread^2)` per class, adds `margin` to the
//! dominant class, and then samples the label from `softmax(z)`, so its
//! softmax confidences are calibrated by construction. Miscalibrated batches report
//! rescaled logits `s_k * z_k` while keeping labels drawn from the latent
//! distribution: `s_k > 1` makes class `k` over-confident and `s_k < 1`
//! under-confident, and dividing each class logit by `s_k` recovers the
//! calibrated batch exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::dataset::PredictionSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticConfig {
    pub samples: usize,
    pub classes: usize,
    /// Standard deviation of the latent logits.
    pub spread: f64,
    /// Offset added to the latent logit of each row's dominant class.
    pub margin: f64,
    pub seed: u64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        Self {
            samples: 2000,
            classes: 10,
            spread: 1.0,
            margin: 3.0,
            seed: 0,
        }
    }
}

/// Draws a batch whose reported class-`k` logits are the latent logits
/// multiplied by `scales[k]`.
pub fn scaled_by_class(cfg: &SyntheticConfig, scales: &[f64]) -> Result<PredictionSet> {
    if scales.len() != cfg.classes {
        return Err(Error::ClassCountMismatch {
            context: "class scales".into(),
            expected: cfg.classes,
            found: scales.len(),
        });
    }
    if !(cfg.spread.is_finite() && cfg.spread > 0.0) || !cfg.margin.is_finite() {
        return Err(Error::invalid("spread must be positive and margin finite"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let normal = Normal::new(0.0, cfg.spread).map_err(|e| Error::invalid(e.to_string()))?;
    let k = cfg.classes;
    let mut logits = Vec::with_capacity(cfg.samples * k);
    let mut labels = Vec::with_capacity(cfg.samples);
    let mut latent = vec![0.0; k];
    let mut weights = vec![0.0; k];
    for _ in 0..cfg.samples {
        for z in latent.iter_mut() {
            *z = normal.sample(&mut rng);
        }
        latent[rng.random_range(0..k)] += cfg.margin;
        let max = latent.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut total = 0.0;
        for (w, &z) in weights.iter_mut().zip(&latent) {
            *w = (z - max).exp();
            total += *w;
        }
        let mut u = rng.random::<f64>() * total;
        let mut label = k - 1;
        for (j, &w) in weights.iter().enumerate() {
            if u < w {
                label = j;
                break;
            }
            u -= w;
        }
        labels.push(label);
        logits.extend(latent.iter().zip(scales).map(|(z, s)| z * s));
    }
    PredictionSet::new(logits, labels, k)
}

/// Calibrated batch: labels are drawn from the softmax of the logits.
pub fn calibrated(cfg: &SyntheticConfig) -> Result<PredictionSet> {
    scaled_by_class(cfg, &vec![1.0; cfg.classes])
}

/// Every logit of a calibrated batch multiplied by `factor` (> 1 gives an
/// over-confident batch, < 1 an under-confident one).
pub fn uniformly_scaled(cfg: &SyntheticConfig, factor: f64) -> Result<PredictionSet> {
    scaled_by_class(cfg, &vec![factor; cfg.classes])
}

/// Scale applied to the over-confident half of a [`heterogeneous`] batch.
pub const OVER_SCALE: f64 = 2.5;
/// Scale applied to the under-confident half of a [`heterogeneous`] batch.
pub const UNDER_SCALE: f64 = 0.5;

/// First half of the classes over-confident, second half under-confident.
pub fn heterogeneous(cfg: &SyntheticConfig) -> Result<PredictionSet> {
    let half = cfg.classes / 2;
    let scales: Vec<f64> = (0..cfg.classes)
        .map(|k| if k < half { OVER_SCALE } else { UNDER_SCALE })
        .collect();
    scaled_by_class(cfg, &scales)
}
