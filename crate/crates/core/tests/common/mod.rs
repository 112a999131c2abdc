//! Independent reference implementations used by the integration and
//! acceptance tests. Nothing here calls into the library's binning or
//! metric code.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A raw top-1 instance: confidence, correctness and label per row.
#[derive(Debug, Clone)]
pub struct Instance {
    pub confidence: Vec<f64>,
    pub correct: Vec<bool>,
    pub labels: Vec<usize>,
    pub classes: usize,
    pub bins: usize,
}

impl Instance {
    pub fn to_set(&self) -> miscal::ConfidenceSet {
        miscal::ConfidenceSet::new(
            self.confidence.clone(),
            self.correct.clone(),
            self.labels.clone(),
            self.classes,
        )
        .unwrap()
    }

    pub fn binning(&self) -> miscal::BinningConfig {
        miscal::BinningConfig::new(self.bins).unwrap()
    }
}

/// Random instance with `N <= max_n`, `K <= max_k`, `M <= max_m`. A fifth of
/// the confidences sit exactly on bin edges.
pub fn random_instance(rng: &mut ChaCha8Rng, max_n: usize, max_k: usize, max_m: usize) -> Instance {
    let n = rng.random_range(1..=max_n);
    let classes = rng.random_range(1..=max_k);
    let bins = rng.random_range(1..=max_m);
    let confidence = (0..n)
        .map(|_| {
            if rng.random_bool(0.2) {
                rng.random_range(0..=bins) as f64 / bins as f64
            } else {
                rng.random::<f64>()
            }
        })
        .collect();
    Instance {
        confidence,
        correct: (0..n).map(|_| rng.random_bool(0.6)).collect(),
        labels: (0..n).map(|_| rng.random_range(0..classes)).collect(),
        classes,
        bins,
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Explicit member lists of each bin: bin `b` (1-based) holds the rows with
/// `(b-1) < c*M <= b`, and bin 1 also holds `c == 0`.
pub fn materialize_bins(confidence: &[f64], bins: usize) -> Vec<Vec<usize>> {
    let m = bins as f64;
    (1..=bins)
        .map(|b| {
            confidence
                .iter()
                .enumerate()
                .filter(|(_, &c)| {
                    let x = c * m;
                    (x > (b - 1) as f64 && x <= b as f64) || (b == 1 && c == 0.0)
                })
                .map(|(i, _)| i)
                .collect()
        })
        .collect()
}

/// `(ece, mcs)` from explicit bin membership, restricted to `rows`.
pub fn naive_ece_mcs(inst: &Instance, rows: &[usize]) -> (f64, f64) {
    if rows.is_empty() {
        return (0.0, 0.0);
    }
    let conf: Vec<f64> = rows.iter().map(|&i| inst.confidence[i]).collect();
    let n = rows.len() as f64;
    let mut ece = 0.0;
    let mut mcs = 0.0;
    for members in materialize_bins(&conf, inst.bins) {
        if members.is_empty() {
            continue;
        }
        let size = members.len() as f64;
        let mean_conf = members.iter().map(|&j| conf[j]).sum::<f64>() / size;
        let mean_acc = members.iter().filter(|&&j| inst.correct[rows[j]]).count() as f64 / size;
        ece += size / n * (mean_conf - mean_acc).abs();
        mcs += size / n * (mean_conf - mean_acc);
    }
    (ece, mcs)
}

#[derive(Debug, Clone)]
pub struct NaiveMetrics {
    pub ece: f64,
    pub mcs: f64,
    pub cwece: Vec<f64>,
    pub cwmcs: Vec<f64>,
    pub sizes: Vec<usize>,
    pub wsece: f64,
    pub wsmcs: f64,
    pub uc_mean: f64,
    pub oc_mean: f64,
}

pub fn naive_metrics(inst: &Instance) -> NaiveMetrics {
    let all: Vec<usize> = (0..inst.confidence.len()).collect();
    let (ece, mcs) = naive_ece_mcs(inst, &all);
    let mut cwece = Vec::new();
    let mut cwmcs = Vec::new();
    let mut sizes = Vec::new();
    for k in 0..inst.classes {
        let rows: Vec<usize> = all
            .iter()
            .copied()
            .filter(|&i| inst.labels[i] == k)
            .collect();
        let (e, s) = naive_ece_mcs(inst, &rows);
        cwece.push(e);
        cwmcs.push(s);
        sizes.push(rows.len());
    }
    let n = all.len() as f64;
    let kf = inst.classes as f64;
    let wsece = (0..inst.classes)
        .map(|k| sizes[k] as f64 / n * cwece[k])
        .sum();

    let plus: Vec<usize> = (0..inst.classes).filter(|&k| cwmcs[k] > 0.0).collect();
    let minus: Vec<usize> = (0..inst.classes).filter(|&k| cwmcs[k] < 0.0).collect();
    let group = |g: &[usize]| {
        g.iter()
            .map(|&k| sizes[k] as f64 / n * cwmcs[k])
            .sum::<f64>()
    };
    let wsmcs = plus.len() as f64 / kf * group(&plus) + minus.len() as f64 / kf * group(&minus);
    let mean = |g: &[usize]| {
        if g.is_empty() {
            0.0
        } else {
            g.iter().map(|&k| cwmcs[k]).sum::<f64>() / g.len() as f64
        }
    };
    NaiveMetrics {
        ece,
        mcs,
        uc_mean: mean(&minus),
        oc_mean: mean(&plus),
        cwece,
        cwmcs,
        sizes,
        wsece,
        wsmcs,
    }
}

/// Accuracy of the retained rows after referring `removed` rows, found by
/// enumerating every subset of that size and keeping the one whose members
/// all outrank the rest (higher entropy, or equal entropy and lower index).
/// Returns `None` when everything is removed.
pub fn brute_force_remaining_accuracy(
    entropy: &[f64],
    correct: &[bool],
    removed: usize,
) -> Option<f64> {
    let n = entropy.len();
    assert!(n <= 16, "enumeration is exponential");
    let outranks =
        |i: usize, j: usize| entropy[i] > entropy[j] || (entropy[i] == entropy[j] && i < j);
    let mut found = None;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != removed {
            continue;
        }
        let inside = |i: usize| mask & (1 << i) != 0;
        let valid = (0..n)
            .filter(|&i| inside(i))
            .all(|i| (0..n).filter(|&j| !inside(j)).all(|j| outranks(i, j)));
        if valid {
            assert!(found.is_none(), "removal set must be unique");
            found = Some(mask);
        }
    }
    let mask = found.expect("a valid removal set exists");
    let kept: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) == 0).collect();
    if kept.is_empty() {
        return None;
    }
    Some(kept.iter().filter(|&&i| correct[i]).count() as f64 / kept.len() as f64)
}

/// Logit rows whose softmax has the given top-1 confidences (K = 3):
/// the predicted class gets `ln c` and the other two share `1 - c` equally.
pub fn logits_with_confidence(confidence: &[f64], predicted: &[usize]) -> Vec<Vec<f64>> {
    confidence
        .iter()
        .zip(predicted)
        .map(|(&c, &p)| {
            let rest = ((1.0 - c) / 2.0).ln();
            let mut row = vec![rest; 3];
            row[p] = c.ln();
            row
        })
        .collect()
}
