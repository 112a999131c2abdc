//! Post-hoc temperature scaling.
//!
//! Two calibrators are provided:
//!
//! * scalar temperature scaling, `softmax(z / T)`, with `T` fitted by
//!   minimising validation NLL;
//! * class-wise MCS temperature scaling, where the scalar `T` is perturbed
//!   per class as `T_k = T * (1 + gamma * c_k)`. `c` is the class-wise MCS
//!   divided by its largest absolute entry, and `gamma` is chosen from a
//!   fixed grid in (-1, 1) by minimising a validation calibration error.
//!   Each class-`k` logit is divided by `T_k`, so over-confident classes
//!   (positive MCS) are softened and under-confident ones sharpened when
//!   `gamma > 0`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{BinningConfig, ConfidenceSet, LogitScale, PredictionSet, ProbabilitySet};
use crate::error::{Error, Result};
use crate::metrics::{class_wise, ece, nll, wsece};

/// Quantity minimised when fitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Nll,
    Ece,
    Wsece,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Objective::Nll => "nll",
            Objective::Ece => "ece",
            Objective::Wsece => "wsece",
        }
    }

    pub fn evaluate(self, probs: &ProbabilitySet, bins: &BinningConfig) -> Result<f64> {
        match self {
            Objective::Nll => Ok(nll(probs)),
            _ => self.evaluate_top1(&probs.top1(), bins),
        }
    }

    /// Calibration objectives only need top-1 outcomes; NLL is an error here.
    fn evaluate_top1(self, top: &ConfidenceSet, bins: &BinningConfig) -> Result<f64> {
        match self {
            Objective::Nll => Err(Error::invalid("nll needs full probabilities")),
            Objective::Ece => ece(top, bins),
            Objective::Wsece => {
                let cw = class_wise(top, bins);
                wsece(&cw.cwece, &cw.class_sizes)
            }
        }
    }
}

/// Which predictions the class-wise MCS driving the per-class temperatures
/// is measured on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CwmcsSource {
    /// Validation predictions after scalar temperature scaling.
    #[default]
    Calibrated,
    /// Raw (uncalibrated) validation predictions.
    Baseline,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    pub t_search_lo: f64,
    pub t_search_hi: f64,
    /// Width of the final temperature bracket.
    pub t_tolerance: f64,
    pub gamma_step: f64,
    pub gamma_lo: f64,
    pub gamma_hi: f64,
    pub gamma_objective: Objective,
    pub cwmcs_source: CwmcsSource,
    pub bins: BinningConfig,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            t_search_lo: 0.05,
            t_search_hi: 10.0,
            t_tolerance: 1e-4,
            gamma_step: 0.001,
            gamma_lo: -0.999,
            gamma_hi: 0.999,
            gamma_objective: Objective::Ece,
            cwmcs_source: CwmcsSource::Calibrated,
            bins: BinningConfig::default(),
        }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.t_search_lo) || !positive(self.t_search_hi) {
            return Err(Error::invalid("temperature search bounds must be positive"));
        }
        if self.t_search_lo >= self.t_search_hi {
            return Err(Error::invalid(format!(
                "temperature search range [{}, {}] is empty",
                self.t_search_lo, self.t_search_hi
            )));
        }
        if !positive(self.t_tolerance) {
            return Err(Error::invalid("temperature tolerance must be positive"));
        }
        if !positive(self.gamma_step) {
            return Err(Error::invalid("gamma step must be positive"));
        }
        let half = self.gamma_step / 2.0;
        let inside = self.gamma_lo.is_finite()
            && self.gamma_hi.is_finite()
            && self.gamma_lo >= -1.0 + half
            && self.gamma_hi <= 1.0 - half;
        if !inside {
            return Err(Error::invalid(format!(
                "gamma range [{}, {}] must stay half a step inside (-1, 1)",
                self.gamma_lo, self.gamma_hi
            )));
        }
        if self.gamma_lo > self.gamma_hi {
            return Err(Error::invalid("gamma_lo exceeds gamma_hi"));
        }
        if self.gamma_objective == Objective::Nll {
            return Err(Error::invalid("gamma objective must be ece or wsece"));
        }
        Ok(())
    }

    /// Gamma values searched by [`fit_cwmcs`]: every integer multiple of
    /// `gamma_step` inside `[gamma_lo, gamma_hi]`, ascending. Anchoring the
    /// grid at multiples of the step makes 0 an exact grid point.
    pub fn gamma_grid(&self) -> Vec<f64> {
        let slack = 1e-9;
        let first = (self.gamma_lo / self.gamma_step - slack).ceil() as i64;
        let last = (self.gamma_hi / self.gamma_step + slack).floor() as i64;
        (first..=last).map(|i| i as f64 * self.gamma_step).collect()
    }
}

/// Fitted temperature: a single scalar or one value per class.
#[derive(Debug, Clone, PartialEq)]
pub enum Temperature {
    Scalar(f64),
    PerClass {
        /// Scalar temperature the vector was derived from.
        base: f64,
        gamma: f64,
        values: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "wire::ModelFile", into = "wire::ModelFile")]
pub struct TemperatureModel {
    pub temperature: Temperature,
    pub objective: Objective,
    pub fit_objective_value: f64,
    pub bins: BinningConfig,
}

impl TemperatureModel {
    pub fn scalar(t: f64, objective: Objective, value: f64, bins: BinningConfig) -> Result<Self> {
        check_temperature(t)?;
        Ok(Self {
            temperature: Temperature::Scalar(t),
            objective,
            fit_objective_value: value,
            bins,
        })
    }

    pub fn per_class(
        base: f64,
        gamma: f64,
        values: Vec<f64>,
        objective: Objective,
        value: f64,
        bins: BinningConfig,
    ) -> Result<Self> {
        check_temperature(base)?;
        check_gamma(gamma)?;
        if values.len() < 2 {
            return Err(Error::invalid(
                "per-class temperature needs at least 2 classes",
            ));
        }
        for &t in &values {
            check_temperature(t)?;
        }
        Ok(Self {
            temperature: Temperature::PerClass {
                base,
                gamma,
                values,
            },
            objective,
            fit_objective_value: value,
            bins,
        })
    }

    /// Scalar temperature (the base temperature of a per-class model).
    pub fn base_temperature(&self) -> f64 {
        match self.temperature {
            Temperature::Scalar(t) => t,
            Temperature::PerClass { base, .. } => base,
        }
    }

    pub fn gamma(&self) -> Option<f64> {
        match self.temperature {
            Temperature::Scalar(_) => None,
            Temperature::PerClass { gamma, .. } => Some(gamma),
        }
    }

    /// Class count the model is bound to, if any.
    pub fn num_classes(&self) -> Option<usize> {
        match &self.temperature {
            Temperature::Scalar(_) => None,
            Temperature::PerClass { values, .. } => Some(values.len()),
        }
    }

    pub fn apply(&self, pred: &PredictionSet) -> Result<ProbabilitySet> {
        match &self.temperature {
            Temperature::Scalar(t) => apply_scalar(pred, *t),
            Temperature::PerClass { values, .. } => apply_vector(pred, values),
        }
    }
}

fn check_temperature(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "temperature must be positive, got {t}"
        )))
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "gamma must lie in (-1, 1), got {gamma}"
        )))
    }
}

/// `softmax(z / t)` row-wise. The predicted class of every row is that of
/// the raw logits.
pub fn apply_scalar(pred: &PredictionSet, t: f64) -> Result<ProbabilitySet> {
    check_temperature(t)?;
    Ok(pred.softmax_scaled(LogitScale::Scalar(t)))
}

/// Divides the class-`k` logit of every row by `temps[k]`, then applies the
/// softmax. Unequal temperatures can change a row's predicted class.
pub fn apply_vector(pred: &PredictionSet, temps: &[f64]) -> Result<ProbabilitySet> {
    if temps.len() != pred.num_classes() {
        return Err(Error::ClassCountMismatch {
            context: "temperature vector".into(),
            expected: pred.num_classes(),
            found: temps.len(),
        });
    }
    for &t in temps {
        check_temperature(t)?;
    }
    Ok(pred.softmax_scaled(LogitScale::PerClass(temps)))
}

/// `T * (1 + gamma * c_k)` with `c = cwmcs / max|cwmcs|` (all zeros when
/// every class-wise MCS is zero).
pub fn build_cwmcs_temperature(t: f64, cwmcs: &[f64], gamma: f64) -> Result<Vec<f64>> {
    check_temperature(t)?;
    check_gamma(gamma)?;
    let scale = cwmcs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(cwmcs
        .iter()
        .map(|&v| {
            let c = if scale > 0.0 { v / scale } else { 0.0 };
            t * (1.0 + gamma * c)
        })
        .collect())
}

fn require_rows(val: &PredictionSet) -> Result<()> {
    if val.is_empty() {
        return Err(Error::invalid("validation set is empty"));
    }
    Ok(())
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Fits a scalar temperature by golden-section search on `ln T`, minimising
/// validation NLL. The search stops once the temperature bracket is narrower
/// than `t_tolerance`; `T = 1` is kept instead whenever it lies inside the
/// search range and scores strictly better.
pub fn fit_scalar(val: &PredictionSet, cfg: &FitConfig) -> Result<TemperatureModel> {
    cfg.validate()?;
    require_rows(val)?;
    let loss = |ln_t: f64| nll(&val.softmax_scaled(LogitScale::Scalar(ln_t.exp())));

    let (mut a, mut b) = (cfg.t_search_lo.ln(), cfg.t_search_hi.ln());
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (loss(c), loss(d));
    for _ in 0..500 {
        if b.exp() - a.exp() <= cfg.t_tolerance {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = loss(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = loss(d);
        }
    }
    let mut best_t = (0.5 * (a + b)).exp();
    let mut best = loss(best_t.ln());
    if (cfg.t_search_lo..=cfg.t_search_hi).contains(&1.0) {
        let at_one = loss(0.0);
        if at_one < best {
            best_t = 1.0;
            best = at_one;
        }
    }
    TemperatureModel::scalar(best_t, Objective::Nll, best, cfg.bins)
}

/// Full trace of a class-wise MCS temperature fit.
#[derive(Debug, Clone)]
pub struct CwmcsFit {
    pub model: TemperatureModel,
    /// Scalar model fitted in the first stage.
    pub scalar: TemperatureModel,
    /// Class-wise MCS that drove the per-class temperatures.
    pub cwmcs: Vec<f64>,
    pub grid: Vec<f64>,
    /// Objective value at every grid point, aligned with `grid`.
    pub objectives: Vec<f64>,
}

impl CwmcsFit {
    /// Objective at `gamma = 0`, i.e. of plain scalar temperature scaling.
    pub fn objective_at_zero(&self) -> Option<f64> {
        self.grid
            .iter()
            .position(|&g| g == 0.0)
            .map(|i| self.objectives[i])
    }
}

/// Fits scalar TS, measures the class-wise MCS, then picks `gamma` from the
/// grid by exhaustive search. Ties go to the smallest `|gamma|`, then to the
/// more negative value.
pub fn fit_cwmcs(val: &PredictionSet, cfg: &FitConfig) -> Result<TemperatureModel> {
    Ok(fit_cwmcs_traced(val, cfg)?.model)
}

pub fn fit_cwmcs_traced(val: &PredictionSet, cfg: &FitConfig) -> Result<CwmcsFit> {
    let scalar = fit_scalar(val, cfg)?;
    let t = scalar.base_temperature();
    let source = match cfg.cwmcs_source {
        CwmcsSource::Calibrated => apply_scalar(val, t)?,
        CwmcsSource::Baseline => val.softmax(),
    };
    let cwmcs = class_wise(&source.top1(), &cfg.bins).cwmcs;

    let grid = cfg.gamma_grid();
    let objectives = grid
        .par_iter()
        .map(|&gamma| {
            let temps = build_cwmcs_temperature(t, &cwmcs, gamma)?;
            let top = val.top1_scaled(LogitScale::PerClass(&temps));
            cfg.gamma_objective.evaluate_top1(&top, &cfg.bins)
        })
        .collect::<Result<Vec<f64>>>()?;

    let best =
        select_gamma(&grid, &objectives).ok_or_else(|| Error::invalid("gamma grid is empty"))?;
    let gamma = grid[best];
    let model = TemperatureModel::per_class(
        t,
        gamma,
        build_cwmcs_temperature(t, &cwmcs, gamma)?,
        cfg.gamma_objective,
        objectives[best],
        cfg.bins,
    )?;
    Ok(CwmcsFit {
        model,
        scalar,
        cwmcs,
        grid,
        objectives,
    })
}

/// Index of the lowest objective; ties prefer smaller `|gamma|`, then the
/// more negative gamma.
fn select_gamma(grid: &[f64], objectives: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for i in 0..grid.len() {
        let better = match best {
            None => true,
            Some(j) => {
                let (oi, oj) = (objectives[i], objectives[j]);
                if oi != oj {
                    oi < oj
                } else if grid[i].abs() != grid[j].abs() {
                    grid[i].abs() < grid[j].abs()
                } else {
                    grid[i] < grid[j]
                }
            }
        };
        if better {
            best = Some(i);
        }
    }
    best
}

mod wire {
    use super::*;

    #[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
    #[serde(rename_all = "snake_case")]
    pub enum Kind {
        Scalar,
        PerClass,
    }

    #[derive(Debug, Clone, Serialize, Deserialize)]
    #[serde(untagged)]
    pub enum TValue {
        One(f64),
        Many(Vec<f64>),
    }

    #[derive(Debug, Clone, Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct ModelFile {
        pub kind: Kind,
        #[serde(rename = "T")]
        pub t: TValue,
        #[serde(rename = "base_T", default, skip_serializing_if = "Option::is_none")]
        pub base_t: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub gamma: Option<f64>,
        pub objective_name: Objective,
        pub fit_objective_value: f64,
        pub bins: BinningConfig,
    }

    impl From<TemperatureModel> for ModelFile {
        fn from(m: TemperatureModel) -> Self {
            let (kind, t, base_t, gamma) = match m.temperature {
                Temperature::Scalar(t) => (Kind::Scalar, TValue::One(t), None, None),
                Temperature::PerClass {
                    base,
                    gamma,
                    values,
                } => (
                    Kind::PerClass,
                    TValue::Many(values),
                    Some(base),
                    Some(gamma),
                ),
            };
            ModelFile {
                kind,
                t,
                base_t,
                gamma,
                objective_name: m.objective,
                fit_objective_value: m.fit_objective_value,
                bins: m.bins,
            }
        }
    }

    impl TryFrom<ModelFile> for TemperatureModel {
        type Error = Error;

        fn try_from(f: ModelFile) -> Result<Self> {
            match (f.kind, f.t) {
                (Kind::Scalar, TValue::One(t)) => {
                    if f.gamma.is_some() || f.base_t.is_some() {
                        return Err(Error::invalid("scalar model carries per-class fields"));
                    }
                    TemperatureModel::scalar(t, f.objective_name, f.fit_objective_value, f.bins)
                }
                (Kind::PerClass, TValue::Many(values)) => {
                    let base = f
                        .base_t
                        .ok_or_else(|| Error::invalid("per-class model is missing base_T"))?;
                    let gamma = f
                        .gamma
                        .ok_or_else(|| Error::invalid("per-class model is missing gamma"))?;
                    TemperatureModel::per_class(
                        base,
                        gamma,
                        values,
                        f.objective_name,
                        f.fit_objective_value,
                        f.bins,
                    )
                }
                (Kind::Scalar, _) => Err(Error::invalid("scalar model needs a numeric T")),
                (Kind::PerClass, _) => Err(Error::invalid("per-class model needs an array T")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn apply_scalar_examples() {
        let pred =
            PredictionSet::from_rows(&[vec![2.0, 0.0], vec![0.3, -1.2]], vec![0, 1]).unwrap();
        let p = apply_scalar(&pred, 2.0).unwrap();
        let e = 1f64.exp();
        assert!(close(p.row(0)[0], e / (e + 1.0), 1e-15));
        assert!(close(p.row(0)[1], 1.0 / (e + 1.0), 1e-15));
        assert!(close(p.row(0)[0], 0.73106, 1e-5));

        assert_eq!(apply_scalar(&pred, 1.0).unwrap(), pred.softmax());

        let flat = apply_scalar(&pred, 1e6).unwrap();
        assert!(flat.probs().iter().all(|&p| close(p, 0.5, 1e-5)));

        assert!(apply_scalar(&pred, 0.0).is_err());
        assert!(apply_scalar(&pred, -1.0).is_err());
        assert!(apply_scalar(&pred, f64::NAN).is_err());
    }

    #[test]
    fn apply_vector_examples() {
        let pred =
            PredictionSet::from_rows(&[vec![1.0, 1.0], vec![-0.4, 2.5]], vec![0, 1]).unwrap();
        let p = apply_vector(&pred, &[1.0, 2.0]).unwrap();
        let (a, b) = (1f64.exp(), 0.5f64.exp());
        assert!(close(p.row(0)[0], a / (a + b), 1e-15));
        assert!(close(p.row(0)[0], 0.62246, 1e-5));
        assert!(close(p.row(0)[1], 0.37754, 1e-5));

        assert_eq!(apply_vector(&pred, &[1.0, 1.0]).unwrap(), pred.softmax());
        let v = apply_vector(&pred, &[1.7, 1.7]).unwrap();
        let s = apply_scalar(&pred, 1.7).unwrap();
        for (x, y) in v.probs().iter().zip(s.probs()) {
            assert!(close(*x, *y, 1e-12));
        }

        assert!(matches!(
            apply_vector(&pred, &[1.0, 1.0, 1.0]),
            Err(Error::ClassCountMismatch { .. })
        ));
        assert!(apply_vector(&pred, &[1.0, 0.0]).is_err());
    }

    #[test]
    fn build_temperature_examples() {
        assert_eq!(
            build_cwmcs_temperature(1.3, &[0.2, -0.1, 0.0], 0.0).unwrap(),
            vec![1.3; 3]
        );
        let v = build_cwmcs_temperature(2.0, &[-0.2, 0.1], 0.5).unwrap();
        assert!(close(v[0], 1.0, 1e-15));
        assert!(close(v[1], 2.5, 1e-15));
        assert_eq!(
            build_cwmcs_temperature(0.8, &[0.0, 0.0], 0.9).unwrap(),
            vec![0.8, 0.8]
        );
        let z = build_cwmcs_temperature(2.0, &[0.3, 0.0, -0.1], 0.7).unwrap();
        assert_eq!(z[1], 2.0);
        assert!(build_cwmcs_temperature(1.0, &[0.1], 1.0).is_err());
        assert!(build_cwmcs_temperature(1.0, &[0.1], -1.0).is_err());
    }

    #[test]
    fn gamma_grid_contains_exact_zero() {
        let grid = FitConfig::default().gamma_grid();
        assert_eq!(grid.len(), 1999);
        assert_eq!(grid[999], 0.0);
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
        assert!(grid.iter().all(|g| g.abs() < 1.0));
        assert!(close(grid[0], -0.999, 1e-12));
        assert!(close(grid[1998], 0.999, 1e-12));
    }

    #[test]
    fn fit_config_validation() {
        assert!(FitConfig::default().validate().is_ok());
        let bad = [
            FitConfig {
                t_search_lo: 2.0,
                t_search_hi: 1.0,
                ..Default::default()
            },
            FitConfig {
                t_search_lo: 0.0,
                ..Default::default()
            },
            FitConfig {
                t_tolerance: 0.0,
                ..Default::default()
            },
            FitConfig {
                gamma_step: 0.0,
                ..Default::default()
            },
            FitConfig {
                gamma_lo: -1.0,
                ..Default::default()
            },
            FitConfig {
                gamma_hi: 0.9996,
                ..Default::default()
            },
            FitConfig {
                gamma_objective: Objective::Nll,
                ..Default::default()
            },
        ];
        for cfg in bad {
            assert!(cfg.validate().is_err(), "{cfg:?}");
        }
    }

    #[test]
    fn fused_top1_matches_full_softmax() {
        let pred = PredictionSet::from_rows(
            &[
                vec![1.0, -2.0, 0.5],
                vec![3.0, 3.0, -1.0],
                vec![-0.2, 0.1, 0.0],
            ],
            vec![0, 1, 2],
        )
        .unwrap();
        let temps = [0.7, 1.9, 1.1];
        for scale in [
            LogitScale::Identity,
            LogitScale::Scalar(1.7),
            LogitScale::PerClass(&temps),
        ] {
            assert_eq!(pred.top1_scaled(scale), pred.softmax_scaled(scale).top1());
        }
    }

    #[test]
    fn gamma_tie_breaking() {
        let grid = [-0.2, -0.1, 0.0, 0.1, 0.2];
        assert_eq!(select_gamma(&grid, &[1.0, 0.5, 0.7, 0.5, 1.0]), Some(1));
        assert_eq!(select_gamma(&grid, &[0.3, 0.3, 0.3, 0.3, 0.3]), Some(2));
        assert_eq!(select_gamma(&grid, &[0.1, 0.2, 0.3, 0.2, 0.1]), Some(0));
        assert_eq!(select_gamma(&[], &[]), None);
    }

    #[test]
    fn fit_rejects_empty_validation_set() {
        let empty = PredictionSet::new(vec![], vec![], 3).unwrap();
        assert!(fit_scalar(&empty, &FitConfig::default()).is_err());
        assert!(fit_cwmcs(&empty, &FitConfig::default()).is_err());
    }

    #[test]
    fn model_json_shape() {
        let bins = BinningConfig::default();
        let scalar = TemperatureModel::scalar(1.5, Objective::Nll, 0.4, bins).unwrap();
        let json = serde_json::to_string(&scalar).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"scalar","T":1.5,"objective_name":"nll","fit_objective_value":0.4,"bins":15}"#
        );
        let pc = TemperatureModel::per_class(2.0, 0.5, vec![1.0, 2.5], Objective::Ece, 0.01, bins)
            .unwrap();
        let json = serde_json::to_string(&pc).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"per_class","T":[1.0,2.5],"base_T":2.0,"gamma":0.5,"objective_name":"ece","fit_objective_value":0.01,"bins":15}"#
        );
        let back: TemperatureModel = serde_json::from_str(&json).unwrap();
        assert_eq!(back, pc);
    }

    #[test]
    fn model_json_rejects_inconsistent_files() {
        for bad in [
            r#"{"kind":"scalar","T":[1.0,2.0],"objective_name":"nll","fit_objective_value":0,"bins":15}"#,
            r#"{"kind":"scalar","T":-1.0,"objective_name":"nll","fit_objective_value":0,"bins":15}"#,
            r#"{"kind":"per_class","T":[1.0,2.0],"gamma":0.1,"objective_name":"ece","fit_objective_value":0,"bins":15}"#,
            r#"{"kind":"per_class","T":[1.0,2.0],"base_T":1.0,"gamma":1.5,"objective_name":"ece","fit_objective_value":0,"bins":15}"#,
            r#"{"kind":"scalar","T":1.0,"objective_name":"nll","fit_objective_value":0,"bins":0}"#,
        ] {
            assert!(
                serde_json::from_str::<TemperatureModel>(bad).is_err(),
                "{bad}"
            );
        }
    }
}
