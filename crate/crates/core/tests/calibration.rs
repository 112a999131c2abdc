use miscal::synthetic::{self, SyntheticConfig};
use miscal::*;

fn cfg(samples: usize, classes: usize, seed: u64) -> SyntheticConfig {
    SyntheticConfig {
        samples,
        classes,
        seed,
        ..Default::default()
    }
}

#[test]
fn fixed_point_recovers_unit_temperature() {
    let fit_cfg = FitConfig::default();
    for seed in 0..3 {
        let raw = synthetic::uniformly_scaled(&cfg(2000, 6, seed), 2.5).unwrap();
        let t = fit_scalar(&raw, &fit_cfg).unwrap().base_temperature();
        let fixed = raw.scaled(1.0 / t).unwrap();
        let again = fit_scalar(&fixed, &fit_cfg).unwrap().base_temperature();
        assert!((again - 1.0).abs() <= 2e-4, "seed {seed}: T = {again}");
    }
}

#[test]
fn temperature_direction_follows_miscalibration() {
    let fit_cfg = FitConfig::default();
    let hot = synthetic::uniformly_scaled(&cfg(2000, 5, 1), 5.0).unwrap();
    let cold = synthetic::uniformly_scaled(&cfg(2000, 5, 1), 0.2).unwrap();
    let t_hot = fit_scalar(&hot, &fit_cfg).unwrap().base_temperature();
    let t_cold = fit_scalar(&cold, &fit_cfg).unwrap().base_temperature();
    assert!(t_hot > 1.0 && t_hot < 10.0, "{t_hot}");
    assert!(t_cold > 0.05 && t_cold < 1.0, "{t_cold}");
}

#[test]
fn fitted_nll_never_exceeds_identity() {
    let fit_cfg = FitConfig::default();
    for factor in [0.3, 1.0, 4.0] {
        let pred = synthetic::uniformly_scaled(&cfg(800, 4, 9), factor).unwrap();
        let model = fit_scalar(&pred, &fit_cfg).unwrap();
        assert!(model.fit_objective_value <= nll(&pred.softmax()));
        assert_eq!(model.objective, Objective::Nll);
    }
}

#[test]
fn zero_class_wise_mcs_selects_zero_gamma() {
    // Every sample is a perfectly confident correct prediction, so each
    // class-wise MCS is exactly zero and all temperatures coincide.
    let rows: Vec<Vec<f64>> = (0..40)
        .map(|i| {
            let mut r = vec![0.0; 4];
            r[i % 4] = 1000.0;
            r
        })
        .collect();
    let labels = (0..40).map(|i| i % 4).collect();
    let pred = PredictionSet::from_rows(&rows, labels).unwrap();
    let fit = fit_cwmcs_traced(&pred, &FitConfig::default()).unwrap();
    assert!(fit.cwmcs.iter().all(|&c| c == 0.0), "{:?}", fit.cwmcs);
    assert_eq!(fit.model.gamma(), Some(0.0));
    let Temperature::PerClass { values, .. } = &fit.model.temperature else {
        panic!("expected per-class model");
    };
    let t = fit.scalar.base_temperature();
    assert!(values.iter().all(|&v| v == t));
    let a = fit.model.apply(&pred).unwrap();
    let b = fit.scalar.apply(&pred).unwrap();
    for (x, y) in a.probs().iter().zip(b.probs()) {
        assert!((x - y).abs() <= 1e-12);
    }
}

#[test]
fn two_class_split_moves_temperatures_apart() {
    let base = SyntheticConfig {
        samples: 3000,
        classes: 2,
        spread: 0.5,
        margin: 4.0,
        seed: 5,
    };
    let pred = synthetic::scaled_by_class(&base, &[0.5, 2.5]).unwrap();
    let fit_cfg = FitConfig::default();
    let fit = fit_cwmcs_traced(&pred, &fit_cfg).unwrap();
    let gamma = fit.model.gamma().unwrap();
    assert_ne!(gamma, 0.0);
    let Temperature::PerClass {
        values, base: t, ..
    } = &fit.model.temperature
    else {
        panic!("expected per-class model");
    };
    assert!(values[0] < *t && *t < values[1], "{values:?} around {t}");

    // Recompute every grid objective through the unfused path and check the
    // selection against it.
    let mut best = (f64::INFINITY, 0.0f64);
    for (i, &g) in fit.grid.iter().enumerate() {
        let temps = build_cwmcs_temperature(*t, &fit.cwmcs, g).unwrap();
        let probs = apply_vector(&pred, &temps).unwrap();
        let value = ece(&probs.top1(), &fit_cfg.bins).unwrap();
        assert!((value - fit.objectives[i]).abs() <= 1e-12, "gamma {g}");
        let better = value < best.0
            || (value == best.0
                && (g.abs() < best.1.abs() || (g.abs() == best.1.abs() && g < best.1)));
        if better {
            best = (value, g);
        }
    }
    assert_eq!(best.1, gamma);
    assert_eq!(fit.objective_at_zero().unwrap(), fit.objectives[999]);
}

#[test]
fn compare_on_calibrated_data_leaves_it_alone() {
    let val = synthetic::calibrated(&cfg(4000, 5, 20)).unwrap();
    let test = synthetic::calibrated(&cfg(4000, 5, 21)).unwrap();
    let report = compare(
        &val,
        &test,
        &FitConfig::default(),
        &failure::default_proportions(),
    )
    .unwrap();
    let ts = report.method("ts").unwrap();
    let t = ts.model.as_ref().unwrap().base_temperature();
    assert!((t - 1.0).abs() < 0.1, "T = {t}");
    assert!(report.method("baseline").unwrap().metrics.ece < 0.03);
    assert!(ts.metrics.ece < 0.03);
    assert!(!ts.accuracy_changed);
}

#[test]
fn compare_on_heterogeneous_data_prefers_class_wise() {
    let base = SyntheticConfig {
        samples: 3000,
        classes: 6,
        spread: 0.5,
        margin: 4.0,
        seed: 30,
    };
    let val = synthetic::heterogeneous(&base).unwrap();
    let test = synthetic::heterogeneous(&SyntheticConfig { seed: 31, ..base }).unwrap();
    let report = compare(&val, &test, &FitConfig::default(), &[0.0, 0.1]).unwrap();
    let names: Vec<&str> = report.methods.iter().map(|m| m.name.as_str()).collect();
    assert_eq!(names, ["baseline", "ts", "cwmcs_ts"]);
    let ts = &report.method("ts").unwrap().metrics;
    let cw = &report.method("cwmcs_ts").unwrap().metrics;
    assert!(cw.ece <= ts.ece, "{} vs {}", cw.ece, ts.ece);
    assert_eq!(report.classes, 6);
    assert_eq!(report.test_samples, 3000);
}

#[test]
fn wsece_objective_is_selectable() {
    let base = SyntheticConfig {
        samples: 1500,
        classes: 4,
        spread: 0.5,
        margin: 4.0,
        seed: 2,
    };
    let pred = synthetic::heterogeneous(&base).unwrap();
    let fit_cfg = FitConfig {
        gamma_objective: Objective::Wsece,
        gamma_step: 0.01,
        gamma_lo: -0.99,
        gamma_hi: 0.99,
        ..FitConfig::default()
    };
    let fit = fit_cwmcs_traced(&pred, &fit_cfg).unwrap();
    assert_eq!(fit.grid.len(), 199);
    assert_eq!(fit.model.objective, Objective::Wsece);
    let min = fit.objectives.iter().copied().fold(f64::INFINITY, f64::min);
    assert_eq!(fit.model.fit_objective_value, min);
}

#[test]
fn nll_is_rejected_as_gamma_objective() {
    let pred = synthetic::calibrated(&cfg(100, 3, 0)).unwrap();
    let bad = FitConfig {
        gamma_objective: Objective::Nll,
        ..FitConfig::default()
    };
    assert!(fit_cwmcs(&pred, &bad).is_err());
}
