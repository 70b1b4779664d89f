//! Growth-envelope constants and experiments: the root γ of
//! (1/γ)e^{1/γ} = e⁻¹, the √t upper envelope, and the operator-norm
//! growth scan.

use crate::error::{Error, Result};
use crate::lattice::{Fill, LatticeWindow};
use crate::propagator;
use crate::report::ExperimentReport;
use crate::rng;
use crate::stats;
use rayon::prelude::*;
use std::sync::OnceLock;

/// The unique positive root of (1/γ)e^{1/γ} = e⁻¹, with the bisection
/// residual actually achieved.
#[derive(Debug, Clone, Copy)]
pub struct GammaRoot {
    pub gamma: f64,
    pub residual: f64,
}

fn gamma_equation(g: f64) -> f64 {
    (1.0 / g) * (1.0 / g).exp() - (-1.0_f64).exp()
}

/// Bisection on [1, 10]; deterministic, residual ≤ 1e-12. The value is
/// computed once and cached; every module referencing γ goes through here.
pub fn solve_gamma() -> GammaRoot {
    static ROOT: OnceLock<GammaRoot> = OnceLock::new();
    *ROOT.get_or_init(|| {
        let (mut lo, mut hi) = (1.0_f64, 10.0_f64);
        // h(1) > 0 > h(10); checked once so a broken bracket cannot pass silently
        assert!(gamma_equation(lo) > 0.0 && gamma_equation(hi) < 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if gamma_equation(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let gamma = 0.5 * (lo + hi);
        GammaRoot {
            gamma,
            residual: gamma_equation(gamma),
        }
    })
}

/// Convenience accessor for the cached root.
pub fn gamma() -> f64 {
    solve_gamma().gamma
}

/// The √t envelope (sqrt(2γω₁t) + 2)·|q(0)|∞.
pub fn upper_envelope(omega1: f64, t: f64, q0_inf_norm: f64) -> Result<f64> {
    if !(omega1 > 0.0) || !(t >= 0.0) || !(q0_inf_norm >= 0.0) {
        return Err(Error::domain(
            "upper_envelope needs omega1 > 0, t >= 0, q0_inf_norm >= 0",
        ));
    }
    Ok(((2.0 * gamma() * omega1 * t).sqrt() + 2.0) * q0_inf_norm)
}

/// Distribution family for the unit-ℓ∞ envelope samples. Rademacher is
/// extremal for the unit ball and stresses the bound hardest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialDist {
    Rademacher,
    UniformPm1,
    /// Rademacher for even sample indices, uniform for odd.
    Mixed,
}

const EPS_DEFAULT: f64 = 1e-8;

/// Draws unit-ℓ∞ random initial windows wide enough for the largest grid
/// time, evolves them, and checks |q(t)|∞ against the envelope. The report
/// carries the worst observed ratio |q(t)|∞ / envelope (must be ≤ 1).
pub fn verify_upper_bound(
    n_samples: usize,
    omega1: f64,
    t_grid: &[f64],
    dist: InitialDist,
    seed: u64,
) -> Result<ExperimentReport> {
    if n_samples < 1 {
        return Err(Error::domain("n_samples must be >= 1"));
    }
    if t_grid.is_empty() || t_grid.iter().any(|t| !(*t >= 0.0)) {
        return Err(Error::domain("t_grid must be non-empty and nonnegative"));
    }
    let t_max = t_grid.iter().cloned().fold(0.0, f64::max);
    let margin = propagator::light_cone_window(omega1, t_max, EPS_DEFAULT)?;
    // evaluated sites [-margin, margin], initial data one light cone wider
    let half = 2 * margin;

    let worst = (0..n_samples as u64)
        .into_par_iter()
        .map(|sample| {
            let use_rademacher = match dist {
                InitialDist::Rademacher => true,
                InitialDist::UniformPm1 => false,
                InitialDist::Mixed => sample % 2 == 0,
            };
            let values: Vec<f64> = (0..(2 * half + 1) as u64)
                .map(|c| {
                    if use_rademacher {
                        rng::rademacher(seed, sample, c)
                    } else {
                        rng::uniform_pm1(seed, sample, c)
                    }
                })
                .collect();
            let q0 = LatticeWindow::new(-half, values, Fill::Zero).unwrap();
            let p0 = LatticeWindow::zeros(1);
            let mut local_worst = 0.0_f64;
            for &t in t_grid {
                let qt = propagator::evolve(
                    &q0,
                    &p0,
                    omega1,
                    t,
                    EPS_DEFAULT,
                    Some((-margin, margin)),
                )
                .expect("margin construction guarantees the precondition");
                let env = upper_envelope(omega1, t, q0.inf_norm()).unwrap();
                local_worst = local_worst.max(qt.inf_norm() / env);
            }
            local_worst
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(0.0_f64, f64::max);

    let mut report = ExperimentReport::new(
        "verify_upper_bound",
        serde_json::json!({
            "n_samples": n_samples,
            "omega1": omega1,
            "t_grid": t_grid,
            "distribution": format!("{dist:?}"),
            "seed": seed,
            "eps": EPS_DEFAULT,
        }),
    );
    report.metric("worst_ratio", worst);
    report.metric("gamma", gamma());
    report.assert_that("envelope_holds", "max |q(t)|inf / envelope <= 1", worst, worst <= 1.0);
    Ok(report)
}

/// Scan of the ℓ∞ operator norm N(t) = |cos(t√V)|∞ plus the log-log slope
/// of N(t) − 1 against t and the empirical envelope constants.
pub struct ScanOutcome {
    pub report: ExperimentReport,
    /// (t, N(t)) pairs.
    pub table: Vec<(f64, f64)>,
}

pub fn cos_norm_scan(omega1: f64, t_grid: &[f64], eps: f64) -> Result<ScanOutcome> {
    if t_grid.len() < 3 {
        return Err(Error::domain("cos_norm_scan needs >= 3 grid times"));
    }
    if t_grid.windows(2).any(|w| w[0] >= w[1]) || t_grid[0] <= 0.0 {
        return Err(Error::domain("t_grid must be positive and increasing"));
    }
    let table: Vec<(f64, f64)> = t_grid
        .par_iter()
        .map(|&t| Ok((t, propagator::cos_norm(omega1, t, eps)?)))
        .collect::<Result<_>>()?;
    let mut log_t = Vec::new();
    let mut log_excess = Vec::new();
    let mut a_hat = f64::INFINITY;
    let mut b_hat = f64::NEG_INFINITY;
    for &(t, n) in &table {
        if n <= 1.0 {
            return Err(Error::domain(format!("N({t}) = {n} <= 1, log undefined")));
        }
        log_t.push(t.ln());
        log_excess.push((n - 1.0).ln());
        let c = (n - 1.0) / t.sqrt();
        a_hat = a_hat.min(c);
        b_hat = b_hat.max(c);
    }
    let slope = stats::ols_slope(&log_t, &log_excess)?;

    let mut report = ExperimentReport::new(
        "cos_norm_scan",
        serde_json::json!({ "omega1": omega1, "t_grid": t_grid, "eps": eps }),
    );
    report.metric("slope", slope);
    report.metric("a_hat", a_hat);
    report.metric("b_hat", b_hat);
    report.assert_that("a_hat_positive", "min (N(t)-1)/sqrt(t) > 0", a_hat, a_hat > 0.0);
    report.assert_that("b_hat_positive", "max (N(t)-1)/sqrt(t) > 0", b_hat, b_hat > 0.0);
    report.assert_that("a_le_b", "a_hat <= b_hat", b_hat - a_hat, a_hat <= b_hat);
    Ok(ScanOutcome { report, table })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_pinned_value() {
        // independent bisection oracle (mpmath, 40 digits): 3.591121476668622
        let root = solve_gamma();
        assert!((root.gamma - 3.591121476668622).abs() < 1e-12);
        assert!(root.residual.abs() <= 1e-12);
        assert!(root.gamma > 1.0);
    }

    #[test]
    fn gamma_fixed_point_forms() {
        let g = gamma();
        // γ = e^{1 + 1/γ}
        assert!((g - (1.0 + 1.0 / g).exp()).abs() < 1e-10);
        // the proof's form: e^{1/γ}·(1/γ)·e = 1
        assert!(((1.0 / g).exp() * (1.0 / g) * std::f64::consts::E - 1.0).abs() < 1e-12);
    }

    #[test]
    fn envelope_values() {
        assert!((upper_envelope(2.0, 0.0, 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(upper_envelope(1.0, 7.0, 0.0).unwrap(), 0.0);
        let g = gamma();
        let expect = (200.0 * g).sqrt() + 2.0;
        assert!((upper_envelope(1.0, 100.0, 1.0).unwrap() - expect).abs() < 1e-12);
        assert!(upper_envelope(-1.0, 1.0, 1.0).is_err());
        assert!(upper_envelope(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn envelope_monotone_in_t_linear_in_norm() {
        let mut prev = 0.0;
        for i in 0..50 {
            let t = i as f64;
            let e = upper_envelope(0.7, t, 1.0).unwrap();
            assert!(e >= prev);
            prev = e;
            let e3 = upper_envelope(0.7, t, 3.0).unwrap();
            assert!((e3 - 3.0 * e).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_data_ratio_zero() {
        // n_samples = 0 rejected; a zero-norm sample cannot be drawn through
        // the public path, so check the trivial ratio via the envelope directly
        assert!(verify_upper_bound(0, 1.0, &[1.0], InitialDist::Rademacher, 1).is_err());
    }

    #[test]
    fn small_envelope_run_passes() {
        let r = verify_upper_bound(10, 1.0, &[1.0, 5.0], InitialDist::Mixed, 42).unwrap();
        assert!(r.passed());
        assert!(r.metrics["worst_ratio"] > 0.0 && r.metrics["worst_ratio"] <= 1.0);
    }

    #[test]
    fn scan_input_validation() {
        assert!(cos_norm_scan(1.0, &[0.0, 1.0, 2.0], 1e-8).is_err());
        assert!(cos_norm_scan(1.0, &[1.0, 2.0], 1e-8).is_err());
        assert!(cos_norm_scan(1.0, &[1.0, 3.0, 2.0], 1e-8).is_err());
    }
}
