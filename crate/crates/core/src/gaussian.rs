//! The limiting stationary Gaussian process X(s) with covariance J₀ and
//! the finite-dimensional supremum lower bound P{max X(sₖ) ≥ a} ≥ 1 − pᴺ.

use crate::bessel;
use crate::error::{Error, Result};
use crate::report::ExperimentReport;
use crate::rng;
use crate::stats;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Decorrelated evaluation grid for the supremum bound.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GaussianGridSpec {
    /// threshold in P{max X(sₖ) ≥ a}
    pub a: f64,
    pub delta: f64,
    pub n_points: usize,
    pub eps_prime: f64,
    pub grid_spacing: f64,
}

impl GaussianGridSpec {
    /// Canonical construction: ε′ = δ/N and the least admissible spacing
    /// ε′⁻³, which forces |J₀(sᵢ − sⱼ)| ≤ ε′ through |J₀(u)| ≤ |u|^{−1/3}.
    pub fn decorrelated(a: f64, delta: f64, n_points: usize) -> Result<Self> {
        let eps_prime = delta / n_points as f64;
        let spec = GaussianGridSpec {
            a,
            delta,
            n_points,
            eps_prime,
            grid_spacing: eps_prime.powi(-3),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 0.5) {
            return Err(Error::domain("delta must lie in (0, 1/2)"));
        }
        if self.n_points < 2 {
            return Err(Error::domain("n_points must be >= 2"));
        }
        if !(self.eps_prime > 0.0) {
            return Err(Error::domain("eps_prime must be positive"));
        }
        if self.n_points as f64 * self.eps_prime > self.delta {
            return Err(Error::domain(format!(
                "need N·eps_prime <= delta; got {} > {}",
                self.n_points as f64 * self.eps_prime,
                self.delta
            )));
        }
        if self.grid_spacing < self.eps_prime.powi(-3) {
            return Err(Error::domain(format!(
                "grid_spacing {} below the decorrelation floor eps_prime^-3 = {}",
                self.grid_spacing,
                self.eps_prime.powi(-3)
            )));
        }
        Ok(())
    }

    /// sₖ = k·spacing for k = 1..=N.
    pub fn grid(&self) -> Vec<f64> {
        (1..=self.n_points)
            .map(|k| k as f64 * self.grid_spacing)
            .collect()
    }
}

/// ξ-draw index for the series: order n = 0, +1, −1, +2, −2, … so that
/// raising the truncation extends a path instead of reshuffling it.
fn xi_index(n: i64) -> u64 {
    match n {
        0 => 0,
        _ if n > 0 => (2 * n - 1) as u64,
        _ => (-2 * n) as u64,
    }
}

/// One sample path of X over `s_grid`, plus its per-point truncation bound.
#[derive(Debug, Clone)]
pub struct XSample {
    pub values: Vec<f64>,
    /// max over the grid of the discarded series mass 1 − Σ_{|n|≤N} Jₙ(s)².
    pub truncation_bound: f64,
}

/// X(s) = Σ_{|n| ≤ n_trunc} ξₙ Jₙ(s) with ξₙ i.i.d. standard normal,
/// a deterministic function of (seed, sample_index, series index).
pub fn sample_x(s_grid: &[f64], n_trunc: i64, seed: u64, sample_index: u64) -> Result<XSample> {
    if s_grid.is_empty() || s_grid.iter().any(|s| !s.is_finite()) {
        return Err(Error::domain("s_grid must be non-empty and finite"));
    }
    let s_max = s_grid.iter().fold(0.0_f64, |m, s| m.max(s.abs()));
    let need = s_max.ceil() as i64 + 40;
    if n_trunc < need {
        return Err(Error::precondition(format!(
            "n_trunc = {n_trunc} below the series requirement {need} for max|s| = {s_max}"
        )));
    }
    let xi: Vec<f64> = (-n_trunc..=n_trunc)
        .map(|n| rng::standard_normal(seed, sample_index, xi_index(n)))
        .collect();
    let xi_at = |n: i64| xi[(n + n_trunc) as usize];

    let mut values = Vec::with_capacity(s_grid.len());
    let mut trunc = 0.0_f64;
    for &s in s_grid {
        let row = bessel::bessel_row(n_trunc, s)?;
        // J₋ₙ(s) = (−1)ⁿJₙ(s) folds the two tails onto one row
        let mut x = xi_at(0) * row.values()[0];
        let mut mass = row.values()[0] * row.values()[0];
        for n in 1..=n_trunc {
            let j = row.values()[n as usize];
            let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
            x += j * (xi_at(n) + parity * xi_at(-n));
            mass += 2.0 * j * j;
        }
        values.push(x);
        trunc = trunc.max(1.0 - mass);
    }
    Ok(XSample {
        values,
        truncation_bound: trunc,
    })
}

/// p = sqrt((1+δ)/(1−δ)) · Φ(a·sqrt(1+δ)); the per-point factor in the
/// union-style bound P{max X(sₖ) < a} ≤ pᴺ.
pub fn sup_bound_p(delta: f64, a: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&delta) {
        return Err(Error::domain(format!("delta = {delta} outside [0, 1/2)")));
    }
    if !a.is_finite() {
        return Err(Error::domain("threshold a must be finite"));
    }
    Ok(((1.0 + delta) / (1.0 - delta)).sqrt() * stats::normal_cdf(a * (1.0 + delta).sqrt()))
}

/// Lower-triangular Cholesky factor of a symmetric positive-definite
/// matrix in row-major order. Fails if a pivot is not strictly positive.
fn cholesky(matrix: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = matrix.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let cross: f64 = l[i][..j].iter().zip(&l[j][..j]).map(|(a, b)| a * b).sum();
            let sum = matrix[i][j] - cross;
            if i == j {
                if sum <= 0.0 {
                    return Err(Error::internal(format!(
                        "covariance not positive definite at pivot {i} ({sum})"
                    )));
                }
                l[i][j] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    Ok(l)
}

/// Monte Carlo estimate of P{max_k X(sₖ) ≥ a} on the decorrelated grid,
/// checked against the closed-form floor 1 − pᴺ.
///
/// The grid spacing ε′⁻³ makes direct series evaluation hopeless (it would
/// need ~ε′⁻³ Bessel orders per point), so the grid vector is drawn exactly
/// from its N×N covariance C_ij = J₀(sᵢ − sⱼ) via a Cholesky factor; the
/// two routes sample the same law.
pub fn sup_probability_mc(
    spec: &GaussianGridSpec,
    n_samples: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    spec.validate()?;
    if n_samples < 100 {
        return Err(Error::domain("n_samples must be >= 100"));
    }
    let n = spec.n_points;
    // Toeplitz lags J₀(d·spacing); also the Gershgorin premise check
    let mut lags = vec![1.0_f64; n];
    let mut max_offdiag = 0.0_f64;
    for (d, lag) in lags.iter_mut().enumerate().skip(1) {
        *lag = bessel::bessel_j(0, d as f64 * spec.grid_spacing)?;
        max_offdiag = max_offdiag.max(lag.abs());
    }
    let cov: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| lags[i.abs_diff(j)]).collect())
        .collect();
    let l = cholesky(&cov)?;

    let hits = (0..n_samples as u64)
        .into_par_iter()
        .map(|sample| {
            let z: Vec<f64> = (0..n as u64)
                .map(|k| rng::standard_normal(seed, sample, k))
                .collect();
            let max = (0..n)
                .map(|i| (0..=i).map(|k| l[i][k] * z[k]).sum::<f64>())
                .fold(f64::NEG_INFINITY, f64::max);
            (max >= spec.a) as u64
        })
        .sum::<u64>() as f64;

    let fraction = hits / n_samples as f64;
    let se = (fraction * (1.0 - fraction) / n_samples as f64).sqrt();
    let p = sup_bound_p(spec.delta, spec.a)?;
    let floor = 1.0 - p.powi(n as i32);

    let mut report = ExperimentReport::new(
        "sup_probability_mc",
        serde_json::json!({
            "spec": spec,
            "n_samples": n_samples,
            "seed": seed,
        }),
    );
    report.metric("empirical_p", fraction);
    report.metric("standard_error", se);
    report.metric("p_per_point", p);
    report.metric("bound", floor);
    report.metric("max_offdiag_cov", max_offdiag);
    report.assert_that(
        "gershgorin_premise",
        format!("max |J0(s_i - s_j)| <= {:.3e}", spec.eps_prime),
        max_offdiag,
        max_offdiag <= spec.eps_prime,
    );
    report.assert_that(
        "sup_bound",
        "empirical P{max >= a} >= 1 - p^N - 3 SE",
        fraction,
        fraction >= floor - 3.0 * se,
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_order_extends() {
        assert_eq!(xi_index(0), 0);
        assert_eq!(xi_index(1), 1);
        assert_eq!(xi_index(-1), 2);
        assert_eq!(xi_index(2), 3);
        assert_eq!(xi_index(-2), 4);
    }

    #[test]
    fn x_at_zero_is_xi0() {
        let x = sample_x(&[0.0], 64, 7, 3).unwrap();
        assert_eq!(x.values[0], rng::standard_normal(7, 3, 0));
        assert!(x.truncation_bound.abs() < 1e-12);
    }

    #[test]
    fn truncation_requirement_enforced() {
        assert!(sample_x(&[100.0], 60, 1, 0).is_err());
        assert!(sample_x(&[], 60, 1, 0).is_err());
    }

    #[test]
    fn truncation_robustness() {
        // doubling n_trunc barely moves a path with the same seed
        let grid = [0.5, 3.0, 10.0];
        let a = sample_x(&grid, 60, 11, 5).unwrap();
        let b = sample_x(&grid, 120, 11, 5).unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((x - y).abs() <= 1e-6, "{x} vs {y}");
        }
        assert!(b.truncation_bound <= a.truncation_bound + 1e-15);
    }

    #[test]
    fn unit_variance_and_stationary_covariance() {
        let grid = [0.0, 2.0, 5.0, 7.0];
        let n = 10_000;
        let samples: Vec<XSample> = (0..n)
            .map(|i| sample_x(&grid, 60, 99, i).unwrap())
            .collect();
        for (j, &s) in grid.iter().enumerate() {
            let col: Vec<f64> = samples.iter().map(|x| x.values[j]).collect();
            let var = stats::variance(&col);
            assert!((var - 1.0).abs() <= 4.0 / (n as f64 / 2.0).sqrt(), "s={s} var={var}");
        }
        // cov(X(7), X(5)) ≈ cov(X(2), X(0)) ≈ J₀(2)
        let c02 = {
            let a: Vec<f64> = samples.iter().map(|x| x.values[0]).collect();
            let b: Vec<f64> = samples.iter().map(|x| x.values[1]).collect();
            stats::covariance(&a, &b)
        };
        let c57 = {
            let a: Vec<f64> = samples.iter().map(|x| x.values[2]).collect();
            let b: Vec<f64> = samples.iter().map(|x| x.values[3]).collect();
            stats::covariance(&a, &b)
        };
        let j2 = bessel::bessel_j(0, 2.0).unwrap();
        let se = 4.0 / (n as f64).sqrt();
        assert!((c02 - j2).abs() <= se, "{c02} vs {j2}");
        assert!((c57 - j2).abs() <= se, "{c57} vs {j2}");
        assert!((c02 - c57).abs() <= 2.0 * se);
    }

    #[test]
    fn p_closed_form_values() {
        // δ = 0 collapses to Φ(a)
        assert!((sup_bound_p(0.0, 1.0).unwrap() - stats::normal_cdf(1.0)).abs() < 1e-15);
        // mpmath, 30 digits: sqrt(1.1/0.9)·Φ(√1.1)
        assert!((sup_bound_p(0.1, 1.0).unwrap() - 0.9428798873686087).abs() < 1e-12);
        assert!(sup_bound_p(0.5, 1.0).is_err());
        assert!(sup_bound_p(-0.1, 1.0).is_err());
    }

    #[test]
    fn p_monotone_in_delta_and_a() {
        let mut prev = 0.0;
        for i in 0..=40 {
            let p = sup_bound_p(i as f64 * 0.01, 1.0).unwrap();
            assert!(p > prev);
            prev = p;
        }
        prev = 0.0;
        for i in -20..=20 {
            let p = sup_bound_p(0.1, i as f64 * 0.1).unwrap();
            assert!(p > prev);
            prev = p;
        }
    }

    #[test]
    fn bound_monotone_in_n() {
        // p < 1 here, so 1 − pᴺ increases with N
        let p = sup_bound_p(0.1, 1.0).unwrap();
        assert!(p < 1.0);
        let mut prev = f64::NEG_INFINITY;
        for n in 2..40 {
            let b = 1.0 - p.powi(n);
            assert!(b > prev);
            prev = b;
        }
    }

    #[test]
    fn spec_validation() {
        assert!(GaussianGridSpec::decorrelated(1.0, 0.1, 20).is_ok());
        assert!(GaussianGridSpec::decorrelated(1.0, 0.6, 20).is_err());
        assert!(GaussianGridSpec::decorrelated(1.0, 0.1, 1).is_err());
        let mut s = GaussianGridSpec::decorrelated(1.0, 0.1, 20).unwrap();
        s.grid_spacing *= 0.5;
        assert!(s.validate().is_err());
        s = GaussianGridSpec::decorrelated(1.0, 0.1, 20).unwrap();
        s.eps_prime *= 10.0;
        assert!(s.validate().is_err());
    }

    #[test]
    fn cholesky_identity_and_reconstruction() {
        let id = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let l = cholesky(&id).unwrap();
        assert_eq!(l, id);
        let m = vec![vec![4.0, 2.0], vec![2.0, 3.0]];
        let l = cholesky(&m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let r: f64 = (0..2).map(|k| l[i][k] * l[j][k]).sum();
                assert!((r - m[i][j]).abs() < 1e-14);
            }
        }
        assert!(cholesky(&[vec![1.0, 2.0], vec![2.0, 1.0]]).is_err());
    }

    #[test]
    fn sup_probability_cheap_grid() {
        // small spacing variant: δ = 0.25, N = 2, ε′ = 0.125, spacing 512
        let spec = GaussianGridSpec::decorrelated(0.5, 0.25, 2).unwrap();
        assert_eq!(spec.grid_spacing, 512.0);
        let r = sup_probability_mc(&spec, 2000, 31).unwrap();
        assert!(r.passed(), "{:?}", r.assertions);
        assert!(r.metrics["max_offdiag_cov"] <= spec.eps_prime);
    }

    #[test]
    fn vacuous_bound_regime() {
        // huge threshold: p → sqrt((1+δ)/(1−δ)) > 1, floor < 0, trivially met
        let mut spec = GaussianGridSpec::decorrelated(8.0, 0.25, 2).unwrap();
        spec.a = 8.0;
        let r = sup_probability_mc(&spec, 200, 5).unwrap();
        assert!(r.metrics["bound"] < 0.0);
        assert!(r.passed());
    }
}
