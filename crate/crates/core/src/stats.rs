//! Small statistical helpers shared by the experiment modules.

use crate::error::{Error, Result};

/// Standard normal CDF via the complementary error function,
/// Φ(x) = erfc(-x/√2) / 2. Absolute error well below 1e-12.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// Sample mean, accumulated in index order.
pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance.
pub fn variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64
}

/// Unbiased sample covariance of two equally long series.
pub fn covariance(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let mx = mean(xs);
    let my = mean(ys);
    xs.iter()
        .zip(ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / (xs.len() - 1) as f64
}

/// Ordinary least squares slope of y against x. Needs at least 3 points.
pub fn ols_slope(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 3 {
        return Err(Error::domain("ols_slope needs >= 3 paired points"));
    }
    let mx = mean(x);
    let my = mean(y);
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(u, v)| (u - mx) * (v - my)).sum();
    if sxx == 0.0 {
        return Err(Error::domain("ols_slope: degenerate abscissae"));
    }
    Ok(sxy / sxx)
}

/// Kolmogorov-Smirnov sup distance between the empirical CDF of `samples`
/// and the standard normal CDF.
pub fn ks_distance_normal(samples: &[f64]) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, x) in sorted.iter().enumerate() {
        let cdf = normal_cdf(*x);
        let hi = (i + 1) as f64 / n - cdf;
        let lo = cdf - i as f64 / n;
        d = d.max(hi).max(lo);
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_cdf_reference_values() {
        // mpmath: Phi(0)=1/2, Phi(1)=0.8413447460685429, Phi(-2)=0.022750131948179195
        assert!((normal_cdf(0.0) - 0.5).abs() < 1e-15);
        assert!((normal_cdf(1.0) - 0.8413447460685429).abs() < 1e-13);
        assert!((normal_cdf(-2.0) - 0.022750131948179195).abs() < 1e-13);
    }

    #[test]
    fn ols_exact_line() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y = [2.0, 4.0, 6.0, 8.0];
        assert!((ols_slope(&x, &y).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn ks_of_exact_normal_quantiles_is_small() {
        // Plug in the exact quantiles i/(n+1); KS distance must be ~1/n.
        let n = 1000;
        let samples: Vec<f64> = (1..=n)
            .map(|i| {
                // crude quantile via bisection on normal_cdf
                let p = i as f64 / (n + 1) as f64;
                let (mut lo, mut hi) = (-10.0, 10.0);
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    if normal_cdf(mid) < p {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            })
            .collect();
        assert!(ks_distance_normal(&samples) < 2.0 / n as f64);
    }
}
