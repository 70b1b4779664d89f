//! One entry point per subcommand. Each function validates its config,
//! runs the corresponding library experiment, writes artifacts, and
//! returns the report to be printed by `main`.

use crate::artifacts;
use crate::CliError;
use chainlab::adversarial;
use chainlab::bessel;
use chainlab::bounds;
use chainlab::finite_oracle::{Boundary, FiniteChain};
use chainlab::gaussian;
use chainlab::lattice::{Fill, LatticeWindow};
use chainlab::propagator;
use chainlab::rng;
use chainlab::stochastic::{self, Distribution, EnsembleSpec};
use chainlab::ExperimentReport;
use serde::{Deserialize, Serialize};
use std::path::Path;

fn cfg_json<T: Serialize>(cfg: &T) -> serde_json::Value {
    serde_json::to_value(cfg).expect("config serializes")
}

fn parse_distribution(name: &str) -> Result<Distribution, CliError> {
    match name {
        "rademacher" => Ok(Distribution::Rademacher),
        "uniform_pm1" => Ok(Distribution::UniformPm1),
        "gaussian" => Ok(Distribution::Gaussian),
        other => Err(CliError::Usage(format!(
            "unknown distribution {other:?}; expected rademacher, uniform_pm1, or gaussian"
        ))),
    }
}

// ---------------------------------------------------------------- bessel

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BesselConfig {
    pub n: i64,
    pub t: f64,
    pub oracle_check: bool,
}

impl Default for BesselConfig {
    fn default() -> Self {
        BesselConfig {
            n: 0,
            t: 0.0,
            oracle_check: true,
        }
    }
}

pub fn bessel(cfg: &BesselConfig) -> Result<ExperimentReport, CliError> {
    let value = bessel::bessel_j(cfg.n, cfg.t)?;
    let mut report = ExperimentReport::new("bessel", cfg_json(cfg));
    report.metric("value", value);
    if cfg.oracle_check {
        let oracle =
            bessel::bessel_j_oracle(cfg.n, cfg.t, bessel::oracle_default_panels(cfg.n, cfg.t))?;
        report.metric("oracle", oracle);
        report.assert_that(
            "oracle_agreement",
            "|value - oracle| <= 1e-11",
            (value - oracle).abs(),
            (value - oracle).abs() <= 1e-11,
        );
    }
    Ok(report)
}

// ------------------------------------------------------------- propagate

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PropagateConfig {
    pub omega1: f64,
    pub t: f64,
    pub eps: f64,
    pub q0: LatticeWindow,
    pub p0: Option<LatticeWindow>,
}

impl Default for PropagateConfig {
    fn default() -> Self {
        PropagateConfig {
            omega1: 1.0,
            t: 10.0,
            eps: propagator::EPS_DEFAULT,
            q0: LatticeWindow::delta(0),
            p0: None,
        }
    }
}

pub fn propagate(cfg: &PropagateConfig, out_dir: &Path) -> Result<ExperimentReport, CliError> {
    let p0 = cfg.p0.clone().unwrap_or_else(|| LatticeWindow::zeros(1));
    let m = propagator::light_cone_window(cfg.omega1, cfg.t, cfg.eps)?;
    let out = (cfg.q0.first() - m, cfg.q0.last() + m);
    let qt = propagator::evolve(&cfg.q0, &p0, cfg.omega1, cfg.t, cfg.eps, Some(out))?;

    let rows: Vec<Vec<f64>> = (out.0..=out.1)
        .map(|n| vec![n as f64, qt.get(n).unwrap_or(0.0)])
        .collect();
    let path = artifacts::write_csv(&out_dir.join("propagate.csv"), &["site", "q"], &rows)?;

    let mut report = ExperimentReport::new("propagate", cfg_json(cfg));
    report.metric("inf_norm", qt.inf_norm());
    report.metric("half_width", m as f64);
    let finite = qt.values.iter().all(|v| v.is_finite());
    report.assert_that(
        "finite_output",
        "all evolved values are finite",
        qt.inf_norm(),
        finite,
    );
    report.artifact_paths.push(path);
    Ok(report)
}

// ---------------------------------------------------------------- oracle

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleConfig {
    pub omega1: f64,
    pub t: f64,
    pub size: usize,
    pub dt: f64,
    pub seed: u64,
    pub tol: f64,
    pub data_half_width: i64,
    pub compare_half_width: i64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            omega1: 1.0,
            t: 20.0,
            size: 4096,
            dt: 2.5e-4,
            seed: 77,
            tol: 1e-6,
            data_half_width: 100,
            compare_half_width: 64,
        }
    }
}

pub fn oracle(cfg: &OracleConfig, out_dir: &Path) -> Result<ExperimentReport, CliError> {
    let w = cfg.data_half_width;
    let c = cfg.compare_half_width;
    if w < 1 || c < 1 {
        return Err(CliError::Usage("half widths must be >= 1".into()));
    }
    let values: Vec<f64> = (0..(2 * w + 1) as u64)
        .map(|i| rng::uniform_pm1(cfg.seed, 0, i))
        .collect();
    let q0 = LatticeWindow::new(-w, values, Fill::Zero)?;
    let p0 = LatticeWindow::zeros(1);
    let exact = propagator::evolve(&q0, &p0, cfg.omega1, cfg.t, 1e-10, Some((-c, c)))?;
    let mut chain = FiniteChain::from_window(&q0, cfg.size, cfg.omega1, Boundary::FixedZero)?;
    let stats = chain.integrate(cfg.dt, cfg.t)?;
    let approx = chain.center_window(c);

    let mut rows = Vec::new();
    let mut worst = 0.0_f64;
    for n in -c..=c {
        let e = exact.get(n).unwrap();
        let v = approx.get(n).unwrap();
        worst = worst.max((e - v).abs());
        rows.push(vec![n as f64, e, v, (e - v).abs()]);
    }
    let path = artifacts::write_csv(
        &out_dir.join("oracle.csv"),
        &["site", "propagator", "verlet", "abs_diff"],
        &rows,
    )?;

    let mut report = ExperimentReport::new("oracle", cfg_json(cfg));
    report.metric("max_abs_diff", worst);
    report.metric("energy_drift", stats.energy_drift);
    report.metric("steps", stats.steps as f64);
    report.assert_that(
        "oracle_agreement",
        format!("max |propagator - verlet| <= {:.3e}", cfg.tol),
        worst,
        worst <= cfg.tol,
    );
    report.artifact_paths.push(path);
    Ok(report)
}

// ---------------------------------------------------------------- bounds

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BoundsConfig {
    pub omega1: f64,
    pub n_samples: usize,
    pub t_grid: Vec<f64>,
    pub distribution: String,
    pub seed: u64,
    pub scan_t_grid: Vec<f64>,
    pub eps: f64,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        BoundsConfig {
            omega1: 1.0,
            n_samples: 100,
            t_grid: vec![1.0, 10.0, 100.0],
            distribution: "rademacher".into(),
            seed: 4242,
            scan_t_grid: vec![100.0, 1000.0, 10_000.0],
            eps: 1e-8,
        }
    }
}

fn parse_initial_dist(name: &str) -> Result<bounds::InitialDist, CliError> {
    match name {
        "rademacher" => Ok(bounds::InitialDist::Rademacher),
        "uniform_pm1" => Ok(bounds::InitialDist::UniformPm1),
        "mixed" => Ok(bounds::InitialDist::Mixed),
        other => Err(CliError::Usage(format!(
            "unknown distribution {other:?}; expected rademacher, uniform_pm1, or mixed"
        ))),
    }
}

pub fn bounds(cfg: &BoundsConfig, out_dir: &Path) -> Result<ExperimentReport, CliError> {
    let dist = parse_initial_dist(&cfg.distribution)?;
    let envelope =
        bounds::verify_upper_bound(cfg.n_samples, cfg.omega1, &cfg.t_grid, dist, cfg.seed)?;
    let scan = bounds::cos_norm_scan(cfg.omega1, &cfg.scan_t_grid, cfg.eps)?;

    let rows: Vec<Vec<f64>> = scan.table.iter().map(|&(t, n)| vec![t, n]).collect();
    let path = artifacts::write_csv(&out_dir.join("cos_norm.csv"), &["t", "cos_norm"], &rows)?;

    let mut report = ExperimentReport::new("bounds", cfg_json(cfg));
    for (k, v) in &envelope.metrics {
        report.metric(format!("envelope_{k}"), *v);
    }
    for (k, v) in &scan.report.metrics {
        report.metric(format!("scan_{k}"), *v);
    }
    for a in envelope.assertions.iter().chain(&scan.report.assertions) {
        report.assert_that(a.name.clone(), a.relation.clone(), a.observed, a.pass);
    }
    let slope = scan.report.metrics["slope"];
    report.assert_that(
        "slope_half",
        "log-log slope of N(t)-1 within 0.5 +/- 0.03",
        slope,
        (slope - 0.5).abs() <= 0.03,
    );
    report.artifact_paths.push(path);
    Ok(report)
}

// ----------------------------------------------------------- adversarial

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AdversarialConfig {
    pub target_time: f64,
    pub omega1: f64,
    pub nu_min: f64,
    pub nu_max: f64,
    pub eps: f64,
    pub multiscale: Option<usize>,
    pub t1: f64,
    pub safety: f64,
}

impl Default for AdversarialConfig {
    fn default() -> Self {
        AdversarialConfig {
            target_time: 10_000.0,
            omega1: 0.5,
            nu_min: adversarial::NU_MIN_DEFAULT,
            nu_max: adversarial::NU_MAX_DEFAULT,
            eps: 1e-8,
            multiscale: None,
            t1: 100.0,
            safety: 1.2,
        }
    }
}

pub fn adversarial(cfg: &AdversarialConfig, out_dir: &Path) -> Result<ExperimentReport, CliError> {
    if let Some(count) = cfg.multiscale {
        let multi = adversarial::build_multiscale(cfg.t1, count, cfg.omega1, cfg.safety)?;
        let mut rows = Vec::new();
        for (i, (plan, &t)) in multi.plans.iter().zip(&multi.times).enumerate() {
            rows.push(vec![
                (i + 1) as f64,
                t,
                plan.sign,
                plan.support_min() as f64,
                plan.support_max() as f64,
                multi.report.metrics[&format!("q0_at_T{}", i + 1)],
                multi.report.metrics[&format!("floor_T{}", i + 1)],
            ]);
        }
        let path = artifacts::write_csv(
            &out_dir.join("multiscale.csv"),
            &["bump", "T", "sign", "support_min", "support_max", "q0_at_T", "floor"],
            &rows,
        )?;
        let mut report = multi.report;
        report.config = cfg_json(cfg);
        report.artifact_paths.push(path);
        return Ok(report);
    }

    let plan = adversarial::build_support_set(cfg.target_time, cfg.omega1, cfg.nu_min, cfg.nu_max)?;
    let mut report = adversarial::measure_growth(&plan, cfg.eps)?;
    report.config = cfg_json(cfg);

    let plan_json = serde_json::json!({
        "target_time": plan.target_time,
        "omega1": plan.omega1,
        "nu_min": plan.nu_min,
        "nu_max": plan.nu_max,
        "support_min": plan.support_min(),
        "support_max": plan.support_max(),
        "support_size": plan.points.len(),
        "predicted_lower": plan.predicted_lower,
        "eps_phase": plan.eps_phase,
        "support": plan.points.iter().map(|p| p.k).collect::<Vec<_>>(),
    });
    let p1 = artifacts::write_json(&out_dir.join("adversarial_plan.json"), &plan_json)?;
    let rows: Vec<Vec<f64>> = plan
        .points
        .iter()
        .map(|p| vec![p.k as f64, p.nu, p.x, p.f])
        .collect();
    let p2 = artifacts::write_csv(
        &out_dir.join("adversarial_growth.csv"),
        &["k", "nu", "phase", "main_term"],
        &rows,
    )?;
    report.artifact_paths.push(p1);
    report.artifact_paths.push(p2);
    Ok(report)
}

// -------------------------------------------------------------- ensemble

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EnsembleConfig {
    /// covariance | normality | sup_growth
    pub mode: String,
    pub distribution: String,
    pub sigma2: f64,
    pub n_samples: usize,
    pub seed: u64,
    pub omega1: f64,
    pub t: f64,
    pub s_grid: Vec<f64>,
    pub thresholds: Vec<f64>,
    pub horizons: Vec<f64>,
    /// None: derived from the light cone of the largest evaluated time.
    pub window_half_width: Option<i64>,
}

impl Default for EnsembleConfig {
    fn default() -> Self {
        EnsembleConfig {
            mode: "covariance".into(),
            distribution: "rademacher".into(),
            sigma2: 1.0,
            n_samples: 10_000,
            seed: 7171,
            omega1: 0.5,
            t: 200.0,
            s_grid: vec![0.0, 1.0, 2.0, 5.0],
            thresholds: vec![2.0],
            horizons: vec![10.0, 100.0, 1000.0],
            window_half_width: None,
        }
    }
}

impl EnsembleConfig {
    fn spec(&self, tau_max: f64) -> Result<EnsembleSpec, CliError> {
        Ok(EnsembleSpec {
            distribution: parse_distribution(&self.distribution)?,
            sigma2: self.sigma2,
            n_samples: self.n_samples,
            seed: self.seed,
            window_half_width: self
                .window_half_width
                .unwrap_or_else(|| EnsembleSpec::required_half_width(tau_max)),
        })
    }
}

pub fn ensemble(cfg: &EnsembleConfig, out_dir: &Path) -> Result<ExperimentReport, CliError> {
    match cfg.mode.as_str() {
        "covariance" => {
            let s_max = cfg.s_grid.iter().cloned().fold(0.0, f64::max);
            let spec = cfg.spec(2.0 * cfg.omega1 * (cfg.t + s_max))?;
            let cov = stochastic::empirical_covariance(&spec, cfg.omega1, cfg.t, &cfg.s_grid)?;
            let rows: Vec<Vec<f64>> = cov
                .pairs
                .iter()
                .map(|p| {
                    vec![
                        p.t,
                        p.s,
                        p.empirical_cov,
                        p.standard_error,
                        p.exact_cov,
                        p.limit_cov,
                    ]
                })
                .collect();
            let path = artifacts::write_csv(
                &out_dir.join("covariance.csv"),
                &["t", "s", "empirical", "se", "exact", "limit"],
                &rows,
            )?;
            let mut report = ExperimentReport::new("ensemble_covariance", cfg_json(cfg));
            // finite-t stationarity bias allowance for the limit comparison
            let bias =
                spec.sigma2 / 2.0 * (4.0 * cfg.omega1 * cfg.t).max(1e-300).powf(-1.0 / 3.0);
            for p in &cov.pairs {
                report.metric(format!("empirical_s{}", p.s), p.empirical_cov);
                report.assert_that(
                    format!("exact_within_4se_s{}", p.s),
                    "|empirical - exact| <= 4 SE",
                    (p.empirical_cov - p.exact_cov).abs(),
                    (p.empirical_cov - p.exact_cov).abs() <= 4.0 * p.standard_error,
                );
                report.assert_that(
                    format!("limit_within_allowance_s{}", p.s),
                    "|empirical - limit| <= 4 SE + bias",
                    (p.empirical_cov - p.limit_cov).abs(),
                    (p.empirical_cov - p.limit_cov).abs() <= 4.0 * p.standard_error + bias,
                );
            }
            report.artifact_paths.push(path);
            Ok(report)
        }
        "normality" => {
            let spec = cfg.spec(2.0 * cfg.omega1 * cfg.t)?;
            let mut report = stochastic::normality_check(&spec, cfg.omega1, cfg.t)?;
            report.config = cfg_json(cfg);
            Ok(report)
        }
        "sup_growth" => {
            let h_max = cfg.horizons.iter().cloned().fold(0.0, f64::max);
            let spec = cfg.spec(2.0 * cfg.omega1 * h_max)?;
            let out =
                stochastic::sup_growth_mc(&spec, cfg.omega1, &cfg.thresholds, &cfg.horizons)?;
            let rows: Vec<Vec<f64>> = out
                .table
                .iter()
                .map(|r| vec![r.threshold, r.horizon, r.fraction, r.standard_error])
                .collect();
            let path = artifacts::write_csv(
                &out_dir.join("sup_growth.csv"),
                &["threshold", "horizon", "fraction", "se"],
                &rows,
            )?;
            let mut report = out.report;
            report.config = cfg_json(cfg);
            report.artifact_paths.push(path);
            Ok(report)
        }
        other => Err(CliError::Usage(format!(
            "unknown mode {other:?}; expected covariance, normality, or sup_growth"
        ))),
    }
}

// -------------------------------------------------------------- gaussian

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GaussianConfig {
    pub a: f64,
    pub delta: f64,
    pub n_points: usize,
    pub n_samples: usize,
    pub seed: u64,
    pub cov_grid: Vec<f64>,
    pub cov_samples: u64,
    pub n_trunc: i64,
}

impl Default for GaussianConfig {
    fn default() -> Self {
        GaussianConfig {
            a: 1.0,
            delta: 0.1,
            n_points: 20,
            n_samples: 5000,
            seed: 606,
            cov_grid: vec![0.0, 2.0, 5.0, 7.0],
            cov_samples: 2000,
            n_trunc: 60,
        }
    }
}

pub fn gaussian(cfg: &GaussianConfig, out_dir: &Path) -> Result<ExperimentReport, CliError> {
    let spec = gaussian::GaussianGridSpec::decorrelated(cfg.a, cfg.delta, cfg.n_points)?;
    let mut report = gaussian::sup_probability_mc(&spec, cfg.n_samples, cfg.seed)?;
    report.config = cfg_json(cfg);

    // series-sampled covariance against J0 on a small lag grid
    let samples: Vec<Vec<f64>> = (0..cfg.cov_samples)
        .map(|i| Ok(gaussian::sample_x(&cfg.cov_grid, cfg.n_trunc, cfg.seed, i)?.values))
        .collect::<Result<_, CliError>>()?;
    let base: Vec<f64> = samples.iter().map(|v| v[0]).collect();
    let mut rows = Vec::new();
    for (j, &s) in cfg.cov_grid.iter().enumerate() {
        let col: Vec<f64> = samples.iter().map(|v| v[j]).collect();
        let emp = chainlab::stats::covariance(&base, &col);
        let j0 = bessel::bessel_j(0, s - cfg.cov_grid[0])?;
        rows.push(vec![s, emp, j0]);
    }
    let p1 = artifacts::write_csv(
        &out_dir.join("gaussian_cov.csv"),
        &["s", "empirical_cov", "j0"],
        &rows,
    )?;
    let bound_rows = vec![vec![
        cfg.a,
        cfg.delta,
        cfg.n_points as f64,
        report.metrics["empirical_p"],
        report.metrics["bound"],
    ]];
    let p2 = artifacts::write_csv(
        &out_dir.join("gaussian_bound.csv"),
        &["a", "delta", "n", "empirical_p", "bound"],
        &bound_rows,
    )?;
    report.artifact_paths.push(p1);
    report.artifact_paths.push(p2);
    Ok(report)
}

// ----------------------------------------------------------------- suite

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteConfig {
    /// Overrides the artifact subdirectory name.
    pub label: Option<String>,
}

pub fn suite(cfg: &SuiteConfig, out_dir: &Path) -> Result<ExperimentReport, CliError> {
    let dir = match &cfg.label {
        Some(l) => out_dir.join(l),
        None => out_dir.to_path_buf(),
    };
    let mut report = ExperimentReport::new("suite", cfg_json(cfg));
    let mut artifact_paths = Vec::new();
    let mut record =
        |report: &mut ExperimentReport, name: &str, sub: ExperimentReport| {
            report.assert_that(
                name,
                "sub-experiment assertions all pass",
                sub.assertions.iter().filter(|a| !a.pass).count() as f64,
                sub.passed(),
            );
            artifact_paths.extend(sub.artifact_paths.iter().cloned());
        };

    // 1. Bessel spot check against the oracle over a sweep
    let mut worst = 0.0_f64;
    for &t in &[0.1, 1.0, 10.0, 100.0, 400.0] {
        let row = bessel::bessel_row(200, t)?;
        for n in 0..=200_i64 {
            let oracle = bessel::bessel_j_oracle(n, t, bessel::oracle_default_panels(n, t))?;
            worst = worst.max((row.get(n) - oracle).abs());
        }
    }
    report.metric("bessel_worst_oracle_diff", worst);
    report.assert_that(
        "bessel_oracle",
        "max |bessel - oracle| <= 1e-11",
        worst,
        worst <= 1e-11,
    );

    // 2. identity residuals
    let mut worst_identity = 0.0_f64;
    for i in 0..50_u64 {
        let t1 = 0.1 + 49.9 * rng::uniform(12, 1, i);
        let t2 = 0.1 + 49.9 * rng::uniform(12, 2, i);
        let n = ((t1 + t2) / 2.0).ceil() as i64 + 40;
        worst_identity =
            worst_identity.max(stochastic::second_moment_identity_residual(t1, t2, n)?.abs());
    }
    report.metric("identity_worst_residual", worst_identity);
    report.assert_that(
        "identity_suite",
        "max residual <= 1e-9",
        worst_identity,
        worst_identity <= 1e-9,
    );

    // 3. propagator vs Verlet
    for &omega1 in &[0.5, 1.0] {
        let sub = oracle(
            &OracleConfig {
                omega1,
                ..OracleConfig::default()
            },
            &dir.join(format!("oracle_w{}", (omega1 * 10.0) as i64)),
        )?;
        record(&mut report, &format!("oracle_omega_{omega1}"), sub);
    }

    // 4. l2 uniform bound on random finite-support data
    let mut l2_ok = true;
    for s in 0..100_u64 {
        let half = 1 + (rng::word(21, s, 0) % 20) as i64;
        let values: Vec<f64> = (0..(2 * half + 1) as u64)
            .map(|c| 2.0 * rng::uniform_pm1(21, s, c + 1))
            .collect();
        let q0 = LatticeWindow::new(-half, values, Fill::Zero)?;
        l2_ok &= propagator::l2_uniform_bound_check(&q0, 1.0, &[1.0, 5.0, 25.0, 125.0])?.passed();
    }
    report.assert_that("l2_bound", "100 random samples within the l2 bound", 0.0, l2_ok);

    // 5 & 6. envelope and cos-norm growth
    let sub = bounds(&BoundsConfig::default(), &dir)?;
    record(&mut report, "bounds", sub);

    // 7. adversarial bump and multi-scale build
    let sub = adversarial(&AdversarialConfig::default(), &dir)?;
    record(&mut report, "adversarial_bump", sub);
    let sub = adversarial(
        &AdversarialConfig {
            multiscale: Some(3),
            ..AdversarialConfig::default()
        },
        &dir,
    )?;
    record(&mut report, "adversarial_multiscale", sub);

    // 8. exact covariance at moderate and large t
    for &t in &[10.0, 200.0] {
        let sub = ensemble(
            &EnsembleConfig {
                t,
                ..EnsembleConfig::default()
            },
            &dir.join(format!("cov_t{t}")),
        )?;
        record(&mut report, &format!("covariance_t{t}"), sub);
    }

    // 9. normality at t = 500 with the t = 0 control required to fail
    let norm_cfg = EnsembleConfig {
        mode: "normality".into(),
        t: 500.0,
        ..EnsembleConfig::default()
    };
    let at_500 = ensemble(&norm_cfg, &dir)?;
    let at_0 = ensemble(
        &EnsembleConfig {
            t: 0.0,
            ..norm_cfg.clone()
        },
        &dir,
    )?;
    report.metric("normality_ks_500", at_500.metrics["ks_distance"]);
    report.metric("normality_ks_0", at_0.metrics["ks_distance"]);
    report.assert_that(
        "normality",
        "t=500 passes KS and the t=0 control fails it",
        at_500.metrics["ks_distance"],
        at_500.passed() && !at_0.passed(),
    );

    // 10. Gaussian sup bound
    let sub = gaussian(&GaussianConfig::default(), &dir)?;
    record(&mut report, "gaussian_sup", sub);

    // 11. sup-growth monotone evidence
    let sub = ensemble(
        &EnsembleConfig {
            mode: "sup_growth".into(),
            n_samples: 2000,
            seed: 1111,
            ..EnsembleConfig::default()
        },
        &dir,
    )?;
    record(&mut report, "sup_growth", sub);

    report.artifact_paths = artifact_paths;
    Ok(report)
}
