//! Constructive √t lower bound: stationary-phase main terms, the index set
//! where every term is positive, single-bump initial conditions achieving
//! q₀(T) ≳ c√T, and the multi-scale concatenation that makes q₀ oscillate
//! between ±c√t along an unbounded time sequence.
//!
//! Conventions. All phase analysis happens in the scaled time t = 2ω₁T.
//! Support indices satisfy ν = 2k/t ∈ [a, b] ⊂ (0, 1/2), i.e.
//! k ∈ [a·t/2, b·t/2]; the defaults a = 0.2, b = 0.4 keep ν where
//! g'(ν) = −arccos(ν) is bounded away from both 0 and −π.

use crate::bessel;
use crate::error::{Error, Result};
use crate::lattice::{Fill, LatticeWindow};
use crate::report::ExperimentReport;

/// Default ν-window.
pub const NU_MIN_DEFAULT: f64 = 0.2;
pub const NU_MAX_DEFAULT: f64 = 0.4;

/// Below ~50/ω₁ the 1/t corrections make the phase selection unreliable.
pub fn t_min(omega1: f64) -> f64 {
    50.0 / omega1
}

/// g(μ) = sqrt(1 − μ²) − μ·arccos(μ); the scaled stationary-phase value.
pub fn g_fn(mu: f64) -> Result<f64> {
    if !(mu.abs() <= 1.0) {
        return Err(Error::domain(format!("g defined on [-1, 1], got {mu}")));
    }
    Ok((1.0 - mu * mu).sqrt() - mu * mu.acos())
}

/// g'(ν) = −arccos(ν).
pub fn g_prime(nu: f64) -> Result<f64> {
    if !(nu.abs() <= 1.0) {
        return Err(Error::domain(format!("g' defined on [-1, 1], got {nu}")));
    }
    Ok(-nu.acos())
}

/// Main term of the J₂ₖ(t) asymptotics:
/// fₖ(t) = sqrt(2 / (π t sqrt(1 − 4μ²)))·cos(t g(2μ) − π/4), μ = k/t.
pub fn f_main_term(k: i64, t: f64) -> Result<f64> {
    let mu = k as f64 / t;
    let nu = 2.0 * mu;
    if !(nu > 0.0 && nu <= 1.0 - 1e-6) {
        return Err(Error::domain(format!(
            "2k/t = {nu} must lie in (0, 1 - 1e-6]"
        )));
    }
    let amp = (2.0 / (std::f64::consts::PI * t * (1.0 - nu * nu).sqrt())).sqrt();
    Ok(amp * (t * g_fn(nu)? - std::f64::consts::FRAC_PI_4).cos())
}

/// One admissible index with its phase data.
#[derive(Debug, Clone, Copy)]
pub struct PhasePoint {
    pub k: i64,
    /// ν = 2k/t
    pub nu: f64,
    /// phase xₖ(t) = t·g(2k/t)
    pub x: f64,
    /// main term fₖ(t)
    pub f: f64,
}

/// Single-bump plan for a target chain time T.
#[derive(Debug, Clone)]
pub struct AdversarialPlan {
    pub target_time: f64,
    pub omega1: f64,
    /// ν-window bounds.
    pub nu_min: f64,
    pub nu_max: f64,
    /// ±1; multi-scale builds flip alternate bumps.
    pub sign: f64,
    /// selected indices with phases, sorted by k.
    pub points: Vec<PhasePoint>,
    /// ±indicator of the selected set.
    pub q0: LatticeWindow,
    /// main-term prediction Σ_{k∈I} fₖ(t).
    pub predicted_lower: f64,
    /// derived phase-decrement scale: 0.9·min |2g'(ν)| over the window.
    pub eps_phase: f64,
}

impl AdversarialPlan {
    /// scaled time t = 2ω₁T
    pub fn scaled_time(&self) -> f64 {
        2.0 * self.omega1 * self.target_time
    }

    pub fn support_min(&self) -> i64 {
        self.points.first().map(|p| p.k).unwrap_or(0)
    }

    pub fn support_max(&self) -> i64 {
        self.points.last().map(|p| p.k).unwrap_or(0)
    }
}

/// Enumerates k with ν = 2k/t ∈ [a, b] and keeps those whose phase lands in
/// (0, π/2) mod 2π, so cos(xₖ − π/4) ≥ cos(π/4) > 0 for every kept term.
pub fn build_support_set(
    target_time: f64,
    omega1: f64,
    nu_min: f64,
    nu_max: f64,
) -> Result<AdversarialPlan> {
    if !(omega1 > 0.0) {
        return Err(Error::domain("omega1 must be positive"));
    }
    if !(0.0 < nu_min && nu_min < nu_max && nu_max < 0.5) {
        return Err(Error::domain(format!(
            "need 0 < a < b < 1/2 in the nu = 2k/t convention, got ({nu_min}, {nu_max})"
        )));
    }
    if !(target_time >= t_min(omega1)) {
        return Err(Error::domain(format!(
            "T = {target_time} below T_min = {}",
            t_min(omega1)
        )));
    }
    let t = 2.0 * omega1 * target_time;
    let k_lo = (nu_min * t / 2.0).ceil() as i64;
    let k_hi = (nu_max * t / 2.0).floor() as i64;
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut points = Vec::new();
    let mut predicted = 0.0;
    for k in k_lo..=k_hi {
        let nu = 2.0 * k as f64 / t;
        let x = t * g_fn(nu)?;
        let xm = x.rem_euclid(two_pi);
        if xm > 0.0 && xm < std::f64::consts::FRAC_PI_2 {
            let f = f_main_term(k, t)?;
            predicted += f;
            points.push(PhasePoint { k, nu, x, f });
        }
    }
    if points.is_empty() {
        return Err(Error::construction(format!(
            "empty index set for T = {target_time}: target time too small for the window"
        )));
    }
    let offset = points[0].k;
    let len = (points.last().unwrap().k - offset + 1) as usize;
    let mut values = vec![0.0; len];
    for p in &points {
        values[(p.k - offset) as usize] = 1.0;
    }
    let eps_phase = 0.9
        * 2.0
        * g_prime(nu_max)?
            .abs()
            .min(g_prime(nu_min)?.abs());
    Ok(AdversarialPlan {
        target_time,
        omega1,
        nu_min,
        nu_max,
        sign: 1.0,
        points,
        q0: LatticeWindow::new(offset, values, Fill::Zero)?,
        predicted_lower: predicted,
        eps_phase,
    })
}

/// Evaluates q₀(T) = Σ_{k∈I} J₂ₖ(2ω₁T) exactly (no asymptotics) and
/// compares against √T growth and the main-term prediction.
pub fn measure_growth(plan: &AdversarialPlan, eps: f64) -> Result<ExperimentReport> {
    if plan.points.is_empty() {
        return Err(Error::construction("plan has an empty index set"));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::domain("eps must lie in (0, 1)"));
    }
    let t = plan.scaled_time();
    let row = bessel::bessel_row(2 * plan.support_max(), t)?;
    let q0_t: f64 = plan.sign
        * plan
            .points
            .iter()
            .map(|p| row.values()[2 * p.k as usize])
            .sum::<f64>();
    let ratio_sqrt = q0_t / plan.target_time.sqrt();
    let ratio_pred = q0_t / (plan.sign * plan.predicted_lower);

    let mut report = ExperimentReport::new(
        "adversarial_growth",
        serde_json::json!({
            "target_time": plan.target_time,
            "omega1": plan.omega1,
            "nu_min": plan.nu_min,
            "nu_max": plan.nu_max,
            "support_size": plan.points.len(),
            "eps": eps,
        }),
    );
    report.metric("q0_at_T", q0_t);
    report.metric("ratio_sqrt_T", ratio_sqrt);
    report.metric("ratio_main_term", ratio_pred);
    report.metric("support_size", plan.points.len() as f64);
    report.metric("support_min", plan.support_min() as f64);
    report.metric("support_max", plan.support_max() as f64);
    let tol = 5.0 / plan.target_time;
    report.assert_that(
        "growth_positive",
        "sign·q0(T) > 0",
        plan.sign * q0_t,
        plan.sign * q0_t > 0.0,
    );
    report.assert_that(
        "main_term_ratio",
        format!("|q0(T)/prediction - 1| <= {tol:.3e}"),
        ratio_pred,
        (ratio_pred - 1.0).abs() <= tol,
    );
    Ok(report)
}

/// Multi-scale build: bumps at T₁ < T₂ < … with disjoint supports,
/// alternating signs and certified spillover control.
#[derive(Debug)]
pub struct MultiscaleOutcome {
    pub times: Vec<f64>,
    pub plans: Vec<AdversarialPlan>,
    pub q0: LatticeWindow,
    pub report: ExperimentReport,
    /// the constant in |q₀(T_k)| ≥ (c/2)√T_k.
    pub c_estimate: f64,
}

pub fn build_multiscale(
    t1: f64,
    count: usize,
    omega1: f64,
    safety: f64,
) -> Result<MultiscaleOutcome> {
    if count < 2 {
        return Err(Error::domain("multiscale build needs count >= 2"));
    }
    if !(safety >= 1.0) {
        return Err(Error::domain("safety factor must be >= 1"));
    }
    let (nu_min, nu_max) = (NU_MIN_DEFAULT, NU_MAX_DEFAULT);
    let mut plans = vec![build_support_set(t1, omega1, nu_min, nu_max)?];
    let mut c_est = plans[0].predicted_lower / t1.sqrt();

    while plans.len() < count {
        let prev = plans.last().unwrap();
        let t_prev_target = prev.target_time;
        let prev_max_index = prev.support_max();
        let sum_l2: f64 = plans.iter().map(|p| (p.points.len() as f64).sqrt()).sum();
        // greedy grid of candidate times, multiplicative steps ×1.1
        let mut candidate = t_prev_target;
        let mut chosen = None;
        for _ in 0..600 {
            candidate *= 1.1;
            let t_cand = 2.0 * omega1 * candidate;
            let min_index_next = (nu_min * t_cand / 2.0).ceil() as i64;
            // (1) disjoint supports
            if prev_max_index >= min_index_next {
                continue;
            }
            // (2) far-tail control: e^{α+1}α < 1 with α = ω₁T_prev / M
            let alpha = omega1 * t_prev_target / min_index_next as f64;
            if alpha.ln() + alpha + 1.0 >= 0.0 {
                continue;
            }
            // (3) accumulation control: Σ_i |q^i(0)|₂ + 1 < (c/2)√T
            if sum_l2 + 1.0 >= c_est / 2.0 * candidate.sqrt() {
                continue;
            }
            chosen = Some(candidate * safety);
            break;
        }
        let next_time = chosen.ok_or_else(|| {
            Error::construction("candidate grid exhausted before reaching the requested count")
        })?;
        let mut plan = build_support_set(next_time, omega1, nu_min, nu_max)?;
        // alternate signs: +, −, +, … realizes the two-sided oscillation
        let sign = if plans.len() % 2 == 0 { 1.0 } else { -1.0 };
        plan.sign = sign;
        for v in &mut plan.q0.values {
            *v *= sign;
        }
        c_est = c_est.min(plan.predicted_lower / plan.target_time.sqrt());
        plans.push(plan);
    }

    // disjointness is structural; assert it anyway
    for w in plans.windows(2) {
        assert!(w[0].support_max() < w[1].support_min());
    }

    // combined initial condition
    let offset = plans[0].support_min();
    let len = (plans.last().unwrap().support_max() - offset + 1) as usize;
    let mut values = vec![0.0; len];
    for plan in &plans {
        for p in &plan.points {
            values[(p.k - offset) as usize] = plan.sign;
        }
    }
    let q0 = LatticeWindow::new(offset, values, Fill::Zero)?;

    let mut report = ExperimentReport::new(
        "adversarial_multiscale",
        serde_json::json!({
            "t1": t1,
            "count": count,
            "omega1": omega1,
            "safety": safety,
            "nu_min": nu_min,
            "nu_max": nu_max,
        }),
    );
    let times: Vec<f64> = plans.iter().map(|p| p.target_time).collect();
    for (idx, plan) in plans.iter().enumerate() {
        // full evaluation: every bump contributes at T_k
        let tau = 2.0 * omega1 * plan.target_time;
        let row = bessel::bessel_row(2 * plans.last().unwrap().support_max(), tau)?;
        let mut q0_at_t = 0.0;
        for other in &plans {
            for p in &other.points {
                q0_at_t += other.sign * row.values()[2 * p.k as usize];
            }
        }
        let floor = c_est / 2.0 * plan.target_time.sqrt();
        report.metric(format!("q0_at_T{}", idx + 1), q0_at_t);
        report.metric(format!("floor_T{}", idx + 1), floor);
        report.assert_that(
            format!("magnitude_T{}", idx + 1),
            "|q0(T_k)| >= (c/2)·sqrt(T_k)",
            q0_at_t.abs(),
            q0_at_t.abs() >= floor,
        );
        report.assert_that(
            format!("sign_T{}", idx + 1),
            "sign(q0(T_k)) alternates starting positive",
            q0_at_t,
            q0_at_t * plan.sign > 0.0,
        );
    }
    report.metric("c_estimate", c_est);
    Ok(MultiscaleOutcome {
        times,
        plans,
        q0,
        report,
        c_estimate: c_est,
    })
}
