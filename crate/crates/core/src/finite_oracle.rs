//! Independent verification path: direct symplectic integration of a large
//! finite truncation of the chain, q̈ = ω₁²Δq.

use crate::error::{Error, Result};
use crate::lattice::{Fill, LatticeWindow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    FixedZero,
    Periodic,
}

/// Finite chain state for velocity-Verlet integration.
#[derive(Debug, Clone)]
pub struct FiniteChain {
    pub omega1: f64,
    pub boundary: Boundary,
    pub q: Vec<f64>,
    pub p: Vec<f64>,
}

/// Bookkeeping from an [`FiniteChain::integrate`] run.
#[derive(Debug, Clone, Copy)]
pub struct IntegrationStats {
    pub steps: usize,
    /// max |E(t) - E(0)| / max(E(0), tiny) over the run.
    pub energy_drift: f64,
}

impl FiniteChain {
    pub fn new(size: usize, omega1: f64, boundary: Boundary) -> Result<Self> {
        if size < 3 {
            return Err(Error::domain(format!("chain size {size} < 3")));
        }
        if !(omega1 > 0.0) || !omega1.is_finite() {
            return Err(Error::domain("omega1 must be positive and finite"));
        }
        Ok(FiniteChain {
            omega1,
            boundary,
            q: vec![0.0; size],
            p: vec![0.0; size],
        })
    }

    /// Embeds a window centered in a chain of `size` sites. The default
    /// size of 4096 comfortably exceeds the light cone for t ≤ 100.
    pub fn from_window(
        window: &LatticeWindow,
        size: usize,
        omega1: f64,
        boundary: Boundary,
    ) -> Result<Self> {
        let mut chain = FiniteChain::new(size, omega1, boundary)?;
        let center = size as i64 / 2;
        for (i, v) in window.values.iter().enumerate() {
            let site = window.offset + i as i64 + center;
            if site < 0 || site >= size as i64 {
                return Err(Error::precondition(format!(
                    "window site {} does not fit a {size}-site chain",
                    window.offset + i as i64
                )));
            }
            chain.q[site as usize] = *v;
        }
        Ok(chain)
    }

    pub fn size(&self) -> usize {
        self.q.len()
    }

    /// E = ½Σpₖ² + (ω₁²/2)Σ(qₖ₊₁−qₖ)².
    pub fn energy(&self) -> f64 {
        let kinetic: f64 = self.p.iter().map(|p| p * p).sum::<f64>() / 2.0;
        let n = self.q.len();
        let mut spring = 0.0;
        for i in 0..n - 1 {
            let d = self.q[i + 1] - self.q[i];
            spring += d * d;
        }
        match self.boundary {
            Boundary::Periodic => {
                let d = self.q[0] - self.q[n - 1];
                spring += d * d;
            }
            Boundary::FixedZero => {
                // walls at q = 0 beyond both ends
                spring += self.q[0] * self.q[0] + self.q[n - 1] * self.q[n - 1];
            }
        }
        kinetic + self.omega1 * self.omega1 / 2.0 * spring
    }

    fn acceleration(&self, out: &mut Vec<f64>) {
        let n = self.q.len();
        let w2 = self.omega1 * self.omega1;
        out.clear();
        out.reserve(n);
        for i in 0..n {
            let left = if i > 0 {
                self.q[i - 1]
            } else {
                match self.boundary {
                    Boundary::FixedZero => 0.0,
                    Boundary::Periodic => self.q[n - 1],
                }
            };
            let right = if i + 1 < n {
                self.q[i + 1]
            } else {
                match self.boundary {
                    Boundary::FixedZero => 0.0,
                    Boundary::Periodic => self.q[0],
                }
            };
            out.push(w2 * (right - 2.0 * self.q[i] + left));
        }
    }

    /// One velocity-Verlet step. Second order, symplectic, time-reversible.
    /// Negative dt steps backwards; |dt| is held to the stability margin.
    pub fn step_verlet(&mut self, dt: f64) -> Result<()> {
        self.check_dt(dt)?;
        let mut acc = Vec::new();
        self.acceleration(&mut acc);
        self.step_with_acc(dt, &mut acc);
        Ok(())
    }

    fn check_dt(&self, dt: f64) -> Result<()> {
        if !(dt.is_finite() && dt != 0.0 && dt.abs() <= 0.5 / self.omega1) {
            return Err(Error::domain(format!(
                "dt = {dt} outside 0 < |dt| <= {}",
                0.5 / self.omega1
            )));
        }
        Ok(())
    }

    fn step_with_acc(&mut self, dt: f64, acc: &mut Vec<f64>) {
        for (p, a) in self.p.iter_mut().zip(acc.iter()) {
            *p += 0.5 * dt * a;
        }
        for (q, p) in self.q.iter_mut().zip(&self.p) {
            *q += dt * p;
        }
        // recompute on the updated positions
        self.acceleration(acc);
        for (p, a) in self.p.iter_mut().zip(acc.iter()) {
            *p += 0.5 * dt * a;
        }
    }

    /// Repeated stepping to `t_end`, shrinking the final step to land
    /// exactly. Returns the step count and the observed energy drift.
    pub fn integrate(&mut self, dt: f64, t_end: f64) -> Result<IntegrationStats> {
        self.check_dt(dt)?;
        if !(dt > 0.0) {
            return Err(Error::domain("integrate needs dt > 0"));
        }
        if !(t_end >= 0.0) {
            return Err(Error::domain("t_end must be nonnegative"));
        }
        // deterministic step count: a near-integer ratio means no partial step
        let ratio = t_end / dt;
        let (full, partial) = if (ratio - ratio.round()).abs() < 1e-9 {
            (ratio.round() as usize, 0.0)
        } else {
            let full = ratio.floor() as usize;
            (full, t_end - full as f64 * dt)
        };
        let e0 = self.energy();
        let scale = e0.max(1e-300);
        let mut drift = 0.0_f64;
        let mut steps = 0;
        for _ in 0..full {
            self.step_verlet(dt)?;
            steps += 1;
            if steps % 1024 == 0 {
                drift = drift.max((self.energy() - e0).abs() / scale);
            }
        }
        if partial > 0.0 {
            self.step_verlet(partial)?;
            steps += 1;
        }
        drift = drift.max((self.energy() - e0).abs() / scale);
        Ok(IntegrationStats {
            steps,
            energy_drift: drift,
        })
    }

    /// Sites [-half_width, half_width] around the embedding center.
    pub fn center_window(&self, half_width: i64) -> LatticeWindow {
        let center = self.q.len() as i64 / 2;
        let values = ((center - half_width)..=(center + half_width))
            .map(|i| self.q[i as usize])
            .collect();
        LatticeWindow {
            offset: -half_width,
            values,
            fill: Fill::None,
        }
    }
}
