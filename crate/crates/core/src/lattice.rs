//! Finite windows of doubly-infinite real sequences.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// What the sequence looks like outside the stored window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fill {
    /// The represented infinite sequence is exactly zero outside the window.
    Zero,
    /// Nothing is known outside the window.
    None,
}

/// Finite window of a doubly-infinite real sequence: `values[i]` is the
/// value at site `offset + i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeWindow {
    pub offset: i64,
    pub values: Vec<f64>,
    pub fill: Fill,
}

impl LatticeWindow {
    pub fn new(offset: i64, values: Vec<f64>, fill: Fill) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("lattice window must be non-empty"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("lattice window contains non-finite entries"));
        }
        Ok(LatticeWindow {
            offset,
            values,
            fill,
        })
    }

    /// All-zero window on [-half_width, half_width] with fill = zero.
    pub fn zeros(half_width: i64) -> Self {
        LatticeWindow {
            offset: -half_width,
            values: vec![0.0; (2 * half_width + 1) as usize],
            fill: Fill::Zero,
        }
    }

    /// Kronecker delta at `site`, fill = zero.
    pub fn delta(site: i64) -> Self {
        LatticeWindow {
            offset: site,
            values: vec![1.0],
            fill: Fill::Zero,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// First site index.
    pub fn first(&self) -> i64 {
        self.offset
    }

    /// Last site index (inclusive).
    pub fn last(&self) -> i64 {
        self.offset + self.values.len() as i64 - 1
    }

    /// Value at site `n`; `None` when the site lies outside a fill=none window.
    pub fn get(&self, n: i64) -> Option<f64> {
        if n >= self.first() && n <= self.last() {
            Some(self.values[(n - self.offset) as usize])
        } else {
            match self.fill {
                Fill::Zero => Some(0.0),
                Fill::None => None,
            }
        }
    }

    pub fn inf_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn l2_norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn get_respects_fill() {
        let w = LatticeWindow::new(-1, vec![1.0, 2.0, 3.0], Fill::Zero).unwrap();
        assert_eq!(w.get(-1), Some(1.0));
        assert_eq!(w.get(1), Some(3.0));
        assert_eq!(w.get(5), Some(0.0));
        let w = LatticeWindow::new(-1, vec![1.0, 2.0, 3.0], Fill::None).unwrap();
        assert_eq!(w.get(5), None);
        assert_eq!(w.get(-2), None);
    }

    #[test]
    fn norms() {
        let w = LatticeWindow::new(0, vec![3.0, -4.0], Fill::Zero).unwrap();
        assert_eq!(w.inf_norm(), 4.0);
        assert_eq!(w.l2_norm(), 5.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(LatticeWindow::new(0, vec![], Fill::Zero).is_err());
        assert!(LatticeWindow::new(0, vec![f64::NAN], Fill::Zero).is_err());
    }

    #[test]
    fn json_shape() {
        let w = LatticeWindow::new(-2, vec![0.5, 1.5], Fill::Zero).unwrap();
        let j = serde_json::to_value(&w).unwrap();
        assert_eq!(j["offset"], -2);
        assert_eq!(j["fill"], "zero");
        let back: LatticeWindow = serde_json::from_value(j).unwrap();
        assert_eq!(back, w);
    }
}
