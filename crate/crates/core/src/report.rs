//! Structured experiment reports.
//!
//! Every experiment returns an [`ExperimentReport`]: the echoed configuration
//! (enough to reproduce the run bit-identically), named metrics, and a list of
//! assertions each carrying the contract and the observed value.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const REPORT_VERSION: u32 = 1;

/// One checked contract: the relation as text plus the observed value.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub relation: String,
    pub observed: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub report_version: u32,
    pub experiment: String,
    pub config: serde_json::Value,
    /// BTreeMap so serialization order is deterministic.
    pub metrics: BTreeMap<String, f64>,
    pub assertions: Vec<Assertion>,
    pub artifact_paths: Vec<String>,
}

impl ExperimentReport {
    pub fn new(experiment: impl Into<String>, config: serde_json::Value) -> Self {
        ExperimentReport {
            report_version: REPORT_VERSION,
            experiment: experiment.into(),
            config,
            metrics: BTreeMap::new(),
            assertions: Vec::new(),
            artifact_paths: Vec::new(),
        }
    }

    pub fn metric(&mut self, name: impl Into<String>, value: f64) -> &mut Self {
        self.metrics.insert(name.into(), value);
        self
    }

    pub fn assert_that(
        &mut self,
        name: impl Into<String>,
        relation: impl Into<String>,
        observed: f64,
        pass: bool,
    ) -> &mut Self {
        self.assertions.push(Assertion {
            name: name.into(),
            relation: relation.into(),
            observed,
            pass,
        });
        self
    }

    /// Overall status: failure iff any assertion failed.
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }
}
