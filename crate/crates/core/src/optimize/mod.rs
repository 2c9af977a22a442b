//! Global optimizers for the closed-form landscape: the exhaustive
//! stationary-point grid, sign-change root bracketing of `F1`/`F2`, and a
//! Sobol-seeded basin search with projected gradient refinement.

mod grid;
mod local;
mod shgo;
mod sobol;
mod stationary;

use serde::{Deserialize, Serialize};

use crate::landscape::Angles;

pub use grid::grid_optimize;
pub use local::{refine_local, LocalConfig};
pub use shgo::{shgo_optimize, sobol_point_count, ShgoConfig};
pub use sobol::sobol_2d;
pub use stationary::{
    enumerate_stationary, stationary_scan, StationaryKind, StationaryPoint, StationaryScan,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    #[default]
    Minimize,
    Maximize,
}

impl Sense {
    /// Maps a landscape value to the internally minimized objective.
    pub(crate) fn sign(self) -> f64 {
        match self {
            Sense::Minimize => 1.0,
            Sense::Maximize => -1.0,
        }
    }

    pub(crate) fn better(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Minimize => a < b,
            Sense::Maximize => a > b,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Grid,
    Shgo,
    Refined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Converged,
    /// Refinement stopped because the accepted step fell below `1e-10`.
    StepLimited,
    /// Iteration cap reached before the gradient tolerance.
    NotConverged,
    /// Evaluation budget exhausted; the record holds the best point so far.
    BudgetLimited,
}

/// Best point found by one optimizer run. `evaluations` counts energy and
/// gradient evaluations alike.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimumRecord {
    pub angles: Angles,
    pub value: f64,
    pub evaluations: usize,
    pub wall_time: f64,
    pub method: Method,
    pub status: Status,
}

/// Wire form `{"beta", "gamma", "value", "nfev", "seconds", "method", "status"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimumJson {
    pub beta: f64,
    pub gamma: f64,
    pub value: f64,
    pub nfev: usize,
    pub seconds: f64,
    pub method: Method,
    pub status: Status,
}

impl OptimumRecord {
    pub fn to_json(&self) -> OptimumJson {
        OptimumJson {
            beta: self.angles.beta(),
            gamma: self.angles.gamma(),
            value: self.value,
            nfev: self.evaluations,
            seconds: self.wall_time,
            method: self.method,
            status: self.status,
        }
    }

    /// Equality ignoring wall time.
    pub fn same_result(&self, other: &OptimumRecord) -> bool {
        self.angles == other.angles
            && self.value.to_bits() == other.value.to_bits()
            && self.evaluations == other.evaluations
            && self.method == other.method
            && self.status == other.status
    }
}
