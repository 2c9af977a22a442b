use serde::{Deserialize, Serialize};

use super::Simulator;
use crate::error::Result;
use crate::landscape::{self, Angles};
use crate::model::IsingModel;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReconciliationPoint {
    pub beta: f64,
    pub gamma: f64,
    pub analytic: f64,
    pub oracle: f64,
    /// `oracle - analytic`.
    pub difference: f64,
}

/// Closed-form landscape against the statevector expectation at a list of
/// angles. Nothing is asserted about agreement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReconciliationReport {
    pub num_spins: usize,
    pub edges: usize,
    pub fields: usize,
    pub points: Vec<ReconciliationPoint>,
    pub max_abs_difference: f64,
    pub mean_abs_difference: f64,
}

pub fn reconcile(
    m: &IsingModel,
    angles: &[Angles],
    sim: &Simulator,
) -> Result<ReconciliationReport> {
    let points = angles
        .iter()
        .map(|a| {
            let analytic = landscape::energy(m, a);
            let oracle = sim.exact_expectation(m, a)?;
            Ok(ReconciliationPoint {
                beta: a.beta(),
                gamma: a.gamma(),
                analytic,
                oracle,
                difference: oracle - analytic,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let abs = points.iter().map(|p| p.difference.abs());
    let max_abs_difference = abs.clone().fold(0.0, f64::max);
    let mean_abs_difference = if points.is_empty() {
        0.0
    } else {
        abs.sum::<f64>() / points.len() as f64
    };
    Ok(ReconciliationReport {
        num_spins: m.num_spins(),
        edges: m.edge_count(),
        fields: m.field_count(),
        points,
        max_abs_difference,
        mean_abs_difference,
    })
}
