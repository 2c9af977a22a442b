use std::time::Instant;

use rayon::prelude::*;

use super::{Method, OptimumRecord, Sense, Status};
use crate::landscape::{self, Angles};
use crate::model::IsingModel;

/// Exhaustive sweep of the `5 x (4D + 1)` stationary-point grid.
///
/// Ties resolve to the lexicographically smallest `(beta, gamma)`. Because the
/// energy separates as `sin(2 beta) F1(gamma) + offset`, `F1` is computed once
/// per gamma column; every grid point still counts as one evaluation.
pub fn grid_optimize(m: &IsingModel, sense: Sense) -> OptimumRecord {
    let start = Instant::now();
    let spec = landscape::landscape_spec(m);
    let f1: Vec<f64> = (0..spec.gamma_points)
        .into_par_iter()
        .map(|j| landscape::f1(m, spec.gamma_value(j)))
        .collect();
    let mut best: Option<(usize, usize, f64)> = None;
    for k in 0..spec.beta_points {
        let s = (2.0 * spec.beta_value(k)).sin();
        for (j, &f) in f1.iter().enumerate() {
            let v = s * f + m.offset();
            if best.is_none_or(|(_, _, b)| sense.better(v, b)) {
                best = Some((k, j, v));
            }
        }
    }
    let (k, j, value) = best.expect("grid is never empty");
    OptimumRecord {
        angles: Angles::new(spec.beta_value(k), spec.gamma_value(j))
            .expect("grid points lie in the domain"),
        value,
        evaluations: spec.grid_points,
        wall_time: start.elapsed().as_secs_f64(),
        method: Method::Grid,
        status: Status::Converged,
    }
}
