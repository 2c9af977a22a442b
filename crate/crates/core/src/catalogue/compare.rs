use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::round6;
use crate::error::Result;
use crate::landscape::landscape_spec;
use crate::model::{encode_maxcut, MaxCutInstance};
use crate::optimize::{grid_optimize, shgo_optimize, Sense, ShgoConfig};
use crate::probe::derive_seed;

/// Graph size for one comparison row; `edges` selects `G(n, m)` instead of
/// `G(n, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareCase {
    pub n: usize,
    pub edges: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareConfig {
    pub edge_probability: f64,
    pub seed: u64,
    pub shgo: ShgoConfig,
    pub timing: bool,
}

impl Default for CompareConfig {
    fn default() -> Self {
        CompareConfig {
            edge_probability: 0.5,
            seed: 42,
            shgo: ShgoConfig::default(),
            timing: false,
        }
    }
}

/// Grid and SHGO optima of one random MaxCut instance (maximize sense).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub n: usize,
    pub edges: usize,
    pub degree: usize,
    pub grid_points: usize,
    pub grid_seconds: f64,
    pub grid_beta: f64,
    pub grid_gamma: f64,
    pub grid_value: f64,
    pub shgo_nfev: usize,
    pub shgo_seconds: f64,
    pub shgo_beta: f64,
    pub shgo_gamma: f64,
    pub shgo_value: f64,
}

impl ComparisonRow {
    /// Copy with every float rounded to 6 significant digits.
    pub fn rounded(&self) -> Self {
        ComparisonRow {
            grid_seconds: round6(self.grid_seconds),
            grid_beta: round6(self.grid_beta),
            grid_gamma: round6(self.grid_gamma),
            grid_value: round6(self.grid_value),
            shgo_seconds: round6(self.shgo_seconds),
            shgo_beta: round6(self.shgo_beta),
            shgo_gamma: round6(self.shgo_gamma),
            shgo_value: round6(self.shgo_value),
            ..self.clone()
        }
    }
}

pub fn compare_grid_shgo(cases: &[CompareCase], cfg: &CompareConfig) -> Result<Vec<ComparisonRow>> {
    cfg.shgo.validate()?;
    cases
        .par_iter()
        .map(|case| {
            let seed = derive_seed(
                cfg.seed,
                case.n as u64,
                case.edges.map_or(u64::MAX, |m| m as u64),
            );
            let g = match case.edges {
                Some(m) => MaxCutInstance::random_gnm(case.n, m, seed)?,
                None => MaxCutInstance::random_gnp(case.n, cfg.edge_probability, seed)?,
            };
            let model = encode_maxcut(&g)?;
            let spec = landscape_spec(&model);
            let clock = |t: Instant| {
                if cfg.timing {
                    t.elapsed().as_secs_f64()
                } else {
                    0.0
                }
            };
            let t = Instant::now();
            let grid = grid_optimize(&model, Sense::Maximize);
            let grid_seconds = clock(t);
            let t = Instant::now();
            let shgo = shgo_optimize(&model, &cfg.shgo, Sense::Maximize)?;
            let shgo_seconds = clock(t);
            Ok(ComparisonRow {
                n: case.n,
                edges: g.edges().len(),
                degree: spec.degree,
                grid_points: spec.grid_points,
                grid_seconds,
                grid_beta: grid.angles.beta(),
                grid_gamma: grid.angles.gamma(),
                grid_value: grid.value,
                shgo_nfev: shgo.evaluations,
                shgo_seconds,
                shgo_beta: shgo.angles.beta(),
                shgo_gamma: shgo.angles.gamma(),
                shgo_value: shgo.value,
            })
        })
        .collect()
}
