//! Optimum catalogues for instance directories, grid-versus-SHGO comparison
//! tables and report emission (JSON, CSV, SVG).

mod compare;
mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use compare::{compare_grid_shgo, CompareCase, CompareConfig, ComparisonRow};
pub use report::{emit_report, render_svg, Report, ReportFormat, Series};

use crate::error::{Error, Result};
use crate::landscape::landscape_spec;
use crate::model::{load_instance, InstanceFormat, IsingModel};
use crate::optimize::{grid_optimize, shgo_optimize, Method, Sense, ShgoConfig};
use crate::oracle::{depth_estimate, estimate_two_qubit_gates, GateCountMode};
use crate::probe::OptimizerChoice;

/// Rounds to 6 significant digits.
pub fn round6(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.5e}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemType {
    Maxcut,
    Tsp,
}

impl std::str::FromStr for ProblemType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "maxcut" => Ok(ProblemType::Maxcut),
            "tsp" => Ok(ProblemType::Tsp),
            other => Err(format!("unknown problem type '{other}'")),
        }
    }
}

impl ProblemType {
    pub fn format(self, round: bool) -> InstanceFormat {
        match self {
            ProblemType::Maxcut => InstanceFormat::EdgeList,
            ProblemType::Tsp => InstanceFormat::TspAuto { round },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogueConfig {
    pub optimizer: OptimizerChoice,
    pub sense: Sense,
    pub gate_mode: GateCountMode,
    pub shgo: ShgoConfig,
    /// Round coordinate distances to integers.
    pub round_distances: bool,
    /// Record wall-clock seconds; off keeps output byte-identical across runs.
    pub timing: bool,
}

impl Default for CatalogueConfig {
    fn default() -> Self {
        CatalogueConfig {
            optimizer: OptimizerChoice::Grid,
            sense: Sense::Minimize,
            gate_mode: GateCountMode::Cnot,
            shgo: ShgoConfig::default(),
            round_distances: true,
            timing: false,
        }
    }
}

/// Full-precision copies of the rounded columns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RawValues {
    pub beta_star: f64,
    pub gamma_star: f64,
    pub energy_exact: f64,
    pub wall_time: f64,
}

/// One catalogue row. Every field is present; the numeric ones are `null`
/// only when `error` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogueEntry {
    pub name: String,
    pub qubits: Option<usize>,
    pub two_q_gates: Option<u64>,
    pub gate_mode: GateCountMode,
    /// Logical layer estimate, not a transpiled depth.
    pub depth_estimate: Option<u64>,
    pub modes: Option<usize>,
    pub grid_points: Option<usize>,
    pub beta_star: Option<f64>,
    pub gamma_star: Option<f64>,
    pub energy_exact: Option<f64>,
    pub method: Option<Method>,
    pub wall_time: Option<f64>,
    pub raw: Option<RawValues>,
    pub error: Option<String>,
}

impl CatalogueEntry {
    pub fn for_model(name: &str, m: &IsingModel, cfg: &CatalogueConfig) -> Result<Self> {
        let start = Instant::now();
        let opt = match cfg.optimizer {
            OptimizerChoice::Grid => grid_optimize(m, cfg.sense),
            OptimizerChoice::Shgo => shgo_optimize(m, &cfg.shgo, cfg.sense)?,
        };
        let seconds = if cfg.timing {
            start.elapsed().as_secs_f64()
        } else {
            0.0
        };
        let spec = landscape_spec(m);
        let raw = RawValues {
            beta_star: opt.angles.beta(),
            gamma_star: opt.angles.gamma(),
            energy_exact: opt.value,
            wall_time: seconds,
        };
        Ok(CatalogueEntry {
            name: name.to_string(),
            qubits: Some(m.num_spins()),
            two_q_gates: Some(estimate_two_qubit_gates(m, cfg.gate_mode)),
            gate_mode: cfg.gate_mode,
            depth_estimate: Some(depth_estimate(m)),
            modes: Some(spec.degree),
            grid_points: Some(spec.grid_points),
            beta_star: Some(round6(raw.beta_star)),
            gamma_star: Some(round6(raw.gamma_star)),
            energy_exact: Some(round6(raw.energy_exact)),
            method: Some(opt.method),
            wall_time: Some(round6(seconds)),
            raw: Some(raw),
            error: None,
        })
    }

    pub fn failed(name: &str, gate_mode: GateCountMode, error: &Error) -> Self {
        CatalogueEntry {
            name: name.to_string(),
            qubits: None,
            two_q_gates: None,
            gate_mode,
            depth_estimate: None,
            modes: None,
            grid_points: None,
            beta_star: None,
            gamma_star: None,
            energy_exact: None,
            method: None,
            wall_time: None,
            raw: None,
            error: Some(error.to_string()),
        }
    }

    pub fn is_error(&self) -> bool {
        self.error.is_some()
    }

    /// `grid_points == 5 (4 modes + 1)` and nulls exactly on error rows.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| {
            Err(Error::InvalidInstance(format!(
                "entry '{}': {msg}",
                self.name
            )))
        };
        if self.is_error() {
            if self.qubits.is_some() || self.modes.is_some() || self.raw.is_some() {
                return bad("error record carries values".into());
            }
            return Ok(());
        }
        let (Some(modes), Some(grid), Some(_), Some(_), Some(_), Some(_), Some(_)) = (
            self.modes,
            self.grid_points,
            self.qubits,
            self.beta_star,
            self.gamma_star,
            self.energy_exact,
            self.raw,
        ) else {
            return bad("missing value".into());
        };
        if grid != 5 * (4 * modes + 1) {
            return bad(format!("grid_points {grid} != 5 (4 * {modes} + 1)"));
        }
        Ok(())
    }
}

/// Instance files of a directory in name order; hidden files are skipped.
fn instance_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        let hidden = entry.file_name().to_string_lossy().starts_with('.');
        if path.is_file() && !hidden {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// One entry per file in `dir`, ordered by name. Files that fail to load or
/// encode become error records.
pub fn build_catalogue(
    dir: impl AsRef<Path>,
    problem: ProblemType,
    cfg: &CatalogueConfig,
) -> Result<Vec<CatalogueEntry>> {
    let files = instance_files(dir.as_ref())?;
    Ok(files
        .par_iter()
        .map(|path| {
            let name = path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            load_instance(path, problem.format(cfg.round_distances))
                .and_then(|inst| inst.to_ising())
                .and_then(|m| CatalogueEntry::for_model(&name, &m, cfg))
                .unwrap_or_else(|e| CatalogueEntry::failed(&name, cfg.gate_mode, &e))
        })
        .collect())
}
