use std::f64::consts::{PI, TAU};
use std::time::Instant;

use rayon::prelude::*;

use super::local::{refine_local, LocalConfig};
use super::{sobol_2d, Method, OptimumRecord, Sense, Status};
use crate::error::{Error, Result};
use crate::landscape::{self, Angles};
use crate::model::IsingModel;

/// Settings for the Sobol-seeded basin search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShgoConfig {
    /// Target accuracy `epsilon` of the returned energy.
    pub epsilon: f64,
    /// Fixed sample count; when `None` it follows from `epsilon`.
    pub sobol_points: Option<usize>,
    pub min_points: usize,
    pub max_points: usize,
    /// Neighbours consulted when deciding whether a sample starts a basin.
    pub neighbor_count: usize,
    pub local_tolerance: f64,
    pub max_evaluations: usize,
}

impl Default for ShgoConfig {
    fn default() -> Self {
        ShgoConfig {
            epsilon: 1e-3,
            sobol_points: None,
            min_points: 64,
            max_points: 512,
            neighbor_count: 6,
            local_tolerance: 1e-8,
            max_evaluations: 5000,
        }
    }
}

impl ShgoConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "epsilon {} must be positive",
                self.epsilon
            )));
        }
        if self.sobol_points.is_some_and(|n| n < 4) || self.min_points < 4 {
            return Err(Error::InvalidConfig(
                "at least 4 Sobol points are required".into(),
            ));
        }
        if self.min_points > self.max_points {
            return Err(Error::InvalidConfig("min_points exceeds max_points".into()));
        }
        if self.neighbor_count == 0 {
            return Err(Error::InvalidConfig(
                "neighbor_count must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// `n = ceil((4L/eps)(1 + ln max(M, 1)))` clamped to `[min_points, max_points]`,
/// unless the config fixes `n`.
pub fn sobol_point_count(m: &IsingModel, cfg: &ShgoConfig) -> usize {
    if let Some(n) = cfg.sobol_points {
        return n;
    }
    let l = landscape::lipschitz(m);
    let edges = m.edge_count().max(1) as f64;
    let raw = (4.0 * l / cfg.epsilon * (1.0 + edges.ln())).ceil();
    if raw.is_finite() {
        (raw.max(0.0) as usize).clamp(cfg.min_points, cfg.max_points)
    } else {
        cfg.max_points
    }
}

fn distance(a: &Angles, b: &Angles) -> f64 {
    let db = a.beta() - b.beta();
    let dg = (a.gamma() - b.gamma()).abs();
    db.hypot(dg.min(TAU - dg))
}

/// Sobol-seeded global search.
///
/// Samples are scaled to `[0, pi] x [0, 2 pi]` and evaluated; each sample
/// that beats its `k` nearest neighbours (gamma distance taken on the circle,
/// ties broken by index) seeds a projected-gradient refinement. Seeds are
/// refined best-first until the evaluation budget runs out; the best refined
/// point is returned with the total evaluation count.
pub fn shgo_optimize(m: &IsingModel, cfg: &ShgoConfig, sense: Sense) -> Result<OptimumRecord> {
    cfg.validate()?;
    let timer = Instant::now();
    let n = sobol_point_count(m, cfg);
    let pts: Vec<Angles> = sobol_2d(n)
        .into_iter()
        .map(|[u, v]| Angles::new(u * PI, v * TAU).expect("unit square maps into the domain"))
        .collect();
    let sign = sense.sign();
    let vals: Vec<f64> = pts
        .par_iter()
        .map(|a| sign * landscape::energy(m, a))
        .collect();
    let mut evaluations = n;

    let k = cfg.neighbor_count.min(n - 1);
    let mut seeds: Vec<usize> = (0..n)
        .into_par_iter()
        .filter(|&i| {
            let mut near: Vec<(f64, usize)> = (0..n)
                .filter(|&j| j != i)
                .map(|j| (distance(&pts[i], &pts[j]), j))
                .collect();
            near.select_nth_unstable_by(k - 1, |a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            near[..k]
                .iter()
                .all(|&(_, j)| vals[i] < vals[j] || (vals[i] == vals[j] && i < j))
        })
        .collect();
    seeds.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]).then(a.cmp(&b)));

    let best_index = (0..n)
        .min_by(|&a, &b| vals[a].total_cmp(&vals[b]).then(a.cmp(&b)))
        .expect("at least one sample");
    let mut best = (pts[best_index], vals[best_index]);
    let mut status = Status::Converged;
    for &s in &seeds {
        if evaluations >= cfg.max_evaluations {
            status = Status::BudgetLimited;
            break;
        }
        let local = LocalConfig {
            tolerance: cfg.local_tolerance,
            budget: cfg.max_evaluations - evaluations,
            ..LocalConfig::default()
        };
        let r = refine_local(m, pts[s], sense, &local);
        evaluations += r.evaluations;
        let v = sign * r.value;
        if v < best.1 {
            best = (r.angles, v);
        }
        if r.status == Status::BudgetLimited {
            status = Status::BudgetLimited;
            break;
        }
    }

    Ok(OptimumRecord {
        angles: best.0,
        value: sign * best.1,
        evaluations,
        wall_time: timer.elapsed().as_secs_f64(),
        method: Method::Shgo,
        status,
    })
}
