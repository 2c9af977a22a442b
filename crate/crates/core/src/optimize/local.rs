use std::f64::consts::{PI, TAU};
use std::time::Instant;

use super::{Method, OptimumRecord, Sense, Status};
use crate::landscape::{self, Angles};
use crate::model::IsingModel;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalConfig {
    /// Projected-gradient sup-norm that counts as stationary.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Steps shorter than this end the search.
    pub min_step: f64,
    /// Evaluations available to this refinement; `usize::MAX` for none.
    pub budget: usize,
}

impl Default for LocalConfig {
    fn default() -> Self {
        LocalConfig {
            tolerance: 1e-8,
            max_iterations: 500,
            min_step: 1e-10,
            budget: usize::MAX,
        }
    }
}

/// Gradient components that would push an iterate out of the box are zeroed.
fn projected(a: &Angles, g: (f64, f64)) -> (f64, f64) {
    let clip = |x: f64, lo: f64, hi: f64, d: f64| {
        if (x <= lo && d > 0.0) || (x >= hi && d < 0.0) {
            0.0
        } else {
            d
        }
    };
    (clip(a.beta(), 0.0, PI, g.0), clip(a.gamma(), 0.0, TAU, g.1))
}

/// Projected gradient descent on `sense`-oriented energy with
/// Barzilai-Borwein trial steps and Armijo backtracking.
pub fn refine_local(
    m: &IsingModel,
    start: Angles,
    sense: Sense,
    cfg: &LocalConfig,
) -> OptimumRecord {
    let timer = Instant::now();
    let sign = sense.sign();
    let objective = |a: &Angles| sign * landscape::energy(m, a);
    let grad = |a: &Angles| {
        let g = landscape::gradient(m, a);
        (sign * g.0, sign * g.1)
    };

    let mut x = start;
    let mut fx = objective(&x);
    let mut gx = grad(&x);
    let mut evaluations = 2;
    let mut step = 1.0 / landscape::lipschitz(m).max(1e-12);
    let mut status = Status::NotConverged;

    for _ in 0..cfg.max_iterations {
        let pg = projected(&x, gx);
        if pg.0.abs().max(pg.1.abs()) <= cfg.tolerance {
            status = Status::Converged;
            break;
        }
        let mut t = step;
        let accepted = loop {
            if evaluations >= cfg.budget {
                break None;
            }
            let trial = Angles::project(x.beta() - t * gx.0, x.gamma() - t * gx.1);
            let s = (trial.beta() - x.beta(), trial.gamma() - x.gamma());
            let moved = s.0.hypot(s.1);
            if moved < cfg.min_step {
                break Some(None);
            }
            let ft = objective(&trial);
            evaluations += 1;
            // Armijo on the projected step
            if ft <= fx + 1e-4 * (gx.0 * s.0 + gx.1 * s.1) {
                break Some(Some((trial, ft, s)));
            }
            t *= 0.5;
        };
        match accepted {
            None => {
                status = Status::BudgetLimited;
                break;
            }
            Some(None) => {
                status = Status::StepLimited;
                break;
            }
            Some(Some((trial, ft, s))) => {
                if evaluations >= cfg.budget {
                    x = trial;
                    fx = ft;
                    status = Status::BudgetLimited;
                    break;
                }
                let gt = grad(&trial);
                evaluations += 1;
                let y = (gt.0 - gx.0, gt.1 - gx.1);
                let sy = s.0 * y.0 + s.1 * y.1;
                let ss = s.0 * s.0 + s.1 * s.1;
                step = if sy > 0.0 { ss / sy } else { 2.0 * t };
                x = trial;
                fx = ft;
                gx = gt;
            }
        }
    }

    OptimumRecord {
        angles: x,
        value: sign * fx,
        evaluations,
        wall_time: timer.elapsed().as_secs_f64(),
        method: Method::Refined,
        status,
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_PI_4;

    use super::*;

    fn single_j() -> IsingModel {
        IsingModel::new(2, vec![(0, 1, 1.0)], vec![], 0.0).unwrap()
    }

    #[test]
    fn exact_optimum_returns_immediately() {
        let start = Angles::new(FRAC_PI_4, FRAC_PI_4).unwrap();
        let r = refine_local(&single_j(), start, Sense::Maximize, &LocalConfig::default());
        assert_eq!(r.angles, start);
        assert_eq!(r.evaluations, 2);
        assert_eq!(r.status, Status::Converged);
    }

    #[test]
    fn perturbed_start_recovers_the_optimum() {
        let start = Angles::new(FRAC_PI_4 + 0.05, FRAC_PI_4 - 0.05).unwrap();
        let r = refine_local(&single_j(), start, Sense::Maximize, &LocalConfig::default());
        assert_eq!(r.status, Status::Converged);
        assert!((r.angles.beta() - FRAC_PI_4).abs() < 1e-6);
        assert!((r.angles.gamma() - FRAC_PI_4).abs() < 1e-6);
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn minimization_stays_inside_the_box() {
        let m = IsingModel::new(1, vec![], vec![(0, 0.8)], 0.0).unwrap();
        for (b, g) in [(0.01, 0.01), (3.1, 6.2), (1.0, 3.0)] {
            let r = refine_local(
                &m,
                Angles::new(b, g).unwrap(),
                Sense::Minimize,
                &LocalConfig::default(),
            );
            assert!((0.0..=PI).contains(&r.angles.beta()));
            assert!((0.0..=TAU).contains(&r.angles.gamma()));
            assert!(r.value <= landscape::energy(&m, &Angles::new(b, g).unwrap()));
        }
    }

    #[test]
    fn exhausted_budget_is_flagged() {
        let start = Angles::new(0.3, 0.3).unwrap();
        let cfg = LocalConfig {
            budget: 3,
            ..LocalConfig::default()
        };
        let r = refine_local(&single_j(), start, Sense::Maximize, &cfg);
        assert_eq!(r.status, Status::BudgetLimited);
        assert!(r.evaluations <= 3);
    }
}
