//! Closed-form single-layer landscape
//!
//! ```text
//! E(beta, gamma) = sin(2 beta) F1(gamma) + offset
//! F1(gamma) = sum J sin(2 gamma J) + sum h cos(2 gamma h)
//! F2(gamma) = sum J^2 cos(2 gamma J) - sum h^2 sin(2 gamma h)
//! dE/dbeta = 2 cos(2 beta) F1,   dE/dgamma = 2 sin(2 beta) F2
//! ```
//!
//! on the closed box `[0, pi] x [0, 2 pi]`, together with the Lipschitz
//! constant and the stationary-point grid derived from it.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::IsingModel;

/// A `(beta, gamma)` point in `[0, pi] x [0, 2 pi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Angles {
    beta: f64,
    gamma: f64,
}

impl Angles {
    /// Out-of-range or non-finite angles are rejected, never clamped.
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        if (0.0..=PI).contains(&beta) && (0.0..=TAU).contains(&gamma) {
            Ok(Angles { beta, gamma })
        } else {
            Err(Error::AngleOutOfDomain { beta, gamma })
        }
    }

    /// Projects onto the box. Only for iterates of a local search.
    pub(crate) fn project(beta: f64, gamma: f64) -> Self {
        Angles {
            beta: beta.clamp(0.0, PI),
            gamma: gamma.clamp(0.0, TAU),
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

pub fn f1(m: &IsingModel, gamma: f64) -> f64 {
    let c: f64 = m
        .couplings()
        .iter()
        .map(|&(_, _, j)| j * (2.0 * gamma * j).sin())
        .sum();
    let h: f64 = m
        .fields()
        .iter()
        .map(|&(_, h)| h * (2.0 * gamma * h).cos())
        .sum();
    c + h
}

pub fn f2(m: &IsingModel, gamma: f64) -> f64 {
    let c: f64 = m
        .couplings()
        .iter()
        .map(|&(_, _, j)| j * j * (2.0 * gamma * j).cos())
        .sum();
    let h: f64 = m
        .fields()
        .iter()
        .map(|&(_, h)| h * h * (2.0 * gamma * h).sin())
        .sum();
    c - h
}

pub fn energy(m: &IsingModel, a: &Angles) -> f64 {
    (2.0 * a.beta).sin() * f1(m, a.gamma) + m.offset()
}

/// `(dE/dbeta, dE/dgamma)`.
pub fn gradient(m: &IsingModel, a: &Angles) -> (f64, f64) {
    (
        2.0 * (2.0 * a.beta).cos() * f1(m, a.gamma),
        2.0 * (2.0 * a.beta).sin() * f2(m, a.gamma),
    )
}

/// `L = 2 max(sum|J| + sum|h|, sum J^2 + sum h^2)`.
pub fn lipschitz(m: &IsingModel) -> f64 {
    2.0 * m.abs_weight_sum().max(m.squared_weight_sum())
}

/// Grid and bound data for one model. `degree` is `2M + N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LandscapeSpec {
    pub lipschitz: f64,
    pub degree: usize,
    pub stationary_bound: usize,
    pub delta_beta: f64,
    pub delta_gamma: f64,
    pub beta_points: usize,
    pub gamma_points: usize,
    pub grid_points: usize,
}

impl LandscapeSpec {
    /// `beta_k = k pi / 4`, `k = 0..=4`.
    pub fn beta_value(&self, k: usize) -> f64 {
        k as f64 / 4.0 * PI
    }

    /// `gamma_j = j pi / (2D)`, `j = 0..=4D`; the last column is exactly `2 pi`.
    pub fn gamma_value(&self, j: usize) -> f64 {
        j as f64 / (self.gamma_points - 1) as f64 * TAU
    }
}

/// Grid with `delta_beta = pi/4` and `delta_gamma = pi/(2D)`. Both `gamma = 0`
/// and `gamma = 2 pi` columns are kept, giving `4D + 1` gamma samples.
///
/// `stationary_bound` is the nominal `5D` budget. It is not a hard ceiling:
/// each of `F1` and `F2` can have up to `2D` roots per period and every root
/// pairs with two or three `beta` values, so a careful count reaches `10D`
/// (plus the closed-interval endpoints). Very small models do exceed `5D`.
pub fn landscape_spec(m: &IsingModel) -> LandscapeSpec {
    let degree = 2 * m.edge_count() + m.num_spins();
    let gamma_points = 4 * degree + 1;
    LandscapeSpec {
        lipschitz: lipschitz(m),
        degree,
        stationary_bound: 5 * degree,
        delta_beta: PI / 4.0,
        delta_gamma: FRAC_PI_2 / degree as f64,
        beta_points: 5,
        gamma_points,
        grid_points: 5 * gamma_points,
    }
}
