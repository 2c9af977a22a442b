use serde::{Deserialize, Serialize};

use super::Simulator;
use crate::error::{Error, Result};
use crate::landscape::{self, Angles};
use crate::model::IsingModel;

/// Global depolarizing channel driven by the compound error: with
/// probability `p_dep = 1 - (1 - mean_error)^gate_count` a shot is replaced
/// by a uniformly random bitstring.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub mean_two_qubit_error: f64,
    pub two_qubit_gate_count: u64,
    depolarizing: f64,
}

impl NoiseSpec {
    pub fn new(mean_two_qubit_error: f64, two_qubit_gate_count: u64) -> Result<Self> {
        if !(0.0..1.0).contains(&mean_two_qubit_error) {
            return Err(Error::InvalidConfig(format!(
                "mean two-qubit error {mean_two_qubit_error} outside [0, 1)"
            )));
        }
        let keep = (1.0 - mean_two_qubit_error).powf(two_qubit_gate_count as f64);
        Ok(NoiseSpec {
            mean_two_qubit_error,
            two_qubit_gate_count,
            depolarizing: 1.0 - keep,
        })
    }

    pub fn noiseless() -> Self {
        NoiseSpec {
            mean_two_qubit_error: 0.0,
            two_qubit_gate_count: 0,
            depolarizing: 0.0,
        }
    }

    /// A channel given directly by its depolarizing probability, recorded as a
    /// single gate with error `p`. `p = 1` (full randomization) is allowed.
    pub fn from_depolarizing(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidConfig(format!(
                "depolarizing probability {p} outside [0, 1]"
            )));
        }
        Ok(NoiseSpec {
            mean_two_qubit_error: p,
            two_qubit_gate_count: 1,
            depolarizing: p,
        })
    }

    pub fn depolarizing(&self) -> f64 {
        self.depolarizing
    }

    /// `C = N_2Q * mean_error`.
    pub fn compound_error(&self) -> f64 {
        self.two_qubit_gate_count as f64 * self.mean_two_qubit_error
    }
}

/// `(1 - p_dep) E + p_dep offset`, where `E` is the exact statevector value when
/// the model fits the simulator and the closed-form energy otherwise.
pub fn noisy_expected_energy(
    m: &IsingModel,
    a: &Angles,
    noise: &NoiseSpec,
    sim: &Simulator,
) -> f64 {
    let ideal = if sim.fits(m) {
        sim.exact_expectation(m, a)
            .expect("model fits the simulator")
    } else {
        landscape::energy(m, a)
    };
    let p = noise.depolarizing();
    (1.0 - p) * ideal + p * m.offset()
}
