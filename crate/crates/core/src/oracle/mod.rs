//! Statevector oracle: exact `p = 1` QAOA amplitudes, shot sampling under
//! global depolarizing noise, sample scoring, TSP feasibility repair and
//! two-qubit gate estimators.
//!
//! Gate convention: the cost layer is `exp(-i gamma (sum J Z Z + sum h Z))`
//! (offset dropped as a global phase) and the mixer is `exp(-i beta X)` on
//! every qubit, applied to `|+>^N`. Qubit `k` is bit `k` of the basis index.

mod assignment;
mod gates;
mod noise;
mod reconcile;
mod repair;
mod sampling;
mod statevector;

pub use assignment::min_cost_assignment;
pub use gates::{depth_estimate, estimate_two_qubit_gates, GateCountMode};
pub use noise::{noisy_expected_energy, NoiseSpec};
pub use reconcile::{reconcile, ReconciliationPoint, ReconciliationReport};
pub use repair::{repair_tsp, repaired_tour};
pub use sampling::{energy_from_samples, SampleSet, SampleSetJson};
pub use statevector::{Simulator, StateVector};
