//! Single-layer QAOA dependability probe.
//!
//! The crate computes provably global optima of the closed-form `p = 1` QAOA
//! energy landscape of an Ising cost Hamiltonian, runs the matching circuit on
//! a built-in statevector simulator with global depolarizing noise, and drives
//! a run-to-failure loop that escalates problem size until the compound error
//! `C = N_2Q * mean_error` exceeds one or the measured energy drifts too far
//! from the analytic reference.
//!
//! ```
//! use qaoa_probe::landscape::{self, Angles};
//! use qaoa_probe::model::{encode_maxcut, MaxCutInstance};
//! use qaoa_probe::optimize::{grid_optimize, Sense};
//!
//! let graph = MaxCutInstance::new(3, vec![(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
//! let ising = encode_maxcut(&graph).unwrap();
//! let spec = landscape::landscape_spec(&ising);
//! assert_eq!(spec.degree, 2 * 3 + 3);
//!
//! let best = grid_optimize(&ising, Sense::Minimize);
//! assert_eq!(best.evaluations, spec.grid_points);
//! assert!(best.value <= landscape::energy(&ising, &Angles::new(0.0, 0.0).unwrap()));
//! ```

pub mod catalogue;
pub mod error;
pub mod landscape;
pub mod model;
pub mod optimize;
pub mod oracle;
pub mod probe;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/models.md")]
    mod models {}
    #[doc = include_str!("../../../book/src/landscape.md")]
    mod landscape {}
    #[doc = include_str!("../../../book/src/optimizers.md")]
    mod optimizers {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/probe.md")]
    mod probe {}
    #[doc = include_str!("../../../book/src/catalogue.md")]
    mod catalogue {}
}
