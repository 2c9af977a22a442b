//! Ising and QUBO problem forms, the MaxCut and one-hot TSP encoders, and
//! instance-file ingestion.
//!
//! Every problem is reduced to an [`IsingModel`] before it reaches the
//! landscape or the simulator. The spin convention throughout is
//! `s_i = 1 - 2 x_i`, so bit `0` is spin `+1`.

mod bitstring;
mod io;
mod ising;
mod maxcut;
mod qubo;
mod tsp;

pub use bitstring::Bitstring;
pub use io::{load_instance, parse_instance, Instance, InstanceFormat};
pub use ising::{classical_energy, IsingJson, IsingModel};
pub use maxcut::{cut_value, encode_maxcut, MaxCutInstance};
pub use qubo::{ising_to_qubo, qubo_to_ising, QuboBuilder, QuboModel};
pub use tsp::{default_penalty, encode_tsp, permutation_bits, permutation_from_bits, TspInstance};
