use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::landscape::Angles;
use crate::model::IsingModel;

/// `2^N` amplitudes; basis index bit `k` is qubit `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.par_iter().map(|a| a.norm_sqr()).collect()
    }
}

/// Dense simulator refusing registers above `cap` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Simulator {
    cap: usize,
}

impl Default for Simulator {
    fn default() -> Self {
        Simulator {
            cap: Self::DEFAULT_CAP,
        }
    }
}

impl Simulator {
    /// `2^24` complex doubles is a 256 MiB working set.
    pub const DEFAULT_CAP: usize = 24;

    pub fn new(cap: usize) -> Self {
        Simulator { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn fits(&self, m: &IsingModel) -> bool {
        m.num_spins() <= self.cap
    }

    pub(crate) fn check(&self, m: &IsingModel) -> Result<()> {
        if self.fits(m) {
            Ok(())
        } else {
            Err(Error::QubitCapExceeded {
                qubits: m.num_spins(),
                cap: self.cap,
            })
        }
    }

    /// Diagonal of the cost Hamiltonian without the offset.
    pub(crate) fn basis_energies(&self, m: &IsingModel) -> Result<Vec<f64>> {
        self.check(m)?;
        Ok((0..1usize << m.num_spins())
            .into_par_iter()
            .map(|z| m.index_energy(z))
            .collect())
    }

    pub(crate) fn evolve(&self, m: &IsingModel, energies: &[f64], a: &Angles) -> StateVector {
        let n = m.num_spins();
        let dim = 1usize << n;
        let amp0 = (dim as f64).powf(-0.5);
        let mut psi: Vec<Complex64> = energies
            .par_iter()
            .map(|&e| Complex64::from_polar(amp0, -a.gamma() * e))
            .collect();
        let (c, s) = (a.beta().cos(), a.beta().sin());
        let minus_is = Complex64::new(0.0, -s);
        for k in 0..n {
            let half = 1usize << k;
            psi.par_chunks_mut(2 * half).for_each(|block| {
                let (lo, hi) = block.split_at_mut(half);
                for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (a0, a1) = (*x, *y);
                    *x = a0 * c + a1 * minus_is;
                    *y = a0 * minus_is + a1 * c;
                }
            });
        }
        StateVector {
            num_qubits: n,
            amplitudes: psi,
        }
    }

    pub fn qaoa_state(&self, m: &IsingModel, a: &Angles) -> Result<StateVector> {
        let energies = self.basis_energies(m)?;
        Ok(self.evolve(m, &energies, a))
    }

    /// `sum_z |psi_z|^2 E(z)`, offset included.
    pub fn exact_expectation(&self, m: &IsingModel, a: &Angles) -> Result<f64> {
        let energies = self.basis_energies(m)?;
        let psi = self.evolve(m, &energies, a);
        let e: f64 = psi
            .amplitudes
            .par_iter()
            .zip(energies.par_iter())
            .map(|(amp, &e)| amp.norm_sqr() * e)
            .sum();
        Ok(e + m.offset())
    }
}
