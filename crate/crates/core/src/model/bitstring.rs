use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A computational-basis state. Character `k` of the text form is qubit `k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bitstring(Vec<u8>);

impl Bitstring {
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if let Some(bad) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidInstance(format!(
                "bit value {bad} is not 0 or 1"
            )));
        }
        Ok(Bitstring(bits))
    }

    pub fn zeros(len: usize) -> Self {
        Bitstring(vec![0; len])
    }

    /// Little-endian: qubit `k` is bit `k` of `index`.
    pub fn from_index(index: usize, len: usize) -> Self {
        Bitstring((0..len).map(|k| ((index >> k) & 1) as u8).collect())
    }

    /// Inverse of [`Bitstring::from_index`]; `None` above 63 qubits.
    pub fn to_index(&self) -> Option<usize> {
        if self.0.len() >= usize::BITS as usize {
            return None;
        }
        Some(
            self.0
                .iter()
                .enumerate()
                .fold(0usize, |acc, (k, &b)| acc | ((b as usize) << k)),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn get(&self, k: usize) -> u8 {
        self.0[k]
    }

    pub fn set(&mut self, k: usize, bit: bool) {
        self.0[k] = bit as u8;
    }

    /// Spin values `1 - 2 x_k`.
    pub fn spins(&self) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().map(|&b| 1.0 - 2.0 * b as f64)
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn hamming(&self, other: &Bitstring) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidInstance(format!(
                    "bitstring {s:?} contains {other:?}"
                ))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Bitstring)
    }
}
