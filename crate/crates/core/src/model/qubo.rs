use std::collections::BTreeMap;

use super::{Bitstring, IsingModel};
use crate::error::{Error, Result};

/// `sum Q_ij x_i x_j + sum c_i x_i + constant` over binary variables.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboModel {
    num_vars: usize,
    quadratic: Vec<(usize, usize, f64)>,
    linear: Vec<(usize, f64)>,
    constant: f64,
}

/// Accumulates QUBO terms, merging duplicates. A diagonal quadratic term
/// `x_i x_i` folds into the linear part.
#[derive(Debug, Clone)]
pub struct QuboBuilder {
    num_vars: usize,
    quadratic: BTreeMap<(usize, usize), f64>,
    linear: BTreeMap<usize, f64>,
    constant: f64,
}

impl QuboBuilder {
    pub fn new(num_vars: usize) -> Self {
        QuboBuilder {
            num_vars,
            quadratic: BTreeMap::new(),
            linear: BTreeMap::new(),
            constant: 0.0,
        }
    }

    pub fn add_constant(&mut self, c: f64) -> &mut Self {
        self.constant += c;
        self
    }

    pub fn add_linear(&mut self, i: usize, c: f64) -> &mut Self {
        *self.linear.entry(i).or_insert(0.0) += c;
        self
    }

    pub fn add_quadratic(&mut self, i: usize, j: usize, q: f64) -> &mut Self {
        if i == j {
            return self.add_linear(i, q);
        }
        *self.quadratic.entry((i.min(j), i.max(j))).or_insert(0.0) += q;
        self
    }

    pub fn build(&self) -> Result<QuboModel> {
        if self.num_vars == 0 {
            return Err(Error::InvalidModel(
                "QUBO needs at least one variable".into(),
            ));
        }
        let out_of_range = self
            .quadratic
            .keys()
            .map(|&(_, j)| j)
            .chain(self.linear.keys().copied())
            .find(|&i| i >= self.num_vars);
        if let Some(i) = out_of_range {
            return Err(Error::InvalidModel(format!(
                "variable {i} out of range for {} variables",
                self.num_vars
            )));
        }
        let finite = self.constant.is_finite()
            && self.quadratic.values().all(|v| v.is_finite())
            && self.linear.values().all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidModel(
                "QUBO has a non-finite coefficient".into(),
            ));
        }
        Ok(QuboModel {
            num_vars: self.num_vars,
            quadratic: self
                .quadratic
                .iter()
                .filter(|(_, &v)| v != 0.0)
                .map(|(&(i, j), &v)| (i, j, v))
                .collect(),
            linear: self
                .linear
                .iter()
                .filter(|(_, &v)| v != 0.0)
                .map(|(&i, &v)| (i, v))
                .collect(),
            constant: self.constant,
        })
    }
}

impl QuboModel {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn quadratic(&self) -> &[(usize, usize, f64)] {
        &self.quadratic
    }

    pub fn linear(&self) -> &[(usize, f64)] {
        &self.linear
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn value(&self, x: &Bitstring) -> Result<f64> {
        if x.len() != self.num_vars {
            return Err(Error::LengthMismatch {
                expected: self.num_vars,
                actual: x.len(),
            });
        }
        let b = x.bits();
        let mut v = self.constant;
        for &(i, c) in &self.linear {
            v += c * b[i] as f64;
        }
        for &(i, j, q) in &self.quadratic {
            if b[i] == 1 && b[j] == 1 {
                v += q;
            }
        }
        Ok(v)
    }
}

/// Substitutes `x = (1 - s) / 2`: `c x_i` gives `h_i -= c/2`, offset `+= c/2`;
/// `q x_i x_j` gives `J_ij += q/4`, `h_i, h_j -= q/4`, offset `+= q/4`.
pub fn qubo_to_ising(q: &QuboModel) -> Result<IsingModel> {
    let mut fields: BTreeMap<usize, f64> = BTreeMap::new();
    let mut offset = q.constant;
    for &(i, c) in &q.linear {
        *fields.entry(i).or_insert(0.0) -= c / 2.0;
        offset += c / 2.0;
    }
    let mut couplings = Vec::with_capacity(q.quadratic.len());
    for &(i, j, w) in &q.quadratic {
        couplings.push((i, j, w / 4.0));
        *fields.entry(i).or_insert(0.0) -= w / 4.0;
        *fields.entry(j).or_insert(0.0) -= w / 4.0;
        offset += w / 4.0;
    }
    IsingModel::new(q.num_vars, couplings, fields, offset)
}

/// Inverse substitution `s = 1 - 2x`.
pub fn ising_to_qubo(m: &IsingModel) -> Result<QuboModel> {
    let mut b = QuboBuilder::new(m.num_spins());
    b.add_constant(m.offset());
    for &(i, h) in m.fields() {
        b.add_constant(h).add_linear(i, -2.0 * h);
    }
    for &(i, j, w) in m.couplings() {
        b.add_constant(w)
            .add_linear(i, -2.0 * w)
            .add_linear(j, -2.0 * w)
            .add_quadratic(i, j, 4.0 * w);
    }
    b.build()
}
