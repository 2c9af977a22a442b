use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Bitstring;
use crate::error::{Error, Result};

/// Diagonal cost Hamiltonian `sum J_ij Z_i Z_j + sum h_i Z_i + offset` on
/// `num_spins` spins.
///
/// Couplings are kept sorted by `(i, j)` with `i < j`, fields sorted by index.
/// Zero weights are dropped on construction, so `edge_count` is the number of
/// couplings that actually contribute.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingModel {
    num_spins: usize,
    couplings: Vec<(usize, usize, f64)>,
    fields: Vec<(usize, f64)>,
    offset: f64,
}

impl IsingModel {
    /// Builds a model, rejecting self-couplings, duplicate pairs (in either
    /// orientation), out-of-range indices and non-finite weights.
    pub fn new(
        num_spins: usize,
        couplings: impl IntoIterator<Item = (usize, usize, f64)>,
        fields: impl IntoIterator<Item = (usize, f64)>,
        offset: f64,
    ) -> Result<Self> {
        if num_spins == 0 {
            return Err(Error::InvalidModel("model needs at least one spin".into()));
        }
        if !offset.is_finite() {
            return Err(Error::InvalidModel(format!(
                "offset {offset} is not finite"
            )));
        }
        let mut pairs = BTreeMap::new();
        for (i, j, w) in couplings {
            if i == j {
                return Err(Error::InvalidModel(format!("self-coupling on spin {i}")));
            }
            let (a, b) = (i.min(j), i.max(j));
            if b >= num_spins {
                return Err(Error::InvalidModel(format!(
                    "coupling ({i}, {j}) out of range for {num_spins} spins"
                )));
            }
            if !w.is_finite() {
                return Err(Error::InvalidModel(format!(
                    "coupling ({i}, {j}) = {w} is not finite"
                )));
            }
            if pairs.insert((a, b), w).is_some() {
                return Err(Error::InvalidModel(format!(
                    "duplicate coupling ({a}, {b})"
                )));
            }
        }
        let mut singles = BTreeMap::new();
        for (i, h) in fields {
            if i >= num_spins {
                return Err(Error::InvalidModel(format!(
                    "field on spin {i} out of range for {num_spins} spins"
                )));
            }
            if !h.is_finite() {
                return Err(Error::InvalidModel(format!(
                    "field {i} = {h} is not finite"
                )));
            }
            if singles.insert(i, h).is_some() {
                return Err(Error::InvalidModel(format!("duplicate field on spin {i}")));
            }
        }
        Ok(IsingModel {
            num_spins,
            couplings: pairs
                .into_iter()
                .filter(|&(_, w)| w != 0.0)
                .map(|((i, j), w)| (i, j, w))
                .collect(),
            fields: singles.into_iter().filter(|&(_, h)| h != 0.0).collect(),
            offset,
        })
    }

    pub fn num_spins(&self) -> usize {
        self.num_spins
    }

    /// Number of stored (nonzero) couplings, `M`.
    pub fn edge_count(&self) -> usize {
        self.couplings.len()
    }

    pub fn field_count(&self) -> usize {
        self.fields.len()
    }

    pub fn couplings(&self) -> &[(usize, usize, f64)] {
        &self.couplings
    }

    pub fn fields(&self) -> &[(usize, f64)] {
        &self.fields
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn coupling(&self, i: usize, j: usize) -> f64 {
        let key = (i.min(j), i.max(j));
        self.couplings
            .binary_search_by(|&(a, b, _)| (a, b).cmp(&key))
            .map(|k| self.couplings[k].2)
            .unwrap_or(0.0)
    }

    pub fn field(&self, i: usize) -> f64 {
        self.fields
            .binary_search_by(|&(a, _)| a.cmp(&i))
            .map(|k| self.fields[k].1)
            .unwrap_or(0.0)
    }

    pub fn has_fields(&self) -> bool {
        !self.fields.is_empty()
    }

    /// `sum |J| + sum |h|`.
    pub fn abs_weight_sum(&self) -> f64 {
        self.couplings.iter().map(|c| c.2.abs()).sum::<f64>()
            + self.fields.iter().map(|f| f.1.abs()).sum::<f64>()
    }

    /// `sum J^2 + sum h^2`.
    pub fn squared_weight_sum(&self) -> f64 {
        self.couplings.iter().map(|c| c.2 * c.2).sum::<f64>()
            + self.fields.iter().map(|f| f.1 * f.1).sum::<f64>()
    }

    /// Energy of the spin configuration encoded in the low `num_spins` bits of
    /// `index`, without the offset.
    pub(crate) fn index_energy(&self, index: usize) -> f64 {
        let spin = |k: usize| if (index >> k) & 1 == 0 { 1.0 } else { -1.0 };
        let mut e = 0.0;
        for &(i, j, w) in &self.couplings {
            e += w * spin(i) * spin(j);
        }
        for &(i, h) in &self.fields {
            e += h * spin(i);
        }
        e
    }

    pub fn to_json(&self) -> IsingJson {
        IsingJson {
            n: self.num_spins,
            offset: self.offset,
            fields: self.fields.clone(),
            couplings: self.couplings.clone(),
        }
    }

    pub fn from_json(json: &IsingJson) -> Result<Self> {
        IsingModel::new(
            json.n,
            json.couplings.iter().copied(),
            json.fields.iter().copied(),
            json.offset,
        )
    }
}

/// Wire form `{"n", "offset", "fields": [[i, h]], "couplings": [[i, j, J]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsingJson {
    pub n: usize,
    pub offset: f64,
    pub fields: Vec<(usize, f64)>,
    pub couplings: Vec<(usize, usize, f64)>,
}

/// `sum J s_i s_j + sum h s_i + offset` with `s = 1 - 2 z`.
pub fn classical_energy(model: &IsingModel, z: &Bitstring) -> Result<f64> {
    if z.len() != model.num_spins() {
        return Err(Error::LengthMismatch {
            expected: model.num_spins(),
            actual: z.len(),
        });
    }
    let s: Vec<f64> = z.spins().collect();
    let mut e = model.offset();
    for &(i, j, w) in model.couplings() {
        e += w * s[i] * s[j];
    }
    for &(i, h) in model.fields() {
        e += h * s[i];
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn construction_normalizes_and_drops_zeros() {
        let m = IsingModel::new(
            3,
            vec![(2, 0, 1.5), (0, 1, 0.0)],
            vec![(1, 0.0), (2, -1.0)],
            0.5,
        )
        .unwrap();
        assert_eq!(m.couplings(), &[(0, 2, 1.5)]);
        assert_eq!(m.fields(), &[(2, -1.0)]);
        assert_eq!(m.edge_count(), 1);
        assert_eq!(m.field_count(), 1);
        assert_eq!(m.coupling(2, 0), 1.5);
        assert_eq!(m.field(0), 0.0);
    }

    #[test]
    fn construction_rejects_bad_terms() {
        assert!(IsingModel::new(2, vec![(1, 1, 1.0)], vec![], 0.0).is_err());
        assert!(IsingModel::new(2, vec![(0, 1, 1.0), (1, 0, 2.0)], vec![], 0.0).is_err());
        assert!(IsingModel::new(2, vec![(0, 2, 1.0)], vec![], 0.0).is_err());
        assert!(IsingModel::new(2, vec![], vec![(0, f64::NAN)], 0.0).is_err());
        assert!(IsingModel::new(0, vec![], vec![], 0.0).is_err());
    }

    #[test]
    fn all_zero_bitstring_sums_every_weight() {
        let m = IsingModel::new(3, vec![(0, 1, 0.3), (1, 2, -2.0)], vec![(0, 0.7)], 1.25).unwrap();
        let e = classical_energy(&m, &Bitstring::zeros(3)).unwrap();
        assert!((e - (0.3 - 2.0 + 0.7 + 1.25)).abs() < 1e-15);
    }

    #[test]
    fn single_coupling_antialigned() {
        let m = IsingModel::new(2, vec![(0, 1, 1.0)], vec![], 0.0).unwrap();
        let z: Bitstring = "01".parse().unwrap();
        assert_eq!(classical_energy(&m, &z).unwrap(), -1.0);
        assert!(classical_energy(&m, &Bitstring::zeros(3)).is_err());
    }

    #[test]
    fn matches_dense_quadratic_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = rng.random_range(2..10);
            let mut dense = vec![vec![0.0; n]; n];
            let mut terms = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random_bool(0.5) {
                        let w: f64 = rng.random_range(-2.0..2.0);
                        dense[i][j] = w;
                        terms.push((i, j, w));
                    }
                }
            }
            let h: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let m = IsingModel::new(n, terms, h.iter().copied().enumerate(), -0.5).unwrap();
            for _ in 0..10 {
                let z = Bitstring::from_index(rng.random_range(0..1usize << n), n);
                let s: Vec<f64> = z.spins().collect();
                let mut quad = -0.5;
                for i in 0..n {
                    quad += h[i] * s[i];
                    for j in 0..n {
                        quad += dense[i][j] * s[i] * s[j];
                    }
                }
                let e = classical_energy(&m, &z).unwrap();
                assert!((e - quad).abs() < 1e-12);
                assert!((m.index_energy(z.to_index().unwrap()) + m.offset() - e).abs() < 1e-12);
            }
        }
    }
}
