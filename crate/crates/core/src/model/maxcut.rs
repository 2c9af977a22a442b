use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Bitstring, IsingModel};
use crate::error::{Error, Result};

/// Weighted simple graph.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxCutInstance {
    num_nodes: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl MaxCutInstance {
    pub fn new(num_nodes: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        if num_nodes == 0 {
            return Err(Error::InvalidInstance("graph has no nodes".into()));
        }
        let mut seen = BTreeSet::new();
        for &(u, v, w) in &edges {
            if u == v {
                return Err(Error::InvalidInstance(format!("loop on node {u}")));
            }
            if u >= num_nodes || v >= num_nodes {
                return Err(Error::InvalidInstance(format!(
                    "edge ({u}, {v}) out of range for {num_nodes} nodes"
                )));
            }
            if !w.is_finite() {
                return Err(Error::InvalidInstance(format!(
                    "edge ({u}, {v}) weight {w}"
                )));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidInstance(format!("parallel edge ({u}, {v})")));
            }
        }
        Ok(MaxCutInstance { num_nodes, edges })
    }

    /// Unit-weight path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i - 1, i, 1.0)).collect())
    }

    /// Unit-weight cycle on `n >= 3` nodes.
    pub fn ring(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInstance(
                "a ring needs at least 3 nodes".into(),
            ));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect())
    }

    /// Erdos-Renyi `G(n, p)` with weights uniform in `(0, 1]`.
    pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidConfig(format!(
                "edge probability {p} outside [0, 1]"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v, 1.0 - rng.random::<f64>()));
                }
            }
        }
        Self::new(n, edges)
    }

    /// Uniform `G(n, m)`: exactly `m` distinct edges, weights uniform in `(0, 1]`.
    pub fn random_gnm(n: usize, m: usize, seed: u64) -> Result<Self> {
        let all: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        if m > all.len() {
            return Err(Error::InvalidConfig(format!(
                "{m} edges do not fit in a simple graph on {n} nodes"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut picked = sample(&mut rng, all.len(), m).into_vec();
        picked.sort_unstable();
        let edges = picked
            .into_iter()
            .map(|k| (all[k].0, all[k].1, 1.0 - rng.random::<f64>()))
            .collect();
        Self::new(n, edges)
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.2).sum()
    }
}

/// Total weight of edges whose endpoints carry different bits.
pub fn cut_value(g: &MaxCutInstance, x: &Bitstring) -> Result<f64> {
    if x.len() != g.num_nodes {
        return Err(Error::LengthMismatch {
            expected: g.num_nodes,
            actual: x.len(),
        });
    }
    Ok(g.edges
        .iter()
        .filter(|&&(u, v, _)| x.get(u) != x.get(v))
        .map(|e| e.2)
        .sum())
}

/// Spin re-encoding with `J_uv = w_uv / 2` and offset `-sum(w) / 2`, so the
/// Ising energy of every assignment is exactly minus its cut value.
pub fn encode_maxcut(g: &MaxCutInstance) -> Result<IsingModel> {
    IsingModel::new(
        g.num_nodes,
        g.edges.iter().map(|&(u, v, w)| (u, v, w / 2.0)),
        std::iter::empty(),
        -g.total_weight() / 2.0,
    )
}
