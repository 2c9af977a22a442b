use crate::error::{Error, Result};
use crate::model::{
    default_penalty, encode_maxcut, encode_tsp, qubo_to_ising, IsingModel, MaxCutInstance,
    TspInstance,
};

/// Produces the instance probed at problem size `n`.
pub trait InstanceGenerator: Send + Sync {
    fn name(&self) -> String;

    fn generate(&self, n: usize, seed: u64) -> Result<IsingModel>;
}

/// Unweighted MaxCut on the path `0 - 1 - ... - n-1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaxCutPath;

/// Unweighted MaxCut on the `n`-cycle.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaxCutRing;

/// Weighted MaxCut on `G(n, p)`.
#[derive(Debug, Clone, Copy)]
pub struct MaxCutRandom {
    pub edge_probability: f64,
}

/// One-hot TSP on `n` random Euclidean cities (`n^2` qubits).
#[derive(Debug, Clone, Copy, Default)]
pub struct TspRandom;

impl InstanceGenerator for MaxCutPath {
    fn name(&self) -> String {
        "maxcut-path".into()
    }

    fn generate(&self, n: usize, _seed: u64) -> Result<IsingModel> {
        encode_maxcut(&MaxCutInstance::path(n)?)
    }
}

impl InstanceGenerator for MaxCutRing {
    fn name(&self) -> String {
        "maxcut-ring".into()
    }

    fn generate(&self, n: usize, _seed: u64) -> Result<IsingModel> {
        encode_maxcut(&MaxCutInstance::ring(n)?)
    }
}

impl InstanceGenerator for MaxCutRandom {
    fn name(&self) -> String {
        format!("maxcut-gnp:{}", self.edge_probability)
    }

    fn generate(&self, n: usize, seed: u64) -> Result<IsingModel> {
        encode_maxcut(&MaxCutInstance::random_gnp(n, self.edge_probability, seed)?)
    }
}

impl InstanceGenerator for TspRandom {
    fn name(&self) -> String {
        "tsp-random".into()
    }

    fn generate(&self, n: usize, seed: u64) -> Result<IsingModel> {
        let t = TspInstance::random_euclidean(n, seed)?;
        qubo_to_ising(&encode_tsp(&t, default_penalty(&t))?)
    }
}

/// Looks up a generator by its command-line name: `maxcut-path`,
/// `maxcut-ring`, `maxcut-gnp[:p]` (default `p = 0.5`) or `tsp-random`.
pub fn generator_by_name(name: &str) -> Result<Box<dyn InstanceGenerator>> {
    match name {
        "maxcut-path" | "path" => Ok(Box::new(MaxCutPath)),
        "maxcut-ring" | "ring" => Ok(Box::new(MaxCutRing)),
        "tsp-random" | "tsp" => Ok(Box::new(TspRandom)),
        "maxcut-gnp" => Ok(Box::new(MaxCutRandom {
            edge_probability: 0.5,
        })),
        other => match other.strip_prefix("maxcut-gnp:") {
            Some(p) => {
                let p: f64 = p.parse().map_err(|_| {
                    Error::InvalidConfig(format!("bad edge probability in '{other}'"))
                })?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidConfig(format!(
                        "edge probability {p} outside [0, 1]"
                    )));
                }
                Ok(Box::new(MaxCutRandom {
                    edge_probability: p,
                }))
            }
            None => Err(Error::InvalidConfig(format!("unknown generator '{other}'"))),
        },
    }
}
