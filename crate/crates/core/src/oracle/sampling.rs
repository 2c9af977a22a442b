use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{NoiseSpec, Simulator};
use crate::error::{Error, Result};
use crate::landscape::Angles;
use crate::model::{classical_energy, Bitstring, IsingModel};

/// Measured bitstrings of one run, with counts summing to `shots`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    shots: u64,
    seed: u64,
    counts: BTreeMap<Bitstring, u64>,
}

/// Wire form `{"shots": M, "seed": s, "counts": {"0101": k}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSetJson {
    pub shots: u64,
    pub seed: u64,
    pub counts: BTreeMap<String, u64>,
}

impl SampleSet {
    /// Validates that counts are positive, keys share one length and the
    /// total equals `shots`.
    pub fn new(shots: u64, seed: u64, counts: BTreeMap<Bitstring, u64>) -> Result<Self> {
        if shots == 0 {
            return Err(Error::InvalidInstance("sample set has no shots".into()));
        }
        let total: u64 = counts.values().sum();
        if total != shots {
            return Err(Error::InvalidInstance(format!(
                "counts sum to {total}, expected {shots} shots"
            )));
        }
        if counts.values().any(|&c| c == 0) {
            return Err(Error::InvalidInstance("zero count in sample set".into()));
        }
        let mut lengths = counts.keys().map(Bitstring::len);
        if let Some(first) = lengths.next() {
            if lengths.any(|l| l != first) {
                return Err(Error::InvalidInstance("bitstrings of mixed length".into()));
            }
        }
        Ok(SampleSet {
            shots,
            seed,
            counts,
        })
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn counts(&self) -> &BTreeMap<Bitstring, u64> {
        &self.counts
    }

    pub fn num_qubits(&self) -> usize {
        self.counts.keys().next().map_or(0, Bitstring::len)
    }

    /// Most frequent bitstring; ties go to the smallest.
    pub fn mode(&self) -> &Bitstring {
        self.counts
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map(|(b, _)| b)
            .expect("sample sets are never empty")
    }

    pub fn to_json(&self) -> SampleSetJson {
        SampleSetJson {
            shots: self.shots,
            seed: self.seed,
            counts: self
                .counts
                .iter()
                .map(|(b, &c)| (b.to_string(), c))
                .collect(),
        }
    }

    pub fn from_json(json: &SampleSetJson) -> Result<Self> {
        let counts = json
            .counts
            .iter()
            .map(|(k, &v)| Ok((k.parse::<Bitstring>()?, v)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        SampleSet::new(json.shots, json.seed, counts)
    }
}

impl Simulator {
    /// Draws `shots` measurements. Each shot is uniformly random with
    /// probability `p_dep` and otherwise follows `|psi_z|^2`. Deterministic in
    /// `seed`.
    pub fn sample(
        &self,
        m: &IsingModel,
        a: &Angles,
        noise: &NoiseSpec,
        shots: u64,
        seed: u64,
    ) -> Result<SampleSet> {
        if shots == 0 {
            return Err(Error::InvalidConfig("shots must be at least 1".into()));
        }
        let probs = self.qaoa_state(m, a)?.probabilities();
        let cdf: Vec<f64> = probs
            .iter()
            .scan(0.0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect();
        let total = *cdf.last().expect("state has at least one amplitude");
        let dim = cdf.len();
        let p_dep = noise.depolarizing();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut hits: BTreeMap<usize, u64> = BTreeMap::new();
        for _ in 0..shots {
            let idx = if p_dep > 0.0 && rng.random::<f64>() < p_dep {
                rng.random_range(0..dim)
            } else {
                let u = rng.random::<f64>() * total;
                cdf.partition_point(|&c| c <= u).min(dim - 1)
            };
            *hits.entry(idx).or_insert(0) += 1;
        }
        let n = m.num_spins();
        let counts = hits
            .into_iter()
            .map(|(idx, c)| (Bitstring::from_index(idx, n), c))
            .collect();
        SampleSet::new(shots, seed, counts)
    }
}

/// Count-weighted mean energy and the shot-level standard error of the mean.
pub fn energy_from_samples(m: &IsingModel, s: &SampleSet) -> Result<(f64, f64)> {
    let mut weighted = Vec::with_capacity(s.counts.len());
    for (b, &c) in &s.counts {
        weighted.push((classical_energy(m, b)?, c as f64));
    }
    let shots = s.shots as f64;
    let mean = weighted.iter().map(|(e, c)| e * c).sum::<f64>() / shots;
    if s.shots < 2 {
        return Ok((mean, 0.0));
    }
    let var = weighted
        .iter()
        .map(|(e, c)| c * (e - mean) * (e - mean))
        .sum::<f64>()
        / (shots - 1.0);
    Ok((mean, (var / shots).sqrt()))
}

#[cfg(test)]
mod tests {
    use statrs::distribution::{ChiSquared, ContinuousCDF};

    use super::*;
    use crate::model::{encode_maxcut, MaxCutInstance};

    fn counts(pairs: &[(&str, u64)]) -> BTreeMap<Bitstring, u64> {
        pairs
            .iter()
            .map(|(b, c)| (b.parse().unwrap(), *c))
            .collect()
    }

    #[test]
    fn single_bitstring_has_zero_error() {
        let m = IsingModel::new(2, vec![(0, 1, 1.0)], vec![], 0.25).unwrap();
        let s = SampleSet::new(10, 0, counts(&[("01", 10)])).unwrap();
        assert_eq!(energy_from_samples(&m, &s).unwrap(), (-0.75, 0.0));
    }

    #[test]
    fn even_split_averages() {
        let m = IsingModel::new(1, vec![], vec![(0, -1.0)], 1.0).unwrap();
        let s = SampleSet::new(4, 0, counts(&[("0", 2), ("1", 2)])).unwrap();
        assert_eq!(energy_from_samples(&m, &s).unwrap().0, 1.0);
    }

    #[test]
    fn matches_per_shot_enumeration() {
        let g = MaxCutInstance::random_gnp(5, 0.7, 2).unwrap();
        let m = encode_maxcut(&g).unwrap();
        let s = Simulator::default()
            .sample(
                &m,
                &Angles::new(0.3, 0.9).unwrap(),
                &NoiseSpec::noiseless(),
                777,
                5,
            )
            .unwrap();
        // expand back into individual shots
        let shots: Vec<f64> = s
            .counts()
            .iter()
            .flat_map(|(b, &c)| std::iter::repeat_n(classical_energy(&m, b).unwrap(), c as usize))
            .collect();
        let mean = shots.iter().sum::<f64>() / shots.len() as f64;
        let var = shots.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (shots.len() - 1) as f64;
        let (got_mean, got_se) = energy_from_samples(&m, &s).unwrap();
        assert!((got_mean - mean).abs() < 1e-12);
        assert!((got_se - (var / shots.len() as f64).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rejects_inconsistent_sets() {
        assert!(SampleSet::new(3, 0, counts(&[("01", 2)])).is_err());
        assert!(SampleSet::new(3, 0, counts(&[("01", 2), ("1", 1)])).is_err());
        assert!(SampleSet::new(0, 0, BTreeMap::new()).is_err());
        let json: SampleSetJson =
            serde_json::from_str(r#"{"shots":2,"seed":1,"counts":{"0x":2}}"#).unwrap();
        assert!(SampleSet::from_json(&json).is_err());
    }

    #[test]
    fn seeded_sampling_is_reproducible_and_round_trips() {
        let g = MaxCutInstance::ring(6).unwrap();
        let m = encode_maxcut(&g).unwrap();
        let sim = Simulator::default();
        let a = Angles::new(0.4, 2.0).unwrap();
        let noise = NoiseSpec::new(0.02, 12).unwrap();
        let s1 = sim.sample(&m, &a, &noise, 2000, 99).unwrap();
        let s2 = sim.sample(&m, &a, &noise, 2000, 99).unwrap();
        assert_eq!(s1, s2);
        let text = serde_json::to_string(&s1.to_json()).unwrap();
        let back = SampleSet::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, s1);
        assert_ne!(sim.sample(&m, &a, &noise, 2000, 100).unwrap(), s1);
    }

    #[test]
    fn noiseless_counts_pass_chi_square() {
        let g = MaxCutInstance::random_gnp(8, 0.5, 6).unwrap();
        let m = encode_maxcut(&g).unwrap();
        let sim = Simulator::default();
        let a = Angles::new(0.35, 1.7).unwrap();
        let probs = sim.qaoa_state(&m, &a).unwrap().probabilities();
        let shots = 100_000u64;
        let s = sim
            .sample(&m, &a, &NoiseSpec::noiseless(), shots, 4)
            .unwrap();
        // pool cells with expected count below 5
        let mut stat = 0.0;
        let mut cells = 0;
        let (mut pool_exp, mut pool_obs) = (0.0, 0.0);
        for (idx, &p) in probs.iter().enumerate() {
            let exp = p * shots as f64;
            let obs = *s.counts().get(&Bitstring::from_index(idx, 8)).unwrap_or(&0) as f64;
            if exp < 5.0 {
                pool_exp += exp;
                pool_obs += obs;
            } else {
                stat += (obs - exp).powi(2) / exp;
                cells += 1;
            }
        }
        if pool_exp > 0.0 {
            stat += (pool_obs - pool_exp).powi(2) / pool_exp;
            cells += 1;
        }
        let p_value = 1.0 - ChiSquared::new((cells - 1) as f64).unwrap().cdf(stat);
        assert!(
            p_value > 0.001,
            "chi2 {stat} on {cells} cells, p = {p_value}"
        );
    }
}
