//! Run-to-failure probe: grow the instance, solve the angles classically,
//! run the noisy device `R` times and stop once the compound error exceeds 1
//! or the energy gap exceeds its threshold.

mod generator;
mod stats;

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use generator::{
    generator_by_name, InstanceGenerator, MaxCutPath, MaxCutRandom, MaxCutRing, TspRandom,
};
pub use stats::{approximation_ratio, confidence_interval, normal_quantile, ConfidenceInterval};

use crate::error::{Error, Result};
use crate::landscape::Angles;
use crate::model::IsingModel;
use crate::optimize::{grid_optimize, shgo_optimize, OptimumRecord, Sense, ShgoConfig};
use crate::oracle::{
    energy_from_samples, estimate_two_qubit_gates, noisy_expected_energy, GateCountMode, NoiseSpec,
    Simulator,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimizerChoice {
    #[default]
    Grid,
    Shgo,
}

/// How the gap threshold is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapMode {
    /// `|E_ideal - E_meas| / |E_ideal| > tau`.
    #[default]
    Relative,
    /// `|E_ideal - E_meas| > tau`.
    Absolute,
}

/// Where `E_ideal` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceMode {
    /// The optimizer's closed-form value.
    #[default]
    Analytic,
    /// The noiseless statevector expectation at the optimizer's angles, when
    /// the instance fits the simulator.
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Continue,
    HaltCompound,
    HaltGap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub n_min: usize,
    pub n_step: usize,
    pub n_max: usize,
    pub shots: u64,
    pub runs: usize,
    /// Upper bound on `runs`.
    pub max_runs: usize,
    pub mean_gate_error: f64,
    pub gap_threshold: f64,
    pub gap_mode: GapMode,
    pub gate_count_mode: GateCountMode,
    pub optimizer: OptimizerChoice,
    pub sense: Sense,
    pub reference: ReferenceMode,
    pub statevector_cap: usize,
    pub confidence_level: f64,
    pub seed: u64,
    /// Record wall-clock time; off by default so reports are reproducible.
    pub timing: bool,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            n_min: 4,
            n_step: 2,
            n_max: 16,
            shots: 5000,
            runs: 10,
            max_runs: 10,
            mean_gate_error: 0.01,
            gap_threshold: 0.05,
            gap_mode: GapMode::Relative,
            gate_count_mode: GateCountMode::Cnot,
            optimizer: OptimizerChoice::Grid,
            sense: Sense::Minimize,
            reference: ReferenceMode::Analytic,
            statevector_cap: 16,
            confidence_level: 0.95,
            seed: 42,
            timing: false,
        }
    }
}

impl ProbeConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n_min < 1 {
            return bad("n_min must be at least 1".into());
        }
        if self.n_step < 1 {
            return bad("n_step must be at least 1".into());
        }
        if self.n_max < self.n_min {
            return bad(format!("n_max {} below n_min {}", self.n_max, self.n_min));
        }
        if self.shots < 1 {
            return bad("shots must be at least 1".into());
        }
        if self.runs < 1 || self.runs > self.max_runs {
            return bad(format!("runs {} outside 1..={}", self.runs, self.max_runs));
        }
        if !(0.0..1.0).contains(&self.mean_gate_error) {
            return bad(format!(
                "mean gate error {} outside [0, 1)",
                self.mean_gate_error
            ));
        }
        if !(self.gap_threshold > 0.0 && self.gap_threshold.is_finite()) {
            return bad(format!(
                "gap threshold {} must be positive",
                self.gap_threshold
            ));
        }
        if !(self.confidence_level > 0.0 && self.confidence_level < 1.0) {
            return bad(format!(
                "confidence level {} outside (0, 1)",
                self.confidence_level
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeStepRecord {
    pub n: usize,
    pub qubits: usize,
    pub two_qubit_gates: u64,
    pub compound_error: f64,
    pub depolarizing: f64,
    pub beta: f64,
    pub gamma: f64,
    pub e_ideal: f64,
    pub e_meas: f64,
    pub ci_half_width: f64,
    pub run_means: Vec<f64>,
    pub abs_gap: f64,
    /// `None` when `E_ideal = 0`.
    pub rel_gap: Option<f64>,
    /// Gap predicted by the closed-form noise blend, in the same units as the
    /// halting test.
    pub predicted_gap: f64,
    /// The threshold the gap was compared against.
    pub gap_limit: f64,
    /// Gap value compared against `gap_limit`.
    pub gap_statistic: f64,
    /// Above the statevector cap the device is the closed-form noisy
    /// expectation and no shots are drawn.
    pub analytic_device: bool,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Halt {
    pub step: usize,
    pub n: usize,
    pub reason: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub generator: String,
    pub config: ProbeConfig,
    pub steps: Vec<ProbeStepRecord>,
    pub halt: Option<Halt>,
    pub wall_time: f64,
}

/// splitmix64 finalizer over the master seed and two indices.
pub(crate) fn derive_seed(master: u64, a: u64, b: u64) -> u64 {
    let mut z = master
        ^ a.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ b.wrapping_add(1).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const GENERATOR_STREAM: u64 = u64::MAX;

fn solve(m: &IsingModel, cfg: &ProbeConfig) -> Result<OptimumRecord> {
    match cfg.optimizer {
        OptimizerChoice::Grid => Ok(grid_optimize(m, cfg.sense)),
        OptimizerChoice::Shgo => shgo_optimize(m, &ShgoConfig::default(), cfg.sense),
    }
}

fn step(
    gen: &dyn InstanceGenerator,
    cfg: &ProbeConfig,
    index: usize,
    n: usize,
) -> Result<ProbeStepRecord> {
    let m = gen.generate(n, derive_seed(cfg.seed, index as u64, GENERATOR_STREAM))?;
    let sim = Simulator::new(cfg.statevector_cap);
    let fits = sim.fits(&m);
    let opt = solve(&m, cfg)?;
    let angles: Angles = opt.angles;
    let e_ideal = match cfg.reference {
        ReferenceMode::Oracle if fits => sim.exact_expectation(&m, &angles)?,
        _ => opt.value,
    };

    let gates = estimate_two_qubit_gates(&m, cfg.gate_count_mode);
    let noise = NoiseSpec::new(cfg.mean_gate_error, gates)?;
    let compound_error = gates as f64 * cfg.mean_gate_error;
    let expected = noisy_expected_energy(&m, &angles, &noise, &sim);

    let (run_means, e_meas, half) = if fits {
        let runs: Vec<(f64, f64)> = (0..cfg.runs)
            .into_par_iter()
            .map(|r| {
                let seed = derive_seed(cfg.seed, index as u64, r as u64);
                let samples = sim.sample(&m, &angles, &noise, cfg.shots, seed)?;
                energy_from_samples(&m, &samples)
            })
            .collect::<Result<_>>()?;
        let means: Vec<f64> = runs.iter().map(|r| r.0).collect();
        let ci = confidence_interval(&means, cfg.confidence_level)?;
        let half = if cfg.runs == 1 {
            normal_quantile(cfg.confidence_level)? * runs[0].1
        } else {
            ci.half_width
        };
        (means, ci.mean, half)
    } else {
        (vec![expected; cfg.runs], expected, 0.0)
    };

    let abs_gap = (e_ideal - e_meas).abs();
    let rel_gap = (e_ideal != 0.0).then(|| abs_gap / e_ideal.abs());
    let predicted_abs = (e_ideal - expected).abs();
    let (gap_statistic, gap_limit, predicted_gap) = match (cfg.gap_mode, rel_gap) {
        (GapMode::Relative, Some(rel)) => (rel, cfg.gap_threshold, predicted_abs / e_ideal.abs()),
        // relative gap undefined: fall back to a scale-aware absolute limit
        (GapMode::Relative, None) => (
            abs_gap,
            cfg.gap_threshold * m.abs_weight_sum(),
            predicted_abs,
        ),
        (GapMode::Absolute, _) => (abs_gap, cfg.gap_threshold, predicted_abs),
    };
    let verdict = if compound_error > 1.0 {
        Verdict::HaltCompound
    } else if gap_statistic > gap_limit {
        Verdict::HaltGap
    } else {
        Verdict::Continue
    };

    Ok(ProbeStepRecord {
        n,
        qubits: m.num_spins(),
        two_qubit_gates: gates,
        compound_error,
        depolarizing: noise.depolarizing(),
        beta: angles.beta(),
        gamma: angles.gamma(),
        e_ideal,
        e_meas,
        ci_half_width: half,
        run_means,
        abs_gap,
        rel_gap,
        predicted_gap,
        gap_limit,
        gap_statistic,
        analytic_device: !fits,
        verdict,
    })
}

/// Runs the probe from `n_min` in steps of `n_step` until a threshold is
/// violated or `n_max` is passed. Deterministic in `cfg.seed`.
pub fn run_probe(gen: &dyn InstanceGenerator, cfg: &ProbeConfig) -> Result<ProbeReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut steps = Vec::new();
    let mut halt = None;
    let mut n = cfg.n_min;
    while n <= cfg.n_max {
        let record = step(gen, cfg, steps.len(), n)?;
        let verdict = record.verdict;
        steps.push(record);
        if verdict != Verdict::Continue {
            halt = Some(Halt {
                step: steps.len() - 1,
                n,
                reason: verdict,
            });
            break;
        }
        n += cfg.n_step;
    }
    Ok(ProbeReport {
        generator: gen.name(),
        config: cfg.clone(),
        steps,
        halt,
        wall_time: if cfg.timing {
            start.elapsed().as_secs_f64()
        } else {
            0.0
        },
    })
}

impl ProbeReport {
    /// Checks the halting invariants: at most one halting step, it is the last
    /// one, every earlier step continues, and the recorded reason matches the
    /// step's own statistics.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidInstance(msg));
        let halting: Vec<usize> = self
            .steps
            .iter()
            .enumerate()
            .filter(|(_, s)| s.verdict != Verdict::Continue)
            .map(|(i, _)| i)
            .collect();
        match (&self.halt, halting.as_slice()) {
            (None, []) => {}
            (Some(h), [i]) if h.step == *i && *i + 1 == self.steps.len() => {
                if self.steps[*i].verdict != h.reason || self.steps[*i].n != h.n {
                    return fail("halt record disagrees with its step".into());
                }
            }
            _ => return fail(format!("inconsistent halting steps {halting:?}")),
        }
        for (i, s) in self.steps.iter().enumerate() {
            let over_c = s.compound_error > 1.0;
            let over_gap = s.gap_statistic > s.gap_limit;
            let expect = if over_c {
                Verdict::HaltCompound
            } else if over_gap {
                Verdict::HaltGap
            } else {
                Verdict::Continue
            };
            if s.verdict != expect {
                return fail(format!(
                    "step {i} verdict {:?}, statistics say {expect:?}",
                    s.verdict
                ));
            }
            let c = s.two_qubit_gates as f64 * self.config.mean_gate_error;
            if s.compound_error != c {
                return fail(format!(
                    "step {i} compound error {} != {c}",
                    s.compound_error
                ));
            }
            if let Some(rel) = s.rel_gap {
                if (rel - s.abs_gap / s.e_ideal.abs()).abs() > 1e-12 * rel.max(1.0) {
                    return fail(format!("step {i} relative gap inconsistent"));
                }
            }
        }
        Ok(())
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// One row per step: `N, qubits, N2Q, C, E_ideal, E_meas, ci_half,
    /// rel_gap, verdict`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "N", "qubits", "N2Q", "C", "E_ideal", "E_meas", "ci_half", "rel_gap", "verdict",
        ])?;
        for s in &self.steps {
            let verdict = match s.verdict {
                Verdict::Continue => "continue",
                Verdict::HaltCompound => "halt_compound",
                Verdict::HaltGap => "halt_gap",
            };
            w.write_record([
                s.n.to_string(),
                s.qubits.to_string(),
                s.two_qubit_gates.to_string(),
                s.compound_error.to_string(),
                s.e_ideal.to_string(),
                s.e_meas.to_string(),
                s.ci_half_width.to_string(),
                s.rel_gap.map_or_else(String::new, |g| g.to_string()),
                verdict.to_string(),
            ])?;
        }
        w.flush().map_err(|e| Error::io("csv output", e))?;
        Ok(())
    }
}
