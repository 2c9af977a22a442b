use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use qaoa_probe::catalogue::{
    build_catalogue, compare_grid_shgo, CatalogueConfig, CompareCase, CompareConfig, ProblemType,
    Report, ReportFormat,
};
use qaoa_probe::landscape::{self, landscape_spec, Angles};
use qaoa_probe::model::{load_instance, Instance, IsingJson, IsingModel};
use qaoa_probe::optimize::{
    grid_optimize, shgo_optimize, stationary_scan, OptimumRecord, Sense, ShgoConfig,
};
use qaoa_probe::oracle::{
    energy_from_samples, estimate_two_qubit_gates, repaired_tour, GateCountMode, NoiseSpec,
    SampleSet, SampleSetJson, Simulator,
};
use qaoa_probe::probe::{
    approximation_ratio, generator_by_name, run_probe, GapMode, OptimizerChoice, ProbeConfig,
    ReferenceMode,
};
use qaoa_probe::{Error, Result};

use crate::args::*;

fn problem(p: ProblemArg) -> Result<ProblemType> {
    match p {
        ProblemArg::Maxcut => Ok(ProblemType::Maxcut),
        ProblemArg::Tsp => Ok(ProblemType::Tsp),
        ProblemArg::Ising => Err(Error::InvalidConfig(
            "catalogues take maxcut or tsp instances".into(),
        )),
    }
}

fn gate_mode(g: GateModeArg) -> GateCountMode {
    match g {
        GateModeArg::Logical => GateCountMode::Logical,
        GateModeArg::Cnot => GateCountMode::Cnot,
        GateModeArg::RoutedLine => GateCountMode::RoutedLine,
    }
}

fn optimizer(o: OptimizerArg) -> OptimizerChoice {
    match o {
        OptimizerArg::Grid => OptimizerChoice::Grid,
        OptimizerArg::Shgo => OptimizerChoice::Shgo,
    }
}

fn format(f: FormatArg) -> ReportFormat {
    match f {
        FormatArg::Json => ReportFormat::Json,
        FormatArg::Csv => ReportFormat::Csv,
        FormatArg::Svg => ReportFormat::Svg,
    }
}

fn sense(maximize: bool) -> Sense {
    if maximize {
        Sense::Maximize
    } else {
        Sense::Minimize
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInstance(format!("{}: {e}", path.display())))
}

/// The model plus, for graph and tour files, the instance it encodes.
fn load(a: &InstanceArgs) -> Result<(Option<Instance>, IsingModel)> {
    if a.problem == ProblemArg::Ising {
        let wire: IsingJson = serde_json::from_str(&read(&a.input)?)?;
        return Ok((None, IsingModel::from_json(&wire)?));
    }
    let inst = load_instance(&a.input, problem(a.problem)?.format(!a.no_round))?;
    let model = inst.to_ising()?;
    Ok((Some(inst), model))
}

fn optimum(mut rec: OptimumRecord, timing: bool) -> Result<String> {
    if !timing {
        rec.wall_time = 0.0;
    }
    json(&rec.to_json())
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

/// Score of a sample set; `simulate --summary` and `score` emit the same shape.
#[derive(Debug, Serialize)]
struct Summary {
    shots: u64,
    seed: u64,
    mean_energy: f64,
    std_error: f64,
    most_frequent: String,
    e_ideal: Option<f64>,
    abs_gap: Option<f64>,
    rel_gap: Option<f64>,
    tour: Option<Vec<usize>>,
    tour_length: Option<f64>,
    best_known: Option<f64>,
    approx_ratio: Option<f64>,
    gap_percent: Option<f64>,
}

fn summarize(
    inst: Option<&Instance>,
    m: &IsingModel,
    samples: &SampleSet,
    angles: Option<Angles>,
    best_known: Option<f64>,
) -> Result<Summary> {
    let (mean, se) = energy_from_samples(m, samples)?;
    let e_ideal = angles.map(|a| landscape::energy(m, &a));
    let abs_gap = e_ideal.map(|e| (e - mean).abs());
    let rel_gap = e_ideal
        .zip(abs_gap)
        .and_then(|(e, g)| (e != 0.0).then(|| g / e.abs()));
    let mut s = Summary {
        shots: samples.shots(),
        seed: samples.seed(),
        mean_energy: mean,
        std_error: se,
        most_frequent: samples.mode().to_string(),
        e_ideal,
        abs_gap,
        rel_gap,
        tour: None,
        tour_length: None,
        best_known: None,
        approx_ratio: None,
        gap_percent: None,
    };
    if let Some(Instance::Tsp(t)) = inst {
        let n = t.num_cities();
        // most frequent tour after repair; ties go to the smallest order
        let mut tours: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
        for (b, &c) in samples.counts() {
            *tours.entry(repaired_tour(b, n)?).or_insert(0) += c;
        }
        let (tour, _) =
            tours.into_iter().fold(
                (Vec::new(), 0),
                |best, (t, c)| if c > best.1 { (t, c) } else { best },
            );
        let length = t.tour_length(&tour);
        let best = best_known.or_else(|| t.optimal_tour().map(|(_, l)| l));
        if let Some(best) = best {
            let (ratio, gap) = approximation_ratio(best, length)?;
            s.approx_ratio = Some(ratio);
            s.gap_percent = Some(gap);
        }
        s.tour = Some(tour);
        s.tour_length = Some(length);
        s.best_known = best;
    }
    Ok(s)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    std::fs::write(path, text)
        .map_err(|e| Error::InvalidInstance(format!("{}: {e}", path.display())))
}

fn parse_case(s: &str) -> Result<CompareCase> {
    let bad = || Error::InvalidConfig(format!("size '{s}' is not n or n:edges"));
    let (n, edges) = match s.split_once(':') {
        Some((n, m)) => (n, Some(m.trim().parse().map_err(|_| bad())?)),
        None => (s, None),
    };
    Ok(CompareCase {
        n: n.trim().parse().map_err(|_| bad())?,
        edges,
    })
}

/// Runs one subcommand and returns the text for standard output or `--out`.
pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Encode(a) => json(&load(a)?.1.to_json()),
        Command::Landscape(a) => json(&landscape_spec(&load(a)?.1)),
        Command::GridOpt(a) => {
            let (_, m) = load(&a.instance)?;
            optimum(grid_optimize(&m, sense(a.maximize)), a.timing)
        }
        Command::ShgoOpt(a) => {
            let (_, m) = load(&a.opt.instance)?;
            let cfg = ShgoConfig {
                epsilon: a.epsilon,
                sobol_points: a.sobol_points,
                max_points: a.max_points,
                neighbor_count: a.neighbors,
                max_evaluations: a.max_evals,
                ..ShgoConfig::default()
            };
            optimum(
                shgo_optimize(&m, &cfg, sense(a.opt.maximize))?,
                a.opt.timing,
            )
        }
        Command::Stationary(a) => {
            if a.tol.is_nan() || a.tol <= 0.0 {
                return Err(Error::InvalidConfig("--tol must be positive".into()));
            }
            json(&stationary_scan(&load(&a.instance)?.1, a.tol))
        }
        Command::Simulate(a) => {
            let (inst, m) = load(&a.instance)?;
            let angles = Angles::new(a.beta, a.gamma)?;
            let gates = estimate_two_qubit_gates(&m, gate_mode(a.device.gate_mode));
            let noise = NoiseSpec::new(a.device.eps, gates)?;
            let samples =
                Simulator::new(a.device.cap).sample(&m, &angles, &noise, a.shots, cli.seed)?;
            if let Some(path) = &a.summary {
                let s = summarize(inst.as_ref(), &m, &samples, Some(angles), None)?;
                write_file(path, &json(&s)?)?;
            }
            json(&samples.to_json())
        }
        Command::Score(a) => {
            let (inst, m) = load(&a.instance)?;
            let text = read(&a.samples)?;
            let wire: SampleSetJson = serde_json::from_str(&text)?;
            let samples = SampleSet::from_json(&wire)?;
            if samples.num_qubits() != m.num_spins() {
                return Err(Error::LengthMismatch {
                    expected: m.num_spins(),
                    actual: samples.num_qubits(),
                });
            }
            let angles = match (a.beta, a.gamma) {
                (Some(b), Some(g)) => Some(Angles::new(b, g)?),
                _ => None,
            };
            json(&summarize(
                inst.as_ref(),
                &m,
                &samples,
                angles,
                a.best_known,
            )?)
        }
        Command::Probe(a) => {
            let gen = generator_by_name(&a.problem)?;
            let cfg = ProbeConfig {
                n_min: a.nmin,
                n_step: a.nstep,
                n_max: a.nmax,
                shots: a.shots,
                runs: a.runs,
                max_runs: a.max_runs,
                mean_gate_error: a.eps,
                gap_threshold: a.gap_threshold,
                gap_mode: match a.gap_mode {
                    GapModeArg::Relative => GapMode::Relative,
                    GapModeArg::Absolute => GapMode::Absolute,
                },
                gate_count_mode: gate_mode(a.gate_mode),
                optimizer: optimizer(a.optimizer),
                reference: match a.reference {
                    ReferenceArg::Analytic => ReferenceMode::Analytic,
                    ReferenceArg::Oracle => ReferenceMode::Oracle,
                },
                statevector_cap: a.cap,
                seed: cli.seed,
                timing: a.timing,
                ..ProbeConfig::default()
            };
            let report = run_probe(gen.as_ref(), &cfg)?;
            Report::Probe(vec![report]).render(format(a.format))
        }
        Command::Catalogue(a) => {
            let cfg = CatalogueConfig {
                optimizer: optimizer(a.optimizer),
                sense: sense(a.maximize),
                gate_mode: gate_mode(a.gate_mode),
                round_distances: !a.no_round,
                timing: a.timing,
                ..CatalogueConfig::default()
            };
            let entries = build_catalogue(&a.dir, problem(a.problem)?, &cfg)?;
            Report::Catalogue(entries).render(format(a.format))
        }
        Command::Compare(a) => {
            let cases = a
                .sizes
                .iter()
                .map(|s| parse_case(s))
                .collect::<Result<Vec<_>>>()?;
            if !(0.0..=1.0).contains(&a.edge_prob) {
                return Err(Error::InvalidConfig(format!(
                    "--edge-prob {} outside [0, 1]",
                    a.edge_prob
                )));
            }
            let cfg = CompareConfig {
                edge_probability: a.edge_prob,
                seed: cli.seed,
                shgo: ShgoConfig {
                    epsilon: a.epsilon,
                    ..ShgoConfig::default()
                },
                timing: a.timing,
            };
            Report::Comparison(compare_grid_shgo(&cases, &cfg)?).render(format(a.format))
        }
        Command::Report(a) => {
            let mut probes = Vec::new();
            let mut other = None;
            for path in &a.inputs {
                let text = read(path)?;
                match Report::from_json_str(&text)? {
                    Report::Probe(rs) => probes.extend(rs),
                    r if a.inputs.len() == 1 => other = Some(r),
                    _ => {
                        return Err(Error::InvalidConfig(
                            "only probe reports can be combined".into(),
                        ))
                    }
                }
            }
            other
                .unwrap_or(Report::Probe(probes))
                .render(format(a.format))
        }
    }
}
