//! Seeded experiment runners behind the CLI subcommands.
//!
//! Trial `i` of a run with base seed `s` uses `ChaCha8Rng::seed_from_u64(s + i)`:
//! stream 0 draws the initial parameters and stream 1 drives shot sampling.
//! Trials run on a rayon pool and are collected in trial order, so output does
//! not depend on the number of threads.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use fraxis_core::circuit::{Circuit, FixedGate};
use fraxis_core::expressibility::{
    chunk_count, report_for, sample_chunk, ExpressibilityReport, FidelityHistogram, Sampler,
};
use fraxis_core::hamiltonian::{
    cut_value, ground_energy, max_cut_brute_force, maxcut_qubo, maxcut_relax, Graph, PauliString,
    PauliSum, VertexLabel, GROUND_ENERGY_MAX_QUBITS,
};
use fraxis_core::optimizers::{sweep, Evaluator, Method, SweepConfig, Termination, Trajectory};
use fraxis_core::sampling::AxisInit;
use fraxis_core::statevector::{Axis, TwoQubitKind};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::formats::{write_histogram_csv, write_trajectory_csv};

/// Environment variable holding the worker thread count (unset or 0: one per core).
pub const THREADS_ENV: &str = "FRAXIS_THREADS";

/// Thread pool sized from [`THREADS_ENV`].
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| {
            CliError::config(format!(
                "{THREADS_ENV} must be a non-negative integer, got '{v}'"
            ))
        })?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::config(format!("cannot start thread pool: {e}")))
}

fn init_name(init: AxisInit) -> &'static str {
    match init {
        AxisInit::ParameterRandom => "param",
        AxisInit::StateRandom => "state",
        AxisInit::Fixed(_) => "fixed",
        AxisInit::Keep => "keep",
    }
}

/// Settings shared by every trial of a run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrialSettings {
    pub method: Method,
    pub init: AxisInit,
    pub max_sweeps: usize,
    pub tol: f64,
    pub shots: Option<u64>,
}

impl TrialSettings {
    pub fn new(method: Method, init: AxisInit) -> Self {
        TrialSettings {
            method,
            init,
            max_sweeps: 100,
            tol: 1e-8,
            shots: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TrialOutcome {
    pub trial: usize,
    pub seed: u64,
    pub trajectory: Trajectory,
    /// Circuit with the optimized parameters.
    pub circuit: Circuit,
}

/// Randomizes a copy of `template` from `seed` and sweeps it.
pub fn run_trial(
    template: &Circuit,
    m: &PauliSum,
    settings: &TrialSettings,
    trial: usize,
    seed: u64,
) -> Result<TrialOutcome> {
    let mut init_rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = template.clone();
    c.randomize(settings.init, None, &mut init_rng);
    let mut eval = match settings.shots {
        None => Evaluator::exact(),
        Some(k) => {
            let mut shot_rng = ChaCha8Rng::seed_from_u64(seed);
            shot_rng.set_stream(1);
            Evaluator::with_shots_rng(k, shot_rng)?
        }
    };
    let cfg = SweepConfig {
        method: settings.method,
        max_sweeps: settings.max_sweeps,
        tol: settings.tol,
    };
    let trajectory = sweep(&mut c, m, &cfg, &mut eval)?;
    Ok(TrialOutcome {
        trial,
        seed,
        trajectory,
        circuit: c,
    })
}

/// Runs `trials` trials with seeds `seed, seed + 1, ...` in parallel.
pub fn run_trials(
    template: &Circuit,
    m: &PauliSum,
    settings: &TrialSettings,
    trials: usize,
    seed: u64,
) -> Result<Vec<TrialOutcome>> {
    if m.n_qubits() != template.n_qubits() {
        return Err(CliError::config(format!(
            "Hamiltonian acts on {} qubits but the ansatz has {}",
            m.n_qubits(),
            template.n_qubits()
        )));
    }
    thread_pool()?.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|i| run_trial(template, m, settings, i, seed.wrapping_add(i as u64)))
            .collect()
    })
}

/// Order statistics of a sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub mean: f64,
    pub min: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub max: f64,
}

impl Stats {
    /// `None` for an empty sample. Quantiles interpolate linearly.
    pub fn of(values: &[f64]) -> Option<Stats> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let q = |p: f64| {
            let x = p * (v.len() - 1) as f64;
            let (lo, hi) = (x.floor() as usize, x.ceil() as usize);
            v[lo] + (v[hi] - v[lo]) * (x - lo as f64)
        };
        Some(Stats {
            mean: v.iter().sum::<f64>() / v.len() as f64,
            min: v[0],
            q25: q(0.25),
            median: q(0.5),
            q75: q(0.75),
            max: v[v.len() - 1],
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizeSummary {
    pub hamiltonian: String,
    pub ansatz: String,
    pub method: String,
    pub init: String,
    pub trials: usize,
    pub max_sweeps: usize,
    pub tol: f64,
    pub shots: Option<u64>,
    pub seed: u64,
    pub n_qubits: usize,
    pub param_slots: usize,
    pub evaluations_per_update: u64,
    pub final_energies: Vec<f64>,
    pub sweeps_run: Vec<usize>,
    pub converged: Vec<bool>,
    pub final_energy: Option<Stats>,
    pub exact_ground_energy: Option<f64>,
    pub total_updates: usize,
    pub total_evaluations: u64,
}

pub struct OptimizeRun {
    pub trials: Vec<TrialOutcome>,
    pub summary: OptimizeSummary,
}

/// Names recorded in summaries alongside the numeric settings.
#[derive(Clone, Debug, PartialEq)]
pub struct Labels {
    pub hamiltonian: String,
    pub ansatz: String,
}

pub fn run_optimize(
    labels: &Labels,
    template: &Circuit,
    m: &PauliSum,
    settings: &TrialSettings,
    trials: usize,
    seed: u64,
) -> Result<OptimizeRun> {
    let outcomes = run_trials(template, m, settings, trials, seed)?;
    let exact_ground_energy = if m.n_qubits() <= GROUND_ENERGY_MAX_QUBITS {
        Some(ground_energy(m)?.0)
    } else {
        None
    };
    let final_energies: Vec<f64> = outcomes
        .iter()
        .map(|t| t.trajectory.final_energy())
        .collect();
    let summary = OptimizeSummary {
        hamiltonian: labels.hamiltonian.clone(),
        ansatz: labels.ansatz.clone(),
        method: settings.method.to_string(),
        init: init_name(settings.init).to_string(),
        trials,
        max_sweeps: settings.max_sweeps,
        tol: settings.tol,
        shots: settings.shots,
        seed,
        n_qubits: template.n_qubits(),
        param_slots: template.param_count(),
        evaluations_per_update: settings.method.evaluations_per_update(),
        final_energy: Stats::of(&final_energies),
        final_energies,
        sweeps_run: outcomes.iter().map(|t| t.trajectory.sweeps()).collect(),
        converged: outcomes
            .iter()
            .map(|t| matches!(t.trajectory.status, Termination::Converged { .. }))
            .collect(),
        exact_ground_energy,
        total_updates: outcomes.iter().map(|t| t.trajectory.records.len()).sum(),
        total_evaluations: outcomes
            .iter()
            .map(|t| t.trajectory.total_evaluations())
            .sum(),
    };
    Ok(OptimizeRun {
        trials: outcomes,
        summary,
    })
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).map_err(|e| CliError::from(e).in_file(path))?,
    ))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    std::io::Write::write_all(&mut w, b"\n")?;
    Ok(())
}

/// Writes `trial_NNNN.csv` per trial and `summary.json` into `dir`.
pub fn write_optimize(dir: &Path, run: &OptimizeRun) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::from(e).in_file(dir))?;
    for t in &run.trials {
        let path = dir.join(format!("trial_{:04}.csv", t.trial));
        write_trajectory_csv(create(&path)?, &t.trajectory)?;
    }
    write_json(&dir.join("summary.json"), &run.summary)
}

/// Serializable form of an [`ExpressibilityReport`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpressibilityJson {
    pub kl_divergence: f64,
    pub ansatz: String,
    pub sampler: String,
    pub n_qubits: usize,
    pub samples: usize,
    pub bin_width: f64,
    pub seed: u64,
}

impl From<&ExpressibilityReport> for ExpressibilityJson {
    fn from(r: &ExpressibilityReport) -> Self {
        ExpressibilityJson {
            kl_divergence: r.kl_divergence,
            ansatz: r.ansatz.clone(),
            sampler: r.sampler.name().to_string(),
            n_qubits: r.n_qubits,
            samples: r.samples,
            bin_width: r.bin_width,
            seed: r.seed,
        }
    }
}

/// Samples fidelities chunk-parallel and scores them; identical to the
/// sequential [`fraxis_core::expressibility::sample_fidelities`].
pub fn run_expressibility(
    template: &Circuit,
    ansatz: &str,
    sampler: Sampler,
    samples: usize,
    seed: u64,
    bin_width: f64,
) -> Result<(ExpressibilityReport, FidelityHistogram)> {
    if samples == 0 {
        return Err(fraxis_core::Error::ZeroSamples.into());
    }
    let chunks: Vec<FidelityHistogram> = thread_pool()?.install(|| {
        (0..chunk_count(samples))
            .into_par_iter()
            .map(|k| sample_chunk(template, sampler, samples, seed, k, bin_width))
            .collect::<fraxis_core::Result<_>>()
    })?;
    let mut hist = FidelityHistogram::new(bin_width)?;
    for h in &chunks {
        hist.merge(h)?;
    }
    let report = report_for(template, ansatz, sampler, seed, &hist)?;
    Ok((report, hist))
}

/// Writes `report.json` and `histogram.csv` into `dir`.
pub fn write_expressibility(
    dir: &Path,
    report: &ExpressibilityReport,
    hist: &FidelityHistogram,
) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::from(e).in_file(dir))?;
    write_json(&dir.join("report.json"), &ExpressibilityJson::from(report))?;
    write_histogram_csv(create(&dir.join("histogram.csv"))?, hist)?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formulation {
    /// One qubit per vertex, diagonal Hamiltonian.
    Qubo,
    /// Vertices packed onto qubits through Pauli labels.
    Relax,
}

/// `H` on every qubit, a CX ring, one parametrized column.
pub fn qubo_circuit(n: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n)?;
    for q in 0..n {
        c.push_fixed(q, FixedGate::H)?;
    }
    if n > 1 {
        for q in 0..n {
            c.push_entangler(TwoQubitKind::Cx, q, (q + 1) % n)?;
        }
    }
    for q in 0..n {
        c.push_param(q, Axis::Y, 0.0)?;
    }
    Ok(c)
}

/// Parametrized column, CZ ring, parametrized column.
pub fn relax_circuit(n: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n)?;
    for q in 0..n {
        c.push_param(q, Axis::Y, 0.0)?;
    }
    if n > 1 {
        for q in 0..n {
            let t = (q + 1) % n;
            // A two-qubit ring has one bond.
            if n == 2 && q == 1 {
                break;
            }
            c.push_entangler(TwoQubitKind::Cz, q, t)?;
        }
    }
    for q in 0..n {
        c.push_param(q, Axis::Y, 0.0)?;
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxcutRow {
    pub trial: usize,
    pub sweep: usize,
    pub expected_cut: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxcutSummary {
    pub graph: String,
    pub form: Formulation,
    pub method: String,
    pub trials: usize,
    pub max_sweeps: usize,
    pub seed: u64,
    pub n_vertices: usize,
    pub n_edges: usize,
    pub n_qubits: usize,
    /// Exhaustive optimum (graphs up to 24 vertices).
    pub optimum: Option<usize>,
    /// Mean expected cut after each sweep (index 0: before the first update);
    /// trials that stopped early contribute their final value.
    pub mean_expected_cut_by_sweep: Vec<f64>,
    pub final_expected_cuts: Vec<f64>,
    pub final_expected_cut: Option<Stats>,
    /// Only for the relaxation: cut of `m_i = sign(<W_i>)` (zero maps to +1).
    /// This is a sign-rounding surrogate, not magic-state rounding.
    pub rounding: Option<String>,
    pub rounded_cuts: Option<Vec<usize>>,
    pub total_evaluations: u64,
}

pub struct MaxcutRun {
    pub rows: Vec<MaxcutRow>,
    pub summary: MaxcutSummary,
    pub trials: Vec<TrialOutcome>,
}

pub const SIGN_ROUNDING: &str = "sign-rounding surrogate";

/// Spins `sign(<W_i>)` read from the optimized state (zero maps to +1).
pub fn sign_round(c: &Circuit, labels: &[VertexLabel]) -> Result<Vec<i8>> {
    let state = c.evaluate()?;
    let n = c.n_qubits();
    labels
        .iter()
        .map(|l| {
            let w = PauliSum::from_terms(
                n,
                [(1.0, PauliString::from_sparse(n, &[(l.qubit, l.pauli)])?)],
            )?;
            Ok(if w.expectation(&state)? < 0.0 { -1 } else { 1 })
        })
        .collect()
}

/// Maximizes the cut Hamiltonian (internally minimizing its negation) and
/// reports expected cut values per sweep.
#[allow(clippy::too_many_arguments)]
pub fn run_maxcut(
    graph_name: &str,
    g: &Graph,
    form: Formulation,
    labels: Option<&[VertexLabel]>,
    ansatz: Option<Circuit>,
    settings: &TrialSettings,
    trials: usize,
    seed: u64,
) -> Result<MaxcutRun> {
    let cut_h = match form {
        Formulation::Qubo => maxcut_qubo(g)?,
        Formulation::Relax => {
            let labels =
                labels.ok_or_else(|| CliError::config("the relaxation needs a vertex labeling"))?;
            maxcut_relax(g, labels)?
        }
    };
    let template = match ansatz {
        Some(c) => c,
        None => match form {
            Formulation::Qubo => qubo_circuit(cut_h.n_qubits())?,
            Formulation::Relax => relax_circuit(cut_h.n_qubits())?,
        },
    };
    let m = cut_h.scaled(-1.0);
    let outcomes = run_trials(&template, &m, settings, trials, seed)?;

    let mut rows = Vec::new();
    let mut curves: Vec<Vec<f64>> = Vec::new();
    for t in &outcomes {
        let mut curve = vec![-t.trajectory.initial_energy];
        curve.extend(t.trajectory.sweep_energies().iter().map(|e| -e));
        for (sweep, &cut) in curve.iter().enumerate() {
            rows.push(MaxcutRow {
                trial: t.trial,
                sweep,
                expected_cut: cut,
            });
        }
        curves.push(curve);
    }
    let longest = curves.iter().map(Vec::len).max().unwrap_or(0);
    let mean_by_sweep = (0..longest)
        .map(|k| curves.iter().map(|c| c[k.min(c.len() - 1)]).sum::<f64>() / curves.len() as f64)
        .collect();
    let final_cuts: Vec<f64> = outcomes
        .iter()
        .map(|t| -t.trajectory.final_energy())
        .collect();
    let rounded_cuts = match (form, labels) {
        (Formulation::Relax, Some(labels)) => Some(
            outcomes
                .iter()
                .map(|t| Ok(cut_value(g, &sign_round(&t.circuit, labels)?)?))
                .collect::<Result<Vec<usize>>>()?,
        ),
        _ => None,
    };
    let optimum = if g.n_vertices() <= 24 {
        Some(max_cut_brute_force(g)?.0)
    } else {
        None
    };
    let summary = MaxcutSummary {
        graph: graph_name.to_string(),
        form,
        method: settings.method.to_string(),
        trials,
        max_sweeps: settings.max_sweeps,
        seed,
        n_vertices: g.n_vertices(),
        n_edges: g.edges().len(),
        n_qubits: template.n_qubits(),
        optimum,
        mean_expected_cut_by_sweep: mean_by_sweep,
        final_expected_cut: Stats::of(&final_cuts),
        final_expected_cuts: final_cuts,
        rounding: rounded_cuts.as_ref().map(|_| SIGN_ROUNDING.to_string()),
        rounded_cuts,
        total_evaluations: outcomes
            .iter()
            .map(|t| t.trajectory.total_evaluations())
            .sum(),
    };
    Ok(MaxcutRun {
        rows,
        summary,
        trials: outcomes,
    })
}

/// Writes `cuts.csv` (`trial,sweep,expected_cut`) and `summary.json` into `dir`.
pub fn write_maxcut(dir: &Path, run: &MaxcutRun) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::from(e).in_file(dir))?;
    let mut w = create(&dir.join("cuts.csv"))?;
    std::io::Write::write_all(&mut w, b"trial,sweep,expected_cut\n")?;
    for r in &run.rows {
        std::io::Write::write_all(
            &mut w,
            format!("{},{},{}\n", r.trial, r.sweep, r.expected_cut).as_bytes(),
        )?;
    }
    drop(w);
    write_json(&dir.join("summary.json"), &run.summary)
}
