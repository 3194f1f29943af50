//! `fraxis` command-line interface.
//!
//! Exit codes: 0 success, 1 a `verify` check failed, 2 usage or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fraxis_core::hamiltonian::{petersen, petersen_relax_labels, Graph};

use fraxis::error::{CliError, Result};
use fraxis::experiments::{
    run_expressibility, run_maxcut, run_optimize, write_expressibility, write_maxcut,
    write_optimize, ExpressibilityJson, Formulation, Labels, TrialSettings,
};
use fraxis::formats::{load_graph, load_labels};
use fraxis::specs;
use fraxis::verify::{run_checks, Fault};

#[derive(Parser, Debug)]
#[command(
    name = "fraxis",
    version,
    about = "Free-axis sequential optimization of parametrized circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimize a Hamiltonian over independent seeded trials.
    Optimize {
        /// `toy`, `two-qubit-model`, `heisenberg:n=5,J=1,h=1,periodic`, or a Pauli-sum file.
        #[arg(long)]
        ham: String,
        /// `single`, `two-qubit`, `circuit-a:L=2`, `circuit-b:L=2`, `qubo`, `relax`, or a circuit file.
        #[arg(long)]
        ansatz: String,
        /// `pi-fraxis`, `theta-fraxis[:theta=..]`, `rotosolve` or `rotoselect`.
        #[arg(long, default_value = "pi-fraxis")]
        method: String,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 100)]
        sweeps: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Shots per energy estimate (exact expectation values when omitted).
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Initial axes: `param`, `state`, `keep` or `auto`.
        #[arg(long, default_value = "auto")]
        init: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// KL divergence of the fidelity distribution from the Haar distribution.
    Expressibility {
        #[arg(long)]
        ansatz: String,
        /// `rotosolve`, `rotoselect`, `fraxis-param`, `fraxis-state` or `haar`.
        #[arg(long)]
        sampler: String,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0.001)]
        bin_width: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximize a graph cut with the QUBO or the qubit-packing relaxation.
    Maxcut {
        /// `petersen` or a graph file.
        #[arg(long, default_value = "petersen")]
        graph: String,
        #[arg(long, value_enum, default_value_t = Form::Qubo)]
        form: Form,
        /// Vertex labeling file for the relaxation (builtin for `petersen`).
        #[arg(long)]
        labels: Option<PathBuf>,
        /// Circuit override (defaults to the builtin layout for the formulation).
        #[arg(long)]
        ansatz: Option<String>,
        #[arg(long, default_value = "pi-fraxis")]
        method: String,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 100)]
        sweeps: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "auto")]
        init: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in property checks.
    Verify {
        /// Deliberately break a check (`r-asymmetry`) to exercise the failure path.
        #[arg(long)]
        inject_fault: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Form {
    Qubo,
    Relax,
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn graph(text: &str) -> Result<Graph> {
    if text == "petersen" {
        Ok(petersen())
    } else {
        load_graph(Path::new(text))
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Optimize {
            ham,
            ansatz,
            method,
            trials,
            sweeps,
            tol,
            shots,
            seed,
            init,
            out,
        } => {
            let m = specs::hamiltonian(&ham)?;
            let template = specs::ansatz(&ansatz)?;
            let method = specs::method(&method)?;
            let mut settings = TrialSettings::new(method, specs::axis_init(&init, method)?);
            settings.max_sweeps = sweeps;
            settings.tol = tol;
            settings.shots = shots;
            let labels = Labels {
                hamiltonian: ham,
                ansatz,
            };
            let result = run_optimize(&labels, &template, &m, &settings, trials, seed)?;
            if let Some(dir) = out {
                write_optimize(&dir, &result)?;
            }
            print_json(&result.summary)?;
        }
        Command::Expressibility {
            ansatz,
            sampler,
            samples,
            bin_width,
            seed,
            out,
        } => {
            let template = specs::ansatz(&ansatz)?;
            let sampler = specs::sampler(&sampler)?;
            let (report, hist) =
                run_expressibility(&template, &ansatz, sampler, samples, seed, bin_width)?;
            if let Some(dir) = out {
                write_expressibility(&dir, &report, &hist)?;
            }
            print_json(&ExpressibilityJson::from(&report))?;
        }
        Command::Maxcut {
            graph: name,
            form,
            labels,
            ansatz,
            method,
            trials,
            sweeps,
            tol,
            seed,
            init,
            out,
        } => {
            let g = graph(&name)?;
            let form = match form {
                Form::Qubo => Formulation::Qubo,
                Form::Relax => Formulation::Relax,
            };
            let vertex_labels = match (&labels, form, name.as_str()) {
                (Some(path), _, _) => Some(load_labels(path)?),
                (None, Formulation::Relax, "petersen") => Some(petersen_relax_labels()),
                (None, Formulation::Relax, _) => {
                    return Err(CliError::config(
                        "--labels is required for the relaxation of a graph file",
                    ))
                }
                (None, Formulation::Qubo, _) => None,
            };
            let template = ansatz.as_deref().map(specs::ansatz).transpose()?;
            let method = specs::method(&method)?;
            let mut settings = TrialSettings::new(method, specs::axis_init(&init, method)?);
            settings.max_sweeps = sweeps;
            settings.tol = tol;
            let result = run_maxcut(
                &name,
                &g,
                form,
                vertex_labels.as_deref(),
                template,
                &settings,
                trials,
                seed,
            )?;
            if let Some(dir) = out {
                write_maxcut(&dir, &result)?;
            }
            print_json(&result.summary)?;
        }
        Command::Verify { inject_fault } => {
            let fault = match inject_fault.as_deref() {
                None => None,
                Some(name) => Some(
                    Fault::from_name(name)
                        .ok_or_else(|| CliError::config(format!("unknown fault '{name}'")))?,
                ),
            };
            let results = run_checks(fault);
            let mut ok = true;
            for r in &results {
                println!(
                    "{} {}: {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                );
                ok &= r.passed;
            }
            if !ok {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
