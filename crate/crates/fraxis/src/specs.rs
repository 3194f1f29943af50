//! Parsing of builtin names used on the command line.
//!
//! A spec is `name` or `name:key=value,key=value,flag`. Anything that is not a
//! builtin name is read as a file path.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use fraxis_core::circuit::{
    circuit_a, circuit_b, qubo_ansatz, relax_ansatz, single_qubit_ansatz, two_qubit_ansatz, Circuit,
};
use fraxis_core::expressibility::Sampler;
use fraxis_core::hamiltonian::{heisenberg_1d, toy_xyz, two_qubit_model, PauliSum};
use fraxis_core::optimizers::Method;
use fraxis_core::sampling::AxisInit;

use crate::error::{CliError, Result};
use crate::formats::{load_circuit, load_pauli_sum};

struct Spec<'a> {
    name: &'a str,
    values: BTreeMap<&'a str, &'a str>,
    flags: Vec<&'a str>,
}

impl<'a> Spec<'a> {
    fn parse(text: &'a str) -> Self {
        let (name, rest) = text.split_once(':').unwrap_or((text, ""));
        let mut values = BTreeMap::new();
        let mut flags = Vec::new();
        for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item.split_once('=') {
                Some((k, v)) => {
                    values.insert(k.trim(), v.trim());
                }
                None => flags.push(item),
            }
        }
        Spec {
            name,
            values,
            flags,
        }
    }

    fn allow(&self, keys: &[&str], flags: &[&str]) -> Result<()> {
        if let Some(k) = self.values.keys().find(|k| !keys.contains(k)) {
            return Err(CliError::config(format!(
                "unknown parameter '{k}' for '{}'",
                self.name
            )));
        }
        if let Some(f) = self.flags.iter().find(|f| !flags.contains(f)) {
            return Err(CliError::config(format!(
                "unknown flag '{f}' for '{}'",
                self.name
            )));
        }
        Ok(())
    }

    fn get<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T> {
        match self.values.get(key) {
            Some(v) => v
                .parse()
                .map_err(|_| CliError::config(format!("invalid value '{v}' for '{key}'"))),
            None => Ok(default),
        }
    }
}

/// Hamiltonian from a builtin name or a Pauli-sum file.
///
/// Builtins: `toy`, `two-qubit-model`, `heisenberg[:n=5,J=1,h=1,periodic]`.
pub fn hamiltonian(text: &str) -> Result<PauliSum> {
    let spec = Spec::parse(text);
    match spec.name {
        "toy" => {
            spec.allow(&[], &[])?;
            Ok(toy_xyz())
        }
        "two-qubit-model" => {
            spec.allow(&[], &[])?;
            Ok(two_qubit_model())
        }
        "heisenberg" => {
            spec.allow(&["n", "J", "h"], &["periodic", "open"])?;
            let periodic = spec.flags.contains(&"periodic");
            Ok(heisenberg_1d(
                spec.get("n", 5)?,
                spec.get("J", 1.0)?,
                spec.get("h", 1.0)?,
                periodic,
            )?)
        }
        _ if Path::new(text).exists() => load_pauli_sum(Path::new(text)),
        _ => Err(CliError::config(format!(
            "unknown Hamiltonian '{text}' (not a builtin or an existing file)"
        ))),
    }
}

/// Circuit layout from a builtin name or a circuit file.
///
/// Builtins: `single`, `two-qubit`, `circuit-a:L=`, `circuit-b:L=`, `qubo`, `relax`.
pub fn ansatz(text: &str) -> Result<Circuit> {
    let spec = Spec::parse(text);
    let layered = |f: fn(usize) -> fraxis_core::Result<Circuit>| -> Result<Circuit> {
        spec.allow(&["L"], &[])?;
        Ok(f(spec.get("L", 1)?)?)
    };
    let fixed = |c: fn() -> Circuit| -> Result<Circuit> {
        spec.allow(&[], &[])?;
        Ok(c())
    };
    match spec.name {
        "single" => fixed(single_qubit_ansatz),
        "two-qubit" => fixed(two_qubit_ansatz),
        "qubo" => fixed(qubo_ansatz),
        "relax" => fixed(relax_ansatz),
        "circuit-a" => layered(circuit_a),
        "circuit-b" => layered(circuit_b),
        _ if Path::new(text).exists() => load_circuit(Path::new(text)),
        _ => Err(CliError::config(format!(
            "unknown ansatz '{text}' (not a builtin or an existing file)"
        ))),
    }
}

/// `pi-fraxis`, `theta-fraxis[:theta=1.5708]`, `rotosolve` or `rotoselect`.
pub fn method(text: &str) -> Result<Method> {
    let spec = Spec::parse(text);
    let m = match spec.name {
        "pi-fraxis" => Method::PiFraxis,
        "rotosolve" => Method::Rotosolve,
        "rotoselect" => Method::Rotoselect,
        "theta-fraxis" => {
            spec.allow(&["theta"], &[])?;
            return Ok(Method::ThetaFraxis(spec.get("theta", FRAC_PI_2)?));
        }
        other => return Err(CliError::config(format!("unknown method '{other}'"))),
    };
    spec.allow(&[], &[])?;
    Ok(m)
}

/// Initial axis scheme: `param`, `state`, `keep`, or `auto` (keep the ansatz
/// axes for Rotosolve, parameter-random otherwise).
pub fn axis_init(text: &str, method: Method) -> Result<AxisInit> {
    match text {
        "param" => Ok(AxisInit::ParameterRandom),
        "state" => Ok(AxisInit::StateRandom),
        "keep" => Ok(AxisInit::Keep),
        "auto" => Ok(if method == Method::Rotosolve {
            AxisInit::Keep
        } else {
            AxisInit::ParameterRandom
        }),
        other => Err(CliError::config(format!(
            "unknown axis initialization '{other}'"
        ))),
    }
}

pub fn sampler(text: &str) -> Result<Sampler> {
    Sampler::from_name(text).ok_or_else(|| {
        let names: Vec<&str> = Sampler::ALL.iter().map(|s| s.name()).collect();
        CliError::config(format!(
            "unknown sampler '{text}' (expected one of {})",
            names.join(", ")
        ))
    })
}
