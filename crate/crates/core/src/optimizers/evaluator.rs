use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::hamiltonian::PauliSum;
use crate::statevector::{StateVector, Unitary2};

/// How energies are obtained from a state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMode {
    Exact,
    /// Per-term sampling with this many shots.
    Shots(u64),
}

/// Energy oracle used by the optimizers. Counts every substituted-circuit run.
#[derive(Clone, Debug)]
pub struct Evaluator {
    mode: EvalMode,
    rng: ChaCha8Rng,
    substitutions: u64,
}

impl Evaluator {
    pub fn exact() -> Self {
        Evaluator {
            mode: EvalMode::Exact,
            rng: ChaCha8Rng::seed_from_u64(0),
            substitutions: 0,
        }
    }

    pub fn with_shots(shots: u64, seed: u64) -> Result<Self> {
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        Ok(Evaluator {
            mode: EvalMode::Shots(shots),
            rng: ChaCha8Rng::seed_from_u64(seed),
            substitutions: 0,
        })
    }

    /// Shot evaluator drawing from a caller-supplied generator.
    pub fn with_shots_rng(shots: u64, rng: ChaCha8Rng) -> Result<Self> {
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        Ok(Evaluator {
            mode: EvalMode::Shots(shots),
            rng,
            substitutions: 0,
        })
    }

    pub fn mode(&self) -> EvalMode {
        self.mode
    }

    pub fn is_exact(&self) -> bool {
        self.mode == EvalMode::Exact
    }

    /// Number of substituted-circuit energy evaluations so far.
    pub fn substitutions(&self) -> u64 {
        self.substitutions
    }

    fn measure(&mut self, m: &PauliSum, s: &StateVector) -> Result<f64> {
        match self.mode {
            EvalMode::Exact => m.expectation(s),
            EvalMode::Shots(k) => m.shot_expectation(s, k, &mut self.rng),
        }
    }

    /// Energy with `slot` replaced by `u`.
    pub fn substituted(
        &mut self,
        c: &Circuit,
        m: &PauliSum,
        slot: usize,
        u: &Unitary2,
    ) -> Result<f64> {
        if m.n_qubits() != c.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: c.n_qubits(),
                found: m.n_qubits(),
            });
        }
        let state = c.evaluate_with_substitution(slot, u)?;
        self.substitutions += 1;
        self.measure(m, &state)
    }

    /// Energy of the unmodified circuit; not counted as a substitution.
    pub fn energy(&mut self, c: &Circuit, m: &PauliSum) -> Result<f64> {
        if m.n_qubits() != c.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: c.n_qubits(),
                found: m.n_qubits(),
            });
        }
        let state = c.evaluate()?;
        self.measure(m, &state)
    }
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator::exact()
    }
}
