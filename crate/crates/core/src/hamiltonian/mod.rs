//! Real-weighted Pauli-sum Hamiltonians.
//!
//! A [`PauliString`] lists one letter per qubit with index 0 first; the
//! constant part of a Hamiltonian is stored as the all-identity string.

mod dense;
mod maxcut;
mod models;

pub use dense::{ground_energy, spectrum, to_dense, GROUND_ENERGY_MAX_QUBITS};
pub use maxcut::{
    cut_value, max_cut_brute_force, maxcut_qubo, maxcut_relax, petersen, petersen_relax_labels,
    spins_from_basis_index, Graph, VertexLabel,
};
pub use models::{heisenberg_1d, toy_xyz, two_qubit_model};

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::statevector::{StateVector, Unitary2, MAX_QUBITS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// Single-qubit product `self * other = phase * result`, with phase in {1, i, -1, -i}.
    pub fn product(self, other: Pauli) -> (Complex64, Pauli) {
        use Pauli::*;
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match (self, other) {
            (I, p) | (p, I) => (one, p),
            (a, b) if a == b => (one, I),
            (X, Y) => (i, Z),
            (Y, X) => (-i, Z),
            (Y, Z) => (i, X),
            (Z, Y) => (-i, X),
            (Z, X) => (i, Y),
            (X, Z) => (-i, Y),
            _ => unreachable!(),
        }
    }
}

/// Tensor product of single-qubit Paulis; `letters[k]` acts on qubit `k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    letters: Vec<Pauli>,
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Self {
        PauliString { letters }
    }

    pub fn identity(n_qubits: usize) -> Self {
        PauliString {
            letters: vec![Pauli::I; n_qubits],
        }
    }

    /// `letter` on each listed qubit, identity elsewhere.
    pub fn from_sparse(n_qubits: usize, ops: &[(usize, Pauli)]) -> Result<Self> {
        let mut letters = vec![Pauli::I; n_qubits];
        for &(q, p) in ops {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
            }
            letters[q] = p;
        }
        Ok(PauliString { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|&p| p == Pauli::I)
    }

    /// True when the string contains only I and Z.
    pub fn is_diagonal(&self) -> bool {
        self.letters
            .iter()
            .all(|&p| matches!(p, Pauli::I | Pauli::Z))
    }

    fn mask(&self, pred: impl Fn(Pauli) -> bool) -> usize {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, &p)| pred(p))
            .fold(0, |m, (q, _)| m | (1 << q))
    }

    /// Bits flipped by the string (X or Y positions).
    pub fn flip_mask(&self) -> usize {
        self.mask(|p| matches!(p, Pauli::X | Pauli::Y))
    }

    /// Bits contributing a sign (Y or Z positions).
    pub fn sign_mask(&self) -> usize {
        self.mask(|p| matches!(p, Pauli::Y | Pauli::Z))
    }

    pub fn support_mask(&self) -> usize {
        self.mask(|p| p != Pauli::I)
    }

    pub fn y_count(&self) -> u32 {
        self.letters.iter().filter(|&&p| p == Pauli::Y).count() as u32
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.letters {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

/// `i^k`.
pub(crate) fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `<s|P|s>` for a single Pauli string.
pub fn pauli_expectation(p: &PauliString, s: &StateVector) -> Complex64 {
    let flip = p.flip_mask();
    let sign = p.sign_mask();
    let amps = s.amplitudes();
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, a) in amps.iter().enumerate() {
        let term = amps[i ^ flip].conj() * a;
        if (i & sign).count_ones().is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc * i_pow(p.y_count())
}

/// Real-weighted sum of Pauli strings with duplicates merged.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<(f64, PauliString)>,
}

impl PauliSum {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits {
                n_qubits,
                max: MAX_QUBITS,
            });
        }
        Ok(PauliSum {
            n_qubits,
            terms: Vec::new(),
        })
    }

    /// Builds a sum, merging repeated strings by adding coefficients.
    /// Terms keep the order of first appearance.
    pub fn from_terms(
        n_qubits: usize,
        terms: impl IntoIterator<Item = (f64, PauliString)>,
    ) -> Result<Self> {
        let mut sum = PauliSum::new(n_qubits)?;
        let mut index: BTreeMap<PauliString, usize> = BTreeMap::new();
        for (c, s) in terms {
            if !c.is_finite() {
                return Err(Error::NonFiniteCoefficient);
            }
            if s.len() != n_qubits {
                return Err(Error::DimensionMismatch {
                    expected: n_qubits,
                    found: s.len(),
                });
            }
            match index.get(&s) {
                Some(&k) => sum.terms[k].0 += c,
                None => {
                    index.insert(s.clone(), sum.terms.len());
                    sum.terms.push((c, s));
                }
            }
        }
        Ok(sum)
    }

    pub fn add_term(&mut self, coeff: f64, string: PauliString) -> Result<()> {
        if !coeff.is_finite() {
            return Err(Error::NonFiniteCoefficient);
        }
        if string.len() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: string.len(),
            });
        }
        match self.terms.iter_mut().find(|(_, s)| *s == string) {
            Some(t) => t.0 += coeff,
            None => self.terms.push((coeff, string)),
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.iter().all(|(_, s)| s.is_diagonal())
    }

    /// Coefficient of the all-identity string (0 when absent).
    pub fn constant(&self) -> f64 {
        self.terms
            .iter()
            .filter(|(_, s)| s.is_identity())
            .map(|(c, _)| *c)
            .sum()
    }

    pub fn scaled(&self, factor: f64) -> PauliSum {
        PauliSum {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|(c, s)| (c * factor, s.clone()))
                .collect(),
        }
    }

    fn check_state(&self, s: &StateVector) -> Result<()> {
        if s.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: s.n_qubits(),
            });
        }
        Ok(())
    }

    /// Exact `<s|M|s>`.
    pub fn expectation(&self, s: &StateVector) -> Result<f64> {
        self.check_state(s)?;
        let total: Complex64 = self
            .terms
            .iter()
            .map(|(c, p)| pauli_expectation(p, s) * *c)
            .sum();
        debug_assert!(
            total.im.abs() < 1e-9,
            "imaginary expectation residue {}",
            total.im
        );
        Ok(total.re)
    }

    /// Finite-shot estimate: each non-identity term is measured `shots`
    /// times in its eigenbasis and the parity outcomes averaged.
    pub fn shot_expectation<R: Rng + ?Sized>(
        &self,
        s: &StateVector,
        shots: u64,
        rng: &mut R,
    ) -> Result<f64> {
        self.check_state(s)?;
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        let mut total = 0.0;
        for (c, p) in &self.terms {
            if p.is_identity() {
                total += c;
                continue;
            }
            let p_even = even_parity_probability(p, s)?;
            let even = Binomial::new(shots, p_even.clamp(0.0, 1.0))
                .expect("probability clamped to [0, 1]")
                .sample(rng);
            total += c * (2.0 * even as f64 - shots as f64) / shots as f64;
        }
        Ok(total)
    }
}

/// Probability that measuring `p` on `s` yields eigenvalue +1.
fn even_parity_probability(p: &PauliString, s: &StateVector) -> Result<f64> {
    // S^dagger then H maps the Y eigenbasis onto Z.
    let s_dag = Unitary2::rz(-core::f64::consts::FRAC_PI_2);
    let mut rotated = s.clone();
    for (q, &letter) in p.letters().iter().enumerate() {
        match letter {
            Pauli::X => rotated.apply_1q(q, &Unitary2::HADAMARD)?,
            Pauli::Y => {
                rotated.apply_1q(q, &s_dag)?;
                rotated.apply_1q(q, &Unitary2::HADAMARD)?;
            }
            Pauli::I | Pauli::Z => {}
        }
    }
    let support = p.support_mask();
    Ok(rotated
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(i, _)| (i & support).count_ones().is_multiple_of(2))
        .map(|(_, a)| a.norm_sqr())
        .sum())
}
