//! Parametrized circuits and single-slot gate substitution.

mod ansatz;
mod native;

pub use ansatz::{
    circuit_a, circuit_b, qubo_ansatz, relax_ansatz, single_qubit_ansatz, two_qubit_ansatz,
};
pub use native::{compose_native, decompose_pi_fraxis, NativeGate, PiFraxisAngles};

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::hamiltonian::PauliSum;
use crate::sampling::{uniform_angle, AxisInit};
use crate::statevector::{rotation_unitary, Axis, StateVector, TwoQubitKind, Unitary2};

/// Non-parametrized single-qubit gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixedGate {
    H,
    X,
    /// Square root of X.
    SX,
}

impl FixedGate {
    pub fn unitary(self) -> Unitary2 {
        match self {
            FixedGate::H => Unitary2::HADAMARD,
            FixedGate::X => Unitary2::PAULI_X,
            FixedGate::SX => Unitary2::SQRT_X,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateSlot {
    /// `R_axis(theta)` on one qubit.
    Param {
        qubit: usize,
        axis: Axis,
        theta: f64,
    },
    Fixed {
        qubit: usize,
        gate: FixedGate,
    },
    Entangler {
        kind: TwoQubitKind,
        control: usize,
        target: usize,
    },
}

/// Ordered gate list applied to an initial state (default `|0...0>`).
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    slots: Vec<GateSlot>,
    initial: StateVector,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        Ok(Circuit {
            n_qubits,
            slots: Vec::new(),
            initial: StateVector::zero(n_qubits)?,
        })
    }

    pub fn with_initial_state(initial: StateVector) -> Self {
        Circuit {
            n_qubits: initial.n_qubits(),
            slots: Vec::new(),
            initial,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn slots(&self) -> &[GateSlot] {
        &self.slots
    }

    pub fn initial_state(&self) -> &StateVector {
        &self.initial
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    /// Appends a slot after validating its indices; returns the slot index.
    pub fn push(&mut self, slot: GateSlot) -> Result<usize> {
        match slot {
            GateSlot::Param { qubit, axis, .. } => {
                self.check_qubit(qubit)?;
                Axis::new(axis.x(), axis.y(), axis.z())?;
            }
            GateSlot::Fixed { qubit, .. } => self.check_qubit(qubit)?,
            GateSlot::Entangler {
                control, target, ..
            } => {
                self.check_qubit(control)?;
                self.check_qubit(target)?;
                if control == target {
                    return Err(Error::SameControlTarget(control));
                }
            }
        }
        self.slots.push(slot);
        Ok(self.slots.len() - 1)
    }

    pub fn push_param(&mut self, qubit: usize, axis: Axis, theta: f64) -> Result<usize> {
        self.push(GateSlot::Param { qubit, axis, theta })
    }

    pub fn push_fixed(&mut self, qubit: usize, gate: FixedGate) -> Result<usize> {
        self.push(GateSlot::Fixed { qubit, gate })
    }

    pub fn push_entangler(
        &mut self,
        kind: TwoQubitKind,
        control: usize,
        target: usize,
    ) -> Result<usize> {
        self.push(GateSlot::Entangler {
            kind,
            control,
            target,
        })
    }

    /// Indices of parametrized slots in circuit order. Builders emit each
    /// column ascending by qubit, so this is also the sweep order.
    pub fn param_slots(&self) -> Vec<usize> {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, s)| matches!(s, GateSlot::Param { .. }))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn param_count(&self) -> usize {
        self.slots
            .iter()
            .filter(|s| matches!(s, GateSlot::Param { .. }))
            .count()
    }

    pub fn entangler_count(&self) -> usize {
        self.slots
            .iter()
            .filter(|s| matches!(s, GateSlot::Entangler { .. }))
            .count()
    }

    fn param_ref(&self, slot: usize) -> Result<(usize, Axis, f64)> {
        match self.slots.get(slot) {
            Some(GateSlot::Param { qubit, axis, theta }) => Ok((*qubit, *axis, *theta)),
            Some(_) => Err(Error::NotParamSlot(slot)),
            None => Err(Error::SlotOutOfRange {
                slot,
                len: self.slots.len(),
            }),
        }
    }

    /// `(qubit, axis, theta)` of a parametrized slot.
    pub fn param(&self, slot: usize) -> Result<(usize, Axis, f64)> {
        self.param_ref(slot)
    }

    pub fn set_param(&mut self, slot: usize, axis: Axis, theta: f64) -> Result<()> {
        let (qubit, _, _) = self.param_ref(slot)?;
        self.slots[slot] = GateSlot::Param { qubit, axis, theta };
        Ok(())
    }

    pub fn set_theta(&mut self, slot: usize, theta: f64) -> Result<()> {
        let (_, axis, _) = self.param_ref(slot)?;
        self.set_param(slot, axis, theta)
    }

    pub fn set_axis(&mut self, slot: usize, axis: Axis) -> Result<()> {
        let (_, _, theta) = self.param_ref(slot)?;
        self.set_param(slot, axis, theta)
    }

    /// Redraws every parametrized slot: axes per `axes`, angles uniformly on
    /// `(-pi, pi]` unless `theta` pins them.
    pub fn randomize<R: Rng + ?Sized>(&mut self, axes: AxisInit, theta: Option<f64>, rng: &mut R) {
        for slot in self.slots.iter_mut() {
            if let GateSlot::Param { axis, theta: t, .. } = slot {
                *axis = axes.draw(rng, *axis);
                *t = theta.unwrap_or_else(|| uniform_angle(rng));
            }
        }
    }

    fn run(&self, substitution: Option<(usize, &Unitary2)>) -> Result<StateVector> {
        let mut state = self.initial.clone();
        for (i, slot) in self.slots.iter().enumerate() {
            match *slot {
                GateSlot::Param { qubit, axis, theta } => match substitution {
                    Some((s, u)) if s == i => state.apply_1q(qubit, u)?,
                    _ => state.apply_1q(qubit, &rotation_unitary(&axis, theta))?,
                },
                GateSlot::Fixed { qubit, gate } => state.apply_1q(qubit, &gate.unitary())?,
                GateSlot::Entangler {
                    kind,
                    control,
                    target,
                } => state.apply_2q(kind, control, target)?,
            }
        }
        Ok(state)
    }

    /// Final state of the circuit.
    pub fn evaluate(&self) -> Result<StateVector> {
        self.run(None)
    }

    /// Final state with the gate in `slot` replaced by `u`; `self` is untouched.
    pub fn evaluate_with_substitution(&self, slot: usize, u: &Unitary2) -> Result<StateVector> {
        self.param_ref(slot)?;
        self.run(Some((slot, u)))
    }

    fn check_hamiltonian(&self, m: &PauliSum) -> Result<()> {
        if m.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: m.n_qubits(),
            });
        }
        Ok(())
    }

    pub fn energy(&self, m: &PauliSum) -> Result<f64> {
        self.check_hamiltonian(m)?;
        m.expectation(&self.evaluate()?)
    }

    pub fn energy_with_substitution(&self, m: &PauliSum, slot: usize, u: &Unitary2) -> Result<f64> {
        self.check_hamiltonian(m)?;
        m.expectation(&self.evaluate_with_substitution(slot, u)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{spectrum, toy_xyz, two_qubit_model, Pauli, PauliString};
    use crate::statevector::fidelity;
    use crate::testutil::{dense_1q_operator, dense_2q_operator, mat_vec, matmul, random_state};
    use core::f64::consts::PI;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z_only() -> PauliSum {
        PauliSum::from_terms(1, [(1.0, PauliString::new(alloc::vec![Pauli::Z]))]).unwrap()
    }

    #[test]
    fn empty_circuit_returns_initial_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = random_state(3, &mut rng);
        let c = Circuit::with_initial_state(s.clone());
        assert_eq!(c.evaluate().unwrap(), s);
    }

    #[test]
    fn y_pi_flips_zero() {
        let mut c = Circuit::new(1).unwrap();
        c.push_param(0, Axis::Y, PI).unwrap();
        let one = StateVector::basis(1, 1).unwrap();
        assert!((fidelity(&c.evaluate().unwrap(), &one).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn circuit_a_matches_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut c = circuit_a(2).unwrap();
        c.randomize(AxisInit::StateRandom, None, &mut rng);
        let mut op = crate::testutil::identity(32);
        for slot in c.slots() {
            let g = match *slot {
                GateSlot::Param { qubit, axis, theta } => {
                    dense_1q_operator(5, qubit, &rotation_unitary(&axis, theta))
                }
                GateSlot::Fixed { qubit, gate } => dense_1q_operator(5, qubit, &gate.unitary()),
                GateSlot::Entangler {
                    kind,
                    control,
                    target,
                } => dense_2q_operator(5, kind, control, target),
            };
            op = matmul(&g, &op);
        }
        let expect = mat_vec(&op, StateVector::zero(5).unwrap().amplitudes());
        for (a, b) in c.evaluate().unwrap().amplitudes().iter().zip(expect.iter()) {
            assert!((a - b).norm() < 1e-9);
        }
    }

    #[test]
    fn empty_two_qubit_energy() {
        let c = Circuit::new(2).unwrap();
        assert!((c.energy(&two_qubit_model()).unwrap() - 0.12).abs() < 1e-15);
    }

    #[test]
    fn toy_axis_reaches_ground_state() {
        let r3 = 3f64.sqrt();
        let a = libm::sqrt(0.5 + 0.5 / r3) / 2f64.sqrt();
        let axis = Axis::new(a, a, -libm::sqrt(0.5 - 0.5 / r3)).unwrap();
        let mut c = Circuit::new(1).unwrap();
        c.push_param(0, axis, PI).unwrap();
        assert!((c.energy(&toy_xyz()).unwrap() + r3).abs() < 1e-12);
    }

    #[test]
    fn energies_lie_within_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = two_qubit_model();
        let spec = spectrum(&m).unwrap();
        for _ in 0..100 {
            let mut c = two_qubit_ansatz();
            c.randomize(AxisInit::ParameterRandom, None, &mut rng);
            let e = c.energy(&m).unwrap();
            assert!(e >= spec[0] - 1e-12 && e <= spec[3] + 1e-12);
        }
    }

    #[test]
    fn substitution_examples() {
        let mut c = Circuit::new(1).unwrap();
        let slot = c.push_param(0, Axis::Y, 0.4).unwrap();
        let m = z_only();
        let own = rotation_unitary(&Axis::Y, 0.4);
        assert!(
            (c.energy_with_substitution(&m, slot, &own).unwrap() - c.energy(&m).unwrap()).abs()
                < 1e-15
        );
        assert!(
            (c.energy_with_substitution(&m, slot, &Unitary2::PAULI_X)
                .unwrap()
                + 1.0)
                .abs()
                < 1e-15
        );
        let xz = Unitary2::pauli_combination(&Axis::normalized(1.0, 0.0, 1.0).unwrap());
        assert!(c.energy_with_substitution(&m, slot, &xz).unwrap().abs() < 1e-15);
        let before = c.clone();
        c.energy_with_substitution(&m, slot, &Unitary2::PAULI_Y)
            .unwrap();
        assert_eq!(c, before);
    }

    #[test]
    fn substitution_errors() {
        let mut c = Circuit::new(2).unwrap();
        c.push_fixed(0, FixedGate::H).unwrap();
        c.push_param(1, Axis::X, 1.0).unwrap();
        let m = two_qubit_model();
        assert_eq!(
            c.energy_with_substitution(&m, 0, &Unitary2::PAULI_X),
            Err(Error::NotParamSlot(0))
        );
        assert!(matches!(
            c.energy_with_substitution(&m, 9, &Unitary2::PAULI_X),
            Err(Error::SlotOutOfRange { .. })
        ));
        assert!(matches!(
            c.energy(&z_only()),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(c.push_entangler(TwoQubitKind::Cx, 1, 1).is_err());
        assert!(c.push_param(2, Axis::X, 0.0).is_err());
    }

    #[test]
    fn zero_angle_equals_identity_substitution() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let m = two_qubit_model();
        let mut c = two_qubit_ansatz();
        c.randomize(AxisInit::StateRandom, None, &mut rng);
        for slot in c.param_slots() {
            let (_, axis, _) = c.param(slot).unwrap();
            let a = c
                .energy_with_substitution(&m, slot, &rotation_unitary(&axis, 0.0))
                .unwrap();
            let b = c
                .energy_with_substitution(&m, slot, &Unitary2::IDENTITY)
                .unwrap();
            assert!((a - b).abs() < 1e-15);
        }
    }
}
