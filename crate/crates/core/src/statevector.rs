//! Dense pure-state simulation.
//!
//! Basis states are indexed with qubit 0 as the least-significant bit, so
//! `|q_{n-1} ... q_1 q_0>` has index `sum_k q_k 2^k`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;
use core::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest register the dense simulator accepts.
pub const MAX_QUBITS: usize = 16;

/// Tolerance for invariants of analytic constructions (unit axes, unitarity, norms).
pub const INVARIANT_TOL: f64 = 1e-10;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Real unit vector defining a rotation axis on the Bloch sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    x: f64,
    y: f64,
    z: f64,
}

impl Axis {
    pub const X: Axis = Axis {
        x: 1.0,
        y: 0.0,
        z: 0.0,
    };
    pub const Y: Axis = Axis {
        x: 0.0,
        y: 1.0,
        z: 0.0,
    };
    pub const Z: Axis = Axis {
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };

    /// Builds an axis from components that must already be unit-norm.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = libm::sqrt(x * x + y * y + z * z);
        if !norm.is_finite() || (norm - 1.0).abs() > INVARIANT_TOL {
            return Err(Error::InvalidAxis { norm });
        }
        Ok(Axis { x, y, z })
    }

    /// Normalizes an arbitrary nonzero direction.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = libm::sqrt(x * x + y * y + z * z);
        if !norm.is_finite() || norm < 1e-300 {
            return Err(Error::InvalidAxis { norm });
        }
        Ok(Axis {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    /// Axis from polar angle `theta` (from +z) and azimuth `phi`.
    pub fn from_spherical(theta: f64, phi: f64) -> Self {
        let (st, ct) = libm::sincos(theta);
        let (sp, cp) = libm::sincos(phi);
        Axis {
            x: st * cp,
            y: st * sp,
            z: ct,
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &Axis) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Unnormalized cross product.
    pub fn cross(&self, other: &Axis) -> [f64; 3] {
        [
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        ]
    }
}

impl TryFrom<[f64; 3]> for Axis {
    type Error = Error;

    fn try_from(v: [f64; 3]) -> Result<Self> {
        Axis::new(v[0], v[1], v[2])
    }
}

/// 2x2 complex matrix stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Unitary2(pub [Complex64; 4]);

impl Unitary2 {
    pub const IDENTITY: Unitary2 = Unitary2([ONE, ZERO, ZERO, ONE]);
    pub const PAULI_X: Unitary2 = Unitary2([ZERO, ONE, ONE, ZERO]);
    pub const PAULI_Y: Unitary2 = Unitary2([ZERO, Complex64::new(0.0, -1.0), I, ZERO]);
    pub const PAULI_Z: Unitary2 = Unitary2([ONE, ZERO, ZERO, Complex64::new(-1.0, 0.0)]);
    pub const HADAMARD: Unitary2 = Unitary2([
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(-FRAC_1_SQRT_2, 0.0),
    ]);
    /// Square root of X.
    pub const SQRT_X: Unitary2 = Unitary2([
        Complex64::new(0.5, 0.5),
        Complex64::new(0.5, -0.5),
        Complex64::new(0.5, -0.5),
        Complex64::new(0.5, 0.5),
    ]);

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Unitary2([a, b, c, d])
    }

    /// `n . sigma` for a unit axis; Hermitian and unitary.
    pub fn pauli_combination(axis: &Axis) -> Self {
        let (x, y, z) = (axis.x, axis.y, axis.z);
        Unitary2([
            Complex64::new(z, 0.0),
            Complex64::new(x, -y),
            Complex64::new(x, y),
            Complex64::new(-z, 0.0),
        ])
    }

    /// Rotation about the z axis, `diag(e^{-i a/2}, e^{i a/2})`.
    pub fn rz(angle: f64) -> Self {
        let (s, c) = libm::sincos(angle / 2.0);
        Unitary2([Complex64::new(c, -s), ZERO, ZERO, Complex64::new(c, s)])
    }

    pub fn dagger(&self) -> Self {
        let [a, b, c, d] = self.0;
        Unitary2([a.conj(), c.conj(), b.conj(), d.conj()])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0] + self.0[3]
    }

    pub fn determinant(&self) -> Complex64 {
        self.0[0] * self.0[3] - self.0[1] * self.0[2]
    }

    /// Largest entrywise deviation of `U^dagger U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let p = self.dagger() * *self;
        let id = Unitary2::IDENTITY;
        p.0.iter()
            .zip(id.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }

    /// `|tr(A^dagger B)|`; equals 2 exactly when the unitaries agree up to global phase.
    pub fn phase_overlap(&self, other: &Unitary2) -> f64 {
        (self.dagger() * *other).trace().norm()
    }

    pub fn max_abs_diff(&self, other: &Unitary2) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Splits `U = e^{i gamma} (a0 I - i a . sigma)` with `a0 >= 0` and
    /// returns `(axis, angle)` of the SU(2) rotation part. Identity-like
    /// matrices report the z axis with angle 0.
    pub fn to_axis_angle(&self) -> (Axis, f64) {
        let det = self.determinant();
        let phase = Complex64::from_polar(1.0, -det.arg() / 2.0);
        let v = Unitary2(self.0.map(|e| e * phase));
        let mut a0 = v.trace().re / 2.0;
        // tr(V sigma_k) = -2 i a_k
        let mut a = [
            -(v * Unitary2::PAULI_X).trace().im / 2.0,
            -(v * Unitary2::PAULI_Y).trace().im / 2.0,
            -(v * Unitary2::PAULI_Z).trace().im / 2.0,
        ];
        if a0 < 0.0 {
            a0 = -a0;
            a = a.map(|c| -c);
        }
        let s = libm::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
        if s < 1e-14 {
            return (Axis::Z, 0.0);
        }
        let axis = Axis {
            x: a[0] / s,
            y: a[1] / s,
            z: a[2] / s,
        };
        (axis, 2.0 * libm::atan2(s, a0))
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: Unitary2) -> Unitary2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = rhs.0;
        Unitary2([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }
}

/// `cos(theta/2) I - i sin(theta/2) (n . sigma)`.
pub fn rotation_unitary(axis: &Axis, theta: f64) -> Unitary2 {
    let (s, c) = libm::sincos(theta / 2.0);
    let (x, y, z) = (axis.x, axis.y, axis.z);
    Unitary2([
        Complex64::new(c, -s * z),
        Complex64::new(-s * y, -s * x),
        Complex64::new(s * y, -s * x),
        Complex64::new(c, s * z),
    ])
}

/// The three-angle universal single-qubit gate
/// `[[cos(psi/2), -e^{i lam} sin(psi/2)], [e^{i phi} sin(psi/2), e^{i(phi+lam)} cos(psi/2)]]`.
pub fn universal_unitary(psi: f64, phi: f64, lam: f64) -> Unitary2 {
    let (s, c) = libm::sincos(psi / 2.0);
    Unitary2([
        Complex64::new(c, 0.0),
        -Complex64::from_polar(s, lam),
        Complex64::from_polar(s, phi),
        Complex64::from_polar(c, phi + lam),
    ])
}

/// Axes `(first, second)` with `R_second(pi) R_first(pi) = u` up to global phase.
///
/// With `u ~ cos(theta/2) I - i sin(theta/2) n . sigma`, `first` is any unit
/// vector orthogonal to `n` and `second = cos(theta/2) first + sin(theta/2) (n x first)`.
pub fn pi_rotation_pair(u: &Unitary2) -> (Axis, Axis) {
    let (n, theta) = u.to_axis_angle();
    let v = n.to_array();
    // Cross with the cardinal axis least aligned with n.
    let mut k = 0;
    for i in 1..3 {
        if v[i].abs() < v[k].abs() {
            k = i;
        }
    }
    let e = [Axis::X, Axis::Y, Axis::Z][k];
    let c = n.cross(&e);
    let first = Axis::normalized(c[0], c[1], c[2]).expect("n is not parallel to e");
    let (s, a0) = libm::sincos(theta / 2.0);
    let nf = n.cross(&first);
    let second = Axis::normalized(
        a0 * first.x + s * nf[0],
        a0 * first.y + s * nf[1],
        a0 * first.z + s * nf[2],
    )
    .expect("unit by construction");
    (first, second)
}

/// Two-qubit entangler kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwoQubitKind {
    Cx,
    Cz,
}

/// Normalized amplitude vector over `2^n` basis states.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>` on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_size(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::QubitOutOfRange {
                qubit: index,
                n_qubits,
            });
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(StateVector { n_qubits, amps })
    }

    /// Wraps raw amplitudes; the length must be a power of two and the norm 1.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: dim.next_power_of_two(),
                found: dim,
            });
        }
        let n_qubits = dim.trailing_zeros() as usize;
        check_size(n_qubits)?;
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > INVARIANT_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(StateVector { n_qubits, amps })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(mut amps: Vec<Complex64>) -> Result<Self> {
        let norm = libm::sqrt(amps.iter().map(|a| a.norm_sqr()).sum::<f64>());
        if norm.is_nan() || norm <= 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized {
                norm_sqr: norm * norm,
            });
        }
        for a in amps.iter_mut() {
            *a /= norm;
        }
        Self::from_amplitudes(amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.same_size(other)?;
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    fn same_size(&self, other: &StateVector) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: other.n_qubits,
            });
        }
        Ok(())
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

    /// Applies `u` to one tensor factor in place.
    pub fn apply_1q(&mut self, qubit: usize, u: &Unitary2) -> Result<()> {
        self.check_qubit(qubit)?;
        let [a, b, c, d] = u.0;
        let stride = 1usize << qubit;
        for block in (0..self.amps.len()).step_by(stride << 1) {
            for i0 in block..block + stride {
                let i1 = i0 + stride;
                let (v0, v1) = (self.amps[i0], self.amps[i1]);
                self.amps[i0] = a * v0 + b * v1;
                self.amps[i1] = c * v0 + d * v1;
            }
        }
        Ok(())
    }

    /// Controlled-X or controlled-Z in place.
    pub fn apply_2q(&mut self, kind: TwoQubitKind, control: usize, target: usize) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        if control == target {
            return Err(Error::SameControlTarget(control));
        }
        let cbit = 1usize << control;
        let tbit = 1usize << target;
        match kind {
            TwoQubitKind::Cx => {
                for i in 0..self.amps.len() {
                    if i & cbit != 0 && i & tbit == 0 {
                        self.amps.swap(i, i | tbit);
                    }
                }
            }
            TwoQubitKind::Cz => {
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & cbit != 0 && i & tbit != 0 {
                        *a = -*a;
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_size(n_qubits: usize) -> Result<()> {
    if n_qubits > MAX_QUBITS {
        return Err(Error::TooManyQubits {
            n_qubits,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

/// `|<a|b>|^2`, clamped to `[0, 1]`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().clamp(0.0, 1.0))
}

impl core::ops::Neg for Axis {
    type Output = Axis;

    fn neg(self) -> Axis {
        Axis {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{
        dense_1q_operator, dense_2q_operator, mat_vec, random_state, random_unitary,
    };
    use core::f64::consts::PI;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Brute-force `exp(-i t/2 n.sigma)` by scaling and squaring of a Taylor series.
    fn expm_rotation(axis: &Axis, theta: f64) -> Unitary2 {
        let h = Unitary2::pauli_combination(axis);
        let scale = c(0.0, -theta / 2.0 / 1024.0);
        let a = Unitary2(h.0.map(|e| e * scale));
        let mut sum = Unitary2::IDENTITY;
        let mut term = Unitary2::IDENTITY;
        for k in 1..30 {
            term = term * a;
            term = Unitary2(term.0.map(|e| e / k as f64));
            sum = Unitary2([
                sum.0[0] + term.0[0],
                sum.0[1] + term.0[1],
                sum.0[2] + term.0[2],
                sum.0[3] + term.0[3],
            ]);
        }
        for _ in 0..10 {
            sum = sum * sum;
        }
        sum
    }

    #[test]
    fn z_rotation_closed_form() {
        for &t in &[0.3, -1.7, 2.0 * PI / 3.0, 5.5] {
            let u = rotation_unitary(&Axis::Z, t);
            let expect = Unitary2::new(
                Complex64::from_polar(1.0, -t / 2.0),
                ZERO,
                ZERO,
                Complex64::from_polar(1.0, t / 2.0),
            );
            assert!(u.max_abs_diff(&expect) < 1e-14);
        }
    }

    #[test]
    fn y_rotation_by_pi() {
        let u = rotation_unitary(&Axis::Y, PI);
        let expect = Unitary2::new(ZERO, c(-1.0, 0.0), ONE, ZERO);
        assert!(u.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn rotation_matches_matrix_exponential() {
        let s = 1.0 / 3f64.sqrt();
        let axis = Axis::new(s, s, s).unwrap();
        let t = 2.0 * PI / 3.0;
        assert!(rotation_unitary(&axis, t).max_abs_diff(&expm_rotation(&axis, t)) < 1e-9);
    }

    #[test]
    fn rejects_non_unit_axis() {
        assert!(matches!(
            Axis::new(1.0, 1.0, 0.0),
            Err(Error::InvalidAxis { .. })
        ));
        assert!(Axis::new(1.0 + 1e-12, 0.0, 0.0).is_ok());
        assert!(Axis::normalized(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn universal_gate_cases() {
        assert!(universal_unitary(0.0, 0.0, 0.0).max_abs_diff(&Unitary2::IDENTITY) < 1e-15);
        // (pi, 0, 0) is exactly R_y(pi); (pi, 0, pi) is the pi rotation about x.
        let ry = rotation_unitary(&Axis::Y, PI);
        assert!((universal_unitary(PI, 0.0, 0.0).phase_overlap(&ry) - 2.0).abs() < 1e-12);
        let rx = rotation_unitary(&Axis::X, PI);
        assert!((universal_unitary(PI, 0.0, PI).phase_overlap(&rx) - 2.0).abs() < 1e-12);
        assert!(universal_unitary(PI / 2.0, PI / 2.0, PI / 2.0).is_unitary(1e-10));
    }

    #[test]
    fn axis_angle_extraction_roundtrip() {
        let axis = Axis::normalized(0.3, -0.4, 0.8).unwrap();
        let u = rotation_unitary(&axis, 1.1);
        let (a, t) = u.to_axis_angle();
        assert!((a.dot(&axis) - 1.0).abs() < 1e-12);
        assert!((t - 1.1).abs() < 1e-12);
    }

    #[test]
    fn x_and_h_on_qubit_zero() {
        let mut s = StateVector::zero(2).unwrap();
        s.apply_1q(0, &Unitary2::PAULI_X).unwrap();
        assert_eq!(s.amplitudes()[1], ONE);
        let mut s = StateVector::zero(2).unwrap();
        s.apply_1q(0, &Unitary2::HADAMARD).unwrap();
        assert!((s.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.amplitudes()[1].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(s.amplitudes()[2], ZERO);
    }

    #[test]
    fn two_qubit_gates_on_basis_states() {
        // |10>: qubit 1 set, index 2.
        let mut s = StateVector::basis(2, 2).unwrap();
        s.apply_2q(TwoQubitKind::Cx, 1, 0).unwrap();
        assert_eq!(s.amplitudes()[3], ONE);
        let mut s = StateVector::basis(2, 3).unwrap();
        s.apply_2q(TwoQubitKind::Cz, 0, 1).unwrap();
        assert_eq!(s.amplitudes()[3], -ONE);
    }

    #[test]
    fn gate_argument_errors() {
        let mut s = StateVector::zero(2).unwrap();
        assert!(matches!(
            s.apply_1q(2, &Unitary2::PAULI_X),
            Err(Error::QubitOutOfRange { .. })
        ));
        assert!(matches!(
            s.apply_2q(TwoQubitKind::Cx, 1, 1),
            Err(Error::SameControlTarget(1))
        ));
        assert!(matches!(
            s.apply_2q(TwoQubitKind::Cz, 0, 5),
            Err(Error::QubitOutOfRange { .. })
        ));
        assert!(matches!(
            StateVector::zero(17),
            Err(Error::TooManyQubits { .. })
        ));
    }

    #[test]
    fn single_qubit_gate_matches_dense_kron() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for qubit in 0..3 {
            let state = random_state(3, &mut rng);
            let u = random_unitary(&mut rng);
            let mut s = state.clone();
            s.apply_1q(qubit, &u).unwrap();
            let expect = mat_vec(&dense_1q_operator(3, qubit, &u), state.amplitudes());
            for (a, b) in s.amplitudes().iter().zip(expect.iter()) {
                assert!((a - b).norm() < 1e-9);
            }
            assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn two_qubit_gates_match_dense_kron() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(kind, c, t) in &[
            (TwoQubitKind::Cx, 0, 3),
            (TwoQubitKind::Cx, 2, 1),
            (TwoQubitKind::Cz, 3, 1),
        ] {
            let state = random_state(4, &mut rng);
            let mut s = state.clone();
            s.apply_2q(kind, c, t).unwrap();
            let expect = mat_vec(&dense_2q_operator(4, kind, c, t), state.amplitudes());
            for (a, b) in s.amplitudes().iter().zip(expect.iter()) {
                assert!((a - b).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn fidelity_examples() {
        let zero = StateVector::zero(1).unwrap();
        let one = StateVector::basis(1, 1).unwrap();
        assert!((fidelity(&zero, &zero).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(fidelity(&zero, &one).unwrap(), 0.0);
        for &t in &[0.2, 1.0, 2.5, -0.7] {
            let mut s = zero.clone();
            s.apply_1q(0, &rotation_unitary(&Axis::Y, t)).unwrap();
            let expect = libm::cos(t / 2.0).powi(2);
            assert!((fidelity(&zero, &s).unwrap() - expect).abs() < 1e-14);
        }
        assert!(matches!(
            fidelity(&zero, &StateVector::zero(2).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn fidelity_ignores_global_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_state(2, &mut rng);
        let b = random_state(2, &mut rng);
        let phase = Complex64::from_polar(1.0, 0.77);
        let b2 = StateVector::from_amplitudes(b.amplitudes().iter().map(|x| x * phase).collect())
            .unwrap();
        assert!((fidelity(&a, &b).unwrap() - fidelity(&a, &b2).unwrap()).abs() < 1e-14);
        assert!((fidelity(&a, &b).unwrap() - fidelity(&b, &a).unwrap()).abs() < 1e-14);
    }

    fn unit(v: [f64; 3]) -> Axis {
        Axis::normalized(v[0], v[1], v[2]).unwrap()
    }

    #[test]
    fn pi_rotation_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n1 = crate::sampling::random_axis_state(&mut rng);
            let n2 = crate::sampling::random_axis_state(&mut rng);
            let lhs = rotation_unitary(&n1, PI) * rotation_unitary(&n2, PI);
            let rhs = rotation_unitary(&unit(n1.cross(&n2)), 2.0 * libm::acos(-n1.dot(&n2)));
            assert!((lhs.phase_overlap(&rhs) - 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn pi_pair_inverts_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..200 {
            let n = crate::sampling::random_axis_state(&mut rng);
            let theta = crate::sampling::uniform_angle(&mut rng);
            let u = rotation_unitary(&n, theta);
            let (first, second) = pi_rotation_pair(&u);
            assert!(first.dot(&n).abs() < 1e-12);
            let lhs = rotation_unitary(&second, PI) * rotation_unitary(&first, PI);
            assert!((lhs.phase_overlap(&u) - 2.0).abs() < 1e-9);
        }
        let (f, s) = pi_rotation_pair(&Unitary2::IDENTITY);
        assert!(
            (rotation_unitary(&s, PI) * rotation_unitary(&f, PI))
                .phase_overlap(&Unitary2::IDENTITY)
                > 2.0 - 1e-12
        );
    }

    proptest::proptest! {
        #[test]
        fn gates_preserve_norm(seed in 0u64..10_000, qubit in 0usize..3, theta in -7.0f64..7.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut s = random_state(3, &mut rng);
            let axis = crate::sampling::random_axis_state(&mut rng);
            s.apply_1q(qubit, &rotation_unitary(&axis, theta)).unwrap();
            s.apply_2q(TwoQubitKind::Cx, qubit, (qubit + 1) % 3).unwrap();
            s.apply_2q(TwoQubitKind::Cz, (qubit + 2) % 3, qubit).unwrap();
            proptest::prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
        }

        #[test]
        fn rotations_are_unitary(seed in 0u64..10_000, theta in -7.0f64..7.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let axis = crate::sampling::random_axis_state(&mut rng);
            proptest::prop_assert!(rotation_unitary(&axis, theta).is_unitary(1e-10));
        }
    }
}
