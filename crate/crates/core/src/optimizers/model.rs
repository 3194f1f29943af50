//! Local energy landscape of one parametrized gate.
//!
//! With every other gate fixed, replacing gate `d` by `R_n(theta)` gives
//!
//! ```text
//! E(n, theta) = cos^2(theta/2) e_I + sin^2(theta/2) n^T R n / 2 + sin(theta/2) cos(theta/2) b . n
//! ```
//!
//! where `e_I` is the energy with the gate removed, `R` is assembled from six
//! substituted-circuit energies and `b_j = i tr(M [rho, sigma_j])` is stored as
//! a real vector.

use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use super::eig3::{dot3, mat_vec3, Mat3};
use super::evaluator::Evaluator;
use crate::circuit::Circuit;
use crate::error::Result;
use crate::hamiltonian::PauliSum;
use crate::statevector::{rotation_unitary, Axis, Unitary2};

/// Energies with the gate replaced by `X, Y, Z, (X+Y)/sqrt2, (X+Z)/sqrt2, (Y+Z)/sqrt2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RElements {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub xy: f64,
    pub xz: f64,
    pub yz: f64,
}

impl RElements {
    /// The six substitution axes, in measurement order.
    pub fn axes() -> [Axis; 6] {
        let h = FRAC_1_SQRT_2;
        [
            Axis::X,
            Axis::Y,
            Axis::Z,
            Axis::new(h, h, 0.0).expect("unit"),
            Axis::new(h, 0.0, h).expect("unit"),
            Axis::new(0.0, h, h).expect("unit"),
        ]
    }

    pub fn from_array(v: [f64; 6]) -> Self {
        RElements {
            x: v[0],
            y: v[1],
            z: v[2],
            xy: v[3],
            xz: v[4],
            yz: v[5],
        }
    }

    /// Symmetric matrix with diagonal `2 r_k` and off-diagonal `2 r_jk - r_j - r_k`.
    pub fn matrix(&self) -> Mat3 {
        let xy = 2.0 * self.xy - self.x - self.y;
        let xz = 2.0 * self.xz - self.x - self.z;
        let yz = 2.0 * self.yz - self.y - self.z;
        [
            [2.0 * self.x, xy, xz],
            [xy, 2.0 * self.y, yz],
            [xz, yz, 2.0 * self.z],
        ]
    }
}

/// `R`, and optionally `b` and `e_I`, for one slot.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisModel {
    pub r: Mat3,
    pub b: Option<[f64; 3]>,
    pub identity_energy: Option<f64>,
    pub r_elements: RElements,
}

impl AxisModel {
    pub fn from_elements(r_elements: RElements) -> Self {
        AxisModel {
            r: r_elements.matrix(),
            b: None,
            identity_energy: None,
            r_elements,
        }
    }

    /// `n^T R n / 2`, the energy at `theta = pi`.
    pub fn quadratic(&self, n: &[f64; 3]) -> f64 {
        0.5 * dot3(n, &mat_vec3(&self.r, n))
    }

    /// Full landscape value; `None` unless `b` and `e_I` were measured.
    pub fn landscape(&self, axis: &Axis, theta: f64) -> Option<f64> {
        let b = self.b?;
        let e_i = self.identity_energy?;
        let n = axis.to_array();
        let (s, c) = libm::sincos(theta / 2.0);
        Some(c * c * e_i + s * s * self.quadratic(&n) + s * c * dot3(&b, &n))
    }

    /// Largest `|R_ij - R_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let r = &self.r;
        (r[0][1] - r[1][0])
            .abs()
            .max((r[0][2] - r[2][0]).abs())
            .max((r[1][2] - r[2][1]).abs())
    }
}

/// Six substitutions for `R`; with `need_b`, one identity run and three
/// half-rotations more (ten in total) for `e_I` and `b`.
pub fn estimate_axis_model(
    c: &Circuit,
    m: &PauliSum,
    slot: usize,
    need_b: bool,
    eval: &mut Evaluator,
) -> Result<AxisModel> {
    let r = measure_r(c, m, slot, eval)?;
    if !need_b {
        return Ok(AxisModel::from_elements(r));
    }
    let e_i = eval.substituted(c, m, slot, &Unitary2::IDENTITY)?;
    finish_b(c, m, slot, eval, r, e_i)
}

/// As [`estimate_axis_model`] with `need_b`, reusing a known identity-substitution
/// energy so only nine runs are made.
pub fn estimate_axis_model_with_identity(
    c: &Circuit,
    m: &PauliSum,
    slot: usize,
    identity_energy: f64,
    eval: &mut Evaluator,
) -> Result<AxisModel> {
    let r = measure_r(c, m, slot, eval)?;
    finish_b(c, m, slot, eval, r, identity_energy)
}

fn measure_r(c: &Circuit, m: &PauliSum, slot: usize, eval: &mut Evaluator) -> Result<RElements> {
    let mut v = [0.0; 6];
    for (k, axis) in RElements::axes().iter().enumerate() {
        v[k] = eval.substituted(c, m, slot, &Unitary2::pauli_combination(axis))?;
    }
    Ok(RElements::from_array(v))
}

fn finish_b(
    c: &Circuit,
    m: &PauliSum,
    slot: usize,
    eval: &mut Evaluator,
    r: RElements,
    e_i: f64,
) -> Result<AxisModel> {
    // E(R_j(pi/2)) = (e_I + r_j + b_j) / 2
    let mut b = [0.0; 3];
    for (j, (axis, r_j)) in [(Axis::X, r.x), (Axis::Y, r.y), (Axis::Z, r.z)]
        .iter()
        .enumerate()
    {
        let e = eval.substituted(c, m, slot, &rotation_unitary(axis, FRAC_PI_2))?;
        b[j] = 2.0 * e - e_i - r_j;
    }
    Ok(AxisModel {
        r: r.matrix(),
        b: Some(b),
        identity_energy: Some(e_i),
        r_elements: r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{single_qubit_ansatz, two_qubit_ansatz};
    use crate::hamiltonian::{two_qubit_model, Pauli, PauliString};
    use crate::sampling::{random_axis_state, AxisInit};
    use crate::testutil::{dense_1q_operator, dense_pauli_sum, matmul, Dense};
    use alloc::vec::Vec;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z_only() -> PauliSum {
        PauliSum::from_terms(1, [(1.0, PauliString::new(alloc::vec![Pauli::Z]))]).unwrap()
    }

    #[test]
    fn single_qubit_z_model() {
        let c = single_qubit_ansatz();
        let mut eval = Evaluator::exact();
        let model = estimate_axis_model(&c, &z_only(), 0, true, &mut eval).unwrap();
        assert_eq!(eval.substitutions(), 10);
        let r = model.r_elements;
        let got = [r.x, r.y, r.z, r.xy, r.xz, r.yz];
        let want = [-1.0, -1.0, 1.0, -1.0, 0.0, 0.0];
        for (g, w) in got.iter().zip(want.iter()) {
            assert!((g - w).abs() < 1e-14);
        }
        let expect_r = [[-2.0, 0.0, 0.0], [0.0, -2.0, 0.0], [0.0, 0.0, 2.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((model.r[i][j] - expect_r[i][j]).abs() < 1e-14);
            }
        }
        for bj in model.b.unwrap() {
            assert!(bj.abs() < 1e-14);
        }
    }

    #[test]
    fn evaluation_counts() {
        let c = two_qubit_ansatz();
        let m = two_qubit_model();
        let mut eval = Evaluator::exact();
        estimate_axis_model(&c, &m, 0, false, &mut eval).unwrap();
        assert_eq!(eval.substitutions(), 6);
        estimate_axis_model_with_identity(&c, &m, 0, 0.12, &mut eval).unwrap();
        assert_eq!(eval.substitutions(), 15);
    }

    #[test]
    fn diagonal_of_r_is_twice_r_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut c = two_qubit_ansatz();
        c.randomize(AxisInit::StateRandom, None, &mut rng);
        let model =
            estimate_axis_model(&c, &two_qubit_model(), 3, false, &mut Evaluator::exact()).unwrap();
        assert!((model.quadratic(&[1.0, 0.0, 0.0]) - model.r_elements.x).abs() < 1e-14);
        assert_eq!(model.r[0][0], 2.0 * model.r_elements.x);
        assert_eq!(model.asymmetry(), 0.0);
    }

    /// Density matrix just before `slot` and the Heisenberg-picture observable after it.
    fn dense_split(c: &Circuit, m: &PauliSum, slot: usize) -> (Dense, Dense) {
        let n = c.n_qubits();
        let dim = 1 << n;
        let mut pre = crate::testutil::identity(dim);
        let mut post = crate::testutil::identity(dim);
        for (i, s) in c.slots().iter().enumerate() {
            let g = match *s {
                crate::circuit::GateSlot::Param { qubit, axis, theta } => {
                    dense_1q_operator(n, qubit, &rotation_unitary(&axis, theta))
                }
                crate::circuit::GateSlot::Fixed { qubit, gate } => {
                    dense_1q_operator(n, qubit, &gate.unitary())
                }
                crate::circuit::GateSlot::Entangler {
                    kind,
                    control,
                    target,
                } => crate::testutil::dense_2q_operator(n, kind, control, target),
            };
            if i < slot {
                pre = matmul(&g, &pre);
            } else if i > slot {
                post = matmul(&g, &post);
            }
        }
        let psi: Vec<Complex64> = pre.iter().map(|row| row[0]).collect();
        let rho: Dense = psi
            .iter()
            .map(|a| psi.iter().map(|b| a * b.conj()).collect())
            .collect();
        let post_dag: Dense = (0..dim)
            .map(|i| (0..dim).map(|j| post[j][i].conj()).collect())
            .collect();
        let m_hat = matmul(&post_dag, &matmul(&dense_pauli_sum(m), &post));
        (rho, m_hat)
    }

    fn trace(a: &Dense) -> Complex64 {
        (0..a.len()).map(|i| a[i][i]).sum()
    }

    #[test]
    fn b_matches_dense_commutator() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let m = two_qubit_model();
        for _ in 0..10 {
            let mut c = two_qubit_ansatz();
            c.randomize(AxisInit::StateRandom, None, &mut rng);
            for slot in c.param_slots() {
                let (qubit, _, _) = c.param(slot).unwrap();
                let model =
                    estimate_axis_model(&c, &m, slot, true, &mut Evaluator::exact()).unwrap();
                let (rho, m_hat) = dense_split(&c, &m, slot);
                for (j, sigma) in [Unitary2::PAULI_X, Unitary2::PAULI_Y, Unitary2::PAULI_Z]
                    .iter()
                    .enumerate()
                {
                    let s = dense_1q_operator(2, qubit, sigma);
                    let comm: Dense = {
                        let a = matmul(&rho, &s);
                        let b = matmul(&s, &rho);
                        a.iter()
                            .zip(b.iter())
                            .map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| x - y).collect())
                            .collect()
                    };
                    let oracle = trace(&matmul(&m_hat, &comm)) * Complex64::new(0.0, 1.0);
                    assert!(oracle.im.abs() < 1e-12);
                    assert!((model.b.unwrap()[j] - oracle.re).abs() < 1e-9);
                }
                let e_i = trace(&matmul(&m_hat, &rho)).re;
                assert!((model.identity_energy.unwrap() - e_i).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn landscape_identity_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let m = two_qubit_model();
        for _ in 0..20 {
            let mut c = two_qubit_ansatz();
            c.randomize(AxisInit::ParameterRandom, None, &mut rng);
            for slot in c.param_slots() {
                let model =
                    estimate_axis_model(&c, &m, slot, true, &mut Evaluator::exact()).unwrap();
                for _ in 0..5 {
                    let axis = random_axis_state(&mut rng);
                    let theta = crate::sampling::uniform_angle(&mut rng);
                    let direct = c
                        .energy_with_substitution(&m, slot, &rotation_unitary(&axis, theta))
                        .unwrap();
                    assert!((model.landscape(&axis, theta).unwrap() - direct).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn landscape_requires_b() {
        let model = estimate_axis_model(
            &single_qubit_ansatz(),
            &z_only(),
            0,
            false,
            &mut Evaluator::exact(),
        )
        .unwrap();
        assert!(model.landscape(&Axis::X, 1.0).is_none());
        assert!(model.b.is_none() && model.identity_energy.is_none());
    }
}
