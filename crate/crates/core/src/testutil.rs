//! Dense Kronecker-product oracles used only by unit tests.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::hamiltonian::{Pauli, PauliSum};
use crate::statevector::{universal_unitary, StateVector, TwoQubitKind, Unitary2};

pub type Dense = Vec<Vec<Complex64>>;

pub fn identity(dim: usize) -> Dense {
    let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn from_2x2(u: &Unitary2) -> Dense {
    vec![vec![u.0[0], u.0[1]], vec![u.0[2], u.0[3]]]
}

pub fn kron(a: &Dense, b: &Dense) -> Dense {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![Complex64::new(0.0, 0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn add(a: &Dense, b: &Dense) -> Dense {
    a.iter()
        .zip(b.iter())
        .map(|(ra, rb)| ra.iter().zip(rb.iter()).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn scale(a: &Dense, s: Complex64) -> Dense {
    a.iter()
        .map(|r| r.iter().map(|x| x * s).collect())
        .collect()
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &Dense, v: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .map(|row| row.iter().zip(v.iter()).map(|(x, y)| x * y).sum())
        .collect()
}

/// `factors[k]` acts on qubit `k`; qubit 0 is the rightmost Kronecker factor.
pub fn kron_chain(factors: &[Dense]) -> Dense {
    let mut out = vec![vec![Complex64::new(1.0, 0.0)]];
    for f in factors.iter().rev() {
        out = kron(&out, f);
    }
    out
}

pub fn dense_1q_operator(n: usize, qubit: usize, u: &Unitary2) -> Dense {
    let factors: Vec<Dense> = (0..n)
        .map(|k| if k == qubit { from_2x2(u) } else { identity(2) })
        .collect();
    kron_chain(&factors)
}

pub fn dense_2q_operator(n: usize, kind: TwoQubitKind, control: usize, target: usize) -> Dense {
    let p0 = vec![
        vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        vec![Complex64::new(0.0, 0.0); 2],
    ];
    let p1 = vec![
        vec![Complex64::new(0.0, 0.0); 2],
        vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ];
    let gate = match kind {
        TwoQubitKind::Cx => Unitary2::PAULI_X,
        TwoQubitKind::Cz => Unitary2::PAULI_Z,
    };
    let off: Vec<Dense> = (0..n)
        .map(|k| {
            if k == control {
                p0.clone()
            } else {
                identity(2)
            }
        })
        .collect();
    let on: Vec<Dense> = (0..n)
        .map(|k| {
            if k == control {
                p1.clone()
            } else if k == target {
                from_2x2(&gate)
            } else {
                identity(2)
            }
        })
        .collect();
    add(&kron_chain(&off), &kron_chain(&on))
}

pub fn pauli_matrix(p: Pauli) -> Dense {
    from_2x2(&match p {
        Pauli::I => Unitary2::IDENTITY,
        Pauli::X => Unitary2::PAULI_X,
        Pauli::Y => Unitary2::PAULI_Y,
        Pauli::Z => Unitary2::PAULI_Z,
    })
}

pub fn dense_pauli_sum(m: &PauliSum) -> Dense {
    let dim = 1usize << m.n_qubits();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for (coeff, string) in m.terms() {
        let factors: Vec<Dense> = string.letters().iter().map(|&p| pauli_matrix(p)).collect();
        out = add(
            &out,
            &scale(&kron_chain(&factors), Complex64::new(*coeff, 0.0)),
        );
    }
    out
}

pub fn quadratic_form(m: &Dense, v: &[Complex64]) -> Complex64 {
    let mv = mat_vec(m, v);
    v.iter().zip(mv.iter()).map(|(a, b)| a.conj() * b).sum()
}

pub fn random_state<R: Rng>(n: usize, rng: &mut R) -> StateVector {
    let amps = (0..1usize << n)
        .map(|_| {
            Complex64::new(
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
            )
        })
        .collect();
    StateVector::normalized(amps).unwrap()
}

pub fn random_unitary<R: Rng>(rng: &mut R) -> Unitary2 {
    let u = universal_unitary(
        rng.random::<f64>() * 6.3,
        rng.random::<f64>() * 6.3,
        rng.random::<f64>() * 6.3,
    );
    let phase = Complex64::from_polar(1.0, rng.random::<f64>() * 6.3);
    Unitary2(u.0.map(|e| e * phase))
}
