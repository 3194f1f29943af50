use alloc::string::ToString;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{i_pow, PauliSum};
use crate::error::{Error, Result};
use crate::statevector::StateVector;

/// Largest register accepted by the dense eigensolver oracle.
pub const GROUND_ENERGY_MAX_QUBITS: usize = 10;

/// Dense `2^n x 2^n` matrix of the Pauli sum.
pub fn to_dense(m: &PauliSum) -> Result<DMatrix<Complex64>> {
    check_size(m)?;
    let dim = 1usize << m.n_qubits();
    let mut out = DMatrix::<Complex64>::zeros(dim, dim);
    for (c, p) in m.terms() {
        let flip = p.flip_mask();
        let sign = p.sign_mask();
        let phase = i_pow(p.y_count()) * *c;
        for col in 0..dim {
            let v = if (col & sign).count_ones() % 2 == 0 {
                phase
            } else {
                -phase
            };
            out[(col ^ flip, col)] += v;
        }
    }
    Ok(out)
}

fn check_size(m: &PauliSum) -> Result<()> {
    if m.n_qubits() > GROUND_ENERGY_MAX_QUBITS {
        return Err(Error::TooManyQubits {
            n_qubits: m.n_qubits(),
            max: GROUND_ENERGY_MAX_QUBITS,
        });
    }
    Ok(())
}

fn diagonal(m: &PauliSum) -> Vec<f64> {
    let dim = 1usize << m.n_qubits();
    (0..dim)
        .map(|i| {
            m.terms()
                .iter()
                .map(|(c, p)| {
                    if (i & p.sign_mask()).count_ones() % 2 == 0 {
                        *c
                    } else {
                        -*c
                    }
                })
                .sum()
        })
        .collect()
}

/// All eigenvalues in ascending order.
pub fn spectrum(m: &PauliSum) -> Result<Vec<f64>> {
    check_size(m)?;
    let mut values = if m.is_diagonal() {
        diagonal(m)
    } else {
        to_dense(m)?
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect()
    };
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Minimum eigenvalue and a normalized eigenvector.
///
/// Diagonal Hamiltonians (only I and Z letters) skip the eigensolver and
/// return the lowest computational basis state.
pub fn ground_energy(m: &PauliSum) -> Result<(f64, StateVector)> {
    check_size(m)?;
    if m.is_diagonal() {
        let diag = diagonal(m);
        let (index, value) = diag
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, v)| (i, *v))
            .expect("nonempty diagonal");
        return Ok((value, StateVector::basis(m.n_qubits(), index)?));
    }
    let eig = to_dense(m)?.symmetric_eigen();
    let (k, value) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, v)| (k, *v))
        .ok_or_else(|| Error::Eigensolve("empty spectrum".to_string()))?;
    if !value.is_finite() {
        return Err(Error::Eigensolve("non-finite eigenvalue".to_string()));
    }
    let amps: Vec<Complex64> = eig.eigenvectors.column(k).iter().copied().collect();
    Ok((value, StateVector::normalized(amps)?))
}
