use alloc::vec::Vec;

use super::{Pauli, PauliString, PauliSum};
use crate::error::{Error, Result};

fn term(n: usize, ops: &[(usize, Pauli)]) -> PauliString {
    PauliString::from_sparse(n, ops).expect("indices checked by caller")
}

/// `X + Y + Z` on one qubit.
pub fn toy_xyz() -> PauliSum {
    PauliSum::from_terms(
        1,
        [Pauli::X, Pauli::Y, Pauli::Z].map(|p| (1.0, term(1, &[(0, p)]))),
    )
    .expect("valid terms")
}

/// `0.1 (XX + YY + ZZ) + 0.01 (IZ + ZI)`; ground energy -0.3.
pub fn two_qubit_model() -> PauliSum {
    let mut terms = Vec::new();
    for p in [Pauli::X, Pauli::Y, Pauli::Z] {
        terms.push((0.1, term(2, &[(0, p), (1, p)])));
    }
    terms.push((0.01, term(2, &[(1, Pauli::Z)])));
    terms.push((0.01, term(2, &[(0, Pauli::Z)])));
    PauliSum::from_terms(2, terms).expect("valid terms")
}

/// `J sum_edges (XX + YY + ZZ) + h sum_i Z_i` on a ring (periodic) or path.
pub fn heisenberg_1d(n: usize, coupling: f64, field: f64, periodic: bool) -> Result<PauliSum> {
    if n < 2 {
        return Err(Error::ChainTooShort(n));
    }
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    // A two-site ring has a single bond.
    if periodic && n > 2 {
        edges.push((n - 1, 0));
    }
    let mut terms = Vec::new();
    for &(i, j) in &edges {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            terms.push((coupling, term(n, &[(i, p), (j, p)])));
        }
    }
    if field != 0.0 {
        for i in 0..n {
            terms.push((field, term(n, &[(i, Pauli::Z)])));
        }
    }
    PauliSum::from_terms(n, terms)
}
