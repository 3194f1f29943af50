//! MaxCut encodings: one-qubit-per-vertex QUBO and the Pauli-label relaxation.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{Pauli, PauliString, PauliSum};
use crate::error::{Error, Result};
use crate::statevector::MAX_QUBITS;

/// Simple undirected graph; edges are stored as `(i, j)` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n_vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if a >= n_vertices || b >= n_vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for {n_vertices} vertices"
                )));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({}, {})",
                    e.0, e.1
                )));
            }
            out.push(e);
        }
        Ok(Graph {
            n_vertices,
            edges: out,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// The Petersen graph: pentagram on 0..5, pentagon on 5..10, spokes `i -- i+5`.
pub fn petersen() -> Graph {
    let mut edges = vec![(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)];
    edges.extend((5..10).map(|i| (i, if i == 9 { 5 } else { i + 1 })));
    edges.extend((0..5).map(|i| (i, i + 5)));
    Graph::new(10, edges).expect("static graph")
}

/// Assigns a vertex to one Pauli letter on one qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VertexLabel {
    pub qubit: usize,
    pub pauli: Pauli,
}

/// Four-qubit labeling of [`petersen`] packing up to three vertices per qubit.
pub fn petersen_relax_labels() -> Vec<VertexLabel> {
    use Pauli::*;
    [
        (2, Y),
        (0, Y),
        (0, Z),
        (3, Y),
        (3, X),
        (0, X),
        (2, Z),
        (3, Z),
        (1, X),
        (2, X),
    ]
    .into_iter()
    .map(|(qubit, pauli)| VertexLabel { qubit, pauli })
    .collect()
}

/// `sum_edges (1 - Z_i Z_j) / 2`, to be maximized.
pub fn maxcut_qubo(g: &Graph) -> Result<PauliSum> {
    let n = g.n_vertices();
    let mut terms = Vec::with_capacity(g.edges().len() * 2);
    for &(i, j) in g.edges() {
        terms.push((0.5, PauliString::identity(n)));
        terms.push((
            -0.5,
            PauliString::from_sparse(n, &[(i, Pauli::Z), (j, Pauli::Z)])?,
        ));
    }
    if terms.is_empty() {
        return PauliSum::new(n);
    }
    PauliSum::from_terms(n, terms)
}

fn validate_labels(g: &Graph, labels: &[VertexLabel]) -> Result<usize> {
    if labels.len() != g.n_vertices() {
        return Err(Error::InvalidLabeling(format!(
            "{} labels for {} vertices",
            labels.len(),
            g.n_vertices()
        )));
    }
    let mut used = BTreeSet::new();
    for (v, l) in labels.iter().enumerate() {
        if l.pauli == Pauli::I {
            return Err(Error::InvalidLabeling(format!(
                "vertex {v} labeled with identity"
            )));
        }
        if !used.insert((l.qubit, l.pauli)) {
            return Err(Error::InvalidLabeling(format!(
                "vertex {v} reuses {}{}",
                l.pauli.as_char(),
                l.qubit
            )));
        }
    }
    let n_qubits = labels.iter().map(|l| l.qubit + 1).max().unwrap_or(0);
    if n_qubits > MAX_QUBITS {
        return Err(Error::TooManyQubits {
            n_qubits,
            max: MAX_QUBITS,
        });
    }
    Ok(n_qubits)
}

/// `sum_edges (1 - 3 W_i W_j) / 2` over the qubits used by `labels`, to be maximized.
pub fn maxcut_relax(g: &Graph, labels: &[VertexLabel]) -> Result<PauliSum> {
    let n = validate_labels(g, labels)?;
    let mut terms = Vec::with_capacity(g.edges().len() * 2);
    for &(i, j) in g.edges() {
        let (a, b) = (labels[i], labels[j]);
        terms.push((0.5, PauliString::identity(n)));
        if a.qubit != b.qubit {
            terms.push((
                -1.5,
                PauliString::from_sparse(n, &[(a.qubit, a.pauli), (b.qubit, b.pauli)])?,
            ));
            continue;
        }
        let (phase, p) = a.pauli.product(b.pauli);
        if phase.im != 0.0 {
            return Err(Error::InvalidLabeling(format!(
                "adjacent vertices {i} and {j} share qubit {} with anticommuting labels",
                a.qubit
            )));
        }
        terms.push((
            -1.5 * phase.re,
            PauliString::from_sparse(n, &[(a.qubit, p)])?,
        ));
    }
    PauliSum::from_terms(n, terms)
}

/// `sum_edges (1 - m_i m_j) / 2` for spins `m_i` in {+1, -1}.
pub fn cut_value(g: &Graph, spins: &[i8]) -> Result<usize> {
    if spins.len() != g.n_vertices() {
        return Err(Error::AssignmentSize {
            expected: g.n_vertices(),
            found: spins.len(),
        });
    }
    if let Some(&bad) = spins.iter().find(|&&s| s != 1 && s != -1) {
        return Err(Error::InvalidSpin(bad));
    }
    Ok(g.edges()
        .iter()
        .filter(|&&(i, j)| spins[i] != spins[j])
        .count())
}

/// Spin assignment of a computational basis state: bit 0 maps to +1, bit 1 to -1.
pub fn spins_from_basis_index(n: usize, index: usize) -> Vec<i8> {
    (0..n)
        .map(|v| if index >> v & 1 == 0 { 1 } else { -1 })
        .collect()
}

/// Exhaustive maximum cut with the lexicographically first optimal assignment.
pub fn max_cut_brute_force(g: &Graph) -> Result<(usize, Vec<i8>)> {
    let n = g.n_vertices();
    if n > 24 {
        return Err(Error::InvalidGraph(format!(
            "{n} vertices is too many for enumeration"
        )));
    }
    let mut best = (0, spins_from_basis_index(n, 0));
    for index in 0..1usize << n {
        let spins = spins_from_basis_index(n, index);
        let cut = cut_value(g, &spins)?;
        if cut > best.0 {
            best = (cut, spins);
        }
    }
    Ok(best)
}
