//! File round trips through the loaders used by the command line.

use std::fs;

use fraxis::formats::{
    format_circuit, format_graph, format_labels, format_pauli_sum, load_circuit, load_graph,
    load_labels, load_pauli_sum,
};
use fraxis::specs;
use fraxis::verify::random_hamiltonian;
use fraxis_core::circuit::circuit_b;
use fraxis_core::hamiltonian::{petersen, petersen_relax_labels, spectrum};
use fraxis_core::sampling::AxisInit;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn pauli_sum_file_round_trip_preserves_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("molecule.paulis");
    // Many-term four-qubit operator standing in for an externally generated
    // molecular Hamiltonian.
    let m = random_hamiltonian(4, 40, &mut ChaCha8Rng::seed_from_u64(9));
    fs::write(&path, format!("# generated\n{}", format_pauli_sum(&m))).unwrap();
    let loaded = load_pauli_sum(&path).unwrap();
    assert_eq!(loaded, m);
    assert_eq!(specs::hamiltonian(path.to_str().unwrap()).unwrap(), m);
    assert_eq!(spectrum(&loaded).unwrap(), spectrum(&m).unwrap());
}

#[test]
fn circuit_file_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ansatz.circuit");
    let mut c = circuit_b(2).unwrap();
    c.randomize(
        AxisInit::StateRandom,
        None,
        &mut ChaCha8Rng::seed_from_u64(4),
    );
    fs::write(&path, format_circuit(&c)).unwrap();
    assert_eq!(load_circuit(&path).unwrap(), c);
    assert_eq!(specs::ansatz(path.to_str().unwrap()).unwrap(), c);
}

#[test]
fn graph_and_labels_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g_path = dir.path().join("petersen.graph");
    let l_path = dir.path().join("petersen.labels");
    fs::write(&g_path, format_graph(&petersen())).unwrap();
    fs::write(&l_path, format_labels(&petersen_relax_labels())).unwrap();
    assert_eq!(load_graph(&g_path).unwrap(), petersen());
    assert_eq!(load_labels(&l_path).unwrap(), petersen_relax_labels());
}

#[test]
fn load_errors_name_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.paulis");
    fs::write(&path, "1.0 XZ\n0.5 XQ\n").unwrap();
    let msg = load_pauli_sum(&path).unwrap_err().to_string();
    assert!(
        msg.contains("bad.paulis") && msg.contains("line 2"),
        "{msg}"
    );
    let missing = dir.path().join("missing.paulis");
    assert!(load_pauli_sum(&missing)
        .unwrap_err()
        .to_string()
        .contains("missing.paulis"));
}
