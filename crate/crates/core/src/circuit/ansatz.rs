//! Builders for the benchmark circuit layouts.
//!
//! Parametrized slots start as `R_y(0)`; callers randomize them before use.

use super::{Circuit, FixedGate};
use crate::error::{Error, Result};
use crate::statevector::{Axis, TwoQubitKind};

fn param_column(c: &mut Circuit) -> Result<()> {
    for q in 0..c.n_qubits() {
        c.push_param(q, Axis::Y, 0.0)?;
    }
    Ok(())
}

fn layered(
    n_qubits: usize,
    layers: usize,
    prep: &[usize],
    entanglers: &[(usize, usize)],
) -> Result<Circuit> {
    if layers == 0 {
        return Err(Error::ZeroLayers);
    }
    let mut c = Circuit::new(n_qubits)?;
    for &q in prep {
        c.push_fixed(q, FixedGate::X)?;
    }
    for _ in 0..layers {
        param_column(&mut c)?;
        for &(a, b) in entanglers {
            c.push_entangler(TwoQubitKind::Cz, a, b)?;
        }
    }
    param_column(&mut c)?;
    Ok(c)
}

/// One parametrized gate on one qubit.
pub fn single_qubit_ansatz() -> Circuit {
    let mut c = Circuit::new(1).expect("one qubit");
    c.push_param(0, Axis::Y, 0.0).expect("valid slot");
    c
}

/// Two gates, CX(0 -> 1), two gates.
pub fn two_qubit_ansatz() -> Circuit {
    let mut c = Circuit::new(2).expect("two qubits");
    param_column(&mut c).expect("valid slots");
    c.push_entangler(TwoQubitKind::Cx, 0, 1)
        .expect("valid slot");
    param_column(&mut c).expect("valid slots");
    c
}

/// Five qubits. Each layer is a parametrized column followed by CZ on
/// (0,1), (2,3) and then (1,2), (3,4); a closing column ends the circuit,
/// giving `5 (layers + 1)` parametrized slots.
pub fn circuit_a(layers: usize) -> Result<Circuit> {
    layered(5, layers, &[], &[(0, 1), (2, 3), (1, 2), (3, 4)])
}

/// Six qubits prepared with X on qubits 0 and 3. Each layer is a
/// parametrized column followed by CZ on (0,1), (3,4), (1,2), (4,5), (0,3).
pub fn circuit_b(layers: usize) -> Result<Circuit> {
    layered(
        6,
        layers,
        &[0, 3],
        &[(0, 1), (3, 4), (1, 2), (4, 5), (0, 3)],
    )
}

/// Ten qubits: H on every qubit, CX ring 0 -> 1 -> ... -> 9 -> 0, one
/// parametrized gate per qubit.
pub fn qubo_ansatz() -> Circuit {
    let n = 10;
    let mut c = Circuit::new(n).expect("ten qubits");
    for q in 0..n {
        c.push_fixed(q, FixedGate::H).expect("valid slot");
    }
    for q in 0..n {
        c.push_entangler(TwoQubitKind::Cx, q, (q + 1) % n)
            .expect("valid slot");
    }
    param_column(&mut c).expect("valid slots");
    c
}

/// Four qubits: parametrized column, CZ ring (0,1), (1,2), (2,3), (3,0), parametrized column.
pub fn relax_ansatz() -> Circuit {
    let n = 4;
    let mut c = Circuit::new(n).expect("four qubits");
    param_column(&mut c).expect("valid slots");
    for q in 0..n {
        c.push_entangler(TwoQubitKind::Cz, q, (q + 1) % n)
            .expect("valid slot");
    }
    param_column(&mut c).expect("valid slots");
    c
}
