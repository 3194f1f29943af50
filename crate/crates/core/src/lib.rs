//! Free-axis sequential optimization of parametrized quantum circuits.
//!
//! A dense statevector simulator, Pauli-sum Hamiltonians, parametrized circuits
//! with single-slot substitution, the Rotosolve / Rotoselect / Fraxis
//! single-gate optimizers and a KL-divergence expressibility measure.
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
// Fixed 3x3 linear algebra reads more clearly with explicit indices.
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod circuit;
pub mod error;
pub mod expressibility;
pub mod hamiltonian;
pub mod optimizers;
pub mod sampling;
pub mod statevector;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
