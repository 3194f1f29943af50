//! Lowering of pi-rotations to `Rz` / `sqrt(X)` sequences.

use core::f64::consts::PI;

use crate::statevector::{Axis, Unitary2};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NativeGate {
    Rz(f64),
    SqrtX,
}

impl NativeGate {
    pub fn unitary(self) -> Unitary2 {
        match self {
            NativeGate::Rz(a) => Unitary2::rz(a),
            NativeGate::SqrtX => Unitary2::SQRT_X,
        }
    }
}

/// Spherical angles of a pi-rotation axis used by the native sequence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PiFraxisAngles {
    /// `2 atan2(sqrt(nx^2 + ny^2), nz)`.
    pub theta: f64,
    /// `atan2(ny, nx)`, or 0 on the z axis.
    pub phi: f64,
}

impl PiFraxisAngles {
    pub fn of(axis: &Axis) -> Self {
        let rho = libm::sqrt(axis.x() * axis.x() + axis.y() * axis.y());
        let phi = if rho == 0.0 {
            0.0
        } else {
            libm::atan2(axis.y(), axis.x())
        };
        PiFraxisAngles {
            theta: 2.0 * libm::atan2(rho, axis.z()),
            phi,
        }
    }
}

/// `R_n(pi) ~ Rz(pi + phi) . SX . Rz(pi + theta) . SX . Rz(pi - phi)` up to
/// global phase. The gates are listed in matrix-product order, so the last
/// one acts first on the state.
pub fn decompose_pi_fraxis(axis: &Axis) -> [NativeGate; 5] {
    let PiFraxisAngles { theta, phi } = PiFraxisAngles::of(axis);
    [
        NativeGate::Rz(PI + phi),
        NativeGate::SqrtX,
        NativeGate::Rz(PI + theta),
        NativeGate::SqrtX,
        NativeGate::Rz(PI - phi),
    ]
}

/// Matrix product of the gates in listed order.
pub fn compose_native(gates: &[NativeGate]) -> Unitary2 {
    gates
        .iter()
        .fold(Unitary2::IDENTITY, |acc, g| acc * g.unitary())
}
