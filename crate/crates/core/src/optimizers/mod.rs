//! Sequential single-gate optimizers and the sweep scheduler.

mod eig3;
mod evaluator;
mod fraxis;
mod model;
mod rotosolve;
mod sweep;

pub use eig3::{eig3_symmetric, EigenTriple, Mat3};
pub use evaluator::{EvalMode, Evaluator};
pub use fraxis::{
    pi_fraxis_update, solve_unit_quadratic, theta_fraxis_update, theta_fraxis_update_with_identity,
};
pub use model::{estimate_axis_model, estimate_axis_model_with_identity, AxisModel, RElements};
pub use rotosolve::{fit_sinusoid, rotoselect_update, rotosolve_update, wrap_angle, Sinusoid};
pub use sweep::{
    prepare_for_method, snap_to_cardinal, sweep, SweepConfig, Termination, Trajectory, UpdateRecord,
};

use core::fmt;

use crate::statevector::Axis;

/// Single-gate update rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Method {
    /// Angle-only sinusoid fit with the axis held fixed.
    Rotosolve,
    /// Best of the three cardinal axes, each with its optimal angle.
    Rotoselect,
    /// Free axis with the angle fixed at pi.
    PiFraxis,
    /// Free axis with the angle fixed at the given value.
    ThetaFraxis(f64),
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Rotosolve => "rotosolve",
            Method::Rotoselect => "rotoselect",
            Method::PiFraxis => "pi-fraxis",
            Method::ThetaFraxis(_) => "theta-fraxis",
        }
    }

    /// Substituted-circuit evaluations consumed by one update.
    pub fn evaluations_per_update(&self) -> u64 {
        match self {
            Method::Rotosolve => 3,
            Method::Rotoselect => 7,
            Method::PiFraxis => 6,
            Method::ThetaFraxis(_) => 10,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::ThetaFraxis(t) => write!(f, "theta-fraxis({t})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Result of one gate update; the circuit already carries the new parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UpdateOutcome {
    pub axis: Axis,
    pub theta: f64,
    /// Energy predicted by the fitted local model at the new parameters.
    pub energy: f64,
    pub evaluations: u64,
}
