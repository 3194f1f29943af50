//! Angle-only sinusoid updates with fixed (Rotosolve) or cardinal-choice (Rotoselect) axes.

use core::f64::consts::{FRAC_PI_2, PI};

use super::evaluator::Evaluator;
use super::UpdateOutcome;
use crate::circuit::Circuit;
use crate::error::Result;
use crate::hamiltonian::PauliSum;
use crate::statevector::{rotation_unitary, Axis, Unitary2};

/// Amplitudes below this are treated as a flat landscape.
const FLAT_TOL: f64 = 1e-12;
/// Rotoselect keeps the earlier axis unless a later one is lower by more than this.
const TIE_TOL: f64 = 1e-12;

/// `E(theta) = offset + amplitude * cos(theta - phase)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sinusoid {
    pub offset: f64,
    pub amplitude: f64,
    pub phase: f64,
}

impl Sinusoid {
    pub fn value(&self, theta: f64) -> f64 {
        self.offset + self.amplitude * libm::cos(theta - self.phase)
    }

    pub fn is_flat(&self) -> bool {
        self.amplitude < FLAT_TOL
    }

    /// Minimizing angle in `(-pi, pi]`, or `current` when flat.
    pub fn argmin(&self, current: f64) -> f64 {
        if self.is_flat() {
            current
        } else {
            wrap_angle(self.phase + PI)
        }
    }
}

/// Fits the sinusoid through `E(0)`, `E(pi/2)` and `E(-pi/2)`.
pub fn fit_sinusoid(e_zero: f64, e_plus: f64, e_minus: f64) -> Sinusoid {
    let offset = 0.5 * (e_plus + e_minus);
    let ks = 0.5 * (e_plus - e_minus);
    let kc = e_zero - offset;
    Sinusoid {
        offset,
        amplitude: libm::hypot(ks, kc),
        phase: libm::atan2(ks, kc),
    }
}

/// Maps an angle into `(-pi, pi]`.
pub fn wrap_angle(x: f64) -> f64 {
    let mut w = libm::fmod(x + PI, 2.0 * PI);
    if w <= 0.0 {
        w += 2.0 * PI;
    }
    w - PI
}

fn half_turns(
    c: &Circuit,
    m: &PauliSum,
    slot: usize,
    axis: &Axis,
    eval: &mut Evaluator,
) -> Result<(f64, f64)> {
    let plus = eval.substituted(c, m, slot, &rotation_unitary(axis, FRAC_PI_2))?;
    let minus = eval.substituted(c, m, slot, &rotation_unitary(axis, -FRAC_PI_2))?;
    Ok((plus, minus))
}

/// Optimizes the angle of `slot` with its axis fixed. Three evaluations.
pub fn rotosolve_update(
    c: &mut Circuit,
    m: &PauliSum,
    slot: usize,
    eval: &mut Evaluator,
) -> Result<UpdateOutcome> {
    let (_, axis, theta) = c.param(slot)?;
    let before = eval.substitutions();
    let e_zero = eval.substituted(c, m, slot, &Unitary2::IDENTITY)?;
    let (plus, minus) = half_turns(c, m, slot, &axis, eval)?;
    let fit = fit_sinusoid(e_zero, plus, minus);
    let new_theta = fit.argmin(theta);
    c.set_param(slot, axis, new_theta)?;
    Ok(UpdateOutcome {
        axis,
        theta: new_theta,
        energy: fit.value(new_theta),
        evaluations: eval.substitutions() - before,
    })
}

/// Picks the best of `x, y, z` with its optimal angle. Seven evaluations, since
/// `E(0)` does not depend on the axis. Ties resolve to the earlier axis.
pub fn rotoselect_update(
    c: &mut Circuit,
    m: &PauliSum,
    slot: usize,
    eval: &mut Evaluator,
) -> Result<UpdateOutcome> {
    let (_, incumbent, theta) = c.param(slot)?;
    let before = eval.substitutions();
    let e_zero = eval.substituted(c, m, slot, &Unitary2::IDENTITY)?;
    let mut best: Option<(Axis, f64, f64)> = None;
    for axis in [Axis::X, Axis::Y, Axis::Z] {
        let (plus, minus) = half_turns(c, m, slot, &axis, eval)?;
        let fit = fit_sinusoid(e_zero, plus, minus);
        // A flat axis keeps the current angle only if it is the incumbent axis.
        let start = if axis == incumbent { theta } else { 0.0 };
        let t = fit.argmin(start);
        let e = fit.value(t);
        if best.is_none_or(|(_, _, be)| e < be - TIE_TOL) {
            best = Some((axis, t, e));
        }
    }
    let (axis, new_theta, energy) = best.expect("three axes tried");
    c.set_param(slot, axis, new_theta)?;
    Ok(UpdateOutcome {
        axis,
        theta: new_theta,
        energy,
        evaluations: eval.substitutions() - before,
    })
}
