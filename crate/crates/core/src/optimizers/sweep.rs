//! Sweep scheduler: repeated passes over every parametrized slot in circuit order.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::evaluator::Evaluator;
use super::fraxis::{pi_fraxis_update, theta_fraxis_update};
use super::rotosolve::{rotoselect_update, rotosolve_update};
use super::{Method, UpdateOutcome};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::hamiltonian::PauliSum;
use crate::statevector::Axis;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepConfig {
    pub method: Method,
    pub max_sweeps: usize,
    /// Stop once a full sweep improves the energy by less than this.
    pub tol: f64,
}

impl SweepConfig {
    pub fn new(method: Method) -> Self {
        SweepConfig {
            method,
            max_sweeps: 100,
            tol: 1e-8,
        }
    }
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig::new(Method::PiFraxis)
    }
}

/// One gate update.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UpdateRecord {
    pub sweep: usize,
    pub slot: usize,
    pub method: Method,
    /// Energy after the update, as predicted by the fitted local model.
    pub energy: f64,
    pub axis: Axis,
    pub theta: f64,
    /// Substituted-circuit evaluations spent on this update.
    pub evaluations: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    /// `max_sweeps` was zero; nothing ran.
    NotRun,
    /// A sweep improved the energy by less than the tolerance.
    Converged { sweeps: usize },
    /// Ran all `max_sweeps` sweeps.
    MaxSweeps,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    /// Energy before the first update (after method preparation).
    pub initial_energy: f64,
    pub records: Vec<UpdateRecord>,
    pub status: Termination,
}

impl Trajectory {
    pub fn final_energy(&self) -> f64 {
        self.records
            .last()
            .map_or(self.initial_energy, |r| r.energy)
    }

    pub fn total_evaluations(&self) -> u64 {
        self.records.iter().map(|r| r.evaluations).sum()
    }

    /// Number of completed sweeps.
    pub fn sweeps(&self) -> usize {
        self.records.last().map_or(0, |r| r.sweep + 1)
    }

    /// Energy after the last update of each sweep.
    pub fn sweep_energies(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for (i, r) in self.records.iter().enumerate() {
            if self
                .records
                .get(i + 1)
                .is_none_or(|next| next.sweep != r.sweep)
            {
                out.push(r.energy);
            }
        }
        out
    }
}

/// The cardinal axis nearest `axis` and the sign that maps the rotation onto it,
/// using `R_{-n}(theta) = R_n(-theta)`.
pub fn snap_to_cardinal(axis: &Axis) -> (Axis, f64) {
    let v = axis.to_array();
    let mut k = 0;
    for i in 1..3 {
        if v[i].abs() > v[k].abs() {
            k = i;
        }
    }
    let sign = if v[k] < 0.0 { -1.0 } else { 1.0 };
    ([Axis::X, Axis::Y, Axis::Z][k], sign)
}

/// Puts every parametrized slot into the form the method's update assumes:
/// angle pi for pi-Fraxis, the fixed angle for theta-Fraxis, cardinal axes for
/// Rotoselect. Rotosolve needs nothing.
pub fn prepare_for_method(c: &mut Circuit, method: Method) -> Result<()> {
    if let Method::ThetaFraxis(t) = method {
        if !t.is_finite() || libm::sin(t).abs() < 1e-12 {
            return Err(Error::DegenerateAngle(t));
        }
    }
    for slot in c.param_slots() {
        let (_, axis, theta) = c.param(slot)?;
        match method {
            Method::Rotosolve => {}
            Method::PiFraxis => c.set_theta(slot, PI)?,
            Method::ThetaFraxis(t) => c.set_theta(slot, t)?,
            Method::Rotoselect => {
                let (cardinal, sign) = snap_to_cardinal(&axis);
                c.set_param(slot, cardinal, sign * theta)?;
            }
        }
    }
    Ok(())
}

fn update(
    c: &mut Circuit,
    m: &PauliSum,
    slot: usize,
    method: Method,
    eval: &mut Evaluator,
) -> Result<UpdateOutcome> {
    match method {
        Method::Rotosolve => rotosolve_update(c, m, slot, eval),
        Method::Rotoselect => rotoselect_update(c, m, slot, eval),
        Method::PiFraxis => pi_fraxis_update(c, m, slot, eval),
        Method::ThetaFraxis(t) => theta_fraxis_update(c, m, slot, t, eval),
    }
}

/// Runs sequential updates over the parametrized slots in circuit order
/// (column by column, ascending qubit within a column) until `max_sweeps`
/// sweeps have run or one sweep improves the energy by less than `tol`.
pub fn sweep(
    c: &mut Circuit,
    m: &PauliSum,
    config: &SweepConfig,
    eval: &mut Evaluator,
) -> Result<Trajectory> {
    if config.max_sweeps == 0 {
        let initial_energy = eval.energy(c, m)?;
        return Ok(Trajectory {
            initial_energy,
            records: Vec::new(),
            status: Termination::NotRun,
        });
    }
    prepare_for_method(c, config.method)?;
    let initial_energy = eval.energy(c, m)?;
    let slots = c.param_slots();
    let mut records = Vec::with_capacity(slots.len() * config.max_sweeps.min(1000));
    let mut previous = initial_energy;
    for s in 0..config.max_sweeps {
        for &slot in &slots {
            let out = update(c, m, slot, config.method, eval)?;
            records.push(UpdateRecord {
                sweep: s,
                slot,
                method: config.method,
                energy: out.energy,
                axis: out.axis,
                theta: out.theta,
                evaluations: out.evaluations,
            });
        }
        let current = records.last().map_or(previous, |r| r.energy);
        if previous - current < config.tol {
            return Ok(Trajectory {
                initial_energy,
                records,
                status: Termination::Converged { sweeps: s + 1 },
            });
        }
        previous = current;
    }
    Ok(Trajectory {
        initial_energy,
        records,
        status: Termination::MaxSweeps,
    })
}
