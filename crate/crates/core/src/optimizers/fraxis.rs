//! Free-axis updates: pi-fixed (eigenvector of `R`) and theta-fixed (secular equation).

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::eig3::{dot3, eig3_symmetric, mat_vec3, Mat3};
use super::evaluator::Evaluator;
use super::model::{estimate_axis_model, estimate_axis_model_with_identity, AxisModel};
use super::UpdateOutcome;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::hamiltonian::PauliSum;
use crate::statevector::Axis;

/// Eigenvalues closer than this are treated as one degenerate level.
const DEGENERACY_GAP: f64 = 1e-9;
const SECULAR_TOL: f64 = 1e-12;
const SECULAR_MAX_ITER: usize = 200;

fn check_finite(r: &Mat3) -> Result<()> {
    if r.iter().flatten().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::Eigensolve(format!(
            "non-finite landscape matrix {r:?}"
        )))
    }
}

fn normalize(v: [f64; 3]) -> Option<[f64; 3]> {
    let n = libm::sqrt(dot3(&v, &v));
    if n > 0.0 && n.is_finite() {
        Some(v.map(|x| x / n))
    } else {
        None
    }
}

fn to_axis(v: [f64; 3]) -> Result<Axis> {
    Axis::normalized(v[0], v[1], v[2])
}

/// Sets the slot to `R_n(pi)` with `n` the minimum-eigenvalue eigenvector of `R`.
///
/// Six evaluations. If the lowest level is degenerate, the incumbent axis is
/// projected onto that eigenspace so the gate moves as little as possible.
pub fn pi_fraxis_update(
    c: &mut Circuit,
    m: &PauliSum,
    slot: usize,
    eval: &mut Evaluator,
) -> Result<UpdateOutcome> {
    let (_, incumbent, _) = c.param(slot)?;
    let before = eval.substitutions();
    let model = estimate_axis_model(c, m, slot, false, eval)?;
    check_finite(&model.r)?;
    let eig = eig3_symmetric(&model.r);
    let mut n = eig.vectors[0];
    if eig.values[1] - eig.values[0] < DEGENERACY_GAP {
        let inc = incumbent.to_array();
        let mut proj = [0.0; 3];
        for k in 0..3 {
            if eig.values[k] - eig.values[0] < DEGENERACY_GAP {
                let w = dot3(&eig.vectors[k], &inc);
                for (p, v) in proj.iter_mut().zip(eig.vectors[k].iter()) {
                    *p += w * v;
                }
            }
        }
        if libm::sqrt(dot3(&proj, &proj)) >= 1e-6 {
            n = normalize(proj).unwrap_or(n);
        }
    }
    let axis = to_axis(n)?;
    let energy = model.quadratic(&axis.to_array());
    c.set_param(slot, axis, PI)?;
    Ok(UpdateOutcome {
        axis,
        theta: PI,
        energy,
        evaluations: eval.substitutions() - before,
    })
}

/// Sets the slot to `R_n(theta)` with the axis minimizing the local landscape at fixed `theta`.
///
/// Ten evaluations. `theta` must not be a multiple of pi.
pub fn theta_fraxis_update(
    c: &mut Circuit,
    m: &PauliSum,
    slot: usize,
    theta: f64,
    eval: &mut Evaluator,
) -> Result<UpdateOutcome> {
    check_angle(theta)?;
    c.param(slot)?;
    let before = eval.substitutions();
    let model = estimate_axis_model(c, m, slot, true, eval)?;
    apply_theta_model(c, slot, theta, &model, eval.substitutions() - before)
}

/// As [`theta_fraxis_update`] with a known identity-substitution energy (nine evaluations).
pub fn theta_fraxis_update_with_identity(
    c: &mut Circuit,
    m: &PauliSum,
    slot: usize,
    theta: f64,
    identity_energy: f64,
    eval: &mut Evaluator,
) -> Result<UpdateOutcome> {
    check_angle(theta)?;
    c.param(slot)?;
    let before = eval.substitutions();
    let model = estimate_axis_model_with_identity(c, m, slot, identity_energy, eval)?;
    apply_theta_model(c, slot, theta, &model, eval.substitutions() - before)
}

fn check_angle(theta: f64) -> Result<()> {
    if !theta.is_finite() || libm::sin(theta).abs() < 1e-12 {
        return Err(Error::DegenerateAngle(theta));
    }
    Ok(())
}

fn apply_theta_model(
    c: &mut Circuit,
    slot: usize,
    theta: f64,
    model: &AxisModel,
    evaluations: u64,
) -> Result<UpdateOutcome> {
    check_finite(&model.r)?;
    let b = model.b.expect("model measured with b");
    let e_i = model.identity_energy.expect("model measured with e_I");
    let (s, co) = libm::sincos(theta / 2.0);
    let a = model.r.map(|row| row.map(|x| s * s * x));
    let g = b.map(|x| s * co * x);
    let n = solve_unit_quadratic(&a, &g)?;
    let axis = to_axis(n)?;
    let nv = axis.to_array();
    let energy = co * co * e_i + 0.5 * dot3(&nv, &mat_vec3(&a, &nv)) + dot3(&g, &nv);
    c.set_param(slot, axis, theta)?;
    Ok(UpdateOutcome {
        axis,
        theta,
        energy,
        evaluations,
    })
}

fn objective(a: &Mat3, g: &[f64; 3], n: &[f64; 3]) -> f64 {
    0.5 * dot3(n, &mat_vec3(a, n)) + dot3(g, n)
}

/// Minimizes `n^T A n / 2 + g . n` over unit vectors `n` for symmetric `A`.
///
/// Stationary points satisfy `(A - mu I) n = -g`. In the eigenbasis of `A` the
/// constraint becomes the secular equation `sum_k beta_k^2 / (a_k - mu)^2 = 1`,
/// whose roots are bracketed between the poles `a_k` and found by bisection.
/// Every root, every hard-case point and every eigenvector is scored and the
/// lowest objective wins.
pub fn solve_unit_quadratic(a: &Mat3, g: &[f64; 3]) -> Result<[f64; 3]> {
    let eig = eig3_symmetric(a);
    let g_norm = libm::sqrt(dot3(g, g));
    if g_norm < 1e-14 {
        return Ok(eig.vectors[0]);
    }
    let scale = eig.values.iter().fold(1.0f64, |m, x| m.max(x.abs()));

    // Group (near-)equal eigenvalues into levels carrying the summed weight beta^2.
    struct Level {
        value: f64,
        weight: f64,
        members: Vec<usize>,
    }
    let beta: [f64; 3] = core::array::from_fn(|k| dot3(&eig.vectors[k], g));
    let mut levels: Vec<Level> = Vec::new();
    for k in 0..3 {
        match levels.last_mut() {
            Some(l) if (eig.values[k] - l.value).abs() <= 1e-12 * scale => {
                l.weight += beta[k] * beta[k];
                l.members.push(k);
            }
            _ => levels.push(Level {
                value: eig.values[k],
                weight: beta[k] * beta[k],
                members: alloc::vec![k],
            }),
        }
    }
    let zero_weight = 1e-20 * g_norm * g_norm;
    let poles: Vec<(f64, f64)> = levels
        .iter()
        .filter(|l| l.weight > 0.0)
        .map(|l| (l.value, l.weight))
        .collect();

    let h = |mu: f64| {
        poles
            .iter()
            .map(|&(p, w)| w / ((p - mu) * (p - mu)))
            .sum::<f64>()
            - 1.0
    };
    let dh = |mu: f64| {
        poles
            .iter()
            .map(|&(p, w)| 2.0 * w / ((p - mu) * (p - mu) * (p - mu)))
            .sum::<f64>()
    };
    let point = |mu: f64| -> [f64; 3] {
        let mut n = [0.0; 3];
        for k in 0..3 {
            let d = eig.values[k] - mu;
            if d != 0.0 {
                let coef = -beta[k] / d;
                for (x, v) in n.iter_mut().zip(eig.vectors[k].iter()) {
                    *x += coef * v;
                }
            }
        }
        n
    };

    let mut candidates: Vec<[f64; 3]> = Vec::new();
    let mut roots: Vec<f64> = Vec::new();

    let (p_lo, w_lo) = poles[0];
    roots.push(bisect_root(
        &h,
        p_lo - g_norm - 1.0,
        p_lo - libm::sqrt(w_lo) / 2.0,
        true,
    )?);
    let (p_hi, w_hi) = poles[poles.len() - 1];
    roots.push(bisect_root(
        &h,
        p_hi + libm::sqrt(w_hi) / 2.0,
        p_hi + g_norm + 1.0,
        false,
    )?);
    for pair in poles.windows(2) {
        let (left, right) = (pair[0].0, pair[1].0);
        // h is convex between poles; locate its minimum from the monotone derivative.
        let mu_min = bisect_monotone(&dh, left, right);
        if h(mu_min) <= 0.0 {
            roots.push(bisect_root(&h, left, mu_min, false)?);
            roots.push(bisect_root(&h, mu_min, right, true)?);
        }
    }
    for mu in roots {
        if let Some(n) = normalize(point(mu)) {
            candidates.push(n);
        }
    }

    // Hard case: a level with no weight admits mu equal to its eigenvalue.
    for level in levels.iter().filter(|l| l.weight <= zero_weight) {
        let mut np = [0.0; 3];
        for k in 0..3 {
            if !level.members.contains(&k) {
                let coef = -beta[k] / (eig.values[k] - level.value);
                for (x, v) in np.iter_mut().zip(eig.vectors[k].iter()) {
                    *x += coef * v;
                }
            }
        }
        let rest = 1.0 - dot3(&np, &np);
        if rest >= 0.0 {
            let t = libm::sqrt(rest);
            for &k in &level.members {
                for sign in [1.0, -1.0] {
                    let v = &eig.vectors[k];
                    if let Some(n) = normalize([
                        np[0] + sign * t * v[0],
                        np[1] + sign * t * v[1],
                        np[2] + sign * t * v[2],
                    ]) {
                        candidates.push(n);
                    }
                }
            }
        }
    }
    for v in eig.vectors {
        candidates.push(v);
        candidates.push(v.map(|x| -x));
    }

    candidates
        .into_iter()
        .filter(|n| n.iter().all(|x| x.is_finite()))
        .min_by(|x, y| objective(a, g, x).total_cmp(&objective(a, g, y)))
        .ok_or(Error::SecularNonConvergence)
}

/// Root of `h` on `[lo, hi]`; `increasing` gives the sign pattern (`h(lo) < 0 < h(hi)` when true).
fn bisect_root(h: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, increasing: bool) -> Result<f64> {
    for _ in 0..SECULAR_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let v = h(mid);
        if v.is_nan() {
            return Err(Error::SecularNonConvergence);
        }
        if v.abs() < SECULAR_TOL {
            return Ok(mid);
        }
        if (v < 0.0) == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::SecularNonConvergence)
}

/// Zero of an increasing function on the open interval `(lo, hi)`.
fn bisect_monotone(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..SECULAR_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return mid;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
