//! Property checks run by `fraxis verify` at fixed seeds.
//!
//! Each check reports its worst observed deviation so a failure names both
//! the property and by how much it was missed.

use std::f64::consts::{FRAC_PI_2, PI};

use fraxis_core::circuit::{compose_native, decompose_pi_fraxis, Circuit};
use fraxis_core::expressibility::haar_bin_mass;
use fraxis_core::hamiltonian::{two_qubit_model, Pauli, PauliString, PauliSum};
use fraxis_core::optimizers::{
    eig3_symmetric, estimate_axis_model, pi_fraxis_update, rotoselect_update, rotosolve_update,
    theta_fraxis_update, Evaluator, Mat3,
};
use fraxis_core::sampling::{random_axis_state, uniform_angle, AxisInit};
use fraxis_core::statevector::{pi_rotation_pair, rotation_unitary, Axis, TwoQubitKind, Unitary2};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deliberate defects for exercising the failure path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Perturbs one off-diagonal element of every measured `R`.
    RAsymmetry,
}

impl Fault {
    pub fn from_name(name: &str) -> Option<Fault> {
        match name {
            "r-asymmetry" => Some(Fault::RAsymmetry),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, worst: f64, tol: f64) -> CheckResult {
    CheckResult {
        name,
        passed: worst <= tol,
        detail: format!("worst deviation {worst:.3e} (tolerance {tol:.0e})"),
    }
}

fn failed(name: &'static str, e: impl std::fmt::Display) -> CheckResult {
    CheckResult {
        name,
        passed: false,
        detail: format!("error: {e}"),
    }
}

/// Random Pauli sum with `terms` strings and coefficients in `[-1, 1)`.
pub fn random_hamiltonian<R: Rng + ?Sized>(n: usize, terms: usize, rng: &mut R) -> PauliSum {
    let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let list: Vec<(f64, PauliString)> = (0..terms)
        .map(|_| {
            let s = (0..n).map(|_| letters[rng.random_range(0..4)]).collect();
            (rng.random::<f64>() * 2.0 - 1.0, PauliString::new(s))
        })
        .collect();
    PauliSum::from_terms(n, list).expect("valid random terms")
}

/// Parametrized column, CX chain, parametrized column, with random parameters.
pub fn random_circuit<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Circuit {
    let mut c = Circuit::new(n).expect("small register");
    for q in 0..n {
        c.push_param(q, Axis::Y, 0.0).expect("valid slot");
    }
    for q in 1..n {
        c.push_entangler(TwoQubitKind::Cx, q - 1, q)
            .expect("valid slot");
    }
    for q in 0..n {
        c.push_param(q, Axis::Y, 0.0).expect("valid slot");
    }
    c.randomize(AxisInit::StateRandom, None, rng);
    c
}

/// A random instance of one to three qubits and one of its parametrized slots.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R) -> (Circuit, PauliSum, usize) {
    let n = rng.random_range(1..=3);
    let c = random_circuit(n, rng);
    let m = random_hamiltonian(n, 6, rng);
    let slots = c.param_slots();
    let slot = slots[rng.random_range(0..slots.len())];
    (c, m, slot)
}

fn quadratic_form(fault: Option<Fault>) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let (mut worst_id, mut worst_bound, mut worst_sym) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let (c, m, slot) = random_instance(&mut rng);
        let mut model = match estimate_axis_model(&c, &m, slot, false, &mut Evaluator::exact()) {
            Ok(x) => x,
            Err(e) => return vec![failed("quadratic-form-identity", e)],
        };
        if fault == Some(Fault::RAsymmetry) {
            model.r[0][1] += 1e-3;
        }
        worst_sym = worst_sym.max(model.asymmetry());
        let diag = [model.r_elements.x, model.r_elements.y, model.r_elements.z];
        for (k, d) in diag.iter().enumerate() {
            worst_sym = worst_sym.max((model.r[k][k] - 2.0 * d).abs());
        }
        let eig = eig3_symmetric(&model.r);
        for _ in 0..20 {
            let r = random_axis_state(&mut rng);
            let e = c
                .energy_with_substitution(&m, slot, &rotation_unitary(&r, PI))
                .unwrap();
            worst_id = worst_id.max((e - model.quadratic(&r.to_array())).abs());
            let below = eig.values[0] / 2.0 - e;
            let above = e - eig.values[2] / 2.0;
            worst_bound = worst_bound.max(below).max(above);
        }
    }
    vec![
        check("r-symmetry", worst_sym, 1e-12),
        check("quadratic-form-identity", worst_id, 1e-9),
        check("quadratic-form-bounds", worst_bound.max(0.0), 1e-9),
    ]
}

fn pi_pairs() -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let (mut comp, mut inv, mut native) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let n1 = random_axis_state(&mut rng);
        let n2 = random_axis_state(&mut rng);
        let lhs = rotation_unitary(&n1, PI) * rotation_unitary(&n2, PI);
        let cross = n1.cross(&n2);
        let rhs = match Axis::normalized(cross[0], cross[1], cross[2]) {
            Ok(axis) => rotation_unitary(&axis, 2.0 * (-n1.dot(&n2)).acos()),
            Err(_) => continue,
        };
        comp = comp.max((lhs.phase_overlap(&rhs) - 2.0).abs());

        let u = rotation_unitary(&n1, uniform_angle(&mut rng));
        let (first, second) = pi_rotation_pair(&u);
        let back = rotation_unitary(&second, PI) * rotation_unitary(&first, PI);
        inv = inv.max((back.phase_overlap(&u) - 2.0).abs());

        let lowered = compose_native(&decompose_pi_fraxis(&n2));
        native = native.max((lowered.phase_overlap(&rotation_unitary(&n2, PI)) - 2.0).abs());
    }
    vec![
        check("pi-pair-composition", comp, 1e-9),
        check("pi-pair-inversion", inv, 1e-9),
        check("native-decomposition", native, 1e-9),
    ]
}

fn landscape_and_theta() -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let (mut ident, mut oracle) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let (mut c, m, slot) = random_instance(&mut rng);
        let model = match estimate_axis_model(&c, &m, slot, true, &mut Evaluator::exact()) {
            Ok(x) => x,
            Err(e) => return vec![failed("landscape-identity", e)],
        };
        for _ in 0..5 {
            let axis = random_axis_state(&mut rng);
            let theta = uniform_angle(&mut rng);
            let e = c
                .energy_with_substitution(&m, slot, &rotation_unitary(&axis, theta))
                .unwrap();
            ident = ident.max((model.landscape(&axis, theta).unwrap() - e).abs());
        }
        let probe = c.clone();
        let out = match theta_fraxis_update(&mut c, &m, slot, FRAC_PI_2, &mut Evaluator::exact()) {
            Ok(x) => x,
            Err(e) => return vec![failed("theta-fraxis-oracle", e)],
        };
        let best = (0..10_000)
            .map(|_| {
                let a = random_axis_state(&mut rng);
                probe
                    .energy_with_substitution(&m, slot, &rotation_unitary(&a, FRAC_PI_2))
                    .unwrap()
            })
            .fold(f64::INFINITY, f64::min);
        oracle = oracle.max(out.energy - best);
        ident = ident.max((out.energy - c.energy(&m).unwrap()).abs());
    }
    vec![
        check("landscape-identity", ident, 1e-9),
        check("theta-fraxis-oracle", oracle.max(0.0), 1e-6),
    ]
}

#[allow(clippy::needless_range_loop)]
fn eigensolver() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let mut r: Mat3 = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in i..3 {
                let x = rng.random::<f64>() * 8.0 - 4.0;
                r[i][j] = x;
                r[j][i] = x;
            }
        }
        let e = eig3_symmetric(&r);
        for k in 0..3 {
            let v = e.vectors[k];
            for i in 0..3 {
                let rv = r[i][0] * v[0] + r[i][1] * v[1] + r[i][2] * v[2];
                worst = worst.max((rv - e.values[k] * v[i]).abs());
            }
        }
    }
    check("eigensolver-residual", worst, 1e-9)
}

type UpdateFn = fn(&mut Circuit, &PauliSum, &mut Evaluator) -> fraxis_core::Result<()>;

fn evaluation_counts() -> CheckResult {
    let m = two_qubit_model();
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let c = random_circuit(2, &mut rng);
    let mut wrong = Vec::new();
    let runs: [(&str, u64, UpdateFn); 4] = [
        ("pi-fraxis", 6, |c, m, e| {
            pi_fraxis_update(c, m, 0, e).map(|_| ())
        }),
        ("rotoselect", 7, |c, m, e| {
            rotoselect_update(c, m, 0, e).map(|_| ())
        }),
        ("rotosolve", 3, |c, m, e| {
            rotosolve_update(c, m, 0, e).map(|_| ())
        }),
        ("theta-fraxis", 10, |c, m, e| {
            theta_fraxis_update(c, m, 0, 1.0, e).map(|_| ())
        }),
    ];
    for (name, want, run) in runs {
        let mut eval = Evaluator::exact();
        let mut cc = c.clone();
        match run(&mut cc, &m, &mut eval) {
            Ok(()) if eval.substitutions() == want => {}
            Ok(()) => wrong.push(format!("{name}: {} != {want}", eval.substitutions())),
            Err(e) => wrong.push(format!("{name}: {e}")),
        }
    }
    CheckResult {
        name: "evaluation-counts",
        passed: wrong.is_empty(),
        detail: if wrong.is_empty() {
            "6/7/3/10 per update".into()
        } else {
            wrong.join("; ")
        },
    }
}

fn haar_mass() -> CheckResult {
    let mut worst = 0.0f64;
    for dim in [2usize, 4, 32, 64, 1024] {
        let total: f64 = (0..1000)
            .map(|i| haar_bin_mass(i as f64 / 1000.0, (i + 1) as f64 / 1000.0, dim).unwrap())
            .sum();
        worst = worst.max((total - 1.0).abs());
    }
    check("haar-normalization", worst, 1e-12)
}

fn unitarity() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let u = rotation_unitary(&random_axis_state(&mut rng), uniform_angle(&mut rng));
        worst = worst.max((u.dagger() * u).max_abs_diff(&Unitary2::IDENTITY));
    }
    check("rotation-unitarity", worst, 1e-12)
}

/// Runs every check; `fault` injects a defect to exercise the failure path.
pub fn run_checks(fault: Option<Fault>) -> Vec<CheckResult> {
    let mut out = vec![unitarity()];
    out.extend(quadratic_form(fault));
    out.extend(pi_pairs());
    out.extend(landscape_and_theta());
    out.push(eigensolver());
    out.push(evaluation_counts());
    out.push(haar_mass());
    out
}
