//! Cyclic Jacobi eigensolver for real symmetric 3x3 matrices.

pub type Mat3 = [[f64; 3]; 3];

/// Eigenpairs sorted by ascending eigenvalue. `vectors[i]` pairs with `values[i]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenTriple {
    pub values: [f64; 3],
    pub vectors: [[f64; 3]; 3],
}

const SIGN_TOL: f64 = 1e-12;

/// Eigen-decomposition of the symmetric part of `r`.
///
/// Each eigenvector is oriented so that its first component with magnitude
/// above 1e-12 is positive, which makes the output deterministic.
pub fn eig3_symmetric(r: &Mat3) -> EigenTriple {
    let mut a = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            a[i][j] = 0.5 * (r[i][j] + r[j][i]);
        }
    }
    let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let scale = a.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale > 0.0 {
        for _ in 0..64 {
            let off = a[0][1].abs() + a[0][2].abs() + a[1][2].abs();
            if off <= 1e-18 * scale {
                break;
            }
            for (p, q) in [(0, 1), (0, 2), (1, 2)] {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    let mut values = [0.0; 3];
    let mut vectors = [[0.0; 3]; 3];
    for (k, &i) in order.iter().enumerate() {
        values[k] = a[i][i];
        // Columns of v are eigenvectors.
        let mut col = [v[0][i], v[1][i], v[2][i]];
        let norm = libm::sqrt(col.iter().map(|x| x * x).sum());
        col = col.map(|x| x / norm);
        if let Some(first) = col.iter().find(|x| x.abs() > SIGN_TOL) {
            if *first < 0.0 {
                col = col.map(|x| -x);
            }
        }
        vectors[k] = col;
    }
    EigenTriple { values, vectors }
}

fn rotate(a: &mut Mat3, v: &mut Mat3, p: usize, q: usize) {
    let apq = a[p][q];
    if apq == 0.0 {
        return;
    }
    let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;
    for k in 0..3 {
        let akp = a[k][p];
        let akq = a[k][q];
        a[k][p] = c * akp - s * akq;
        a[k][q] = s * akp + c * akq;
    }
    for k in 0..3 {
        let apk = a[p][k];
        let aqk = a[q][k];
        a[p][k] = c * apk - s * aqk;
        a[q][k] = s * apk + c * aqk;
    }
    a[p][q] = 0.0;
    a[q][p] = 0.0;
    for row in v.iter_mut() {
        let vkp = row[p];
        let vkq = row[q];
        row[p] = c * vkp - s * vkq;
        row[q] = s * vkp + c * vkq;
    }
}

pub(crate) fn mat_vec3(m: &Mat3, x: &[f64; 3]) -> [f64; 3] {
    [
        m[0][0] * x[0] + m[0][1] * x[1] + m[0][2] * x[2],
        m[1][0] * x[0] + m[1][1] * x[1] + m[1][2] * x[2],
        m[2][0] * x[0] + m[2][1] * x[1] + m[2][2] * x[2],
    ]
}

pub(crate) fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn residual(r: &Mat3, e: &EigenTriple) -> f64 {
        (0..3)
            .map(|i| {
                let rv = mat_vec3(r, &e.vectors[i]);
                (0..3)
                    .map(|k| (rv[k] - e.values[i] * e.vectors[i][k]).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn diagonal_input() {
        let e = eig3_symmetric(&[[-2.0, 0.0, 0.0], [0.0, -2.0, 0.0], [0.0, 0.0, 2.0]]);
        assert_eq!(e.values, [-2.0, -2.0, 2.0]);
        assert!(e.vectors[0][2].abs() < 1e-15);
        let id = eig3_symmetric(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        assert_eq!(id.values, [1.0, 1.0, 1.0]);
        let zero = eig3_symmetric(&[[0.0; 3]; 3]);
        assert_eq!(zero.values, [0.0; 3]);
    }

    #[test]
    fn random_symmetric_residuals() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let mut r = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in i..3 {
                    let x = rng.random::<f64>() * 8.0 - 4.0;
                    r[i][j] = x;
                    r[j][i] = x;
                }
            }
            let e = eig3_symmetric(&r);
            assert!(residual(&r, &e) < 1e-9);
            assert!(e.values[0] <= e.values[1] && e.values[1] <= e.values[2]);
            for i in 0..3 {
                for j in 0..3 {
                    let d = dot3(&e.vectors[i], &e.vectors[j]);
                    assert!((d - if i == j { 1.0 } else { 0.0 }).abs() < 1e-9);
                }
                let first = e.vectors[i].iter().find(|x| x.abs() > SIGN_TOL).unwrap();
                assert!(*first > 0.0);
            }
        }
    }

    #[test]
    fn deterministic() {
        let r = [[1.0, 2.0, 0.5], [2.0, -1.0, 0.3], [0.5, 0.3, 0.7]];
        assert_eq!(eig3_symmetric(&r), eig3_symmetric(&r));
    }
}
