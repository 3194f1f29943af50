//! Random parameter draws shared by optimizer initialization and expressibility sampling.

use core::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::statevector::Axis;

/// How initial rotation axes are drawn.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AxisInit {
    /// Uniform polar angle in `[0, pi)` and azimuth in `[-pi, pi)`.
    ParameterRandom,
    /// Three standard normals, normalized (uniform on the sphere).
    StateRandom,
    /// Every slot gets this axis.
    Fixed(Axis),
    /// Leave the axes in the circuit untouched.
    Keep,
}

/// Uniform angle on `(-pi, pi]`.
pub fn uniform_angle<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    PI - 2.0 * PI * u
}

pub fn random_axis_param<R: Rng + ?Sized>(rng: &mut R) -> Axis {
    let theta = PI * rng.random::<f64>();
    let phi = -PI + 2.0 * PI * rng.random::<f64>();
    Axis::from_spherical(theta, phi)
}

pub fn random_axis_state<R: Rng + ?Sized>(rng: &mut R) -> Axis {
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let z: f64 = rng.sample(StandardNormal);
        if let Ok(axis) = Axis::normalized(x, y, z) {
            return axis;
        }
    }
}

impl AxisInit {
    /// Draws an axis, or returns `current` for [`AxisInit::Keep`].
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R, current: Axis) -> Axis {
        match self {
            AxisInit::ParameterRandom => random_axis_param(rng),
            AxisInit::StateRandom => random_axis_state(rng),
            AxisInit::Fixed(axis) => *axis,
            AxisInit::Keep => current,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn angles_stay_in_half_open_interval() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10_000 {
            let a = uniform_angle(&mut rng);
            assert!(a > -PI && a <= PI);
        }
    }

    #[test]
    fn state_random_axes_are_unit_and_unbiased() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut mean = [0.0; 3];
        let n = 20_000;
        for _ in 0..n {
            let a = random_axis_state(&mut rng);
            assert!((a.dot(&a) - 1.0).abs() < 1e-12);
            mean[0] += a.x();
            mean[1] += a.y();
            mean[2] += a.z();
        }
        for m in mean {
            assert!((m / n as f64).abs() < 0.03);
        }
    }

    #[test]
    fn parameter_random_axes_cover_upper_and_lower_hemisphere() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let south = (0..10_000)
            .filter(|_| random_axis_param(&mut rng).z() < 0.0)
            .count();
        assert!((4_500..5_500).contains(&south));
    }
}
