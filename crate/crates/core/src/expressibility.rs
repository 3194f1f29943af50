//! Fidelity sampling of randomly parametrized circuits and KL divergence
//! against the Haar fidelity distribution.
//!
//! Samples are drawn in fixed-size chunks, each from its own ChaCha stream,
//! so a histogram depends only on `(seed, count)` and not on how chunks are
//! scheduled across threads.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::circuit::{Circuit, GateSlot};
use crate::error::{Error, Result};
use crate::sampling::{random_axis_param, random_axis_state, uniform_angle};
use crate::statevector::{fidelity, Axis, StateVector};

pub const DEFAULT_BIN_WIDTH: f64 = 0.001;
/// Samples per RNG stream.
pub const SAMPLES_PER_CHUNK: usize = 4096;

/// Counts of fidelities in equal-width bins covering `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FidelityHistogram {
    bin_width: f64,
    counts: Vec<u64>,
    total: u64,
}

impl FidelityHistogram {
    pub fn new(bin_width: f64) -> Result<Self> {
        if !(bin_width > 0.0 && bin_width <= 1.0) {
            return Err(Error::InvalidBinWidth(bin_width));
        }
        let bins = libm::ceil(1.0 / bin_width - 1e-9) as usize;
        Ok(FidelityHistogram {
            bin_width,
            counts: vec![0; bins],
            total: 0,
        })
    }

    pub fn bin_width(&self) -> f64 {
        self.bin_width
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn n_bins(&self) -> usize {
        self.counts.len()
    }

    pub fn bin_lower(&self, i: usize) -> f64 {
        i as f64 * self.bin_width
    }

    pub fn bin_upper(&self, i: usize) -> f64 {
        ((i + 1) as f64 * self.bin_width).min(1.0)
    }

    /// Bins `f` after clamping it to `[0, 1]`; `F = 1` lands in the last bin.
    pub fn add(&mut self, f: f64) {
        let f = f.clamp(0.0, 1.0);
        let i = ((f / self.bin_width) as usize).min(self.counts.len() - 1);
        self.counts[i] += 1;
        self.total += 1;
    }

    pub fn merge(&mut self, other: &FidelityHistogram) -> Result<()> {
        if self.bin_width != other.bin_width || self.counts.len() != other.counts.len() {
            return Err(Error::BinningMismatch);
        }
        for (a, b) in self.counts.iter_mut().zip(other.counts.iter()) {
            *a += b;
        }
        self.total += other.total;
        Ok(())
    }
}

/// How random parameters are drawn for each sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sampler {
    /// Angles uniform on `(-pi, pi]`, axes as in the template.
    RotosolveAngles,
    /// Axis uniform over `{x, y}` (one qubit) or `{x, y, z}`, angle uniform.
    RotoselectAxisAndAngle,
    /// Angle pi, axis from uniform spherical angles.
    FraxisParameterRandom,
    /// Angle pi, axis from normalized Gaussian components.
    FraxisStateRandom,
    /// Haar-random states of the template's dimension, ignoring its gates.
    Haar,
}

impl Sampler {
    pub const ALL: [Sampler; 5] = [
        Sampler::RotosolveAngles,
        Sampler::RotoselectAxisAndAngle,
        Sampler::FraxisParameterRandom,
        Sampler::FraxisStateRandom,
        Sampler::Haar,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Sampler::RotosolveAngles => "rotosolve",
            Sampler::RotoselectAxisAndAngle => "rotoselect",
            Sampler::FraxisParameterRandom => "fraxis-param",
            Sampler::FraxisStateRandom => "fraxis-state",
            Sampler::Haar => "haar",
        }
    }

    pub fn from_name(name: &str) -> Option<Sampler> {
        Sampler::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// Redraws every parametrized slot of `c` according to `sampler`.
pub fn randomize_for_sampler<R: Rng + ?Sized>(
    c: &mut Circuit,
    sampler: Sampler,
    rng: &mut R,
) -> Result<()> {
    let choices: &[Axis] = if c.n_qubits() == 1 {
        &[Axis::X, Axis::Y]
    } else {
        &[Axis::X, Axis::Y, Axis::Z]
    };
    for slot in c.param_slots() {
        let (_, axis, _) = c.param(slot)?;
        let (axis, theta) = match sampler {
            Sampler::RotosolveAngles => (axis, uniform_angle(rng)),
            Sampler::RotoselectAxisAndAngle => {
                let a = choices[rng.random_range(0..choices.len())];
                (a, uniform_angle(rng))
            }
            Sampler::FraxisParameterRandom => (random_axis_param(rng), PI),
            Sampler::FraxisStateRandom => (random_axis_state(rng), PI),
            Sampler::Haar => (axis, 0.0),
        };
        c.set_param(slot, axis, theta)?;
    }
    Ok(())
}

/// Haar-random state from normalized complex Gaussian amplitudes.
pub fn haar_state<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<StateVector> {
    let amps: Vec<Complex64> = (0..1usize << n_qubits)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    StateVector::normalized(amps)
}

/// One random output state of the template under `sampler`.
pub fn sample_state<R: Rng + ?Sized>(
    template: &Circuit,
    sampler: Sampler,
    rng: &mut R,
) -> Result<StateVector> {
    if sampler == Sampler::Haar {
        return haar_state(template.n_qubits(), rng);
    }
    let mut c = template.clone();
    randomize_for_sampler(&mut c, sampler, rng)?;
    c.evaluate()
}

/// Number of chunks covering `count` samples.
pub fn chunk_count(count: usize) -> usize {
    count.div_ceil(SAMPLES_PER_CHUNK)
}

/// Samples of chunk `chunk` out of `count`, drawn from stream `chunk` of `seed`.
pub fn sample_chunk(
    template: &Circuit,
    sampler: Sampler,
    count: usize,
    seed: u64,
    chunk: usize,
    bin_width: f64,
) -> Result<FidelityHistogram> {
    let mut hist = FidelityHistogram::new(bin_width)?;
    let start = chunk * SAMPLES_PER_CHUNK;
    let n = count.saturating_sub(start).min(SAMPLES_PER_CHUNK);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    // Templates are reused for both draws of a pair; clone once per chunk.
    for _ in 0..n {
        let a = sample_state(template, sampler, &mut rng)?;
        let b = sample_state(template, sampler, &mut rng)?;
        hist.add(fidelity(&a, &b)?);
    }
    Ok(hist)
}

/// Histogram of `|<psi|psi'>|^2` over `count` independent pairs.
pub fn sample_fidelities(
    template: &Circuit,
    sampler: Sampler,
    count: usize,
    seed: u64,
    bin_width: f64,
) -> Result<FidelityHistogram> {
    if count == 0 {
        return Err(Error::ZeroSamples);
    }
    let mut hist = FidelityHistogram::new(bin_width)?;
    for chunk in 0..chunk_count(count) {
        hist.merge(&sample_chunk(
            template, sampler, count, seed, chunk, bin_width,
        )?)?;
    }
    Ok(hist)
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::InvalidDimension(dim));
    }
    Ok(())
}

/// Haar fidelity density `(N - 1)(1 - F)^(N - 2)`.
pub fn haar_pdf(f: f64, dim: usize) -> Result<f64> {
    check_dim(dim)?;
    let n = dim as f64;
    Ok((n - 1.0) * libm::pow(1.0 - f, n - 2.0))
}

/// Exact Haar probability of `F` in `[lo, hi]`: `(1 - lo)^(N-1) - (1 - hi)^(N-1)`.
pub fn haar_bin_mass(lo: f64, hi: f64, dim: usize) -> Result<f64> {
    check_dim(dim)?;
    let e = dim as f64 - 1.0;
    Ok(libm::pow(1.0 - lo, e) - libm::pow(1.0 - hi, e))
}

/// `sum_i p_i ln(p_i / q_i)` in nats, with `q_i` the exact Haar bin mass and
/// empty bins contributing zero.
pub fn kl_divergence(h: &FidelityHistogram, dim: usize) -> Result<f64> {
    check_dim(dim)?;
    if h.total() == 0 {
        return Err(Error::ZeroSamples);
    }
    let total = h.total() as f64;
    let mut kl = 0.0;
    for (i, &count) in h.counts().iter().enumerate() {
        if count == 0 {
            continue;
        }
        let p = count as f64 / total;
        let q = haar_bin_mass(h.bin_lower(i), h.bin_upper(i), dim)?.max(f64::MIN_POSITIVE);
        kl += p * libm::log(p / q);
    }
    Ok(kl.max(0.0))
}

/// Limit of the single `R_y` KL divergence for vanishing bin width: `ln(4 / pi)`.
pub fn single_ry_kl_limit() -> f64 {
    libm::log(4.0 / PI)
}

/// Density of `F` for a single `R_y` gate with uniform angles: `1 / (pi sqrt(F (1 - F)))`.
pub fn single_ry_pdf(f: f64) -> f64 {
    1.0 / (PI * libm::sqrt(f * (1.0 - f)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpressibilityReport {
    pub kl_divergence: f64,
    pub ansatz: String,
    pub sampler: Sampler,
    pub n_qubits: usize,
    pub samples: usize,
    pub bin_width: f64,
    pub seed: u64,
}

/// Samples `count` fidelity pairs and scores them against Haar.
pub fn expressibility(
    template: &Circuit,
    ansatz: &str,
    sampler: Sampler,
    count: usize,
    seed: u64,
    bin_width: f64,
) -> Result<(ExpressibilityReport, FidelityHistogram)> {
    let hist = sample_fidelities(template, sampler, count, seed, bin_width)?;
    let report = report_for(template, ansatz, sampler, seed, &hist)?;
    Ok((report, hist))
}

/// Report for an already sampled histogram.
pub fn report_for(
    template: &Circuit,
    ansatz: &str,
    sampler: Sampler,
    seed: u64,
    hist: &FidelityHistogram,
) -> Result<ExpressibilityReport> {
    let kl = kl_divergence(hist, 1usize << template.n_qubits())?;
    Ok(ExpressibilityReport {
        kl_divergence: kl,
        ansatz: String::from(ansatz),
        sampler,
        n_qubits: template.n_qubits(),
        samples: hist.total() as usize,
        bin_width: hist.bin_width(),
        seed,
    })
}

/// True when every parametrized slot of `c` has a cardinal axis.
pub fn has_cardinal_axes(c: &Circuit) -> bool {
    c.slots().iter().all(|s| match s {
        GateSlot::Param { axis, .. } => [Axis::X, Axis::Y, Axis::Z].contains(axis),
        _ => true,
    })
}
