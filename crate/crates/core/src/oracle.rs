//! Monte Carlo brute-force oracle on 𝕊ₙ.
//!
//! Every closed-form inner product used by the operator modules can be checked
//! against plain sample means over uniform sphere points. Sampling: normalize
//! an n-vector of independent standard complex Gaussians, which is exactly
//! uniform on 𝕊ₙ.
//!
//! Generator: ChaCha8 keyed through `seed_from_u64` (SplitMix64 expansion of
//! the seed), with real and imaginary Gaussian parts drawn via the ziggurat
//! sampler of `rand_distr::StandardNormal`. Streams are bit-reproducible for a
//! fixed seed within this implementation; across implementations only
//! statistical agreement is expected.

use num::complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::basis::MultiIndex;
use crate::error::{Error, Result};
use crate::symbols::SphereSymbol;

/// Streaming source of i.i.d. uniform points on 𝕊ₙ.
pub struct SphereSampler {
    dim: usize,
    rng: ChaCha8Rng,
}

impl SphereSampler {
    pub fn new(dim: usize, seed: u64) -> Self {
        assert!(dim >= 1, "ambient dimension must be at least 1");
        Self {
            dim,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Next uniform point; |ζ| = 1 up to float rounding.
    pub fn next_point(&mut self) -> Vec<Complex64> {
        loop {
            let mut v: Vec<Complex64> = (0..self.dim)
                .map(|_| {
                    let re: f64 = StandardNormal.sample(&mut self.rng);
                    let im: f64 = StandardNormal.sample(&mut self.rng);
                    Complex64::new(re, im)
                })
                .collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-12 {
                for z in &mut v {
                    *z /= norm;
                }
                return v;
            }
        }
    }
}

/// `count` uniform points on 𝕊ₙ for a fixed seed.
pub fn sphere_sample(n: usize, count: u64, seed: u64) -> Vec<Vec<Complex64>> {
    let mut s = SphereSampler::new(n, seed);
    (0..count).map(|_| s.next_point()).collect()
}

/// A Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Serialize)]
pub struct McEstimate {
    pub estimate_re: f64,
    pub estimate_im: f64,
    pub stderr: f64,
    pub n: u64,
    pub seed: u64,
}

impl McEstimate {
    pub fn estimate(&self) -> Complex64 {
        Complex64::new(self.estimate_re, self.estimate_im)
    }

    /// |estimate − reference| in units of the standard error (∞ if stderr = 0
    /// and the deviation is nonzero).
    pub fn sigmas_from(&self, reference: Complex64) -> f64 {
        let dev = (self.estimate() - reference).norm();
        if self.stderr == 0.0 {
            if dev == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            dev / self.stderr
        }
    }
}

fn mc_mean<F: FnMut(&[Complex64]) -> Complex64>(
    n: usize,
    n_samples: u64,
    seed: u64,
    mut f: F,
) -> McEstimate {
    // Welford update for a complex-valued sequence; M2 accumulates the total
    // squared deviation Re²+Im².
    let mut sampler = SphereSampler::new(n, seed);
    let mut mean = Complex64::new(0.0, 0.0);
    let mut m2 = 0.0f64;
    for k in 1..=n_samples {
        let x = f(&sampler.next_point());
        let delta = x - mean;
        mean += delta / k as f64;
        m2 += (delta.conj() * (x - mean)).re;
    }
    let stderr = if n_samples > 1 {
        (m2 / (n_samples as f64 - 1.0) / n_samples as f64).sqrt()
    } else {
        0.0
    };
    McEstimate {
        estimate_re: mean.re,
        estimate_im: mean.im,
        stderr,
        n: n_samples,
        seed,
    }
}

/// Sample mean and standard error of f(ζ)·conj(g(ζ)), estimating ⟨f,g⟩_{L²(σ)}.
pub fn mc_pairing(
    f: &SphereSymbol,
    g: &SphereSymbol,
    n_samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: g.dim(),
        });
    }
    if n_samples < 2 {
        return Err(Error::InvalidInput("need at least 2 samples".into()));
    }
    Ok(mc_mean(f.dim(), n_samples, seed, |z| {
        f.eval_unchecked(z) * g.eval_unchecked(z).conj()
    }))
}

/// Estimates the raw Toeplitz entry ⟨T_f z^β, z^γ⟩ = ∫ f · z^β · conj(z^γ) dσ.
pub fn mc_toeplitz_entry(
    f: &SphereSymbol,
    beta: &MultiIndex,
    gamma: &MultiIndex,
    n_samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    if beta.len() != f.dim() || gamma.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: if beta.len() != f.dim() {
                beta.len()
            } else {
                gamma.len()
            },
        });
    }
    if n_samples < 2 {
        return Err(Error::InvalidInput("need at least 2 samples".into()));
    }
    let n = f.dim();
    Ok(mc_mean(n, n_samples, seed, |z| {
        let mut t = f.eval_unchecked(z);
        for j in 0..n {
            t *= z[j].powu(beta.exp(j)) * z[j].conj().powu(gamma.exp(j));
        }
        t
    }))
}
