//! Seeded Monte Carlo estimators for the two equivalent geometric
//! probabilities behind `Vol(Δ^k)` — cyclic sums of uniforms below 1 and
//! cyclic products of half-Cauchy variables below 1 — plus an empirical
//! distribution check of the half-Cauchy quotient.
//!
//! Sampling is chunked with fixed boundaries; chunk `i` draws from its own
//! generator seeded by `worker_seed(seed, i)`, and the reduction is an
//! integer hit count, so results are bit-for-bit reproducible for a given
//! `(seed, n_samples, k)` regardless of thread count.

use std::f64::consts::FRAC_PI_2;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::quadrature::z2_cdf;
use crate::{domain_err, Error};

/// Samples per chunk; fixed so that chunk boundaries (and therefore the
/// random streams) do not depend on the executor.
const CHUNK: u64 = 1 << 16;

/// A Bernoulli Monte Carlo estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    /// `sqrt(mean·(1−mean)/n_samples)`
    pub stderr: f64,
    pub n_samples: u64,
    pub seed: u64,
}

/// SplitMix64 finalizer.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Stream-derivation rule: `worker_seed = splitmix64(seed ⊕ splitmix64(index+1))`.
fn worker_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index + 1))
}

/// Uniform draw on the open interval (0,1): 53-bit mantissa, exact zeros
/// rejected (the polytopes are open).
fn open_unit(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let u = ((rng.next_u64() >> 11) as f64) * (1.0 / (1u64 << 53) as f64);
        if u > 0.0 {
            return u;
        }
    }
}

/// A deterministic stream of open-(0,1) uniforms, for validation-point
/// sampling outside the estimators.
pub fn uniform_stream(seed: u64) -> impl FnMut() -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(seed));
    move || open_unit(&mut rng)
}

/// Half-Cauchy quantile map `u ↦ tan(πu/2)` (inverse CDF of the density
/// `(2/π)/(x²+1)` on (0,∞)); strictly increasing. Rejects `u ∉ (0,1)`.
pub fn sample_half_cauchy(u: f64) -> Result<f64, Error> {
    if !(u > 0.0 && u < 1.0) {
        return domain_err(format!("sample_half_cauchy requires u in (0,1), got {u}"));
    }
    Ok((FRAC_PI_2 * u).tan())
}

/// Runs `chunk_hits` over fixed-size chunks and sums the integer hit counts;
/// parallel when the `parallel` feature is on, identical results either way.
fn run_chunks<F>(n_samples: u64, chunk_hits: F) -> u64
where
    F: Fn(u64, u64) -> u64 + Sync,
{
    let n_chunks = n_samples.div_ceil(CHUNK);
    let count = |ci: u64| {
        let lo = ci * CHUNK;
        let hi = (lo + CHUNK).min(n_samples);
        chunk_hits(ci, hi - lo)
    };
    #[cfg(feature = "parallel")]
    {
        (0..n_chunks).into_par_iter().map(count).sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n_chunks).map(count).sum()
    }
}

fn estimate_from_hits(hits: u64, n_samples: u64, seed: u64) -> Estimate {
    let mean = hits as f64 / n_samples as f64;
    Estimate {
        mean,
        stderr: (mean * (1.0 - mean) / n_samples as f64).sqrt(),
        n_samples,
        seed,
    }
}

fn check_mc_args(k: u32, n_samples: u64) -> Result<(), Error> {
    if k < 1 {
        return domain_err("k must be ≥ 1");
    }
    if n_samples < 1 {
        return domain_err("n_samples must be ≥ 1");
    }
    Ok(())
}

/// Estimates `Vol(Δ^k) = Pr(U_1+U_2 < 1, …, U_k+U_1 < 1)` for independent
/// uniforms on (0,1), indexing cyclic mod k.
pub fn mc_delta_volume(k: u32, n_samples: u64, seed: u64) -> Result<Estimate, Error> {
    check_mc_args(k, n_samples)?;
    let k = k as usize;
    let hits = run_chunks(n_samples, |ci, cnt| {
        let mut rng = ChaCha8Rng::seed_from_u64(worker_seed(seed, ci));
        let mut u = vec![0.0f64; k];
        let mut hits = 0u64;
        for _ in 0..cnt {
            for v in u.iter_mut() {
                *v = open_unit(&mut rng);
            }
            if (0..k).all(|i| u[i] + u[(i + 1) % k] < 1.0) {
                hits += 1;
            }
        }
        hits
    });
    Ok(estimate_from_hits(hits, n_samples, seed))
}

/// Estimates `Pr(Ξ_1Ξ_2 < 1, …, Ξ_kΞ_1 < 1)` for independent half-Cauchy
/// variables; the target coincides with `Vol(Δ^k)` (both equal `(2/π)^k S(k)`).
pub fn mc_hypertope_prob(k: u32, n_samples: u64, seed: u64) -> Result<Estimate, Error> {
    check_mc_args(k, n_samples)?;
    let k = k as usize;
    let hits = run_chunks(n_samples, |ci, cnt| {
        let mut rng = ChaCha8Rng::seed_from_u64(worker_seed(seed, ci));
        let mut xi = vec![0.0f64; k];
        let mut hits = 0u64;
        for _ in 0..cnt {
            for v in xi.iter_mut() {
                *v = (FRAC_PI_2 * open_unit(&mut rng)).tan();
            }
            if (0..k).all(|i| xi[i] * xi[(i + 1) % k] < 1.0) {
                hits += 1;
            }
        }
        hits
    });
    Ok(estimate_from_hits(hits, n_samples, seed))
}

/// Draws `n_samples` quotients `Z = Ξ_1/Ξ_2` of two half-Cauchy variables,
/// deterministically per `(seed, n_samples)`.
pub(crate) fn sample_z2(n_samples: u64, seed: u64) -> Vec<f64> {
    let n_chunks = n_samples.div_ceil(CHUNK);
    let chunk = |ci: u64| {
        let lo = ci * CHUNK;
        let hi = (lo + CHUNK).min(n_samples);
        let mut rng = ChaCha8Rng::seed_from_u64(worker_seed(seed, ci));
        (lo..hi)
            .map(|_| {
                let x1 = (FRAC_PI_2 * open_unit(&mut rng)).tan();
                let x2 = (FRAC_PI_2 * open_unit(&mut rng)).tan();
                x1 / x2
            })
            .collect::<Vec<f64>>()
    };
    #[cfg(feature = "parallel")]
    {
        (0..n_chunks).into_par_iter().flat_map_iter(chunk).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n_chunks).flat_map(chunk).collect()
    }
}

/// 8-point Gauss–Legendre abscissas and weights on [−1, 1].
const GL8_X: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL8_W: [f64; 4] = [
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// `∫_a^b f_Z` for 0 < a ≤ b by Gauss–Legendre panels. Gaps are split
/// geometrically so every panel has relative width ≤ 1/4, where the smooth
/// density is resolved to machine accuracy.
fn density_mass_between(a: f64, b: f64) -> f64 {
    debug_assert!(0.0 < a && a <= b);
    if a == b {
        return 0.0;
    }
    let panels = ((b / a).ln() / 0.25_f64.ln_1p()).ceil().max(1.0) as u64;
    let ratio = (b / a).powf(1.0 / panels as f64);
    let mut total = 0.0;
    let mut lo = a;
    for i in 0..panels {
        let hi = if i + 1 == panels { b } else { lo * ratio };
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        let mut acc = 0.0;
        for (x, w) in GL8_X.iter().zip(GL8_W) {
            acc += w * (z2_density(mid + half * x) + z2_density(mid - half * x));
        }
        total += half * acc;
        lo = hi;
    }
    total
}

/// Model CDF at each point of an ascending-sorted sample: the first value by
/// direct quadrature ([`z2_cdf`] at `tol`), the rest by compensated cumulative
/// integration of the density across consecutive gaps.
pub(crate) fn model_cdf_at_sorted(sorted: &[f64], tol: f64) -> Result<Vec<f64>, Error> {
    let mut out = Vec::with_capacity(sorted.len());
    let mut cdf = z2_cdf(sorted[0], tol)?;
    let mut carry = 0.0;
    out.push(cdf);
    for w in sorted.windows(2) {
        let y = density_mass_between(w[0], w[1]) - carry;
        let t = cdf + y;
        carry = (t - cdf) - y;
        cdf = t;
        out.push(cdf);
    }
    Ok(out)
}

/// Kolmogorov–Smirnov statistic `sup_z |F̂_n(z) − F(z)|` of a sample against
/// the model CDF. `tol` is the quadrature tolerance anchoring the CDF.
pub(crate) fn ks_statistic(sample: &mut [f64], tol: f64) -> Result<f64, Error> {
    sample.sort_unstable_by(f64::total_cmp);
    let n = sample.len() as f64;
    let cdf = model_cdf_at_sorted(sample, tol)?;
    let mut worst = f64::NEG_INFINITY;
    for (i, f) in cdf.iter().enumerate() {
        let upper = (i as f64 + 1.0) / n - f;
        let lower = f - i as f64 / n;
        worst = worst.max(upper.max(lower));
    }
    Ok(worst)
}

/// Draws `n_samples ≥ 10⁴` quotients of half-Cauchy pairs and returns the
/// KS statistic against the quotient CDF; compare against `1.95/√n` (a ~4σ
/// acceptance level). `tol` is the CDF quadrature tolerance.
pub fn z2_distribution_check(n_samples: u64, seed: u64, tol: f64) -> Result<f64, Error> {
    if n_samples < 10_000 {
        return domain_err(format!(
            "z2_distribution_check requires n_samples ≥ 10^4, got {n_samples}"
        ));
    }
    let mut sample = sample_z2(n_samples, seed);
    ks_statistic(&mut sample, tol)
}
