//! Tanh-sinh (double exponential) integration on the open unit interval, and
//! the logarithmic-integral identities built on it: `J_k`, `J_{k,a}`, the
//! vanishing log integrals, principal-value integrals with a simple pole,
//! density normalizations, and the density/CDF of the half-Cauchy quotient.
//!
//! All semi-infinite integrals are folded to `(0,1)` with the substitution
//! `z → 1/u` before integration; the engine never sees an infinite domain.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::{domain_err, Error};

/// Result of a quadrature run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// Difference of the last two refinement levels.
    pub abs_error_estimate: f64,
    /// Number of integrand evaluations.
    pub evaluations: u64,
}

/// Node cutoff in transform space. Beyond |t| ≈ 6.2 the node coordinate
/// underflows to the endpoint and the weight to zero.
const T_MAX: f64 = 6.5;
const MAX_LEVELS: u32 = 12;

/// Radius around a removable singular point inside which integrand wrappers
/// substitute the explicit limit value, avoiding 0/0 cancellation.
pub const REMOVABLE_RADIUS: f64 = 1e-6;

#[derive(Default, Clone, Copy)]
struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

/// Abscissa and weight of the transformation `x = (1 + tanh((π/2)·sinh t))/2`.
/// The abscissa is assembled from the distance to the nearer endpoint so that
/// nodes stay accurate down to ~1e-300 from either end.
fn ts_node(t: f64) -> (f64, f64) {
    let u = FRAC_PI_2 * t.sinh();
    let e = (-2.0 * u.abs()).exp();
    let near = e / (1.0 + e);
    let x = if u >= 0.0 { 1.0 - near } else { near };
    let sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
    let w = FRAC_PI_2 * t.cosh() * sech2 / 2.0;
    (x, w)
}

/// Integrates `f` over the open interval (0,1) by tanh-sinh quadrature with
/// level doubling until the difference of successive levels is ≤ `tol`.
///
/// Endpoint singularities up to logarithmic powers (and integrable algebraic
/// ones) are handled by the transformation; the integrand is never evaluated
/// at 0 or 1. Non-convergence after the maximum refinement level is reported
/// as an error carrying the best estimate. The node set is a deterministic
/// function of the level, so results are reproducible.
pub fn integrate_unit<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<QuadResult, Error> {
    if !(tol > 0.0 && tol.is_finite()) {
        return domain_err(format!("quadrature tolerance must be positive and finite, got {tol}"));
    }
    let mut evaluations: u64 = 0;
    let node_value = |t: f64| -> Option<f64> {
        let (x, w) = ts_node(t);
        if w == 0.0 || x <= 0.0 || x >= 1.0 {
            return None;
        }
        Some(w * f(x))
    };

    // Level 0: spacing h = 1.
    let mut s0 = KahanSum::default();
    if let Some(v) = node_value(0.0) {
        evaluations += 1;
        s0.add(v);
    }
    let mut j = 1u32;
    while f64::from(j) <= T_MAX {
        for t in [f64::from(j), -f64::from(j)] {
            if let Some(v) = node_value(t) {
                evaluations += 1;
                s0.add(v);
            }
        }
        j += 1;
    }
    let mut integral = s0.value();
    let mut error = f64::INFINITY;

    for level in 1..=MAX_LEVELS {
        let h = 0.5_f64.powi(level as i32);
        let mut s = KahanSum::default();
        let mut i = 0u64;
        loop {
            let t = (2 * i + 1) as f64 * h;
            if t > T_MAX {
                break;
            }
            for tt in [t, -t] {
                if let Some(v) = node_value(tt) {
                    evaluations += 1;
                    s.add(v);
                }
            }
            i += 1;
        }
        let refined = integral / 2.0 + h * s.value();
        error = (refined - integral).abs();
        integral = refined;
        if level >= 2 && error <= tol {
            return Ok(QuadResult {
                value: integral,
                abs_error_estimate: error,
                evaluations,
            });
        }
    }
    Err(Error::QuadratureNonConvergence {
        value: integral,
        error_estimate: error,
        evaluations,
    })
}

/// `J_k = ∫_0^∞ ln^{k−1}(z)/(z²−(−1)^k) dz`, computed in the folded form
/// `2·∫_0^1 ln^{k−1}(z)/(z²−(−1)^k) dz` for `k ≥ 2`.
///
/// For even k the point z = 1 is removable; the wrapper substitutes the limit
/// (1/2 for k = 2, 0 for even k ≥ 4) within [`REMOVABLE_RADIUS`].
pub fn j_k_quad(k: u32, tol: f64) -> Result<QuadResult, Error> {
    if k < 2 {
        return domain_err("j_k_quad requires k ≥ 2 (J_1 diverges)");
    }
    let km1 = (k - 1) as i32;
    let even = k % 2 == 0;
    let f = move |z: f64| {
        if even {
            if (z - 1.0).abs() < REMOVABLE_RADIUS {
                return if k == 2 { 0.5 } else { 0.0 };
            }
            z.ln().powi(km1) / (z * z - 1.0)
        } else {
            z.ln().powi(km1) / (z * z + 1.0)
        }
    };
    let r = integrate_unit(f, tol / 2.0)?;
    Ok(QuadResult {
        value: 2.0 * r.value,
        abs_error_estimate: 2.0 * r.abs_error_estimate,
        evaluations: r.evaluations,
    })
}

/// `J_{k,a} = ∫_0^∞ ln^{k−1}(z)/(z^a−(−1)^k) dz` for `k ≥ 2`, `a > 1`,
/// computed as the sum of the (0,1) part and the z → 1/u image of the (1,∞)
/// part, which combine to
/// `∫_0^1 ln^{k−1}(u)·(1+u^{a−2})/(u^a−(−1)^k) du`.
pub fn j_ka_quad(k: u32, a: f64, tol: f64) -> Result<QuadResult, Error> {
    if k < 2 {
        return domain_err("j_ka_quad requires k ≥ 2");
    }
    if !(a > 1.0 && a.is_finite()) {
        return domain_err(format!("j_ka_quad requires a > 1, got {a}"));
    }
    let km1 = (k - 1) as i32;
    let even = k % 2 == 0;
    let sign = if even { 1.0 } else { -1.0 };
    let f = move |u: f64| {
        if even && (u - 1.0).abs() < REMOVABLE_RADIUS {
            // lim_{u→1} ln^{k−1}(u)(1+u^{a−2})/(u^a−1) = 2/a for k=2, 0 beyond
            return if k == 2 { 2.0 / a } else { 0.0 };
        }
        u.ln().powi(km1) * (1.0 + u.powf(a - 2.0)) / (u.powf(a) - sign)
    };
    integrate_unit(f, tol)
}

/// `∫_0^∞ ln^k(z)/(z²−(−1)^k) dz` for `k ≥ 1`, evaluated through the z → 1/u
/// fold. The two folded halves cancel pointwise, so the returned value is
/// exactly 0 and any nonzero result would flag a broken fold.
pub fn vanishing_integral_check(k: u32) -> QuadResult {
    let ki = k as i32;
    let even = k % 2 == 0;
    let f = move |z: f64| {
        let q = z * z;
        let m = z.ln().powi(ki);
        // (−ln z)^k = ±ln^k(z); the two denominators are exact negations
        // (even k) or identical (odd k), so the sum is exactly zero per node.
        if even {
            m / (q - 1.0) + m / (1.0 - q)
        } else {
            m / (q + 1.0) + (-m) / (1.0 + q)
        }
    };
    match integrate_unit(f, 1e-12) {
        Ok(r) => r,
        Err(Error::QuadratureNonConvergence {
            value,
            error_estimate,
            evaluations,
        }) => QuadResult {
            value,
            abs_error_estimate: error_estimate,
            evaluations,
        },
        Err(_) => unreachable!("fixed tolerance is valid"),
    }
}

/// Principal value `PV ∫_0^∞ t^{m−1}/(t^n−1) dt` for `1 ≤ m < n`; its closed
/// form is `−(π/n)·cot(mπ/n)`.
///
/// The fold z → 1/u maps the (1,∞) half onto (0,1); the direct half carries a
/// simple pole of residue 1/n at t = 1 and the folded image one of residue
/// −1/n, so the pole pair subtracts away and the combined integrand
/// `(t^{m−1} − t^{n−m−1})/(t^n−1)` is regular with limit `(2m−n)/n` at t = 1
/// (substituted within [`REMOVABLE_RADIUS`]).
pub fn cauchy_pv(m: u32, n: u32, tol: f64) -> Result<QuadResult, Error> {
    if m < 1 || m >= n {
        return domain_err(format!("cauchy_pv requires 1 ≤ m < n, got m={m} n={n}"));
    }
    let limit = (2.0 * f64::from(m) - f64::from(n)) / f64::from(n);
    let p_direct = (m - 1) as i32;
    let p_image = (n - m - 1) as i32;
    let pn = n as i32;
    let f = move |t: f64| {
        if (t - 1.0).abs() < REMOVABLE_RADIUS {
            return limit;
        }
        (t.powi(p_direct) - t.powi(p_image)) / (t.powi(pn) - 1.0)
    };
    integrate_unit(f, tol)
}

/// Which of the two generalized density shapes to normalize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityRole {
    /// `f(x) = (a/π)·sin(π/a)/(x^a+1)`
    First,
    /// `f(x) = (2/π)·sin(π/a)·x^{1−2/a}/(x²+1)`
    Other,
}

/// Numerically integrates one of the generalized densities over (0,∞) via the
/// fold to (0,1); the result must be 1 for every `a > 1`.
pub fn density_normalization(a: f64, role: DensityRole, tol: f64) -> Result<QuadResult, Error> {
    if !(a > 1.0 && a.is_finite()) {
        return domain_err(format!("density_normalization requires a > 1, got {a}"));
    }
    let f: Box<dyn Fn(f64) -> f64> = match role {
        DensityRole::First => {
            let c = a / PI * (PI / a).sin();
            Box::new(move |x: f64| c * (1.0 + x.powf(a - 2.0)) / (1.0 + x.powf(a)))
        }
        DensityRole::Other => {
            let c = 2.0 / PI * (PI / a).sin();
            let p = 1.0 - 2.0 / a;
            Box::new(move |x: f64| c * (x.powf(p) + x.powf(-p)) / (1.0 + x * x))
        }
    };
    integrate_unit(f, tol)
}

/// Density of `Z = X₁/X₂` for two independent half-Cauchy variables:
/// `f_Z(z) = (4/π²)·ln(z)/(z²−1)`, with the removable value `2/π²` at z = 1.
pub fn z2_density(z: f64) -> f64 {
    debug_assert!(z > 0.0);
    if (z - 1.0).abs() < REMOVABLE_RADIUS {
        return 2.0 / (PI * PI);
    }
    4.0 / (PI * PI) * z.ln() / (z * z - 1.0)
}

/// CDF of the half-Cauchy quotient: `∫_0^z f_Z`, monotone, with
/// `CDF(1) = 1/2` by the z → 1/z symmetry of the density and `CDF → 1` as
/// `z → ∞`.
///
/// For z ≤ 1 the integral is scaled onto the unit interval; for z > 1 it is
/// `CDF(1) + ∫_1^z f_Z` with the second part mapped affinely, so the two
/// sides of the reciprocal-symmetry identity `CDF(z) + CDF(1/z) = 1` are
/// computed along genuinely different routes.
pub fn z2_cdf(z: f64, tol: f64) -> Result<f64, Error> {
    if !(z > 0.0 && z.is_finite()) {
        return domain_err(format!("z2_cdf requires z > 0, got {z}"));
    }
    let below = |zz: f64, t: f64| -> Result<f64, Error> {
        let r = integrate_unit(
            move |s: f64| {
                let x = zz * s;
                if x == 0.0 {
                    0.0
                } else {
                    zz * z2_density(x)
                }
            },
            t,
        )?;
        Ok(r.value)
    };
    if z <= 1.0 {
        below(z, tol)
    } else {
        let half = below(1.0, tol / 2.0)?;
        let width = z - 1.0;
        let upper = integrate_unit(move |s: f64| width * z2_density(1.0 + width * s), tol / 2.0)?;
        Ok(half + upper.value)
    }
}
