//! Series oracles with rigorous tail brackets for `S(k)`, `ζ(2k)` and the
//! bilateral sums `S(k,a)`, together with the exact Bernoulli/Euler route
//! through the logarithmic integrals `J_k` and the trigonometric closed forms
//! for `S(2,a)` and `S(3,a)`.
//!
//! Tail handling: the raw first-omitted-term / integral bounds would need
//! ~10^11 terms for a 1e−12 target at k ≤ 2, so both branches add a tail
//! estimate whose error bound is still rigorous for the completely monotone
//! term magnitudes summed here:
//!
//! * non-alternating tails add the midpoint-rule integral `∫_{N+1/2}^∞ g`;
//!   the per-cell midpoint error of a convex integrand is `g''(ξ)/24`, so the
//!   total is bounded by `(|g'(N+1/2)| + g''(N+1/2))/24`, which is the
//!   reported `tail_bound`;
//! * alternating tails `σ·Σ_j (−1)^j c_j` (c decreasing, convex, with
//!   decreasing second differences) add `σ·(c₀/2 + Δc₀/4 + Δ²c₀/8)`; the
//!   twice-telescoped remainder is bounded by `Δ²c₀/8 = (c₀ − 2c₁ + c₂)/8`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::exact::{bernoulli, euler_number, factorial, factorial_f64, PiMultiple, Rational};
use crate::{domain_err, Error};

/// Hard cap on summed terms; beyond it the achievable bound is reported
/// instead of looping for minutes.
const MAX_TERMS: u64 = 1 << 27;

/// A partial sum with a rigorous two-sided tail bound: the true sum lies in
/// `[value − tail_bound, value + tail_bound]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub tail_bound: f64,
    pub terms_used: u64,
}

/// Compensated (Kahan) accumulator.
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

fn check_eps(eps: f64) -> Result<(), Error> {
    if !(eps > 0.0 && eps.is_finite()) {
        return domain_err(format!("eps must be a positive finite float, got {eps}"));
    }
    Ok(())
}

/// Partial sum of `S(k) = Σ_{n≥0} (−1)^{nk}/(2n+1)^k` with `tail_bound ≤ eps`.
///
/// Odd k alternates and uses the averaged-partial-sum estimate; even k is a
/// positive series and uses the integral sandwich. Errors if `eps` would need
/// more than the configured term cap.
pub fn s_k_series(k: u32, eps: f64) -> Result<SeriesValue, Error> {
    if k < 1 {
        return domain_err("s_k_series requires k ≥ 1");
    }
    check_eps(eps)?;
    let kp = k as i32;
    let a = |n: u64| ((2 * n + 1) as f64).powi(-kp);
    if k % 2 == 1 {
        // Alternating: S = Σ (−1)^n a_n with a_n = (2n+1)^{−k}.
        let mut sum = KahanSum::default();
        let mut n: u64 = 0;
        loop {
            sum.add(if n % 2 == 0 { a(n) } else { -a(n) });
            let (c0, c1, c2) = (a(n + 1), a(n + 2), a(n + 3));
            // the ε·|sum| term covers f64 cancellation in the Δ² difference
            let bound = ((c0 - 2.0 * c1 + c2) / 8.0).max(0.0) + f64::EPSILON * sum.value().abs();
            if bound <= eps {
                let sigma = if (n + 1) % 2 == 0 { 1.0 } else { -1.0 };
                let tail = 0.5 * c0 + 0.25 * (c0 - c1) + 0.125 * (c0 - 2.0 * c1 + c2);
                return Ok(SeriesValue {
                    value: sum.value() + sigma * tail,
                    tail_bound: bound,
                    terms_used: n + 1,
                });
            }
            n += 1;
            if n >= MAX_TERMS {
                return Err(Error::SeriesCapExceeded {
                    requested: eps,
                    achievable: bound,
                    cap: MAX_TERMS,
                });
            }
        }
    } else {
        // Positive series; ∫_t^∞ (2s+1)^{−k} ds = (2t+1)^{1−k}/(2(k−1)).
        let tail_integral = |x: f64| x.powi(1 - kp) / (2.0 * (k as f64 - 1.0));
        let mut sum = KahanSum::default();
        let mut n: u64 = 0;
        loop {
            sum.add(a(n));
            let x = 2.0 * (n as f64 + 0.5) + 1.0; // 2(n+1/2)+1
            let kk = k as f64;
            let bound = (2.0 * kk * x.powi(-kp - 1) + 4.0 * kk * (kk + 1.0) * x.powi(-kp - 2))
                / 24.0
                + f64::EPSILON * sum.value().abs();
            if bound <= eps {
                return Ok(SeriesValue {
                    value: sum.value() + tail_integral(x),
                    tail_bound: bound,
                    terms_used: n + 1,
                });
            }
            n += 1;
            if n >= MAX_TERMS {
                return Err(Error::SeriesCapExceeded {
                    requested: eps,
                    achievable: bound,
                    cap: MAX_TERMS,
                });
            }
        }
    }
}

/// Partial sum of `ζ(2k) = Σ_{n≥1} n^{−2k}` with the integral sandwich tail
/// (`∫ t^{−2k} dt = t^{1−2k}/(2k−1)`).
pub fn zeta_2k_series(k: u32, eps: f64) -> Result<SeriesValue, Error> {
    if k < 1 {
        return domain_err("zeta_2k_series requires k ≥ 1");
    }
    check_eps(eps)?;
    let p = 2 * k as i32;
    let tail_integral = |t: f64| t.powi(1 - p) / (p as f64 - 1.0);
    let mut sum = KahanSum::default();
    let mut n: u64 = 1;
    loop {
        sum.add((n as f64).powi(-p));
        let t = n as f64 + 0.5;
        let pf = p as f64;
        let bound = (pf * t.powi(-p - 1) + pf * (pf + 1.0) * t.powi(-p - 2)) / 24.0
            + f64::EPSILON * sum.value().abs();
        if bound <= eps {
            return Ok(SeriesValue {
                value: sum.value() + tail_integral(t),
                tail_bound: bound,
                terms_used: n,
            });
        }
        n += 1;
        if n > MAX_TERMS {
            return Err(Error::SeriesCapExceeded {
                requested: eps,
                achievable: bound,
                cap: MAX_TERMS,
            });
        }
    }
}

/// Symmetric partial sum of the bilateral series
/// `S(k,a) = Σ_{n∈ℤ} (−1)^{nk}/(an+1)^k` for `a > 1`, `k ≥ 2`.
///
/// Terms `n` and `−n` are paired before accumulation; for even k the paired
/// series is positive with an integral-sandwich tail, for odd k it alternates
/// and the averaged estimate applies to the pair magnitudes.
pub fn s_ka_series(k: u32, a: f64, eps: f64) -> Result<SeriesValue, Error> {
    if k < 2 {
        return domain_err("s_ka_series requires k ≥ 2 (the bilateral sum is not evaluated at k = 1)");
    }
    if !(a > 1.0 && a.is_finite()) {
        return domain_err(format!("s_ka_series requires a > 1, got {a}"));
    }
    check_eps(eps)?;
    let kp = k as i32;
    let plus = |n: f64| (a * n + 1.0).powi(-kp);
    let minus = |n: f64| (a * n - 1.0).powi(-kp);

    let mut sum = KahanSum::default();
    sum.add(1.0); // n = 0 term
    if k % 2 == 0 {
        // pair_n = (an+1)^{−k} + (an−1)^{−k}: positive, decreasing, convex.
        // ∫_t^∞ pair = [(at+1)^{1−k} + (at−1)^{1−k}]/(a(k−1))
        let kk = k as f64;
        let tail_integral =
            |t: f64| ((a * t + 1.0).powi(1 - kp) + (a * t - 1.0).powi(1 - kp)) / (a * (kk - 1.0));
        let mut n: u64 = 1;
        loop {
            sum.add(plus(n as f64) + minus(n as f64));
            let t = n as f64 + 0.5;
            let d1 = a * kk * ((a * t + 1.0).powi(-kp - 1) + (a * t - 1.0).powi(-kp - 1));
            let d2 = a * a * kk * (kk + 1.0)
                * ((a * t + 1.0).powi(-kp - 2) + (a * t - 1.0).powi(-kp - 2));
            let bound = (d1 + d2) / 24.0 + f64::EPSILON * sum.value().abs();
            if bound <= eps {
                return Ok(SeriesValue {
                    value: sum.value() + tail_integral(t),
                    tail_bound: bound,
                    terms_used: 2 * n + 1,
                });
            }
            n += 1;
            if 2 * n > MAX_TERMS {
                return Err(Error::SeriesCapExceeded {
                    requested: eps,
                    achievable: bound,
                    cap: MAX_TERMS,
                });
            }
        }
    } else {
        // pair_n = (−1)^{n+1} c_n with c_n = (an−1)^{−k} − (an+1)^{−k} > 0,
        // completely monotone in n.
        let c = |n: f64| minus(n) - plus(n);
        let mut n: u64 = 1;
        loop {
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            sum.add(sign * c(n as f64));
            let (c0, c1, c2) = (c(n as f64 + 1.0), c(n as f64 + 2.0), c(n as f64 + 3.0));
            let bound = ((c0 - 2.0 * c1 + c2) / 8.0).max(0.0) + f64::EPSILON * sum.value().abs();
            if bound <= eps {
                let next_sign = if (n + 1) % 2 == 1 { 1.0 } else { -1.0 };
                let tail = 0.5 * c0 + 0.25 * (c0 - c1) + 0.125 * (c0 - 2.0 * c1 + c2);
                return Ok(SeriesValue {
                    value: sum.value() + next_sign * tail,
                    tail_bound: bound,
                    terms_used: 2 * n + 1,
                });
            }
            n += 1;
            if 2 * n > MAX_TERMS {
                return Err(Error::SeriesCapExceeded {
                    requested: eps,
                    achievable: bound,
                    cap: MAX_TERMS,
                });
            }
        }
    }
}

/// Exact closed form of the logarithmic integral
/// `J_k = ∫_0^∞ ln^{k−1}(z)/(z²−(−1)^k) dz` for `k ≥ 2`:
/// `(2^{2k}−2^k)/k · (π/2)^k · |B_k|` for even k, `(π/2)^k · |E_{k−1}|` for odd k.
pub fn j_k_closed(k: u32) -> Result<PiMultiple, Error> {
    if k < 2 {
        return domain_err("j_k_closed requires k ≥ 2 (J_1 diverges)");
    }
    let two_k = BigInt::from(2u32).pow(k);
    let coeff = if k % 2 == 0 {
        let two_2k = BigInt::from(2u32).pow(2 * k);
        Rational::new(two_2k - &two_k, BigInt::from(k) * &two_k) * bernoulli(k).abs()
    } else {
        Rational::new(euler_number(k - 1).abs(), two_k)
    };
    Ok(PiMultiple::new(coeff, k))
}

/// `S(k) = J_k / (2(k−1)!)`, exactly. Must coincide with
/// [`crate::combinatorial::s_k_closed`] as a [`PiMultiple`] for every k ≥ 2.
pub fn s_k_from_jk(k: u32) -> Result<PiMultiple, Error> {
    let jk = j_k_closed(k)?;
    let div = Rational::new(BigInt::from(1), BigInt::from(2) * factorial(k - 1));
    Ok(jk.scale(&div))
}

/// Closed form `S(2,a) = (π/a)² csc²(π/a)` for `a > 1`.
pub fn s_2a_closed(a: f64) -> Result<f64, Error> {
    if !(a > 1.0 && a.is_finite()) {
        return domain_err(format!("s_2a_closed requires a > 1, got {a}"));
    }
    let t = PI / a;
    Ok((PI / a / t.sin()).powi(2))
}

/// Closed form `S(3,a) = π³/(2a³) · [csc³(π/a) + cot²(π/a)·csc(π/a)]` for `a > 1`.
pub fn s_3a_closed(a: f64) -> Result<f64, Error> {
    if !(a > 1.0 && a.is_finite()) {
        return domain_err(format!("s_3a_closed requires a > 1, got {a}"));
    }
    let t = PI / a;
    let csc = 1.0 / t.sin();
    let cot = t.cos() / t.sin();
    Ok(PI.powi(3) / (2.0 * a.powi(3)) * (csc.powi(3) + cot * cot * csc))
}

/// `S(k,a) = J_{k,a} / (k−1)!` for `k ≥ 2`.
pub fn s_ka_from_jka(k: u32, jka: f64) -> Result<f64, Error> {
    if k < 2 {
        return domain_err("s_ka_from_jka requires k ≥ 2");
    }
    Ok(jka / factorial_f64(k - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorial::s_k_closed;
    use crate::exact::rat;

    #[test]
    fn s_k_series_matches_closed_forms() {
        // S(2) = π²/8, S(3) = π³/32, S(1) = π/4 (Leibniz)
        let s2 = s_k_series(2, 1e-10).unwrap();
        assert!((s2.value - PI * PI / 8.0).abs() < 2e-10, "{}", s2.value);
        let s3 = s_k_series(3, 1e-10).unwrap();
        assert!((s3.value - PI.powi(3) / 32.0).abs() < 2e-10);
        let s1 = s_k_series(1, 1e-6).unwrap();
        assert!((s1.value - PI / 4.0).abs() < 2e-6);
        let s1 = s_k_series(1, 1e-9).unwrap();
        assert!(s1.value.to_string().starts_with("0.7853981"));
    }

    #[test]
    fn s_k_series_agrees_with_exact_route_to_1e12() {
        for k in 1..=12 {
            let closed = s_k_closed(k).unwrap().to_f64();
            let series = s_k_series(k, 1e-12).unwrap();
            assert!(
                (closed - series.value).abs() <= 1e-12 + series.tail_bound,
                "k={k}: closed {closed} vs series {} ± {}",
                series.value,
                series.tail_bound
            );
        }
    }

    #[test]
    fn zeta_series_values() {
        let z1 = zeta_2k_series(1, 1e-8).unwrap();
        assert!((z1.value - PI * PI / 6.0).abs() < 2e-8);
        let z2 = zeta_2k_series(2, 1e-8).unwrap();
        assert!((z2.value - PI.powi(4) / 90.0).abs() < 2e-8);
        let z3 = zeta_2k_series(3, 1e-8).unwrap();
        assert!((z3.value - PI.powi(6) / 945.0).abs() < 2e-8);
        // digits stabilize once the requested bound is well below them
        let z1 = zeta_2k_series(1, 1e-11).unwrap();
        assert!(z1.value.to_string().starts_with("1.64493406"));
    }

    #[test]
    fn bilateral_series_examples() {
        let v = s_ka_series(2, 2.0, 1e-10).unwrap();
        assert!((v.value - PI * PI / 4.0).abs() < 1e-9, "{}", v.value);
        let v = s_ka_series(3, 2.0, 1e-10).unwrap();
        assert!((v.value - PI.powi(3) / 16.0).abs() < 1e-9);
        let v = s_ka_series(2, 4.0, 1e-10).unwrap();
        assert!((v.value - PI * PI / 8.0).abs() < 1e-9);
    }

    #[test]
    fn bilateral_series_rejects_bad_arguments() {
        assert!(s_ka_series(1, 2.0, 1e-6).is_err());
        assert!(s_ka_series(2, 1.0, 1e-6).is_err());
        assert!(s_ka_series(2, 0.5, 1e-6).is_err());
        assert!(s_ka_series(2, f64::NAN, 1e-6).is_err());
        assert!(s_ka_series(2, 2.0, 0.0).is_err());
    }

    #[test]
    fn series_cap_reports_achievable_bound() {
        match s_k_series(1, 1e-30) {
            Err(Error::SeriesCapExceeded { achievable, cap, .. }) => {
                assert!(achievable > 1e-30);
                assert_eq!(cap, MAX_TERMS);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn jk_closed_small_values() {
        assert_eq!(j_k_closed(2).unwrap(), PiMultiple::new(rat(1, 4), 2));
        assert_eq!(j_k_closed(3).unwrap(), PiMultiple::new(rat(1, 8), 3));
        assert_eq!(j_k_closed(4).unwrap(), PiMultiple::new(rat(1, 8), 4));
        assert!(j_k_closed(1).is_err());
    }

    #[test]
    fn s_k_from_jk_small_values() {
        assert_eq!(s_k_from_jk(2).unwrap(), PiMultiple::new(rat(1, 8), 2));
        assert_eq!(s_k_from_jk(3).unwrap(), PiMultiple::new(rat(1, 32), 3));
        assert_eq!(s_k_from_jk(4).unwrap(), PiMultiple::new(rat(1, 96), 4));
        assert!(s_k_from_jk(1).is_err());
    }

    #[test]
    fn bernoulli_euler_route_equals_polytope_route_exactly() {
        for k in 2..=12 {
            assert_eq!(s_k_from_jk(k).unwrap(), s_k_closed(k).unwrap(), "k={k}");
        }
    }

    #[test]
    fn s_2a_closed_examples() {
        assert!((s_2a_closed(2.0).unwrap() - PI * PI / 4.0).abs() < 1e-14);
        assert!((s_2a_closed(4.0).unwrap() - PI * PI / 8.0).abs() < 1e-14);
        // a=3: csc²(π/3) = 4/3 so S(2,3) = 4π²/27
        assert!((s_2a_closed(3.0).unwrap() - 4.0 * PI * PI / 27.0).abs() < 1e-14);
        assert!(s_2a_closed(1.0).is_err());
    }

    #[test]
    fn s_3a_closed_examples() {
        assert!((s_3a_closed(2.0).unwrap() - PI.powi(3) / 16.0).abs() < 1e-14);
        // a=4: csc(π/4) = √2, cot(π/4) = 1 → 3√2·π³/128
        let expect = 3.0 * 2.0_f64.sqrt() * PI.powi(3) / 128.0;
        assert!((s_3a_closed(4.0).unwrap() - expect).abs() < 1e-14);
        assert!(s_3a_closed(0.9).is_err());
    }

    #[test]
    fn closed_forms_match_bilateral_series_on_grid() {
        for &a in &[2.0, 2.5, 3.0, 4.0, 7.3] {
            let s2 = s_ka_series(2, a, 1e-10).unwrap();
            assert!(
                (s_2a_closed(a).unwrap() - s2.value).abs() < 1e-9,
                "k=2 a={a}: {} vs {}",
                s_2a_closed(a).unwrap(),
                s2.value
            );
            let s3 = s_ka_series(3, a, 1e-10).unwrap();
            assert!(
                (s_3a_closed(a).unwrap() - s3.value).abs() < 1e-9,
                "k=3 a={a}: {} vs {}",
                s_3a_closed(a).unwrap(),
                s3.value
            );
        }
    }

    #[test]
    fn s_ka_from_jka_examples() {
        assert_eq!(s_ka_from_jka(2, PI * PI / 4.0).unwrap(), PI * PI / 4.0);
        assert!((s_ka_from_jka(3, PI.powi(3) / 8.0).unwrap() - PI.powi(3) / 16.0).abs() < 1e-15);
        assert_eq!(s_ka_from_jka(3, 0.0).unwrap(), 0.0);
        assert!(s_ka_from_jka(1, 1.0).is_err());
    }

    #[test]
    fn tail_bound_soundness_under_eps_halving() {
        for k in 1..=6 {
            let mut eps = 1e-4;
            let mut prev = s_k_series(k, eps).unwrap();
            for _ in 0..12 {
                eps /= 2.0;
                let next = s_k_series(k, eps).unwrap();
                assert!(
                    (next.value - prev.value).abs() <= prev.tail_bound + 1e-15,
                    "k={k} eps={eps}: moved {} > bound {}",
                    (next.value - prev.value).abs(),
                    prev.tail_bound
                );
                prev = next;
            }
        }
    }
}
