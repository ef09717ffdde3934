//! Exact arithmetic: arbitrary-precision rationals, values of the form
//! `c · π^p`, and generation of Bernoulli and Euler numbers.

use std::fmt;
use std::sync::Mutex;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision exact fraction. `num_rational::BigRational` already
/// maintains the invariants we need: the denominator is kept positive and the
/// fraction is reduced after every operation.
pub type Rational = num_rational::BigRational;

/// Shorthand for a reduced fraction `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a `Rational`.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// π to 100 decimal places, as the integer ⌊π·10^100⌋. Used for decimal
/// printing of [`PiMultiple`] values so that requests for up to ~30 digits
/// are exactly rounded.
const PI_SCALED_DIGITS: &str = "31415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";
const PI_SCALE: u32 = 100;

fn pi_rational() -> &'static Rational {
    static PI: OnceLock<Rational> = OnceLock::new();
    PI.get_or_init(|| {
        let n: BigInt = PI_SCALED_DIGITS.parse().expect("valid digits");
        Rational::new(n, BigInt::from(10u32).pow(PI_SCALE))
    })
}

/// Exact value of the form `coeff · π^pi_power`.
///
/// Two values are equal iff both fields are equal; no cross-power
/// normalization is attempted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiMultiple {
    coeff: Rational,
    pi_power: u32,
}

impl PiMultiple {
    pub fn new(coeff: Rational, pi_power: u32) -> Self {
        Self { coeff, pi_power }
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn pi_power(&self) -> u32 {
        self.pi_power
    }

    /// Multiplies the rational coefficient, keeping the π power.
    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.coeff * r, self.pi_power)
    }

    /// The exact value as a rational approximation `coeff · (π·10^-100 truncation)^p`.
    /// The relative error is below `p · 10^-100`.
    fn to_rational_approx(&self) -> Rational {
        let mut v = self.coeff.clone();
        for _ in 0..self.pi_power {
            v *= pi_rational();
        }
        v
    }

    /// Decimal expansion with `digits` significant digits. Exactly rounded for
    /// `digits ≤ 30` (π is carried to 100 digits internally).
    pub fn to_decimal_string(&self, digits: usize) -> String {
        rational_to_decimal(&self.to_rational_approx(), digits.clamp(1, 50))
    }

    /// Nearest `f64`, obtained through the decimal expansion (accurate to
    /// ~1 ulp; avoids overflow for large intermediate integers).
    pub fn to_f64(&self) -> f64 {
        rational_to_decimal(&self.to_rational_approx(), 19)
            .parse()
            .expect("decimal string parses")
    }
}

impl fmt::Display for PiMultiple {
    /// Formats as `π^p * n/d`, e.g. `π^4 * 1/96`; the π factor is omitted for
    /// power zero and the denominator for integer coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.coeff.denom().is_one() {
            format!("{}", self.coeff.numer())
        } else {
            format!("{}/{}", self.coeff.numer(), self.coeff.denom())
        };
        match self.pi_power {
            0 => write!(f, "{c}"),
            1 => write!(f, "π * {c}"),
            p => write!(f, "π^{p} * {c}"),
        }
    }
}

/// Formats a rational with `sig` significant decimal digits, positionally for
/// moderate magnitudes and as `d.dd…e±x` otherwise. Rounds half away from zero.
pub fn rational_to_decimal(r: &Rational, sig: usize) -> String {
    let sig = sig.max(1);
    if r.numer().is_zero() {
        return "0".to_string();
    }
    let neg = r.numer().is_negative();
    let n = r.numer().abs();
    let d = r.denom().clone();

    // Decimal exponent e with 10^e ≤ n/d < 10^(e+1).
    let mut e = n.to_string().len() as i64 - d.to_string().len() as i64;
    let pow10 = |p: i64| -> BigInt { BigInt::from(10u32).pow(p as u32) };
    loop {
        // compare n/d with 10^e: n*10^max(0,-e) vs d*10^max(0,e)
        let lhs = if e < 0 { &n * pow10(-e) } else { n.clone() };
        let rhs = if e > 0 { &d * pow10(e) } else { d.clone() };
        if lhs < rhs {
            e -= 1;
        } else if lhs >= &rhs * BigInt::from(10) {
            e += 1;
        } else {
            break;
        }
    }

    // Mantissa m = round(n/d * 10^(sig-1-e)) has exactly `sig` digits,
    // except for the 999…→1000… carry, which bumps the exponent.
    let shift = sig as i64 - 1 - e;
    let (num, den) = if shift >= 0 {
        (&n * pow10(shift), d)
    } else {
        (n, &d * pow10(-shift))
    };
    let (mut q, rem) = num.div_rem(&den);
    if &rem * BigInt::from(2) >= den {
        q += 1;
    }
    let mut mantissa = q.to_string();
    if mantissa.len() > sig {
        debug_assert!(mantissa.ends_with('0'));
        mantissa.truncate(sig);
        e += 1;
    }

    let sign = if neg { "-" } else { "" };
    if (-4..16).contains(&e) {
        let s = if e >= 0 {
            let int_len = (e as usize + 1).min(mantissa.len());
            let (int_part, frac_part) = mantissa.split_at(int_len);
            let pad = "0".repeat(e as usize + 1 - int_len);
            if frac_part.is_empty() && pad.is_empty() {
                int_part.to_string()
            } else if frac_part.is_empty() {
                format!("{int_part}{pad}")
            } else {
                format!("{int_part}.{frac_part}")
            }
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), mantissa)
        };
        format!("{sign}{s}")
    } else {
        let (first, rest) = mantissa.split_at(1);
        if rest.is_empty() {
            format!("{sign}{first}e{e}")
        } else {
            format!("{sign}{first}.{rest}e{e}")
        }
    }
}

/// Nearest `f64` for a rational, through the decimal expansion.
pub fn rational_to_f64(r: &Rational) -> f64 {
    rational_to_decimal(r, 19).parse().expect("parses")
}

/// Exact binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Exact factorial n!.
pub fn factorial(n: u32) -> BigInt {
    (1..=u64::from(n)).map(BigInt::from).product()
}

/// Bernoulli number `B_m` under the convention `x/(e^x−1) = Σ B_m x^m/m!`
/// (so `B_1 = −1/2`). Computed with the recurrence
/// `Σ_{j=0}^{m} C(m+1, j) B_j = 0` and memoized, so repeated calls are O(1).
pub fn bernoulli(m: u32) -> Rational {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]));
    let mut table = cache.lock().expect("bernoulli cache poisoned");
    let m = m as usize;
    while table.len() <= m {
        let t = table.len() as u64; // computing B_t
        if t % 2 == 1 && t > 1 {
            table.push(Rational::zero());
            continue;
        }
        let mut acc = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += b * Rational::from_integer(binomial(t + 1, j as u64));
            }
        }
        table.push(-acc / rat_int(t as i64 + 1));
    }
    table[m].clone()
}

/// Euler number `E_m` under the convention `1/cosh(x) = Σ E_m x^m/m!`
/// (`E_0 = 1`, `E_2 = −1`, `E_4 = 5`, odd indices vanish). Computed with the
/// recurrence `Σ_{j=0}^{n} C(2n, 2j) E_{2j} = 0` for `n ≥ 1` and memoized.
pub fn euler_number(m: u32) -> BigInt {
    static CACHE: OnceLock<Mutex<Vec<BigInt>>> = OnceLock::new();
    if m % 2 == 1 {
        return BigInt::zero();
    }
    let cache = CACHE.get_or_init(|| Mutex::new(vec![BigInt::one()]));
    let mut table = cache.lock().expect("euler cache poisoned");
    let idx = (m / 2) as usize; // table[i] = E_{2i}
    while table.len() <= idx {
        let n = table.len() as u64; // computing E_{2n}
        let mut acc = BigInt::zero();
        for (j, e) in table.iter().enumerate() {
            acc += e * binomial(2 * n, 2 * j as u64);
        }
        table.push(-acc);
    }
    table[idx].clone()
}

/// `n!` as an `f64` (exact for n ≤ 20, correctly accumulated beyond).
pub fn factorial_f64(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * f64::from(i))
}

/// Nearest `f64` of a `BigInt` ratio helper used in tests and reports.
pub fn big_ratio_f64(n: &BigInt, d: &BigInt) -> f64 {
    rational_to_f64(&Rational::new(n.clone(), d.clone()))
}
