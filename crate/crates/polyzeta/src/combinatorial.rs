//! Admissible index tuples, their α-exponents, and the exact closed formulas
//! for `Vol(Δ^k)`, `S(k)` and `ζ(2k)`.
//!
//! `Δ^k` is the open polytope of points in `(0,1)^k` whose cyclically
//! consecutive coordinate sums are all below 1. Its volume decomposes over
//! ordered tuples `(r_1,…,r_n)` of distinct, cyclically nonconsecutive
//! indices in `[k]` (no two entries differ by 1 or k−1):
//!
//! ```text
//! Vol(Δ^k) = (1/2)^k · [ 1 + Σ_{n=1}^{⌊k/2⌋} Σ_tuples Π_{i=1}^{n} 1/(i + α_1 + … + α_i) ]
//! ```
//!
//! with the exponents `α_j = 2 − δ(k,2) − Σ_{m<j} [δ(|r_m−r_j|,2) + δ(|r_m−r_j|,k−2)]`.
//! From the volume, `S(k) = (π/2)^k · Vol(Δ^k)` and `ζ(2k) = 2^{2k}/(2^{2k}−1) · S(2k)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::exact::{rat_int, PiMultiple, Rational};
use crate::{domain_err, Error};

/// Ordered tuple of distinct, cyclically nonconsecutive indices in `[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdmissibleTuple {
    k: u32,
    entries: Vec<u32>,
}

/// The exponents `(α_1,…,α_n)` of an admissible tuple; each lies in {0,1,2}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaVector(pub Vec<u8>);

impl AdmissibleTuple {
    /// Validates admissibility and the length bound `n ≤ ⌊k/2⌋`.
    pub fn new(k: u32, entries: Vec<u32>) -> Result<Self, Error> {
        if !is_admissible(k, &entries) {
            return domain_err(format!("tuple {entries:?} is not admissible for k={k}"));
        }
        if entries.len() as u32 > k / 2 {
            return domain_err(format!(
                "tuple length {} exceeds ⌊k/2⌋ = {} for k={k}",
                entries.len(),
                k / 2
            ));
        }
        Ok(Self { k, entries })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// The α-exponents of this tuple.
    pub fn alpha_exponents(&self) -> AlphaVector {
        AlphaVector(alpha_exponents_raw(self.k, &self.entries))
    }
}

fn alpha_exponents_raw(k: u32, entries: &[u32]) -> Vec<u8> {
    let base: i32 = if k == 2 { 1 } else { 2 };
    entries
        .iter()
        .enumerate()
        .map(|(j, &rj)| {
            let hits: i32 = entries[..j]
                .iter()
                .map(|&rm| {
                    let d = rm.abs_diff(rj);
                    // For k=4 a distance of 2 equals both 2 and k−2 and counts twice.
                    i32::from(d == 2) + i32::from(d == k.saturating_sub(2))
                })
                .sum();
            let a = base - hits;
            debug_assert!((0..=2).contains(&a), "alpha out of range for {entries:?}");
            a as u8
        })
        .collect()
}

/// True iff `entries` are pairwise distinct, all in `[k]`, and no two of them
/// differ by 1 or k−1 (adjacency on the cycle graph `C_k`).
pub fn is_admissible(k: u32, entries: &[u32]) -> bool {
    if entries.iter().any(|&r| r < 1 || r > k) {
        return false;
    }
    for (p, &a) in entries.iter().enumerate() {
        for &b in &entries[p + 1..] {
            let d = a.abs_diff(b);
            if d == 0 || d == 1 || d == k - 1 {
                return false;
            }
        }
    }
    true
}

/// Streams every ordered admissible tuple of length `n` over `[k]`, each
/// exactly once, in lexicographic order. Empty when no tuple exists
/// (in particular for `n = 0` or `n > ⌊k/2⌋`).
pub fn enumerate_admissible(k: u32, n: u32) -> AdmissibleTuples {
    AdmissibleTuples::new(k, n)
}

/// Lexicographic depth-first enumeration. Selected values block themselves
/// and their two cyclic neighbours for future positions (with counters, since
/// the neighbourhoods overlap for small k); distance-2 values stay available.
pub struct AdmissibleTuples {
    k: u32,
    n: usize,
    prefix: Vec<u32>,
    blocked: Vec<u8>,
    candidate: u32,
    done: bool,
}

impl AdmissibleTuples {
    fn new(k: u32, n: u32) -> Self {
        let done = k == 0 || n == 0 || n > k / 2;
        Self {
            k,
            n: n as usize,
            prefix: Vec::with_capacity(n as usize),
            blocked: vec![0; k as usize + 1],
            candidate: 1,
            done,
        }
    }

    fn neighbours(&self, v: u32) -> (u32, u32) {
        let prev = if v == 1 { self.k } else { v - 1 };
        let next = if v == self.k { 1 } else { v + 1 };
        (prev, next)
    }

    fn block(&mut self, v: u32) {
        let (p, q) = self.neighbours(v);
        self.blocked[v as usize] += 1;
        self.blocked[p as usize] += 1;
        self.blocked[q as usize] += 1;
    }

    fn unblock(&mut self, v: u32) {
        let (p, q) = self.neighbours(v);
        self.blocked[v as usize] -= 1;
        self.blocked[p as usize] -= 1;
        self.blocked[q as usize] -= 1;
    }
}

impl Iterator for AdmissibleTuples {
    type Item = AdmissibleTuple;

    fn next(&mut self) -> Option<AdmissibleTuple> {
        if self.done {
            return None;
        }
        loop {
            if self.candidate > self.k {
                match self.prefix.pop() {
                    None => {
                        self.done = true;
                        return None;
                    }
                    Some(v) => {
                        self.unblock(v);
                        self.candidate = v + 1;
                        continue;
                    }
                }
            }
            let v = self.candidate;
            if self.blocked[v as usize] > 0 {
                self.candidate += 1;
                continue;
            }
            if self.prefix.len() + 1 == self.n {
                let mut entries = self.prefix.clone();
                entries.push(v);
                self.candidate = v + 1;
                return Some(AdmissibleTuple { k: self.k, entries });
            }
            self.prefix.push(v);
            self.block(v);
            self.candidate = 1;
        }
    }
}

/// Exact value of the product `Π_{i=1}^{n} 1/(i + α_1 + … + α_i)`.
pub fn tuple_term(alpha: &AlphaVector) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(term_denominator(alpha)))
}

/// The denominator `Π (i + prefix α sum)` as an exact machine integer.
/// Bounded by Π 3i = 3^n·n!, far below u64 range for n ≤ 16.
fn term_denominator(alpha: &AlphaVector) -> u64 {
    let mut prefix: u64 = 0;
    let mut den: u64 = 1;
    for (i, &a) in alpha.0.iter().enumerate() {
        prefix += u64::from(a);
        den *= i as u64 + 1 + prefix;
    }
    den
}

/// Exact volume of `Δ^k`. Rejects `k = 0`. For `k = 1` only the constant term
/// survives and the volume is 1/2.
pub fn volume_delta(k: u32) -> Result<Rational, Error> {
    if k == 0 {
        return domain_err("volume_delta requires k ≥ 1");
    }
    // Tuples sharing a denominator are tallied first so the exact rational
    // sum runs over the few hundred distinct denominators instead of all
    // (for k=16, ~7·10^5) tuples.
    let mut tally: HashMap<u64, u64> = HashMap::new();
    for n in 1..=k / 2 {
        for t in enumerate_admissible(k, n) {
            let den = term_denominator(&t.alpha_exponents());
            *tally.entry(den).or_insert(0) += 1;
        }
    }
    let mut sum = Rational::one();
    for (den, count) in tally {
        sum += Rational::new(BigInt::from(count), BigInt::from(den));
    }
    Ok(sum / rat_int(2).pow(k as i32))
}

/// Exact closed form `S(k) = (π/2)^k · Vol(Δ^k)`, i.e. a [`PiMultiple`] with
/// π-power k and coefficient `Vol(Δ^k)/2^k`.
pub fn s_k_closed(k: u32) -> Result<PiMultiple, Error> {
    let vol = volume_delta(k)?;
    Ok(PiMultiple::new(vol / rat_int(2).pow(k as i32), k))
}

/// Exact `ζ(2k) = 2^{2k}/(2^{2k}−1) · S(2k)`, derived through [`s_k_closed`].
pub fn zeta_2k_closed(k: u32) -> Result<PiMultiple, Error> {
    if k == 0 {
        return domain_err("zeta_2k_closed requires k ≥ 1");
    }
    let s = s_k_closed(2 * k)?;
    let two_2k = rat_int(2).pow(2 * k as i32);
    let factor = &two_2k / (&two_2k - Rational::one());
    Ok(s.scale(&factor))
}

/// Alternative ζ(2k) closed form whose leading coefficient is
/// `π^{2k}/(2^{2k}−1)` in front of the bare tuple sum `1 + Σ…`, i.e. without
/// the `1/2^{2k}` rescale. It exceeds the true ζ(2k) by a factor of exactly
/// `2^{2k}` (at k=1 it gives 2π²/3 instead of π²/6). Kept so the verification
/// report can record the discrepancy; never used as a value route.
pub fn zeta_2k_closed_unrescaled(k: u32) -> Result<PiMultiple, Error> {
    Ok(zeta_2k_closed(k)?.scale(&rat_int(2).pow(2 * k as i32)))
}
