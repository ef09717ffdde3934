//! Multi-route evaluation and cross-validation of the sums
//! `S(k) = Σ_{n≥0} (−1)^{nk}/(2n+1)^k`, `ζ(2k) = Σ_{n≥1} n^{−2k}` and the
//! bilateral sums `S(k,a) = Σ_{n∈ℤ} (−1)^{nk}/(an+1)^k`.
//!
//! Every quantity is computed along several independent routes and the routes
//! are compared against each other:
//!
//! * [`combinatorial`] — exact closed forms from the volume of the cyclic-sum
//!   polytope `Δ^k`, assembled from admissible index tuples in exact rational
//!   arithmetic;
//! * [`series`] — compensated partial sums with rigorous tail brackets, plus
//!   the Bernoulli/Euler-number identities for the logarithmic integrals `J_k`
//!   and the trigonometric closed forms for `S(2,a)` and `S(3,a)`;
//! * [`quadrature`] — tanh-sinh integration of `J_k`, `J_{k,a}`, the vanishing
//!   log integrals, principal-value integrals and density normalizations;
//! * [`stochastic`] — seeded Monte Carlo estimates of the two equivalent
//!   geometric probabilities (cyclic sums of uniforms, cyclic products of
//!   half-Cauchy variables) and an empirical distribution check;
//! * [`maps`] — the two changes of variables behind the closed forms, with
//!   their Jacobian determinants validated by finite differences;
//! * [`report`] — orchestration of all routes into a verification report.

pub mod combinatorial;
pub mod exact;
pub mod maps;
pub mod quadrature;
pub mod report;
pub mod series;
pub mod stochastic;

pub use exact::{PiMultiple, Rational};

/// Errors shared by all modules.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An argument was outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// The quadrature engine exhausted its refinement levels without meeting
    /// the requested tolerance. Carries the best estimate so callers can still
    /// inspect it.
    #[error("quadrature did not converge: value {value} ± {error_estimate} after {evaluations} evaluations")]
    QuadratureNonConvergence {
        value: f64,
        error_estimate: f64,
        evaluations: u64,
    },
    /// A series would need more terms than the configured cap to reach the
    /// requested tail bound. Carries the bound that is achievable at the cap.
    #[error("series term cap {cap} reached: achievable tail bound {achievable:.3e} > requested {requested:.3e}")]
    SeriesCapExceeded {
        requested: f64,
        achievable: f64,
        cap: u64,
    },
}

pub(crate) fn domain_err<T>(msg: impl Into<String>) -> Result<T, Error> {
    Err(Error::Domain(msg.into()))
}
