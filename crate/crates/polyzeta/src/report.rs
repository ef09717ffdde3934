//! Cross-route verification: runs every route available for each quantity,
//! compares all route pairs under per-kind tolerances, and assembles a
//! serializable report.
//!
//! Route pairs are compared as follows: deterministic pairs must agree within
//! the base tolerance (relative to the magnitude, floored at 1) plus their
//! declared uncertainties; a Monte Carlo route against a deterministic one is
//! allowed 4 standard errors; two Monte Carlo routes are allowed 5 combined
//! standard errors. A quantity passes iff every pair does.

use serde::{Deserialize, Serialize};

use crate::combinatorial::{
    s_k_closed, volume_delta, zeta_2k_closed, zeta_2k_closed_unrescaled,
};
use crate::exact::rational_to_f64;
use crate::maps::{
    in_delta, in_hypertope, numeric_jacobian_det, sample_delta_interior,
    sample_hypertope_interior, trig_jacobian_closed, trig_map, zagier_jacobian_closed, zagier_map,
};
use crate::quadrature::{
    cauchy_pv, density_normalization, j_k_quad, j_ka_quad, vanishing_integral_check, DensityRole,
};
use crate::series::{s_2a_closed, s_3a_closed, s_k_from_jk, s_k_series, s_ka_from_jka, s_ka_series, zeta_2k_series};
use crate::stochastic::{mc_delta_volume, mc_hypertope_prob, uniform_stream};
use crate::{domain_err, Error};

/// One computed value of a quantity along a named route.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RouteEntry {
    pub route: String,
    pub value: f64,
    /// Tail bound, quadrature error estimate, or standard error.
    pub uncertainty: f64,
    /// True for Monte Carlo routes (compared at 4σ/5σ instead of `tol`).
    pub statistical: bool,
}

/// All routes of one quantity and the pairwise comparison outcome.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct QuantityReport {
    pub quantity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    pub routes: Vec<RouteEntry>,
    pub max_rel_discrepancy: f64,
    /// Base tolerance the deterministic pairs were held to.
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A recorded disagreement between a printed closed form and the value the
/// routes actually support.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DiscrepancyNote {
    pub id: String,
    pub k: u32,
    pub printed_value: f64,
    pub derived_value: f64,
    pub factor: f64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Metadata {
    pub seed: u64,
    pub samples: u64,
    pub tol: f64,
    pub k_max: u32,
    pub a_values: Vec<f64>,
    pub version: String,
    pub notes: Vec<DiscrepancyNote>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VerificationReport {
    pub quantities: Vec<QuantityReport>,
    pub metadata: Metadata,
}

impl VerificationReport {
    /// True iff every quantity passed.
    pub fn all_pass(&self) -> bool {
        self.quantities.iter().all(|q| q.pass)
    }
}

/// Configuration for [`run_verification`].
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub k_max: u32,
    pub a_values: Vec<f64>,
    pub samples: u64,
    pub seed: u64,
    /// Base tolerance for deterministic route pairs.
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            k_max: 6,
            a_values: vec![2.0, 2.5, 3.0, 4.0, 7.3],
            samples: 1_000_000,
            seed: 42,
            tol: 1e-8,
        }
    }
}

/// Monte Carlo rows are capped here regardless of `k_max`; beyond k = 8 the
/// acceptance probability is too small for meaningful 10⁶-sample statistics.
const MC_K_CAP: u32 = 8;
/// Spot-check Jacobians up to this dimension.
const JACOBIAN_K_CAP: u32 = 6;
const JACOBIAN_POINTS: usize = 20;
const JACOBIAN_H: f64 = 1e-5;
const JACOBIAN_REL_TOL: f64 = 1e-4;

fn build_quantity(
    quantity: impl Into<String>,
    k: Option<u32>,
    a: Option<f64>,
    routes: Vec<RouteEntry>,
    tol: f64,
    note: Option<String>,
) -> QuantityReport {
    let mut max_rel: f64 = 0.0;
    let mut pass = true;
    for i in 0..routes.len() {
        for j in i + 1..routes.len() {
            let (x, y) = (&routes[i], &routes[j]);
            let disc = (x.value - y.value).abs();
            let scale = x.value.abs().max(y.value.abs()).max(1e-300);
            max_rel = max_rel.max(disc / scale);
            let allowed = match (x.statistical, y.statistical) {
                (true, true) => 5.0 * x.uncertainty.hypot(y.uncertainty),
                (true, false) => 4.0 * x.uncertainty + y.uncertainty + tol,
                (false, true) => 4.0 * y.uncertainty + x.uncertainty + tol,
                (false, false) => tol * scale.max(1.0) + x.uncertainty + y.uncertainty,
            };
            if disc > allowed {
                pass = false;
            }
        }
    }
    QuantityReport {
        quantity: quantity.into(),
        k,
        a,
        routes,
        max_rel_discrepancy: max_rel,
        tolerance: tol,
        pass,
        note,
    }
}

fn det_route(route: &str, value: f64, uncertainty: f64) -> RouteEntry {
    RouteEntry {
        route: route.to_string(),
        value,
        uncertainty,
        statistical: false,
    }
}

fn mc_route(route: &str, value: f64, stderr: f64) -> RouteEntry {
    RouteEntry {
        route: route.to_string(),
        value,
        uncertainty: stderr,
        statistical: true,
    }
}

/// Derives an independent sub-seed for a report row.
fn row_seed(seed: u64, tag: u64) -> u64 {
    // splitmix-style mix; keeps the MC rows decoupled from one another
    let mut x = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Runs every verification route and assembles the report.
///
/// Numeric failures (route disagreements) are reported in the rows, not as
/// errors; `Err` is reserved for invalid configuration.
pub fn run_verification(cfg: &VerifyConfig) -> Result<VerificationReport, Error> {
    if cfg.k_max < 1 {
        return domain_err("k_max must be ≥ 1");
    }
    if cfg.samples < 1 {
        return domain_err("samples must be ≥ 1");
    }
    if !(cfg.tol > 0.0 && cfg.tol.is_finite()) {
        return domain_err(format!("tol must be positive and finite, got {}", cfg.tol));
    }
    if let Some(bad) = cfg.a_values.iter().find(|a| !(**a > 1.0 && a.is_finite())) {
        return domain_err(format!("every a must be > 1, got {bad}"));
    }

    let tol = cfg.tol;
    let quad_tol = tol / 4.0;
    let series_eps = (tol / 4.0).min(1e-10);
    let mut quantities = Vec::new();

    // S(k): polytope closed form, series, Bernoulli/Euler closed form, J_k quadrature.
    for k in 1..=cfg.k_max {
        let mut routes = vec![det_route(
            "polytope-closed",
            s_k_closed(k)?.to_f64(),
            0.0,
        )];
        let sv = s_k_series(k, series_eps)?;
        routes.push(det_route("series", sv.value, sv.tail_bound));
        if k >= 2 {
            routes.push(det_route(
                "bernoulli-euler-closed",
                s_k_from_jk(k)?.to_f64(),
                0.0,
            ));
            let q = j_k_quad(k, quad_tol)?;
            let scale = 2.0 * crate::exact::factorial_f64(k - 1);
            routes.push(det_route(
                "jk-quadrature",
                q.value / scale,
                q.abs_error_estimate / scale,
            ));
        }
        quantities.push(build_quantity("S(k)", Some(k), None, routes, tol, None));
    }

    // Vol(Δ^k): exact rational vs the two Monte Carlo probabilities.
    for k in 1..=cfg.k_max.min(MC_K_CAP) {
        let exact = rational_to_f64(&volume_delta(k)?);
        let delta = mc_delta_volume(k, cfg.samples, row_seed(cfg.seed, 1000 + u64::from(k)))?;
        let hyper = mc_hypertope_prob(k, cfg.samples, row_seed(cfg.seed, 2000 + u64::from(k)))?;
        let routes = vec![
            det_route("exact", exact, 0.0),
            mc_route("mc-cyclic-sums", delta.mean, delta.stderr),
            mc_route("mc-cyclic-products", hyper.mean, hyper.stderr),
        ];
        quantities.push(build_quantity(
            "Vol(Delta^k)",
            Some(k),
            None,
            routes,
            tol,
            Some(format!(
                "statistical: MC at {} samples compared at 4σ to exact, 5σ pairwise; \
                 ~1% of seeds may exceed",
                cfg.samples
            )),
        ));
    }

    // ζ(2k): derived through S(2k), against the direct series.
    for k in 1..=cfg.k_max / 2 {
        let zv = zeta_2k_series(k, series_eps)?;
        let routes = vec![
            det_route("via-S(2k)", zeta_2k_closed(k)?.to_f64(), 0.0),
            det_route("series", zv.value, zv.tail_bound),
        ];
        quantities.push(build_quantity("zeta(2k)", Some(k), None, routes, tol, None));
    }

    // J_k: Bernoulli/Euler closed form vs tanh-sinh quadrature.
    for k in 2..=cfg.k_max.min(MC_K_CAP) {
        let q = j_k_quad(k, quad_tol)?;
        let routes = vec![
            det_route("bernoulli-euler-closed", crate::series::j_k_closed(k)?.to_f64(), 0.0),
            det_route("tanh-sinh", q.value, q.abs_error_estimate),
        ];
        quantities.push(build_quantity("J(k)", Some(k), None, routes, tol, None));
    }

    // S(k,a) for k ∈ {2,3}: trigonometric closed form, bilateral series,
    // J_{k,a} quadrature.
    for &a in &cfg.a_values {
        for k in [2u32, 3] {
            let closed = if k == 2 { s_2a_closed(a)? } else { s_3a_closed(a)? };
            let sv = s_ka_series(k, a, series_eps)?;
            let q = j_ka_quad(k, a, quad_tol)?;
            let routes = vec![
                det_route("trig-closed", closed, 0.0),
                det_route("bilateral-series", sv.value, sv.tail_bound),
                det_route(
                    "jka-quadrature",
                    s_ka_from_jka(k, q.value)?,
                    q.abs_error_estimate / crate::exact::factorial_f64(k - 1),
                ),
            ];
            quantities.push(build_quantity("S(k,a)", Some(k), Some(a), routes, tol, None));
        }
    }

    // Principal values against the cotangent closed form.
    for n in 2..=8u32 {
        for m in 1..n {
            let closed = -(std::f64::consts::PI / f64::from(n))
                / (f64::from(m) * std::f64::consts::PI / f64::from(n)).tan();
            let q = cauchy_pv(m, n, quad_tol.max(1e-10))?;
            let routes = vec![
                det_route("cotangent-closed", closed, 0.0),
                det_route("pole-subtracted-quadrature", q.value, q.abs_error_estimate),
            ];
            quantities.push(build_quantity(
                format!("PV(m={m},n={n})"),
                None,
                None,
                routes,
                tol.max(1e-6),
                None,
            ));
        }
    }

    // Vanishing log integrals: the folded integrand cancels pointwise.
    for k in 1..=6u32 {
        let q = vanishing_integral_check(k);
        let routes = vec![
            det_route("exact", 0.0, 0.0),
            det_route("folded-quadrature", q.value, q.abs_error_estimate),
        ];
        quantities.push(build_quantity("vanishing(k)", Some(k), None, routes, tol, None));
    }

    // Density normalizations.
    for &a in &cfg.a_values {
        for (role, name) in [(DensityRole::First, "first"), (DensityRole::Other, "other")] {
            let q = density_normalization(a, role, quad_tol)?;
            let routes = vec![
                det_route("exact", 1.0, 0.0),
                det_route("quadrature", q.value, q.abs_error_estimate),
            ];
            quantities.push(build_quantity(
                format!("density({name})"),
                None,
                Some(a),
                routes,
                tol,
                None,
            ));
        }
    }

    // Jacobian spot checks: closed form vs central differences at sampled
    // interior points.
    for k in 2..=cfg.k_max.min(JACOBIAN_K_CAP) {
        quantities.push(jacobian_row("trig", k, cfg.seed)?);
        quantities.push(jacobian_row("zagier", k, cfg.seed)?);
    }

    let metadata = Metadata {
        seed: cfg.seed,
        samples: cfg.samples,
        tol: cfg.tol,
        k_max: cfg.k_max,
        a_values: cfg.a_values.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        notes: vec![zeta_coefficient_note()?],
    };
    Ok(VerificationReport {
        quantities,
        metadata,
    })
}

/// The recorded ζ(2k) printed-coefficient discrepancy: the closed form with
/// leading coefficient `π^{2k}/(2^{2k}−1)` in front of the bare tuple sum
/// exceeds the S(2k)-derived value by a factor of exactly `2^{2k}`; at k = 1
/// it gives 2π²/3 where the S(2)-derived route gives π²/6 = ζ(2).
pub fn zeta_coefficient_note() -> Result<DiscrepancyNote, Error> {
    let printed = zeta_2k_closed_unrescaled(1)?.to_f64();
    let derived = zeta_2k_closed(1)?.to_f64();
    Ok(DiscrepancyNote {
        id: "zeta-closed-form-coefficient".to_string(),
        k: 1,
        printed_value: printed,
        derived_value: derived,
        factor: 4.0,
        detail: "The tuple-sum closed form for zeta(2k) printed with leading coefficient \
                 pi^{2k}/(2^{2k}-1) omits the 1/2^{2k} rescale of the tuple sum: at k=1 it \
                 yields 2*pi^2/3, which exceeds the S(2k)-derived value pi^2/6 = zeta(2) by \
                 the factor 2^{2k} = 4. Every zeta route in this report therefore derives \
                 zeta(2k) = 2^{2k}/(2^{2k}-1) * S(2k), which agrees with the direct series."
            .to_string(),
    })
}

fn jacobian_row(map_name: &str, k: u32, seed: u64) -> Result<QuantityReport, Error> {
    let margin = 10.0 * JACOBIAN_H;
    let mut uniform = uniform_stream(row_seed(seed, 3000 + u64::from(k) * 2 + u64::from(map_name == "zagier")));
    let mut worst_rel: f64 = 0.0;
    let mut worst = (0.0, 0.0);
    for _ in 0..JACOBIAN_POINTS {
        let (closed, fd) = match map_name {
            "trig" => {
                let u = sample_delta_interior(k, margin, &mut uniform);
                let x = trig_map(&u)?;
                (
                    trig_jacobian_closed(&x),
                    numeric_jacobian_det(|p| trig_map(p), in_delta, &u, JACOBIAN_H)?,
                )
            }
            _ => {
                let xi = sample_hypertope_interior(k, margin, &mut uniform);
                let x = zagier_map(&xi)?;
                (
                    zagier_jacobian_closed(&x, &xi),
                    numeric_jacobian_det(|p| zagier_map(p), in_hypertope, &xi, JACOBIAN_H)?,
                )
            }
        };
        let rel = (fd - closed).abs() / closed.abs().max(1e-300);
        if rel >= worst_rel {
            worst_rel = rel;
            worst = (closed, fd);
        }
    }
    let routes = vec![
        det_route("closed-form", worst.0, 0.0),
        det_route("finite-difference", worst.1, 0.0),
    ];
    Ok(QuantityReport {
        quantity: format!("Jacobian({map_name})"),
        k: Some(k),
        a: None,
        routes,
        max_rel_discrepancy: worst_rel,
        tolerance: JACOBIAN_REL_TOL,
        pass: worst_rel <= JACOBIAN_REL_TOL,
        note: Some(format!(
            "worst of {JACOBIAN_POINTS} interior points, h = {JACOBIAN_H:.0e}, margin = 10h"
        )),
    })
}
