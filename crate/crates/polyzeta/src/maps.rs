//! The two changes of variables behind the closed forms — the trigonometric
//! map onto the cyclic-sum polytope `Δ^k` and the rational (Zagier-style) map
//! onto the cyclic-product polytope `ℍ^k` — together with their closed-form
//! Jacobian determinants and a finite-difference validator.

use std::f64::consts::FRAC_PI_2;

use crate::{domain_err, Error};

/// Membership in `Δ^k`: all coordinates positive, all cyclically consecutive
/// sums below 1 (for k = 1 the single constraint is `2u₁ < 1`).
pub fn in_delta(u: &[f64]) -> bool {
    !u.is_empty()
        && u.iter().all(|&v| v > 0.0)
        && (0..u.len()).all(|i| u[i] + u[(i + 1) % u.len()] < 1.0)
}

/// Membership in `ℍ^k`: all coordinates positive, all cyclically consecutive
/// products below 1.
pub fn in_hypertope(xi: &[f64]) -> bool {
    !xi.is_empty()
        && xi.iter().all(|&v| v > 0.0)
        && (0..xi.len()).all(|i| xi[i] * xi[(i + 1) % xi.len()] < 1.0)
}

/// `x_i = sin(πu_i/2)/cos(πu_{i+1}/2)` with cyclic indexing; maps `Δ^k` into
/// `(0,1)^k`. Rejects points outside `Δ^k` (the cosine may vanish there).
pub fn trig_map(u: &[f64]) -> Result<Vec<f64>, Error> {
    if !in_delta(u) {
        return domain_err(format!("point {u:?} is not inside Δ^{}", u.len()));
    }
    let k = u.len();
    Ok((0..k)
        .map(|i| (FRAC_PI_2 * u[i]).sin() / (FRAC_PI_2 * u[(i + 1) % k]).cos())
        .collect())
}

/// Closed-form Jacobian determinant of the trigonometric map at the image
/// point: `(π/2)^k · (1 − (−1)^k Π x_i²)`.
pub fn trig_jacobian_closed(x: &[f64]) -> f64 {
    let k = x.len() as i32;
    let prod_sq: f64 = x.iter().map(|&v| v * v).product();
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    FRAC_PI_2.powi(k) * (1.0 - sign * prod_sq)
}

/// `x_i = ξ_i²(ξ_{i+1}²+1)/(ξ_i²+1)` with cyclic indexing; maps `ℍ^k` into
/// `(0,1)^k`. Rejects points outside `ℍ^k`.
pub fn zagier_map(xi: &[f64]) -> Result<Vec<f64>, Error> {
    if !in_hypertope(xi) {
        return domain_err(format!("point {xi:?} is not inside ℍ^{}", xi.len()));
    }
    let k = xi.len();
    Ok((0..k)
        .map(|i| {
            let a = xi[i] * xi[i];
            let b = xi[(i + 1) % k] * xi[(i + 1) % k];
            a * (b + 1.0) / (a + 1.0)
        })
        .collect())
}

/// Closed-form Jacobian determinant of the rational map for a consistent
/// `(x, ξ)` pair: `2^k √(Πx_i) (1 − (−1)^k Πx_i) / Π(ξ_i²+1)`.
pub fn zagier_jacobian_closed(x: &[f64], xi: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), xi.len());
    let k = x.len() as i32;
    let prod: f64 = x.iter().product();
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let denom: f64 = xi.iter().map(|&v| v * v + 1.0).product();
    2.0_f64.powi(k) * prod.sqrt() * (1.0 - sign * prod) / denom
}

/// Determinant of the central-difference Jacobian matrix
/// `∂x_i/∂u_j ≈ (x_i(u+he_j) − x_i(u−he_j)) / 2h`.
///
/// `in_domain` guards the stencil: every perturbed point must satisfy it,
/// otherwise the point is rejected as too close to the boundary.
pub fn numeric_jacobian_det<M, D>(
    map: M,
    in_domain: D,
    point: &[f64],
    h: f64,
) -> Result<f64, Error>
where
    M: Fn(&[f64]) -> Result<Vec<f64>, Error>,
    D: Fn(&[f64]) -> bool,
{
    if !(h > 0.0 && h.is_finite()) {
        return domain_err(format!("step h must be positive and finite, got {h}"));
    }
    let k = point.len();
    if k == 0 {
        return domain_err("empty point");
    }
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(k);
    for j in 0..k {
        let mut plus = point.to_vec();
        let mut minus = point.to_vec();
        plus[j] += h;
        minus[j] -= h;
        if !in_domain(&plus) || !in_domain(&minus) {
            return domain_err(format!(
                "point {point:?} is within {h} of the domain boundary in coordinate {j}"
            ));
        }
        let fp = map(&plus)?;
        let fm = map(&minus)?;
        cols.push(fp.iter().zip(&fm).map(|(p, m)| (p - m) / (2.0 * h)).collect());
    }
    // matrix[i][j] = ∂x_i/∂u_j
    let matrix: Vec<Vec<f64>> = (0..k).map(|i| (0..k).map(|j| cols[j][i]).collect()).collect();
    Ok(determinant(matrix))
}

/// LU determinant with partial pivoting; adequate for the small k used here.
fn determinant(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&p, &q| a[p][col].abs().total_cmp(&a[q][col].abs()))
            .expect("nonempty");
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for c in col..n {
                let v = factor * a[col][c];
                a[row][c] -= v;
            }
        }
    }
    det
}

/// Rejection-samples a point of `Δ^k` whose every coordinate direction has
/// `margin` of room, from a stream of open-(0,1) uniforms.
pub fn sample_delta_interior(k: u32, margin: f64, uniform: &mut impl FnMut() -> f64) -> Vec<f64> {
    let k = k as usize;
    loop {
        let u: Vec<f64> = (0..k).map(|_| uniform()).collect();
        let inside = u.iter().all(|&v| v > margin)
            && (0..k).all(|i| u[i] + u[(i + 1) % k] < 1.0 - 2.0 * margin);
        if inside {
            return u;
        }
    }
}

/// Rejection-samples a point of `ℍ^k` with `margin` of room per coordinate;
/// coordinates are proposed from the half-Cauchy quantile map so the ξ > 1
/// region is exercised.
pub fn sample_hypertope_interior(
    k: u32,
    margin: f64,
    uniform: &mut impl FnMut() -> f64,
) -> Vec<f64> {
    let k = k as usize;
    loop {
        let xi: Vec<f64> = (0..k).map(|_| (FRAC_PI_2 * uniform()).tan()).collect();
        let inside = xi.iter().all(|&v| v > margin)
            && (0..k).all(|i| (xi[i] + margin) * (xi[(i + 1) % k] + margin) < 1.0);
        if inside {
            return xi;
        }
    }
}
