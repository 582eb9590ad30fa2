//! Joint eigenvalue densities of the product ensemble and its Hermite
//! two-parameter approximation.
//!
//! The product ensemble of depth M with base dimension n has joint PDF
//!
//! ```text
//! P(x₁..x_n) = (1/Z_n) ∏_{i<j}(x_j−x_i) · det[g_{j−1}(x_i)],
//! Z_n = 2^{−n(n−1)/2} π^{n/2} ∏_{m=0}^{M} ∏_{j=1}^{n} Γ(ν_m + j),  ν₀ = 0,
//! ```
//!
//! normalised over the ordered domain x₁ < … < x_n.

use nalgebra::DMatrix;

use super::weights::{weight_g, WeightBackend};
use crate::special::gamma::lgamma_pos;
use crate::{EnsembleParams, Error, Result};

/// ln Z_n for the product ensemble joint density.
pub fn product_log_normalization(params: &EnsembleParams, n: usize) -> f64 {
    let pairs = (n * (n - 1)) as f64 / 2.0;
    let mut ln_z = -pairs * 2.0_f64.ln() + n as f64 / 2.0 * std::f64::consts::PI.ln();
    for m in 0..=params.depth() {
        let nu_m = if m == 0 { 0.0 } else { params.nu()[m - 1] as f64 };
        for j in 1..=n {
            ln_z += lgamma_pos(nu_m + j as f64);
        }
    }
    ln_z
}

/// Joint PDF of the n nonzero eigenvalues of the depth-M product ensemble,
/// evaluated at distinct points (any order; the value is symmetric, and
/// non-negative for ascending input).
pub fn product_jpdf(params: &EnsembleParams, points: &[f64]) -> Result<f64> {
    product_jpdf_with_backend(params, points, WeightBackend::MeijerG)
}

/// Same as [`product_jpdf`] with an explicit weight backend (the slower
/// quadrature backend is useful for cross-checks).
pub fn product_jpdf_with_backend(
    params: &EnsembleParams,
    points: &[f64],
    backend: WeightBackend,
) -> Result<f64> {
    let n = points.len();
    if n == 0 {
        return Err(Error::Domain("need at least one point".into()));
    }
    for (i, &xi) in points.iter().enumerate() {
        for &xj in points.iter().skip(i + 1) {
            if xi == xj {
                return Err(Error::Domain(format!("points must be distinct, got {xi} twice")));
            }
        }
    }
    let mut vandermonde = 1.0;
    for (i, &xi) in points.iter().enumerate() {
        for &xj in points.iter().skip(i + 1) {
            vandermonde *= xj - xi;
        }
    }
    let mut mat = DMatrix::zeros(n, n);
    for (i, &xi) in points.iter().enumerate() {
        for j in 0..n {
            mat[(i, j)] = weight_g(j, params, backend, xi)?;
        }
    }
    let det = mat.lu().determinant();
    Ok(vandermonde * det * (-product_log_normalization(params, n)).exp())
}

/// Unnormalised Hermite two-parameter density
/// ∏_{i<j}(y_j−y_i)(y_j^θ−y_i^θ) ∏_k |y_k|^α e^{−y_k²} with θ = 2M+1.
pub fn mb_density_unnormalized(alpha: f64, depth: usize, points: &[f64]) -> f64 {
    let theta = (2 * depth + 1) as i32;
    let mut v = 1.0;
    for (i, &yi) in points.iter().enumerate() {
        for &yj in points.iter().skip(i + 1) {
            v *= (yj - yi) * (yj.powi(theta) - yi.powi(theta));
        }
    }
    for &y in points {
        v *= y.abs().powf(alpha) * (-y * y).exp();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate_adaptive;

    #[test]
    fn gaussian_single_point() {
        let params = EnsembleParams::new(vec![], 1).unwrap();
        // Z₁ = √π: density e^{−x²}/√π, normalised.
        let p = product_jpdf(&params, &[0.7]).unwrap();
        let want = (-0.49_f64).exp() / std::f64::consts::PI.sqrt();
        assert!((p - want).abs() < 1e-12 * want);
        let (total, _) = integrate_adaptive(
            |x| product_jpdf(&params, &[x]).unwrap(),
            -8.0,
            8.0,
            1e-10,
        );
        assert!((total - 1.0).abs() < 1e-9, "normalization {total}");
    }

    #[test]
    fn depth_zero_matches_squared_vandermonde_form() {
        // Independent oracle: the depth-0 ordered density is
        // (2/π)·(x₂−x₁)²·e^{−x₁²−x₂²} for n = 2.
        let params = EnsembleParams::new(vec![], 2).unwrap();
        let (x, y) = (-0.3, 0.8);
        let got = product_jpdf(&params, &[x, y]).unwrap();
        let want = 2.0 / std::f64::consts::PI * (y - x).powi(2) * (-x * x - y * y).exp();
        assert!(
            (got - want).abs() < 1e-10 * want,
            "got {got}, want {want}"
        );
    }

    #[test]
    fn depth_one_normalization() {
        // M=1, n=2, ν=(0): the symmetric density integrates to 2 over the
        // plane, so the ordered-domain integral is 1. The weights are cached
        // on a shared panel grid (geometric near 0, where the even weight has
        // a logarithmic singularity) and the double integral becomes a sum of
        // cheap 2×2 determinants over node pairs.
        let params = EnsembleParams::new(vec![0], 2).unwrap();
        let breaks = [0.0, 1e-5, 1e-3, 0.05, 0.5, 1.5, 4.0, 8.0, 12.0, 20.0, 40.0];
        let rule = crate::quad::gauss_legendre(24);
        let mut nodes = Vec::new();
        let mut wts = Vec::new();
        for side in [-1.0, 1.0] {
            for p in 0..breaks.len() - 1 {
                let (a, b) = (side * breaks[p], side * breaks[p + 1]);
                let (half, mid) = (0.5 * (b - a), 0.5 * (a + b));
                for (t, w) in rule.0.iter().zip(rule.1.iter()) {
                    nodes.push(mid + half * t);
                    wts.push(w * half.abs());
                }
            }
        }
        let g: Vec<[f64; 2]> = nodes
            .iter()
            .map(|&x| {
                [
                    weight_g(0, &params, WeightBackend::MeijerG, x).unwrap(),
                    weight_g(1, &params, WeightBackend::MeijerG, x).unwrap(),
                ]
            })
            .collect();
        let ln_z = product_log_normalization(&params, 2);
        let scale = (-ln_z).exp();
        let mut total = 0.0;
        for i in 0..nodes.len() {
            for j in 0..nodes.len() {
                let det = g[i][0] * g[j][1] - g[i][1] * g[j][0];
                total += wts[i] * wts[j] * (nodes[j] - nodes[i]) * det * scale;
            }
        }
        total *= 0.5;
        assert!((total - 1.0).abs() < 1e-4, "normalization {total}");
    }

    #[test]
    fn mb_density_shape() {
        // θ = 1, α = 0 collapses to the squared-Vandermonde Gaussian factor.
        let v = mb_density_unnormalized(0.0, 0, &[-0.5, 1.0]);
        let want = (1.5_f64).powi(2) * (-0.25_f64 - 1.0).exp();
        assert!((v - want).abs() < 1e-13 * want);
        // Non-negativity on ascending input, and global-negation symmetry.
        let a = mb_density_unnormalized(3.0, 1, &[-1.2, 0.4, 2.0]);
        assert!(a >= 0.0);
        let b = mb_density_unnormalized(3.0, 1, &[-2.0, -0.4, 1.2]);
        assert!((a - b).abs() < 1e-12 * a.abs().max(1e-300), "{a} vs {b}");
    }
}
