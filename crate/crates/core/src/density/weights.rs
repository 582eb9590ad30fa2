//! The weight functions g_j^{(M)} of the product ensemble, defined by the
//! recursion
//!
//! ```text
//! g_j^{(0)}(x) = x^j e^{−x²},
//! g_j^{(m)}(x) = ∫₀^∞ (dy/y) y^{ν_m} e^{−y} g_j^{(m−1)}(x/y),
//! ```
//!
//! with two closed-form alternatives: a Mellin–Barnes line integral
//!
//! ```text
//! g_j(x) = (sgn x)^j (1/4πi) ∫ |x|^s Γ((j−s)/2) ∏_m Γ(ν_m − s) ds,  Re s = c < 0,
//! ```
//!
//! and a Meijer G-form
//!
//! ```text
//! g_j(x) = (sgn x)^j ∏_m (2^{ν_m−1}/√π) ·
//!          G^{2M+1,0}_{0,2M+1}(x²/4^M | ν₁/2, (ν₁+1)/2, …, ν_M/2, (ν_M+1)/2, j/2).
//! ```
//!
//! All three are exposed; their agreement is a cross-validation invariant.

use crate::quad::integrate_half_line_exp;
use crate::special::contour::GammaProductIntegrand;
use crate::special::gamma::lgamma_pos;
use crate::special::meijer::meijer_g_m0;
use crate::{EnsembleParams, Error, Result};

/// Which evaluation strategy to use for g_j^{(M)}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightBackend {
    /// Nested half-line quadrature of the defining recursion.
    RecursiveQuadrature,
    /// Vertical-line integral at abscissa c = −1/4.
    MellinBarnes,
    /// Meijer G^{2M+1,0}_{0,2M+1} evaluation.
    MeijerG,
}

/// Default abscissa for the Mellin–Barnes backend (any c < 0 is valid; all
/// integrand poles sit at Re s ≥ 0).
const MB_ABSCISSA: f64 = -0.25;

fn sign_power(x: f64, j: usize) -> f64 {
    if j % 2 == 1 && x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

fn recursive_level(j: usize, nu: &[f64], x: f64, tol: f64) -> f64 {
    match nu.split_last() {
        None => x.powi(j as i32) * (-x * x).exp(),
        Some((&nu_m, rest)) => {
            let inner =
                |y: f64| -> f64 { y.powf(nu_m - 1.0) * (-y).exp() * recursive_level(j, rest, x / y, tol) };
            integrate_half_line_exp(inner, tol).0
        }
    }
}

/// g_j^{(M)}(x) through the chosen backend.
///
/// At the origin, odd j vanish by parity and even j take the finite limit of
/// the Meijer form; the only excluded case is a logarithmic divergence, which
/// happens exactly when the parameter list (ν₁/2, (ν₁+1)/2, …, j/2) contains
/// a repeated zero — i.e. j = 0 together with some ν_m = 0.
pub fn weight_g(j: usize, params: &EnsembleParams, backend: WeightBackend, x: f64) -> Result<f64> {
    let depth = params.depth();
    if x == 0.0 {
        if depth == 0 {
            return Ok(if j == 0 { 1.0 } else { 0.0 });
        }
        if j % 2 == 1 {
            return Ok(0.0);
        }
        return weight_even_at_origin(j, params);
    }
    let nu = params.nu_f64();
    match backend {
        WeightBackend::RecursiveQuadrature => Ok(recursive_level(j, &nu, x, 1e-10)),
        WeightBackend::MellinBarnes => {
            let mut numerator = vec![(j as f64 / 2.0, -0.5)];
            for &v in &nu {
                numerator.push((v, -1.0));
            }
            let integrand = GammaProductIntegrand::new(numerator, vec![])
                .with_power(x.abs(), 0.0, 1.0)?;
            let (value, _err) = integrand.integrate(MB_ABSCISSA)?;
            Ok(sign_power(x, j) * 0.5 * value.re)
        }
        WeightBackend::MeijerG => {
            let mut b = Vec::with_capacity(2 * depth + 1);
            let mut prefactor = 1.0;
            for &v in &nu {
                b.push(v / 2.0);
                b.push((v + 1.0) / 2.0);
                prefactor *= 2.0_f64.powf(v - 1.0) / std::f64::consts::PI.sqrt();
            }
            b.push(j as f64 / 2.0);
            let z = x * x / 4.0_f64.powi(depth as i32);
            let g = meijer_g_m0(2 * depth + 1, z, &b)?;
            Ok(sign_power(x, j) * prefactor * g)
        }
    }
}

/// z → 0 limit of the Meijer form for even j at depth ≥ 1: the G-function
/// tends to z^{b_min}·∏_{b≠b_min}Γ(b), so the value is 0 when every
/// parameter is positive, finite when 0 appears once, divergent otherwise.
fn weight_even_at_origin(j: usize, params: &EnsembleParams) -> Result<f64> {
    let mut b = Vec::with_capacity(2 * params.depth() + 1);
    let mut prefactor = 1.0;
    for &v in &params.nu_f64() {
        b.push(v / 2.0);
        b.push((v + 1.0) / 2.0);
        prefactor *= 2.0_f64.powf(v - 1.0) / std::f64::consts::PI.sqrt();
    }
    b.push(j as f64 / 2.0);
    match b.iter().filter(|&&bi| bi == 0.0).count() {
        0 => Ok(0.0),
        1 => {
            let mut ln = prefactor.ln();
            for &bi in &b {
                if bi != 0.0 {
                    ln += lgamma_pos(bi);
                }
            }
            Ok(ln.exp())
        }
        _ => Err(Error::Domain(
            "weight diverges logarithmically at the origin (repeated zero parameter)".into(),
        )),
    }
}
