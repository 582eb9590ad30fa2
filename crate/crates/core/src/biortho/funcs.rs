//! Numeric evaluation of the bi-orthogonal pair (p_k, φ_k).
//!
//! The monic polynomials
//!
//! ```text
//! p_k(x) = Σ_{a ≡ k (2)} c_a x^a,
//! c_a = (−1/4)^{(k−a)/2}/((k−a)/2)! · ∏_{m=0}^{M} Γ(ν_m+k+1)/Γ(ν_m+a+1),
//! ```
//!
//! have factorially large coefficients, so they are stored in signed-log
//! form. The dual functions divided by their norms, φ_k/h_k, are evaluated
//! by two independent routes:
//!
//! * a terminating expansion in the ensemble weights,
//!   φ_k = Σ_b d_b g_b with d_b = (−1/4)^{(k−b)/2}/((k−b)/2)! · k!/b!,
//!   reliable for small and moderate k; and
//! * a vertical-line integral (even case shown, abscissa −1/4)
//!
//!   ```text
//!   φ_{2n}(x)/h_{2n} = (−1)^n 2^{2n}/(√π (2n)!) · (1/2πi) ∫ dt |x|^{−2t−1}
//!       Γ(n−t) Γ(t+1/2)/Γ(−t) ∏_{m=1}^{M} Γ(ν_m+2t+1)/Γ(ν_m+2n+1),
//!   ```
//!
//!   whose integrand decays like e^{−(M+1/2)π|τ|}, uniformly in n — the
//!   route of choice once the weight expansion starts cancelling
//!   catastrophically (k ≳ 25).

use num_complex::Complex64;

use super::exact::ln_norm_h;
use crate::density::{weight_g, WeightBackend};
use crate::special::contour::{auto_contour, integrate_vertical};
use crate::special::gamma::{complex_log_gamma, lgamma_pos};
use crate::{EnsembleParams, Error, Result};

/// How to evaluate φ_k/h_k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiRoute {
    /// Terminating expansion in the ensemble weights g_b through the given
    /// backend.
    Series(WeightBackend),
    /// Vertical-line integral representation.
    Contour,
}

/// A bi-orthogonal polynomial in signed-log coefficient form.
#[derive(Debug, Clone)]
pub struct PolynomialP {
    k: usize,
    /// (sign, ln|c_a|) for a = 0..=k; sign 0.0 marks absent parity slots.
    terms: Vec<(f64, f64)>,
}

impl PolynomialP {
    pub fn new(params: &EnsembleParams, k: usize) -> Self {
        let mut terms = vec![(0.0, f64::NEG_INFINITY); k + 1];
        let mut a = k % 2;
        while a <= k {
            let gap = (k - a) / 2;
            let sign = if gap % 2 == 0 { 1.0 } else { -1.0 };
            let mut ln = -(gap as f64) * 4.0_f64.ln() - lgamma_pos(gap as f64 + 1.0);
            for m in 0..=params.depth() {
                let nu_m = if m == 0 { 0.0 } else { params.nu()[m - 1] as f64 };
                ln += lgamma_pos(nu_m + k as f64 + 1.0) - lgamma_pos(nu_m + a as f64 + 1.0);
            }
            terms[a] = (sign, ln);
            a += 2;
        }
        PolynomialP { k, terms }
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Coefficient of x^a as f64 (may overflow for very large k; the signed
    /// log form is exact in range).
    pub fn coefficient(&self, a: usize) -> f64 {
        match self.terms.get(a) {
            Some(&(s, ln)) => s * ln.exp(),
            None => 0.0,
        }
    }

    /// Evaluate p_k(x) with the largest term factored out to avoid overflow.
    pub fn eval(&self, x: f64) -> f64 {
        if x == 0.0 {
            return self.coefficient(0);
        }
        let ln_x = x.abs().ln();
        let mut peak = f64::NEG_INFINITY;
        for (a, &(s, ln)) in self.terms.iter().enumerate() {
            if s != 0.0 {
                peak = peak.max(ln + a as f64 * ln_x);
            }
        }
        let mut acc = 0.0;
        for (a, &(s, ln)) in self.terms.iter().enumerate() {
            if s == 0.0 {
                continue;
            }
            let xsign = if x < 0.0 && a % 2 == 1 { -1.0 } else { 1.0 };
            acc += s * xsign * (ln + a as f64 * ln_x - peak).exp();
        }
        acc * peak.exp()
    }

    /// Evaluate with an explicit external log-scale: returns p_k(x)·e^{−shift}
    /// stably (used when a caller wants to fold in a normalising factor).
    pub fn eval_scaled(&self, x: f64, shift: f64) -> f64 {
        if x == 0.0 {
            let (s, ln) = self.terms[0];
            return s * (ln - shift).exp();
        }
        let ln_x = x.abs().ln();
        let mut peak = f64::NEG_INFINITY;
        for (a, &(s, ln)) in self.terms.iter().enumerate() {
            if s != 0.0 {
                peak = peak.max(ln + a as f64 * ln_x);
            }
        }
        let mut acc = 0.0;
        for (a, &(s, ln)) in self.terms.iter().enumerate() {
            if s == 0.0 {
                continue;
            }
            let xsign = if x < 0.0 && a % 2 == 1 { -1.0 } else { 1.0 };
            acc += s * xsign * (ln + a as f64 * ln_x - peak).exp();
        }
        acc * (peak - shift).exp()
    }
}

/// φ_k(x)/h_k by the chosen route.
pub fn phi_over_norm(
    k: usize,
    params: &EnsembleParams,
    route: PhiRoute,
    x: f64,
) -> Result<f64> {
    match route {
        PhiRoute::Series(backend) => phi_over_norm_series(k, params, backend, x),
        PhiRoute::Contour => phi_over_norm_contour(k, params, x),
    }
}

/// φ_k(x) itself (φ_k/h_k rescaled by the exact norm).
pub fn phi(k: usize, params: &EnsembleParams, route: PhiRoute, x: f64) -> Result<f64> {
    Ok(phi_over_norm(k, params, route, x)? * ln_norm_h(params, k).exp())
}

fn phi_over_norm_series(
    k: usize,
    params: &EnsembleParams,
    backend: WeightBackend,
    x: f64,
) -> Result<f64> {
    let ln_h = ln_norm_h(params, k);
    // Collect signed-log terms d_b·g_b(x)/h_k, then sum from the peak.
    let mut signs = Vec::with_capacity(k / 2 + 1);
    let mut lns = Vec::with_capacity(k / 2 + 1);
    let mut b = k % 2;
    while b <= k {
        let gap = (k - b) / 2;
        let mut sign = if gap % 2 == 0 { 1.0 } else { -1.0 };
        let mut ln = lgamma_pos(k as f64 + 1.0)
            - lgamma_pos(b as f64 + 1.0)
            - (gap as f64) * 4.0_f64.ln()
            - lgamma_pos(gap as f64 + 1.0)
            - ln_h;
        let g = weight_g(b, params, backend, x)?;
        if g == 0.0 {
            b += 2;
            continue;
        }
        sign *= g.signum();
        ln += g.abs().ln();
        signs.push(sign);
        lns.push(ln);
        b += 2;
    }
    if lns.is_empty() {
        return Ok(0.0);
    }
    let peak = lns.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut acc = 0.0;
    for (s, ln) in signs.iter().zip(lns.iter()) {
        acc += s * (ln - peak).exp();
    }
    Ok(acc * peak.exp())
}

fn phi_over_norm_contour(k: usize, params: &EnsembleParams, x: f64) -> Result<f64> {
    // The integrand is analytic for −1/2 < Re t < ⌊k/2⌋; −1/4 keeps the
    // line well clear of the Γ(t+1/2) pole for every order.
    phi_over_norm_contour_at(k, params, x, -0.25)
}

fn phi_over_norm_contour_at(
    k: usize,
    params: &EnsembleParams,
    x: f64,
    abscissa: f64,
) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::Domain(
            "the contour representation of φ needs x ≠ 0".into(),
        ));
    }
    let n = k / 2;
    let odd = k % 2 == 1;
    let depth = params.depth();
    let nu = params.nu_f64();
    // Prefactor in log form, with the n-dependent gamma denominators folded
    // into the integrand exponent so the exponential never overflows alone.
    let sign_pre = if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut ln_pre = (k as f64) * 2.0_f64.ln()
        - 0.5 * std::f64::consts::PI.ln()
        - lgamma_pos(k as f64 + 1.0);
    for &v in &nu {
        ln_pre -= lgamma_pos(v + k as f64 + 1.0);
    }
    let ln_ax = x.abs().ln();
    let nf = n as f64;
    let f = move |t: Complex64| -> Complex64 {
        let power = if odd {
            (-2.0 * t - 2.0) * ln_ax
        } else {
            (-2.0 * t - 1.0) * ln_ax
        };
        let half_shift = if odd { 1.5 } else { 0.5 };
        let weight_shift = if odd { 2.0 } else { 1.0 };
        let mut acc = Complex64::new(ln_pre, 0.0) + power;
        let g1 = complex_log_gamma(Complex64::new(nf, 0.0) - t);
        let g2 = complex_log_gamma(t + half_shift);
        let g3 = complex_log_gamma(-t);
        match (g1, g2, g3) {
            (Ok(a), Ok(b), Ok(c)) => acc += a + b - c,
            _ => return Complex64::ZERO,
        }
        for &v in &nu {
            match complex_log_gamma(2.0 * t + (v + weight_shift)) {
                Ok(g) => acc += g,
                Err(_) => return Complex64::ZERO,
            }
        }
        acc.exp()
    };
    let kappa = std::f64::consts::PI * (depth as f64 + 0.5);
    // Beyond the power's phase, Γ(n−t) contributes ~ln(n) of phase rate for
    // large orders, so fold that into the node-density hint.
    let osc = 2.0 * ln_ax.abs() + 2.0 * (nf + 2.0).ln();
    let contour = auto_contour(&f, abscissa, kappa, osc)?;
    let (value, err) = integrate_vertical(&f, &contour);
    if !value.is_finite() {
        return Err(Error::NonFinite("φ contour integral".into()));
    }
    if err > 1e-7 * value.norm() + 1e-290 {
        return Err(Error::NonConvergence {
            what: "φ contour quadrature",
            budget: contour.nodes,
        });
    }
    let parity_sign = if odd && x < 0.0 { -1.0 } else { 1.0 };
    Ok(parity_sign * sign_pre * value.re)
}
