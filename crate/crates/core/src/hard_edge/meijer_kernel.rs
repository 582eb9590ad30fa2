//! The Meijer G-kernel
//!
//! ```text
//! K^{M'}(x, y) = ∫₀¹ du G^{1,0}_{0,M'+1}(xu | −ν'₀, …, −ν'_{M'})
//!                      · G^{M',0}_{0,M'+1}(yu | ν'_{M'}, …, ν'₀)
//! ```
//!
//! for x, y > 0, and the parameter maps that dress it into the even/odd
//! hard-edge kernels of the product ensemble:
//!
//! ```text
//! K^even(|x|,|y|) = (|y|/2^{2M}) K^{2M+1}(x²/2^{2M}, y²/2^{2M}),
//!     ν' = (ν_m/2, (ν_m−1)/2) for m = 0..M (ν₀ = 0),
//! K^odd(|x|,|y|)  = (|x|/2^{2M}) K^{2M+1}(x²/2^{2M}, y²/2^{2M}),
//!     ν' = (ν_m/2, (ν_m+1)/2),   full odd part = sgn(xy)·K^odd(|x|,|y|).
//! ```
//!
//! The u-integrand can blow up integrably at u = 0 (the second factor
//! behaves like u^{min ν'} with min ν' as low as −1/2), so the integral is
//! taken over dyadically shrinking panels toward 0, each panel evaluated
//! by nested Gauss–Legendre rules whose difference provides the error
//! estimate.

use num_complex::Complex64;

use crate::biortho::KernelValue;
use crate::quad::gauss_legendre;
use crate::special::contour::TRUNCATION_RATIO;
use crate::special::gamma::complex_log_gamma;
use crate::special::meijer::{meijer_g_10_series, meijer_g_m0};
use crate::{EnsembleParams, Error, Result};

/// A G^{m,0}_{0,q} evaluator for fixed parameters and varying positive
/// argument: the gamma products along the vertical contour do not depend
/// on z, so they are computed once and each evaluation reduces to a
/// weighted sum of exp(cached + s·ln z).
struct CachedContourG {
    abscissa: f64,
    /// Imaginary parts of the nodes (symmetric grid including 0).
    taus: Vec<f64>,
    /// Σ ln Γ-terms at each node.
    ln_products: Vec<Complex64>,
    /// Trapezoid step × 1/(2π).
    step_over_2pi: f64,
}

impl CachedContourG {
    /// `ln_z_extent` bounds |ln z| over the arguments the cache will see;
    /// it fixes the node density the same way the oscillation hint does in
    /// the one-shot evaluator.
    fn new(m: usize, b: &[f64], ln_z_extent: f64) -> Result<Self> {
        let q = b.len();
        if m < 2 || m > q || 2 * m < q + 1 {
            return Err(Error::Domain(format!(
                "cached contour G needs 2 ≤ m ≤ q and 2m − q ≥ 1, got m={m}, q={q}"
            )));
        }
        let mut abscissa = b[..m].iter().cloned().fold(f64::INFINITY, f64::min) - 0.5;
        let ln_product = |s: Complex64| -> Complex64 {
            let mut acc = Complex64::ZERO;
            for (j, &bj) in b.iter().enumerate() {
                let term = if j < m {
                    complex_log_gamma(Complex64::new(bj, 0.0) - s)
                } else {
                    complex_log_gamma(Complex64::new(1.0 - bj, 0.0) + s).map(|v| -v)
                };
                match term {
                    Ok(v) => acc += v,
                    Err(_) => return Complex64::new(f64::NEG_INFINITY, 0.0),
                }
            }
            acc
        };
        // The denominator gammas put zeros of the integrand on the real
        // axis; if the line passes exactly through one, the log-product is
        // −∞ there, which is harmless for the sum but would wreck the
        // envelope walk below. Nudge off such points.
        for _ in 0..32 {
            if ln_product(Complex64::new(abscissa, 0.0)).re.is_finite() {
                break;
            }
            abscissa -= 0.031_25;
        }
        // |z^s| is constant along the line for z > 0, so the truncation
        // point is a property of the gamma envelope alone.
        let peak = [0.0, 0.25, 0.5, 1.0, 2.0]
            .iter()
            .map(|&t| ln_product(Complex64::new(abscissa, t)).re)
            .fold(f64::NEG_INFINITY, f64::max);
        if !peak.is_finite() {
            return Err(Error::NonConvergence {
                what: "cached contour G envelope",
                budget: 32,
            });
        }
        let mut t_max = 8.0_f64;
        for _ in 0..60 {
            let tail = ln_product(Complex64::new(abscissa, t_max)).re;
            if tail < peak + TRUNCATION_RATIO.ln() - 5.0 {
                break;
            }
            t_max *= 1.3;
            if t_max > 2.0e4 {
                return Err(Error::NonConvergence {
                    what: "cached contour G truncation walk",
                    budget: 60,
                });
            }
        }
        let h = (std::f64::consts::PI / (4.0 * (ln_z_extent + 1.0))).min(0.05);
        let count = (2.0 * t_max / h).ceil() as usize | 1;
        let mut taus = Vec::with_capacity(count);
        let mut ln_products = Vec::with_capacity(count);
        for i in 0..count {
            let tau = -t_max + 2.0 * t_max * i as f64 / (count - 1) as f64;
            taus.push(tau);
            ln_products.push(ln_product(Complex64::new(abscissa, tau)));
        }
        let step = 2.0 * t_max / (count - 1) as f64;
        Ok(Self {
            abscissa,
            taus,
            ln_products,
            step_over_2pi: step / (2.0 * std::f64::consts::PI),
        })
    }

    fn eval(&self, z: f64) -> Result<f64> {
        if !(z > 0.0) {
            return Err(Error::Domain(format!(
                "cached contour G needs z > 0, got {z}"
            )));
        }
        let ln_z = z.ln();
        let mut acc = Complex64::ZERO;
        for (tau, lp) in self.taus.iter().zip(self.ln_products.iter()) {
            if lp.re == f64::NEG_INFINITY {
                continue;
            }
            let s = Complex64::new(self.abscissa, *tau);
            acc += (lp + s * ln_z).exp();
        }
        let v = acc * self.step_over_2pi;
        if !v.re.is_finite() {
            return Err(Error::NonFinite("cached contour G sum".into()));
        }
        Ok(v.re)
    }
}

/// The Meijer G-kernel K^{M'}(x, y) for x, y > 0; `nu_list` holds
/// (ν'₀, …, ν'_{M'}) with M' = `m_eff`.
pub fn meijer_g_kernel(m_eff: usize, nu_list: &[f64], x: f64, y: f64) -> Result<f64> {
    if nu_list.len() != m_eff + 1 {
        return Err(Error::Domain(format!(
            "Meijer G-kernel with M' = {m_eff} needs {} indices, got {}",
            m_eff + 1,
            nu_list.len()
        )));
    }
    if !(x > 0.0) || !(y > 0.0) {
        return Err(Error::Domain(format!(
            "Meijer G-kernel needs x, y > 0, got ({x}, {y})"
        )));
    }
    let b_first: Vec<f64> = nu_list.iter().map(|&v| -v).collect();
    let b_second: Vec<f64> = nu_list.iter().rev().cloned().collect();
    // Cache the second factor's contour when it has one (M' ≥ 2); at
    // M' = 1 it is a plain residue series.
    let cached = if m_eff >= 2 {
        let extent = y.ln().abs() + 36.0;
        Some(CachedContourG::new(m_eff, &b_second, extent)?)
    } else {
        None
    };
    let second = |zu: f64| -> Result<f64> {
        match &cached {
            Some(c) => c.eval(zu),
            None => meijer_g_m0(1, zu, &b_second),
        }
    };

    let rule_fine = gauss_legendre(32);
    let rule_coarse = gauss_legendre(16);
    let mut total = 0.0;
    let mut err_total = 0.0;
    let mut hi = 1.0_f64;
    let mut negligible_run = 0;
    for j in 0..52 {
        let lo = 0.5 * hi;
        let mut fine = 0.0;
        let mut coarse = 0.0;
        let (half, mid) = (0.5 * (hi - lo), 0.5 * (lo + hi));
        for (t, w) in rule_fine.0.iter().zip(rule_fine.1.iter()) {
            let u = mid + half * t;
            fine += w * half * (meijer_g_10_series(x * u, &b_first)? * second(y * u)?);
        }
        for (t, w) in rule_coarse.0.iter().zip(rule_coarse.1.iter()) {
            let u = mid + half * t;
            coarse += w * half * (meijer_g_10_series(x * u, &b_first)? * second(y * u)?);
        }
        total += fine;
        err_total += (fine - coarse).abs();
        if fine.abs() < 1e-16 * total.abs().max(1e-300) {
            negligible_run += 1;
            if j > 10 && negligible_run >= 3 {
                break;
            }
        } else {
            negligible_run = 0;
        }
        hi = lo;
    }
    if err_total > 1e-7 * total.abs() + 1e-300 {
        return Err(Error::NonConvergence {
            what: "Meijer G-kernel u-integral",
            budget: 52,
        });
    }
    Ok(total)
}

/// Index map for the even hard-edge dressing: (ν_m/2, (ν_m−1)/2), m = 0..M.
pub(crate) fn even_index_map(params: &EnsembleParams) -> Vec<f64> {
    let mut list = vec![0.0, -0.5];
    for &v in params.nu() {
        list.push(v as f64 / 2.0);
        list.push((v as f64 - 1.0) / 2.0);
    }
    list
}

/// Index map for the odd hard-edge dressing: (ν_m/2, (ν_m+1)/2), m = 0..M.
pub(crate) fn odd_index_map(params: &EnsembleParams) -> Vec<f64> {
    let mut list = vec![0.0, 0.5];
    for &v in params.nu() {
        list.push(v as f64 / 2.0);
        list.push((v as f64 + 1.0) / 2.0);
    }
    list
}

/// Hard-edge kernel via the G-product route: both parity parts through the
/// dressed Meijer G-kernel.
pub(crate) fn g_product_kernel(params: &EnsembleParams, x: f64, y: f64) -> Result<KernelValue> {
    let m = params.depth();
    let scale = 4.0_f64.powi(m as i32);
    let (a, b) = (x * x / scale, y * y / scale);
    let m_eff = 2 * m + 1;
    let even = y.abs() / scale * meijer_g_kernel(m_eff, &even_index_map(params), a, b)?;
    let odd_abs = x.abs() / scale * meijer_g_kernel(m_eff, &odd_index_map(params), a, b)?;
    let odd = if x * y < 0.0 { -odd_abs } else { odd_abs };
    Ok(KernelValue { even, odd })
}
