//! Single-contour representation of the hard-edge kernel: with C_R the
//! right unit semicircle from −i to i,
//!
//! ```text
//! K^even(x,y) + K^odd(x,y) = 2 𝒦(2x, 2y),
//! 𝒦(x,y) = ∫_{C_R} (dv/2πi) G^{1,0}_{0,M+1}(−sgn(y) x v | 0, −ν₁, …, −ν_M)
//!                          · G^{M+1,0}_{0,M+1}(|y| v | 0, ν₁, …, ν_M).
//! ```
//!
//! The first factor is an entire function of its argument (residue
//! series); the second is evaluated by the vertical contour, valid on the
//! semicircle because |arg(|y|v)| ≤ π/2 < (M+1)π/2. Parity parts are
//! recovered from evaluations at ±x.

use num_complex::Complex64;

use crate::biortho::KernelValue;
use crate::quad::gauss_legendre;
use crate::special::meijer::{meijer_g_10_series_complex, meijer_g_m0_complex};
use crate::{EnsembleParams, Error, Result};

/// K^even + K^odd via the semicircle representation.
pub(crate) fn unified_total(params: &EnsembleParams, x: f64, y: f64) -> Result<f64> {
    let depth = params.depth();
    let a = 2.0 * x;
    let b = 2.0 * y;
    let mut b_first = vec![0.0];
    let mut b_second = vec![0.0];
    for &v in params.nu() {
        b_first.push(-(v as f64));
        b_second.push(v as f64);
    }
    let sign_b = if b < 0.0 { -1.0 } else { 1.0 };
    let abs_b = b.abs();
    let m_second = depth + 1;
    let integrand = |theta: f64| -> Result<Complex64> {
        let v = Complex64::new(theta.cos(), theta.sin());
        let g1 = meijer_g_10_series_complex(-sign_b * a * v, &b_first)?;
        let g2 = meijer_g_m0_complex(m_second, abs_b * v, &b_second)?;
        Ok(v * g1 * g2 / (2.0 * std::f64::consts::PI))
    };
    // v = e^{iθ}: ∫(dv/2πi) F(v) = (1/2π)∫ e^{iθ} F(e^{iθ}) dθ over
    // [−π/2, π/2]. Fixed panels with a nested coarse rule as the error
    // estimate; the integrand is analytic in θ.
    let fine = gauss_legendre(32);
    let coarse = gauss_legendre(16);
    let panels = 6;
    let width = std::f64::consts::PI / panels as f64;
    let mut acc = Complex64::ZERO;
    let mut acc_coarse = Complex64::ZERO;
    for p in 0..panels {
        let lo = -0.5 * std::f64::consts::PI + p as f64 * width;
        let mid = lo + 0.5 * width;
        for (t, w) in fine.0.iter().zip(fine.1.iter()) {
            acc += integrand(mid + 0.5 * width * t)? * *w * (0.5 * width);
        }
        for (t, w) in coarse.0.iter().zip(coarse.1.iter()) {
            acc_coarse += integrand(mid + 0.5 * width * t)? * *w * (0.5 * width);
        }
    }
    let err = (acc - acc_coarse).norm();
    if err > 1e-8 * acc.norm() + 1e-300 {
        return Err(Error::NonConvergence {
            what: "semicircle kernel quadrature",
            budget: panels * 32,
        });
    }
    // Conjugate symmetry of the integrand in θ makes the value real.
    if acc.im.abs() > 1e-9 * acc.norm() + 1e-300 {
        return Err(Error::NonFinite(format!(
            "semicircle kernel produced a non-real value {acc}"
        )));
    }
    Ok(2.0 * acc.re)
}

pub(crate) fn unified_kernel(params: &EnsembleParams, x: f64, y: f64) -> Result<KernelValue> {
    let plus = unified_total(params, x, y)?;
    let minus = unified_total(params, -x, y)?;
    Ok(KernelValue {
        even: 0.5 * (plus + minus),
        odd: 0.5 * (plus - minus),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma::lgamma_pos;

    #[test]
    fn depth_zero_is_sine_kernel() {
        let params = EnsembleParams::new(vec![], 4).unwrap();
        for &(x, y) in &[(0.3_f64, -0.4_f64), (1.0, 0.5), (0.25, 0.1)] {
            let got = unified_total(&params, x, y).unwrap();
            let want = (2.0 * (x - y)).sin() / (std::f64::consts::PI * (x - y));
            assert!(
                (got - want).abs() < 1e-9 * want.abs().max(1.0),
                "({x},{y}): {got} vs {want}"
            );
        }
    }

    /// Entire series Σ z^k/(k!Γ(k+1+ν)) — equals z^{−ν/2} I_ν(2√z) without
    /// any branch ambiguity.
    fn entire_i(nu: usize, z: Complex64) -> Complex64 {
        let mut term = Complex64::new(1.0 / lgamma_pos(nu as f64 + 1.0).exp(), 0.0);
        let mut sum = term;
        for k in 1..300 {
            term *= z / (k as f64 * (k as f64 + nu as f64));
            sum += term;
            if term.norm() < 1e-18 * sum.norm() {
                break;
            }
        }
        sum
    }

    /// I_n(w) for integer n by its power series.
    fn bessel_i(n: usize, w: Complex64) -> Complex64 {
        let half = 0.5 * w;
        let mut term = half.powu(n as u32) / lgamma_pos(n as f64 + 1.0).exp();
        let mut sum = term;
        for k in 1..300 {
            term *= half * half / (k as f64 * (k as f64 + n as f64));
            sum += term;
            if term.norm() < 1e-18 * sum.norm() {
                break;
            }
        }
        sum
    }

    /// K_n(w) for integer n ≥ 1 via the log/digamma series (principal
    /// branch, valid here since |arg w| ≤ π/4 on the semicircle).
    fn bessel_k(n: usize, w: Complex64) -> Complex64 {
        const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
        let half = 0.5 * w;
        let mut finite = Complex64::ZERO;
        let mut fact_k = 1.0; // k!
        for k in 0..n {
            // (−1)^k (n−k−1)!/k! (w/2)^{2k−n}
            let mut c = 1.0;
            for j in 1..(n - k) {
                c *= j as f64;
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            finite += sign * c / fact_k * half.powi(2 * k as i32 - n as i32);
            fact_k *= k as f64 + 1.0;
        }
        finite *= 0.5;
        let log_term = half.ln() * bessel_i(n, w) * if n % 2 == 0 { -1.0 } else { 1.0 };
        // Σ_{k≥0} [ψ(k+1)+ψ(n+k+1)] (w/2)^{2k+n} / (k!(n+k)!)
        let psi = |m: usize| -> f64 {
            let mut h = -EULER_GAMMA;
            for j in 1..m {
                h += 1.0 / j as f64;
            }
            h
        };
        let mut tail = Complex64::ZERO;
        let mut pow = half.powu(n as u32);
        let mut k_fact = 1.0;
        let mut nk_fact = lgamma_pos(n as f64 + 1.0).exp();
        for k in 0..300 {
            let term = (psi(k + 1) + psi(n + k + 1)) / (k_fact * nk_fact) * pow;
            tail += term;
            if term.norm() < 1e-18 * tail.norm().max(1e-30) && k > 4 {
                break;
            }
            pow *= half * half;
            k_fact *= k as f64 + 1.0;
            nk_fact *= (n + k + 1) as f64;
        }
        let sign_n = if n % 2 == 0 { 1.0 } else { -1.0 };
        // K_n = finite + (−1)^{n+1} ln(w/2) I_n + (−1)^n (1/2) tail
        finite + log_term + sign_n * 0.5 * tail
    }

    #[test]
    fn integer_k_series_matches_known_values() {
        // K_1(1) and K_1(2) against reference values.
        let k1_1 = bessel_k(1, Complex64::new(1.0, 0.0));
        let k1_2 = bessel_k(1, Complex64::new(2.0, 0.0));
        assert!((k1_1.re - 0.601_907_230_197_234_6).abs() < 1e-12, "{k1_1}");
        assert!((k1_2.re - 0.139_865_881_816_522_57).abs() < 1e-12, "{k1_2}");
        assert!(k1_1.im.abs() < 1e-15 && k1_2.im.abs() < 1e-15);
    }

    #[test]
    fn depth_one_matches_bessel_ik_form() {
        // For M = 1, ν = (ν₁):
        // 𝒦(a,b) = (1/2πi)∫ dv [Σ (sgn(b) a v)^k/(k!Γ(k+1+ν))]
        //                      · 2(|b|v)^{ν/2} K_ν(2√(|b|v)),
        // assembled from independent I/K series. Compare 2𝒦(2x,2y) with
        // the production semicircle route.
        let params = EnsembleParams::new(vec![1], 4).unwrap();
        let nu = 1usize;
        for &(x, y) in &[(1.0_f64, 0.5_f64), (1.0, -0.5)] {
            let (a, b) = (2.0 * x, 2.0 * y);
            let sign_b = if b < 0.0 { -1.0 } else { 1.0 };
            let abs_b = b.abs();
            let rule = gauss_legendre(80);
            let mut acc = Complex64::ZERO;
            for (t, w) in rule.0.iter().zip(rule.1.iter()) {
                let theta = 0.5 * std::f64::consts::PI * t;
                let v = Complex64::new(theta.cos(), theta.sin());
                let first = entire_i(nu, sign_b * a * v);
                let arg = abs_b * v;
                let second = 2.0 * arg.powf(nu as f64 / 2.0) * bessel_k(nu, 2.0 * arg.sqrt());
                acc += v * first * second * *w * (0.25);
            }
            // dθ half-width π/2, times 1/(2π): combined factor 1/4 applied
            // per node above (π/2 · 1/(2π) = 1/4).
            let want = 2.0 * acc.re;
            let got = unified_total(&params, x, y).unwrap();
            assert!(
                (got - want).abs() < 1e-6 * want.abs().max(1e-8),
                "({x},{y}): {got} vs {want}"
            );
        }
    }

    #[test]
    fn matches_g_product_route_depth_one() {
        let params = EnsembleParams::new(vec![1], 4).unwrap();
        for &(x, y) in &[(1.0_f64, 0.5_f64), (1.0, -0.5)] {
            let got = unified_kernel(&params, x, y).unwrap();
            let want = super::super::meijer_kernel::g_product_kernel(&params, x, y).unwrap();
            assert!(
                (got.even - want.even).abs() < 1e-6 * want.even.abs().max(1e-8),
                "even ({x},{y}): {} vs {}",
                got.even,
                want.even
            );
            assert!(
                (got.odd - want.odd).abs() < 1e-6 * want.odd.abs().max(1e-8),
                "odd ({x},{y}): {} vs {}",
                got.odd,
                want.odd
            );
        }
    }
}
