//! Hard-edge kernel of the two-sided ensemble with weight |x|^α e^{−x²}
//! and θ-deformed interaction: even/odd parts are dressings of the
//! one-parameter Wright-Bessel family
//!
//! ```text
//! K^{(α,θ)}(x,y) = θ ∫₀¹ (xu)^α J_{(α+1)/θ, 1/θ}(xu) · J_{α+1, θ}((yu)^θ) du,
//! J_{a,b}(z) = Σ_k (−z)^k / (k! Γ(a + bk)).
//! ```
//!
//! For odd integer θ this family coincides with the Meijer G-kernel after
//! a power variable map, which bridges this ensemble's hard edge and the
//! product ensemble's.

use std::cell::RefCell;

use crate::biortho::KernelValue;
use crate::quad::integrate_unit_dyadic;
use crate::special::wright::wright_bessel;
use crate::{Error, Result};

/// Raw Wright-Bessel hard-edge kernel K^{(α,θ)}(x,y) for x, y > 0.
pub fn mb_kernel_raw(alpha: f64, theta: f64, x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0 && y > 0.0) {
        return Err(Error::Domain(format!(
            "wright-bessel kernel needs positive arguments, got ({x}, {y})"
        )));
    }
    if alpha <= -1.0 || theta <= 0.0 {
        return Err(Error::Domain(format!(
            "wright-bessel kernel needs alpha > -1 and theta > 0, got ({alpha}, {theta})"
        )));
    }
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let integrand = |u: f64| -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        let eval = || -> Result<f64> {
            let first = wright_bessel((alpha + 1.0) / theta, 1.0 / theta, x * u)?;
            let second = wright_bessel(alpha + 1.0, theta, (y * u).powf(theta))?;
            Ok((x * u).powf(alpha) * first * second)
        };
        match eval() {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let (value, err) = integrate_unit_dyadic(&integrand, 1e-10);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let scaled = theta * value;
    if err * theta > 1e-7 * scaled.abs().max(1e-12) {
        return Err(Error::NonConvergence {
            what: "wright-bessel kernel quadrature",
            budget: 2048,
        });
    }
    Ok(scaled)
}

/// Even/odd hard-edge kernel of the |x|^α-weighted θ-deformed ensemble:
/// even part K^{((α−1)/2, θ)}(x², y²), odd part
/// sgn(xy) |x|^θ |y| K^{((α+θ)/2, θ)}(x², y²). θ must be an odd positive
/// integer for the two-sided interaction to stay a polynomial ensemble.
pub fn mb_hard_kernel(alpha: f64, theta: usize, x: f64, y: f64) -> Result<KernelValue> {
    if theta == 0 || theta % 2 == 0 {
        return Err(Error::Domain(format!(
            "two-sided kernel needs odd positive theta, got {theta}"
        )));
    }
    if x == 0.0 || y == 0.0 {
        return Err(Error::Domain(
            "hard-edge kernel arguments must be nonzero".into(),
        ));
    }
    let th = theta as f64;
    let even = mb_kernel_raw((alpha - 1.0) / 2.0, th, x * x, y * y)?;
    let odd_raw = mb_kernel_raw((alpha + th) / 2.0, th, x * x, y * y)?;
    let odd = (x * y).signum() * x.abs().powi(theta as i32) * y.abs() * odd_raw;
    Ok(KernelValue { even, odd })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hard_edge::meijer_kernel::{g_product_kernel, meijer_g_kernel};
    use crate::quad::gl_panel;
    use crate::special::gamma::lgamma_pos;
    use crate::EnsembleParams;

    /// J_n(w) for integer n by its power series (independent oracle).
    fn bessel_j(n: usize, w: f64) -> f64 {
        let half = 0.5 * w;
        let mut term = half.powi(n as i32) / lgamma_pos(n as f64 + 1.0).exp();
        let mut sum = term;
        for k in 1..200 {
            term *= -half * half / (k as f64 * (k as f64 + n as f64));
            sum += term;
            if term.abs() < 1e-18 * sum.abs().max(1e-30) {
                break;
            }
        }
        sum
    }

    #[test]
    fn unit_theta_raw_kernel_is_bessel_kernel() {
        // K^{(0,1)}(a,b) = ∫₀¹ J₀(2√(au)) J₀(2√(bu)) du and
        // K^{(1,1)}(a,b) = √(a/b) ∫₀¹ J₁(2√(au)) J₁(2√(bu)) du.
        for &(a, b) in &[(0.3_f64, 0.7_f64), (0.9, 0.2)] {
            let want0 = gl_panel(
                &|u: f64| bessel_j(0, 2.0 * (a * u).sqrt()) * bessel_j(0, 2.0 * (b * u).sqrt()),
                0.0,
                1.0,
                64,
            );
            let got0 = mb_kernel_raw(0.0, 1.0, a, b).unwrap();
            assert!(
                (got0 - want0).abs() < 1e-8 * want0.abs().max(1.0),
                "order 0 at ({a},{b}): {got0} vs {want0}"
            );
            let want1 = (a / b).sqrt()
                * gl_panel(
                    &|u: f64| {
                        bessel_j(1, 2.0 * (a * u).sqrt()) * bessel_j(1, 2.0 * (b * u).sqrt())
                    },
                    0.0,
                    1.0,
                    64,
                );
            let got1 = mb_kernel_raw(1.0, 1.0, a, b).unwrap();
            assert!(
                (got1 - want1).abs() < 1e-8 * want1.abs().max(1.0),
                "order 1 at ({a},{b}): {got1} vs {want1}"
            );
        }
    }

    #[test]
    fn integer_theta_identity_matches_meijer_kernel() {
        // For odd integer θ, collapsing the Meijer G-kernel's gamma
        // products with the multiplication theorem gives
        //   (x²/4^M)^{1/θ−1} K^{(α,θ)}(θ(x²/4^M)^{1/θ}, θ(y²/4^M)^{1/θ})
        //     = K_Meijer^θ(y²/4^M, x²/4^M),  θ = 2M+1,
        // with indices ν_m = (α+m−θ)/θ for m = 1..θ and ν₀ = 0.
        let (x, y) = (0.6_f64, 0.9_f64);
        let theta = 3.0;
        let big_x = x * x / 4.0;
        let big_y = y * y / 4.0;
        for &(alpha, nu_list) in &[
            (2.0, [0.0, 0.0, 1.0 / 3.0, 2.0 / 3.0]),
            (4.0, [0.0, 2.0 / 3.0, 1.0, 4.0 / 3.0]),
        ] {
            let lhs = big_x.powf(1.0 / theta - 1.0)
                * mb_kernel_raw(
                    alpha,
                    theta,
                    theta * big_x.powf(1.0 / theta),
                    theta * big_y.powf(1.0 / theta),
                )
                .unwrap();
            let rhs = meijer_g_kernel(3, &nu_list, big_y, big_x).unwrap();
            assert!(
                (lhs - rhs).abs() < 1e-5 * rhs.abs().max(1e-10),
                "alpha={alpha}: {lhs} vs {rhs}"
            );
        }
        // Frozen cross-implementation value for the second index list.
        let pinned = meijer_g_kernel(3, &[0.0, 2.0 / 3.0, 1.0, 4.0 / 3.0], big_y, big_x).unwrap();
        assert!(
            (pinned - 0.157_581_585_227_294_2).abs() < 1e-9,
            "{pinned}"
        );
    }

    #[test]
    fn unit_theta_chain_reproduces_sine_kernel() {
        // The depth-0 product ensemble is the α = 0, θ = 1 member of the
        // two-sided family; unwinding the variable map gives
        //   total(x, y) = |y|·even(y, x) + odd(y, x)/|y|.
        let params = EnsembleParams::new(vec![], 4).unwrap();
        for &(x, y) in &[(0.4_f64, 0.8_f64), (1.1, -0.6)] {
            let dressed = mb_hard_kernel(0.0, 1, y, x).unwrap();
            let chained = y.abs() * dressed.even + dressed.odd / y.abs();
            let want = g_product_kernel(&params, x, y).unwrap().total();
            let sine = (2.0 * (x - y)).sin() / (std::f64::consts::PI * (x - y));
            assert!(
                (chained - want).abs() < 1e-4 * want.abs().max(1e-6),
                "({x},{y}): {chained} vs {want}"
            );
            assert!((want - sine).abs() < 1e-8 * sine.abs().max(1.0));
        }
    }

    #[test]
    fn even_part_symmetric_under_sign_flip() {
        let plus = mb_hard_kernel(2.0, 3, 0.7, 1.2).unwrap();
        let minus = mb_hard_kernel(2.0, 3, -0.7, 1.2).unwrap();
        assert_eq!(plus.even, minus.even);
        assert_eq!(plus.odd, -minus.odd);
    }

    #[test]
    fn rejects_even_theta_and_zero_arguments() {
        assert!(mb_hard_kernel(1.0, 2, 0.5, 0.5).is_err());
        assert!(mb_hard_kernel(1.0, 1, 0.0, 0.5).is_err());
        assert!(mb_kernel_raw(1.0, 1.0, -0.3, 0.5).is_err());
    }
}
