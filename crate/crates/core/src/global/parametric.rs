//! Trigonometric parametrisation of the global density of the scaled
//! nonzero spectrum. With p = 2M+1 and q = 2M+2, the curve
//!
//! ```text
//! x₀²(φ) = sin^q(qφ) / (sin φ · sin^p(pφ)),          φ ∈ (0, π/q),
//! ρ̃(x₀(φ)) = (1/π) √(sin φ / sin(pφ)) · (sin(pφ)/sin(qφ))^M · sin φ,
//! ```
//!
//! sweeps the positive half of the support: x₀ decreases monotonically
//! from the edge (φ → 0) to the origin (φ → π/q). The density is even in
//! x₀, vanishes like a square root at the edge, and blows up like
//! (1/π) sin(π/q) |x₀|^{−M/(M+1)} at the origin for M ≥ 1.

use std::f64::consts::PI;

use crate::quad::integrate_adaptive;
use crate::{Error, Result};

/// Largest |x₀| on the curve: the φ → 0 limit (q^q/p^p)^{1/2}, which is
/// also a stationary point of x₀²(φ).
pub fn support_edge(m: usize) -> f64 {
    let p = (2 * m + 1) as f64;
    let q = (2 * m + 2) as f64;
    let ratio = q.powi(q as i32) / p.powi(p as i32);
    if ratio.is_finite() {
        ratio.sqrt()
    } else {
        (0.5 * (q * q.ln() - p * p.ln())).exp()
    }
}

/// x₀²(φ) on (0, π/q).
pub(crate) fn x0_squared(m: usize, phi: f64) -> f64 {
    let p = 2 * m + 1;
    let q = 2 * m + 2;
    let sq = (q as f64 * phi).sin();
    let sp = (p as f64 * phi).sin();
    sq.powi(q as i32) / (phi.sin() * sp.powi(p as i32))
}

/// ρ̃ at the point x₀(φ).
pub(crate) fn rho_of_phi(m: usize, phi: f64) -> f64 {
    let p = (2 * m + 1) as f64;
    let q = (2 * m + 2) as f64;
    let s1 = phi.sin();
    let sp = (p * phi).sin();
    let sq = (q * phi).sin();
    (1.0 / PI) * (s1 / sp).sqrt() * (sp / sq).powi(m as i32) * s1
}

/// Logarithmic derivative d(ln x₀²)/dφ = q² cot(qφ) − cot φ − p² cot(pφ).
///
/// The three cotangents each carry a 1/φ pole whose residues cancel
/// exactly (q − 1 − p = 0); evaluated naively near φ = 0 the cancellation
/// destroys all significant digits, so for qφ small the combination is
/// summed through the Laurent series of cot with the pole removed
/// analytically.
fn log_derivative(m: usize, phi: f64) -> f64 {
    let p = (2 * m + 1) as f64;
    let q = (2 * m + 2) as f64;
    if q * phi <= 0.35 {
        // cot u = 1/u − u/3 − u³/45 − 2u⁵/945 − u⁷/4725 − 2u⁹/93555 − …;
        // in k² cot(kφ) − (pole) the coefficient of φ^{2j−1} is
        // −c_j (q^{2j+1} − 1 − p^{2j+1}).
        const C: [f64; 7] = [
            1.0 / 3.0,
            1.0 / 45.0,
            2.0 / 945.0,
            1.0 / 4725.0,
            2.0 / 93555.0,
            1382.0 / 638_512_875.0,
            4.0 / 18_243_225.0,
        ];
        let mut sum = 0.0;
        let phi2 = phi * phi;
        let mut phi_pow = phi;
        for (j, c) in C.iter().enumerate() {
            let e = (2 * j + 3) as i32;
            sum -= c * (q.powi(e) - 1.0 - p.powi(e)) * phi_pow;
            phi_pow *= phi2;
        }
        sum
    } else {
        let cot = |u: f64| u.cos() / u.sin();
        q * q * cot(q * phi) - cot(phi) - p * p * cot(p * phi)
    }
}

/// −dx₀/dφ (positive on the whole interval: x₀ decreases with φ).
pub(crate) fn neg_dx0_dphi(m: usize, phi: f64) -> f64 {
    let x0 = x0_squared(m, phi).sqrt();
    -0.5 * x0 * log_derivative(m, phi)
}

/// The global density ρ̃ at a point, by bracketed bisection of the
/// monotone relation x₀²(φ). Points outside the support (|x0| ≥ edge)
/// return 0; x0 = 0 is rejected (the density diverges there for M ≥ 1).
pub fn global_density_parametric(m: usize, x0: f64) -> Result<f64> {
    if x0 == 0.0 {
        return Err(Error::Domain(
            "parametric global density is undefined at x = 0 (origin singularity)".into(),
        ));
    }
    if !x0.is_finite() {
        return Err(Error::NonFinite("global density argument".into()));
    }
    let edge = support_edge(m);
    let target = x0 * x0;
    if target >= edge * edge {
        return Ok(0.0);
    }
    let phi_star = PI / (2 * m + 2) as f64;
    let mut lo = phi_star * 1e-9;
    let mut hi = phi_star * (1.0 - 1e-12);
    // x₀²(φ) decreases from edge² to 0; clamp queries that fall outside
    // the resolvable bracket to the adjacent endpoint (edge-adjacent
    // densities are ~0, origin-adjacent ones follow the blow-up).
    if x0_squared(m, lo) <= target {
        return Ok(rho_of_phi(m, lo));
    }
    if x0_squared(m, hi) >= target {
        return Ok(rho_of_phi(m, hi));
    }
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        if x0_squared(m, mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(rho_of_phi(m, 0.5 * (lo + hi)))
}

/// ∫₀^{π/q} w(x₀(φ)) ρ̃(φ) (−dx₀/dφ) dφ — the positive-half integral of
/// w(x)ρ̃(x) dx pulled back to the φ variable, where the origin blow-up
/// becomes a bounded integrand.
pub(crate) fn phi_domain_integral<F: Fn(f64) -> f64>(m: usize, weight: F, rel_tol: f64) -> f64 {
    let phi_star = PI / (2 * m + 2) as f64;
    let f = |phi: f64| {
        let x0 = x0_squared(m, phi).sqrt();
        weight(x0) * rho_of_phi(m, phi) * neg_dx0_dphi(m, phi)
    };
    integrate_adaptive(f, 0.0, phi_star, rel_tol).0
}
