//! Algebraic Stieltjes-transform route to the global density. Writing
//! w = zG̃(z), the transform of the scaled nonzero spectrum satisfies
//!
//! ```text
//! w^{2M+2} − z² w + z² = 0,        w → 1 as |z| → ∞,
//! ```
//!
//! and the squared-spectrum (Fuss–Catalan, parameter p) transform
//! w = zG_p(z) satisfies w^{p+1} − zw + z = 0 with the same branch
//! condition. The physical branch is picked out at |z| = 10·edge (where
//! the root cluster separates cleanly around w ≈ 1) and continued to the
//! query point z = x + iε by adaptive homotopy: all roots are re-solved
//! at each step with warm starts, and a step is accepted only when the
//! tracked root moved by less than 10% of the smallest root gap, so the
//! branch cannot be confused with a neighbour even while passing the
//! square-root branch point above the support edge. The density is then
//! −Im(w/z)/π.

use num_complex::Complex64;

use super::parametric::support_edge;
use crate::{Error, Result};

const EPS_IM: f64 = 1e-8;

/// Horner evaluation of the monic polynomial w^d + Σ c_i w^i.
fn eval_monic(low: &[Complex64], w: Complex64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for c in low.iter().rev() {
        acc = acc * w + c;
    }
    acc
}

/// All roots of a monic polynomial by Durand–Kerner iteration, optionally
/// warm-started (which preserves root indexing across nearby polynomials).
fn durand_kerner(low: &[Complex64], seed: Option<&[Complex64]>) -> Result<Vec<Complex64>> {
    let d = low.len();
    let mut w: Vec<Complex64> = match seed {
        Some(s) => s.to_vec(),
        None => {
            // Cauchy bound keeps the start circle outside every root.
            let r = 1.0 + low.iter().map(|c| c.norm()).fold(0.0, f64::max);
            (0..d)
                .map(|i| {
                    let angle = 2.0 * std::f64::consts::PI * (i as f64 + 0.25) / d as f64;
                    r * Complex64::new(angle.cos(), angle.sin())
                })
                .collect()
        }
    };
    // Backward-error magnitude |w|^d + Σ|c_i||w|^i: a residual at the
    // scale eps·mag is evaluation noise, and the corresponding iterate is
    // a root of a polynomial within rounding of this one. Near-collided
    // root pairs (small DK denominators) dither at steps far above any
    // fixed step tolerance, so residual acceptance is the primary
    // criterion.
    let residual_small = |low: &[Complex64], w: Complex64| {
        let aw = w.norm();
        let mut mag = 1.0_f64;
        for c in low.iter().rev() {
            mag = mag * aw + c.norm();
        }
        eval_monic(low, w).norm() <= 32.0 * f64::EPSILON * mag
    };
    for _ in 0..600 {
        if w.iter().all(|&wi| residual_small(low, wi)) {
            return Ok(w);
        }
        let mut max_step = 0.0_f64;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if j != i {
                    denom *= w[i] - w[j];
                }
            }
            if denom == Complex64::ZERO {
                // Two iterates collided exactly; jitter one off.
                let nudge = Complex64::new(1e-8, 1e-8) * (1.0 + w[i].norm());
                w[i] += nudge;
                continue;
            }
            let step = eval_monic(low, w[i]) / denom;
            w[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + w[i].norm()));
        }
        if max_step < 1e-14 {
            return Ok(w);
        }
    }
    Err(Error::NonConvergence {
        what: "Durand-Kerner root iteration",
        budget: 600,
    })
}

fn min_pairwise_gap(roots: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            gap = gap.min((roots[i] - roots[j]).norm());
        }
    }
    gap
}

/// Continue the w ≈ 1 branch of the family P_z(w) (monic, low coefficients
/// given by `coeffs`) from the real anchor `start_re` + iε to `z_target`.
fn branch_root<C: Fn(Complex64) -> Vec<Complex64>>(
    coeffs: C,
    z_target: Complex64,
    start_re: f64,
) -> Result<Complex64> {
    let z_start = Complex64::new(start_re, z_target.im);
    let mut roots = durand_kerner(&coeffs(z_start), None)?;
    let mut tracked = 0;
    let mut best = f64::INFINITY;
    for (i, w) in roots.iter().enumerate() {
        let dist = (w - Complex64::new(1.0, 0.0)).norm();
        if dist < best {
            best = dist;
            tracked = i;
        }
    }
    let mut t = 0.0_f64;
    let mut dt = 0.05_f64;
    let mut guard = 0usize;
    while t < 1.0 {
        guard += 1;
        if guard > 500_000 {
            return Err(Error::NonConvergence {
                what: "stieltjes homotopy step budget",
                budget: 500_000,
            });
        }
        let t_next = (t + dt).min(1.0);
        let z = z_start + (z_target - z_start) * t_next;
        let new_roots = durand_kerner(&coeffs(z), Some(&roots))?;
        let moved = (new_roots[tracked] - roots[tracked]).norm();
        let gap = min_pairwise_gap(&roots);
        if !moved.is_finite() || !gap.is_finite() {
            return Err(Error::NonFinite("stieltjes homotopy root".into()));
        }
        if moved < 0.1 * gap {
            roots = new_roots;
            t = t_next;
            dt = (dt * 1.6).min(0.1);
        } else {
            dt *= 0.5;
            if dt < 1e-12 {
                return Err(Error::BranchCollision { z });
            }
        }
    }
    Ok(roots[tracked])
}

/// Global density of the scaled nonzero spectrum via the algebraic
/// equation w^{2M+2} − z²w + z² = 0 at z = x + iε.
pub fn stieltjes_density(m: usize, x: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::Domain(
            "stieltjes global density is undefined at x = 0".into(),
        ));
    }
    if !x.is_finite() {
        return Err(Error::NonFinite("stieltjes density argument".into()));
    }
    let degree = 2 * m + 2;
    let coeffs = |z: Complex64| {
        let z2 = z * z;
        let mut low = vec![Complex64::ZERO; degree];
        low[0] = z2;
        low[1] = -z2;
        low
    };
    let start = x.signum() * 10.0 * support_edge(m);
    let run = |eps: f64| -> Result<f64> {
        let z = Complex64::new(x, eps);
        let w = branch_root(coeffs, z, start)?;
        Ok(-(w / z).im / std::f64::consts::PI)
    };
    let rho = match run(EPS_IM) {
        Ok(v) => v,
        Err(Error::BranchCollision { .. }) => {
            // Too close to a branch point at machine-scale ε: back off and
            // extrapolate ε → 0 (the density is linear in ε to first order).
            let r1 = run(1e-5)?;
            let r2 = run(2e-5)?;
            2.0 * r1 - r2
        }
        Err(e) => return Err(e),
    };
    Ok(rho.max(0.0))
}

/// Density of the Fuss–Catalan law with parameter p (the squared-spectrum
/// limit law), via w^{p+1} − zw + z = 0 at z = x + iε; support is
/// (0, (p+1)^{p+1}/p^p].
pub fn fuss_catalan_density(p: usize, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::Domain(
            "Fuss-Catalan density is supported on positive reals".into(),
        ));
    }
    if !x.is_finite() {
        return Err(Error::NonFinite("Fuss-Catalan density argument".into()));
    }
    let degree = p + 1;
    let coeffs = |z: Complex64| {
        let mut low = vec![Complex64::ZERO; degree];
        low[0] = z;
        low[1] = -z;
        low
    };
    let pf = p as f64;
    let edge = (pf + 1.0).powi(p as i32 + 1) / pf.powi(p as i32);
    let run = |eps: f64| -> Result<f64> {
        let z = Complex64::new(x, eps);
        let w = branch_root(coeffs, z, 10.0 * edge)?;
        Ok(-(w / z).im / std::f64::consts::PI)
    };
    let rho = match run(EPS_IM) {
        Ok(v) => v,
        Err(Error::BranchCollision { .. }) => {
            let r1 = run(1e-5)?;
            let r2 = run(2e-5)?;
            2.0 * r1 - r2
        }
        Err(e) => return Err(e),
    };
    Ok(rho.max(0.0))
}
