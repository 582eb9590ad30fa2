//! Real-line quadrature building blocks shared across modules: cached
//! Gauss–Legendre rules, an adaptive panel integrator, a dyadic scheme for
//! integrable endpoint singularities on (0,1], and an exp-substitution
//! rule for smooth positive-half-line integrands.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

static GL_CACHE: LazyLock<Mutex<HashMap<usize, Arc<(Vec<f64>, Vec<f64>)>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Gauss–Legendre nodes and weights on [-1, 1], computed by Newton
/// iteration on the Legendre recurrence and memoized per order.
pub fn gauss_legendre(order: usize) -> Arc<(Vec<f64>, Vec<f64>)> {
    assert!(order >= 1, "Gauss-Legendre order must be >= 1");
    if let Some(hit) = GL_CACHE.lock().unwrap().get(&order) {
        return hit.clone();
    }
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and P_n'(x) via the three-term recurrence.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    let arc = Arc::new((nodes, weights));
    GL_CACHE.lock().unwrap().insert(order, arc.clone());
    arc
}

/// Single Gauss–Legendre panel of the given order over [a, b].
pub fn gl_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, order: usize) -> f64 {
    let rule = gauss_legendre(order);
    let (half, mid) = (0.5 * (b - a), 0.5 * (a + b));
    let mut acc = 0.0;
    for (x, w) in rule.0.iter().zip(rule.1.iter()) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

fn adapt_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol_abs: f64,
    depth: usize,
    err_acc: &mut f64,
) -> f64 {
    let coarse = gl_panel(f, a, b, 16);
    let fine = gl_panel(f, a, b, 32);
    let err = (fine - coarse).abs();
    if err <= tol_abs || depth >= 48 {
        *err_acc += err;
        return fine;
    }
    let mid = 0.5 * (a + b);
    adapt_rec(f, a, mid, 0.5 * tol_abs, depth + 1, err_acc)
        + adapt_rec(f, mid, b, 0.5 * tol_abs, depth + 1, err_acc)
}

/// Adaptive bisection integrator on [a, b] with embedded GL16/GL32 error
/// control. Returns (value, accumulated error estimate).
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> (f64, f64) {
    if a == b {
        return (0.0, 0.0);
    }
    let scale = gl_panel(&f, a, b, 64).abs().max(1e-300);
    let tol_abs = rel_tol * scale;
    let mut err = 0.0;
    let val = adapt_rec(&f, a, b, tol_abs, 0, &mut err);
    (val, err)
}

/// ∫₀¹ f with a possible integrable singularity at 0: dyadic panels
/// [2^{-j-1}, 2^{-j}], each handled adaptively, descending until a panel's
/// contribution falls below the tolerance times the running total.
pub fn integrate_unit_dyadic<F: Fn(f64) -> f64>(f: F, rel_tol: f64) -> (f64, f64) {
    let mut total = 0.0;
    let mut err_total = 0.0;
    let mut hi = 1.0;
    for j in 0..2048 {
        let lo = 0.5 * hi;
        let (v, e) = integrate_adaptive(&f, lo, hi, rel_tol * 0.1);
        total += v;
        err_total += e;
        if j > 8 && v.abs() < rel_tol * total.abs().max(1e-300) {
            break;
        }
        hi = lo;
    }
    (total, err_total)
}

/// ∫₀^∞ f(y) dy by the substitution y = eᵗ, with automatic detection of
/// the significant t-range. Intended for smooth, non-oscillatory
/// integrands decaying at both ends of the log axis (e.g. products of
/// exponential cutoffs).
pub fn integrate_half_line_exp<F: Fn(f64) -> f64>(f: F, rel_tol: f64) -> (f64, f64) {
    let g = |t: f64| {
        let y = t.exp();
        let v = f(y) * y;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    // Coarse scan for the live window on the log axis (step 0.4 is enough
    // to catch any window the adaptive pass can then resolve).
    let probes: Vec<f64> = (-155..=155).map(|k| k as f64 * 0.4).collect();
    let vals: Vec<f64> = probes.iter().map(|&t| g(t).abs()).collect();
    let peak = vals.iter().cloned().fold(0.0_f64, f64::max);
    if peak == 0.0 {
        return (0.0, 0.0);
    }
    let thresh = peak * 1e-18;
    let first = vals.iter().position(|&v| v > thresh).unwrap();
    let last = vals.iter().rposition(|&v| v > thresh).unwrap();
    let lo = probes[first] - 0.8;
    let hi = probes[last] + 0.8;
    integrate_adaptive(g, lo, hi, rel_tol)
}
