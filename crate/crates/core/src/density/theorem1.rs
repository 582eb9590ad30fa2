//! Exact joint eigenvalue density of the signed sandwich `X = G† A G`.
//!
//! For a fixed invertible real diagonal `A = diag(a₁ < … < a_n)` with `n₀`
//! negative entries and an `N × n` standard complex Ginibre `G` (`N ≥ n`),
//! the `n` eigenvalues of `G† A G` are real, inherit the signature of `A`
//! (`n₀` negative, `n − n₀` positive), and have joint density
//!
//! ```text
//! P(x) = ∏_{l=1}^n [ (x_l/a_l)^{N−n} / (|a_l| (N−l)!) ]
//!        · ∏_{j<k} (x_k−x_j)/(a_k−a_j)
//!        · det[e^{−x_i/a_j}]_{i,j ≤ n₀} · det[e^{−x_i/a_j}]_{i,j > n₀}
//! ```
//!
//! on the ordered sector x₁ < … < x_{n₀} < 0 < x_{n₀+1} < … < x_n, and 0 on
//! every other sign pattern.

use nalgebra::DMatrix;

use crate::sampling::SignedDiagonal;
use crate::special::gamma::lgamma_pos;
use crate::{Error, Result};

/// Joint PDF of the ordered eigenvalues of `G† A G` at `points`
/// (strictly ascending; any sign pattern other than that of `A` gives 0).
///
/// `big_n` is the number of rows of `G`; `big_n ≥ n` is required.
pub fn theorem1_pdf(diag: &SignedDiagonal, points: &[f64], big_n: usize) -> Result<f64> {
    let a = diag.entries();
    let n = a.len();
    if points.len() != n {
        return Err(Error::Domain(format!(
            "expected {n} points to match the diagonal, got {}",
            points.len()
        )));
    }
    if big_n < n {
        return Err(Error::Domain(format!(
            "need at least as many Ginibre rows as diagonal entries ({big_n} < {n})"
        )));
    }
    for &x in points {
        if !x.is_finite() {
            return Err(Error::Domain(format!("non-finite point {x}")));
        }
    }
    for w in points.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::Ordering(format!(
                "points must be strictly ascending, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    let n0 = diag.negative_count();
    let negatives = points.iter().filter(|&&x| x < 0.0).count();
    if negatives != n0 || points.iter().any(|&x| x == 0.0) {
        // The density is supported only on the sign sector of the diagonal.
        return Ok(0.0);
    }

    // Accumulate the magnitude in log space; the sign comes only from the
    // two exponential determinants (every other factor is positive on the
    // supported sector).
    let mut ln_mag = 0.0_f64;
    let mut sign = 1.0_f64;
    let power = (big_n - n) as f64;
    for (l, (&xl, &al)) in points.iter().zip(a).enumerate() {
        ln_mag -= al.abs().ln();
        if power > 0.0 {
            ln_mag += power * (xl / al).ln();
        }
        ln_mag -= lgamma_pos((big_n - l) as f64);
    }
    for (i, &xi) in points.iter().enumerate() {
        for k in (i + 1)..n {
            ln_mag += (points[k] - xi).ln() - (a[k] - a[i]).ln();
        }
    }
    for (lo, hi) in [(0, n0), (n0, n)] {
        if lo == hi {
            continue;
        }
        let (block_sign, block_ln) = exp_block_logdet(&points[lo..hi], &a[lo..hi]);
        if block_sign == 0.0 {
            return Ok(0.0);
        }
        sign *= block_sign;
        ln_mag += block_ln;
    }
    Ok(sign * ln_mag.exp())
}

/// Sign and log-magnitude of det[e^{−x_i/a_j}], with the largest exponent of
/// each row factored out so the LU factorisation only sees entries in [−1, 1].
fn exp_block_logdet(x: &[f64], a: &[f64]) -> (f64, f64) {
    let m = x.len();
    let mut shift = 0.0;
    let mut mat = DMatrix::zeros(m, m);
    for i in 0..m {
        let exponents: Vec<f64> = a.iter().map(|&aj| -x[i] / aj).collect();
        let row_max = exponents.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        shift += row_max;
        for (j, &e) in exponents.iter().enumerate() {
            mat[(i, j)] = (e - row_max).exp();
        }
    }
    let det = mat.lu().determinant();
    if det == 0.0 {
        (0.0, f64::NEG_INFINITY)
    } else {
        (det.signum(), det.abs().ln() + shift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate_adaptive;

    fn diag(entries: &[f64]) -> SignedDiagonal {
        SignedDiagonal::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn scalar_exponential_laws() {
        // n = N = 1, a = (2): x/2 is Exp(1), so P(x) = e^{−x/2}/2 on x > 0.
        let d = diag(&[2.0]);
        let p = theorem1_pdf(&d, &[1.0], 1).unwrap();
        let want = (-0.5_f64).exp() / 2.0;
        assert!((p - want).abs() < 1e-14 * want);
        assert_eq!(theorem1_pdf(&d, &[-1.0], 1).unwrap(), 0.0);

        // Negative scale flips the support.
        let d = diag(&[-1.0]);
        let p = theorem1_pdf(&d, &[-0.5], 1).unwrap();
        let want = (-0.5_f64).exp();
        assert!((p - want).abs() < 1e-14 * want);
        assert_eq!(theorem1_pdf(&d, &[0.5], 1).unwrap(), 0.0);
    }

    #[test]
    fn rectangular_scalar_gamma_law() {
        // n = 1, N = 2, a = (3): P(x) = x e^{−x/3} / 9 on x > 0 (Gamma(2, 3)).
        let d = diag(&[3.0]);
        let p = theorem1_pdf(&d, &[2.0], 2).unwrap();
        let want = 2.0 * (-2.0_f64 / 3.0).exp() / 9.0;
        assert!((p - want).abs() < 1e-13 * want);
        let (total, _) =
            integrate_adaptive(|x| theorem1_pdf(&d, &[x], 2).unwrap(), 1e-12, 120.0, 1e-10);
        assert!((total - 1.0).abs() < 1e-8, "normalization {total}");
    }

    #[test]
    fn mixed_signature_closed_form() {
        // n = N = 2, a = (−1, 2): the density factorises as
        // (x₂−x₁) e^{x₁} e^{−x₂/2} / 6 on x₁ < 0 < x₂.
        let d = diag(&[-1.0, 2.0]);
        let cases = [(-0.7, 1.3), (-2.0, 0.1), (-0.05, 4.0)];
        for (x1, x2) in cases {
            let got = theorem1_pdf(&d, &[x1, x2], 2).unwrap();
            let want = (x2 - x1) * x1.exp() * (-x2 / 2.0).exp() / 6.0;
            assert!(
                (got - want).abs() < 1e-12 * want,
                "at ({x1},{x2}): got {got}, want {want}"
            );
        }
        // Wrong sign sector vanishes; unordered input is rejected.
        assert_eq!(theorem1_pdf(&d, &[0.5, 1.0], 2).unwrap(), 0.0);
        assert_eq!(theorem1_pdf(&d, &[-1.0, -0.5], 2).unwrap(), 0.0);
        assert!(matches!(
            theorem1_pdf(&d, &[1.0, -0.5], 2),
            Err(Error::Ordering(_))
        ));
    }

    #[test]
    fn mixed_signature_normalization() {
        let d = diag(&[-1.0, 2.0]);
        let inner = |x2: f64| -> f64 {
            integrate_adaptive(
                |x1| theorem1_pdf(&d, &[x1, x2], 2).unwrap(),
                -60.0,
                -1e-12,
                1e-9,
            )
            .0
        };
        let (total, _) = integrate_adaptive(inner, 1e-12, 120.0, 1e-8);
        assert!((total - 1.0).abs() < 1e-7, "normalization {total}");
    }

    #[test]
    fn log_space_route_matches_direct_formula() {
        // Independent direct (non-log-space) evaluation of the same density
        // at moderate arguments, n₀ = 1, N > n.
        let a = [-1.5, 0.5, 2.0];
        let d = diag(&a);
        let x = [-0.8, 0.3, 1.7];
        let big_n = 4;
        let got = theorem1_pdf(&d, &x, big_n).unwrap();

        let mut want = 1.0;
        let factorials = [6.0, 2.0, 1.0]; // (N−1)!, (N−2)!, (N−3)! for N = 4
        for l in 0..3 {
            want *= (x[l] / a[l]).powi((big_n - 3) as i32) / (a[l].abs() * factorials[l]);
        }
        for i in 0..3 {
            for k in (i + 1)..3 {
                want *= (x[k] - x[i]) / (a[k] - a[i]);
            }
        }
        want *= (-x[0] / a[0]).exp();
        let e = |i: usize, j: usize| (-x[i] / a[j]).exp();
        want *= e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1);

        assert!(
            (got - want).abs() < 1e-12 * want.abs(),
            "got {got}, want {want}"
        );
        assert!(got > 0.0);
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        let d = diag(&[-1.0, 2.0]);
        assert!(matches!(
            theorem1_pdf(&d, &[-0.5], 2),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            theorem1_pdf(&d, &[-0.5, 0.5], 1),
            Err(Error::Domain(_))
        ));
        assert_eq!(theorem1_pdf(&d, &[-0.5, 0.0], 2).unwrap(), 0.0);
    }
}
