//! Small statistical helpers used by the verification suites: empirical
//! CDF comparisons (Kolmogorov–Smirnov distances) and moment summaries.

/// Sup-distance between the empirical CDF of `samples` and a reference CDF.
/// The sample slice is sorted in place.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &mut [f64], cdf: F) -> f64 {
    assert!(!samples.is_empty(), "KS statistic needs samples");
    samples.sort_by(|a, b| a.partial_cmp(b).expect("non-finite sample"));
    let n = samples.len() as f64;
    let mut sup: f64 = 0.0;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x).clamp(0.0, 1.0);
        let lo = i as f64 / n;
        let hi = (i + 1) as f64 / n;
        sup = sup.max((f - lo).abs()).max((hi - f).abs());
    }
    sup
}

/// Two-sample Kolmogorov–Smirnov distance. Both slices are sorted in place.
pub fn ks_two_sample(a: &mut [f64], b: &mut [f64]) -> f64 {
    assert!(!a.is_empty() && !b.is_empty(), "KS distance needs samples");
    a.sort_by(|x, y| x.partial_cmp(y).expect("non-finite sample"));
    b.sort_by(|x, y| x.partial_cmp(y).expect("non-finite sample"));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut sup: f64 = 0.0;
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            i += 1;
        } else {
            j += 1;
        }
        sup = sup.max((i as f64 / na - j as f64 / nb).abs());
    }
    sup
}

/// Sample mean and standard error of the mean.
pub fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    assert!(xs.len() > 1, "need at least two observations");
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ks_of_exact_uniform_grid() {
        // Points at (i+1/2)/n have KS distance 1/(2n) against U(0,1).
        let n = 50;
        let mut xs: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let d = ks_statistic(&mut xs, |x| x);
        assert!((d - 0.01).abs() < 1e-12, "d={d}");
    }

    #[test]
    fn ks_detects_shift() {
        let mut xs: Vec<f64> = (0..100).map(|i| (i as f64 + 0.5) / 100.0 * 0.5).collect();
        let d = ks_statistic(&mut xs, |x| x);
        assert!(d > 0.45, "d={d}");
    }

    #[test]
    fn two_sample_identical_is_small() {
        let mut a: Vec<f64> = (0..64).map(|i| i as f64).collect();
        let mut b = a.clone();
        let d = ks_two_sample(&mut a, &mut b);
        assert!(d <= 1.0 / 64.0 + 1e-12, "d={d}");
    }

    #[test]
    fn mean_and_stderr_basic() {
        let xs = [1.0, 3.0, 5.0, 7.0];
        let (m, se) = mean_and_stderr(&xs);
        assert!((m - 4.0).abs() < 1e-15);
        // Sample variance 20/3; SE = sqrt(20/12).
        assert!((se - (20.0_f64 / 12.0).sqrt()).abs() < 1e-15);
    }
}
