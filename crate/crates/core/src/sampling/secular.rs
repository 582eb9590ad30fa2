//! Matrix-free sampler: the additive rank-one deformation chain. Step p
//! deforms the previous spectrum by a ±rank-one update whose eigenvalues
//! are the p roots of the secular equation
//!
//! ```text
//! 1 = a_p ( q₀/λ + Σ_j q_j/(λ − λ_j) ),   q₀ ~ Γ[N−p+1, 1], q_j ~ Exp(1).
//! ```
//!
//! The rational function is strictly decreasing between consecutive poles
//! {0} ∪ prev, so every root lives in a guaranteed bracket: one interior
//! root per gap plus one exterior root on the sign side of a_p.

use rand_distr::{Distribution, Exp, Gamma};

use super::rng::rng_from_seed;
use super::{SignedDiagonal, SpectrumSample};
use crate::{Error, Result};

/// g(λ) = q₀/λ + Σ q_j/(λ−λ_j) minus the level 1/a_p.
fn secular_fn(lambda: f64, prev: &[f64], q: &[f64], q0: f64, level: f64) -> f64 {
    let mut v = q0 / lambda - level;
    for (&lj, &qj) in prev.iter().zip(q.iter()) {
        v += qj / (lambda - lj);
    }
    v
}

/// Bisection on an open interval (lo, hi) where the secular function
/// decreases from +∞ to −∞ (interior gaps) or where the callers have
/// established the same sign pattern at the ends. No endpoint evaluation
/// is needed: f(mid) > 0 moves the left edge, otherwise the right edge.
fn bisect(prev: &[f64], q: &[f64], q0: f64, level: f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if secular_fn(mid, prev, q, q0, level) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All p roots of the secular equation, in ascending order. `prev` holds
/// the p−1 previous eigenvalues (strictly ascending, nonzero), `q` their
/// positive weights, `q0` the weight of the pole at zero, `a_p` the
/// deformation coefficient.
pub fn secular_roots(prev: &[f64], a_p: f64, q: &[f64], q0: f64) -> Result<Vec<f64>> {
    if a_p == 0.0 || !a_p.is_finite() {
        return Err(Error::Domain(format!("deformation coefficient must be nonzero, got {a_p}")));
    }
    if !(q0 > 0.0) {
        return Err(Error::Domain(format!("zero-pole weight must be positive, got {q0}")));
    }
    if q.len() != prev.len() {
        return Err(Error::Domain(format!(
            "need one weight per previous eigenvalue: {} vs {}",
            q.len(),
            prev.len()
        )));
    }
    if q.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::Domain("weights must be positive".into()));
    }
    for w in prev.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::Ordering(format!(
                "previous eigenvalues must be strictly ascending: {} !< {}",
                w[0], w[1]
            )));
        }
    }
    if prev.iter().any(|&x| x == 0.0) {
        return Err(Error::Domain("previous eigenvalues must be nonzero".into()));
    }

    // Poles: {0} ∪ prev, ascending.
    let mut poles: Vec<f64> = prev.to_vec();
    let insert_at = poles.partition_point(|&x| x < 0.0);
    poles.insert(insert_at, 0.0);

    let level = 1.0 / a_p;
    let mut roots = Vec::with_capacity(poles.len());

    // Interior roots: one per gap between consecutive poles.
    for w in poles.windows(2) {
        roots.push(bisect(prev, q, q0, level, w[0], w[1]));
    }

    // Exterior root on the sign side of a_p: expand a bracket until the
    // secular function crosses the level.
    let total_weight: f64 = q0 + q.iter().sum::<f64>();
    let scale = poles
        .iter()
        .fold(a_p.abs() * total_weight, |acc, &x| acc.max(x.abs()))
        .max(1e-12);
    if a_p > 0.0 {
        let anchor = *poles.last().expect("at least the zero pole");
        let mut step = scale;
        let mut hi = anchor + step;
        let mut guard = 0;
        while secular_fn(hi, prev, q, q0, level) > 0.0 {
            step *= 2.0;
            hi = anchor + step;
            guard += 1;
            if guard > 600 {
                return Err(Error::Bracketing(
                    "exterior root bracket failed to close on the right".into(),
                ));
            }
        }
        roots.push(bisect(prev, q, q0, level, anchor, hi));
    } else {
        let anchor = poles[0];
        let mut step = scale;
        let mut lo = anchor - step;
        let mut guard = 0;
        // Left of all poles the function rises from −1/a_p > 0 at −∞ to
        // −∞ at the first pole; expand until the value is positive.
        while secular_fn(lo, prev, q, q0, level) < 0.0 {
            step *= 2.0;
            lo = anchor - step;
            guard += 1;
            if guard > 600 {
                return Err(Error::Bracketing(
                    "exterior root bracket failed to close on the left".into(),
                ));
            }
        }
        let root = bisect(prev, q, q0, level, lo, anchor);
        roots.insert(0, root);
    }

    roots.sort_by(|a, b| a.partial_cmp(b).expect("non-finite root"));
    Ok(roots)
}

/// Draw the full deformation chain X^(1), …, X^(n) for diagonal `a`,
/// ambient dimension `big_n`: a matrix-free sampler whose final element is
/// distributed like the nonzero spectrum of G†AG.
pub fn rank_one_chain(
    a: &SignedDiagonal,
    big_n: usize,
    seed: u64,
) -> Result<Vec<SpectrumSample>> {
    let n = a.dim();
    if n > big_n {
        return Err(Error::Domain(format!(
            "deformation chain needs n ≤ N, got n={n}, N={big_n}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut prev: Vec<f64> = Vec::new();
    let mut out = Vec::with_capacity(n);
    for p in 1..=n {
        let shape = (big_n - p + 1) as f64;
        let q0 = Gamma::new(shape, 1.0)
            .expect("valid gamma parameters")
            .sample(&mut rng);
        let exp = Exp::new(1.0).expect("valid exponential rate");
        let q: Vec<f64> = (0..p - 1).map(|_| exp.sample(&mut rng)).collect();
        let roots = secular_roots(&prev, a.entries()[p - 1], &q, q0)?;
        prev = roots.clone();
        out.push(SpectrumSample {
            eigenvalues: roots,
            zero_multiplicity: big_n - p,
            seed,
            sampler_id: "rank-one-chain".into(),
        });
    }
    Ok(out)
}

/// Convenience draw of several independent chains' final spectra.
pub fn chain_final_spectra(
    a: &SignedDiagonal,
    big_n: usize,
    seed: u64,
    repeats: usize,
) -> Result<Vec<SpectrumSample>> {
    (0..repeats)
        .map(|k| {
            let chain = rank_one_chain(a, big_n, super::derive_seed(seed, k as u64))?;
            Ok(chain.into_iter().last().expect("n ≥ 1 steps"))
        })
        .collect()
}
