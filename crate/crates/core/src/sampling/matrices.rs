//! Matrix samplers: Ginibre rectangles, GUE draws with density
//! ∝ exp(−Tr H²), the Hermitised product W = G_M†⋯G_1† H G_1⋯G_M, and the
//! signed sandwich X = G†AG reduced to its nonzero spectrum.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::rng::{derive_seed, rng_from_seed};
use super::{SignedDiagonal, SpectrumSample};
use crate::{EnsembleParams, Error, Result};

/// Relative modulus below which a product eigenvalue is the structural zero.
const ZERO_THRESHOLD: f64 = 1e-10;
/// Relative gap below which two nonzero eigenvalues count as a collision.
const COLLISION_THRESHOLD: f64 = 1e-12;
/// Resample budget for probability-zero collision events.
const MAX_ATTEMPTS: usize = 8;

fn draw_normal<R: Rng>(rng: &mut R, std: f64) -> f64 {
    let z: f64 = rng.sample(StandardNormal);
    std * z
}

/// rows×cols matrix of i.i.d. standard complex Gaussians: real and
/// imaginary parts independent N(0, 1/2), so E|g|² = 1.
pub fn sample_ginibre(rows: usize, cols: usize, seed: u64) -> DMatrix<Complex64> {
    assert!(rows >= 1 && cols >= 1, "Ginibre needs positive dimensions");
    let std = (0.5_f64).sqrt();
    let mut rng = rng_from_seed(seed);
    // Row-major fill order is part of the determinism contract.
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        let re = draw_normal(&mut rng, std);
        let im = draw_normal(&mut rng, std);
        data.push(Complex64::new(re, im));
    }
    DMatrix::from_row_iterator(rows, cols, data)
}

/// GUE draw with matrix density ∝ exp(−Tr H²): diagonal entries real
/// N(0, 1/2), off-diagonal complex with independent N(0, 1/4) parts
/// (E|h|² = 1/2).
pub fn sample_gue(dim: usize, seed: u64) -> DMatrix<Complex64> {
    assert!(dim >= 1, "GUE needs a positive dimension");
    let mut rng = rng_from_seed(seed);
    let mut h = DMatrix::from_element(dim, dim, Complex64::ZERO);
    for i in 0..dim {
        h[(i, i)] = Complex64::new(draw_normal(&mut rng, (0.5_f64).sqrt()), 0.0);
        for j in i + 1..dim {
            let v = Complex64::new(draw_normal(&mut rng, 0.5), draw_normal(&mut rng, 0.5));
            h[(i, j)] = v;
            h[(j, i)] = v.conj();
        }
    }
    h
}

/// The Hermitised product W_M = G_M†⋯G_1† H G_1⋯G_M, of dimension
/// ν_M + n, where factor G_m is (ν_{m−1}+n)×(ν_m+n) Ginibre and H is n×n
/// GUE. M = 0 returns the bare GUE draw.
pub fn build_hermitised_product(params: &EnsembleParams, seed: u64) -> DMatrix<Complex64> {
    let n = params.base_dim();
    let h = sample_gue(n, derive_seed(seed, 0));
    let mut chain = DMatrix::identity(n, n).map(|x: f64| Complex64::new(x, 0.0));
    let mut prev_dim = n;
    for (m, &nu_m) in params.nu().iter().enumerate() {
        let next_dim = nu_m + n;
        let g = sample_ginibre(prev_dim, next_dim, derive_seed(seed, 1 + m as u64));
        chain = chain * g;
        prev_dim = next_dim;
    }
    chain.adjoint() * h * chain
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(mat: &DMatrix<Complex64>) -> Vec<f64> {
    assert!(mat.is_square(), "eigenvalues need a square matrix");
    let se = mat.clone().symmetric_eigen();
    let mut eigs: Vec<f64> = se.eigenvalues.iter().cloned().collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).expect("non-finite eigenvalue"));
    eigs
}

/// Nonzero spectrum of X = G†AG for a fixed Ginibre draw G (n×N) and
/// diagonal A: computed as the spectrum of the n×n Hermitian matrix
/// P^{1/2} A P^{1/2}, P = GG†, which carries exactly the nonzero
/// eigenvalues of the N×N sandwich.
pub fn nonzero_sandwich_spectrum(a: &SignedDiagonal, g: &DMatrix<Complex64>) -> Vec<f64> {
    let n = a.dim();
    assert_eq!(g.nrows(), n, "G must have one row per diagonal entry");
    let p = g * g.adjoint();
    let se = p.symmetric_eigen();
    let sqrt_diag = DMatrix::from_diagonal(
        &se.eigenvalues
            .map(|x| Complex64::new(x.max(0.0).sqrt(), 0.0)),
    );
    let p_sqrt = &se.eigenvectors * sqrt_diag * se.eigenvectors.adjoint();
    let a_mat = DMatrix::from_diagonal(
        &nalgebra::DVector::from_iterator(
            n,
            a.entries().iter().map(|&x| Complex64::new(x, 0.0)),
        ),
    );
    hermitian_eigenvalues(&(&p_sqrt * a_mat * &p_sqrt))
}

fn collides(sorted_nonzero: &[f64]) -> bool {
    let scale = sorted_nonzero
        .iter()
        .fold(0.0_f64, |acc, &x| acc.max(x.abs()));
    sorted_nonzero
        .windows(2)
        .any(|w| (w[1] - w[0]).abs() < COLLISION_THRESHOLD * scale)
}

/// Sample the nonzero spectrum of X = G†AG with G an n×N Ginibre draw.
/// The N−n structural zeros are reported through `zero_multiplicity`.
pub fn map_polynomial_ensemble(
    a: &SignedDiagonal,
    big_n: usize,
    seed: u64,
) -> Result<SpectrumSample> {
    let n = a.dim();
    if n > big_n {
        return Err(Error::Domain(format!(
            "sandwich map needs n ≤ N, got n={n}, N={big_n}"
        )));
    }
    for attempt in 0..MAX_ATTEMPTS {
        let g = sample_ginibre(n, big_n, derive_seed(seed, attempt as u64));
        let eigs = nonzero_sandwich_spectrum(a, &g);
        if !collides(&eigs) {
            return Ok(SpectrumSample {
                eigenvalues: eigs,
                zero_multiplicity: big_n - n,
                seed,
                sampler_id: "polynomial-map".into(),
            });
        }
    }
    Err(Error::NonConvergence {
        what: "eigenvalue collision persisted across resamples",
        budget: MAX_ATTEMPTS,
    })
}

/// Diagonalize one Hermitised product draw, splitting off the ν_M
/// structural zeros and resampling (advanced seed) on the probability-zero
/// event of a nonzero-eigenvalue collision.
pub fn product_spectrum_sample(params: &EnsembleParams, seed: u64) -> Result<SpectrumSample> {
    let zeros_expected = params.nu().last().copied().unwrap_or(0);
    for attempt in 0..MAX_ATTEMPTS {
        let w = build_hermitised_product(params, derive_seed(seed, attempt as u64));
        let mut eigs = hermitian_eigenvalues(&w);
        let radius = eigs.iter().fold(0.0_f64, |acc, &x| acc.max(x.abs()));
        // The zeros_expected smallest-modulus eigenvalues are the
        // structural zeros; they must sit far below the nonzero ones.
        eigs.sort_by(|a, b| {
            a.abs()
                .partial_cmp(&b.abs())
                .expect("non-finite eigenvalue")
        });
        let (zeros, nonzero) = eigs.split_at(zeros_expected);
        let zeros_clean = zeros.iter().all(|&z| z.abs() < ZERO_THRESHOLD * radius);
        let mut nonzero: Vec<f64> = nonzero.to_vec();
        nonzero.sort_by(|a, b| a.partial_cmp(b).expect("non-finite eigenvalue"));
        let nonzero_clean = nonzero
            .iter()
            .all(|&x| x.abs() >= ZERO_THRESHOLD * radius);
        if zeros_clean && nonzero_clean && !collides(&nonzero) {
            return Ok(SpectrumSample {
                eigenvalues: nonzero,
                zero_multiplicity: zeros_expected,
                seed,
                sampler_id: "matrix-product".into(),
            });
        }
    }
    Err(Error::NonConvergence {
        what: "structural zero/nonzero separation failed across resamples",
        budget: MAX_ATTEMPTS,
    })
}
