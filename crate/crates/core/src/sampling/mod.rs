//! Monte Carlo side of the crate: Ginibre and GUE matrix draws, the
//! Hermitised product construction, the signed-sandwich map X = G†AG onto
//! its nonzero spectrum, and a matrix-free rank-one deformation chain that
//! samples the same law through secular-equation roots.
//!
//! Every sampler is a pure function of (parameters, seed); parallel Monte
//! Carlo derives per-task seeds with [`derive_seed`] so results never
//! depend on thread count or scheduling.

mod matrices;
mod rng;
mod secular;

pub use matrices::{
    build_hermitised_product, hermitian_eigenvalues, map_polynomial_ensemble,
    nonzero_sandwich_spectrum, product_spectrum_sample, sample_ginibre, sample_gue,
};
pub use rng::{derive_seed, rng_from_seed};
pub use secular::{chain_final_spectra, rank_one_chain, secular_roots};

use crate::{Error, Result};

/// Eigenvalues of one draw, with the structural zeros counted separately.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSample {
    /// Nonzero eigenvalues in strictly ascending order.
    pub eigenvalues: Vec<f64>,
    /// Count of structurally zero eigenvalues (dimension excess).
    pub zero_multiplicity: usize,
    /// Master seed the draw was generated from.
    pub seed: u64,
    /// Which sampler produced this (e.g. "matrix-product", "rank-one-chain").
    pub sampler_id: String,
}

impl SpectrumSample {
    /// Count of negative eigenvalues.
    pub fn negative_count(&self) -> usize {
        self.eigenvalues.iter().filter(|&&x| x < 0.0).count()
    }
}

/// A fixed diagonal matrix with strictly ascending nonzero entries,
/// a₁ < … < a_{n₀} < 0 < a_{n₀+1} < … < a_n.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedDiagonal {
    entries: Vec<f64>,
    n0: usize,
}

impl SignedDiagonal {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Domain("diagonal needs at least one entry".into()));
        }
        for w in entries.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::Ordering(format!(
                    "diagonal entries must be strictly ascending: {} !< {}",
                    w[0], w[1]
                )));
            }
        }
        if entries.iter().any(|&a| a == 0.0 || !a.is_finite()) {
            return Err(Error::Domain("diagonal entries must be finite and nonzero".into()));
        }
        let n0 = entries.iter().filter(|&&a| a < 0.0).count();
        Ok(Self { entries, n0 })
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Number of negative entries.
    pub fn negative_count(&self) -> usize {
        self.n0
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }
}
