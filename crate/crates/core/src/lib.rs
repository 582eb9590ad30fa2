//! Spectral statistics of Hermitised matrix-product ensembles.
//!
//! Conjugating a GUE matrix `H` by a chain of independent rectangular
//! complex Ginibre factors,
//!
//! ```text
//! W = G_M^† … G_1^† H G_1 … G_M ,
//! ```
//!
//! preserves the signature of `H`, pins a deterministic block of zero
//! eigenvalues, and leaves a nonzero spectrum forming a polynomial
//! ensemble: a Vandermonde factor times a determinant of weight functions
//! built from Meijer G-functions. This crate computes those laws exactly
//! and samples them:
//!
//! * [`special`] — complex log-gamma, vertical-contour (Mellin–Barnes)
//!   quadrature, Meijer G evaluation, Wright–Bessel series.
//! * [`sampling`] — seeded Ginibre/GUE samplers, the Hermitised product,
//!   the `X = G^† A G` polynomial-ensemble map, and an equivalent
//!   rank-one update chain driven by secular equations.
//! * [`density`] — the exact joint eigenvalue density for `X = G^† A G`,
//!   the product-ensemble joint density with its weight functions, and the
//!   asymptotic two-component (Muttalib–Borodin type) density.
//! * [`biortho`] — bi-moments and their determinants in exact rational
//!   arithmetic, the bi-orthogonal pair `(p_n, φ_n)`, the finite-`n`
//!   correlation kernel through three independent routes, and an exact
//!   ODE check on `p_{2N}`.
//! * [`hard_edge`] — the microscopic kernel at the origin through three
//!   independent representations, the Meijer G-kernel, and the
//!   Wright–Bessel (Muttalib–Borodin) hard-edge kernel.
//! * [`global`] — Fuss–Catalan moments, the parametric global density,
//!   an algebraic Stieltjes-transform solver, and the eigenvalue scaling
//!   map onto the global support.
//! * [`stats`] — Kolmogorov–Smirnov distances for Monte Carlo
//!   cross-validation.
//!
//! Everything numerical returns a value together with an error estimate or
//! is covered by an exact-arithmetic twin; samplers are deterministic
//! functions of an explicit seed.

pub mod biortho;
pub mod density;
pub mod error;
pub mod global;
pub mod hard_edge;
pub mod quad;
pub mod sampling;
pub mod special;
pub mod stats;

pub use error::{Error, Result};

/// Parameters of the Hermitised product ensemble.
///
/// `nu[m-1]` is the dimension offset of the m-th Ginibre factor
/// (`G_m` is `(nu_{m-1}+n) × (nu_m+n)` with `nu_0 = 0`), `base_dim` is the
/// size `n` of the central GUE matrix. The product has `nu[M-1]` exact zero
/// eigenvalues and `n` nonzero ones.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleParams {
    nu: Vec<usize>,
    base_dim: usize,
}

impl EnsembleParams {
    /// `nu` lists the factor offsets (length = product depth `M`, possibly
    /// empty for the plain GUE), `base_dim` must be positive.
    pub fn new(nu: Vec<usize>, base_dim: usize) -> Result<Self> {
        if base_dim == 0 {
            return Err(Error::Domain("base_dim must be positive".into()));
        }
        Ok(Self { nu, base_dim })
    }

    /// Product depth `M`.
    pub fn depth(&self) -> usize {
        self.nu.len()
    }

    /// Size of the central GUE factor (= number of nonzero eigenvalues).
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    /// Factor offsets `nu_1..nu_M`.
    pub fn nu(&self) -> &[usize] {
        &self.nu
    }

    /// Offsets as floats, convenient for gamma-function arguments.
    pub fn nu_f64(&self) -> Vec<f64> {
        self.nu.iter().map(|&v| v as f64).collect()
    }
}
