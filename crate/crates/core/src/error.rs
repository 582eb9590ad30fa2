use num_complex::Complex64;

/// Unified error type for the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Evaluation at (or numerically indistinguishable from) a pole of Γ.
    #[error("gamma pole at z = {z}")]
    GammaPole { z: Complex64 },

    /// A contour abscissa lies outside its admissible strip.
    #[error("contour abscissa {abscissa} outside admissible strip ({},{})", strip.0, strip.1)]
    ContourPlacement { abscissa: f64, strip: (f64, f64) },

    /// A series or iterative scheme exhausted its budget before converging.
    #[error("{what} failed to converge within {budget} steps")]
    NonConvergence { what: &'static str, budget: usize },

    /// Parameter or argument outside the documented domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input points violate a required ordering or sign pattern.
    #[error("ordering error: {0}")]
    Ordering(String),

    /// A root bracket could not be established or monotonicity failed.
    #[error("bracketing error: {0}")]
    Bracketing(String),

    /// Homotopy branch tracking detected a root collision.
    #[error("branch collision near z = {z}; retry with larger imaginary offset")]
    BranchCollision { z: Complex64 },

    /// A computed quantity left the representable range of f64.
    #[error("overflow/underflow: {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
