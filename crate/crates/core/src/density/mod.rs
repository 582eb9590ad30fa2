//! Exact densities of the ensemble: the signed-sandwich eigenvalue PDF,
//! the product-ensemble joint PDF with its closed-form normalisation, the
//! Hermite-type two-parameter (Muttalib–Borodin) approximation, and the
//! weight functions g_j^{(M)} through three independent backends.

mod jpdf;
mod theorem1;
mod weights;

pub use jpdf::{
    mb_density_unnormalized, product_jpdf, product_jpdf_with_backend, product_log_normalization,
};
pub use theorem1::theorem1_pdf;
pub use weights::{weight_g, WeightBackend};
