//! Bi-orthogonal polynomials p_k, their dual functions φ_k, squared norms,
//! and the finite-dimension correlation kernel, with exact-rational and
//! numeric evaluation paths.

pub mod exact;
pub mod funcs;
pub mod kernel;
pub mod ode;

pub use exact::{
    bimoment_ratio, ln_norm_h, norm_h_ratio, pairing_ratio, phi_coeffs, poly_p_coeffs,
};
pub use funcs::{phi, phi_over_norm, PhiRoute, PolynomialP};
pub use kernel::{kernel_n, KernelEvaluator, KernelRoute, KernelValue};
pub use ode::{char_poly_from_ode, ode_residuals};
