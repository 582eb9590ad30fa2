//! Special functions: complex log-gamma, vertical-contour quadrature,
//! Meijer G^{m,0}_{0,q} evaluators, and Wright's generalized Bessel
//! function. These are the numerical kernels every higher-level module
//! builds on.

pub mod contour;
pub mod gamma;
pub mod meijer;
pub mod wright;

pub use contour::{
    auto_contour, integrate_vertical, ContourRule, GammaProductIntegrand, VerticalContour,
};
pub use gamma::{complex_log_gamma, lgamma_pos, real_gamma};
pub use meijer::{meijer_g_m0, meijer_g_m0_asymptotic, meijer_g_m0_complex};
pub use wright::wright_bessel;
