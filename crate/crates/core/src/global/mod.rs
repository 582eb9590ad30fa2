//! Global (macroscopic) density of the scaled nonzero spectrum: exact
//! Fuss–Catalan moments, the trigonometric parametrisation, an algebraic
//! Stieltjes-transform solver with branch tracking, the scaling map that
//! carries raw eigenvalues onto the limiting support, and a quadrature
//! CDF for Kolmogorov–Smirnov comparisons.

pub mod fc;
pub mod parametric;
pub mod stieltjes;

pub use fc::{fuss_catalan_moment, fuss_catalan_moment_f64};
pub use parametric::{global_density_parametric, support_edge};
pub use stieltjes::{fuss_catalan_density, stieltjes_density};

use crate::{EnsembleParams, Error, Result};

/// A sampled density curve: paired abscissae and density values.
#[derive(Debug, Clone)]
pub struct DensityCurve {
    pub x: Vec<f64>,
    pub density: Vec<f64>,
}

/// The limiting global density for product depth M: an even density on
/// [−edge, edge] whose even moments are the Fuss–Catalan numbers with
/// parameter 2M+1.
#[derive(Debug, Clone)]
pub struct GlobalDensityModel {
    pub product_depth: usize,
    pub fc_parameter: usize,
    pub support_edge: f64,
    pub samples: DensityCurve,
}

impl GlobalDensityModel {
    /// Sample the parametric density on a symmetric midpoint grid of
    /// `points` abscissae (even, so no point lands on the origin
    /// singularity).
    pub fn build(m: usize, points: usize) -> Result<Self> {
        if points < 2 || points % 2 != 0 {
            return Err(Error::Domain(
                "density curve needs an even number of points >= 2".into(),
            ));
        }
        let edge = support_edge(m);
        // Build the positive half and mirror it, so the evenness of the
        // curve is exact rather than up to rounding of the grid points.
        let half = points / 2;
        let mut x = Vec::with_capacity(points);
        let mut density = Vec::with_capacity(points);
        let mut pos = Vec::with_capacity(half);
        for j in 0..half {
            let xj = edge * (j as f64 + 0.5) / half as f64;
            pos.push((xj, global_density_parametric(m, xj)?));
        }
        for &(xj, d) in pos.iter().rev() {
            x.push(-xj);
            density.push(d);
        }
        for &(xj, d) in &pos {
            x.push(xj);
            density.push(d);
        }
        Ok(Self {
            product_depth: m,
            fc_parameter: 2 * m + 1,
            support_edge: edge,
            samples: DensityCurve { x, density },
        })
    }

    /// ∫ρ̃ over the support, by quadrature in the parametrising variable
    /// (exact value 1).
    pub fn normalization(&self) -> f64 {
        2.0 * parametric::phi_domain_integral(self.product_depth, |_| 1.0, 1e-10)
    }

    /// ∫x^{2k} ρ̃ dx (exact value: the Fuss–Catalan number FC_{2M+1}(k)).
    pub fn even_moment(&self, k: usize) -> f64 {
        2.0 * parametric::phi_domain_integral(
            self.product_depth,
            |x| x.powi(2 * k as i32),
            1e-10,
        )
    }
}

/// Map raw nonzero eigenvalues onto the global scale: x ↦ √2·x / n^{M+1/2}
/// with n the central matrix dimension.
pub fn global_scaling_map(params: &EnsembleParams, raw_eigenvalues: &[f64]) -> Vec<f64> {
    let n = params.base_dim() as f64;
    let factor = std::f64::consts::SQRT_2 / n.powf(params.depth() as f64 + 0.5);
    raw_eigenvalues.iter().map(|&x| factor * x).collect()
}

/// Tabulated CDF of the global density, built by cumulative quadrature in
/// the parametrising variable (which absorbs the origin singularity), for
/// CDF-level Monte Carlo comparisons.
#[derive(Debug, Clone)]
pub struct GlobalCdf {
    edge: f64,
    /// x₀ at the φ grid, strictly decreasing from `edge` to 0.
    xs: Vec<f64>,
    /// tail[j] = ∫_{xs[j]}^{edge} ρ̃ dx (half the mass at xs[J] = 0).
    tail: Vec<f64>,
}

impl GlobalCdf {
    pub fn new(m: usize) -> Result<Self> {
        const PANELS: usize = 4096;
        let phi_star = std::f64::consts::PI / (2 * m + 2) as f64;
        let rule = crate::quad::gauss_legendre(16);
        let integrand = |phi: f64| {
            parametric::rho_of_phi(m, phi) * parametric::neg_dx0_dphi(m, phi)
        };
        let mut xs = Vec::with_capacity(PANELS + 1);
        let mut tail = Vec::with_capacity(PANELS + 1);
        xs.push(support_edge(m));
        tail.push(0.0);
        let mut acc = 0.0;
        for j in 0..PANELS {
            let a = phi_star * j as f64 / PANELS as f64;
            let b = phi_star * (j + 1) as f64 / PANELS as f64;
            let mid = 0.5 * (a + b);
            let half = 0.5 * (b - a);
            let mut panel = 0.0;
            for (t, w) in rule.0.iter().zip(rule.1.iter()) {
                panel += w * integrand(mid + half * t);
            }
            acc += panel * half;
            let x_b = if j + 1 == PANELS {
                0.0
            } else {
                parametric::x0_squared(m, b).sqrt()
            };
            xs.push(x_b);
            tail.push(acc);
            if !acc.is_finite() {
                return Err(Error::NonFinite("global CDF accumulation".into()));
            }
        }
        Ok(Self {
            edge: support_edge(m),
            xs,
            tail,
        })
    }

    /// P(X ≤ x) by symmetric-tail lookup with linear interpolation.
    pub fn eval(&self, x: f64) -> f64 {
        let a = x.abs();
        let tail = if a >= self.edge {
            0.0
        } else {
            // xs is strictly decreasing; find k with xs[k] >= a >= xs[k+1].
            let k = self.xs.partition_point(|&v| v >= a).saturating_sub(1);
            let k = k.min(self.xs.len() - 2);
            let (x0, x1) = (self.xs[k], self.xs[k + 1]);
            let frac = if x0 > x1 { (x0 - a) / (x0 - x1) } else { 0.0 };
            self.tail[k] + frac * (self.tail[k + 1] - self.tail[k])
        };
        if x >= 0.0 {
            1.0 - tail
        } else {
            tail
        }
    }
}
