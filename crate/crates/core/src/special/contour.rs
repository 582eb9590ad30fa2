//! Vertical-line (Mellin–Barnes) quadrature.
//!
//! All contour representations used in this crate integrate products of
//! gamma functions along a line Re s = c on which the integrand is
//! analytic and decays like exp(-κ|Im s|) with κ > 0 determined by the
//! gamma factors (|Γ(a+ib)| ~ e^{-π|b|/2} for large |b|). The trapezoid
//! rule is spectrally accurate there; truncation is chosen from κ and then
//! verified against the actual integrand magnitude.

use num_complex::Complex64;

use super::gamma::complex_log_gamma;
use crate::{Error, Result};

/// Quadrature rule along the vertical line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContourRule {
    /// Uniform trapezoid — spectrally accurate for analytic decaying
    /// integrands; the default.
    Trapezoid,
    /// Composite Gauss–Legendre panels of order 32 — cross-check rule.
    GaussLegendrePanels,
}

/// A truncated vertical contour Re s = `abscissa`, |Im s| ≤ `half_extent`.
#[derive(Debug, Clone, Copy)]
pub struct VerticalContour {
    pub abscissa: f64,
    pub half_extent: f64,
    pub nodes: usize,
    pub rule: ContourRule,
}

impl VerticalContour {
    pub fn new(abscissa: f64, half_extent: f64, nodes: usize, rule: ContourRule) -> Result<Self> {
        if !(half_extent > 0.0) || !half_extent.is_finite() {
            return Err(Error::Domain(format!(
                "contour half_extent must be positive, got {half_extent}"
            )));
        }
        if nodes < 16 {
            return Err(Error::Domain(format!(
                "contour needs at least 16 nodes, got {nodes}"
            )));
        }
        Ok(Self {
            abscissa,
            half_extent,
            nodes,
            rule,
        })
    }

    /// Default-rule contour with the standard node budget.
    pub fn trapezoid(abscissa: f64, half_extent: f64) -> Result<Self> {
        Self::new(abscissa, half_extent, DEFAULT_NODES, ContourRule::Trapezoid)
    }
}

/// Default node budget along a vertical line.
pub const DEFAULT_NODES: usize = 2048;

/// Truncation threshold relative to the integrand peak.
pub const TRUNCATION_RATIO: f64 = 1e-16;

/// (1/2πi) ∫ f(s) ds along the contour. Returns the value and an error
/// estimate combining a nested coarse/fine difference with the magnitude
/// of the integrand at the truncation points.
pub fn integrate_vertical<F>(f: F, contour: &VerticalContour) -> (Complex64, f64)
where
    F: Fn(Complex64) -> Complex64,
{
    let c = contour.abscissa;
    let t_max = contour.half_extent;
    match contour.rule {
        ContourRule::Trapezoid => {
            // Odd node count so every coarse node is a fine node.
            let n = contour.nodes | 1;
            let h = 2.0 * t_max / (n - 1) as f64;
            let mut fine = Complex64::ZERO;
            let mut coarse = Complex64::ZERO;
            let mut edge = 0.0;
            for i in 0..n {
                let t = -t_max + i as f64 * h;
                let v = f(Complex64::new(c, t));
                let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
                fine += w * v;
                if i % 2 == 0 {
                    let wc = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
                    coarse += wc * v;
                }
                if i == 0 || i == n - 1 {
                    edge += v.norm();
                }
            }
            let scale = h / (2.0 * std::f64::consts::PI);
            let value = fine * scale;
            let coarse_val = coarse * 2.0 * scale;
            let err = (value - coarse_val).norm() + edge * h;
            (value, err)
        }
        ContourRule::GaussLegendrePanels => {
            let order = 32;
            let panels = (contour.nodes / order).max(4);
            let rule = crate::quad::gauss_legendre(order);
            let width = 2.0 * t_max / panels as f64;
            let mut acc = Complex64::ZERO;
            for p in 0..panels {
                let (a, b) = (-t_max + p as f64 * width, -t_max + (p + 1) as f64 * width);
                let (half, mid) = (0.5 * (b - a), 0.5 * (a + b));
                for (x, w) in rule.0.iter().zip(rule.1.iter()) {
                    acc += *w * f(Complex64::new(c, mid + half * x));
                }
            }
            acc *= 0.5 * width / (2.0 * std::f64::consts::PI);
            let edge = f(Complex64::new(c, t_max)).norm() + f(Complex64::new(c, -t_max)).norm();
            (acc, edge * width)
        }
    }
}

/// Build a contour for an integrand decaying like e^{-κ|t|}, then widen it
/// until the actual samples at the ends drop below `TRUNCATION_RATIO`
/// times the observed peak. `osc_rate` bounds |d arg/dt| of smooth
/// non-gamma factors (e.g. |ln base| for base^s) and controls node density.
pub fn auto_contour<F>(f: &F, abscissa: f64, kappa: f64, osc_rate: f64) -> Result<VerticalContour>
where
    F: Fn(Complex64) -> Complex64,
{
    if !(kappa > 0.0) {
        return Err(Error::Domain(format!(
            "vertical contour needs positive decay rate, got {kappa}"
        )));
    }
    let mut t_max = (38.0 / kappa).max(8.0);
    let peak0 = f(Complex64::new(abscissa, 0.0)).norm();
    let mut peak = peak0;
    for step in 0..14 {
        // Track the peak on a coarse sweep the first time through.
        if step == 0 {
            let m = 32;
            for i in 1..m {
                let t = t_max * i as f64 / m as f64;
                peak = peak
                    .max(f(Complex64::new(abscissa, t)).norm())
                    .max(f(Complex64::new(abscissa, -t)).norm());
            }
        }
        let tail = f(Complex64::new(abscissa, t_max))
            .norm()
            .max(f(Complex64::new(abscissa, -t_max)).norm());
        if tail <= TRUNCATION_RATIO * peak.max(1e-300) || t_max > 4000.0 {
            break;
        }
        t_max *= 1.4;
    }
    let h = (std::f64::consts::PI / (4.0 * (osc_rate + 1.0))).min(0.1);
    let nodes = DEFAULT_NODES.max((2.0 * t_max / h).ceil() as usize) | 1;
    VerticalContour::new(abscissa, t_max, nodes, ContourRule::Trapezoid)
}

/// A product of gamma factors times a power, evaluated on a vertical line:
///
/// ```text
/// ∏ Γ(aᵢ + bᵢ s) / ∏ Γ(cⱼ + dⱼ s) · base^{p₀ + p₁ s}
/// ```
///
/// This shape covers every factor appearing in the weight-function contour
/// representation and in the single- and double-contour kernel formulas.
#[derive(Debug, Clone)]
pub struct GammaProductIntegrand {
    pub numerator: Vec<(f64, f64)>,
    pub denominator: Vec<(f64, f64)>,
    pub power_base: f64,
    pub power_offset: f64,
    pub power_scale: f64,
}

impl GammaProductIntegrand {
    pub fn new(numerator: Vec<(f64, f64)>, denominator: Vec<(f64, f64)>) -> Self {
        Self {
            numerator,
            denominator,
            power_base: 1.0,
            power_offset: 0.0,
            power_scale: 0.0,
        }
    }

    pub fn with_power(mut self, base: f64, offset: f64, scale: f64) -> Result<Self> {
        if !(base > 0.0) {
            return Err(Error::Domain(format!(
                "power base must be positive, got {base}"
            )));
        }
        self.power_base = base;
        self.power_offset = offset;
        self.power_scale = scale;
        Ok(self)
    }

    /// Exponential decay rate κ of |integrand| along the line:
    /// (π/2)(Σ|bᵢ| − Σ|dⱼ|).
    pub fn decay_rate(&self) -> f64 {
        let num: f64 = self.numerator.iter().map(|&(_, b)| b.abs()).sum();
        let den: f64 = self.denominator.iter().map(|&(_, b)| b.abs()).sum();
        std::f64::consts::PI / 2.0 * (num - den)
    }

    /// Oscillation rate contributed by the power factor.
    pub fn osc_rate(&self) -> f64 {
        (self.power_scale * self.power_base.ln()).abs()
    }

    /// Check the line Re s = c keeps every numerator gamma argument in the
    /// right half plane (all poles strictly to one side).
    pub fn admissible(&self, abscissa: f64) -> bool {
        self.numerator
            .iter()
            .all(|&(a, b)| a + b * abscissa > 0.0)
    }

    /// log of the integrand at s (up to 2πik in the imaginary part).
    pub fn log_eval(&self, s: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(
            self.power_base.ln() * self.power_offset,
            0.0,
        ) + self.power_base.ln() * self.power_scale * s;
        for &(a, b) in &self.numerator {
            acc += complex_log_gamma(Complex64::new(a, 0.0) + b * s)?;
        }
        for &(a, b) in &self.denominator {
            acc -= complex_log_gamma(Complex64::new(a, 0.0) + b * s)?;
        }
        Ok(acc)
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        match self.log_eval(s) {
            Ok(l) => l.exp(),
            Err(_) => Complex64::ZERO,
        }
    }

    /// (1/2πi) ∫ of this integrand along Re s = `abscissa`, with automatic
    /// truncation. Errors if the line is inadmissible or κ ≤ 0.
    pub fn integrate(&self, abscissa: f64) -> Result<(Complex64, f64)> {
        if !self.admissible(abscissa) {
            let strip = self.numerator.iter().filter(|&&(_, b)| b != 0.0).fold(
                (f64::NEG_INFINITY, f64::INFINITY),
                |(lo, hi), &(a, b)| {
                    if b > 0.0 {
                        (lo.max(-a / b), hi)
                    } else {
                        (lo, hi.min(-a / b))
                    }
                },
            );
            return Err(Error::ContourPlacement { abscissa, strip });
        }
        let f = |s: Complex64| self.eval(s);
        let contour = auto_contour(&f, abscissa, self.decay_rate(), self.osc_rate())?;
        Ok(integrate_vertical(f, &contour))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contour_validation() {
        assert!(VerticalContour::new(0.0, 1.0, 8, ContourRule::Trapezoid).is_err());
        assert!(VerticalContour::new(0.0, -1.0, 64, ContourRule::Trapezoid).is_err());
        assert!(VerticalContour::new(-0.5, 30.0, 64, ContourRule::Trapezoid).is_ok());
    }

    /// Mellin inversion of Γ: (1/2πi)∫ Γ(s) x^{-s} ds = e^{-x} for c > 0.
    #[test]
    fn mellin_inversion_of_exp() {
        for &x in &[0.3, 1.0, 4.0] {
            let g = GammaProductIntegrand::new(vec![(0.0, 1.0)], vec![])
                .with_power(x, 0.0, -1.0)
                .unwrap();
            let (v, err) = g.integrate(1.25).unwrap();
            let want = (-x).exp();
            assert!(
                (v.re - want).abs() < 1e-12 * want.max(1e-3) && v.im.abs() < 1e-12,
                "x={x}: got {v}, want {want}, err {err}"
            );
        }
    }

    /// Legendre duplication through the contour:
    /// (1/2πi)∫ Γ(s)Γ(s+1/2) x^{-s} ds = √π e^{-2√x} for c > 0, at x=1.
    #[test]
    fn gamma_pair_line_integral() {
        let g = GammaProductIntegrand::new(vec![(0.0, 1.0), (0.5, 1.0)], vec![])
            .with_power(1.0, 0.0, -1.0)
            .unwrap();
        let (v, _) = g.integrate(0.75).unwrap();
        let want = std::f64::consts::PI.sqrt() * (-2.0_f64).exp();
        assert!((v.re - want).abs() < 1e-12, "got {v}, want {want}");
    }

    #[test]
    fn inadmissible_abscissa_rejected() {
        let g = GammaProductIntegrand::new(vec![(0.0, 1.0)], vec![]);
        assert!(g.integrate(-0.5).is_err());
    }

    #[test]
    fn gl_panels_agree_with_trapezoid() {
        let g = GammaProductIntegrand::new(vec![(0.0, 1.0)], vec![])
            .with_power(2.0, 0.0, -1.0)
            .unwrap();
        let f = |s: Complex64| g.eval(s);
        let trap = VerticalContour::new(1.0, 40.0, 2048, ContourRule::Trapezoid).unwrap();
        let glp = VerticalContour::new(1.0, 40.0, 4096, ContourRule::GaussLegendrePanels).unwrap();
        let (vt, _) = integrate_vertical(f, &trap);
        let (vg, _) = integrate_vertical(f, &glp);
        assert!((vt - vg).norm() < 1e-11, "trap {vt} vs panels {vg}");
    }
}
