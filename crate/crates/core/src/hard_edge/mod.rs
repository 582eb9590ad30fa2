//! Hard-edge scaling limits of the correlation kernel: the microscopic
//! kernel near the origin in three independent representations, the Meijer
//! G-kernel, and the Wright-Bessel kernel family with its integer-order
//! identity.

pub mod double_contour;
pub mod mb_kernel;
pub mod meijer_kernel;
pub mod unified;

pub use crate::biortho::KernelValue;
use crate::{EnsembleParams, Error, Result};

pub use mb_kernel::{mb_hard_kernel, mb_kernel_raw};
pub use meijer_kernel::meijer_g_kernel;

/// Which representation of the limiting kernel to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HardEdgeRepresentation {
    /// Dressed Meijer G-kernel (u-integral of a product of two G
    /// functions). The default route.
    GProductIntegral,
    /// Double-contour form: vertical t-line coupled through 1/(s−t) to a
    /// clockwise loop around the non-negative reals. Depth M ≥ 1 only —
    /// at M = 0 the t-integrand decays only algebraically and the route
    /// is numerically impractical.
    DoubleContour,
    /// Single-contour form over the right unit semicircle, which yields
    /// even + odd together; parity parts are separated by an x ↦ −x
    /// evaluation.
    Unified,
}

/// A hard-edge kernel evaluation request.
#[derive(Debug, Clone)]
pub struct HardEdgeQuery {
    pub x: f64,
    pub y: f64,
    pub params: EnsembleParams,
    pub representation: HardEdgeRepresentation,
}

/// The limiting kernel at the origin, split into parity parts.
pub fn hard_kernel(query: &HardEdgeQuery) -> Result<KernelValue> {
    if query.x == 0.0 || query.y == 0.0 {
        return Err(Error::Domain(
            "hard-edge kernel needs nonzero x and y".into(),
        ));
    }
    match query.representation {
        HardEdgeRepresentation::GProductIntegral => {
            meijer_kernel::g_product_kernel(&query.params, query.x, query.y)
        }
        HardEdgeRepresentation::DoubleContour => {
            double_contour::double_contour_kernel(&query.params, query.x, query.y)
        }
        HardEdgeRepresentation::Unified => {
            unified::unified_kernel(&query.params, query.x, query.y)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biortho::{KernelEvaluator, KernelRoute};

    fn query(params: &EnsembleParams, rep: HardEdgeRepresentation, x: f64, y: f64) -> HardEdgeQuery {
        HardEdgeQuery {
            x,
            y,
            params: params.clone(),
            representation: rep,
        }
    }

    #[test]
    fn representations_agree_on_mixed_sign_grid() {
        let params = EnsembleParams::new(vec![1], 6).unwrap();
        let pts = [-1.1_f64, 0.45, 0.9];
        for &x in &pts {
            for &y in &pts {
                let reps = [
                    HardEdgeRepresentation::GProductIntegral,
                    HardEdgeRepresentation::DoubleContour,
                    HardEdgeRepresentation::Unified,
                ];
                let vals: Vec<KernelValue> = reps
                    .iter()
                    .map(|&r| hard_kernel(&query(&params, r, x, y)).unwrap())
                    .collect();
                for i in 0..3 {
                    for j in (i + 1)..3 {
                        let scale = vals[i].total().abs().max(1e-8);
                        assert!(
                            (vals[i].even - vals[j].even).abs() < 1e-6 * scale
                                && (vals[i].odd - vals[j].odd).abs() < 1e-6 * scale,
                            "({x},{y}) reps {i},{j}: {:?} vs {:?}",
                            vals[i],
                            vals[j]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_zero_arguments() {
        let params = EnsembleParams::new(vec![1], 4).unwrap();
        for rep in [
            HardEdgeRepresentation::GProductIntegral,
            HardEdgeRepresentation::DoubleContour,
            HardEdgeRepresentation::Unified,
        ] {
            assert!(hard_kernel(&query(&params, rep, 0.0, 0.5)).is_err());
            assert!(hard_kernel(&query(&params, rep, 0.5, 0.0)).is_err());
        }
    }

    #[test]
    fn finite_order_kernel_scales_to_hard_edge() {
        // (1/√n) K_{2n}(x/√n, y/√n) approaches the limiting kernel, with
        // error decreasing monotonically over n ∈ {10, 20, 40}.
        let (x, y) = (0.7_f64, -0.5_f64);
        for nu in [vec![], vec![1usize]] {
            let params = EnsembleParams::new(nu.clone(), 80).unwrap();
            let limit = hard_kernel(&query(
                &params,
                HardEdgeRepresentation::GProductIntegral,
                x,
                y,
            ))
            .unwrap()
            .total();
            let mut errors = Vec::new();
            for n in [10usize, 20, 40] {
                let scale = (n as f64).sqrt();
                let eval =
                    KernelEvaluator::new(2 * n, &params, KernelRoute::ContourSum).unwrap();
                let v = eval.eval(x / scale, y / scale).unwrap().total() / scale;
                errors.push((v - limit).abs());
            }
            assert!(
                errors[0] > errors[1] && errors[1] > errors[2],
                "nu={nu:?}: errors {errors:?} not decreasing toward {limit}"
            );
            assert!(
                errors[2] < 0.05 * limit.abs(),
                "nu={nu:?}: n=40 error {} too large vs {limit}",
                errors[2]
            );
        }
    }
}
