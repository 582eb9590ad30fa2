//! Fuss–Catalan numbers: the moment sequence of the squared-spectrum
//! limiting law, FC_p(k) = binom((p+1)k, k) / (pk + 1), in exact rational
//! arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// `binom((p+1)k, k) / (pk + 1)` as an exact rational (always an integer,
/// but returned as a rational so callers can combine it arithmetically).
pub fn fuss_catalan_moment(p: usize, k: usize) -> BigRational {
    let n = (p + 1) * k;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    BigRational::new(num, den * BigInt::from(p * k + 1))
}

/// The same moment as a float, for comparison against quadrature.
pub fn fuss_catalan_moment_f64(p: usize, k: usize) -> f64 {
    let q = fuss_catalan_moment(p, k);
    let num: f64 = q.numer().to_string().parse().expect("numerator fits f64");
    let den: f64 = q.denom().to_string().parse().expect("denominator fits f64");
    num / den
}
