//! Exact integer, rational and polynomial arithmetic and the matrix kernels built on it.

mod charpoly;
mod elimination;
mod laurent;
mod matrix;
mod poly;
mod spectrum;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use charpoly::{char_poly, char_poly_rational, hessenberg_charpoly, nonzero_eigen_product, Field, ModPrime, Rationals};
pub use elimination::{det_exact, rank, smith_normal_form, torsion_order};
pub use laurent::{LaurentPoly, PolyJson, PolyMatrix, TermJson};
pub use matrix::IntMatrix;
pub use poly::IntPoly;
pub use spectrum::{integer_spectrum, Spectrum, SpectrumJson};

/// Generalized binomial coefficient.
///
/// For `b >= 0` this is `a (a-1) ... (a-b+1) / b!`, valid for every integer `a`. For `b < 0`
/// it is 1 when `a == b` and 0 otherwise, which keeps Pascal's rule intact at `b = 0`
/// for negative `a`.
pub fn gen_binom(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return if a == b { BigInt::one() } else { BigInt::zero() };
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..b {
        num *= a - i;
        den *= i + 1;
    }
    num / den
}

/// Ordinary binomial as a `usize`, for counts and exponents that are known to be nonnegative.
pub fn binom_usize(a: i64, b: i64) -> usize {
    use num_traits::ToPrimitive;
    gen_binom(a, b)
        .to_usize()
        .unwrap_or_else(|| panic!("C({a},{b}) is not a nonnegative machine integer"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_binom_conventions() {
        assert_eq!(gen_binom(-1, 0), BigInt::one());
        assert_eq!(gen_binom(-1, -1), BigInt::one());
        assert_eq!(gen_binom(3, 2), BigInt::from(3));
        assert_eq!(gen_binom(2, 3), BigInt::zero());
        assert_eq!(gen_binom(-2, 2), BigInt::from(3));
        assert_eq!(gen_binom(0, -1), BigInt::zero());
    }
}
