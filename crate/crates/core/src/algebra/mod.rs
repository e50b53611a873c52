//! Exact rational scalars and sparse multivariate polynomials.

mod monomial;
mod polynomial;

pub use monomial::{monomial_basis, Monomial, WeightVector};
pub use polynomial::Polynomial;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact scalar: always in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}
