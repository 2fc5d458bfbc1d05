//! Exact integer and rational linear algebra.
//!
//! Nothing here touches floating point. Matrices act on row vectors
//! throughout: a vector `x` maps to `x * M`.

mod matrix;
mod normal_form;

pub use matrix::{IntMatrix, MatrixJson, RatMatrix};
pub use normal_form::{det_exact, elementary_divisors, hnf, integral_kernel, rank, signature, snf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// gcd of a slice; zero for an all-zero slice.
pub fn gcd_all(xs: &[BigInt]) -> BigInt {
    xs.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x)).abs()
}

/// Exact dot product of two integer vectors.
pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
