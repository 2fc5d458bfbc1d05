//! Center density, Rogers' bounds, and the rank-by-rank comparison of the
//! determinant bounds for a coinvariant lattice.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive};
use rayon::prelude::*;

use crate::error::{LatticeError, Result};
use crate::lattice::Lattice;
use crate::reduction::minimal_norm;
use crate::report::{parse_decimal, rational_string};

/// Rogers' bound on the center density in dimensions 1 to 24, as printed.
pub const ROGERS_TABLE: [&str; 24] = [
    "0.5", "0.28868", "0.1847", "0.13127", "0.09987", "0.08112", "0.06981", "0.06326", "0.06007",
    "0.05953", "0.06136", "0.06559", "0.07253", "0.08278", "0.09735", "0.11774", "0.14624",
    "0.18629", "0.24308", "0.32454", "0.44289", "0.61722", "0.87767", "1.27241",
];

/// Ranks covered by the comparison table.
pub const TABLE_RANKS: std::ops::RangeInclusive<u32> = 1..=21;

/// `b_n` as an exact rational.
pub fn rogers_bound(n: u32) -> Result<BigRational> {
    if !(1..=24).contains(&n) {
        return Err(LatticeError::RogersOutOfRange(n));
    }
    parse_decimal(ROGERS_TABLE[n as usize - 1])
}

/// `1 + 10^-3`.
pub fn default_safety_factor() -> BigRational {
    BigRational::new(1001.into(), 1000.into())
}

/// `rho^2 = mu / 4` for a definite lattice.
pub fn packing_radius_sq(a: &Lattice) -> Result<BigRational> {
    let mu = minimal_norm(a)?;
    Ok(BigRational::new(mu.into(), 4.into()))
}

/// `delta^2 = rho^(2n) / |det|`.
pub fn center_density_sq(a: &Lattice) -> Result<BigRational> {
    let rho2 = packing_radius_sq(a)?;
    let n = a.rank() as u32;
    Ok(Pow::pow(rho2, n) / BigRational::from_integer(a.abs_det()))
}

/// Approximate `delta`, for display only.
pub fn center_density_approx(delta_sq: &BigRational) -> f64 {
    let num = delta_sq.numer().to_f64().unwrap_or(f64::NAN);
    let den = delta_sq.denom().to_f64().unwrap_or(f64::NAN);
    (num / den).sqrt()
}

/// Whether `delta <= b_n`, compared on squares.
pub fn within_rogers_bound(a: &Lattice) -> Result<bool> {
    let b = rogers_bound(a.rank() as u32)?;
    Ok(center_density_sq(a)? <= &b * &b)
}

/// One rank of the comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsRow {
    pub n: u32,
    /// The bound used, possibly inflated.
    pub b_n: BigRational,
    /// `3 * 2^min(n, 24-n)`.
    pub upper: BigInt,
    /// `3^n / (2^n b_n^2)`.
    pub lower: BigRational,
    /// `upper < lower`.
    pub strict: bool,
}

impl BoundsRow {
    pub fn new(n: u32, b_n: BigRational) -> Self {
        let upper = BigInt::from(3) << n.min(24 - n);
        let three_n = BigRational::from_integer(Pow::pow(BigInt::from(3), n));
        let two_n = BigRational::from_integer(BigInt::one() << n);
        let lower = three_n / (two_n * &b_n * &b_n);
        let strict = BigRational::from_integer(upper.clone()) < lower;
        BoundsRow {
            n,
            b_n,
            upper,
            lower,
            strict,
        }
    }

    pub fn equal(&self) -> bool {
        BigRational::from_integer(self.upper.clone()) == self.lower
    }

    /// `{n, b_n, upper, lower_num, lower_den, strict}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "b_n": rational_string(&self.b_n),
            "upper": self.upper.to_string(),
            "lower_num": self.lower.numer().to_string(),
            "lower_den": self.lower.denom().to_string(),
            "strict": self.strict,
        })
    }
}

/// The table with printed values and with inflated values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContradictionTable {
    pub rows: Vec<BoundsRow>,
    pub safety_factor: BigRational,
    pub inflated_rows: Vec<BoundsRow>,
}

impl ContradictionTable {
    /// Equality at `n = 1`, strict inequality for `2 <= n <= 21`.
    pub fn verdict(&self) -> bool {
        rows_verdict(&self.rows, true)
    }

    /// The strict inequalities for `2 <= n <= 21` with inflated `b_n`.
    /// An inflated `b_1` necessarily breaks the equality, so `n = 1` is
    /// not part of this verdict.
    pub fn inflated_verdict(&self) -> bool {
        rows_verdict(&self.inflated_rows, false)
    }
}

fn rows_verdict(rows: &[BoundsRow], with_equality: bool) -> bool {
    rows.len() == 21
        && rows.iter().all(|r| match r.n {
            1 => !with_equality || r.equal(),
            _ => r.strict,
        })
}

fn table_rows(factor: &BigRational) -> Result<Vec<BoundsRow>> {
    TABLE_RANKS
        .into_par_iter()
        .map(|n| Ok(BoundsRow::new(n, rogers_bound(n)? * factor)))
        .collect()
}

/// Comparison with the default safety factor.
pub fn contradiction_table() -> ContradictionTable {
    contradiction_table_with(&default_safety_factor()).expect("factor is at least 1")
}

/// Fails with `InvalidBound` if `safety_factor < 1`.
pub fn contradiction_table_with(safety_factor: &BigRational) -> Result<ContradictionTable> {
    if *safety_factor < BigRational::one() {
        return Err(LatticeError::InvalidBound(format!(
            "safety factor {} below 1",
            rational_string(safety_factor)
        )));
    }
    Ok(ContradictionTable {
        rows: table_rows(&BigRational::one())?,
        safety_factor: safety_factor.clone(),
        inflated_rows: table_rows(safety_factor)?,
    })
}
