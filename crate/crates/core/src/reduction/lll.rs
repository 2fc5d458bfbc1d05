//! Integral LLL on a Gram matrix.
//!
//! Works entirely with the integer Gram-Schmidt data `d_k` (leading
//! principal minors) and `lambda_{k,j} = d_{j+1} * mu_{k,j}`, so every
//! division is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{LatticeError, Result};
use crate::exact::IntMatrix;
use crate::lattice::Lattice;

/// Integer Gram-Schmidt data of a positive definite Gram matrix.
///
/// `minors[k]` is the determinant of the leading `k x k` block
/// (`minors[0] = 1`), and `lambda[k][j]` for `j < k` is
/// `minors[j + 1] * mu_{k,j}`; both are integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralGramSchmidt {
    pub minors: Vec<BigInt>,
    pub lambda: Vec<Vec<BigInt>>,
}

impl IntegralGramSchmidt {
    /// Fails with `Degenerate` if a leading minor vanishes.
    pub fn new(gram: &IntMatrix) -> Result<Self> {
        let n = gram.rows();
        let mut minors = vec![BigInt::zero(); n + 1];
        minors[0] = BigInt::one();
        let mut lambda = vec![vec![BigInt::zero(); n]; n];
        for k in 0..n {
            for j in 0..=k {
                let mut u = gram[(k, j)].clone();
                for i in 0..j {
                    u = (&minors[i + 1] * &u - &lambda[k][i] * &lambda[j][i]) / &minors[i];
                }
                if j < k {
                    lambda[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(LatticeError::Degenerate);
                    }
                    minors[k + 1] = u;
                }
            }
        }
        Ok(IntegralGramSchmidt { minors, lambda })
    }
}

/// The LLL parameter `3/4`.
pub fn default_delta() -> BigRational {
    BigRational::new(3.into(), 4.into())
}

/// LLL-reduces a definite lattice.
///
/// Returns the reduced lattice and the unimodular `T` with
/// `reduced.gram = T * G * T^T`. A negative definite input is reduced
/// through its negative and returned with its original sign.
pub fn lll(a: &Lattice, delta: &BigRational) -> Result<(Lattice, IntMatrix)> {
    let quarter = BigRational::new(1.into(), 4.into());
    if *delta <= quarter || *delta >= BigRational::one() {
        return Err(LatticeError::InvalidDelta);
    }
    let (pos, neg) = a.signature();
    let negative = match (pos, neg) {
        (_, 0) => false,
        (0, _) => true,
        _ => return Err(LatticeError::Indefinite { pos, neg }),
    };
    let gram = if negative {
        a.gram().neg()
    } else {
        a.gram().clone()
    };
    let (reduced, t) = lll_gram(&gram, delta)?;
    let reduced = if negative { reduced.neg() } else { reduced };
    let mut out = Lattice::new(reduced)?;
    if let Some(l) = a.label() {
        out = out.with_label(l);
    }
    Ok((out, t))
}

/// LLL on a positive definite Gram matrix; returns `(T G T^T, T)`.
pub fn lll_gram(gram: &IntMatrix, delta: &BigRational) -> Result<(IntMatrix, IntMatrix)> {
    let n = gram.rows();
    let mut g = gram.clone();
    let mut t = IntMatrix::identity(n);
    if n <= 1 {
        return Ok((g, t));
    }
    let p = delta.numer().clone();
    let q = delta.denom().clone();

    // 1-based working arrays, following the textbook integral algorithm
    let gs = IntegralGramSchmidt::new(&g)?;
    let mut d = gs.minors;
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for k in 0..n {
        for j in 0..k {
            lam[k + 1][j + 1] = gs.lambda[k][j].clone();
        }
    }

    let mut k = 2;
    while k <= n {
        reduce(k, k - 1, &mut g, &mut t, &d, &mut lam);
        let l = &lam[k][k - 1];
        let lhs = &q * (&d[k] * &d[k - 2] + l * l);
        let rhs = &p * &d[k - 1] * &d[k - 1];
        if lhs < rhs {
            swap(k, n, &mut g, &mut t, &mut d, &mut lam);
            k = (k - 1).max(2);
        } else {
            for l in (1..k - 1).rev() {
                reduce(k, l, &mut g, &mut t, &d, &mut lam);
            }
            k += 1;
        }
    }
    Ok((g, t))
}

fn reduce(
    k: usize,
    l: usize,
    g: &mut IntMatrix,
    t: &mut IntMatrix,
    d: &[BigInt],
    lam: &mut [Vec<BigInt>],
) {
    let two_lam: BigInt = &lam[k][l] * 2;
    if two_lam.abs() <= d[l] {
        return;
    }
    // nearest integer to lam / d
    let r = (two_lam + &d[l]).div_floor(&(&d[l] * 2));
    let (kk, ll) = (k - 1, l - 1);
    t.row_sub_mul(kk, ll, &r);
    g.row_sub_mul(kk, ll, &r);
    g.col_sub_mul(kk, ll, &r);
    lam[k][l] -= &r * &d[l];
    for i in 1..l {
        let s = &r * &lam[l][i];
        lam[k][i] -= s;
    }
}

fn swap(
    k: usize,
    n: usize,
    g: &mut IntMatrix,
    t: &mut IntMatrix,
    d: &mut [BigInt],
    lam: &mut [Vec<BigInt>],
) {
    t.swap_rows(k - 1, k - 2);
    g.swap_rows(k - 1, k - 2);
    g.swap_cols(k - 1, k - 2);
    for j in 1..k - 1 {
        let tmp = std::mem::take(&mut lam[k][j]);
        lam[k][j] = std::mem::replace(&mut lam[k - 1][j], tmp);
    }
    let l = lam[k][k - 1].clone();
    let b = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
    for i in k + 1..=n {
        let old = lam[i][k].clone();
        lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &old) / &d[k - 1];
        lam[i][k - 1] = (&b * &old + &l * &lam[i][k]) / &d[k];
    }
    d[k - 1] = b;
}

/// Checks size reduction and the Lovász condition exactly.
pub fn is_lll_reduced(gram: &IntMatrix, delta: &BigRational) -> bool {
    let Ok(gs) = IntegralGramSchmidt::new(gram) else {
        return false;
    };
    let n = gram.rows();
    let d = &gs.minors;
    for k in 0..n {
        for j in 0..k {
            // |mu_kj| <= 1/2  <=>  2|lambda_kj| <= d_{j+1}
            if &gs.lambda[k][j].abs() * 2 > d[j + 1] {
                return false;
            }
        }
    }
    for k in 1..n {
        // delta * |b*_{k-1}|^2 <= |b*_k|^2 + mu^2 |b*_{k-1}|^2, cleared of denominators
        let l = &gs.lambda[k][k - 1];
        let lhs = delta.denom() * (&d[k + 1] * &d[k - 1] + l * l);
        let rhs = delta.numer() * &d[k] * &d[k];
        if lhs < rhs {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::det_exact;

    #[test]
    fn reduces_skewed_plane() {
        // basis (1,0),(7,1) of Z^2
        let g = IntMatrix::from_rows(&[[1, 7], [7, 50]]);
        let (r, t) = lll_gram(&g, &default_delta()).unwrap();
        assert_eq!(r, IntMatrix::identity(2));
        assert_eq!(t.mul(&g).unwrap().mul(&t.transpose()).unwrap(), r);
        assert_eq!(det_exact(&t).unwrap().abs(), BigInt::one());
    }

    #[test]
    fn rejects_indefinite_and_bad_delta() {
        let u = Lattice::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert!(matches!(
            lll(&u, &default_delta()),
            Err(LatticeError::Indefinite { .. })
        ));
        let a2 = Lattice::from_rows(&[[-2, 1], [1, -2]]).unwrap();
        let bad = BigRational::new(1.into(), 4.into());
        assert_eq!(lll(&a2, &bad).unwrap_err(), LatticeError::InvalidDelta);
        assert_eq!(
            lll(&a2, &BigRational::one()).unwrap_err(),
            LatticeError::InvalidDelta
        );
    }

    #[test]
    fn keeps_sign_of_negative_definite_input() {
        let a2 = Lattice::from_rows(&[[-2, -1], [-1, -8]]).unwrap();
        let (r, t) = lll(&a2, &default_delta()).unwrap();
        assert_eq!(r.signature(), (0, 2));
        assert_eq!(r.det(), a2.det());
        assert_eq!(
            t.mul(a2.gram()).unwrap().mul(&t.transpose()).unwrap(),
            *r.gram()
        );
        assert!(is_lll_reduced(&r.gram().neg(), &default_delta()));
    }

    #[test]
    fn gram_schmidt_minors() {
        let g = IntMatrix::from_rows(&[[2, -1, 0], [-1, 2, -1], [0, -1, 2]]);
        let gs = IntegralGramSchmidt::new(&g).unwrap();
        let minors: Vec<i64> = gs
            .minors
            .iter()
            .map(|m| i64::try_from(m).unwrap())
            .collect();
        assert_eq!(minors, vec![1, 2, 3, 4]);
    }
}
