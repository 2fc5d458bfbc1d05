//! Exhaustive short-vector enumeration for definite lattices.
//!
//! Fincke-Pohst branch and bound over the LLL-reduced basis, carried out in
//! integer arithmetic only. With `D_k` the leading principal minors and
//! `lambda` the integral Gram-Schmidt coefficients of the reduced Gram `G`,
//! define for the partial vector `(x_i, .., x_{n-1})`
//!
//! ```text
//! b_i = sum_{j > i} lambda[j][i] * x_j
//! q_i = (D_i * q_{i+1} + (D_{i+1} * x_i + b_i)^2) / D_{i+1}      (exact)
//! ```
//!
//! Then `q_i = D_i * min{ x G x^T : x_0 .. x_{i-1} real }`, `q_0 = x G x^T`,
//! and the branch at level `i` is feasible iff
//! `(D_{i+1} x_i + b_i)^2 <= D_i * (D_{i+1} R - q_{i+1})`. The admissible
//! `x_i` form an interval given by one integer square root, so the search is
//! complete with no rounding anywhere.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use super::lll::{default_delta, lll, IntegralGramSchmidt};
use crate::error::{LatticeError, Result};
use crate::exact::IntMatrix;
use crate::lattice::{Lattice, LatticeVector};

/// Nonzero vectors of `|norm| <= bound`, one per `±` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortVectorReport {
    pub bound: u64,
    /// Coordinates in the input basis, first nonzero entry positive,
    /// sorted lexicographically.
    pub vectors: Vec<LatticeVector>,
    /// `|norm| -> count`, counting both signs.
    pub counts_by_norm: BTreeMap<u64, u64>,
}

impl ShortVectorReport {
    pub fn total_pairs(&self) -> usize {
        self.vectors.len()
    }

    pub fn total_vectors(&self) -> u64 {
        self.counts_by_norm.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn min_norm(&self) -> Option<u64> {
        self.counts_by_norm.keys().next().copied()
    }
}

/// Knobs for [`Enumerator`].
#[derive(Clone, Debug)]
pub struct EnumOptions {
    /// LLL-reduce before searching.
    pub reduce: bool,
    /// Worker count; `None` uses the global rayon pool, `Some(1)` runs inline.
    pub threads: Option<usize>,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            reduce: true,
            threads: None,
        }
    }
}

/// Integer type the search runs in.
trait SearchInt: Clone + Ord + Integer + Signed + Roots + Send + Sync + 'static {
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl SearchInt for i128 {
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i128()
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl SearchInt for BigInt {
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Precomputed search data for one definite lattice.
#[derive(Clone, Debug)]
pub struct Enumerator {
    rank: usize,
    /// Positive definite reduced Gram.
    gram: IntMatrix,
    /// Rows: reduced basis in input coordinates.
    transform: IntMatrix,
    gs: IntegralGramSchmidt,
    /// `(G^{-1})_{jj}` as (numerator, denominator), for coordinate bounds.
    dual_diag: Vec<(BigInt, BigInt)>,
    threads: Option<usize>,
}

struct Plan<T> {
    n: usize,
    radius: T,
    minors: Vec<T>,
    lambda: Vec<Vec<T>>,
    transform: Vec<Vec<T>>,
}

impl Enumerator {
    pub fn new(a: &Lattice, opts: &EnumOptions) -> Result<Self> {
        let positive = a.positive_definite_model()?;
        let (gram, transform) = if opts.reduce && positive.rank() > 1 {
            let (r, t) = lll(&positive, &default_delta())?;
            (r.gram().clone(), t)
        } else {
            (
                positive.gram().clone(),
                IntMatrix::identity(positive.rank()),
            )
        };
        let gs = IntegralGramSchmidt::new(&gram)?;
        let inv = gram.to_rational().inverse()?;
        let dual_diag = (0..gram.rows())
            .map(|j| (inv[(j, j)].numer().clone(), inv[(j, j)].denom().clone()))
            .collect();
        Ok(Enumerator {
            rank: gram.rows(),
            gram,
            transform,
            gs,
            dual_diag,
            threads: opts.threads,
        })
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank).all(|i| self.gram[(i, i)].is_even())
    }

    /// The positive definite Gram the search runs on.
    pub fn reduced_gram(&self) -> &IntMatrix {
        &self.gram
    }

    /// `|x_j| <= sqrt(R * (G^{-1})_{jj})` for every vector of norm at most `R`.
    fn coordinate_bounds(&self, radius: &BigInt) -> Vec<BigInt> {
        self.dual_diag
            .iter()
            .map(|(num, den)| (radius * num / den).sqrt() + 1)
            .collect()
    }

    fn fits_in_i128(&self, radius: &BigInt) -> bool {
        let limit = BigInt::one() << 120;
        let n = self.rank;
        let xmax = self.coordinate_bounds(radius);
        let d = &self.gs.minors;
        for i in 0..n {
            if &d[i] * &d[i + 1] * radius * 4 >= limit {
                return false;
            }
            let b: BigInt = (i + 1..n)
                .map(|j| self.gs.lambda[j][i].abs() * &xmax[j])
                .sum();
            if (&b + &d[i + 1] * &xmax[i]) * 4 >= limit {
                return false;
            }
        }
        let tmax = self.transform.max_abs();
        let xsum: BigInt = xmax.iter().sum();
        tmax * xsum * 4 < limit
    }

    fn plan<T: SearchInt>(&self, radius: &BigInt) -> Plan<T> {
        let conv = |x: &BigInt| T::from_big(x).expect("bounds checked");
        let n = self.rank;
        Plan {
            n,
            radius: conv(radius),
            minors: self.gs.minors.iter().map(conv).collect(),
            lambda: self
                .gs
                .lambda
                .iter()
                .map(|row| row.iter().map(conv).collect())
                .collect(),
            transform: (0..n)
                .map(|i| self.transform.row(i).iter().map(conv).collect())
                .collect(),
        }
    }

    /// Full report of vectors with `0 < |norm| <= bound`.
    pub fn short_vectors(&self, bound: u64) -> Result<ShortVectorReport> {
        check_bound(bound)?;
        let radius = BigInt::from(bound);
        let mut found = if self.fits_in_i128(&radius) {
            self.collect::<i128>(&radius)
        } else {
            self.collect::<BigInt>(&radius)
        };
        found.sort_unstable();
        let mut counts_by_norm = BTreeMap::new();
        let mut vectors = Vec::with_capacity(found.len());
        for (coords, norm) in found {
            *counts_by_norm.entry(norm).or_insert(0) += 2;
            vectors.push(LatticeVector::new(coords));
        }
        Ok(ShortVectorReport {
            bound,
            vectors,
            counts_by_norm,
        })
    }

    /// Whether some nonzero vector has `|norm| <= bound`; stops at the first hit.
    pub fn exists_within(&self, bound: u64) -> Result<bool> {
        check_bound(bound)?;
        let radius = BigInt::from(bound);
        Ok(if self.fits_in_i128(&radius) {
            self.any::<i128>(&radius)
        } else {
            self.any::<BigInt>(&radius)
        })
    }

    fn collect<T: SearchInt>(&self, radius: &BigInt) -> Vec<(Vec<BigInt>, u64)> {
        let plan = self.plan::<T>(radius);
        let work = |top: Option<T>| {
            let mut out = Vec::new();
            walk(&plan, top, &mut |x: &[T], norm: &T| {
                out.push(plan.canonical(x, norm));
                ControlFlow::Continue(())
            });
            out
        };
        let tops = plan.top_values();
        self.run(|| {
            if tops.is_empty() {
                return Vec::new();
            }
            tops.into_par_iter()
                .flat_map_iter(|t| work(Some(t)))
                .collect()
        })
    }

    fn any<T: SearchInt>(&self, radius: &BigInt) -> bool {
        let plan = self.plan::<T>(radius);
        let tops = plan.top_values();
        self.run(|| {
            tops.into_par_iter().any(|t| {
                let mut hit = false;
                walk(&plan, Some(t), &mut |_: &[T], _: &T| {
                    hit = true;
                    ControlFlow::Break(())
                });
                hit
            })
        })
    }

    fn run<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match self.threads {
            None => f(),
            Some(k) => rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .expect("thread pool")
                .install(f),
        }
    }
}

impl<T: SearchInt> Plan<T> {
    /// Admissible values of the top coordinate, nonnegative by sign symmetry.
    fn top_values(&self) -> Vec<T> {
        if self.n == 0 {
            return Vec::new();
        }
        let zero = T::zero();
        let (lo, hi) = self.range(self.n - 1, &zero, &zero);
        let mut out = Vec::new();
        let mut x = if lo < zero { zero } else { lo };
        while x <= hi {
            out.push(x.clone());
            x = x + T::one();
        }
        out
    }

    /// Interval of `x_i` given `b_i` and `q_{i+1}`.
    fn range(&self, i: usize, b: &T, q_next: &T) -> (T, T) {
        let d_lo = &self.minors[i];
        let d_hi = &self.minors[i + 1];
        let slack = d_hi.clone() * self.radius.clone() - q_next.clone();
        let w = d_lo.clone() * slack;
        if w < T::zero() {
            return (T::one(), T::zero());
        }
        let s = w.sqrt();
        let neg_b = -b.clone();
        let lo = ceil_div(neg_b.clone() - s.clone(), d_hi);
        let hi = (neg_b + s).div_floor(d_hi);
        (lo, hi)
    }

    /// Input-basis coordinates with first nonzero entry positive.
    fn canonical(&self, y: &[T], norm: &T) -> (Vec<BigInt>, u64) {
        let mut x = vec![T::zero(); self.n];
        for (yi, row) in y.iter().zip(&self.transform) {
            if yi.is_zero() {
                continue;
            }
            for (xj, tij) in x.iter_mut().zip(row) {
                *xj = xj.clone() + yi.clone() * tij.clone();
            }
        }
        let flip = x
            .iter()
            .find(|v| !v.is_zero())
            .is_some_and(|v| v.is_negative());
        let coords = x
            .into_iter()
            .map(|v| if flip { (-v).to_big() } else { v.to_big() })
            .collect();
        let norm = norm.to_big().to_u64().expect("norm below bound");
        (coords, norm)
    }
}

fn ceil_div<T: SearchInt>(a: T, b: &T) -> T {
    -((-a).div_floor(b))
}

/// Depth-first search below a fixed top coordinate (or the whole tree when
/// `top` is `None`). Only vectors whose last nonzero coordinate is positive
/// are visited.
fn walk<T: SearchInt, F>(plan: &Plan<T>, top: Option<T>, visit: &mut F)
where
    F: FnMut(&[T], &T) -> ControlFlow<()>,
{
    let n = plan.n;
    if n == 0 {
        return;
    }
    let mut x = vec![T::zero(); n];
    let top_level = n - 1;
    let values = match top {
        Some(t) => vec![t],
        None => plan.top_values(),
    };
    for t in values {
        let e = plan.minors[n].clone() * t.clone();
        let e = e.clone() * e;
        // q_{n-1} = (D_{n-1} * 0 + e) / D_n
        let q = e / plan.minors[n].clone();
        let positive = !t.is_zero();
        x[top_level] = t;
        if descend(plan, top_level, &q, positive, &mut x, visit).is_break() {
            return;
        }
    }
}

fn descend<T: SearchInt, F>(
    plan: &Plan<T>,
    level: usize,
    q: &T,
    seen_nonzero: bool,
    x: &mut [T],
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[T], &T) -> ControlFlow<()>,
{
    if level == 0 {
        if seen_nonzero {
            return visit(x, q);
        }
        return ControlFlow::Continue(());
    }
    let i = level - 1;
    let mut b = T::zero();
    for j in level..plan.n {
        if !x[j].is_zero() {
            b = b + plan.lambda[j][i].clone() * x[j].clone();
        }
    }
    let (mut lo, hi) = plan.range(i, &b, q);
    if !seen_nonzero && lo < T::zero() {
        lo = T::zero();
    }
    let d_lo = &plan.minors[i];
    let d_hi = &plan.minors[i + 1];
    let mut xi = lo;
    while xi <= hi {
        let r = d_hi.clone() * xi.clone() + b.clone();
        let q_i = (d_lo.clone() * q.clone() + r.clone() * r) / d_hi.clone();
        let nonzero = seen_nonzero || !xi.is_zero();
        x[i] = xi.clone();
        descend(plan, i, &q_i, nonzero, x, visit)?;
        xi = xi + T::one();
    }
    x[i] = T::zero();
    ControlFlow::Continue(())
}

fn check_bound(bound: u64) -> Result<()> {
    if bound == 0 || bound % 2 == 1 {
        return Err(LatticeError::InvalidBound(bound.to_string()));
    }
    Ok(())
}

/// All nonzero vectors with `|norm| <= bound` of a definite lattice.
pub fn short_vectors(a: &Lattice, bound: u64) -> Result<ShortVectorReport> {
    Enumerator::new(a, &EnumOptions::default())?.short_vectors(bound)
}

/// Least `|norm|` of a nonzero vector; the bound doubles from 2 until the
/// ball is nonempty, then steps up by 2 inside the last gap.
pub fn minimal_norm(a: &Lattice) -> Result<u64> {
    if a.rank() == 0 {
        // still reject indefinite input consistently
        return Err(LatticeError::Precondition(
            "rank 0 lattice has no minimal norm".into(),
        ));
    }
    let e = Enumerator::new(a, &EnumOptions::default())?;
    minimal_norm_with(&e)
}

pub fn minimal_norm_with(e: &Enumerator) -> Result<u64> {
    let mut lo = 0u64;
    let mut hi = 2u64;
    while !e.exists_within(hi)? {
        lo = hi;
        hi *= 2;
    }
    let mut b = lo + 2;
    while b < hi && !e.exists_within(b)? {
        b += 2;
    }
    if e.is_even() {
        return Ok(b);
    }
    // odd lattices: the minimum is b - 1 or b
    let report = e.short_vectors(b)?;
    Ok(report.min_norm().expect("ball is nonempty"))
}

/// Vectors of `|norm| = 2`, both signs.
pub fn count_roots(a: &Lattice) -> Result<u64> {
    if a.rank() == 0 {
        a.positive_definite_model()?;
        return Ok(0);
    }
    let report = short_vectors(a, 2)?;
    Ok(report.counts_by_norm.get(&2).copied().unwrap_or(0))
}

/// Vectors at the minimal norm, both signs.
pub fn kissing_number(a: &Lattice) -> Result<u64> {
    let e = Enumerator::new(a, &EnumOptions::default())?;
    let mu = minimal_norm_with(&e)?;
    let bound = mu + mu % 2;
    let report = e.short_vectors(bound)?;
    Ok(report.counts_by_norm.get(&mu).copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_a2, make_e8};

    #[test]
    fn e8_roots() {
        let r = short_vectors(&make_e8(), 2).unwrap();
        assert_eq!(r.total_pairs(), 120);
        assert_eq!(r.counts_by_norm.get(&2), Some(&240));
        assert_eq!(count_roots(&make_e8()).unwrap(), 240);
        assert_eq!(kissing_number(&make_e8()).unwrap(), 240);
    }

    #[test]
    fn a2_roots() {
        let r = short_vectors(&make_a2(), 2).unwrap();
        assert_eq!(r.total_pairs(), 3);
        assert_eq!(count_roots(&make_a2()).unwrap(), 6);
        for v in &r.vectors {
            assert_eq!(make_a2().norm(v).unwrap(), BigInt::from(-2));
        }
    }

    #[test]
    fn minimal_norms() {
        assert_eq!(minimal_norm(&make_e8()).unwrap(), 2);
        assert_eq!(minimal_norm(&make_e8().rescale(2).unwrap()).unwrap(), 4);
        let six = Lattice::from_rows(&[[-6]]).unwrap();
        assert_eq!(minimal_norm(&six).unwrap(), 6);
        assert_eq!(kissing_number(&six).unwrap(), 2);
        let odd = Lattice::from_rows(&[[5]]).unwrap();
        assert_eq!(minimal_norm(&odd).unwrap(), 5);
        let three = Lattice::from_rows(&[[3]]).unwrap();
        assert_eq!(minimal_norm(&three).unwrap(), 3);
    }

    #[test]
    fn rejects_indefinite_and_bad_bounds() {
        let u = Lattice::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert!(matches!(
            short_vectors(&u, 2),
            Err(LatticeError::Indefinite { .. })
        ));
        assert!(matches!(
            count_roots(&u),
            Err(LatticeError::Indefinite { .. })
        ));
        assert!(matches!(
            short_vectors(&make_e8(), 3),
            Err(LatticeError::InvalidBound(_))
        ));
        assert!(short_vectors(&make_e8(), 0).is_err());
    }

    #[test]
    fn thread_count_does_not_change_report() {
        let l = make_e8().direct_sum(&make_a2());
        let one = Enumerator::new(
            &l,
            &EnumOptions {
                reduce: true,
                threads: Some(1),
            },
        )
        .unwrap()
        .short_vectors(6)
        .unwrap();
        let four = Enumerator::new(
            &l,
            &EnumOptions {
                reduce: true,
                threads: Some(4),
            },
        )
        .unwrap()
        .short_vectors(6)
        .unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn bigint_fallback_matches() {
        let e = Enumerator::new(&make_e8(), &EnumOptions::default()).unwrap();
        let r = BigInt::from(4);
        let mut a = e.collect::<i128>(&r);
        let mut b = e.collect::<BigInt>(&r);
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(a.len(), (240 + 2160) / 2);
    }
}
