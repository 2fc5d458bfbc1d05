//! Random inputs and independent oracles shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use og10_lattice::exact::{det_exact, IntMatrix};
use og10_lattice::Lattice;
use rand::Rng;

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, range: i64) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-range..=range)).collect())
        .collect();
    if rows == 0 {
        return IntMatrix::zeros(0, cols);
    }
    IntMatrix::from_rows(&data)
}

/// `B B^T` for a random nonsingular `B`, negated with probability 1/2.
pub fn random_definite(rng: &mut impl Rng, n: usize, range: i64) -> Lattice {
    loop {
        let b = random_matrix(rng, n, n, range);
        if det_exact(&b).unwrap().is_zero() {
            continue;
        }
        let g = b.mul(&b.transpose()).unwrap();
        let g = if rng.gen_bool(0.5) { g.neg() } else { g };
        return Lattice::new(g).unwrap();
    }
}

/// Random nondegenerate symmetric matrix with even diagonal.
pub fn random_even(rng: &mut impl Rng, n: usize, range: i64) -> Lattice {
    loop {
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            g[i][i] = 2 * rng.gen_range(-range..=range);
            for j in 0..i {
                let x = rng.gen_range(-range..=range);
                g[i][j] = x;
                g[j][i] = x;
            }
        }
        if let Ok(l) = Lattice::from_rows(&g) {
            return l;
        }
    }
}

/// Coordinate box `|x_j| <= floor(sqrt(R (G^{-1})_jj))` for the positive
/// model; it contains every vector of norm at most `R`.
pub fn certified_box(positive: &IntMatrix, radius: u64) -> Vec<i64> {
    let inv = positive.to_rational().inverse().unwrap();
    (0..positive.rows())
        .map(|j| {
            let r = &inv[(j, j)] * BigInt::from(radius);
            let floor = r.numer() / r.denom();
            floor.sqrt().to_i64().unwrap()
        })
        .collect()
}

pub fn box_size(b: &[i64]) -> u64 {
    b.iter().map(|&x| 2 * x as u64 + 1).product()
}

/// Brute-force `|norm| -> count` (both signs) over the certified box.
pub fn brute_force_counts(a: &Lattice, radius: u64) -> BTreeMap<u64, u64> {
    let positive = a.positive_definite_model().unwrap();
    let n = positive.rank();
    let g: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| positive.gram()[(i, j)].to_i64().unwrap())
                .collect()
        })
        .collect();
    let bounds = certified_box(positive.gram(), radius);
    let mut counts = BTreeMap::new();
    let mut x: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        if x.iter().any(|&c| c != 0) {
            let mut norm = 0i64;
            for i in 0..n {
                for j in 0..n {
                    norm += x[i] * g[i][j] * x[j];
                }
            }
            if norm as u64 <= radius {
                *counts.entry(norm as u64).or_insert(0) += 1;
            }
        }
        // odometer step
        let mut k = 0;
        loop {
            if k == n {
                return counts;
            }
            if x[k] < bounds[k] {
                x[k] += 1;
                break;
            }
            x[k] = -bounds[k];
            k += 1;
        }
    }
}

/// Row Hermite normal form shape: positive pivots moving strictly right,
/// entries above each pivot reduced into `[0, pivot)`, zero rows last.
pub fn is_row_hnf(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero = false;
    for i in 0..h.rows() {
        let row = h.row(i);
        match row.iter().position(|x| !x.is_zero()) {
            None => seen_zero = true,
            Some(p) => {
                if seen_zero || last_pivot.is_some_and(|q| p <= q) {
                    return false;
                }
                let pivot = &row[p];
                if *pivot <= BigInt::zero() {
                    return false;
                }
                for k in 0..i {
                    let above = &h[(k, p)];
                    if *above < BigInt::zero() || above >= pivot {
                        return false;
                    }
                }
                last_pivot = Some(p);
            }
        }
    }
    true
}

/// Nonnegative diagonal with `d_i | d_{i+1}`; zeros only at the end.
pub fn is_smith_form(d: &IntMatrix) -> bool {
    let k = d.rows().min(d.cols());
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            if i != j && !d[(i, j)].is_zero() {
                return false;
            }
        }
    }
    for i in 0..k {
        if d[(i, i)] < BigInt::zero() {
            return false;
        }
        if i + 1 < k {
            let (a, b) = (&d[(i, i)], &d[(i + 1, i + 1)]);
            if a.is_zero() && !b.is_zero() {
                return false;
            }
            if !a.is_zero() && !(b % a).is_zero() {
                return false;
            }
        }
    }
    true
}

pub fn is_unimodular_matrix(u: &IntMatrix) -> bool {
    u.is_square()
        && det_exact(u)
            .map(|d| d == BigInt::from(1) || d == BigInt::from(-1))
            .unwrap_or(false)
}
