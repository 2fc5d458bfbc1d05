//! Named lattices.
//!
//! Sign convention: `E8`, `A2` and the Leech lattice are negative definite.

pub mod golay;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

pub use golay::{make_golay, GolayCode};

use crate::error::{LatticeError, Result};
use crate::exact::{hnf, IntMatrix};
use crate::lattice::{Definiteness, Lattice};
use crate::reduction::{EnumOptions, Enumerator};

/// Hyperbolic plane `[[0,1],[1,0]]`.
pub fn make_u() -> Lattice {
    Lattice::from_rows(&[[0, 1], [1, 0]])
        .expect("valid gram")
        .with_label("U")
}

/// `A2` with Gram `[[-2,1],[1,-2]]`.
pub fn make_a2() -> Lattice {
    Lattice::from_rows(&[[-2, 1], [1, -2]])
        .expect("valid gram")
        .with_label("A2")
}

/// Negated Cartan matrix of `E8`, Bourbaki numbering (node 2 attached to node 4).
pub fn make_e8() -> Lattice {
    let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    let mut g = [[0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for (a, b) in edges {
        g[a][b] = 1;
        g[b][a] = 1;
    }
    Lattice::from_rows(&g).expect("valid gram").with_label("E8")
}

/// Coordinate layout of `L = 3U + 2E8 + A2`.
pub mod og10_layout {
    /// First coordinate of each `U` summand.
    pub const U_OFFSETS: [usize; 3] = [0, 2, 4];
    /// First coordinate of each `E8` summand.
    pub const E8_OFFSETS: [usize; 2] = [6, 14];
    pub const A2_OFFSET: usize = 22;
    pub const RANK: usize = 24;
}

/// `L = U + U + U + E8 + E8 + A2`, signature `(3, 21)`, determinant 3.
pub fn make_og10_l() -> Lattice {
    let u = make_u();
    let e8 = make_e8();
    u.direct_sum(&u)
        .direct_sum(&u)
        .direct_sum(&e8)
        .direct_sum(&e8)
        .direct_sum(&make_a2())
        .with_label("L")
}

/// The Leech lattice together with the coordinates it was built from.
#[derive(Clone, Debug)]
pub struct LeechModel {
    /// Negative definite Gram.
    pub lattice: Lattice,
    /// Basis rows as integer vectors in `Z^24`; the form is `-(x . y) / 8`.
    pub coordinates: IntMatrix,
    pub golay: GolayCode,
}

/// Generators of the Golay-code model of the Leech lattice in `Z^24`:
/// `2c` for the code generators, `4e_0 + 4e_j`, `8e_0`, and `(-3, 1^23)`.
fn leech_generators(code: &GolayCode) -> IntMatrix {
    let mut rows: Vec<[i64; 24]> = Vec::new();
    for bits in code.generator_matrix() {
        let mut r = [0i64; 24];
        for (x, b) in r.iter_mut().zip(bits) {
            *x = 2 * i64::from(b);
        }
        rows.push(r);
    }
    for j in 1..24 {
        let mut r = [0i64; 24];
        r[0] = 4;
        r[j] = 4;
        rows.push(r);
    }
    let mut r = [0i64; 24];
    r[0] = 8;
    rows.push(r);
    let mut r = [1i64; 24];
    r[0] = -3;
    rows.push(r);
    IntMatrix::from_rows(&rows)
}

/// Membership test for the coordinate model.
pub fn in_leech_coordinates(code: &GolayCode, x: &[BigInt]) -> bool {
    if x.len() != 24 {
        return false;
    }
    let parity = x[0].is_odd();
    if x.iter().any(|c| c.is_odd() != parity) {
        return false;
    }
    let sum: BigInt = x.iter().sum();
    let target = if parity { 4 } else { 0 };
    if sum.mod_floor(&BigInt::from(8)) != BigInt::from(target) {
        return false;
    }
    // positions congruent to each residue mod 4 form a codeword
    let four = BigInt::from(4);
    (0..4).all(|k| {
        let word = x
            .iter()
            .enumerate()
            .filter(|(_, c)| c.mod_floor(&four) == BigInt::from(k))
            .fold(0u32, |acc, (i, _)| acc | 1 << i);
        code.contains(word)
    })
}

fn build_leech() -> Result<LeechModel> {
    let golay = make_golay();
    golay.validate()?;
    let gens = leech_generators(&golay);
    let (h, _) = hnf(&gens);
    let nonzero: Vec<usize> = (0..h.rows()).filter(|&i| !h.row_is_zero(i)).collect();
    let coordinates = h.select_rows(&nonzero);
    if coordinates.rows() != 24 {
        return Err(LatticeError::SelfCheck(format!(
            "Leech generators have rank {}",
            coordinates.rows()
        )));
    }
    for row in coordinates.row_iter() {
        if !in_leech_coordinates(&golay, row) {
            return Err(LatticeError::SelfCheck(
                "basis vector outside the model".into(),
            ));
        }
    }
    let dots = coordinates.mul(&coordinates.transpose())?;
    let eight = BigInt::from(8);
    if dots.entries().iter().any(|x| !x.is_multiple_of(&eight)) {
        return Err(LatticeError::SelfCheck(
            "Leech pairings not integral".into(),
        ));
    }
    let gram = IntMatrix::new(
        24,
        24,
        dots.entries().iter().map(|x| -(x / &eight)).collect(),
    )?;
    let lattice = Lattice::new(gram)?.with_label("Leech");
    verify_leech_invariants(&lattice)?;
    Ok(LeechModel {
        lattice,
        coordinates,
        golay,
    })
}

/// Even, unimodular, negative definite, rank 24, no vectors of norm `-2`.
pub fn verify_leech_invariants(l: &Lattice) -> Result<()> {
    if l.rank() != 24 {
        return Err(LatticeError::SelfCheck(format!("Leech rank {}", l.rank())));
    }
    if !l.is_even() {
        return Err(LatticeError::SelfCheck("Leech model is not even".into()));
    }
    if !l.abs_det().is_one() {
        return Err(LatticeError::SelfCheck(format!(
            "Leech determinant {}",
            l.det()
        )));
    }
    if l.definiteness() != Definiteness::Negative {
        return Err(LatticeError::SelfCheck(
            "Leech model is not negative definite".into(),
        ));
    }
    let e = Enumerator::new(l, &EnumOptions::default())?;
    if e.exists_within(2)? {
        return Err(LatticeError::SelfCheck("Leech model has roots".into()));
    }
    Ok(())
}

static LEECH: OnceLock<std::result::Result<LeechModel, LatticeError>> = OnceLock::new();

/// The memoized, self-verified Leech model.
pub fn leech_model() -> Result<&'static LeechModel> {
    LEECH
        .get_or_init(build_leech)
        .as_ref()
        .map_err(Clone::clone)
}

/// The Leech lattice (negative definite).
pub fn make_leech() -> Result<Lattice> {
    Ok(leech_model()?.lattice.clone())
}

/// `Leech + U`, the even unimodular lattice of signature `(1, 25)`.
pub fn make_lambda_1_25() -> Result<Lattice> {
    Ok(make_leech()?
        .direct_sum(&make_u())
        .with_label("Lambda_{1,25}"))
}

/// Names accepted by [`by_name`].
pub const NAMES: [&str; 6] = ["u", "a2", "e8", "og10", "leech", "lambda125"];

/// Looks up a named lattice.
pub fn by_name(name: &str) -> Result<Lattice> {
    match name.to_ascii_lowercase().as_str() {
        "u" => Ok(make_u()),
        "a2" => Ok(make_a2()),
        "e8" => Ok(make_e8()),
        "og10" | "l" => Ok(make_og10_l()),
        "leech" => make_leech(),
        "lambda125" => make_lambda_1_25(),
        other => Err(LatticeError::Parse(format!(
            "unknown lattice name {other:?}"
        ))),
    }
}

/// `x -> x * perm` applied to the Leech coordinate model, expressed as an
/// integer matrix on the Leech basis (row convention).
pub fn leech_permutation_matrix(perm: &[usize; 24]) -> Result<IntMatrix> {
    let model = leech_model()?;
    if !golay::is_permutation(perm) {
        return Err(LatticeError::Precondition("not a permutation".into()));
    }
    let b = &model.coordinates;
    // permuted basis rows: coordinate i moves to perm[i]
    let mut permuted = IntMatrix::zeros(24, 24);
    for r in 0..24 {
        for (i, &p) in perm.iter().enumerate() {
            permuted[(r, p)] = b[(r, i)].clone();
        }
    }
    let inv = b.to_rational().inverse()?;
    let m = permuted.to_rational().mul(&inv)?;
    m.to_integer().ok_or_else(|| {
        LatticeError::SelfCheck("permutation does not preserve the Leech model".into())
    })
}
