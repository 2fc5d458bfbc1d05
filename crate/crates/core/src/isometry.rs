//! Finite-order isometries and their invariant/coinvariant sublattices.
//!
//! Row-vector convention: the isometry with matrix `M` sends the vector with
//! coordinates `x` to `x * M`, and preserves the form iff `M G M^T = G`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{self, golay, og10_layout};
use crate::error::{LatticeError, Result};
use crate::exact::{integral_kernel, IntMatrix};
use crate::lattice::{Lattice, LatticeVector, Sublattice};

/// Default bound for the order search.
pub const DEFAULT_ORDER_CAP: u64 = 120;

/// A validated finite-order isometry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    matrix: IntMatrix,
    lattice: Lattice,
    order: u64,
}

impl Isometry {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        Ok(LatticeVector::new(self.matrix.vec_mul(v.coords())?))
    }

    /// `L^g`: the saturated kernel of `M - I`.
    pub fn invariant_sublattice(&self) -> Sublattice {
        let n = self.lattice.rank();
        let shifted = self
            .matrix
            .sub(&IntMatrix::identity(n))
            .expect("square matrix");
        Sublattice::new(self.lattice.clone(), integral_kernel(&shifted))
            .expect("kernel basis is independent")
    }

    /// `L_g = (L^g)^perp`.
    pub fn coinvariant_sublattice(&self) -> Sublattice {
        self.invariant_sublattice().orthogonal_complement()
    }

    /// `g^k`.
    pub fn power(&self, k: u64) -> Isometry {
        let matrix = self.matrix.pow(k).expect("square matrix");
        let order = self.order / num_integer::gcd(self.order, k);
        Isometry {
            matrix,
            lattice: self.lattice.clone(),
            order,
        }
    }
}

/// Validates `M G M^T = G` and computes the order with the default cap.
pub fn check_isometry(a: &Lattice, m: &IntMatrix) -> Result<Isometry> {
    check_isometry_with_cap(a, m, DEFAULT_ORDER_CAP)
}

pub fn check_isometry_with_cap(a: &Lattice, m: &IntMatrix, cap: u64) -> Result<Isometry> {
    let n = a.rank();
    if m.rows() != n || m.cols() != n {
        return Err(LatticeError::Shape(format!(
            "{}x{} matrix for a rank-{n} lattice",
            m.rows(),
            m.cols()
        )));
    }
    let image = m.mul(a.gram())?.mul(&m.transpose())?;
    if &image != a.gram() {
        return Err(LatticeError::NotIsometry);
    }
    let mut power = m.clone();
    let mut order = 1u64;
    while !power.is_identity() {
        if order >= cap {
            return Err(LatticeError::OrderCapExceeded(cap));
        }
        power = power.mul(m)?;
        order += 1;
    }
    Ok(Isometry {
        matrix: m.clone(),
        lattice: a.clone(),
        order,
    })
}

pub fn invariant_sublattice(g: &Isometry) -> Sublattice {
    g.invariant_sublattice()
}

pub fn coinvariant_sublattice(g: &Isometry) -> Sublattice {
    g.coinvariant_sublattice()
}

/// For an involution: whether `g` is `-1` on `L_g`.
pub fn involution_action_check(g: &Isometry) -> Result<bool> {
    if g.order != 2 {
        return Err(LatticeError::NotInvolution(g.order));
    }
    let co = g.coinvariant_sublattice();
    let image = co.basis().mul(&g.matrix)?;
    Ok(image == co.basis().neg())
}

/// Identity on `3U` and `A2`, exchanging the two `E8` summands of `L`.
pub fn e8_swap_involution() -> Isometry {
    let l = catalog::make_og10_l();
    let n = og10_layout::RANK;
    let [first, second] = og10_layout::E8_OFFSETS;
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..8 {
        perm.swap(first + k, second + k);
    }
    let mut m = IntMatrix::zeros(n, n);
    for (i, &p) in perm.iter().enumerate() {
        m[(i, p)] = BigInt::one();
    }
    check_isometry(&l, &m).expect("block swap preserves the form")
}

/// `x -> x - 2 (x.v) / (v.v) v`, required to be integral.
pub fn reflection_in_vector(a: &Lattice, v: &LatticeVector) -> Result<Isometry> {
    if v.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let norm = a.norm(v)?;
    if norm.is_zero() {
        return Err(LatticeError::Isotropic);
    }
    // row i of M: e_i - (2 (e_i.v) / v^2) v
    let pairings = a.pairings_with_basis(v)?;
    let n = a.rank();
    let mut m = IntMatrix::identity(n);
    for (i, p) in pairings.iter().enumerate() {
        let twice: BigInt = p * 2;
        let (coef, rem) = twice.div_rem(&norm);
        if !rem.is_zero() {
            return Err(LatticeError::NonIntegralReflection);
        }
        for (j, vj) in v.coords().iter().enumerate() {
            m[(i, j)] -= &coef * vj;
        }
    }
    check_isometry(a, &m)
}

/// The `A2` vector `(1, -1)` placed in the `A2` summand of `L`: norm `-6`,
/// divisibility 3.
pub fn og10_a2_vector() -> LatticeVector {
    LatticeVector::from_i64(&[1, -1]).padded(og10_layout::RANK, og10_layout::A2_OFFSET)
}

/// Reflection of `L` in [`og10_a2_vector`].
pub fn og10_rank_one_reflection() -> Isometry {
    reflection_in_vector(&catalog::make_og10_l(), &og10_a2_vector())
        .expect("divisibility 3 makes the reflection integral")
}

/// An isometry with a display name.
#[derive(Clone, Debug)]
pub struct NamedIsometry {
    pub name: String,
    pub isometry: Isometry,
}

/// `-id` on the Leech lattice plus the two stored Golay-code permutations,
/// transported to the Leech basis and re-validated.
pub fn leech_sample_isometries() -> Result<Vec<NamedIsometry>> {
    let model = catalog::leech_model()?;
    let leech = model.lattice.clone();
    let mut out = vec![NamedIsometry {
        name: "-id".into(),
        isometry: check_isometry(&leech, &IntMatrix::identity(24).neg())?,
    }];
    for (name, perm) in [
        ("golay shift i->i+1", &golay::SHIFT_PERMUTATION),
        ("golay doubling i->2i", &golay::DOUBLING_PERMUTATION),
    ] {
        if !model.golay.is_automorphism(perm) {
            return Err(LatticeError::SelfCheck(format!(
                "stored permutation {name} is not a code automorphism"
            )));
        }
        let m = catalog::leech_permutation_matrix(perm)?;
        out.push(NamedIsometry {
            name: name.into(),
            isometry: check_isometry(&leech, &m)?,
        });
    }
    Ok(out)
}

/// Lattice given inline or by catalog name.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeRef {
    Name(String),
    Inline(Lattice),
}

impl LatticeRef {
    pub fn resolve(&self) -> Result<Lattice> {
        match self {
            LatticeRef::Name(n) => catalog::by_name(n),
            LatticeRef::Inline(l) => Ok(l.clone()),
        }
    }
}

/// Wire form `{"lattice": <lattice or name>, "matrix": <matrix>}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsometryJson {
    pub lattice: LatticeRef,
    pub matrix: IntMatrix,
}

impl IsometryJson {
    pub fn into_isometry(self) -> Result<Isometry> {
        check_isometry(&self.lattice.resolve()?, &self.matrix)
    }
}

impl From<&Isometry> for IsometryJson {
    fn from(g: &Isometry) -> Self {
        IsometryJson {
            lattice: LatticeRef::Inline(g.lattice.clone()),
            matrix: g.matrix.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_a2, make_e8, make_u};

    #[test]
    fn orders() {
        let a2 = make_a2();
        assert_eq!(
            check_isometry(&a2, &IntMatrix::identity(2))
                .unwrap()
                .order(),
            1
        );
        assert_eq!(
            check_isometry(&a2, &IntMatrix::identity(2).neg())
                .unwrap()
                .order(),
            2
        );
        assert_eq!(e8_swap_involution().order(), 2);
        // e1 -> e2, e2 -> -e1 - e2 rotates A2 by 120 degrees
        let rot = IntMatrix::from_rows(&[[0, 1], [-1, -1]]);
        assert_eq!(check_isometry(&a2, &rot).unwrap().order(), 3);
        assert_eq!(
            check_isometry_with_cap(&a2, &rot, 2).unwrap_err(),
            LatticeError::OrderCapExceeded(2)
        );
        assert_eq!(
            check_isometry(&a2, &IntMatrix::from_rows(&[[1, 1], [0, 1]])).unwrap_err(),
            LatticeError::NotIsometry
        );
    }

    #[test]
    fn identity_decomposition() {
        let g = check_isometry(&make_a2(), &IntMatrix::identity(2)).unwrap();
        assert_eq!(g.invariant_sublattice().rank(), 2);
        assert_eq!(g.coinvariant_sublattice().rank(), 0);
    }

    #[test]
    fn e8_swap_decomposition() {
        let g = e8_swap_involution();
        let inv = g.invariant_sublattice();
        let co = g.coinvariant_sublattice();
        assert_eq!(inv.rank(), 16);
        assert_eq!(co.rank(), 8);
        assert!(inv.is_primitive() && co.is_primitive());
        let lg = co.lattice().unwrap();
        assert_eq!(lg.abs_det(), BigInt::from(256));
        assert!(involution_action_check(&g).unwrap());
    }

    #[test]
    fn involution_check_preconditions() {
        let a2 = make_a2();
        let neg = check_isometry(&a2, &IntMatrix::identity(2).neg()).unwrap();
        assert!(involution_action_check(&neg).unwrap());
        let rot = check_isometry(&a2, &IntMatrix::from_rows(&[[0, 1], [-1, -1]])).unwrap();
        assert_eq!(
            involution_action_check(&rot),
            Err(LatticeError::NotInvolution(3))
        );
    }

    #[test]
    fn reflections() {
        let g = og10_rank_one_reflection();
        assert_eq!(g.order(), 2);
        let co = g.coinvariant_sublattice().lattice().unwrap();
        assert_eq!(co.gram(), &IntMatrix::from_rows(&[[-6]]));

        let v = og10_a2_vector();
        assert_eq!(g.apply(&v).unwrap(), v.neg());

        let u = make_u();
        assert_eq!(
            reflection_in_vector(&u, &LatticeVector::from_i64(&[1, 0])).unwrap_err(),
            LatticeError::Isotropic
        );

        let e8 = make_e8();
        let root = LatticeVector::unit(8, 0);
        let s = reflection_in_vector(&e8, &root).unwrap();
        assert_eq!(
            s.coinvariant_sublattice().lattice().unwrap().gram(),
            &IntMatrix::from_rows(&[[-2]])
        );

        // norm -6 in A2 + A2 with divisibility 1 breaks integrality
        let l = make_a2().direct_sum(&make_u());
        let w = LatticeVector::from_i64(&[1, 0, 1, -1]);
        assert_eq!(l.norm(&w).unwrap(), BigInt::from(-4));
        assert_eq!(
            reflection_in_vector(&l, &w).unwrap_err(),
            LatticeError::NonIntegralReflection
        );
    }

    #[test]
    fn reflection_fixes_orthogonal_vectors() {
        let l = crate::catalog::make_og10_l();
        let g = og10_rank_one_reflection();
        let v = og10_a2_vector();
        for i in 0..24 {
            let e = LatticeVector::unit(24, i);
            if l.pairing(&e, &v).unwrap().is_zero() {
                assert_eq!(g.apply(&e).unwrap(), e);
            }
        }
    }

    #[test]
    fn powers() {
        let rot = check_isometry(&make_a2(), &IntMatrix::from_rows(&[[0, 1], [-1, -1]])).unwrap();
        assert_eq!(rot.power(3).order(), 1);
        assert!(rot.power(3).matrix().is_identity());
        assert_eq!(rot.power(2).order(), 3);
    }

    #[test]
    fn isometry_json_by_name() {
        let json = r#"{"lattice":"a2","matrix":{"rows":2,"cols":2,"entries":["-1","0","0","-1"]}}"#;
        let parsed: IsometryJson = serde_json::from_str(json).unwrap();
        assert_eq!(parsed.into_isometry().unwrap().order(), 2);
        let g = e8_swap_involution();
        let s = serde_json::to_string(&IsometryJson::from(&g)).unwrap();
        let back: IsometryJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.into_isometry().unwrap(), g);
    }
}
