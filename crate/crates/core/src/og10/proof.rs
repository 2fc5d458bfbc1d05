//! Exact checks of the arithmetic steps used against symplectic
//! automorphisms of finite order on `L`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::catalog::make_leech;
use crate::discriminant::{induced_disc_action, DiscClass, DiscriminantGroup};
use crate::error::{LatticeError, Result};
use crate::exact::IntMatrix;
use crate::isometry::{og10_a2_vector, og10_rank_one_reflection, Isometry};
use crate::lattice::{Definiteness, Lattice, LatticeVector};
use crate::reduction::{minimal_norm_with, EnumOptions, Enumerator};

use super::walls::{classify_wall, lattice_side_conditions, WallClass};

/// Signature of `Lambda_{1,25}`.
pub const LAMBDA_1_25_SIGNATURE: (usize, usize) = (1, 25);

/// Sufficient condition for a primitive embedding of the even lattice `a`
/// into the even unimodular lattice of signature `target`: the signature
/// fits and `rank(a) + l(A_a) < pos + neg`.
pub fn nikulin_embedding_sufficient(a: &Lattice, target: (usize, usize)) -> bool {
    if !a.is_even() {
        return false;
    }
    let (pos, neg) = a.signature();
    if pos > target.0 || neg > target.1 {
        return false;
    }
    let length = DiscriminantGroup::new(a).length();
    a.rank() + length < target.0 + target.1
}

/// Determinants of `L^g`, `L_g` and the size of the gluing group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingReport {
    pub det_ambient: BigInt,
    pub det_invariant: BigInt,
    pub det_coinvariant: BigInt,
    /// `|H|`, from `|H|^2 |det L| = |det L^g| |det L_g|`.
    pub h_order: BigInt,
    /// `[A_{L_g} : H'] = |det L_g| / |H|`.
    pub coinvariant_index: BigInt,
    pub disc_class: DiscClass,
    /// For an involution acting trivially on `A_L`: whether `|H|` is a power of 2.
    pub two_power: Option<bool>,
    /// `|H|` divides both determinants and the index is at most 3.
    pub consistent: bool,
}

impl GluingReport {
    pub fn pass(&self) -> bool {
        self.consistent && self.two_power.unwrap_or(true)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "det_L": self.det_ambient.to_string(),
            "det_invariant": self.det_invariant.to_string(),
            "det_coinvariant": self.det_coinvariant.to_string(),
            "H_order": self.h_order.to_string(),
            "coinvariant_index": self.coinvariant_index.to_string(),
            "disc_action": self.disc_class.to_string(),
            "H_is_power_of_two": self.two_power,
        })
    }
}

fn is_power_of_two(n: &BigInt) -> bool {
    n.is_positive() && (n & (n - BigInt::one())).is_zero()
}

/// Solves the gluing identity for `|H|` and checks its consequences.
///
/// A non-square `|H|^2` means the inputs are inconsistent and is reported
/// as a `SelfCheck` error.
pub fn gluing_determinant_check(g: &Isometry) -> Result<GluingReport> {
    let l = g.lattice();
    let inv = g.invariant_sublattice();
    let co = inv.orthogonal_complement();
    let det_ambient = l.abs_det();
    let det_invariant = inv.lattice()?.abs_det();
    let det_coinvariant = co.lattice()?.abs_det();
    let product = &det_invariant * &det_coinvariant;
    let (h_sq, rem) = product.div_rem(&det_ambient);
    if !rem.is_zero() {
        return Err(LatticeError::SelfCheck(format!(
            "|det L| = {det_ambient} does not divide {product}"
        )));
    }
    let h_order = h_sq.sqrt();
    if &h_order * &h_order != h_sq {
        return Err(LatticeError::SelfCheck(format!(
            "|H|^2 = {h_sq} is not a square"
        )));
    }
    let divides =
        det_invariant.is_multiple_of(&h_order) && det_coinvariant.is_multiple_of(&h_order);
    let coinvariant_index = &det_coinvariant / &h_order;
    let consistent = h_order.is_positive()
        && divides
        && h_order <= det_invariant.clone().min(det_coinvariant.clone())
        && coinvariant_index <= BigInt::from(3);
    let disc_class = induced_disc_action(l, g)?.classification;
    let two_power =
        (g.order() == 2 && disc_class == DiscClass::Identity).then(|| is_power_of_two(&h_order));
    Ok(GluingReport {
        det_ambient,
        det_invariant,
        det_coinvariant,
        h_order,
        coinvariant_index,
        disc_class,
        two_power,
        consistent,
    })
}

/// The reflection in the `A2` vector of norm `-6` and its consequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneReport {
    pub vector: LatticeVector,
    pub order: u64,
    pub coinvariant_gram: IntMatrix,
    pub divisibility: BigInt,
    pub class: WallClass,
    /// `2(v,w) = (v, w+g(w)) + (v, w-g(w))` for all basis vectors `w`.
    pub half_sum_identity: bool,
    /// `(v, w+g(w)) = 0` for all basis vectors `w`.
    pub invariant_part_orthogonal: bool,
    /// `(v, w-g(w))` lies in `6Z` for all basis vectors `w`.
    pub difference_in_6z: bool,
    pub disc_class: DiscClass,
    pub automorphism_condition_fails: bool,
}

impl RankOneReport {
    pub fn pass(&self) -> bool {
        self.order == 2
            && self.coinvariant_gram == IntMatrix::from_rows(&[[-6]])
            && self.divisibility == BigInt::from(3)
            && self.class == WallClass::PexDiv3
            && self.half_sum_identity
            && self.invariant_part_orthogonal
            && self.difference_in_6z
            && self.automorphism_condition_fails
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "vector": self.vector.display(),
            "order": self.order,
            "coinvariant_gram": serde_json::to_value(&self.coinvariant_gram).expect("matrix serializes"),
            "divisibility": self.divisibility.to_string(),
            "class": self.class.to_string(),
            "half_sum_identity": self.half_sum_identity,
            "invariant_part_orthogonal": self.invariant_part_orthogonal,
            "difference_in_6z": self.difference_in_6z,
            "disc_action": self.disc_class.to_string(),
            "automorphism_condition_fails": self.automorphism_condition_fails,
        })
    }
}

/// Checks the rank-one case on the reflection in the `A2` vector `(1,-1)`.
pub fn rank_one_divisibility_check() -> Result<RankOneReport> {
    let g = og10_rank_one_reflection();
    let l = g.lattice().clone();
    let v = og10_a2_vector();
    let co = g.coinvariant_sublattice();
    let coinvariant_gram = co.gram();
    let divisibility = l.divisibility(&v)?;
    let class = classify_wall(&l, &v)?;

    let six = BigInt::from(6);
    let mut half_sum_identity = true;
    let mut invariant_part_orthogonal = true;
    let mut difference_in_6z = true;
    for i in 0..l.rank() {
        let w = LatticeVector::unit(l.rank(), i);
        let gw = g.apply(&w)?;
        let plus = LatticeVector::new(
            w.coords()
                .iter()
                .zip(gw.coords())
                .map(|(a, b)| a + b)
                .collect(),
        );
        let minus = LatticeVector::new(
            w.coords()
                .iter()
                .zip(gw.coords())
                .map(|(a, b)| a - b)
                .collect(),
        );
        let vw = l.pairing(&v, &w)?;
        let vp = l.pairing(&v, &plus)?;
        let vm = l.pairing(&v, &minus)?;
        half_sum_identity &= &vw * 2 == &vp + &vm;
        invariant_part_orthogonal &= vp.is_zero();
        difference_in_6z &= vm.is_multiple_of(&six);
    }
    let conds = lattice_side_conditions(&g, &EnumOptions::default())?;
    let disc_class = induced_disc_action(&l, &g)?.classification;
    Ok(RankOneReport {
        vector: v,
        order: g.order(),
        coinvariant_gram,
        divisibility,
        class,
        half_sum_identity,
        invariant_part_orthogonal,
        difference_in_6z,
        disc_class,
        automorphism_condition_fails: !conds.automorphism.holds,
    })
}

/// Values in the length chain for an isometry acting trivially on `A_L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialDiscReport {
    pub rank_invariant: usize,
    pub rank_coinvariant: usize,
    pub length_coinvariant: usize,
    pub length_invariant: usize,
    pub length_ambient: usize,
    /// `l(A_{L_g}) <= l(A_{L^g}) + l(A_L)`.
    pub length_link: bool,
    /// `l(A_{L^g}) + l(A_L) <= rank(L^g) + 1`.
    pub rank_link: bool,
    /// `rank(L^g) + 1 < 26 - rank(L_g)`.
    pub strict_link: bool,
    pub embedding_sufficient: bool,
    pub root_free: bool,
    /// Least `|norm|` of `L_g`; `None` for rank 0.
    pub coinvariant_min_norm: Option<u64>,
    /// Least `|norm|` of the coinvariant lattice of the supplied Leech isometry.
    pub leech_min_norm: Option<u64>,
    /// `L_g` contains a vector of norm `-2` or `-4`.
    pub wall_vector_forced: bool,
}

impl TrivialDiscReport {
    pub fn chain_holds(&self) -> bool {
        self.length_link && self.rank_link && self.strict_link && self.embedding_sufficient
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "rank_invariant": self.rank_invariant,
            "rank_coinvariant": self.rank_coinvariant,
            "length_coinvariant": self.length_coinvariant,
            "length_invariant": self.length_invariant,
            "length_L": self.length_ambient,
            "length_link": self.length_link,
            "rank_link": self.rank_link,
            "strict_link": self.strict_link,
            "embedding_sufficient": self.embedding_sufficient,
            "root_free": self.root_free,
            "coinvariant_min_norm": self.coinvariant_min_norm,
            "leech_min_norm": self.leech_min_norm,
            "wall_vector_forced": self.wall_vector_forced,
        })
    }
}

/// Follows the length chain for `g` with trivial action on `A_L` and
/// negative definite `L_g`. When `leech` is given, the minimal norm of
/// its coinvariant lattice is recorded as well.
pub fn trivial_disc_case_pipeline(
    g: &Isometry,
    leech: Option<&Isometry>,
    opts: &EnumOptions,
) -> Result<TrivialDiscReport> {
    let l = g.lattice();
    let action = induced_disc_action(l, g)?;
    if action.classification != DiscClass::Identity {
        return Err(LatticeError::Precondition(format!(
            "isometry acts as {} on the discriminant group",
            action.classification
        )));
    }
    let inv = g.invariant_sublattice();
    let co = inv.orthogonal_complement();
    let inv_lat = inv.lattice()?;
    let co_lat = co.lattice()?;
    if co.rank() > 0 && co_lat.definiteness() != Definiteness::Negative {
        let (pos, neg) = co_lat.signature();
        return Err(LatticeError::Indefinite { pos, neg });
    }
    let total = LAMBDA_1_25_SIGNATURE.0 + LAMBDA_1_25_SIGNATURE.1;
    let length_coinvariant = DiscriminantGroup::new(&co_lat).length();
    let length_invariant = DiscriminantGroup::new(&inv_lat).length();
    let length_ambient = DiscriminantGroup::new(l).length();
    let length_link = length_coinvariant <= length_invariant + length_ambient;
    let rank_link = length_invariant + length_ambient <= inv.rank() + 1;
    let strict_link = inv.rank() + 1 + co.rank() < total;
    let embedding_sufficient = nikulin_embedding_sufficient(&co_lat, LAMBDA_1_25_SIGNATURE);

    let (root_free, coinvariant_min_norm) = if co.rank() == 0 {
        (true, None)
    } else {
        let e = Enumerator::new(&co_lat, opts)?;
        (!e.exists_within(2)?, Some(minimal_norm_with(&e)?))
    };
    let leech_min_norm = match leech {
        Some(h) => Some(leech_coinvariant_min_norm(h, opts)?),
        None => None,
    };
    let wall_vector_forced = coinvariant_min_norm.is_some_and(|m| m <= 4);
    Ok(TrivialDiscReport {
        rank_invariant: inv.rank(),
        rank_coinvariant: co.rank(),
        length_coinvariant,
        length_invariant,
        length_ambient,
        length_link,
        rank_link,
        strict_link,
        embedding_sufficient,
        root_free,
        coinvariant_min_norm,
        leech_min_norm,
        wall_vector_forced,
    })
}

/// Least `|norm|` of the coinvariant lattice of an isometry of the Leech
/// lattice. Fails with `Precondition` for the identity or a foreign lattice.
pub fn leech_coinvariant_min_norm(h: &Isometry, opts: &EnumOptions) -> Result<u64> {
    if h.lattice().gram() != make_leech()?.gram() {
        return Err(LatticeError::Precondition(
            "isometry is not on the Leech lattice".into(),
        ));
    }
    let co = h.coinvariant_sublattice();
    if co.rank() == 0 {
        return Err(LatticeError::Precondition(
            "identity has no coinvariant lattice".into(),
        ));
    }
    let e = Enumerator::new(&co.lattice()?, opts)?;
    minimal_norm_with(&e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_e8, make_og10_l};
    use crate::isometry::{
        check_isometry, e8_swap_involution, leech_sample_isometries, reflection_in_vector,
    };

    #[test]
    fn nikulin_examples() {
        let e8_2 = make_e8().rescale(2).unwrap();
        assert_eq!(e8_2.signature(), (0, 8));
        assert!(nikulin_embedding_sufficient(&e8_2, LAMBDA_1_25_SIGNATURE));
        let m6 = Lattice::from_rows(&[[-6]]).unwrap();
        assert!(nikulin_embedding_sufficient(&m6, LAMBDA_1_25_SIGNATURE));
        // signature that does not fit
        let pos = Lattice::from_rows(&[[2, 0], [0, 2]]).unwrap();
        assert!(!nikulin_embedding_sufficient(&pos, LAMBDA_1_25_SIGNATURE));
        let odd = Lattice::from_rows(&[[-3]]).unwrap();
        assert!(!nikulin_embedding_sufficient(&odd, LAMBDA_1_25_SIGNATURE));
    }

    #[test]
    fn boundary_rank_24_length_2() {
        let e8 = make_e8();
        let a2 = Lattice::from_rows(&[[-2, 1], [1, -2]]).unwrap();
        let l = e8
            .direct_sum(&e8)
            .direct_sum(&a2)
            .direct_sum(&Lattice::from_rows(&[[-2, 1, 0], [1, -2, 1], [0, 1, -2]]).unwrap())
            .direct_sum(&a2)
            .direct_sum(&Lattice::from_rows(&[[-4]]).unwrap());
        // E8 + E8 + A2 + A3 + A2 + [-4]: rank 24, A = Z/3 + Z/4 + Z/3 + Z/4, length 2
        assert_eq!(l.rank(), 24);
        assert_eq!(DiscriminantGroup::new(&l).length(), 2);
        assert!(!nikulin_embedding_sufficient(&l, LAMBDA_1_25_SIGNATURE));
    }

    #[test]
    fn gluing_e8_swap() {
        let r = gluing_determinant_check(&e8_swap_involution()).unwrap();
        assert_eq!(r.det_invariant, BigInt::from(768));
        assert_eq!(r.det_coinvariant, BigInt::from(256));
        assert_eq!(r.h_order, BigInt::from(256));
        assert_eq!(r.coinvariant_index, BigInt::one());
        assert_eq!(r.disc_class, DiscClass::Identity);
        assert_eq!(r.two_power, Some(true));
        assert!(r.pass());
    }

    #[test]
    fn gluing_reflection_and_identity() {
        let r = gluing_determinant_check(&og10_rank_one_reflection()).unwrap();
        assert_eq!(r.det_coinvariant, BigInt::from(6));
        assert_eq!(r.det_invariant, BigInt::from(2));
        assert_eq!(r.h_order, BigInt::from(2));
        assert_eq!(r.coinvariant_index, BigInt::from(3));
        assert_eq!(r.disc_class, DiscClass::NegIdentity);
        assert_eq!(r.two_power, None);
        assert!(r.pass());

        let id = check_isometry(&make_og10_l(), &IntMatrix::identity(24)).unwrap();
        let r = gluing_determinant_check(&id).unwrap();
        assert_eq!(r.h_order, BigInt::one());
        assert!(r.pass());
    }

    #[test]
    fn rank_one_report() {
        let r = rank_one_divisibility_check().unwrap();
        assert_eq!(r.divisibility, BigInt::from(3));
        assert_eq!(r.class, WallClass::PexDiv3);
        assert_eq!(r.disc_class, DiscClass::NegIdentity);
        assert!(r.pass(), "{:?}", r);
        let g = reflection_in_vector(&make_og10_l(), &r.vector).unwrap();
        assert_eq!(g, og10_rank_one_reflection());
    }

    #[test]
    fn trivial_disc_pipeline_e8_swap() {
        let leech = leech_sample_isometries().unwrap();
        let r = trivial_disc_case_pipeline(
            &e8_swap_involution(),
            Some(&leech[0].isometry),
            &EnumOptions::default(),
        )
        .unwrap();
        assert_eq!(r.length_coinvariant, 8);
        assert_eq!(r.length_invariant, 8);
        assert_eq!(r.rank_invariant, 16);
        assert_eq!(r.rank_coinvariant, 8);
        assert!(r.chain_holds(), "{:?}", r);
        assert!(r.root_free);
        assert_eq!(r.coinvariant_min_norm, Some(4));
        assert_eq!(r.leech_min_norm, Some(4));
        assert!(r.wall_vector_forced);
    }

    #[test]
    fn trivial_disc_pipeline_edge_cases() {
        let id = check_isometry(&make_og10_l(), &IntMatrix::identity(24)).unwrap();
        let r = trivial_disc_case_pipeline(&id, None, &EnumOptions::default()).unwrap();
        assert!(r.chain_holds() && r.root_free && !r.wall_vector_forced);
        assert_eq!(r.coinvariant_min_norm, None);
        assert!(matches!(
            trivial_disc_case_pipeline(&og10_rank_one_reflection(), None, &EnumOptions::default()),
            Err(LatticeError::Precondition(_))
        ));
    }

    #[test]
    fn leech_foreign_lattice_rejected() {
        assert!(
            leech_coinvariant_min_norm(&e8_swap_involution(), &EnumOptions::default()).is_err()
        );
    }
}
