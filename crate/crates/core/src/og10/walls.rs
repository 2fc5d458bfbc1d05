//! Wall vectors of `L` and the lattice-side conditions on an isometry.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{LatticeError, Result};
use crate::exact::gcd_all;
use crate::isometry::Isometry;
use crate::lattice::{Definiteness, Lattice, LatticeVector};
use crate::reduction::{EnumOptions, Enumerator, ShortVectorReport};

/// Largest `|norm|` a wall vector can have.
pub const WALL_SCAN_BOUND: u64 = 24;

/// Membership of a vector in the wall sets, decided by norm and divisibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum WallClass {
    /// Norm `-2`.
    PexRoot,
    /// Norm `-6`, divisibility 3.
    PexDiv3,
    /// Norm `-4`.
    Wall4,
    /// Norm `-24`, divisibility 3.
    Wall24Div3,
    NotWall,
}

impl WallClass {
    /// Member of the full wall set.
    pub fn is_wall(self) -> bool {
        self != WallClass::NotWall
    }

    /// Member of the prime exceptional subset.
    pub fn is_prime_exceptional(self) -> bool {
        matches!(self, WallClass::PexRoot | WallClass::PexDiv3)
    }
}

impl fmt::Display for WallClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WallClass::PexRoot => "pex-root(-2)",
            WallClass::PexDiv3 => "pex-div3(-6)",
            WallClass::Wall4 => "wall(-4)",
            WallClass::Wall24Div3 => "wall-div3(-24)",
            WallClass::NotWall => "none",
        })
    }
}

/// Classification from the pair `(norm, divisibility)`.
pub fn classify_invariants(norm: &BigInt, divisibility: &BigInt) -> WallClass {
    let three = BigInt::from(3);
    match i64::try_from(norm) {
        Ok(-2) => WallClass::PexRoot,
        Ok(-4) => WallClass::Wall4,
        Ok(-6) if *divisibility == three => WallClass::PexDiv3,
        Ok(-24) if *divisibility == three => WallClass::Wall24Div3,
        _ => WallClass::NotWall,
    }
}

/// Classifies a nonzero vector of `l`.
pub fn classify_wall(l: &Lattice, v: &LatticeVector) -> Result<WallClass> {
    if v.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let norm = l.norm(v)?;
    let div = l.divisibility(v)?;
    Ok(classify_invariants(&norm, &div))
}

/// A wall vector found in a coinvariant lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallHit {
    /// Ambient coordinates.
    pub vector: LatticeVector,
    pub norm: BigInt,
    pub divisibility: BigInt,
    pub class: WallClass,
}

impl WallHit {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vector": self.vector.display(),
            "norm": self.norm.to_string(),
            "divisibility": self.divisibility.to_string(),
            "class": self.class.to_string(),
        })
    }
}

/// Enumeration of the coinvariant lattice up to `|norm| <= 24`, classified
/// in the ambient lattice.
#[derive(Clone, Debug)]
pub struct WallScan {
    pub coinvariant_rank: usize,
    pub coinvariant_det: BigInt,
    /// Vectors in coinvariant-basis coordinates.
    pub report: ShortVectorReport,
    /// Wall vectors, one per `±` pair, by increasing `|norm|` then coordinates.
    pub hits: Vec<WallHit>,
    /// Class counts over `±` pairs.
    pub class_counts: BTreeMap<WallClass, u64>,
}

impl WallScan {
    pub fn wall_witness(&self) -> Option<&WallHit> {
        self.hits.first()
    }

    pub fn pex_witness(&self) -> Option<&WallHit> {
        self.hits.iter().find(|h| h.class.is_prime_exceptional())
    }

    pub fn wall_empty(&self) -> bool {
        self.hits.is_empty()
    }

    pub fn pex_empty(&self) -> bool {
        self.pex_witness().is_none()
    }
}

fn coinvariant_lattice(g: &Isometry) -> Result<(crate::lattice::Sublattice, Lattice)> {
    let co = g.coinvariant_sublattice();
    let lat = co.lattice()?;
    Ok((co, lat))
}

/// Enumerates `L_g` and collects the wall vectors it contains.
///
/// Fails with `Indefinite` unless `L_g` is negative definite.
pub fn coinvariant_wall_scan(g: &Isometry, opts: &EnumOptions) -> Result<WallScan> {
    let (co, lat) = coinvariant_lattice(g)?;
    let empty = ShortVectorReport {
        bound: WALL_SCAN_BOUND,
        vectors: Vec::new(),
        counts_by_norm: BTreeMap::new(),
    };
    if co.rank() == 0 {
        return Ok(WallScan {
            coinvariant_rank: 0,
            coinvariant_det: BigInt::from(1),
            report: empty,
            hits: Vec::new(),
            class_counts: BTreeMap::new(),
        });
    }
    if lat.definiteness() != Definiteness::Negative {
        let (pos, neg) = lat.signature();
        return Err(LatticeError::Indefinite { pos, neg });
    }
    let report = Enumerator::new(&lat, opts)?.short_vectors(WALL_SCAN_BOUND)?;
    let ambient = g.lattice();
    // rows of B * G: pairings of the coinvariant basis with the ambient basis
    let bg = co.basis().mul(ambient.gram())?;
    let mut hits = Vec::new();
    let mut class_counts = BTreeMap::new();
    let candidate_norms = [2u64, 4, 6, 24];
    for c in &report.vectors {
        let norm = lat.norm(c)?;
        let abs = norm.abs();
        if !candidate_norms.iter().any(|&k| abs == BigInt::from(k)) {
            *class_counts.entry(WallClass::NotWall).or_insert(0) += 1;
            continue;
        }
        let pairings = bg.vec_mul(c.coords())?;
        let divisibility = gcd_all(&pairings);
        let class = classify_invariants(&norm, &divisibility);
        *class_counts.entry(class).or_insert(0) += 1;
        if class.is_wall() {
            hits.push(WallHit {
                vector: co.to_ambient(c.coords())?,
                norm,
                divisibility,
                class,
            });
        }
    }
    // stable: ties keep the lexicographic order of the report
    hits.sort_by_key(|h| h.norm.abs());
    Ok(WallScan {
        coinvariant_rank: co.rank(),
        coinvariant_det: lat.abs_det(),
        report,
        hits,
        class_counts,
    })
}

/// Outcome of one lattice-side condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionVerdict {
    pub holds: bool,
    pub negative_definite: bool,
    /// A wall vector of `L_g` when the condition fails for that reason.
    pub witness: Option<WallHit>,
}

impl ConditionVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "holds": self.holds,
            "coinvariant_negative_definite": self.negative_definite,
            "witness": self.witness.as_ref().map(WallHit::to_json),
        })
    }
}

/// Both lattice-side conditions from a single scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSideConditions {
    /// `L_g` negative definite and free of all wall vectors.
    pub automorphism: ConditionVerdict,
    /// `L_g` negative definite and free of prime exceptional wall vectors.
    pub birational: ConditionVerdict,
}

pub fn lattice_side_conditions(g: &Isometry, opts: &EnumOptions) -> Result<LatticeSideConditions> {
    match coinvariant_wall_scan(g, opts) {
        Ok(scan) => Ok(LatticeSideConditions {
            automorphism: ConditionVerdict {
                holds: scan.wall_empty(),
                negative_definite: true,
                witness: scan.wall_witness().cloned(),
            },
            birational: ConditionVerdict {
                holds: scan.pex_empty(),
                negative_definite: true,
                witness: scan.pex_witness().cloned(),
            },
        }),
        Err(LatticeError::Indefinite { .. }) => {
            let fail = ConditionVerdict {
                holds: false,
                negative_definite: false,
                witness: None,
            };
            Ok(LatticeSideConditions {
                automorphism: fail.clone(),
                birational: fail,
            })
        }
        Err(e) => Err(e),
    }
}

/// `L_g` negative definite and `L_g` meets no wall vector.
pub fn symplectic_automorphism_condition(g: &Isometry) -> Result<ConditionVerdict> {
    Ok(lattice_side_conditions(g, &EnumOptions::default())?.automorphism)
}

/// `L_g` negative definite and `L_g` meets no prime exceptional wall vector.
pub fn symplectic_birational_condition(g: &Isometry) -> Result<ConditionVerdict> {
    Ok(lattice_side_conditions(g, &EnumOptions::default())?.birational)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_og10_l, og10_layout};
    use crate::exact::IntMatrix;
    use crate::isometry::{
        check_isometry, e8_swap_involution, og10_a2_vector, og10_rank_one_reflection,
    };

    fn l_vector(entries: &[(usize, i64)]) -> LatticeVector {
        let mut v = vec![0i64; og10_layout::RANK];
        for &(i, x) in entries {
            v[i] = x;
        }
        LatticeVector::from_i64(&v)
    }

    #[test]
    fn classify_examples() {
        let l = make_og10_l();
        assert_eq!(
            classify_wall(&l, &og10_a2_vector()).unwrap(),
            WallClass::PexDiv3
        );
        let root = l_vector(&[(og10_layout::E8_OFFSETS[0], 1)]);
        assert_eq!(classify_wall(&l, &root).unwrap(), WallClass::PexRoot);
        // (1,-3) in the first U: norm -6, divisibility 1
        let v = l_vector(&[(0, 1), (1, -3)]);
        assert_eq!(l.norm(&v).unwrap(), BigInt::from(-6));
        assert_eq!(classify_wall(&l, &v).unwrap(), WallClass::NotWall);
        // (1,-2) in U: norm -4
        let v = l_vector(&[(0, 1), (1, -2)]);
        assert_eq!(classify_wall(&l, &v).unwrap(), WallClass::Wall4);
        // 3e - 4f: norm -24 but divisibility 1
        let v = l_vector(&[(0, 3), (1, -4)]);
        assert_eq!(classify_wall(&l, &v).unwrap(), WallClass::NotWall);
        assert_eq!(
            classify_wall(&l, &LatticeVector::zero(24)).unwrap_err(),
            LatticeError::ZeroVector
        );
    }

    #[test]
    fn invariant_table() {
        let c = |n: i64, d: i64| classify_invariants(&n.into(), &d.into());
        assert_eq!(c(-2, 1), WallClass::PexRoot);
        assert_eq!(c(-2, 2), WallClass::PexRoot);
        assert_eq!(c(-4, 2), WallClass::Wall4);
        assert_eq!(c(-6, 3), WallClass::PexDiv3);
        assert_eq!(c(-6, 6), WallClass::NotWall);
        assert_eq!(c(-24, 3), WallClass::Wall24Div3);
        assert_eq!(c(-24, 6), WallClass::NotWall);
        assert_eq!(c(2, 1), WallClass::NotWall);
        assert!(WallClass::Wall4.is_wall() && !WallClass::Wall4.is_prime_exceptional());
    }

    #[test]
    fn e8_swap_scan() {
        let g = e8_swap_involution();
        let scan = coinvariant_wall_scan(&g, &EnumOptions::default()).unwrap();
        assert_eq!(scan.coinvariant_rank, 8);
        assert_eq!(scan.coinvariant_det, BigInt::from(256));
        assert!(scan.pex_empty());
        assert!(!scan.wall_empty());
        let w = scan.wall_witness().unwrap();
        assert_eq!(w.class, WallClass::Wall4);
        assert_eq!(g.lattice().norm(&w.vector).unwrap(), BigInt::from(-4));
        assert!(scan.report.counts_by_norm.keys().all(|n| n % 4 == 0));
        assert_eq!(scan.class_counts[&WallClass::Wall4], 120);

        let conds = lattice_side_conditions(&g, &EnumOptions::default()).unwrap();
        assert!(!conds.automorphism.holds);
        assert!(conds.birational.holds);
    }

    #[test]
    fn reflection_scan() {
        let g = og10_rank_one_reflection();
        let conds = lattice_side_conditions(&g, &EnumOptions::default()).unwrap();
        assert!(!conds.automorphism.holds);
        assert!(!conds.birational.holds);
        let w = conds.automorphism.witness.unwrap();
        assert_eq!(w.class, WallClass::PexDiv3);
        assert!(w.vector == og10_a2_vector() || w.vector == og10_a2_vector().neg());
    }

    #[test]
    fn identity_is_vacuous() {
        let l = make_og10_l();
        let g = check_isometry(&l, &IntMatrix::identity(24)).unwrap();
        let conds = lattice_side_conditions(&g, &EnumOptions::default()).unwrap();
        assert!(conds.automorphism.holds && conds.birational.holds);
        assert!(conds.automorphism.witness.is_none());
    }

    #[test]
    fn minus_identity_is_not_negative_definite() {
        let l = make_og10_l();
        let g = check_isometry(&l, &IntMatrix::identity(24).neg()).unwrap();
        assert!(matches!(
            coinvariant_wall_scan(&g, &EnumOptions::default()),
            Err(LatticeError::Indefinite { .. })
        ));
        let v = symplectic_automorphism_condition(&g).unwrap();
        assert!(!v.holds && !v.negative_definite);
    }
}
