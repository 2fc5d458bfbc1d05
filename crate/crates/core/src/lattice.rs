//! Even integral lattices given by Gram matrices, and sublattices in ambient
//! coordinates.
//!
//! Vectors are integer row vectors in the lattice basis; the pairing is
//! `v * G * w^T`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LatticeError, Result};
use crate::exact::{
    det_exact, dot, elementary_divisors, gcd_all, hnf, integral_kernel, rank, signature, IntMatrix,
    RatMatrix,
};

/// A nondegenerate integral lattice.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeJson", into = "LatticeJson")]
pub struct Lattice {
    gram: IntMatrix,
    label: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub gram: IntMatrix,
}

impl TryFrom<LatticeJson> for Lattice {
    type Error = LatticeError;

    fn try_from(json: LatticeJson) -> Result<Self> {
        let mut l = Lattice::new(json.gram)?;
        l.label = json.label;
        Ok(l)
    }
}

impl From<Lattice> for LatticeJson {
    fn from(l: Lattice) -> Self {
        LatticeJson {
            label: l.label,
            gram: l.gram,
        }
    }
}

/// Sign class of a nondegenerate form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Definiteness {
    Positive,
    Negative,
    Indefinite,
}

impl Lattice {
    /// Validates symmetry and nondegeneracy.
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(LatticeError::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        if det_exact(&gram)?.is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(Lattice { gram, label: None })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows))
    }

    /// The rank-0 lattice, neutral for direct sums.
    pub fn zero() -> Self {
        Lattice {
            gram: IntMatrix::zeros(0, 0),
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        det_exact(&self.gram).expect("gram is square")
    }

    pub fn abs_det(&self) -> BigInt {
        self.det().abs()
    }

    pub fn signature(&self) -> (usize, usize) {
        signature(&self.gram).expect("gram is symmetric and nondegenerate")
    }

    pub fn definiteness(&self) -> Definiteness {
        match self.signature() {
            (_, 0) => Definiteness::Positive,
            (0, _) => Definiteness::Negative,
            _ => Definiteness::Indefinite,
        }
    }

    /// True for definite lattices of either sign (and for rank 0).
    pub fn is_definite(&self) -> bool {
        self.definiteness() != Definiteness::Indefinite
    }

    /// Every diagonal entry even; equivalent to evenness for integral Grams.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub fn is_unimodular(&self) -> bool {
        self.abs_det().is_one()
    }

    /// Block-diagonal sum. The label is dropped.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        Lattice {
            gram: self.gram.block_diag(&other.gram),
            label: None,
        }
    }

    /// The lattice with form multiplied by `n`.
    pub fn rescale(&self, n: i64) -> Result<Lattice> {
        if n == 0 {
            return Err(LatticeError::ZeroScale);
        }
        Ok(Lattice {
            gram: self.gram.scale(&BigInt::from(n)),
            label: self.label.as_ref().map(|l| format!("{l}({n})")),
        })
    }

    /// Positive-definite model of a definite lattice: itself, or its
    /// negative when the signature is `(0, n)`. Indefinite input is rejected.
    pub fn positive_definite_model(&self) -> Result<Lattice> {
        match self.signature() {
            (_, 0) => Ok(self.clone()),
            (0, _) => self.rescale(-1),
            (pos, neg) => Err(LatticeError::Indefinite { pos, neg }),
        }
    }

    fn check_vector(&self, v: &LatticeVector) -> Result<()> {
        if v.len() != self.rank() {
            return Err(LatticeError::RankMismatch {
                len: v.len(),
                rank: self.rank(),
            });
        }
        Ok(())
    }

    /// `v * G`, the pairings of `v` with the basis.
    pub fn pairings_with_basis(&self, v: &LatticeVector) -> Result<Vec<BigInt>> {
        self.check_vector(v)?;
        self.gram.vec_mul(v.coords())
    }

    pub fn pairing(&self, v: &LatticeVector, w: &LatticeVector) -> Result<BigInt> {
        self.check_vector(w)?;
        Ok(dot(&self.pairings_with_basis(v)?, w.coords()))
    }

    pub fn norm(&self, v: &LatticeVector) -> Result<BigInt> {
        self.pairing(v, v)
    }

    /// gcd of the pairings of `v` with the whole lattice.
    pub fn divisibility(&self, v: &LatticeVector) -> Result<BigInt> {
        self.check_vector(v)?;
        if v.is_zero() {
            return Err(LatticeError::ZeroVector);
        }
        Ok(gcd_all(&self.pairings_with_basis(v)?))
    }

    /// Gram matrix of the dual basis, i.e. the inverse Gram.
    pub fn dual_gram(&self) -> RatMatrix {
        self.gram
            .to_rational()
            .inverse()
            .expect("gram is nondegenerate")
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("label", &self.label)
            .field("gram", &self.gram)
            .finish()
    }
}

pub fn direct_sum(a: &Lattice, b: &Lattice) -> Lattice {
    a.direct_sum(b)
}

/// Integer coordinates of a lattice element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(len: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); len])
    }

    /// Basis vector `e_i` of a rank-`len` lattice.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zero(len);
        v.0[i] = BigInt::one();
        v
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        LatticeVector(self.0.iter().map(|x| -x).collect())
    }

    /// Embeds `self` into a longer coordinate vector at `offset`.
    pub fn padded(&self, total: usize, offset: usize) -> Self {
        let mut v = Self::zero(total);
        v.0[offset..offset + self.len()].clone_from_slice(&self.0);
        v
    }

    /// Entries joined with commas, e.g. `(1,-1,0)`.
    pub fn display(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

impl From<Vec<BigInt>> for LatticeVector {
    fn from(v: Vec<BigInt>) -> Self {
        LatticeVector(v)
    }
}

/// Sublattice spanned by the rows of `basis`, in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    ambient: Lattice,
    basis: IntMatrix,
}

impl Sublattice {
    /// Requires linearly independent rows of the ambient width.
    pub fn new(ambient: Lattice, basis: IntMatrix) -> Result<Self> {
        if basis.cols() != ambient.rank() && basis.rows() > 0 {
            return Err(LatticeError::Shape(format!(
                "basis has {} columns, ambient rank {}",
                basis.cols(),
                ambient.rank()
            )));
        }
        if rank(&basis) != basis.rows() {
            return Err(LatticeError::Shape(
                "basis rows are linearly dependent".into(),
            ));
        }
        let basis = if basis.rows() == 0 {
            IntMatrix::zeros(0, ambient.rank())
        } else {
            basis
        };
        Ok(Sublattice { ambient, basis })
    }

    /// Sublattice generated by arbitrary (possibly dependent) vectors.
    pub fn span(ambient: Lattice, generators: &IntMatrix) -> Result<Self> {
        let (h, _) = hnf(generators);
        let nonzero: Vec<usize> = (0..h.rows()).filter(|&i| !h.row_is_zero(i)).collect();
        Self::new(ambient, h.select_rows(&nonzero))
    }

    pub fn whole(ambient: Lattice) -> Self {
        let n = ambient.rank();
        Sublattice {
            ambient,
            basis: IntMatrix::identity(n),
        }
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Ambient coordinates of the sublattice vector with coordinates `c`.
    pub fn to_ambient(&self, c: &[BigInt]) -> Result<LatticeVector> {
        Ok(LatticeVector::new(self.basis.vec_mul(c)?))
    }

    /// The restricted Gram `B * G * B^T`, which must be nondegenerate.
    pub fn gram(&self) -> IntMatrix {
        self.basis
            .mul(self.ambient.gram())
            .and_then(|bg| bg.mul(&self.basis.transpose()))
            .expect("shapes agree")
    }

    /// The sublattice as an abstract lattice.
    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::new(self.gram())
    }

    /// Saturated basis of the vectors orthogonal to every basis row.
    pub fn orthogonal_complement(&self) -> Sublattice {
        let n = self.ambient.rank();
        let k = if self.rank() == 0 {
            IntMatrix::identity(n)
        } else {
            let gbt = self
                .ambient
                .gram()
                .mul(&self.basis.transpose())
                .expect("shapes agree");
            integral_kernel(&gbt)
        };
        Sublattice {
            ambient: self.ambient.clone(),
            basis: normalize_empty(k, n),
        }
    }

    /// Smallest primitive sublattice with the same rational span.
    pub fn saturate(&self) -> Sublattice {
        let n = self.ambient.rank();
        let sat = if self.rank() == 0 {
            IntMatrix::zeros(0, n)
        } else {
            // vectors perpendicular to the span under the standard dot
            // product, then their perpendicular again
            let perp = integral_kernel(&self.basis.transpose());
            if perp.rows() == 0 {
                IntMatrix::identity(n)
            } else {
                integral_kernel(&perp.transpose())
            }
        };
        Sublattice {
            ambient: self.ambient.clone(),
            basis: normalize_empty(sat, n),
        }
    }

    /// True when the ambient quotient is torsion-free.
    pub fn is_primitive(&self) -> bool {
        self.rank() == 0 || elementary_divisors(&self.basis).iter().all(One::is_one)
    }

    /// Same row span as another sublattice of the same ambient.
    pub fn same_span(&self, other: &Sublattice) -> bool {
        self.rank() == other.rank() && hnf(&self.basis).0 == hnf(&other.basis).0
    }
}

fn normalize_empty(m: IntMatrix, n: usize) -> IntMatrix {
    if m.rows() == 0 {
        IntMatrix::zeros(0, n)
    } else {
        m
    }
}
