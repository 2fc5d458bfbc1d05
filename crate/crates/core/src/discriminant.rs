//! Discriminant groups `L^v / L` as finite quadratic forms.
//!
//! From the Smith form `U G V = D`, the dual class with coordinates `e_i`
//! lifts to `U_i / d_i` (row `i` of `U` over the `i`-th elementary divisor),
//! and a dual vector `x` has group coordinates `(x G V)_i mod d_i`.
//! Elements are stored as residue vectors over the nontrivial factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{LatticeError, Result};
use crate::exact::{snf, IntMatrix, RatMatrix};
use crate::isometry::Isometry;
use crate::lattice::Lattice;

/// `L^v / L` with its generators.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    invariant_factors: Vec<BigInt>,
    generator_lifts: RatMatrix,
    source: Lattice,
    /// Right Smith transform `V`.
    right: IntMatrix,
    /// Index of the first nontrivial elementary divisor.
    offset: usize,
}

/// Element coordinates: residues modulo the invariant factors.
pub type DiscElement = Vec<BigInt>;

/// Class of an induced map on the discriminant group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum DiscClass {
    Identity,
    NegIdentity,
    Other,
}

impl std::fmt::Display for DiscClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DiscClass::Identity => "id",
            DiscClass::NegIdentity => "-id",
            DiscClass::Other => "other",
        })
    }
}

/// Action of an isometry on the discriminant group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscAction {
    /// Row `i`: coordinates of the image of generator `i`.
    pub matrix: Vec<DiscElement>,
    pub classification: DiscClass,
}

impl DiscriminantGroup {
    pub fn new(a: &Lattice) -> Self {
        let (d, u, v) = snf(a.gram());
        let n = a.rank();
        let offset = (0..n).find(|&i| !d[(i, i)].is_one()).unwrap_or(n);
        let invariant_factors: Vec<BigInt> = (offset..n).map(|i| d[(i, i)].clone()).collect();
        let lifts = (offset..n)
            .map(|i| {
                u.row(i)
                    .iter()
                    .map(|x| BigRational::new(x.clone(), d[(i, i)].clone()))
                    .collect()
            })
            .collect();
        DiscriminantGroup {
            generator_lifts: RatMatrix::from_rows(lifts, n).expect("rows have rank entries"),
            invariant_factors,
            source: a.clone(),
            right: v,
            offset,
        }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn generator_lifts(&self) -> &RatMatrix {
        &self.generator_lifts
    }

    pub fn source(&self) -> &Lattice {
        &self.source
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Minimal number of generators.
    pub fn length(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Minimal number of generators of the Sylow `p`-subgroup.
    pub fn p_length(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.invariant_factors
            .iter()
            .filter(|d| d.is_multiple_of(&p))
            .count()
    }

    pub fn zero(&self) -> DiscElement {
        vec![BigInt::zero(); self.length()]
    }

    /// The `i`-th generator.
    pub fn generator(&self, i: usize) -> DiscElement {
        let mut e = self.zero();
        e[i] = BigInt::one();
        e
    }

    fn reduce(&self, mut x: DiscElement) -> DiscElement {
        for (c, d) in x.iter_mut().zip(&self.invariant_factors) {
            *c = c.mod_floor(d);
        }
        x
    }

    /// Rational lattice coordinates of a representative.
    pub fn lift(&self, x: &[BigInt]) -> Result<Vec<BigRational>> {
        if x.len() != self.length() {
            return Err(LatticeError::Shape("element length".into()));
        }
        let coeffs: Vec<BigRational> = x
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        self.generator_lifts.vec_mul(&coeffs)
    }

    /// Group coordinates of a dual vector given in lattice coordinates.
    pub fn coords_of(&self, x: &[BigRational]) -> Result<DiscElement> {
        let g = self.source.gram().to_rational();
        let y = g.vec_mul(x)?;
        if !y.iter().all(|c| c.is_integer()) {
            return Err(LatticeError::Precondition(
                "vector is not in the dual lattice".into(),
            ));
        }
        let y: Vec<BigInt> = y.into_iter().map(|c| c.to_integer()).collect();
        let z = self.right.vec_mul(&y)?;
        Ok(self.reduce(z[self.offset..].to_vec()))
    }

    fn form(&self, x: &[BigRational], y: &[BigRational]) -> Result<BigRational> {
        let g = self.source.gram().to_rational();
        let gx = g.vec_mul(x)?;
        Ok(gx.iter().zip(y).map(|(a, b)| a * b).sum())
    }

    /// `q(x) = x^2 mod 2Z`, in `[0, 2)`. Requires an even source.
    pub fn quadratic(&self, x: &[BigInt]) -> Result<BigRational> {
        if !self.source.is_even() {
            return Err(LatticeError::OddLattice);
        }
        let l = self.lift(x)?;
        Ok(mod_rational(&self.form(&l, &l)?, 2))
    }

    /// `b(x, y) = x . y mod Z`, in `[0, 1)`.
    pub fn bilinear(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigRational> {
        let lx = self.lift(x)?;
        let ly = self.lift(y)?;
        Ok(mod_rational(&self.form(&lx, &ly)?, 1))
    }

    /// Every element, in mixed-radix order. Only sensible for small groups.
    pub fn elements(&self) -> Vec<DiscElement> {
        let mut out = vec![self.zero()];
        for (i, d) in self.invariant_factors.iter().enumerate() {
            let mut next = Vec::new();
            for e in &out {
                let mut k = BigInt::zero();
                while &k < d {
                    let mut f = e.clone();
                    f[i] = k.clone();
                    next.push(f);
                    k += 1;
                }
            }
            out = next;
        }
        out
    }

    /// Image of `x` under the integer matrix `m` (row convention).
    pub fn apply(&self, m: &IntMatrix, x: &[BigInt]) -> Result<DiscElement> {
        let l = self.lift(x)?;
        let image = m.to_rational().vec_mul(&l)?;
        self.coords_of(&image)
    }

    pub fn neg(&self, x: &[BigInt]) -> DiscElement {
        self.reduce(x.iter().map(|c| -c).collect())
    }

    /// Induced action of an isometry matrix, classified against `±id`.
    pub fn action_of(&self, m: &IntMatrix) -> Result<DiscAction> {
        let mut matrix = Vec::with_capacity(self.length());
        for i in 0..self.length() {
            matrix.push(self.apply(m, &self.generator(i))?);
        }
        let is_id = (0..self.length()).all(|i| matrix[i] == self.generator(i));
        let is_neg = (0..self.length()).all(|i| matrix[i] == self.neg(&self.generator(i)));
        let classification = if is_id {
            DiscClass::Identity
        } else if is_neg {
            DiscClass::NegIdentity
        } else {
            DiscClass::Other
        };
        Ok(DiscAction {
            matrix,
            classification,
        })
    }
}

/// `r mod m`, in `[0, m)`.
pub fn mod_rational(r: &BigRational, m: i64) -> BigRational {
    let m = BigRational::from_integer(BigInt::from(m));
    let k = (r / &m).floor();
    let out = r - k * &m;
    debug_assert!(!out.is_negative());
    out
}

pub fn discriminant_group(a: &Lattice) -> DiscriminantGroup {
    DiscriminantGroup::new(a)
}

/// `g^#` for an isometry `g` of `a`.
pub fn induced_disc_action(a: &Lattice, g: &Isometry) -> Result<DiscAction> {
    if g.lattice() != a {
        return Err(LatticeError::Precondition(
            "isometry belongs to a different lattice".into(),
        ));
    }
    DiscriminantGroup::new(a).action_of(g.matrix())
}

/// Same as [`induced_disc_action`] for a raw matrix, which is validated first.
pub fn induced_disc_action_of_matrix(a: &Lattice, m: &IntMatrix) -> Result<DiscAction> {
    let g = crate::isometry::check_isometry(a, m)?;
    induced_disc_action(a, &g)
}
