//! Derivations `D[x,y] = [Dx,y] + [x,Dy]` and their commutator bracket.

use num_traits::Zero;

use crate::algebra::{Algebra, Element, Identity, IdentityFailure, Kind};
use crate::error::{ensure_dim, Error, Result};
use crate::linalg::{nullspace, RationalMatrix, SubspaceBasis};

/// A matrix acting on coordinates that has been checked to be a derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationMatrix(RationalMatrix);

impl DerivationMatrix {
    pub fn new(algebra: &Algebra, m: RationalMatrix) -> Result<Self> {
        if is_derivation(algebra, &m)? {
            Ok(Self(m))
        } else {
            Err(Error::NotDerivation(algebra.name().to_string()))
        }
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> RationalMatrix {
        self.0
    }

    /// `[D1, D2] = D1 D2 - D2 D1`, again a derivation.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.commutator(&other.0)?))
    }
}

/// Basis pairs constrained by the Leibniz rule: `i < j` suffices for Lie algebras.
pub(crate) fn rule_pairs(algebra: &Algebra) -> Vec<(usize, usize)> {
    let n = algebra.dim();
    let lie = algebra.kind() == Kind::Lie;
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !lie || i < j)
        .collect()
}

/// First basis pair `(e_i, e_j)` where `m` breaks the Leibniz rule.
pub fn derivation_defect(algebra: &Algebra, m: &RationalMatrix) -> Result<Option<IdentityFailure>> {
    let n = algebra.dim();
    ensure_dim(n, m.rows())?;
    ensure_dim(n, m.cols())?;
    let images: Vec<Element> = (0..n).map(|i| Element::new(m.column(i))).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = Element::apply(m, &algebra.basis_product(i, j))?;
            let rhs = &algebra.bracket(&images[i], &Element::basis(n, j))?
                + &algebra.bracket(&Element::basis(n, i), &images[j])?;
            if lhs != rhs {
                return Ok(Some(IdentityFailure {
                    identity: Identity::Derivation,
                    indices: vec![i, j],
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(None)
}

pub fn is_derivation(algebra: &Algebra, m: &RationalMatrix) -> Result<bool> {
    Ok(derivation_defect(algebra, m)?.is_none())
}

/// Linear system whose kernel is `Der(A)`.
///
/// Unknowns are the matrix entries in column-major order (`D[r][c]` at `c*n + r`);
/// rows run over the constrained basis pairs, then over output coordinates.
pub fn derivation_system(algebra: &Algebra) -> RationalMatrix {
    let n = algebra.dim();
    let pairs = rule_pairs(algebra);
    let mut sys = RationalMatrix::zeros(pairs.len() * n, n * n);
    let unknown = |r: usize, c: usize| c * n + r;
    for (p, &(i, j)) in pairs.iter().enumerate() {
        for k in 0..n {
            let row = p * n + k;
            let mut add = |col: usize, v: &crate::linalg::Rational| {
                if !v.is_zero() {
                    let cur = sys.get(row, col) + v;
                    sys.set(row, col, cur);
                }
            };
            // D[e_i, e_j]
            for m in 0..n {
                add(unknown(k, m), algebra.constant(i, j, m));
            }
            // -[D e_i, e_j] - [e_i, D e_j]
            for r in 0..n {
                add(unknown(r, i), &-algebra.constant(r, j, k));
                add(unknown(r, j), &-algebra.constant(i, r, k));
            }
        }
    }
    sys
}

/// Canonical basis of `Der(A)` inside the column-major coordinates of `n x n` matrices.
pub fn derivation_space(algebra: &Algebra) -> SubspaceBasis {
    nullspace(&derivation_system(algebra))
}

pub fn derivation_basis(algebra: &Algebra) -> Vec<RationalMatrix> {
    space_matrices(algebra.dim(), &derivation_space(algebra))
}

pub fn space_matrices(n: usize, space: &SubspaceBasis) -> Vec<RationalMatrix> {
    space
        .vectors()
        .iter()
        .map(|v| RationalMatrix::from_column_major(n, v).expect("n*n coordinates"))
        .collect()
}

pub fn commutator(d1: &RationalMatrix, d2: &RationalMatrix) -> Result<RationalMatrix> {
    d1.commutator(d2)
}
