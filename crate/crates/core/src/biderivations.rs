//! Right, left and two-sided biderivations among bilinear tensors.
//!
//! A bilinear `B` is a right biderivation when every `B(., y)` is a derivation,
//! i.e. `B([x,y],z) = [x,B(y,z)] + [B(x,z),y]`, and a left biderivation when every
//! `B(x, .)` is, i.e. `B(x,[y,z]) = [B(x,y),z] + [y,B(x,z)]`. Biderivations are both.

use num_traits::Zero;

use crate::algebra::{triples, Algebra, Element, Identity, IdentityFailure};
use crate::bilinear::BilinearTensor;
use crate::derivations::derivation_basis;
use crate::error::{ensure_dim, Result};
use crate::linalg::{nullspace, Rational, RationalMatrix, SubspaceBasis};

/// Both sides of the right condition at `(e_i, e_j, e_k)`.
pub fn right_condition(
    a: &Algebra,
    b: &BilinearTensor,
    i: usize,
    j: usize,
    k: usize,
) -> Result<(Element, Element)> {
    ensure_dim(a.dim(), b.dim())?;
    let n = a.dim();
    let e = |t| Element::basis(n, t);
    let lhs = b.evaluate(&a.basis_product(i, j), &e(k))?;
    let rhs = &a.bracket(&e(i), &b.on_basis(j, k))? + &a.bracket(&b.on_basis(i, k), &e(j))?;
    Ok((lhs, rhs))
}

/// Both sides of the left condition at `(e_i, e_j, e_k)`.
pub fn left_condition(
    a: &Algebra,
    b: &BilinearTensor,
    i: usize,
    j: usize,
    k: usize,
) -> Result<(Element, Element)> {
    ensure_dim(a.dim(), b.dim())?;
    let n = a.dim();
    let e = |t| Element::basis(n, t);
    let lhs = b.evaluate(&e(i), &a.basis_product(j, k))?;
    let rhs = &a.bracket(&b.on_basis(i, j), &e(k))? + &a.bracket(&e(j), &b.on_basis(i, k))?;
    Ok((lhs, rhs))
}

type Condition = fn(&Algebra, &BilinearTensor, usize, usize, usize) -> Result<(Element, Element)>;

fn first_defect(
    a: &Algebra,
    b: &BilinearTensor,
    cond: Condition,
    identity: Identity,
) -> Result<Option<IdentityFailure>> {
    ensure_dim(a.dim(), b.dim())?;
    for (i, j, k) in triples(a.dim()) {
        let (lhs, rhs) = cond(a, b, i, j, k)?;
        if lhs != rhs {
            return Ok(Some(IdentityFailure {
                identity,
                indices: vec![i, j, k],
                lhs,
                rhs,
            }));
        }
    }
    Ok(None)
}

/// First basis triple (lexicographic) violating the right condition.
pub fn right_defect(a: &Algebra, b: &BilinearTensor) -> Result<Option<IdentityFailure>> {
    first_defect(a, b, right_condition, Identity::RightBiderivation)
}

/// First basis triple (lexicographic) violating the left condition.
pub fn left_defect(a: &Algebra, b: &BilinearTensor) -> Result<Option<IdentityFailure>> {
    first_defect(a, b, left_condition, Identity::LeftBiderivation)
}

pub fn is_right_bider(a: &Algebra, b: &BilinearTensor) -> Result<bool> {
    Ok(right_defect(a, b)?.is_none())
}

pub fn is_left_bider(a: &Algebra, b: &BilinearTensor) -> Result<bool> {
    Ok(left_defect(a, b)?.is_none())
}

pub fn is_bider(a: &Algebra, b: &BilinearTensor) -> Result<bool> {
    Ok(is_right_bider(a, b)? && is_left_bider(a, b)?)
}

struct SystemBuilder {
    n: usize,
    sys: RationalMatrix,
}

impl SystemBuilder {
    fn new(n: usize) -> Self {
        Self {
            n,
            sys: RationalMatrix::zeros(n * n * n * n, n * n * n),
        }
    }

    fn unknown(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.n + b) * self.n + c
    }

    fn add(&mut self, row: usize, col: usize, v: &Rational) {
        if !v.is_zero() {
            let cur = self.sys.get(row, col) + v;
            self.sys.set(row, col, cur);
        }
    }
}

/// Linear system in the tensor coordinates whose kernel is the right biderivations.
/// Rows run over basis triples `(i,j,k)` lexicographically, then over output coordinates.
pub fn right_system(a: &Algebra) -> RationalMatrix {
    let n = a.dim();
    let mut s = SystemBuilder::new(n);
    for (t, (i, j, k)) in triples(n).enumerate() {
        for l in 0..n {
            let row = t * n + l;
            for m in 0..n {
                // B([e_i,e_j], e_k)
                let col = s.unknown(m, k, l);
                s.add(row, col, a.constant(i, j, m));
            }
            for r in 0..n {
                // -[e_i, B(e_j,e_k)] - [B(e_i,e_k), e_j]
                let col = s.unknown(j, k, r);
                s.add(row, col, &-a.constant(i, r, l));
                let col = s.unknown(i, k, r);
                s.add(row, col, &-a.constant(r, j, l));
            }
        }
    }
    s.sys
}

/// Mirror of [`right_system`] for the left condition.
pub fn left_system(a: &Algebra) -> RationalMatrix {
    let n = a.dim();
    let mut s = SystemBuilder::new(n);
    for (t, (i, j, k)) in triples(n).enumerate() {
        for l in 0..n {
            let row = t * n + l;
            for m in 0..n {
                // B(e_i, [e_j,e_k])
                let col = s.unknown(i, m, l);
                s.add(row, col, a.constant(j, k, m));
            }
            for r in 0..n {
                // -[B(e_i,e_j), e_k] - [e_j, B(e_i,e_k)]
                let col = s.unknown(i, j, r);
                s.add(row, col, &-a.constant(r, k, l));
                let col = s.unknown(i, k, r);
                s.add(row, col, &-a.constant(j, r, l));
            }
        }
    }
    s.sys
}

pub fn right_bider_bilinear_space(a: &Algebra) -> SubspaceBasis {
    nullspace(&right_system(a))
}

pub fn left_bider_bilinear_space(a: &Algebra) -> SubspaceBasis {
    nullspace(&left_system(a))
}

/// Tensors satisfying both conditions, from the stacked system.
pub fn bider_space(a: &Algebra) -> SubspaceBasis {
    let (r, l) = (right_system(a), left_system(a));
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(r.rows() + l.rows());
    for m in [&r, &l] {
        rows.extend((0..m.rows()).map(|i| m.row(i).to_vec()));
    }
    nullspace(&RationalMatrix::from_rows(rows).expect("same column count"))
}

/// Right biderivations assembled from `Der(A)`: choose a derivation for each `B(., e_j)`.
///
/// This is an independent route to [`right_bider_bilinear_space`] that goes through
/// the derivation system instead of the biderivation system.
pub fn right_space_from_derivations(a: &Algebra) -> SubspaceBasis {
    slices_from_derivations(a, |b, j, d| {
        let n = b.dim();
        for i in 0..n {
            for k in 0..n {
                b.set(i, j, k, d.get(k, i).clone());
            }
        }
    })
}

/// Left mirror of [`right_space_from_derivations`]: choose a derivation for each `B(e_i, .)`.
pub fn left_space_from_derivations(a: &Algebra) -> SubspaceBasis {
    slices_from_derivations(a, |b, i, d| {
        let n = b.dim();
        for j in 0..n {
            for k in 0..n {
                b.set(i, j, k, d.get(k, j).clone());
            }
        }
    })
}

fn slices_from_derivations(
    a: &Algebra,
    place: impl Fn(&mut BilinearTensor, usize, &RationalMatrix),
) -> SubspaceBasis {
    let n = a.dim();
    let ders = derivation_basis(a);
    let mut vectors = Vec::with_capacity(n * ders.len());
    for slot in 0..n {
        for d in &ders {
            let mut b = BilinearTensor::zero(n);
            place(&mut b, slot, d);
            vectors.push(b.as_vector().to_vec());
        }
    }
    SubspaceBasis::canonicalize(n * n * n, vectors).expect("n^3 coordinates")
}

/// Symmetric tensors `B = B^t` as a subspace of the tensor coordinates.
pub fn symmetric_tensors(n: usize) -> SubspaceBasis {
    swap_constrained(n, true)
}

/// Skew-symmetric tensors `B = -B^t`.
pub fn skew_symmetric_tensors(n: usize) -> SubspaceBasis {
    swap_constrained(n, false)
}

fn swap_constrained(n: usize, symmetric: bool) -> SubspaceBasis {
    let mut vectors = Vec::new();
    for i in 0..n {
        for j in i..n {
            if i == j && !symmetric {
                continue;
            }
            for k in 0..n {
                let mut b = BilinearTensor::zero(n);
                b.set(i, j, k, crate::linalg::rat(1));
                b.set(j, i, k, crate::linalg::rat(if symmetric { 1 } else { -1 }));
                vectors.push(b.as_vector().to_vec());
            }
        }
    }
    SubspaceBasis::canonicalize(n * n * n, vectors).expect("n^3 coordinates")
}

/// Basis vectors of a tensor subspace as tensors.
pub fn tensors(n: usize, space: &SubspaceBasis) -> Vec<BilinearTensor> {
    space
        .vectors()
        .iter()
        .map(|v| BilinearTensor::from_vector(n, v.clone()).expect("n^3 coordinates"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BUILTIN_CATALOG;
    use crate::bilinear::{heisenberg_b1, heisenberg_b2};
    use crate::derivations::derivation_space;
    use crate::linalg::rat;

    fn e(i: usize) -> Element {
        Element::basis(3, i)
    }

    /// The bracket table of `B1 > B2` on basis pairs: only `B(e2,e1) = -e1`.
    fn table_b() -> BilinearTensor {
        BilinearTensor::from_basis_values(3, &[(1, 0, e(0).scale(&rat(-1)))]).unwrap()
    }

    #[test]
    fn heisenberg_examples() {
        let h = Algebra::heisenberg3();
        assert!(is_bider(&h, &heisenberg_b1()).unwrap());
        assert!(is_bider(&h, &heisenberg_b2()).unwrap());
        let b = table_b();
        assert!(is_right_bider(&h, &b).unwrap());
        assert!(!is_left_bider(&h, &b).unwrap());
        assert!(!is_bider(&h, &b).unwrap());
        // Residual x2 y2 z1 - x2 y1 z2 at (e2,e2,e1) is e3.
        let (lhs, rhs) = left_condition(&h, &b, 1, 1, 0).unwrap();
        assert_eq!(&rhs - &lhs, e(2));
        let first = left_defect(&h, &b).unwrap().unwrap();
        assert_eq!(first.indices, vec![1, 0, 1]);
        assert_eq!(first.residual(), e(2).scale(&rat(-1)));
    }

    #[test]
    fn abelian_anything_goes() {
        let a = Algebra::abelian(3);
        let mut b = BilinearTensor::zero(3);
        b.set(0, 1, 2, rat(7));
        b.set(2, 2, 0, rat(-3));
        assert!(is_bider(&a, &b).unwrap());
        assert!(is_bider(&a, &BilinearTensor::zero(3)).unwrap());
        assert!(is_right_bider(&a, &BilinearTensor::zero(2)).is_err());
    }

    #[test]
    fn abelian_dimensions() {
        for n in 2..=3 {
            let a = Algebra::abelian(n);
            assert_eq!(bider_space(&a).dim(), n * n * n);
            assert_eq!(right_bider_bilinear_space(&a).dim(), n * n * n);
        }
    }

    #[test]
    fn structural_dimensions() {
        let h = Algebra::heisenberg3();
        assert_eq!(right_bider_bilinear_space(&h).dim(), 18);
        assert_eq!(right_bider_bilinear_space(&Algebra::sl2()).dim(), 9);
        for name in BUILTIN_CATALOG {
            let a = Algebra::builtin(name).unwrap();
            let n = a.dim();
            let der = derivation_space(&a).dim();
            let right = right_bider_bilinear_space(&a);
            let left = left_bider_bilinear_space(&a);
            assert_eq!(right.dim(), n * der, "{name}");
            assert_eq!(right, right_space_from_derivations(&a), "{name}");
            assert_eq!(left, left_space_from_derivations(&a), "{name}");
        }
    }

    #[test]
    fn intersection_law() {
        for name in BUILTIN_CATALOG {
            let a = Algebra::builtin(name).unwrap();
            let both = right_bider_bilinear_space(&a)
                .intersect(&left_bider_bilinear_space(&a))
                .unwrap();
            assert_eq!(bider_space(&a), both, "{name}");
        }
    }

    #[test]
    fn heisenberg_bider_space_contains_examples() {
        let h = Algebra::heisenberg3();
        let space = bider_space(&h);
        for b in tensors(3, &space) {
            assert!(is_bider(&h, &b).unwrap());
        }
        assert!(space.contains(heisenberg_b1().as_vector()).unwrap());
        assert!(space.contains(heisenberg_b2().as_vector()).unwrap());
        assert!(!space.contains(table_b().as_vector()).unwrap());
    }

    #[test]
    fn symmetric_right_biderivations_are_left() {
        for name in BUILTIN_CATALOG {
            let a = Algebra::builtin(name).unwrap();
            let n = a.dim();
            let right = right_bider_bilinear_space(&a);
            let left = left_bider_bilinear_space(&a);
            for part in [symmetric_tensors(n), skew_symmetric_tensors(n)] {
                let sub = right.intersect(&part).unwrap();
                assert!(sub.is_subspace_of(&left).unwrap(), "{name}");
            }
        }
    }

    #[test]
    fn swap_constrained_dimensions() {
        assert_eq!(symmetric_tensors(3).dim(), 6 * 3);
        assert_eq!(skew_symmetric_tensors(3).dim(), 3 * 3);
    }
}
