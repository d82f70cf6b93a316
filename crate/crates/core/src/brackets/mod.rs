//! The brackets `>` on right biderivations and `<` on left biderivations.
//!
//! `B1 > B2 (x,y) = B1(B2(x,y),y) - B2(B1(x,y),y)` is quadratic in `y` even when
//! both inputs are bilinear, so maps are carried as polynomials in the frozen
//! argument with matrix coefficients acting on the other one:
//!
//! * right maps: `B(x,y) = sum_a y^a (M_a x)`
//! * left maps:  `B(x,y) = sum_a x^a (N_a y)`
//!
//! In this form the bracket is a current-algebra commutator,
//! `sum_{a,b} y^(a+b) [M_a, N_b]`, and therefore exact.

mod verify;

use std::collections::BTreeMap;
use std::marker::PhantomData;

use num_traits::Zero;

pub use verify::{verify_lie_algebra, verify_section4, verify_sigma_alpha, Side};

use crate::algebra::{Algebra, Element};
use crate::bilinear::BilinearTensor;
use crate::derivations::is_derivation;
use crate::error::{ensure_dim, Error, Result};
use crate::linalg::{Rational, RationalMatrix};
use crate::poly::MultiIndex;

/// Which argument a polynomial map freezes.
pub trait Frozen: Clone + std::fmt::Debug + PartialEq + Eq {
    type Opposite: Frozen<Opposite = Self>;
    /// Splits `(x, y)` into `(frozen argument, argument the matrices act on)`.
    fn split<'a>(x: &'a Element, y: &'a Element) -> (&'a Element, &'a Element);
    /// Coefficient matrix of the basis monomial `e_s` in the frozen slot.
    fn slice(b: &BilinearTensor, s: usize) -> RationalMatrix;
    /// Tensor position of `(frozen index, acted-on index)`.
    fn position(frozen: usize, moving: usize) -> (usize, usize);
}

/// Marker for maps linear in the first argument, polynomial in the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RightSide;

/// Marker for maps linear in the second argument, polynomial in the first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeftSide;

impl Frozen for RightSide {
    type Opposite = LeftSide;
    fn split<'a>(x: &'a Element, y: &'a Element) -> (&'a Element, &'a Element) {
        (y, x)
    }
    fn slice(b: &BilinearTensor, s: usize) -> RationalMatrix {
        b.right_slice(s)
    }
    fn position(frozen: usize, moving: usize) -> (usize, usize) {
        (moving, frozen)
    }
}

impl Frozen for LeftSide {
    type Opposite = RightSide;
    fn split<'a>(x: &'a Element, y: &'a Element) -> (&'a Element, &'a Element) {
        (x, y)
    }
    fn slice(b: &BilinearTensor, s: usize) -> RationalMatrix {
        b.left_slice(s)
    }
    fn position(frozen: usize, moving: usize) -> (usize, usize) {
        (frozen, moving)
    }
}

/// Finite sum of monomials in the frozen argument times matrices; zero matrices
/// are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap<S: Frozen> {
    dim: usize,
    terms: BTreeMap<MultiIndex, RationalMatrix>,
    side: PhantomData<S>,
}

/// `B(x,y) = sum_a y^a (M_a x)`.
pub type PolyRightMap = PolyMap<RightSide>;
/// `B(x,y) = sum_a x^a (N_a y)`.
pub type PolyLeftMap = PolyMap<LeftSide>;

impl<S: Frozen> PolyMap<S> {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
            side: PhantomData,
        }
    }

    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (MultiIndex, RationalMatrix)>,
    ) -> Result<Self> {
        let mut out = Self::zero(dim);
        for (a, m) in terms {
            ensure_dim(dim, a.len())?;
            ensure_dim(dim, m.rows())?;
            ensure_dim(dim, m.cols())?;
            out.add_term(a, &m);
        }
        Ok(out)
    }

    /// Degree-1 map with the same values as the tensor.
    pub fn from_tensor(b: &BilinearTensor) -> Self {
        let n = b.dim();
        let mut out = Self::zero(n);
        for s in 0..n {
            out.add_term(MultiIndex::unit(n, s), &S::slice(b, s));
        }
        out
    }

    /// Inverse of [`Self::from_tensor`]; fails unless every monomial has degree 1.
    pub fn to_tensor(&self) -> Result<BilinearTensor> {
        let n = self.dim;
        let mut b = BilinearTensor::zero(n);
        for (a, m) in &self.terms {
            if a.degree() != 1 {
                return Err(Error::NotBilinear(a.degree()));
            }
            let s = a
                .exponents()
                .iter()
                .position(|&e| e == 1)
                .expect("degree 1");
            for moving in 0..n {
                let (i, j) = S::position(s, moving);
                for k in 0..n {
                    b.set(i, j, k, m.get(k, moving).clone());
                }
            }
        }
        Ok(b)
    }

    /// Values on basis pairs, `t[i][j] = B(e_i, e_j)`.
    ///
    /// Agrees with [`Self::to_tensor`] on degree-1 maps; for higher degree maps it is
    /// only the restriction to basis pairs, not the map itself.
    pub fn basis_table(&self) -> BilinearTensor {
        let n = self.dim;
        let mut b = BilinearTensor::zero(n);
        for i in 0..n {
            for j in 0..n {
                let v = self
                    .evaluate(&Element::basis(n, i), &Element::basis(n, j))
                    .expect("basis elements have the right dimension");
                for (k, c) in v.into_coords().into_iter().enumerate() {
                    b.set(i, j, k, c);
                }
            }
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &RationalMatrix)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, a: &MultiIndex) -> Option<&RationalMatrix> {
        self.terms.get(a)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    pub fn add_term(&mut self, a: MultiIndex, m: &RationalMatrix) {
        if m.is_zero() {
            return;
        }
        match self.terms.get_mut(&a) {
            Some(cur) => {
                *cur = &*cur + m;
                if cur.is_zero() {
                    self.terms.remove(&a);
                }
            }
            None => {
                self.terms.insert(a, m.clone());
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        ensure_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (a, m) in &other.terms {
            out.add_term(a.clone(), m);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&Rational::from_integer((-1).into())))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.dim);
        if s.is_zero() {
            return out;
        }
        for (a, m) in &self.terms {
            out.add_term(a.clone(), &m.scale(s));
        }
        out
    }

    /// The linear map obtained by freezing the polynomial argument at `frozen`.
    pub fn frozen_at(&self, frozen: &Element) -> Result<RationalMatrix> {
        ensure_dim(self.dim, frozen.dim())?;
        let mut out = RationalMatrix::zeros(self.dim, self.dim);
        for (a, m) in &self.terms {
            let w = a.eval(frozen);
            if !w.is_zero() {
                out = &out + &m.scale(&w);
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, x: &Element, y: &Element) -> Result<Element> {
        ensure_dim(self.dim, x.dim())?;
        ensure_dim(self.dim, y.dim())?;
        let (frozen, moving) = S::split(x, y);
        Element::apply(&self.frozen_at(frozen)?, moving)
    }

    /// `B^t(x,y) = B(y,x)`: same coefficients, the other argument frozen.
    pub fn transpose(&self) -> PolyMap<S::Opposite> {
        PolyMap {
            dim: self.dim,
            terms: self.terms.clone(),
            side: PhantomData,
        }
    }

    /// Closed-form bracket `sum_{a,b} z^(a+b) [M_a, N_b]`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        ensure_dim(self.dim, other.dim)?;
        let mut out = Self::zero(self.dim);
        for (a, m) in &self.terms {
            for (b, n) in &other.terms {
                out.add_term(a.add(b), &m.commutator(n)?);
            }
        }
        Ok(out)
    }

    /// Every coefficient matrix is a derivation. Over an infinite field this is
    /// equivalent to every frozen map being a derivation, since distinct monomials
    /// are linearly independent functions.
    pub fn coefficients_are_derivations(&self, a: &Algebra) -> Result<bool> {
        ensure_dim(a.dim(), self.dim)?;
        for m in self.terms.values() {
            if !is_derivation(a, m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Right biderivation test: every `B(., y)` is a derivation.
pub fn is_right_bider_poly(a: &Algebra, b: &PolyRightMap) -> Result<bool> {
    b.coefficients_are_derivations(a)
}

/// Left biderivation test: every `B(x, .)` is a derivation.
pub fn is_left_bider_poly(a: &Algebra, b: &PolyLeftMap) -> Result<bool> {
    b.coefficients_are_derivations(a)
}

/// `B1 > B2`.
pub fn rhd(b1: &PolyRightMap, b2: &PolyRightMap) -> Result<PolyRightMap> {
    b1.bracket(b2)
}

/// `B1 < B2 (x,y) = B1(x, B2(x,y)) - B2(x, B1(x,y))`.
pub fn lhd(b1: &PolyLeftMap, b2: &PolyLeftMap) -> Result<PolyLeftMap> {
    b1.bracket(b2)
}

/// `B1 > B2` evaluated straight from its defining formula.
pub fn rhd_at(b1: &PolyRightMap, b2: &PolyRightMap, x: &Element, y: &Element) -> Result<Element> {
    let first = b1.evaluate(&b2.evaluate(x, y)?, y)?;
    let second = b2.evaluate(&b1.evaluate(x, y)?, y)?;
    first.try_sub(&second)
}

/// `B1 < B2` evaluated straight from its defining formula.
pub fn lhd_at(b1: &PolyLeftMap, b2: &PolyLeftMap, x: &Element, y: &Element) -> Result<Element> {
    let first = b1.evaluate(x, &b2.evaluate(x, y)?)?;
    let second = b2.evaluate(x, &b1.evaluate(x, y)?)?;
    first.try_sub(&second)
}
