//! Bilinear maps `B: A x A -> A` stored as rank-3 tensors.
//!
//! The layout is fixed everywhere: `t[i][j][k]` is the `e_k` coordinate of
//! `B(e_i, e_j)`, so the first tensor index is the first argument.

use num_traits::Zero;

use crate::algebra::Element;
use crate::error::{ensure_dim, Result};
use crate::linalg::{frac, rat, Rational, RationalMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BilinearTensor {
    dim: usize,
    t: Vec<Rational>,
}

impl BilinearTensor {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            t: vec![Rational::zero(); dim * dim * dim],
        }
    }

    /// Builds a tensor from its flat `(i*n + j)*n + k` coordinates.
    pub fn from_vector(dim: usize, t: Vec<Rational>) -> Result<Self> {
        ensure_dim(dim * dim * dim, t.len())?;
        Ok(Self { dim, t })
    }

    /// Sets `B(e_i, e_j) = value` for each listed pair; everything else is zero.
    pub fn from_basis_values(dim: usize, values: &[(usize, usize, Element)]) -> Result<Self> {
        let mut b = Self::zero(dim);
        for (i, j, v) in values {
            ensure_dim(dim, v.dim())?;
            for (k, c) in v.iter().enumerate() {
                b.set(*i, *j, k, c.clone());
            }
        }
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_vector(&self) -> &[Rational] {
        &self.t
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.t[self.index(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let idx = self.index(i, j, k);
        self.t[idx] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.t.iter().all(Zero::is_zero)
    }

    /// `B(e_i, e_j)`.
    pub fn on_basis(&self, i: usize, j: usize) -> Element {
        let start = self.index(i, j, 0);
        Element::new(self.t[start..start + self.dim].to_vec())
    }

    /// `sum_{i,j} x_i y_j B(e_i, e_j)`.
    pub fn evaluate(&self, x: &Element, y: &Element) -> Result<Element> {
        ensure_dim(self.dim, x.dim())?;
        ensure_dim(self.dim, y.dim())?;
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
        Ok(Element::new(out))
    }

    /// Matrix of `x -> B(x, e_j)`: column `i` holds `B(e_i, e_j)`.
    pub fn right_slice(&self, j: usize) -> RationalMatrix {
        let n = self.dim;
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for k in 0..n {
                m.set(k, i, self.get(i, j, k).clone());
            }
        }
        m
    }

    /// Matrix of `y -> B(e_i, y)`: column `j` holds `B(e_i, e_j)`.
    pub fn left_slice(&self, i: usize) -> RationalMatrix {
        let n = self.dim;
        let mut m = RationalMatrix::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                m.set(k, j, self.get(i, j, k).clone());
            }
        }
        m
    }

    /// `B^t(x, y) = B(y, x)`.
    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out.set(i, j, k, self.get(j, i, k).clone());
                }
            }
        }
        out
    }

    /// `sigma(B) = B + B^t`.
    pub fn sigma(&self) -> Self {
        self.try_add(&self.transpose()).expect("same dimension")
    }

    /// `alpha(B) = B - B^t`.
    pub fn alpha(&self) -> Self {
        self.try_sub(&self.transpose()).expect("same dimension")
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.try_add(&self.transpose())
            .expect("same dimension")
            .is_zero()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        ensure_dim(self.dim, other.dim)?;
        Ok(Self {
            dim: self.dim,
            t: self.t.iter().zip(&other.t).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        ensure_dim(self.dim, other.dim)?;
        Ok(Self {
            dim: self.dim,
            t: self.t.iter().zip(&other.t).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            dim: self.dim,
            t: self.t.iter().map(|v| v * s).collect(),
        }
    }

    /// Nonzero entries as `(i, j, k, value)` in index order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        let n = self.dim;
        self.t
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(idx, v)| (idx / (n * n), (idx / n) % n, idx % n, v))
    }
}

/// `B = 1/2 (sigma(B) + alpha(B))`; needs characteristic other than 2.
pub fn recompose(sigma: &BilinearTensor, alpha: &BilinearTensor) -> Result<BilinearTensor> {
    Ok(sigma.try_add(alpha)?.scale(&frac(1, 2)))
}

/// The two symmetric biderivations of the Heisenberg algebra used as a worked example:
/// `B1(e1,e1) = -B1(e2,e2) = e3`, `B1(e1,e2) = B1(e2,e1) = e1`, `B1(e2,e3) = B1(e3,e2) = e3`.
pub fn heisenberg_b1() -> BilinearTensor {
    let e = |i| Element::basis(3, i);
    BilinearTensor::from_basis_values(
        3,
        &[
            (0, 0, e(2)),
            (1, 1, e(2).scale(&rat(-1))),
            (0, 1, e(0)),
            (1, 0, e(0)),
            (1, 2, e(2)),
            (2, 1, e(2)),
        ],
    )
    .expect("dimension 3")
}

/// `B2(e1,e1) = e1`, `B2(e2,e2) = e2`, `B2(e1,e3) = B2(e3,e1) = B2(e2,e3) = B2(e3,e2) = e3`.
pub fn heisenberg_b2() -> BilinearTensor {
    let e = |i| Element::basis(3, i);
    BilinearTensor::from_basis_values(
        3,
        &[
            (0, 0, e(0)),
            (1, 1, e(1)),
            (0, 2, e(2)),
            (2, 0, e(2)),
            (1, 2, e(2)),
            (2, 1, e(2)),
        ],
    )
    .expect("dimension 3")
}
