//! Exact linear algebra over the rationals.
//!
//! Everything here works with [`Rational`] (arbitrary-precision numerator and
//! denominator) so that ranks, nullspaces and subspace comparisons are exact.
//! Subspaces are kept in reduced row echelon form, which makes equality of
//! spans a plain component-wise comparison.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{ensure_dim, Result};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major matrix with rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n_rows = rows.len();
        let mut entries = Vec::with_capacity(n_rows * cols);
        for row in rows {
            ensure_dim(cols, row.len())?;
            entries.extend(row);
        }
        Ok(Self {
            rows: n_rows,
            cols,
            entries,
        })
    }

    /// Convenience constructor for integer literals; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| rat(v)).collect())
            .collect();
        Self::from_rows(rows).expect("ragged integer matrix")
    }

    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        ensure_dim(rows * cols, entries.len())?;
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a square matrix from a vector holding its entries column by column.
    pub fn from_column_major(n: usize, v: &[Rational]) -> Result<Self> {
        ensure_dim(n * n, v.len())?;
        let mut m = Self::zeros(n, n);
        for c in 0..n {
            for r in 0..n {
                m.set(r, c, v[c * n + r].clone());
            }
        }
        Ok(m)
    }

    pub fn to_column_major(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                v.push(self.get(r, c).clone());
            }
        }
        v
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        ensure_dim(self.cols, v.len())?;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        ensure_dim(self.cols, other.rows)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * other.cols + c;
                    out.entries[idx] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        ensure_dim(self.rows, other.rows)?;
        ensure_dim(self.cols, other.cols)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(to_f64).collect())
            .collect()
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: Self) -> RationalMatrix {
        self.try_add(rhs).expect("matrix shapes differ")
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;
    fn sub(self, rhs: Self) -> RationalMatrix {
        self.try_sub(rhs).expect("matrix shapes differ")
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: Self) -> RationalMatrix {
        self.try_mul(rhs).expect("matrix shapes differ")
    }
}

impl Neg for &RationalMatrix {
    type Output = RationalMatrix;
    fn neg(self) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Row-reduces in place and returns the pivot columns.
fn reduce(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows.len() {
            break;
        }
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = rows[pivot_row][col].recip();
        if !inv.is_one() {
            for v in rows[pivot_row][col..].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let pivot = std::mem::take(&mut rows[pivot_row]);
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (c, p) in pivot.iter().enumerate().skip(col) {
                if !p.is_zero() {
                    row[c] -= &factor * p;
                }
            }
        }
        rows[pivot_row] = pivot;
        pivots.push(col);
        pivot_row += 1;
    }
    pivots
}

/// Reduced row echelon form and rank.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, usize) {
    let mut rows: Vec<Vec<Rational>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    let pivots = reduce(&mut rows, m.cols());
    let entries = rows.into_iter().flatten().collect();
    let out = RationalMatrix::from_row_major(m.rows(), m.cols(), entries)
        .expect("row reduction keeps the shape");
    (out, pivots.len())
}

pub fn rank(m: &RationalMatrix) -> usize {
    rref(m).1
}

/// Canonical basis of the kernel `{v : m v = 0}`.
pub fn nullspace(m: &RationalMatrix) -> SubspaceBasis {
    let cols = m.cols();
    let mut rows: Vec<Vec<Rational>> = (0..m.rows())
        .map(|r| m.row(r).to_vec())
        .filter(|row| row.iter().any(|v| !v.is_zero()))
        .collect();
    let pivots = reduce(&mut rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&rows[row][free];
            }
            v
        })
        .collect();
    // Free-variable vectors are independent; canonical form only reorders/normalizes.
    SubspaceBasis::canonicalize(cols, vectors).expect("kernel vectors share the column count")
}

/// A subspace of `Q^ambient_dim` stored as an RREF basis.
///
/// Pivot columns strictly increase, each pivot entry is 1 and every pivot column is
/// zero in the other vectors. Two subspaces are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<Vec<Rational>>,
}

impl SubspaceBasis {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let vectors = (0..ambient_dim).map(|i| unit(ambient_dim, i)).collect();
        Self {
            ambient_dim,
            vectors,
        }
    }

    pub fn canonicalize(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        for v in &vectors {
            ensure_dim(ambient_dim, v.len())?;
        }
        let mut rows: Vec<Vec<Rational>> = vectors
            .into_iter()
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        let rank = reduce(&mut rows, ambient_dim).len();
        rows.truncate(rank);
        Ok(Self {
            ambient_dim,
            vectors: rows,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.vectors
            .iter()
            .map(|v| {
                v.iter()
                    .position(|x| !x.is_zero())
                    .expect("basis vectors are nonzero")
            })
            .collect()
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        ensure_dim(self.ambient_dim, v.len())?;
        let mut rest = v.to_vec();
        for (b, p) in self.vectors.iter().zip(self.pivots()) {
            if rest[p].is_zero() {
                continue;
            }
            let coeff = rest[p].clone();
            for (r, x) in rest.iter_mut().zip(b) {
                if !x.is_zero() {
                    *r -= &coeff * x;
                }
            }
        }
        Ok(rest.iter().all(Zero::is_zero))
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        ensure_dim(other.ambient_dim, self.ambient_dim)?;
        for v in &self.vectors {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Span of both bases.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        ensure_dim(self.ambient_dim, other.ambient_dim)?;
        let all = self.vectors.iter().chain(&other.vectors).cloned().collect();
        Self::canonicalize(self.ambient_dim, all)
    }

    /// Intersection, computed from the kernel of `[U | -V]`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        ensure_dim(self.ambient_dim, other.ambient_dim)?;
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Self::zero(self.ambient_dim));
        }
        let mut m = RationalMatrix::zeros(self.ambient_dim, a + b);
        for (j, u) in self.vectors.iter().enumerate() {
            for (i, x) in u.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        for (j, v) in other.vectors.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.set(i, a + j, -x);
            }
        }
        let kernel = nullspace(&m);
        let vectors = kernel
            .vectors()
            .iter()
            .map(|coeffs| combine(&self.vectors, &coeffs[..a]))
            .collect();
        Self::canonicalize(self.ambient_dim, vectors)
    }

    /// Coordinates of `v` in this basis, if `v` lies in the span.
    ///
    /// Since the basis is in RREF, the coordinate on vector `i` is `v[pivot_i]`.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(
            self.pivots().into_iter().map(|p| v[p].clone()).collect(),
        ))
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// `sum_i coeffs[i] * vectors[i]`; all vectors must share a length.
pub fn combine(vectors: &[Vec<Rational>], coeffs: &[Rational]) -> Vec<Rational> {
    let len = vectors.first().map_or(0, Vec::len);
    let mut out = vec![Rational::zero(); len];
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    out
}

pub(crate) fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    let bad = || format!("not a rational literal: `{s}`");
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = RationalMatrix::identity(3);
        assert_eq!(rref(&id), (id.clone(), 3));
        let z = RationalMatrix::zeros(2, 4);
        assert_eq!(rref(&z), (z.clone(), 0));
    }

    #[test]
    fn rref_rank_one() {
        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let (r, rank) = rref(&m);
        assert_eq!(rank, 1);
        assert_eq!(r, RationalMatrix::from_i64(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_normalizes_fractions() {
        let m = RationalMatrix::from_i64(&[&[2, 1, 0], &[0, 3, 1]]);
        let (r, rank) = rref(&m);
        assert_eq!(rank, 2);
        assert_eq!(r.row(0), &[rat(1), rat(0), frac(-1, 6)]);
        assert_eq!(r.row(1), &[rat(0), rat(1), frac(1, 3)]);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&RationalMatrix::identity(4)).dim(), 0);
        assert_eq!(nullspace(&RationalMatrix::zeros(1, 5)).dim(), 5);
        let m = RationalMatrix::from_i64(&[&[1, 1, 0]]);
        let ns = nullspace(&m);
        assert_eq!(ns.dim(), 2);
        for b in ns.vectors() {
            assert!(m.mul_vec(b).unwrap().iter().all(Zero::is_zero));
        }
        assert_eq!(ns.vectors(), &[v(&[1, -1, 0]), v(&[0, 0, 1])]);
    }

    #[test]
    fn canonicalize_examples() {
        let s = SubspaceBasis::canonicalize(2, vec![v(&[2, 0]), v(&[0, 3])]).unwrap();
        assert_eq!(s.vectors(), &[v(&[1, 0]), v(&[0, 1])]);
        let s = SubspaceBasis::canonicalize(2, vec![v(&[1, 1]), v(&[2, 2])]).unwrap();
        assert_eq!(s.vectors(), &[v(&[1, 1])]);
        let s = SubspaceBasis::canonicalize(3, vec![v(&[1, 2, 3]), v(&[0, 1, 1])]).unwrap();
        assert_eq!(s.pivots(), vec![0, 1]);
        assert_eq!(s.vectors(), &[v(&[1, 0, 1]), v(&[0, 1, 1])]);
    }

    #[test]
    fn canonicalize_rejects_mixed_lengths() {
        let err = SubspaceBasis::canonicalize(2, vec![v(&[1, 0, 0])]).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn intersection_and_membership() {
        let a = SubspaceBasis::canonicalize(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let b = SubspaceBasis::canonicalize(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i.vectors(), &[v(&[0, 1, 0])]);
        assert!(a.contains(&v(&[3, -2, 0])).unwrap());
        assert!(!a.contains(&v(&[0, 0, 1])).unwrap());
        assert_eq!(a.sum(&b).unwrap(), SubspaceBasis::full(3));
        assert_eq!(
            a.coordinates(&v(&[3, -2, 0])).unwrap(),
            Some(vec![rat(3), rat(-2)])
        );
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-3/6").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational(" 4 ").unwrap(), rat(4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
        assert_eq!(format_rational(&frac(6, -4)), "-3/2");
        assert_eq!(format_rational(&rat(0)), "0");
    }
}
