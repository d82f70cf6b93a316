//! Finite-dimensional algebras given by structure constants.

use std::fmt;
use std::ops::{Add, Deref, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ensure_dim, Error, Result};
use crate::linalg::{format_rational, rat, Rational, RationalMatrix};

/// A vector in coordinates with respect to the basis `e_1, ..., e_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element(Vec<Rational>);

impl Element {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![Rational::zero(); n])
    }

    /// Basis vector `e_{i+1}` (indices are 0-based in code).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut e = Self::zero(n);
        e.0[i] = Rational::one();
        e
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self(self.0.iter().map(|c| c * s).collect())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        ensure_dim(self.dim(), other.dim())?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        ensure_dim(self.dim(), other.dim())?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn apply(m: &RationalMatrix, x: &Self) -> Result<Self> {
        Ok(Self(m.mul_vec(&x.0)?))
    }
}

impl Deref for Element {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: Self) -> Element {
        self.try_add(rhs).expect("element dimensions differ")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: Self) -> Element {
        self.try_sub(rhs).expect("element dimensions differ")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element(self.0.iter().map(|c| -c).collect())
    }
}

/// Prints as a linear combination, e.g. `-e1`, `e1 + 2*e3`, `1/2*e2`, or `0`.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < Rational::zero();
            let mag = if negative { -c } else { c.clone() };
            let sign = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            if mag.is_one() {
                write!(f, "{sign}e{}", i + 1)?;
            } else {
                write!(f, "{sign}{}*e{}", format_rational(&mag), i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Lie,
    LeibnizLeft,
    LeibnizRight,
    Generic,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Lie => "lie",
            Kind::LeibnizLeft => "leibniz-left",
            Kind::LeibnizRight => "leibniz-right",
            Kind::Generic => "generic",
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Kind::LeibnizLeft => Kind::LeibnizRight,
            Kind::LeibnizRight => Kind::LeibnizLeft,
            k => k,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "lie" => Ok(Kind::Lie),
            "leibniz-left" => Ok(Kind::LeibnizLeft),
            "leibniz-right" => Ok(Kind::LeibnizRight),
            "generic" => Ok(Kind::Generic),
            other => Err(format!("unknown algebra kind `{other}`")),
        }
    }
}

/// Names of the identities checked on basis elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `[x,y] = -[y,x]`
    Antisymmetry,
    /// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0`
    Jacobi,
    /// `[x,[y,z]] = [[x,y],z] + [y,[x,z]]`
    LeftLeibniz,
    /// `[[x,y],z] = [[x,z],y] + [x,[y,z]]`
    RightLeibniz,
    /// `D[x,y] = [Dx,y] + [x,Dy]`
    Derivation,
    /// `B([x,y],z) = [x,B(y,z)] + [B(x,z),y]`
    RightBiderivation,
    /// `B(x,[y,z]) = [B(x,y),z] + [y,B(x,z)]`
    LeftBiderivation,
}

impl Identity {
    pub fn as_str(self) -> &'static str {
        match self {
            Identity::Antisymmetry => "antisymmetry",
            Identity::Jacobi => "jacobi",
            Identity::LeftLeibniz => "left-leibniz",
            Identity::RightLeibniz => "right-leibniz",
            Identity::Derivation => "derivation",
            Identity::RightBiderivation => "right-biderivation",
            Identity::LeftBiderivation => "left-biderivation",
        }
    }
}

/// A basis instance where an identity fails. `residual = rhs - lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    pub identity: Identity,
    /// 0-based basis indices of the arguments, in argument order.
    pub indices: Vec<usize>,
    pub lhs: Element,
    pub rhs: Element,
}

impl IdentityFailure {
    pub fn residual(&self) -> Element {
        &self.rhs - &self.lhs
    }
}

impl fmt::Display for IdentityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.indices.iter().map(|i| format!("e{}", i + 1)).collect();
        write!(
            f,
            "{} at ({}): lhs = {}, rhs = {}, residual = {}",
            self.identity.as_str(),
            args.join(","),
            self.lhs,
            self.rhs,
            self.residual()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KindReport {
    pub kind: Kind,
    /// Every failing basis instance, in lexicographic order of indices.
    pub failures: Vec<IdentityFailure>,
}

impl KindReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&IdentityFailure> {
        self.failures.first()
    }

    pub fn failure_at(&self, indices: &[usize]) -> Option<&IdentityFailure> {
        self.failures.iter().find(|f| f.indices == indices)
    }
}

/// Structure constants `c[i][j][k]` with `[e_i, e_j] = sum_k c[i][j][k] e_k`.
///
/// Constants are stored in full, so non-antisymmetric products fit as well.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    dim: usize,
    kind: Kind,
    constants: Vec<Rational>,
}

impl Algebra {
    pub fn new(name: impl Into<String>, dim: usize, kind: Kind) -> Self {
        Self {
            name: name.into(),
            dim,
            kind,
            constants: vec![Rational::zero(); dim * dim * dim],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn with_kind(mut self, kind: Kind) -> Self {
        self.kind = kind;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[self.index(i, j, k)]
    }

    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let idx = self.index(i, j, k);
        self.constants[idx] = v;
    }

    /// Sets `[e_i, e_j] = v` and `[e_j, e_i] = -v`.
    pub fn set_antisymmetric(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        self.set_constant(j, i, k, -&v);
        self.set_constant(i, j, k, v);
    }

    /// `[e_i, e_j]`.
    pub fn basis_product(&self, i: usize, j: usize) -> Element {
        let start = self.index(i, j, 0);
        Element(self.constants[start..start + self.dim].to_vec())
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        ensure_dim(self.dim, x.dim())?;
        ensure_dim(self.dim, y.dim())?;
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let coeff = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o += &coeff * c;
                    }
                }
            }
        }
        Ok(Element(out))
    }

    /// Matrix of left multiplication `y -> [x, y]`.
    pub fn ad(&self, x: &Element) -> Result<RationalMatrix> {
        ensure_dim(self.dim, x.dim())?;
        let n = self.dim;
        let mut m = RationalMatrix::zeros(n, n);
        for j in 0..n {
            let col = self.bracket(x, &Element::basis(n, j))?;
            for (r, v) in col.into_coords().into_iter().enumerate() {
                m.set(r, j, v);
            }
        }
        Ok(m)
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().all(Zero::is_zero)
    }

    /// Checks the identities demanded by the declared kind.
    pub fn check_kind(&self) -> KindReport {
        self.check_as(self.kind)
    }

    /// Checks the identities of `kind` on every basis pair/triple.
    pub fn check_as(&self, kind: Kind) -> KindReport {
        let n = self.dim;
        let e = |i| Element::basis(n, i);
        let br = |a: &Element, b: &Element| self.bracket(a, b).expect("dimensions agree");
        let mut failures = Vec::new();
        match kind {
            Kind::Generic => {}
            Kind::Lie => {
                for i in 0..n {
                    for j in 0..n {
                        let lhs = self.basis_product(i, j);
                        let rhs = -&self.basis_product(j, i);
                        if lhs != rhs {
                            failures.push(IdentityFailure {
                                identity: Identity::Antisymmetry,
                                indices: vec![i, j],
                                lhs,
                                rhs,
                            });
                        }
                    }
                }
                for (i, j, k) in triples(n) {
                    let (x, y, z) = (e(i), e(j), e(k));
                    let sum = &(&br(&x, &br(&y, &z)) + &br(&y, &br(&z, &x))) + &br(&z, &br(&x, &y));
                    if !sum.is_zero() {
                        failures.push(IdentityFailure {
                            identity: Identity::Jacobi,
                            indices: vec![i, j, k],
                            lhs: sum,
                            rhs: Element::zero(n),
                        });
                    }
                }
            }
            Kind::LeibnizLeft => {
                for (i, j, k) in triples(n) {
                    let (x, y, z) = (e(i), e(j), e(k));
                    let lhs = br(&x, &br(&y, &z));
                    let rhs = &br(&br(&x, &y), &z) + &br(&y, &br(&x, &z));
                    if lhs != rhs {
                        failures.push(IdentityFailure {
                            identity: Identity::LeftLeibniz,
                            indices: vec![i, j, k],
                            lhs,
                            rhs,
                        });
                    }
                }
            }
            Kind::LeibnizRight => {
                for (i, j, k) in triples(n) {
                    let (x, y, z) = (e(i), e(j), e(k));
                    let lhs = br(&br(&x, &y), &z);
                    let rhs = &br(&br(&x, &z), &y) + &br(&x, &br(&y, &z));
                    if lhs != rhs {
                        failures.push(IdentityFailure {
                            identity: Identity::RightLeibniz,
                            indices: vec![i, j, k],
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
        KindReport { kind, failures }
    }

    /// The opposite product `{x, y} = [y, x]`; swaps left and right Leibniz.
    pub fn opposite(&self) -> Self {
        let n = self.dim;
        let mut op = Self::new(format!("{}^op", self.name), n, self.kind.opposite());
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    op.set_constant(j, i, k, self.constant(i, j, k).clone());
                }
            }
        }
        op
    }

    pub fn abelian(n: usize) -> Self {
        Self::new(format!("abelian({n})"), n, Kind::Lie)
    }

    /// `[e1, e2] = e3`, antisymmetrized.
    pub fn heisenberg3() -> Self {
        let mut a = Self::new("heisenberg3", 3, Kind::Lie);
        a.set_antisymmetric(0, 1, 2, rat(1));
        a
    }

    /// Basis `(h, e, f)` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
    pub fn sl2() -> Self {
        let mut a = Self::new("sl2", 3, Kind::Lie);
        a.set_antisymmetric(0, 1, 1, rat(2));
        a.set_antisymmetric(0, 2, 2, rat(-2));
        a.set_antisymmetric(1, 2, 0, rat(1));
        a
    }

    /// The two-dimensional left Leibniz algebras `L1`..`L4`.
    pub fn leibniz2(which: u8) -> Result<Self> {
        let name = format!("L{which}");
        let mut a = Self::new(name.clone(), 2, Kind::LeibnizLeft);
        match which {
            1 => a.kind = Kind::Lie,
            2 => {
                a.kind = Kind::Lie;
                a.set_antisymmetric(0, 1, 1, rat(1));
            }
            3 => a.set_constant(1, 1, 0, rat(1)),
            4 => {
                a.set_constant(1, 0, 0, rat(1));
                a.set_constant(1, 1, 0, rat(1));
            }
            _ => return Err(Error::UnknownAlgebra(name)),
        }
        Ok(a)
    }

    /// Looks up a built-in algebra: `abelian(n)` (or `abelianN`), `L1`..`L4`,
    /// `heisenberg3` (or `heisenberg`), `sl2`.
    pub fn builtin(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownAlgebra(name.to_string());
        match name {
            "heisenberg3" | "heisenberg" => Ok(Self::heisenberg3()),
            "sl2" => Ok(Self::sl2()),
            "L1" | "L2" | "L3" | "L4" => Self::leibniz2(name.as_bytes()[1] - b'0'),
            _ => {
                let digits = name
                    .strip_prefix("abelian(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| name.strip_prefix("abelian"))
                    .ok_or_else(unknown)?;
                let n: usize = digits.parse().map_err(|_| unknown())?;
                if n == 0 {
                    return Err(unknown());
                }
                Ok(Self::abelian(n))
            }
        }
    }
}

/// The built-in algebras exercised by the verification suites.
pub const BUILTIN_CATALOG: &[&str] = &[
    "abelian(2)",
    "abelian(3)",
    "L1",
    "L2",
    "L3",
    "L4",
    "heisenberg3",
    "sl2",
];

pub(crate) fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
}
