//! Right biderivations of the form `B(x,y) = g(y) F(x)` with `g` a polynomial.
//!
//! Such a `B` is a right biderivation exactly when `F` is a derivation (for `g` not
//! identically zero); brackets stay in the class; and `s -> exp(sF)` is a curve of
//! automorphisms whose derivative at 0 gives back `g(y) F(x)`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element, Kind};
use crate::brackets::{is_right_bider_poly, PolyRightMap};
use crate::derivations::{derivation_basis, is_derivation};
use crate::error::{ensure_dim, Error, Result};
use crate::linalg::{frac, rat, to_f64, Rational, RationalMatrix};
use crate::poly::{MultiIndex, ScalarPoly};
use crate::report::{CheckOutcome, Tally};
use crate::sampling::Sampler;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarTimesDerivation {
    pub g: ScalarPoly,
    pub f: RationalMatrix,
}

impl ScalarTimesDerivation {
    pub fn new(g: ScalarPoly, f: RationalMatrix) -> Result<Self> {
        ensure_dim(g.dim(), f.rows())?;
        ensure_dim(g.dim(), f.cols())?;
        Ok(Self { g, f })
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    /// `g(y) * (F x)`.
    pub fn evaluate(&self, x: &Element, y: &Element) -> Result<Element> {
        let gy = self.g.eval(y)?;
        Ok(Element::apply(&self.f, x)?.scale(&gy))
    }

    /// Terms `a -> c_a F` for each monomial of `g`.
    pub fn to_poly_right(&self) -> PolyRightMap {
        PolyRightMap::from_terms(
            self.dim(),
            self.g.terms().map(|(a, c)| (a.clone(), self.f.scale(c))),
        )
        .expect("dimensions checked at construction")
    }
}

/// `f_i(y) = B(e_i, y)` as `n` polynomial components each; `result[i][k]` is the
/// `e_k` coordinate of `f_i`.
pub fn decompose_by_basis(b: &PolyRightMap) -> Vec<Vec<ScalarPoly>> {
    let n = b.dim();
    let mut out = vec![vec![ScalarPoly::zero(n); n]; n];
    for (a, m) in b.terms() {
        for (i, fi) in out.iter_mut().enumerate() {
            for (k, comp) in fi.iter_mut().enumerate() {
                comp.add_term(a.clone(), m.get(k, i).clone());
            }
        }
    }
    out
}

/// `sum_i x_i f_i(y)`.
pub fn reconstruct(fs: &[Vec<ScalarPoly>], x: &Element, y: &Element) -> Result<Element> {
    ensure_dim(fs.len(), x.dim())?;
    let n = x.dim();
    let mut out = vec![Rational::zero(); n];
    for (xi, fi) in x.iter().zip(fs) {
        if xi.is_zero() {
            continue;
        }
        for (o, comp) in out.iter_mut().zip(fi) {
            *o += xi * comp.eval(y)?;
        }
    }
    Ok(Element::new(out))
}

/// The three readings of "is a right biderivation" for a class member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IffOutcome {
    /// Every coefficient matrix of the polynomial form is a derivation.
    pub coefficient_criterion: bool,
    /// `F` itself is a derivation.
    pub f_is_derivation: bool,
    /// `x -> g(z) F x` is a derivation at a point `z` with `g(z) != 0`.
    pub at_nonzero_point: bool,
}

impl IffOutcome {
    pub fn agrees(&self) -> bool {
        self.coefficient_criterion == self.f_is_derivation
            && self.f_is_derivation == self.at_nonzero_point
    }
}

/// A point where `g` does not vanish: a basis vector, the all-ones vector, or a
/// seeded random point.
pub fn nonvanishing_point(g: &ScalarPoly) -> Result<Element> {
    if g.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let n = g.dim();
    let mut candidates: Vec<Element> = (0..n).map(|i| Element::basis(n, i)).collect();
    candidates.push(Element::new(vec![Rational::one(); n]));
    for z in candidates {
        if !g.eval(&z)?.is_zero() {
            return Ok(z);
        }
    }
    let mut s = Sampler::new(0);
    loop {
        let z = s.element(n);
        if !g.eval(&z)?.is_zero() {
            return Ok(z);
        }
    }
}

pub fn iff_derivation_check(a: &Algebra, s: &ScalarTimesDerivation) -> Result<IffOutcome> {
    ensure_dim(a.dim(), s.dim())?;
    let z = nonvanishing_point(&s.g)?;
    let gz = s.g.eval(&z)?;
    Ok(IffOutcome {
        coefficient_criterion: is_right_bider_poly(a, &s.to_poly_right())?,
        f_is_derivation: is_derivation(a, &s.f)?,
        at_nonzero_point: is_derivation(a, &s.f.scale(&gz))?,
    })
}

/// Random nonzero `g` of degree at most 2.
pub fn random_scalar(s: &mut Sampler, n: usize) -> ScalarPoly {
    let monomials = MultiIndex::up_to_degree(n, 2);
    loop {
        let mut g = ScalarPoly::zero(n);
        for a in &monomials {
            if s.coin() {
                g.add_term(a.clone(), s.rational());
            }
        }
        if !g.is_zero() {
            return g;
        }
    }
}

/// Equivalence sweep over `count` seeded pairs, alternating derivations and
/// unconstrained random matrices for `F`.
pub fn iff_sweep(a: &Algebra, count: usize, seed: u64) -> Vec<CheckOutcome> {
    let suite = "scalar-class";
    let n = a.dim();
    let ders = derivation_basis(a);
    let mut s = Sampler::new(seed);
    let mut iff = Tally::new(suite, "iff-derivation");
    let (mut with_der, mut without) = (0usize, 0usize);
    for sample in 0..count {
        let g = random_scalar(&mut s, n);
        let f = match sample % 4 {
            0 if sample == 0 => RationalMatrix::zeros(n, n),
            0 | 2 => s.matrix_combination(n, &ders),
            _ => s.matrix(n),
        };
        let member = ScalarTimesDerivation::new(g, f).expect("same dimension");
        let out = iff_derivation_check(a, &member).expect("g is nonzero");
        if out.f_is_derivation {
            with_der += 1;
        } else {
            without += 1;
        }
        iff.record(out.agrees(), || {
            format!("sample {sample}: {out:?} for g = {}", member.g)
        });
    }
    let mut coverage = Tally::new(suite, "iff-sweep-covers-both-directions");
    // An algebra whose every matrix is a derivation (abelian) has no negative cases.
    let everything_is_derivation = ders.len() == n * n;
    coverage.record(
        count == 0 || (with_der > 0 && (without > 0 || everything_is_derivation)),
        || format!("{with_der} derivation cases, {without} non-derivation cases"),
    );
    vec![iff.finish(), coverage.finish()]
}

/// `(g1 g2, [F1, F2])`.
pub fn class_bracket(
    s1: &ScalarTimesDerivation,
    s2: &ScalarTimesDerivation,
) -> Result<ScalarTimesDerivation> {
    ensure_dim(s1.dim(), s2.dim())?;
    ScalarTimesDerivation::new(s1.g.mul(&s2.g), s1.f.commutator(&s2.f)?)
}

/// Bracket closure on seeded pairs: the class bracket agrees with the general one.
pub fn class_bracket_sweep(a: &Algebra, count: usize, seed: u64) -> Vec<CheckOutcome> {
    let suite = "scalar-class";
    let n = a.dim();
    let ders = derivation_basis(a);
    let mut s = Sampler::new(seed);
    let mut terms = Tally::new(suite, "class-bracket-matches-rhd");
    let mut closed = Tally::new(suite, "class-bracket-closure");
    let mut pointwise = Tally::new(suite, "class-bracket-pointwise");
    for sample in 0..count {
        let mk = |s: &mut Sampler| {
            ScalarTimesDerivation::new(random_scalar(s, n), s.matrix_combination(n, &ders))
                .expect("same dimension")
        };
        let (s1, s2) = (mk(&mut s), mk(&mut s));
        let c = class_bracket(&s1, &s2).expect("same dimension");
        let general = s1
            .to_poly_right()
            .bracket(&s2.to_poly_right())
            .expect("same dimension");
        terms.record(c.to_poly_right() == general, || format!("sample {sample}"));
        closed.record(is_derivation(a, &c.f).expect("same dimension"), || {
            format!("sample {sample}")
        });
        let (x, y) = (s.element(n), s.element(n));
        let lhs = general.evaluate(&x, &y).expect("same dimension");
        let gy = s1.g.eval(&y).expect("same dimension") * s2.g.eval(&y).expect("same dimension");
        let rhs = Element::apply(&c.f, &x).expect("same dimension").scale(&gy);
        pointwise.record(lhs == rhs, || {
            format!("sample {sample} at x = {x}, y = {y}")
        });
    }
    vec![terms.finish(), closed.finish(), pointwise.finish()]
}

/// `exp(sF) = sum_{k<n} s^k F^k / k!` when `F` is nilpotent; `None` otherwise.
pub fn exp_nilpotent(f: &RationalMatrix, s: &Rational) -> Option<RationalMatrix> {
    let n = f.rows();
    let mut power = RationalMatrix::identity(n);
    let mut out = RationalMatrix::identity(n);
    let mut coeff = Rational::one();
    for k in 1..=n {
        power = power.try_mul(f).ok()?;
        if power.is_zero() {
            return Some(out);
        }
        if k == n {
            return None;
        }
        coeff = coeff * s / rat(k as i64);
        out = &out + &power.scale(&coeff);
    }
    Some(out)
}

/// `exp(M)` by scaling and squaring with a Taylor series.
pub fn expm(m: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = m.len();
    let norm = m
        .iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scale = 0.5f64.powi(squarings as i32);
    let a: Vec<Vec<f64>> = m
        .iter()
        .map(|r| r.iter().map(|v| v * scale).collect())
        .collect();
    let mut out = identity_f64(n);
    let mut term = identity_f64(n);
    for k in 1..=20 {
        term = matmul_f64(&term, &a);
        for row in term.iter_mut() {
            for v in row.iter_mut() {
                *v /= k as f64;
            }
        }
        for (o, t) in out.iter_mut().zip(&term) {
            for (ov, tv) in o.iter_mut().zip(t) {
                *ov += tv;
            }
        }
    }
    for _ in 0..squarings {
        out = matmul_f64(&out, &out);
    }
    out
}

fn identity_f64(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

fn matmul_f64(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(x, br)| x * br[j]).sum())
                .collect()
        })
        .collect()
}

fn matvec_f64(a: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub const DEFAULT_STEPS: [f64; 3] = [1e-2, 1e-3, 1e-4];
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
/// Errors at or below this are treated as exact: they sit at roundoff level and
/// carry no convergence-order information.
pub const ROUNDOFF_FLOOR: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepError {
    pub h: f64,
    pub error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpCurveReport {
    pub reference: Vec<f64>,
    pub steps: Vec<StepError>,
    /// Observed order between consecutive steps, `None` when the smaller step is at roundoff level.
    pub orders: Vec<Option<f64>>,
    pub within_tolerance: bool,
    pub second_order: bool,
    /// `exp(F/2)` preserves the product on all basis pairs.
    pub automorphism: bool,
    /// The automorphism check ran in exact arithmetic (`F` nilpotent).
    pub automorphism_exact: bool,
}

impl ExpCurveReport {
    pub fn passed(&self) -> bool {
        self.within_tolerance && self.second_order && self.automorphism
    }

    pub fn measured_orders(&self) -> usize {
        self.orders.iter().filter(|o| o.is_some()).count()
    }
}

/// Compares the central difference of `s -> g(y) exp(sF) x` at 0 with `g(y) F x`.
pub fn exp_curve_check(
    a: &Algebra,
    member: &ScalarTimesDerivation,
    x: &Element,
    y: &Element,
    steps: &[f64],
    tol: f64,
) -> Result<ExpCurveReport> {
    if a.kind() != Kind::Lie {
        return Err(Error::NotLie {
            name: a.name().to_string(),
            kind: a.kind().to_string(),
        });
    }
    ensure_dim(a.dim(), member.dim())?;
    if !is_derivation(a, &member.f)? {
        return Err(Error::NotDerivation(a.name().to_string()));
    }
    let exact_ref = member.evaluate(x, y)?;
    let reference: Vec<f64> = exact_ref.iter().map(to_f64).collect();
    let gy = to_f64(&member.g.eval(y)?);
    let f = member.f.to_f64();
    let xf: Vec<f64> = x.iter().map(to_f64).collect();
    let ref_norm = max_norm(&reference);

    let mut sorted: Vec<f64> = steps.to_vec();
    sorted.sort_by(|p, q| q.total_cmp(p));
    let step_errors: Vec<StepError> = sorted
        .iter()
        .map(|&h| {
            let scaled = |t: f64| -> Vec<Vec<f64>> {
                f.iter()
                    .map(|r| r.iter().map(|v| v * t).collect())
                    .collect()
            };
            let plus = matvec_f64(&expm(&scaled(h)), &xf);
            let minus = matvec_f64(&expm(&scaled(-h)), &xf);
            let approx: Vec<f64> = plus
                .iter()
                .zip(&minus)
                .map(|(p, m)| gy * (p - m) / (2.0 * h))
                .collect();
            let diff: Vec<f64> = approx.iter().zip(&reference).map(|(p, r)| p - r).collect();
            let error = if ref_norm > 0.0 {
                max_norm(&diff) / ref_norm
            } else {
                max_norm(&diff)
            };
            StepError { h, error }
        })
        .collect();

    let mut orders = Vec::new();
    let mut second_order = true;
    for w in step_errors.windows(2) {
        let (big, small) = (&w[0], &w[1]);
        if small.error <= ROUNDOFF_FLOOR {
            orders.push(None);
            continue;
        }
        let p = (big.error / small.error).ln() / (big.h / small.h).ln();
        second_order &= (p - 2.0).abs() <= 0.5;
        orders.push(Some(p));
    }
    let within_tolerance = step_errors.last().is_some_and(|e| e.error <= tol);

    let half = frac(1, 2);
    let (automorphism, automorphism_exact) = match exp_nilpotent(&member.f, &half) {
        Some(e) => (preserves_product_exact(a, &e)?, true),
        None => (
            preserves_product_f64(a, &expm(&member.f.scale(&half).to_f64())),
            false,
        ),
    };

    Ok(ExpCurveReport {
        reference,
        steps: step_errors,
        orders,
        within_tolerance,
        second_order,
        automorphism,
        automorphism_exact,
    })
}

/// `phi[e_i, e_j] = [phi e_i, phi e_j]` for all basis pairs.
pub fn preserves_product_exact(a: &Algebra, phi: &RationalMatrix) -> Result<bool> {
    let n = a.dim();
    let cols: Vec<Element> = (0..n).map(|i| Element::new(phi.column(i))).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = Element::apply(phi, &a.basis_product(i, j))?;
            if lhs != a.bracket(&cols[i], &cols[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn preserves_product_f64(a: &Algebra, phi: &[Vec<f64>]) -> bool {
    let n = a.dim();
    let c = |i: usize, j: usize, k: usize| to_f64(a.constant(i, j, k));
    let col = |i: usize| -> Vec<f64> { phi.iter().map(|r| r[i]).collect() };
    for i in 0..n {
        for j in 0..n {
            let prod: Vec<f64> = (0..n).map(|k| c(i, j, k)).collect();
            let lhs = matvec_f64(phi, &prod);
            let (u, v) = (col(i), col(j));
            let rhs: Vec<f64> = (0..n)
                .map(|k| {
                    let mut s = 0.0;
                    for (p, up) in u.iter().enumerate() {
                        for (q, vq) in v.iter().enumerate() {
                            s += up * vq * c(p, q, k);
                        }
                    }
                    s
                })
                .collect();
            let scale = 1.0 + max_norm(&lhs).max(max_norm(&rhs));
            let diff: Vec<f64> = lhs.iter().zip(&rhs).map(|(p, q)| p - q).collect();
            if max_norm(&diff) > 1e-9 * scale {
                return false;
            }
        }
    }
    true
}
