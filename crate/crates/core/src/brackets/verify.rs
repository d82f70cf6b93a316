//! Property suites for the brackets: Lie-algebra axioms on random biderivations
//! and the transpose / symmetry identities over canonical basis pairs.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{lhd_at, rhd_at, Frozen, PolyLeftMap, PolyMap, PolyRightMap};
use crate::algebra::{Algebra, Element};
use crate::biderivations::{
    left_bider_bilinear_space, right_bider_bilinear_space, skew_symmetric_tensors,
    symmetric_tensors, tensors,
};
use crate::bilinear::{recompose, BilinearTensor};
use crate::derivations::derivation_basis;
use crate::linalg::{rat, SubspaceBasis};
use crate::poly::MultiIndex;
use crate::report::{CheckOutcome, Tally};
use crate::sampling::Sampler;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Right => "right",
            Side::Left => "left",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "right" => Ok(Side::Right),
            "left" => Ok(Side::Left),
            _ => Err(format!("unknown side `{s}` (expected right or left)")),
        }
    }
}

type PointwiseBracket<S> =
    fn(&PolyMap<S>, &PolyMap<S>, &Element, &Element) -> crate::error::Result<Element>;

/// Random map: a member of the bilinear space plus two terms of degree at most 2
/// whose coefficients are random combinations of the derivation basis.
fn random_map<S: Frozen>(
    s: &mut Sampler,
    n: usize,
    space: &SubspaceBasis,
    ders: &[crate::linalg::RationalMatrix],
    monomials: &[MultiIndex],
) -> PolyMap<S> {
    let t = BilinearTensor::from_vector(n, s.member(space)).expect("n^3 coordinates");
    let mut m = PolyMap::<S>::from_tensor(&t);
    for _ in 0..2 {
        let a = monomials[s.index(monomials.len())].clone();
        m.add_term(a, &s.matrix_combination(n, ders));
    }
    m
}

/// Checks that `(biderivations, bracket)` is a Lie algebra on `samples` random triples.
///
/// Works for any algebra kind: only the derivation property of the coefficients is used.
pub fn verify_lie_algebra(a: &Algebra, side: Side, samples: usize, seed: u64) -> Vec<CheckOutcome> {
    match side {
        Side::Right => lie_suite::<super::RightSide>(
            a,
            right_bider_bilinear_space(a),
            rhd_at,
            "bracket-right",
            samples,
            seed,
        ),
        Side::Left => lie_suite::<super::LeftSide>(
            a,
            left_bider_bilinear_space(a),
            lhd_at,
            "bracket-left",
            samples,
            seed,
        ),
    }
}

fn lie_suite<S: Frozen>(
    a: &Algebra,
    space: SubspaceBasis,
    pointwise: PointwiseBracket<S>,
    suite: &'static str,
    samples: usize,
    seed: u64,
) -> Vec<CheckOutcome> {
    let n = a.dim();
    let ders = derivation_basis(a);
    let monomials = MultiIndex::up_to_degree(n, 2);
    let mut s = Sampler::new(seed);

    let mut membership = Tally::new(suite, "inputs-are-biderivations");
    let mut closure = Tally::new(suite, "closure");
    let mut linear_first = Tally::new(suite, "bilinearity-first");
    let mut linear_second = Tally::new(suite, "bilinearity-second");
    let mut alternating = Tally::new(suite, "alternativity");
    let mut anti = Tally::new(suite, "anticommutativity");
    let mut jacobi = Tally::new(suite, "jacobi");
    let mut definition = Tally::new(suite, "pointwise-definition");
    let mut span = Tally::new(suite, "vector-space-closure");

    for sample in 0..samples {
        let b1 = random_map::<S>(&mut s, n, &space, &ders, &monomials);
        let b2 = random_map::<S>(&mut s, n, &space, &ders, &monomials);
        let b3 = random_map::<S>(&mut s, n, &space, &ders, &monomials);
        let c = s.rational();
        let br = |p: &PolyMap<S>, q: &PolyMap<S>| p.bracket(q).expect("same dimension");
        let is_bider = |p: &PolyMap<S>| p.coefficients_are_derivations(a).expect("same dimension");
        let tag = |what: &str| format!("sample {sample}: {what}");

        for b in [&b1, &b2, &b3] {
            membership.record(is_bider(b), || tag("random input is not a biderivation"));
        }

        let b12 = br(&b1, &b2);
        closure.record(is_bider(&b12), || tag("B1.B2 leaves the biderivations"));

        let combo = b1.scale(&c).try_add(&b2).expect("same dimension");
        span.record(is_bider(&combo), || {
            tag("c*B1 + B2 leaves the biderivations")
        });

        let lhs = br(&combo, &b3);
        let rhs = br(&b1, &b3)
            .scale(&c)
            .try_add(&br(&b2, &b3))
            .expect("same dimension");
        linear_first.record(lhs == rhs, || tag("(c*B1 + B2).B3 != c*B1.B3 + B2.B3"));

        let combo23 = b2.scale(&c).try_add(&b3).expect("same dimension");
        let lhs = br(&b1, &combo23);
        let rhs = br(&b1, &b2)
            .scale(&c)
            .try_add(&br(&b1, &b3))
            .expect("same dimension");
        linear_second.record(lhs == rhs, || tag("B1.(c*B2 + B3) != c*B1.B2 + B1.B3"));

        alternating.record(br(&b1, &b1).is_empty(), || tag("B1.B1 != 0"));
        anti.record(
            b12.try_add(&br(&b2, &b1))
                .expect("same dimension")
                .is_empty(),
            || tag("B1.B2 + B2.B1 != 0"),
        );

        let cyc = br(&b1, &br(&b2, &b3))
            .try_add(&br(&b2, &br(&b3, &b1)))
            .and_then(|p| p.try_add(&br(&b3, &b12)))
            .expect("same dimension");
        jacobi.record(cyc.is_empty(), || tag("cyclic sum is nonzero"));

        let (x, y) = (s.element(n), s.element(n));
        let closed = b12.evaluate(&x, &y).expect("same dimension");
        let direct = pointwise(&b1, &b2, &x, &y).expect("same dimension");
        definition.record(closed == direct, || {
            format!(
                "sample {sample}: closed form {closed} != definition {direct} at x = {x}, y = {y}"
            )
        });
    }

    [
        membership,
        closure,
        linear_first,
        linear_second,
        alternating,
        anti,
        jacobi,
        definition,
        span,
    ]
    .into_iter()
    .map(Tally::finish)
    .collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Parity {
    Symmetric,
    Skew,
}

/// Points on which pointwise identities are compared: all basis pairs and a few
/// seeded random pairs.
fn probe_points(n: usize) -> Vec<(Element, Element)> {
    let mut pts = Vec::new();
    for i in 0..n {
        for j in 0..n {
            pts.push((Element::basis(n, i), Element::basis(n, j)));
        }
    }
    let mut s = Sampler::new(0x5eed);
    for _ in 0..4 {
        pts.push((s.element(n), s.element(n)));
    }
    pts
}

struct PairChecks {
    same_parity: Tally,
    mixed: Tally,
}

/// Exhaustive checks over pairs from the canonical basis of the right space.
///
/// * `B1 > B2 = (B1^t < B2^t)^t`, both as term data and pointwise.
/// * Same parity: `B1 > B2 (x,y) = B1 < B2 (y,x)`.
/// * Mixed parity: `B1 > B2 (x,y) = B2 < B1 (y,x)`.
///
/// The parity identities are run on the symmetric and skew parts of the basis
/// members and on the bases of the symmetric and skew right biderivations, where
/// reading a right biderivation as a left one is justified.
pub fn verify_section4(a: &Algebra) -> Vec<CheckOutcome> {
    let n = a.dim();
    let suite = "transpose";
    let right = right_bider_bilinear_space(a);
    let left = left_bider_bilinear_space(a);
    let basis = tensors(n, &right);
    let pts = probe_points(n);

    let sym_right = right
        .intersect(&symmetric_tensors(n))
        .expect("same ambient space");
    let skew_right = right
        .intersect(&skew_symmetric_tensors(n))
        .expect("same ambient space");

    let mut parity_family: Vec<(Parity, BilinearTensor)> = Vec::new();
    for b in &basis {
        parity_family.push((Parity::Symmetric, b.sigma()));
        parity_family.push((Parity::Skew, b.alpha()));
    }
    parity_family.extend(
        tensors(n, &sym_right)
            .into_iter()
            .map(|b| (Parity::Symmetric, b)),
    );
    parity_family.extend(
        tensors(n, &skew_right)
            .into_iter()
            .map(|b| (Parity::Skew, b)),
    );

    let pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (0..basis.len()).map(move |j| (i, j)))
        .collect();
    let transpose = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut t = Tally::new(suite, "rhd-equals-transposed-lhd");
            let (b1, b2) = (
                PolyRightMap::from_tensor(&basis[i]),
                PolyRightMap::from_tensor(&basis[j]),
            );
            let via_left = b1
                .transpose()
                .bracket(&b2.transpose())
                .expect("same dimension")
                .transpose();
            let direct = b1.bracket(&b2).expect("same dimension");
            t.record(direct == via_left, || {
                format!("basis pair ({i},{j}): term data differ")
            });
            for (x, y) in &pts {
                let lhs = rhd_at(&b1, &b2, x, y).expect("same dimension");
                let rhs = lhd_at(&b1.transpose(), &b2.transpose(), y, x).expect("same dimension");
                t.record(lhs == rhs, || {
                    format!("basis pair ({i},{j}) at x = {x}, y = {y}: {lhs} != {rhs}")
                });
            }
            t
        })
        .reduce(|| Tally::new(suite, "rhd-equals-transposed-lhd"), merged);

    let m = parity_family.len();
    let parity_pairs: Vec<(usize, usize)> =
        (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
    let parity = parity_pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut checks = PairChecks {
                same_parity: Tally::new(suite, "same-parity-swap"),
                mixed: Tally::new(suite, "mixed-parity-swap"),
            };
            let (p1, t1) = &parity_family[i];
            let (p2, t2) = &parity_family[j];
            let (r1, r2) = (PolyRightMap::from_tensor(t1), PolyRightMap::from_tensor(t2));
            let (l1, l2) = (PolyLeftMap::from_tensor(t1), PolyLeftMap::from_tensor(t2));
            for (x, y) in &pts {
                let lhs = rhd_at(&r1, &r2, x, y).expect("same dimension");
                if p1 == p2 {
                    let rhs = lhd_at(&l1, &l2, y, x).expect("same dimension");
                    checks.same_parity.record(lhs == rhs, || {
                        format!("pair ({i},{j}) at x = {x}, y = {y}: {lhs} != {rhs}")
                    });
                } else {
                    let rhs = lhd_at(&l2, &l1, y, x).expect("same dimension");
                    checks.mixed.record(lhs == rhs, || {
                        format!("pair ({i},{j}) at x = {x}, y = {y}: {lhs} != {rhs}")
                    });
                }
            }
            checks
        })
        .reduce(
            || PairChecks {
                same_parity: Tally::new(suite, "same-parity-swap"),
                mixed: Tally::new(suite, "mixed-parity-swap"),
            },
            |mut acc, c| {
                acc.same_parity.merge(c.same_parity);
                acc.mixed.merge(c.mixed);
                acc
            },
        );

    let mut sym_left = Tally::new(suite, "symmetric-right-is-left");
    sym_left.record(
        sym_right.is_subspace_of(&left).expect("same ambient space"),
        || "a symmetric right biderivation is not a left biderivation".to_string(),
    );
    let mut skew_left = Tally::new(suite, "skew-right-is-left");
    skew_left.record(
        skew_right
            .is_subspace_of(&left)
            .expect("same ambient space"),
        || "a skew-symmetric right biderivation is not a left biderivation".to_string(),
    );

    let both = right.intersect(&left).expect("same ambient space");
    let mut sa = Tally::new(suite, "sigma-alpha-preserve-biderivations");
    for (idx, b) in tensors(n, &both).iter().enumerate() {
        for (name, image) in [("sigma", b.sigma()), ("alpha", b.alpha())] {
            let ok = right
                .contains(image.as_vector())
                .expect("same ambient space")
                && left
                    .contains(image.as_vector())
                    .expect("same ambient space");
            sa.record(ok, || {
                format!("{name} of biderivation basis member {idx} is not a biderivation")
            });
        }
    }

    vec![
        transpose.finish(),
        parity.same_parity.finish(),
        parity.mixed.finish(),
        sym_left.finish(),
        skew_left.finish(),
        sa.finish(),
    ]
}

fn merged(mut acc: Tally, t: Tally) -> Tally {
    acc.merge(t);
    acc
}

/// `sigma(B) - alpha(B) = 2 B^t` and `B = (sigma(B) + alpha(B)) / 2` on `count` random tensors.
pub fn verify_sigma_alpha(n: usize, count: usize, seed: u64) -> Vec<CheckOutcome> {
    let suite = "transpose";
    let mut s = Sampler::new(seed);
    let mut diff = Tally::new(suite, "sigma-minus-alpha-is-twice-transpose");
    let mut recon = Tally::new(suite, "half-sum-recovers-tensor");
    for sample in 0..count {
        let t = BilinearTensor::from_vector(n, (0..n * n * n).map(|_| s.rational()).collect())
            .expect("n^3 coordinates");
        let (sg, al) = (t.sigma(), t.alpha());
        diff.record(
            sg.try_sub(&al).expect("same dimension") == t.transpose().scale(&rat(2)),
            || format!("tensor {sample}"),
        );
        recon.record(recompose(&sg, &al).expect("same dimension") == t, || {
            format!("tensor {sample}")
        });
    }
    vec![diff.finish(), recon.finish()]
}
