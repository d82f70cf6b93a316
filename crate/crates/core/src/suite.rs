//! Every identity suite for one algebra, in a fixed order.

use crate::algebra::{Algebra, Element, Kind};
use crate::biderivations::{
    bider_space, left_bider_bilinear_space, left_space_from_derivations,
    right_bider_bilinear_space, right_space_from_derivations,
};
use crate::brackets::{verify_lie_algebra, verify_section4, verify_sigma_alpha, Side};
use crate::derivations::{derivation_basis, derivation_space, is_derivation};
use crate::linalg::{rat, SubspaceBasis};
use crate::poly::ScalarPoly;
use crate::report::{CheckOutcome, Status, Tally};
use crate::scalar_class::{
    class_bracket_sweep, exp_curve_check, exp_nilpotent, iff_sweep, ScalarTimesDerivation,
    DEFAULT_STEPS, DEFAULT_TOLERANCE,
};

pub const DEFAULT_SAMPLES: usize = 25;
/// Minimum number of pairs in the scalar-class equivalence sweep.
pub const IFF_SWEEP_MIN: usize = 100;
/// Random tensors in the symmetrization check.
pub const SIGMA_ALPHA_TENSORS: usize = 100;

pub fn kind_outcome(a: &Algebra) -> CheckOutcome {
    let report = a.check_kind();
    let mut t = Tally::new("kind", a.kind().as_str());
    t.record(report.passed(), || {
        format!(
            "{} failures, first {}",
            report.failures.len(),
            report.first_failure().expect("failed report has a failure")
        )
    });
    t.finish()
}

pub fn derivation_outcomes(a: &Algebra) -> Vec<CheckOutcome> {
    let basis = derivation_basis(a);
    let space = derivation_space(a);
    let mut members = Tally::new("derivations", "basis-members-are-derivations");
    for (i, d) in basis.iter().enumerate() {
        members.record(is_derivation(a, d).expect("same dimension"), || {
            format!("basis member {i}")
        });
    }
    let mut closed = Tally::new("derivations", "commutator-closure");
    for (i, d1) in basis.iter().enumerate() {
        for (j, d2) in basis.iter().enumerate().skip(i + 1) {
            let c = d1.commutator(d2).expect("same dimension");
            let ok = space
                .contains(&c.to_column_major())
                .expect("n*n coordinates");
            closed.record(ok, || format!("[D{i}, D{j}] leaves Der"));
        }
    }
    let mut jacobi = Tally::new("derivations", "commutator-jacobi");
    for (i, d1) in basis.iter().enumerate().take(6) {
        for (j, d2) in basis.iter().enumerate().take(6) {
            for (k, d3) in basis.iter().enumerate().take(6) {
                let c = |p: &crate::linalg::RationalMatrix, q: &crate::linalg::RationalMatrix| {
                    p.commutator(q).expect("square")
                };
                let sum = &(&c(d1, &c(d2, d3)) + &c(d2, &c(d3, d1))) + &c(d3, &c(d1, d2));
                jacobi.record(sum.is_zero(), || format!("basis triple ({i},{j},{k})"));
            }
        }
    }
    vec![members.finish(), closed.finish(), jacobi.finish()]
}

fn same_space(t: &mut Tally, lhs: &SubspaceBasis, rhs: &SubspaceBasis, what: &str) {
    let forward = lhs.is_subspace_of(rhs).expect("same ambient space");
    let backward = rhs.is_subspace_of(lhs).expect("same ambient space");
    t.record(forward && backward && lhs == rhs, || {
        format!(
            "{what}: dims {} and {}, forward {forward}, backward {backward}",
            lhs.dim(),
            rhs.dim()
        )
    });
}

/// Biderivation spaces against the route through `Der(A)`.
pub fn biderivation_outcomes(a: &Algebra) -> Vec<CheckOutcome> {
    let n = a.dim();
    let der_dim = derivation_space(a).dim();
    let right = right_bider_bilinear_space(a);
    let left = left_bider_bilinear_space(a);

    let mut dims = Tally::new("biderivations", "dimension-is-n-times-der");
    dims.record(right.dim() == n * der_dim, || {
        format!("right {} != {n} * {der_dim}", right.dim())
    });
    dims.record(left.dim() == n * der_dim, || {
        format!("left {} != {n} * {der_dim}", left.dim())
    });

    let mut structural = Tally::new("biderivations", "structural-equivalence");
    same_space(
        &mut structural,
        &right,
        &right_space_from_derivations(a),
        "right",
    );
    same_space(
        &mut structural,
        &left,
        &left_space_from_derivations(a),
        "left",
    );

    let mut both = Tally::new("biderivations", "two-sided-is-intersection");
    same_space(
        &mut both,
        &bider_space(a),
        &right.intersect(&left).expect("same ambient space"),
        "two-sided",
    );

    vec![dims.finish(), structural.finish(), both.finish()]
}

/// A derivation for the curve check, preferring one with a non-nilpotent matrix so
/// the finite differences show their convergence order.
fn curve_derivation(a: &Algebra) -> Option<crate::linalg::RationalMatrix> {
    let basis = derivation_basis(a);
    basis
        .iter()
        .find(|d| exp_nilpotent(d, &rat(1)).is_none())
        .or_else(|| basis.first())
        .cloned()
}

pub fn exp_curve_outcome(a: &Algebra) -> CheckOutcome {
    let suite = "scalar-class";
    let identity = "exp-curve-derivative";
    if a.kind() != Kind::Lie {
        return CheckOutcome::skipped(suite, identity, format!("kind {} is not lie", a.kind()));
    }
    let n = a.dim();
    let Some(f) = curve_derivation(a) else {
        return CheckOutcome::skipped(suite, identity, "no nonzero derivations");
    };
    let g = ScalarPoly::constant(n, rat(1)).add(&ScalarPoly::coordinate(n, 0));
    let member = ScalarTimesDerivation::new(g, f).expect("same dimension");
    let x = Element::new(vec![rat(1); n]);
    let y = Element::basis(n, 0);
    let mut t = Tally::new(suite, identity);
    match exp_curve_check(a, &member, &x, &y, &DEFAULT_STEPS, DEFAULT_TOLERANCE) {
        Ok(r) => t.record(r.passed(), || format!("{r:?}")),
        Err(e) => t.record(false, || e.to_string()),
    }
    t.finish()
}

/// All suites: kind, derivations, biderivations, both brackets, transpose identities,
/// scalar class. Deterministic for fixed `seed` and `samples`.
pub fn run_all(a: &Algebra, seed: u64, samples: usize) -> Vec<CheckOutcome> {
    let mut out = vec![kind_outcome(a)];
    out.extend(derivation_outcomes(a));
    out.extend(biderivation_outcomes(a));
    out.extend(verify_lie_algebra(a, Side::Right, samples, seed));
    out.extend(verify_lie_algebra(a, Side::Left, samples, seed));
    out.extend(verify_section4(a));
    out.extend(verify_sigma_alpha(a.dim(), SIGMA_ALPHA_TENSORS, seed));
    out.extend(iff_sweep(a, IFF_SWEEP_MIN.max(4 * samples), seed));
    out.extend(class_bracket_sweep(a, samples, seed));
    out.push(exp_curve_outcome(a));
    out
}

pub fn count_status(outcomes: &[CheckOutcome], status: Status) -> usize {
    outcomes.iter().filter(|o| o.status == status).count()
}
