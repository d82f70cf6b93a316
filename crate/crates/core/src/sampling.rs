//! Seeded random rationals, elements and subspace members for property checks.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Element;
use crate::linalg::{combine, frac, Rational, RationalMatrix, SubspaceBasis};

pub const DEFAULT_SEED: u64 = 0;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// `p/q` with `|p| <= 3` and `1 <= q <= 3`.
    pub fn rational(&mut self) -> Rational {
        frac(self.rng.gen_range(-3..=3), self.rng.gen_range(1..=3))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let q = self.rational();
            if !q.is_zero() {
                return q;
            }
        }
    }

    pub fn small_int(&mut self, bound: i64) -> i64 {
        self.rng.gen_range(-bound..=bound)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    pub fn element(&mut self, n: usize) -> Element {
        Element::new((0..n).map(|_| self.rational()).collect())
    }

    pub fn matrix(&mut self, n: usize) -> RationalMatrix {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| self.rational()).collect())
            .collect();
        RationalMatrix::from_rows(rows).expect("square")
    }

    /// Random rational combination of the basis vectors of `space`.
    pub fn member(&mut self, space: &SubspaceBasis) -> Vec<Rational> {
        if space.dim() == 0 {
            return vec![Rational::zero(); space.ambient_dim()];
        }
        let coeffs: Vec<Rational> = (0..space.dim()).map(|_| self.rational()).collect();
        combine(space.vectors(), &coeffs)
    }

    /// Random combination of a list of matrices (zero matrix when the list is empty).
    pub fn matrix_combination(&mut self, n: usize, basis: &[RationalMatrix]) -> RationalMatrix {
        basis.iter().fold(RationalMatrix::zeros(n, n), |acc, m| {
            let c = self.rational();
            &acc + &m.scale(&c)
        })
    }
}
