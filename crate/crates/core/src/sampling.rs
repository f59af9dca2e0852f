//! Seeded random elements for sampled identity checks.
//!
//! Coefficients are small nonzero rationals, monomials are drawn with a
//! uniformly chosen degree. Any single failing sample is an exact
//! counterexample; passing samples only accumulate evidence.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{Monomial, Poly, Var};
use crate::Rational;

/// Default number of sampled triples per identity.
pub const DEFAULT_SAMPLES: usize = 64;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn small_int(&mut self, bound: i64) -> i64 {
        self.rng.gen_range(-bound..=bound)
    }

    pub fn coefficient(&mut self) -> Rational {
        let n = loop {
            let n = self.rng.gen_range(-3i64..=3);
            if n != 0 {
                break n;
            }
        };
        let d = if self.rng.gen_bool(0.25) { 2 } else { 1 };
        Rational::new(n.into(), d.into())
    }

    /// A monomial in `vars` of degree drawn uniformly from `0..=max_degree`.
    pub fn monomial(&mut self, vars: &[Var], max_degree: u32) -> Monomial {
        if vars.is_empty() {
            return Monomial::one();
        }
        let d = self.rng.gen_range(0..=max_degree);
        Monomial::from_powers((0..d).map(|_| (vars[self.rng.gen_range(0..vars.len())].clone(), 1)))
    }

    pub fn base_poly(&mut self, vars: &[Var], max_degree: u32) -> Poly {
        let terms = self.rng.gen_range(1..=3);
        (0..terms).fold(Poly::zero(), |acc, _| {
            let c = self.coefficient();
            let m = self.monomial(vars, max_degree);
            acc + Poly::term(c, m)
        })
    }

    /// A random element of `S_A[L]` with bounded base and fiber degrees.
    pub fn element(&mut self, base: &[Var], fiber: &[Var], max_base: u32, max_fiber: u32) -> Poly {
        let terms = self.rng.gen_range(1..=3);
        (0..terms).fold(Poly::zero(), |acc, _| {
            let c = self.coefficient();
            let m = self
                .monomial(base, max_base)
                .mul(&self.monomial(fiber, max_fiber));
            acc + Poly::term(c, m)
        })
    }

    pub fn triples(
        &mut self,
        count: usize,
        base: &[Var],
        fiber: &[Var],
        max_base: u32,
        max_fiber: u32,
    ) -> Vec<(Poly, Poly, Poly)> {
        (0..count)
            .map(|_| {
                (
                    self.element(base, fiber, max_base, max_fiber),
                    self.element(base, fiber, max_base, max_fiber),
                    self.element(base, fiber, max_base, max_fiber),
                )
            })
            .collect()
    }
}
