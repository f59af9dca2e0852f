//! The tautological Poisson algebra `S_A[L]` of a presentation.
//!
//! The bracket is the unique biderivation with `{e_j, e_k} = [e_j, e_k]`,
//! `{e_j, a} = ρ(e_j)(a)` and `{a, b} = 0`. It is evaluated monomial by
//! monomial, peeling one variable off the right argument with the Leibniz
//! rule and flipping arguments through antisymmetry; intermediate monomial
//! pairs are memoized per call.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::ptr;

use crate::error::{Error, Result};
use crate::lie_rinehart::{LElement, LieRinehartPresentation, PoissonAlgebra};
use crate::poly::{Monomial, Poly, Var};
use crate::sampling::{Sampler, DEFAULT_SAMPLES};

type Memo = BTreeMap<(Monomial, Monomial), Poly>;

#[derive(Clone, Copy, Debug)]
pub struct TautologicalAlgebra<'a> {
    pres: &'a LieRinehartPresentation,
}

/// An element of `S_A[L]` tied to the presentation it was built from.
#[derive(Clone, Debug)]
pub struct PoissonElement<'a> {
    value: Poly,
    ctx: &'a LieRinehartPresentation,
}

impl<'a> PoissonElement<'a> {
    pub fn value(&self) -> &Poly {
        &self.value
    }

    pub fn into_value(self) -> Poly {
        self.value
    }

    pub fn bracket(&self, other: &PoissonElement<'a>) -> Result<PoissonElement<'a>> {
        if !ptr::eq(self.ctx, other.ctx) && self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let value = TautologicalAlgebra::new(self.ctx).bracket(&self.value, &other.value);
        Ok(PoissonElement {
            value,
            ctx: self.ctx,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiSampleReport {
    pub ok: bool,
    pub samples: usize,
    /// Index of the first failing triple and its cyclic sum.
    pub witness: Option<(usize, Poly)>,
}

/// First failing sample for each bracket law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawsReport {
    pub samples: usize,
    pub antisymmetry: Option<(usize, Poly)>,
    pub leibniz: Option<(usize, Poly)>,
    pub jacobi: Option<(usize, Poly)>,
}

impl LawsReport {
    pub fn ok(&self) -> bool {
        self.antisymmetry.is_none() && self.leibniz.is_none() && self.jacobi.is_none()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    Fiber,
    Mixed,
    Base,
}

impl PairKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PairKind::Fiber => "fiber",
            PairKind::Mixed => "mixed",
            PairKind::Base => "base",
        }
    }
}

/// One generator pair of the potential check: `dϑ(dg, dh)` against
/// `π(dg, dh)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialEntry {
    pub pair: (Var, Var),
    pub kind: PairKind,
    pub d_theta: Poly,
    pub pi: Poly,
}

impl PotentialEntry {
    pub fn ok(&self) -> bool {
        self.d_theta == self.pi
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialReport {
    pub entries: Vec<PotentialEntry>,
}

impl PotentialReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(PotentialEntry::ok)
    }
}

impl<'a> TautologicalAlgebra<'a> {
    pub fn new(pres: &'a LieRinehartPresentation) -> Self {
        TautologicalAlgebra { pres }
    }

    pub fn presentation(&self) -> &'a LieRinehartPresentation {
        self.pres
    }

    /// Base variables followed by the `L`-basis.
    pub fn generators(&self) -> Vec<Var> {
        self.pres
            .base_vars()
            .iter()
            .chain(self.pres.l_basis())
            .cloned()
            .collect()
    }

    pub fn element(&self, value: Poly) -> Result<PoissonElement<'a>> {
        let gens = self.generators();
        if let Some(v) = value.vars().into_iter().find(|v| !gens.contains(v)) {
            return Err(Error::UnexpectedVar(v.name().to_string()));
        }
        Ok(PoissonElement {
            value,
            ctx: self.pres,
        })
    }

    /// Bracket of two generators of `S_A[L]`.
    pub fn generator_bracket(&self, g: &Var, h: &Var) -> Poly {
        let p = self.pres;
        match (p.basis_index(g), p.basis_index(h)) {
            (Some(j), Some(k)) => p.l_basis().iter().zip(&p.structure()[j][k]).fold(
                Poly::zero(),
                |acc, (e, c)| acc + c * &Poly::var(e),
            ),
            (Some(j), None) => match p.base_index(h) {
                Some(s) => p.anchor()[j][s].clone(),
                None => Poly::zero(),
            },
            (None, Some(k)) => match p.base_index(g) {
                Some(s) => -&p.anchor()[k][s],
                None => Poly::zero(),
            },
            (None, None) => Poly::zero(),
        }
    }

    pub fn bracket(&self, u: &Poly, v: &Poly) -> Poly {
        let mut memo = Memo::new();
        self.bracket_with(u, v, &mut memo)
    }

    fn bracket_with(&self, u: &Poly, v: &Poly, memo: &mut Memo) -> Poly {
        let mut out = Poly::zero();
        for (mu, cu) in u.terms() {
            if mu.is_one() {
                continue;
            }
            for (mv, cv) in v.terms() {
                if mv.is_one() {
                    continue;
                }
                let b = self.monomial_bracket(mu, mv, memo);
                if !b.is_zero() {
                    out += b.scale(&(cu * cv));
                }
            }
        }
        out
    }

    fn monomial_bracket(&self, a: &Monomial, b: &Monomial, memo: &mut Memo) -> Poly {
        if a.is_one() || b.is_one() {
            return Poly::zero();
        }
        let key = (a.clone(), b.clone());
        if let Some(hit) = memo.get(&key) {
            return hit.clone();
        }
        let value = if b.degree() >= 2 {
            // {a, v·rest} = {a, v}·rest + v·{a, rest}
            let (v, rest) = b.split_first().expect("degree ≥ 2");
            let left = self.monomial_bracket(a, &Monomial::var(&v), memo);
            let right = self.monomial_bracket(a, &rest, memo);
            left.mul_monomial(&rest) + right.mul_monomial(&Monomial::var(&v))
        } else if a.degree() >= 2 {
            -self.monomial_bracket(b, a, memo)
        } else {
            let g = &a.powers()[0].0;
            let h = &b.powers()[0].0;
            self.generator_bracket(g, h)
        };
        memo.insert(key, value.clone());
        value
    }

    /// Cyclic sum `{u,{v,w}} + {v,{w,u}} + {w,{u,v}}`.
    pub fn jacobiator(&self, u: &Poly, v: &Poly, w: &Poly) -> Poly {
        let mut memo = Memo::new();
        let vw = self.bracket_with(v, w, &mut memo);
        let wu = self.bracket_with(w, u, &mut memo);
        let uv = self.bracket_with(u, v, &mut memo);
        self.bracket_with(u, &vw, &mut memo)
            + self.bracket_with(v, &wu, &mut memo)
            + self.bracket_with(w, &uv, &mut memo)
    }

    pub fn check_jacobi_sampled(&self, samples: &[(Poly, Poly, Poly)]) -> JacobiSampleReport {
        for (i, (u, v, w)) in samples.iter().enumerate() {
            let jac = self.jacobiator(u, v, w);
            if !jac.is_zero() {
                return JacobiSampleReport {
                    ok: false,
                    samples: i + 1,
                    witness: Some((i, jac)),
                };
            }
        }
        JacobiSampleReport {
            ok: true,
            samples: samples.len(),
            witness: None,
        }
    }

    /// Antisymmetry `{u,v} + {v,u}`, Leibniz `{u,vw} - {u,v}w - v{u,w}`
    /// and Jacobi defects on every sample.
    pub fn check_laws_sampled(&self, samples: &[(Poly, Poly, Poly)]) -> LawsReport {
        let mut report = LawsReport {
            samples: samples.len(),
            antisymmetry: None,
            leibniz: None,
            jacobi: None,
        };
        for (i, (u, v, w)) in samples.iter().enumerate() {
            let uv = self.bracket(u, v);
            if report.antisymmetry.is_none() {
                let d = &uv + &self.bracket(v, u);
                if !d.is_zero() {
                    report.antisymmetry = Some((i, d));
                }
            }
            if report.leibniz.is_none() {
                let d = self.bracket(u, &(v * w)) - &uv * w - v * &self.bracket(u, w);
                if !d.is_zero() {
                    report.leibniz = Some((i, d));
                }
            }
            if report.jacobi.is_none() {
                let d = self.jacobiator(u, v, w);
                if !d.is_zero() {
                    report.jacobi = Some((i, d));
                }
            }
        }
        report
    }

    /// Seeded random triples with base and fiber degree at most 3.
    pub fn random_triples(&self, seed: u64, count: usize) -> Vec<(Poly, Poly, Poly)> {
        Sampler::new(seed).triples(count, self.pres.base_vars(), self.pres.l_basis(), 3, 3)
    }

    pub fn default_samples(&self, seed: u64) -> Vec<(Poly, Poly, Poly)> {
        self.random_triples(seed, DEFAULT_SAMPLES)
    }

    /// `π(dg, dh)` on generators: `[α, β]`, `α(b)`, or `0`.
    pub fn two_form(&self, g: &Var, h: &Var) -> Poly {
        self.generator_bracket(g, h)
    }

    /// `ϑ(df) = Σ_j (∂f/∂e_j) e_j`; in particular `ϑ(dα) = α`, `ϑ(da) = 0`.
    pub fn theta_of_differential(&self, f: &Poly) -> Poly {
        self.pres
            .l_basis()
            .iter()
            .fold(Poly::zero(), |acc, e| acc + &f.partial(e) * &Poly::var(e))
    }

    /// Verifies `dϑ = π` on every pair of generator differentials, with
    /// `(dϑ)(x, y) = π♯x(ϑy) − π♯y(ϑx) − ϑ([x, y])` and `[dg, dh] = d{g, h}`.
    pub fn check_potential(&self) -> PotentialReport {
        let gens = self.generators();
        let theta = |g: &Var| {
            if self.pres.basis_index(g).is_some() {
                Poly::var(g)
            } else {
                Poly::zero()
            }
        };
        let mut entries = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            for h in &gens[i + 1..] {
                let (gp, hp) = (Poly::var(g), Poly::var(h));
                let d_theta = self.bracket(&gp, &theta(h))
                    - self.bracket(&hp, &theta(g))
                    - self.theta_of_differential(&self.bracket(&gp, &hp));
                let kind = match (g.is_fiber(), h.is_fiber()) {
                    (true, true) => PairKind::Fiber,
                    (false, false) => PairKind::Base,
                    _ => PairKind::Mixed,
                };
                entries.push(PotentialEntry {
                    pair: (g.clone(), h.clone()),
                    kind,
                    d_theta,
                    pi: self.two_form(g, h),
                });
            }
        }
        PotentialReport { entries }
    }

    /// Reads the structure functions and anchor back off the bracket:
    /// `c'_jki` = coefficient of `e_i` in the fiber-degree-1 part of
    /// `{e_j, e_k}`, `a'_js = {e_j, x_s}`.
    pub fn reconstruct(&self) -> Result<LieRinehartPresentation> {
        let p = self.pres;
        let basis = p.l_basis();
        let anchor = basis
            .iter()
            .map(|e| {
                p.base_vars()
                    .iter()
                    .map(|x| self.bracket(&Poly::var(e), &Poly::var(x)))
                    .collect()
            })
            .collect();
        let structure = basis
            .iter()
            .map(|ej| {
                basis
                    .iter()
                    .map(|ek| {
                        let linear = self
                            .bracket(&Poly::var(ej), &Poly::var(ek))
                            .fiber_degree_part(1);
                        basis.iter().map(|ei| linear.partial(ei)).collect()
                    })
                    .collect()
            })
            .collect();
        LieRinehartPresentation::new(p.base_vars().to_vec(), basis.to_vec(), anchor, structure)
    }

    /// The Poisson algebra on all generators with this bracket table.
    pub fn as_poisson_algebra(&self) -> PoissonAlgebra {
        let gens = self.generators();
        let table = gens
            .iter()
            .map(|g| gens.iter().map(|h| self.generator_bracket(g, h)).collect())
            .collect();
        PoissonAlgebra::new(gens, table).expect("generator bracket table is antisymmetric")
    }

    /// The map `S_A[L] → S_A[L₂]` induced by `e_j ↦ images[j]`.
    pub fn induced_map(&self, target: &LieRinehartPresentation, images: &[LElement]) -> impl Fn(&Poly) -> Poly {
        let map: BTreeMap<Var, Poly> = self
            .pres
            .l_basis()
            .iter()
            .zip(images)
            .map(|(e, img)| {
                let p = target
                    .l_basis()
                    .iter()
                    .zip(img)
                    .fold(Poly::zero(), |acc, (f, c)| acc + c * &Poly::var(f));
                (e.clone(), p)
            })
            .collect();
        move |u: &Poly| u.substitute(&map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::sampling::Sampler;
    use crate::Rational;

    fn poly(v: &str, fiber: bool) -> Poly {
        Poly::var(&if fiber { Var::fiber(v) } else { Var::base(v) })
    }

    #[test]
    fn bracket_examples() {
        let vect = presets::vect_model();
        let t = TautologicalAlgebra::new(&vect);
        let (x, e) = (poly("x", false), poly("e", true));
        assert_eq!(t.bracket(&e, &x), Poly::one());
        let u = &(&e * &x) + &x.pow(2);
        assert!(t.bracket(&u, &u).is_zero());
        // {e², x²} = 2e{e, x²} = 2e·2x
        assert_eq!(t.bracket(&e.pow(2), &x.pow(2)), (&x * &e).scale(&Rational::from_integer(4.into())));
    }

    #[test]
    fn recursive_bracket_agrees_with_coordinate_formula() {
        for pres in presets::valid_presentations() {
            let t = TautologicalAlgebra::new(&pres);
            let oracle = t.as_poisson_algebra();
            let mut s = Sampler::new(3);
            for _ in 0..24 {
                let u = s.element(pres.base_vars(), pres.l_basis(), 3, 3);
                let v = s.element(pres.base_vars(), pres.l_basis(), 3, 3);
                assert_eq!(t.bracket(&u, &v), oracle.bracket(&u, &v));
            }
        }
    }

    #[test]
    fn bracket_laws_on_samples() {
        for pres in presets::valid_presentations() {
            let t = TautologicalAlgebra::new(&pres);
            let samples = t.random_triples(5, 12);
            for (u, v, w) in &samples {
                assert!((t.bracket(u, v) + t.bracket(v, u)).is_zero());
                let lhs = t.bracket(u, &(v * w));
                let rhs = &t.bracket(u, v) * w + v * &t.bracket(u, w);
                assert_eq!(lhs, rhs);
                if let (Some(du), Some(dv)) = (u.fiber_degree(), v.fiber_degree()) {
                    let b = t.bracket(u, v);
                    if let Some(db) = b.fiber_degree() {
                        assert!(db + 1 <= du + dv);
                    }
                }
            }
            assert!(t.check_jacobi_sampled(&samples).ok);
        }
    }

    #[test]
    fn base_elements_commute() {
        let pres = presets::heisenberg_total().presentation().clone();
        let t = TautologicalAlgebra::new(&pres);
        let mut s = Sampler::new(9);
        let triples: Vec<_> = (0..8)
            .map(|_| {
                (
                    s.base_poly(pres.base_vars(), 3),
                    s.base_poly(pres.base_vars(), 3),
                    s.base_poly(pres.base_vars(), 3),
                )
            })
            .collect();
        for (a, b, _) in &triples {
            assert!(t.bracket(a, b).is_zero());
        }
        assert!(t.check_jacobi_sampled(&triples).ok);
    }

    #[test]
    fn vect_model_jacobi_triple() {
        let vect = presets::vect_model();
        let t = TautologicalAlgebra::new(&vect);
        let (x, e) = (poly("x", false), poly("e", true));
        assert!(t.jacobiator(&e, &(&x * &e), &x.pow(2)).is_zero());
    }

    #[test]
    fn faulty_presentations_have_linear_jacobi_witness() {
        let bad = presets::so3_corrupted();
        let t = TautologicalAlgebra::new(&bad);
        let es: Vec<Poly> = bad.l_basis().iter().map(Poly::var).collect();
        assert_eq!(t.jacobiator(&es[0], &es[1], &es[2]), es[1]);

        let bad = presets::vect_model_mutant();
        let t = TautologicalAlgebra::new(&bad);
        let (x, e1, e2) = (poly("x", false), poly("e1", true), poly("e2", true));
        assert!(!t.jacobiator(&e1, &e2, &x).is_zero());
    }

    #[test]
    fn two_form_examples() {
        let so3 = presets::so3();
        let t = TautologicalAlgebra::new(&so3);
        let b = so3.l_basis();
        assert_eq!(t.two_form(&b[0], &b[1]), Poly::var(&b[2]));
        let heis = presets::heisenberg_total().presentation().clone();
        let t = TautologicalAlgebra::new(&heis);
        let xs = heis.base_vars();
        assert!(t.two_form(&xs[0], &xs[1]).is_zero());
        let vect = presets::vect_model();
        let t = TautologicalAlgebra::new(&vect);
        assert_eq!(t.two_form(&Var::fiber("e"), &Var::base("x")), Poly::one());
    }

    #[test]
    fn potential_holds() {
        for pres in presets::valid_presentations() {
            let rep = TautologicalAlgebra::new(&pres).check_potential();
            assert!(rep.ok(), "{rep:?}");
        }
        let vect = presets::vect_model();
        let rep = TautologicalAlgebra::new(&vect).check_potential();
        let mixed = rep.entries.iter().find(|e| e.kind == PairKind::Mixed).unwrap();
        // dϑ(dx, de) = −α(x) = π(dx, de)
        assert_eq!(mixed.pi, -Poly::one());
    }

    #[test]
    fn reconstruct_roundtrip() {
        for pres in presets::valid_presentations() {
            assert_eq!(TautologicalAlgebra::new(&pres).reconstruct().unwrap(), pres);
        }
        let vect = TautologicalAlgebra::new(&presets::vect_model()).reconstruct().unwrap();
        assert_eq!(vect.anchor(), &[alloc::vec![Poly::one()]]);
        assert!(vect.structure()[0][0][0].is_zero());
        let so3 = TautologicalAlgebra::new(&presets::so3()).reconstruct().unwrap();
        assert_eq!(so3.structure()[1][2][0], Poly::one());
        assert_eq!(so3.structure()[2][1][0], -Poly::one());
    }

    #[test]
    fn context_mismatch() {
        let (a, b) = (presets::vect_model(), presets::so3());
        let u = TautologicalAlgebra::new(&a).element(poly("e", true)).unwrap();
        let v = TautologicalAlgebra::new(&b).element(poly("e1", true)).unwrap();
        assert_eq!(u.bracket(&v).unwrap_err(), Error::ContextMismatch);
        let w = TautologicalAlgebra::new(&a).element(poly("x", false)).unwrap();
        assert_eq!(u.bracket(&w).unwrap().value(), &Poly::one());
        assert!(TautologicalAlgebra::new(&a).element(poly("zz", false)).is_err());
    }

    #[test]
    fn functoriality_of_induced_map() {
        // so(3) relabelled cyclically into a product with an abelian factor.
        let src = presets::so3();
        let tgt = presets::so3_times_line();
        let images: Vec<LElement> = (0..3).map(|j| tgt.basis_element((j + 1) % 3)).collect();
        assert!(src.is_morphism_to(&tgt, &images));
        let phi = TautologicalAlgebra::new(&src).induced_map(&tgt, &images);
        let (ts, tt) = (TautologicalAlgebra::new(&src), TautologicalAlgebra::new(&tgt));
        let mut s = Sampler::new(21);
        for _ in 0..16 {
            let u = s.element(&[], src.l_basis(), 0, 3);
            let v = s.element(&[], src.l_basis(), 0, 3);
            assert_eq!(phi(&ts.bracket(&u, &v)), tt.bracket(&phi(&u), &phi(&v)));
        }
    }

    #[test]
    fn lie_poisson_special_case() {
        // No base variables: S[so(3)] with the Lie-Poisson bracket.
        let so3 = presets::so3();
        let t = TautologicalAlgebra::new(&so3);
        let casimir = so3
            .l_basis()
            .iter()
            .fold(Poly::zero(), |acc, e| acc + Poly::var(e).pow(2));
        for e in so3.l_basis() {
            assert!(t.bracket(&casimir, &Poly::var(e)).is_zero());
        }
    }
}
