//! Finite free presentations of `(R, A)`-Lie algebras.
//!
//! `A = ℚ[x_1..x_n]` is a free polynomial ring and `L` is a free `A`-module
//! on `e_1..e_m`. A presentation records the anchor `ρ(e_j) = Σ_s a_js ∂/∂x_s`
//! and the structure functions `[e_j, e_k] = Σ_i c_jki e_i`. Brackets of
//! arbitrary `A`-combinations follow from antisymmetry and
//! `[α, aβ] = a[α, β] + α(a)β`.
//!
//! Checking the axioms on basis elements is enough: the Jacobiator is
//! `A`-trilinear once the anchor is a Lie morphism, and both identities are
//! polynomial, so the check is exact rather than sampled.

mod kaehler;

pub use kaehler::{KaehlerPresentation, OneForm, PiSharpReport, PiSharpWitness, PoissonAlgebra};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::{Poly, Var, VarKind};

/// Coefficients of an element of `L` over the presentation's basis.
pub type LElement = Vec<Poly>;

/// A derivation of a free polynomial algebra, given by its values on the
/// generators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Derivation {
    images: BTreeMap<Var, Poly>,
}

impl Derivation {
    pub fn new<I: IntoIterator<Item = (Var, Poly)>>(images: I) -> Self {
        Derivation {
            images: images.into_iter().filter(|(_, p)| !p.is_zero()).collect(),
        }
    }

    pub fn image(&self, v: &Var) -> Poly {
        self.images.get(v).cloned().unwrap_or_default()
    }

    pub fn images(&self) -> &BTreeMap<Var, Poly> {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.is_empty()
    }

    /// `D(a) = Σ_v D(v) ∂a/∂v`.
    pub fn apply(&self, a: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (v, img) in &self.images {
            let d = a.partial(v);
            if !d.is_zero() {
                out += img * &d;
            }
        }
        out
    }

    /// `[D, E] = D∘E − E∘D`, evaluated on the union of both supports.
    pub fn commutator(&self, other: &Derivation) -> Derivation {
        let support: BTreeSet<Var> = self
            .images
            .keys()
            .chain(other.images.keys())
            .cloned()
            .collect();
        Derivation::new(support.into_iter().map(|v| {
            let val = self.apply(&other.image(&v)) - other.apply(&self.image(&v));
            (v, val)
        }))
    }

    pub fn scale_by(&self, a: &Poly) -> Derivation {
        Derivation::new(self.images.iter().map(|(v, p)| (v.clone(), a * p)))
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        let mut images = self.images.clone();
        for (v, p) in &other.images {
            let entry = images.entry(v.clone()).or_default();
            *entry += p;
        }
        Derivation::new(images)
    }
}

/// The datum of an `(R, A)`-Lie algebra with free `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieRinehartPresentation {
    base_vars: Vec<Var>,
    l_basis: Vec<Var>,
    anchor: Vec<Vec<Poly>>,
    structure: Vec<Vec<Vec<Poly>>>,
}

/// Failure of the Jacobi identity on a basis triple `i < j < k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiWitness {
    pub triple: (usize, usize, usize),
    pub jacobiator: LElement,
}

/// Failure of `ρ([e_j, e_k]) = [ρ(e_j), ρ(e_k)]`, evaluated on `var`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchorWitness {
    pub pair: (usize, usize),
    pub var: Var,
    pub defect: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub jacobi_ok: bool,
    pub anchor_morphism_ok: bool,
    pub jacobi_witness: Option<JacobiWitness>,
    pub anchor_witness: Option<AnchorWitness>,
    pub triples_checked: usize,
    pub pairs_checked: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.jacobi_ok && self.anchor_morphism_ok
    }
}

impl LieRinehartPresentation {
    /// Validates and builds a presentation. `anchor[j][s]` is the coefficient
    /// of `∂/∂x_s` in `ρ(e_j)`; `structure[j][k][i]` the coefficient of `e_i`
    /// in `[e_j, e_k]`.
    pub fn new(
        base_vars: Vec<Var>,
        l_basis: Vec<Var>,
        anchor: Vec<Vec<Poly>>,
        structure: Vec<Vec<Vec<Poly>>>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in base_vars.iter().chain(&l_basis) {
            if !seen.insert(v.name().to_string()) {
                return Err(Error::DuplicateVar(v.name().to_string()));
            }
        }
        if let Some(v) = base_vars.iter().find(|v| v.kind() != VarKind::Base) {
            return Err(Error::WrongKind {
                name: v.name().to_string(),
            });
        }
        if let Some(v) = l_basis.iter().find(|v| v.kind() != VarKind::Fiber) {
            return Err(Error::WrongKind {
                name: v.name().to_string(),
            });
        }
        let (n, m) = (base_vars.len(), l_basis.len());
        if anchor.len() != m || anchor.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension("anchor must be an m×n matrix".into()));
        }
        if structure.len() != m
            || structure
                .iter()
                .any(|row| row.len() != m || row.iter().any(|c| c.len() != m))
        {
            return Err(Error::Dimension("structure must be an m×m×m tensor".into()));
        }
        let allowed: BTreeSet<Var> = base_vars.iter().cloned().collect();
        let check_entry = |p: &Poly| -> Result<()> {
            match p.vars().into_iter().find(|v| !allowed.contains(v)) {
                Some(v) => Err(Error::UnexpectedVar(v.name().to_string())),
                None => Ok(()),
            }
        };
        for p in anchor.iter().flatten() {
            check_entry(p)?;
        }
        for p in structure.iter().flatten().flatten() {
            check_entry(p)?;
        }
        for j in 0..m {
            for k in j..m {
                for i in 0..m {
                    if structure[j][k][i] != -&structure[k][j][i] {
                        return Err(Error::NotAntisymmetric { j, k });
                    }
                }
            }
        }
        Ok(LieRinehartPresentation {
            base_vars,
            l_basis,
            anchor,
            structure,
        })
    }

    pub fn base_vars(&self) -> &[Var] {
        &self.base_vars
    }

    pub fn l_basis(&self) -> &[Var] {
        &self.l_basis
    }

    pub fn anchor(&self) -> &[Vec<Poly>] {
        &self.anchor
    }

    pub fn structure(&self) -> &[Vec<Vec<Poly>>] {
        &self.structure
    }

    pub fn dim(&self) -> usize {
        self.l_basis.len()
    }

    pub fn basis_index(&self, v: &Var) -> Option<usize> {
        self.l_basis.iter().position(|w| w == v)
    }

    pub fn base_index(&self, v: &Var) -> Option<usize> {
        self.base_vars.iter().position(|w| w == v)
    }

    /// True when `p` only involves variables of `A`.
    pub fn is_base_poly(&self, p: &Poly) -> bool {
        p.vars().iter().all(|v| self.base_vars.contains(v))
    }

    pub fn basis_element(&self, j: usize) -> LElement {
        let mut v = alloc::vec![Poly::zero(); self.dim()];
        v[j] = Poly::one();
        v
    }

    pub fn zero_element(&self) -> LElement {
        alloc::vec![Poly::zero(); self.dim()]
    }

    /// `ρ(e_j)` as a derivation of `A`.
    pub fn anchor_derivation(&self, j: usize) -> Derivation {
        Derivation::new(
            self.base_vars
                .iter()
                .cloned()
                .zip(self.anchor[j].iter().cloned()),
        )
    }

    /// `ρ(x)` for an `A`-combination `x`.
    pub fn anchor_of(&self, x: &LElement) -> Derivation {
        x.iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .fold(Derivation::default(), |acc, (j, a)| {
                acc.add(&self.anchor_derivation(j).scale_by(a))
            })
    }

    /// `ρ(e_j)(a)`; rejects `a` outside `A`.
    pub fn apply_anchor(&self, j: usize, a: &Poly) -> Result<Poly> {
        if j >= self.dim() {
            return Err(Error::Dimension("basis index out of range".into()));
        }
        if let Some(v) = a.vars().into_iter().find(|v| !self.base_vars.contains(v)) {
            return Err(Error::UnexpectedVar(v.name().to_string()));
        }
        let mut out = Poly::zero();
        for (s, x) in self.base_vars.iter().enumerate() {
            let coeff = &self.anchor[j][s];
            if !coeff.is_zero() {
                out += coeff * &a.partial(x);
            }
        }
        Ok(out)
    }

    /// Bracket of two `A`-combinations of basis elements:
    /// `[Σ a_j e_j, Σ b_k e_k] = Σ a_j b_k [e_j, e_k] + a_j ρ(e_j)(b_k) e_k − b_k ρ(e_k)(a_j) e_j`.
    pub fn bracket(&self, x: &LElement, y: &LElement) -> LElement {
        let m = self.dim();
        let mut out = self.zero_element();
        for j in 0..m {
            if x[j].is_zero() {
                continue;
            }
            let rho_j = self.anchor_derivation(j);
            for k in 0..m {
                if y[k].is_zero() {
                    continue;
                }
                let ab = &x[j] * &y[k];
                for (i, slot) in out.iter_mut().enumerate() {
                    let c = &self.structure[j][k][i];
                    if !c.is_zero() {
                        *slot += &ab * c;
                    }
                }
                out[k] += &x[j] * &rho_j.apply(&y[k]);
                let rho_k = self.anchor_derivation(k);
                out[j] -= &y[k] * &rho_k.apply(&x[j]);
            }
        }
        out
    }

    /// Verifies Jacobi on basis triples and that the anchor is a Lie
    /// morphism; the first failure in lexicographic order is the witness.
    pub fn check_axioms(&self) -> AxiomReport {
        let m = self.dim();
        let mut jacobi_witness = None;
        let mut triples_checked = 0;
        'outer: for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    triples_checked += 1;
                    let jac = self.jacobiator(i, j, k);
                    if jac.iter().any(|p| !p.is_zero()) {
                        jacobi_witness = Some(JacobiWitness {
                            triple: (i, j, k),
                            jacobiator: jac,
                        });
                        break 'outer;
                    }
                }
            }
        }
        let mut anchor_witness = None;
        let mut pairs_checked = 0;
        'pairs: for j in 0..m {
            for k in j + 1..m {
                pairs_checked += 1;
                let lhs = self.anchor_of(&self.structure[j][k]);
                let rhs = self
                    .anchor_derivation(j)
                    .commutator(&self.anchor_derivation(k));
                for var in &self.base_vars {
                    let defect = lhs.image(var) - rhs.image(var);
                    if !defect.is_zero() {
                        anchor_witness = Some(AnchorWitness {
                            pair: (j, k),
                            var: var.clone(),
                            defect,
                        });
                        break 'pairs;
                    }
                }
            }
        }
        AxiomReport {
            jacobi_ok: jacobi_witness.is_none(),
            anchor_morphism_ok: anchor_witness.is_none(),
            jacobi_witness,
            anchor_witness,
            triples_checked,
            pairs_checked,
        }
    }

    /// `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> LElement {
        let b = |a: usize, x: &LElement| self.bracket(&self.basis_element(a), x);
        let t1 = b(i, &self.structure[j][k].clone());
        let t2 = b(j, &self.structure[k][i].clone());
        let t3 = b(k, &self.structure[i][j].clone());
        t1.into_iter()
            .zip(t2)
            .zip(t3)
            .map(|((a, b), c)| a + b + c)
            .collect()
    }

    /// Checks that `images[j] = φ(e_j) ∈ target` defines a morphism of
    /// `(R, A)`-Lie algebras over the same base: brackets and anchors are
    /// preserved on basis elements.
    pub fn is_morphism_to(&self, target: &LieRinehartPresentation, images: &[LElement]) -> bool {
        if images.len() != self.dim()
            || images.iter().any(|x| x.len() != target.dim())
            || self.base_vars != target.base_vars
        {
            return false;
        }
        let apply = |x: &LElement| -> LElement {
            let mut out = target.zero_element();
            for (j, a) in x.iter().enumerate() {
                for (slot, b) in out.iter_mut().zip(&images[j]) {
                    *slot += a * b;
                }
            }
            out
        };
        for j in 0..self.dim() {
            if target.anchor_of(&images[j]) != self.anchor_derivation(j) {
                return false;
            }
            for k in j + 1..self.dim() {
                let lhs = apply(&self.structure[j][k]);
                let rhs = target.bracket(&images[j], &images[k]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::sampling::Sampler;
    use crate::Rational;

    fn x() -> Var {
        Var::base("x")
    }

    #[test]
    fn anchor_examples() {
        let vect = presets::vect_model();
        let xp = Poly::var(&x());
        assert_eq!(vect.apply_anchor(0, &xp.pow(2)).unwrap(), xp.scale(&Rational::from_integer(2.into())));
        assert!(vect.apply_anchor(0, &Poly::int(7)).unwrap().is_zero());
        let e = Poly::var(&Var::fiber("e"));
        assert_eq!(
            vect.apply_anchor(0, &e),
            Err(Error::UnexpectedVar("e".into()))
        );
        let rot = presets::rotation_field();
        let (xx, yy) = (Poly::var(&Var::base("x")), Poly::var(&Var::base("y")));
        let radius = &xx.pow(2) + &yy.pow(2);
        assert!(rot.apply_anchor(0, &radius).unwrap().is_zero());
    }

    #[test]
    fn valid_presets_pass() {
        for pres in [
            presets::vect_model(),
            presets::so3(),
            presets::heisenberg_total().presentation().clone(),
            presets::rotation_field(),
        ] {
            let rep = pres.check_axioms();
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn corrupted_so3_has_jacobi_witness() {
        let rep = presets::so3_corrupted().check_axioms();
        assert!(!rep.jacobi_ok);
        let w = rep.jacobi_witness.unwrap();
        assert_eq!(w.triple, (0, 1, 2));
        // [e3, [e1, e2]] = [e3, e3 + e1] = e2; the other two terms vanish.
        assert_eq!(w.jacobiator, alloc::vec![Poly::zero(), Poly::one(), Poly::zero()]);
        assert!(rep.anchor_morphism_ok);
    }

    #[test]
    fn non_morphic_anchor_has_witness() {
        let rep = presets::vect_model_mutant().check_axioms();
        assert!(!rep.anchor_morphism_ok);
        let w = rep.anchor_witness.unwrap();
        assert_eq!(w.pair, (0, 1));
        assert_eq!(w.var, x());
        // ρ([e1,e2]) = 0 while [∂x, x∂x] = ∂x.
        assert_eq!(w.defect, -Poly::one());
    }

    #[test]
    fn antisymmetry_enforced_at_construction() {
        let e = Var::fiber("e");
        let res = LieRinehartPresentation::new(
            alloc::vec![x()],
            alloc::vec![e],
            alloc::vec![alloc::vec![Poly::one()]],
            alloc::vec![alloc::vec![alloc::vec![Poly::var(&x())]]],
        );
        assert_eq!(res, Err(Error::NotAntisymmetric { j: 0, k: 0 }));
    }

    #[test]
    fn derivation_leibniz_and_extended_bracket_rule() {
        let mut sampler = Sampler::new(11);
        for pres in [presets::vect_model(), presets::heisenberg_total().presentation().clone(), presets::rotation_field()] {
            for _ in 0..16 {
                let a = sampler.base_poly(pres.base_vars(), 3);
                let b = sampler.base_poly(pres.base_vars(), 3);
                for j in 0..pres.dim() {
                    let lhs = pres.apply_anchor(j, &(&a * &b)).unwrap();
                    let rhs = &pres.apply_anchor(j, &a).unwrap() * &b
                        + &a * &pres.apply_anchor(j, &b).unwrap();
                    assert_eq!(lhs, rhs);
                    for k in 0..pres.dim() {
                        // [e_j, a e_k] − a [e_j, e_k] − ρ(e_j)(a) e_k = 0
                        let mut aek = pres.zero_element();
                        aek[k] = a.clone();
                        let lhs = pres.bracket(&pres.basis_element(j), &aek);
                        let mut rhs: LElement =
                            pres.structure()[j][k].iter().map(|c| &a * c).collect();
                        rhs[k] += pres.apply_anchor(j, &a).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn morphism_check() {
        let so3 = presets::so3();
        // Cyclic relabelling e1→e2→e3→e1 is an automorphism.
        let images: Vec<LElement> = (0..3).map(|j| so3.basis_element((j + 1) % 3)).collect();
        assert!(so3.is_morphism_to(&so3, &images));
        // A transposition reverses orientation, so it is not.
        let swap: Vec<LElement> = [1, 0, 2].iter().map(|&j| so3.basis_element(j)).collect();
        assert!(!so3.is_morphism_to(&so3, &swap));
    }
}
