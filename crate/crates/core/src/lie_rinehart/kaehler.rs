//! The Lie-Rinehart algebra of formal differentials of a Poisson algebra.
//!
//! For a polynomial Poisson algebra `𝒜 = ℚ[u_1..u_m]` the module of formal
//! differentials is free on `du_1..du_m`. The bracket
//! `[a du, b dv] = a{u,b} dv + b{a,v} du + ab d{u,v}` and the anchor
//! `π♯(a du) = a{u, ·}` make `(𝒜, D_𝒜)` a Lie-Rinehart algebra exactly when
//! the bracket on `𝒜` satisfies Jacobi.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::Derivation;
use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, Monomial, Poly, Var};
use crate::Rational;

/// A Poisson bracket on a free polynomial algebra, given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonAlgebra {
    generators: Vec<Var>,
    table: Vec<Vec<Poly>>,
}

impl PoissonAlgebra {
    pub fn new(generators: Vec<Var>, table: Vec<Vec<Poly>>) -> Result<Self> {
        let m = generators.len();
        let mut names = BTreeSet::new();
        for g in &generators {
            if !names.insert(g.clone()) {
                return Err(Error::DuplicateVar(g.name().to_string()));
            }
        }
        if table.len() != m || table.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension("bracket table must be m×m".into()));
        }
        for p in table.iter().flatten() {
            if let Some(v) = p.vars().into_iter().find(|v| !names.contains(v)) {
                return Err(Error::UnexpectedVar(v.name().to_string()));
            }
        }
        for j in 0..m {
            for k in j..m {
                if table[j][k] != -&table[k][j] {
                    return Err(Error::NotAntisymmetric { j, k });
                }
            }
        }
        Ok(PoissonAlgebra { generators, table })
    }

    pub fn generators(&self) -> &[Var] {
        &self.generators
    }

    pub fn table(&self) -> &[Vec<Poly>] {
        &self.table
    }

    pub fn generator_index(&self, v: &Var) -> Option<usize> {
        self.generators.iter().position(|g| g == v)
    }

    /// `{f, g} = Σ_ij ∂f/∂u_i ∂g/∂u_j {u_i, u_j}`.
    pub fn bracket(&self, f: &Poly, g: &Poly) -> Poly {
        let df: Vec<Poly> = self.generators.iter().map(|u| f.partial(u)).collect();
        let dg: Vec<Poly> = self.generators.iter().map(|u| g.partial(u)).collect();
        let mut out = Poly::zero();
        for (i, a) in df.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in dg.iter().enumerate() {
                let t = &self.table[i][j];
                if b.is_zero() || t.is_zero() {
                    continue;
                }
                out += &(a * b) * t;
            }
        }
        out
    }

    /// The Hamiltonian derivation `{f, ·}`.
    pub fn hamiltonian(&self, f: &Poly) -> Derivation {
        Derivation::new(
            self.generators
                .iter()
                .map(|u| (u.clone(), self.bracket(f, &Poly::var(u)))),
        )
    }

    /// First generator triple (lexicographic) violating Jacobi.
    pub fn jacobi_witness(&self) -> Option<((usize, usize, usize), Poly)> {
        let m = self.generators.len();
        let g = |i: usize| Poly::var(&self.generators[i]);
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let jac = self.bracket(&g(i), &self.table[j][k])
                        + self.bracket(&g(j), &self.table[k][i])
                        + self.bracket(&g(k), &self.table[i][j]);
                    if !jac.is_zero() {
                        return Some(((i, j, k), jac));
                    }
                }
            }
        }
        None
    }
}

/// `Σ_i coeffs[i] du_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm(pub Vec<Poly>);

impl OneForm {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Poly::is_zero)
    }

    fn add_scaled(&mut self, a: &Poly, other: &OneForm) {
        for (slot, c) in self.0.iter_mut().zip(&other.0) {
            if !c.is_zero() {
                *slot += a * c;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KaehlerPresentation {
    source: PoissonAlgebra,
}

/// A failing pair of module generators `a·du_i`, `b·du_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiSharpWitness {
    pub left: (Monomial, usize),
    pub right: (Monomial, usize),
    pub var: Var,
    pub defect: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiSharpReport {
    pub ok: bool,
    pub pairs_checked: usize,
    pub witness: Option<PiSharpWitness>,
}

impl KaehlerPresentation {
    pub fn new(source: PoissonAlgebra) -> Self {
        KaehlerPresentation { source }
    }

    pub fn source(&self) -> &PoissonAlgebra {
        &self.source
    }

    pub fn zero_form(&self) -> OneForm {
        OneForm(alloc::vec![Poly::zero(); self.source.generators.len()])
    }

    /// `a · du_i`.
    pub fn generator_form(&self, a: Poly, i: usize) -> OneForm {
        let mut w = self.zero_form();
        w.0[i] = a;
        w
    }

    /// `df = Σ ∂f/∂u_i du_i`.
    pub fn differential(&self, f: &Poly) -> OneForm {
        OneForm(self.source.generators.iter().map(|u| f.partial(u)).collect())
    }

    /// `[a du, b dv] = a{u,b} dv + b{a,v} du + ab d{u,v}`.
    pub fn kaehler_bracket(&self, a: &Poly, u: &Poly, b: &Poly, v: &Poly) -> OneForm {
        let s = &self.source;
        let mut out = self.zero_form();
        out.add_scaled(&(a * &s.bracket(u, b)), &self.differential(v));
        out.add_scaled(&(b * &s.bracket(a, v)), &self.differential(u));
        out.add_scaled(&(a * b), &self.differential(&s.bracket(u, v)));
        out
    }

    /// The bracket extended additively over `Σ x_i du_i`.
    pub fn bracket(&self, x: &OneForm, y: &OneForm) -> OneForm {
        let mut out = self.zero_form();
        for (i, a) in x.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let u = Poly::var(&self.source.generators[i]);
            for (j, b) in y.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let v = Poly::var(&self.source.generators[j]);
                let t = self.kaehler_bracket(a, &u, b, &v);
                for (slot, c) in out.0.iter_mut().zip(t.0) {
                    *slot += c;
                }
            }
        }
        out
    }

    /// `π(x, y) = Σ x_i y_j {u_i, u_j}`.
    pub fn pi(&self, x: &OneForm, y: &OneForm) -> Poly {
        let mut out = Poly::zero();
        for (i, a) in x.0.iter().enumerate() {
            for (j, b) in y.0.iter().enumerate() {
                let t = &self.source.table[i][j];
                if !a.is_zero() && !b.is_zero() && !t.is_zero() {
                    out += &(a * b) * t;
                }
            }
        }
        out
    }

    /// `π♯(x) = π(x, d·)` as a derivation.
    pub fn pi_sharp(&self, x: &OneForm) -> Derivation {
        let gens = &self.source.generators;
        Derivation::new(gens.iter().enumerate().map(|(k, u)| {
            let val = x
                .0
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .fold(Poly::zero(), |acc, (i, a)| acc + a * &self.source.table[i][k]);
            (u.clone(), val)
        }))
    }

    /// Checks `π♯[x, y] = [π♯x, π♯y]` for all pairs of module generators
    /// `a·du_i` with `a` a monomial of degree at most `coeff_degree`.
    pub fn check_pi_sharp_morphism(&self, coeff_degree: u32) -> PiSharpReport {
        let gens = &self.source.generators;
        let mut module_gens = Vec::new();
        for d in 0..=coeff_degree {
            for m in monomials_of_degree(gens, d) {
                for i in 0..gens.len() {
                    module_gens.push((m.clone(), i));
                }
            }
        }
        let mut pairs_checked = 0;
        for (p, (ma, i)) in module_gens.iter().enumerate() {
            let x = self.generator_form(Poly::term(Rational::from_integer(1.into()), ma.clone()), *i);
            let px = self.pi_sharp(&x);
            for (mb, j) in &module_gens[p + 1..] {
                pairs_checked += 1;
                let y = self.generator_form(Poly::term(Rational::from_integer(1.into()), mb.clone()), *j);
                let lhs = self.pi_sharp(&self.bracket(&x, &y));
                let rhs = px.commutator(&self.pi_sharp(&y));
                if let Some(var) = gens.iter().find(|v| lhs.image(v) != rhs.image(v)) {
                    return PiSharpReport {
                        ok: false,
                        pairs_checked,
                        witness: Some(PiSharpWitness {
                            left: (ma.clone(), *i),
                            right: (mb.clone(), *j),
                            var: var.clone(),
                            defect: lhs.image(var) - rhs.image(var),
                        }),
                    };
                }
            }
        }
        PiSharpReport {
            ok: true,
            pairs_checked,
            witness: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn qp() -> (Poly, Poly) {
        (Poly::var(&Var::base("q")), Poly::var(&Var::base("p")))
    }

    /// Independent expansion of `[q dq, p dp]` straight from the formula,
    /// using only `{q,p} = 1` by hand.
    #[test]
    fn kaehler_bracket_examples() {
        let kp = KaehlerPresentation::new(presets::symplectic_plane());
        let (q, p) = qp();
        let one = Poly::one();
        assert!(kp.kaehler_bracket(&one, &q, &one, &p).is_zero());
        let flat = KaehlerPresentation::new(
            PoissonAlgebra::new(
                alloc::vec![Var::base("u"), Var::base("v")],
                alloc::vec![alloc::vec![Poly::zero(); 2]; 2],
            )
            .unwrap(),
        );
        let (u, v) = (Poly::var(&Var::base("u")), Poly::var(&Var::base("v")));
        assert!(flat.kaehler_bracket(&one, &u, &one, &v).is_zero());
        // q{q,p}dp + p{q,p}dq + qp d(1) = q dp + p dq
        let got = kp.kaehler_bracket(&q, &q, &p, &p);
        assert_eq!(got, OneForm(alloc::vec![p.clone(), q.clone()]));
        let via_forms = kp.bracket(&kp.generator_form(q.clone(), 0), &kp.generator_form(p.clone(), 1));
        assert_eq!(via_forms, got);
    }

    #[test]
    fn pi_sharp_morphism_on_valid_sources() {
        for src in [presets::symplectic_plane(), presets::so3_lie_poisson()] {
            let rep = KaehlerPresentation::new(src).check_pi_sharp_morphism(1);
            assert!(rep.ok, "{rep:?}");
            assert!(rep.pairs_checked > 0);
        }
    }

    #[test]
    fn pi_sharp_detects_jacobi_failure() {
        let bad = presets::corrupted_poisson();
        assert!(bad.jacobi_witness().is_some());
        let rep = KaehlerPresentation::new(bad).check_pi_sharp_morphism(1);
        assert!(!rep.ok);
        assert!(rep.witness.is_some());
    }

    #[test]
    fn two_form_matches_bracket() {
        let kp = KaehlerPresentation::new(presets::so3_lie_poisson());
        let f = Poly::var(&Var::base("u1")).pow(2);
        let g = Poly::var(&Var::base("u2"));
        let lhs = kp.pi(&kp.differential(&f), &kp.differential(&g));
        assert_eq!(lhs, kp.source().bracket(&f, &g));
    }
}
