//! Split extensions `0 → L′ → L → L″ → 0` of `(R, A)`-Lie algebras.
//!
//! With `L = L′ ⊕ L″` as `A`-modules the bracket on `L` is
//! `[e″_j, e″_k] = [e″_j, e″_k]_{L″} + Ω(e″_j, e″_k)`,
//! `[e″_j, e′_k] = ∇_{e″_j}(e′_k)` and `[e′, f′]` from `L′`, where `L′` has
//! zero anchor. Whether such a datum is consistent is decided by running
//! the axiom check on the total presentation.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lie_rinehart::{LElement, LieRinehartPresentation};
use crate::poly::{Poly, Var};
use crate::tautological::TautologicalAlgebra;

/// Tensor `t[j][k][i]` of polynomial coefficients.
pub type Tensor3 = Vec<Vec<Vec<Poly>>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionData {
    l_prime: LieRinehartPresentation,
    l_double_prime: LieRinehartPresentation,
    nabla: Tensor3,
    omega: Tensor3,
}

impl ExtensionData {
    /// `nabla[j][k][i]`: coefficient of `e′_i` in `∇_{e″_j}(e′_k)`;
    /// `omega[j][k][i]`: coefficient of `e′_i` in `Ω(e″_j, e″_k)`.
    pub fn new(
        l_prime: LieRinehartPresentation,
        l_double_prime: LieRinehartPresentation,
        nabla: Tensor3,
        omega: Tensor3,
    ) -> Result<Self> {
        if l_prime.base_vars() != l_double_prime.base_vars() {
            return Err(Error::Dimension("L' and L'' must share base variables".into()));
        }
        for (row, e) in l_prime.anchor().iter().zip(l_prime.l_basis()) {
            if row.iter().any(|p| !p.is_zero()) {
                return Err(Error::PrimeAnchorNonzero(e.name().to_string()));
            }
        }
        let (np, nd) = (l_prime.dim(), l_double_prime.dim());
        let shaped = |t: &Tensor3, a: usize, b: usize, c: usize| {
            t.len() == a && t.iter().all(|r| r.len() == b && r.iter().all(|s| s.len() == c))
        };
        if !shaped(&nabla, nd, np, np) {
            return Err(Error::Dimension(format!("nabla must be {nd}×{np}×{np}")));
        }
        if !shaped(&omega, nd, nd, np) {
            return Err(Error::Dimension(format!("omega must be {nd}×{nd}×{np}")));
        }
        for p in nabla.iter().chain(&omega).flatten().flatten() {
            if !l_prime.is_base_poly(p) {
                let v = p.vars().into_iter().find(|v| l_prime.base_index(v).is_none()).unwrap();
                return Err(Error::UnexpectedVar(v.name().to_string()));
            }
        }
        for j in 0..nd {
            for k in j..nd {
                if (0..np).any(|i| omega[j][k][i] != -&omega[k][j][i]) {
                    return Err(Error::NotAntisymmetric { j, k });
                }
            }
        }
        Ok(ExtensionData {
            l_prime,
            l_double_prime,
            nabla,
            omega,
        })
    }

    pub fn l_prime(&self) -> &LieRinehartPresentation {
        &self.l_prime
    }

    pub fn l_double_prime(&self) -> &LieRinehartPresentation {
        &self.l_double_prime
    }

    pub fn nabla(&self) -> &Tensor3 {
        &self.nabla
    }

    pub fn omega(&self) -> &Tensor3 {
        &self.omega
    }
}

/// A presentation whose basis is partitioned into an `L′` part and an
/// `L″` part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPresentation {
    presentation: LieRinehartPresentation,
    prime: Vec<usize>,
    double_prime: Vec<usize>,
}

impl SplitPresentation {
    pub fn new(presentation: LieRinehartPresentation, prime: Vec<usize>, double_prime: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; presentation.dim()];
        for &i in prime.iter().chain(&double_prime) {
            if i >= seen.len() || seen[i] {
                return Err(Error::BadSplit);
            }
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::BadSplit);
        }
        Ok(SplitPresentation {
            presentation,
            prime,
            double_prime,
        })
    }

    /// Splits by basis names.
    pub fn by_names(presentation: LieRinehartPresentation, prime: &[&str]) -> Result<Self> {
        let mut p = Vec::new();
        for name in prime {
            let i = presentation
                .l_basis()
                .iter()
                .position(|e| e.name() == *name)
                .ok_or(Error::BadSplit)?;
            p.push(i);
        }
        let d = (0..presentation.dim()).filter(|i| !p.contains(i)).collect();
        SplitPresentation::new(presentation, p, d)
    }

    pub fn presentation(&self) -> &LieRinehartPresentation {
        &self.presentation
    }

    pub fn prime(&self) -> &[usize] {
        &self.prime
    }

    pub fn double_prime(&self) -> &[usize] {
        &self.double_prime
    }

    fn name(&self, i: usize) -> String {
        self.presentation.l_basis()[i].name().to_string()
    }
}

/// An `A`-linear section `ω: L″ → L`, one image per `L″` basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionMap {
    pub section: Vec<LElement>,
}

pub fn canonical_inclusion(split: &SplitPresentation) -> ConnectionMap {
    ConnectionMap {
        section: split
            .double_prime
            .iter()
            .map(|&i| split.presentation.basis_element(i))
            .collect(),
    }
}

pub fn build_total(ext: &ExtensionData) -> Result<SplitPresentation> {
    let (lp, ld) = (&ext.l_prime, &ext.l_double_prime);
    let (np, nd) = (lp.dim(), ld.dim());
    let n = np + nd;
    let basis: Vec<Var> = lp.l_basis().iter().chain(ld.l_basis()).cloned().collect();
    let base = lp.base_vars().to_vec();
    let mut anchor = vec![vec![Poly::zero(); base.len()]; np];
    anchor.extend(ld.anchor().iter().cloned());
    let mut c = vec![vec![vec![Poly::zero(); n]; n]; n];
    for j in 0..np {
        for k in 0..np {
            c[j][k][..np].clone_from_slice(&lp.structure()[j][k]);
        }
    }
    for j in 0..nd {
        for k in 0..nd {
            c[np + j][np + k][np..].clone_from_slice(&ld.structure()[j][k]);
            c[np + j][np + k][..np].clone_from_slice(&ext.omega[j][k]);
        }
        for k in 0..np {
            c[np + j][k][..np].clone_from_slice(&ext.nabla[j][k]);
            c[k][np + j] = c[np + j][k].iter().map(|p| -p).collect();
        }
    }
    let pres = LieRinehartPresentation::new(base, basis, anchor, c)?;
    SplitPresentation::new(pres, (0..np).collect(), (np..n).collect())
}

/// `Ω(α, β) = [ωα, ωβ] − ω([α, β]_{L″})`, as a tensor over the `L″` basis
/// with values in `L′` coordinates. The quotient bracket is read off the
/// canonical inclusion, `[α, β]_{L″} = p[ια, ιβ]`.
pub fn curvature_of(split: &SplitPresentation, conn: &ConnectionMap) -> Result<Tensor3> {
    let pres = &split.presentation;
    let nd = split.double_prime.len();
    if conn.section.len() != nd || conn.section.iter().any(|s| s.len() != pres.dim()) {
        return Err(Error::Dimension("section must give one L element per L'' basis element".into()));
    }
    for (j, s) in conn.section.iter().enumerate() {
        for (k, &i) in split.double_prime.iter().enumerate() {
            let want = if j == k { Poly::one() } else { Poly::zero() };
            if s[i] != want {
                return Err(Error::NotASection(split.name(split.double_prime[j])));
            }
        }
    }
    let mut omega = vec![vec![Vec::new(); nd]; nd];
    for (j, &a) in split.double_prime.iter().enumerate() {
        for (k, &b) in split.double_prime.iter().enumerate() {
            let mut val = pres.bracket(&conn.section[j], &conn.section[k]);
            let quotient = &pres.structure()[a][b];
            for (m, &i) in split.double_prime.iter().enumerate() {
                let c = &quotient[i];
                if c.is_zero() {
                    continue;
                }
                for (slot, x) in val.iter_mut().zip(&conn.section[m]) {
                    *slot -= c * x;
                }
            }
            if split.double_prime.iter().any(|&i| !val[i].is_zero()) {
                return Err(Error::CurvatureOutsideIdeal(split.name(a), split.name(b)));
            }
            omega[j][k] = split.prime.iter().map(|&i| val[i].clone()).collect();
        }
    }
    Ok(omega)
}

/// Reads `L′`, `L″`, `∇` and `Ω` back off the tautological brackets of the
/// basis generators of a split total.
pub fn reconstruct_extension(split: &SplitPresentation) -> Result<(ExtensionData, ConnectionMap)> {
    let pres = TautologicalAlgebra::new(&split.presentation).reconstruct()?;
    let (pi, di) = (&split.prime, &split.double_prime);
    let base = pres.base_vars().to_vec();
    for &i in pi {
        if pres.anchor()[i].iter().any(|p| !p.is_zero()) {
            return Err(Error::PrimeAnchorNonzero(split.name(i)));
        }
    }
    for a in 0..pres.dim() {
        for &k in pi {
            if di.iter().any(|&i| !pres.structure()[a][k][i].is_zero()) {
                return Err(Error::NotIdeal(split.name(a), split.name(k)));
            }
        }
    }
    let pick = |idx: &[usize]| -> Vec<Var> { idx.iter().map(|&i| pres.l_basis()[i].clone()).collect() };
    let restrict = |rows: &[usize], cols: &[usize], out: &[usize]| -> Tensor3 {
        rows.iter()
            .map(|&j| {
                cols.iter()
                    .map(|&k| out.iter().map(|&i| pres.structure()[j][k][i].clone()).collect())
                    .collect()
            })
            .collect()
    };
    let l_prime = LieRinehartPresentation::new(
        base.clone(),
        pick(pi),
        vec![vec![Poly::zero(); base.len()]; pi.len()],
        restrict(pi, pi, pi),
    )?;
    let l_double_prime = LieRinehartPresentation::new(
        base,
        pick(di),
        di.iter().map(|&i| pres.anchor()[i].clone()).collect(),
        restrict(di, di, di),
    )?;
    let ext = ExtensionData::new(l_prime, l_double_prime, restrict(di, pi, pi), restrict(di, di, pi))?;
    Ok((ext, canonical_inclusion(split)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    pub at: String,
    pub expected: Poly,
    pub got: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub checked: usize,
    pub failure: Option<IdentityFailure>,
}

impl IdentityCheck {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentitiesReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentitiesReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(IdentityCheck::ok)
    }
}

struct Collector {
    name: &'static str,
    statement: &'static str,
    checked: usize,
    failure: Option<IdentityFailure>,
}

impl Collector {
    fn new(name: &'static str, statement: &'static str) -> Self {
        Collector {
            name,
            statement,
            checked: 0,
            failure: None,
        }
    }

    fn check(&mut self, at: impl FnOnce() -> String, expected: Poly, got: Poly) {
        self.checked += 1;
        if self.failure.is_none() && expected != got {
            self.failure = Some(IdentityFailure { at: at(), expected, got });
        }
    }

    fn finish(self) -> IdentityCheck {
        IdentityCheck {
            name: self.name,
            statement: self.statement,
            checked: self.checked,
            failure: self.failure,
        }
    }
}

/// Evaluates the bracket identities that determine `S_A[L]` from the
/// extension data, each on all relevant generators of the total.
pub fn theorem_identities_report(ext: &ExtensionData) -> Result<IdentitiesReport> {
    let split = build_total(ext)?;
    let pres = split.presentation();
    let t = TautologicalAlgebra::new(pres);
    let (lp, ld) = (&ext.l_prime, &ext.l_double_prime);
    let comb = |basis: &[Var], coeffs: &[Poly]| {
        basis
            .iter()
            .zip(coeffs)
            .fold(Poly::zero(), |acc, (e, c)| acc + c * &Poly::var(e))
    };
    let pair = |a: &Var, b: &Var| format!("{{{}, {}}}", a.name(), b.name());

    let mut prime = Collector::new("prime_bracket", "{a', b'} = [a', b']");
    for (j, a) in lp.l_basis().iter().enumerate() {
        for (k, b) in lp.l_basis().iter().enumerate() {
            let want = comb(lp.l_basis(), &lp.structure()[j][k]);
            prime.check(|| pair(a, b), want, t.bracket(&Poly::var(a), &Poly::var(b)));
        }
    }
    let mut double = Collector::new("double_prime_bracket", "{a'', b''} = [a'', b''] + Omega(a'', b'')");
    for (j, a) in ld.l_basis().iter().enumerate() {
        for (k, b) in ld.l_basis().iter().enumerate() {
            let want = comb(ld.l_basis(), &ld.structure()[j][k]) + comb(lp.l_basis(), &ext.omega[j][k]);
            double.check(|| pair(a, b), want, t.bracket(&Poly::var(a), &Poly::var(b)));
        }
    }
    let mut mixed = Collector::new("mixed_bracket", "{a'', b'} = nabla_a''(b')");
    for (j, a) in ld.l_basis().iter().enumerate() {
        for (k, b) in lp.l_basis().iter().enumerate() {
            let want = comb(lp.l_basis(), &ext.nabla[j][k]);
            mixed.check(|| pair(a, b), want, t.bracket(&Poly::var(a), &Poly::var(b)));
        }
    }
    let mut anchor_dp = Collector::new("double_prime_anchor", "{a'', x} = a''(x)");
    for (j, a) in ld.l_basis().iter().enumerate() {
        for (s, x) in ld.base_vars().iter().enumerate() {
            let want = ld.anchor()[j][s].clone();
            anchor_dp.check(|| pair(a, x), want, t.bracket(&Poly::var(a), &Poly::var(x)));
        }
    }
    let mut anchor_p = Collector::new("prime_anchor", "{a', x} = 0");
    for a in lp.l_basis() {
        for x in lp.base_vars() {
            anchor_p.check(|| pair(a, x), Poly::zero(), t.bracket(&Poly::var(a), &Poly::var(x)));
        }
    }
    let mut leibniz = Collector::new("leibniz", "{u, v w} = {u, v} w + v {u, w}");
    let gens = t.generators();
    for u in &gens {
        for v in &gens {
            for w in &gens {
                let (u, v, w) = (Poly::var(u), Poly::var(v), Poly::var(w));
                let want = &t.bracket(&u, &v) * &w + &v * &t.bracket(&u, &w);
                leibniz.check(|| format!("{{{u}, {v}*{w}}}"), want, t.bracket(&u, &(&v * &w)));
            }
        }
    }
    Ok(IdentitiesReport {
        checks: vec![
            prime.finish(),
            double.finish(),
            mixed.finish(),
            anchor_dp.finish(),
            anchor_p.finish(),
            leibniz.finish(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::Rational;

    fn zeros(a: usize, b: usize, c: usize) -> Tensor3 {
        vec![vec![vec![Poly::zero(); c]; b]; a]
    }

    #[test]
    fn heisenberg_total_brackets() {
        let split = presets::heisenberg_total();
        let pres = split.presentation();
        assert!(pres.check_axioms().passed());
        let t = TautologicalAlgebra::new(pres);
        let v = |n: &str| pres.l_basis().iter().chain(pres.base_vars()).find(|e| e.name() == n).cloned().map(|e| Poly::var(&e)).unwrap();
        assert_eq!(t.bracket(&v("e1"), &v("e2")), v("c"));
        assert_eq!(t.bracket(&v("e1"), &v("x1")), Poly::one());
        assert!(t.bracket(&v("c"), &v("x1")).is_zero());
        assert!(t.bracket(&v("c"), &v("x2")).is_zero());
    }

    #[test]
    fn direct_product_is_abelian() {
        let ext = presets::abelian_product();
        let split = build_total(&ext).unwrap();
        let pres = split.presentation();
        assert!(pres.structure().iter().flatten().flatten().all(Poly::is_zero));
        assert!(pres.check_axioms().passed());
        let (back, _) = reconstruct_extension(&split).unwrap();
        assert!(back.omega().iter().flatten().flatten().all(Poly::is_zero));
        assert!(back.nabla().iter().flatten().flatten().all(Poly::is_zero));
        assert!(theorem_identities_report(&ext).unwrap().ok());
    }

    #[test]
    fn nonclosed_curvature_fails_jacobi() {
        let ext = presets::heisenberg_nonclosed();
        let rep = build_total(&ext).unwrap().presentation().check_axioms();
        assert!(!rep.jacobi_ok);
        let w = rep.jacobi_witness.unwrap();
        // basis c, e1, e2, e3: [e3, [e1, e2]] = [e3, x3 c] = c
        assert_eq!(w.triple, (1, 2, 3));
        assert_eq!(w.jacobiator, vec![Poly::one(), Poly::zero(), Poly::zero(), Poly::zero()]);
    }

    #[test]
    fn curvature_roundtrip_on_presets() {
        for ext in presets::extension_presets() {
            let split = build_total(&ext).unwrap();
            assert!(split.presentation().check_axioms().passed());
            assert_eq!(&curvature_of(&split, &canonical_inclusion(&split)).unwrap(), ext.omega());
            let (back, conn) = reconstruct_extension(&split).unwrap();
            assert_eq!(back, ext);
            assert_eq!(conn, canonical_inclusion(&split));
            assert_eq!(build_total(&back).unwrap(), split);
        }
    }

    #[test]
    fn heisenberg_curvature_is_c() {
        let split = presets::heisenberg_total();
        let omega = curvature_of(&split, &canonical_inclusion(&split)).unwrap();
        assert_eq!(omega[0][1], vec![Poly::one()]);
        assert_eq!(omega[1][0], vec![-Poly::one()]);
    }

    #[test]
    fn flat_section_of_semidirect_product() {
        // so(3) ⋉ ℚ³ with Ω = 0: the inclusion of so(3) preserves brackets.
        let ext = presets::so3_semidirect();
        let split = build_total(&ext).unwrap();
        assert!(split.presentation().check_axioms().passed());
        let omega = curvature_of(&split, &canonical_inclusion(&split)).unwrap();
        assert!(omega.iter().flatten().flatten().all(Poly::is_zero));
    }

    #[test]
    fn atiyah_shadow() {
        let ext = presets::atiyah();
        let split = build_total(&ext).unwrap();
        assert!(split.presentation().check_axioms().passed());
        let omega = curvature_of(&split, &canonical_inclusion(&split)).unwrap();
        assert_eq!(omega[0][1], vec![Poly::zero(), Poly::zero(), Poly::one()]);
        assert!(theorem_identities_report(&ext).unwrap().ok());
    }

    #[test]
    fn identities_on_presets() {
        for ext in presets::extension_presets() {
            let rep = theorem_identities_report(&ext).unwrap();
            assert_eq!(rep.checks.len(), 6);
            assert!(rep.ok(), "{rep:?}");
        }
    }

    #[test]
    fn precondition_errors() {
        let split = presets::heisenberg_total();
        let pres = split.presentation().clone();
        // Declaring e1 as the ideal part: e1 has a non-zero anchor.
        let wrong = SplitPresentation::by_names(pres.clone(), &["e1"]).unwrap();
        assert!(matches!(reconstruct_extension(&wrong), Err(Error::PrimeAnchorNonzero(_))));
        // so(3) has no ideal spanned by e1.
        let so3 = SplitPresentation::by_names(presets::so3(), &["e1"]).unwrap();
        assert!(matches!(reconstruct_extension(&so3), Err(Error::NotIdeal(..))));
        // A shifted section exposes that e1 does not span an ideal:
        // [e2 + e1, e3] = e1 − e2 while [e2, e3] projects to 0.
        let so3_pres = so3.presentation();
        let shifted = ConnectionMap {
            section: vec![
                vec![Poly::one(), Poly::one(), Poly::zero()],
                so3_pres.basis_element(2),
            ],
        };
        assert!(matches!(curvature_of(&so3, &shifted), Err(Error::CurvatureOutsideIdeal(..))));
        assert!(matches!(SplitPresentation::new(pres.clone(), vec![0, 0], vec![1, 2]), Err(Error::BadSplit)));
        let not_section = ConnectionMap {
            section: vec![pres.basis_element(0), pres.basis_element(0)],
        };
        assert!(matches!(curvature_of(&split, &not_section), Err(Error::NotASection(_))));
        let ext = presets::heisenberg();
        assert!(matches!(
            ExtensionData::new(ext.l_prime().clone(), ext.l_double_prime().clone(), zeros(2, 1, 1), zeros(1, 1, 1)),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            ExtensionData::new(ext.l_double_prime().clone(), ext.l_prime().clone(), zeros(1, 2, 2), zeros(1, 1, 2)),
            Err(Error::PrimeAnchorNonzero(_))
        ));
    }

    /// Shifting the section by `f_j c` and rescaling `c ↦ 2c` changes the
    /// data by `Ω′ = (Ω + e1(f2) − e2(f1)) / 2`; both totals are isomorphic
    /// via the corresponding change of basis.
    #[test]
    fn congruent_extensions() {
        let ext = presets::heisenberg();
        let split = build_total(&ext).unwrap();
        let pres = split.presentation();
        let (x1, x2) = (Poly::var(&pres.base_vars()[0]), Poly::var(&pres.base_vars()[1]));
        let (f1, f2) = (&x2 * &x2, &x1 * &x2);
        // basis order c, e1, e2; new basis c' = 2c, e1' = e1 + f1 c, e2' = e2 + f2 c.
        let shifted = ConnectionMap {
            section: vec![
                vec![f1.clone(), Poly::one(), Poly::zero()],
                vec![f2.clone(), Poly::zero(), Poly::one()],
            ],
        };
        let omega_shift = curvature_of(&split, &shifted).unwrap();
        let expected = &(Poly::one() + f2.partial(&pres.base_vars()[0])) - &f1.partial(&pres.base_vars()[1]);
        assert_eq!(omega_shift[0][1], vec![expected.clone()]);

        let half = Rational::new(1.into(), 2.into());
        let mut omega2 = zeros(2, 2, 1);
        omega2[0][1][0] = expected.scale(&half);
        omega2[1][0][0] = -&omega2[0][1][0];
        let ext2 = ExtensionData::new(ext.l_prime().clone(), ext.l_double_prime().clone(), zeros(2, 1, 1), omega2).unwrap();
        let split2 = build_total(&ext2).unwrap();
        let rep1 = pres.check_axioms();
        let rep2 = split2.presentation().check_axioms();
        assert_eq!(rep1.passed(), rep2.passed());
        assert_eq!(rep1.triples_checked, rep2.triples_checked);
        let images = vec![
            vec![Poly::int(2), Poly::zero(), Poly::zero()],
            shifted.section[0].clone(),
            shifted.section[1].clone(),
        ];
        assert!(split2.presentation().is_morphism_to(pres, &images));
        let (back, _) = reconstruct_extension(&split2).unwrap();
        assert_eq!(back, ext2);
    }
}
