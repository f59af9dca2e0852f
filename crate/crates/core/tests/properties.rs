use proptest::prelude::*;
use rinehart_core::extensions::{build_total, reconstruct_extension, theorem_identities_report, ExtensionData};
use rinehart_core::invariant_theory::{hilbert_preimage, is_sp, DualPairScene, HilbertPreimage, NUMERIC_TOLERANCE};
use rinehart_core::sampling::Sampler;
use rinehart_core::{presets, LElement, LieRinehartPresentation, Poly, Rational, TautologicalAlgebra, Var};

fn presentations() -> Vec<LieRinehartPresentation> {
    let mut out = presets::valid_presentations();
    out.push(presets::rotation_field());
    out.push(build_total(&presets::atiyah()).unwrap().presentation().clone());
    out
}

fn random_element(s: &mut Sampler, p: &LieRinehartPresentation) -> LElement {
    (0..p.dim()).map(|_| s.base_poly(p.base_vars(), 2)).collect()
}

fn scaled(a: &Poly, x: &LElement) -> LElement {
    x.iter().map(|c| a * c).collect()
}

fn add(x: &LElement, y: &LElement) -> LElement {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_is_a_linear_in_the_anchor_sense(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        for p in presentations() {
            let a = s.base_poly(p.base_vars(), 2);
            let (x, y) = (random_element(&mut s, &p), random_element(&mut s, &p));
            let lhs = p.bracket(&x, &scaled(&a, &y));
            let rho_a = p.anchor_of(&x).apply(&a);
            let rhs = add(&scaled(&a, &p.bracket(&x, &y)), &scaled(&rho_a, &y));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn anchor_is_a_derivation(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        for p in presentations() {
            let (a, b) = (s.base_poly(p.base_vars(), 3), s.base_poly(p.base_vars(), 3));
            for j in 0..p.dim() {
                let lhs = p.apply_anchor(j, &(&a * &b)).unwrap();
                let rhs = &p.apply_anchor(j, &a).unwrap() * &b + &a * &p.apply_anchor(j, &b).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn passing_axioms_extend_to_combinations(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        for p in presentations() {
            prop_assert!(p.check_axioms().passed());
            let (x, y, z) = (random_element(&mut s, &p), random_element(&mut s, &p), random_element(&mut s, &p));
            let jac = add(
                &add(&p.bracket(&x, &p.bracket(&y, &z)), &p.bracket(&y, &p.bracket(&z, &x))),
                &p.bracket(&z, &p.bracket(&x, &y)),
            );
            prop_assert!(jac.iter().all(|c| c.is_zero()));
            let rho_xy = p.anchor_of(&p.bracket(&x, &y));
            let comm = p.anchor_of(&x).commutator(&p.anchor_of(&y));
            for v in p.base_vars() {
                prop_assert_eq!(rho_xy.image(v), comm.image(v));
            }
        }
    }

    #[test]
    fn tautological_laws(seed in any::<u64>()) {
        for p in presentations() {
            let t = TautologicalAlgebra::new(&p);
            for (u, v, w) in t.random_triples(seed, 2) {
                prop_assert!((t.bracket(&u, &v) + t.bracket(&v, &u)).is_zero());
                prop_assert_eq!(t.bracket(&u, &(&v * &w)), &t.bracket(&u, &v) * &w + &v * &t.bracket(&u, &w));
                prop_assert!(t.jacobiator(&u, &v, &w).is_zero());
                if let (Some(du), Some(dv)) = (u.fiber_degree(), v.fiber_degree()) {
                    if du >= 1 && dv >= 1 {
                        if let Some(d) = t.bracket(&u, &v).fiber_degree() {
                            prop_assert!(d + 1 <= du + dv);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn base_part_is_abelian(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        for p in presentations() {
            let t = TautologicalAlgebra::new(&p);
            let (a, b) = (s.base_poly(p.base_vars(), 3), s.base_poly(p.base_vars(), 3));
            prop_assert!(t.bracket(&a, &b).is_zero());
        }
    }

    #[test]
    fn induced_map_is_a_poisson_morphism(seed in any::<u64>()) {
        let (src, dst) = (presets::so3(), presets::so3_times_line());
        let images: Vec<LElement> = (0..3).map(|j| dst.basis_element(j)).collect();
        prop_assert!(src.is_morphism_to(&dst, &images));
        let (ts, td) = (TautologicalAlgebra::new(&src), TautologicalAlgebra::new(&dst));
        let phi = ts.induced_map(&dst, &images);
        for (u, v, _) in ts.random_triples(seed, 3) {
            prop_assert_eq!(phi(&ts.bracket(&u, &v)), td.bracket(&phi(&u), &phi(&v)));
        }
    }
}

/// `L′ = A·c`, `L″ = span(∂1, ∂2)` over `ℚ[x1, x2]` with `∇_{∂i} c = f_i c`
/// and `Ω(∂1, ∂2) = g c`. The only Jacobi condition is `∂1 f2 = ∂2 f1`.
fn line_extension(f1: Poly, f2: Poly, g: Poly) -> ExtensionData {
    let base = vec![Var::base("x1"), Var::base("x2")];
    let lp = LieRinehartPresentation::new(
        base.clone(),
        vec![Var::fiber("c")],
        vec![vec![Poly::zero(); 2]],
        vec![vec![vec![Poly::zero()]]],
    )
    .unwrap();
    let ld = LieRinehartPresentation::new(
        base,
        vec![Var::fiber("d1"), Var::fiber("d2")],
        vec![vec![Poly::one(), Poly::zero()], vec![Poly::zero(), Poly::one()]],
        vec![vec![vec![Poly::zero(); 2]; 2]; 2],
    )
    .unwrap();
    let nabla = vec![vec![vec![f1]], vec![vec![f2]]];
    let omega = vec![vec![vec![Poly::zero()], vec![g.clone()]], vec![vec![-g], vec![Poly::zero()]]];
    ExtensionData::new(lp, ld, nabla, omega).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_line_extensions(seed in any::<u64>(), gradient in any::<bool>()) {
        let mut s = Sampler::new(seed);
        let (x1, x2) = (Var::base("x1"), Var::base("x2"));
        let vars = [x1.clone(), x2.clone()];
        let (f1, f2) = if gradient {
            let h = s.base_poly(&vars, 3);
            (h.partial(&x1), h.partial(&x2))
        } else {
            (s.base_poly(&vars, 2), s.base_poly(&vars, 2))
        };
        let flat = f2.partial(&x1) == f1.partial(&x2);
        let ext = line_extension(f1, f2, s.base_poly(&vars, 2));
        let split = build_total(&ext).unwrap();
        prop_assert_eq!(split.presentation().check_axioms().passed(), flat);
        prop_assert!(theorem_identities_report(&ext).unwrap().ok());
        let (back, _) = reconstruct_extension(&split).unwrap();
        prop_assert_eq!(back, ext);
    }

    #[test]
    fn hilbert_map_image(seed in any::<u64>(), s in 1usize..=3, l in 1usize..=3) {
        let scene = DualPairScene::new(s, l).unwrap();
        let mut smp = Sampler::new(seed);
        let point: Vec<Rational> = (0..s * l).map(|_| smp.coefficient()).collect();
        let g = scene.hilbert_map(&point).unwrap();
        prop_assert!(g.matrix().is_symmetric() && g.is_psd() && g.rank() <= s.min(l));
        match hilbert_preimage(&g, s) {
            HilbertPreimage::Exact { vectors } => {
                for a in 0..l {
                    for b in 0..l {
                        let dot = vectors[a].iter().zip(&vectors[b]).fold(Rational::from_integer(0.into()), |acc, (x, y)| acc + x * y);
                        prop_assert_eq!(&dot, &g.matrix()[(a, b)]);
                    }
                }
            }
            HilbertPreimage::Numeric { residual, .. } => prop_assert!(residual <= NUMERIC_TOLERANCE),
            HilbertPreimage::Infeasible(w) => prop_assert!(false, "image point rejected: {:?}", w),
        }
    }

    #[test]
    fn momentum_lands_in_sp(seed in any::<u64>(), s in 1usize..=3, l in 1usize..=3) {
        let scene = DualPairScene::new(s, l).unwrap();
        let mut smp = Sampler::new(seed);
        let point: Vec<Rational> = (0..2 * s * l).map(|_| smp.coefficient()).collect();
        let m = scene.momentum_matrix(&point).unwrap();
        prop_assert!(is_sp(&m));
        prop_assert!(m.rank() <= s.min(2 * l));
    }
}

#[test]
fn qq_span_is_an_abelian_ideal_for_qp() {
    for s in 1..=3 {
        for l in 1..=3 {
            let scene = DualPairScene::new(s, l).unwrap();
            let invs = scene.invariant_generators();
            let qq: Vec<Poly> = invs.iter().filter(|i| i.kind.to_string() == "QQ").map(|i| i.value.clone()).collect();
            let qp: Vec<Poly> = invs.iter().filter(|i| i.kind.to_string() == "QP").map(|i| i.value.clone()).collect();
            for a in &qq {
                for b in &qq {
                    assert!(scene.bracket(a, b).is_zero());
                }
                for b in &qp {
                    let br = scene.bracket(b, a);
                    assert!(rinehart_core::linalg::express_in_span(&qq, &br).is_some());
                }
            }
        }
    }
}
