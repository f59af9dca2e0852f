use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;
use rand::Rng;

use super::*;
use crate::sampling::Sampler;

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn coords(v: &[Rational]) -> Vec<Rational> {
    v.to_vec()
}

#[test]
fn generator_counts() {
    for l in 1..=3 {
        let scene = DualPairScene::new(2, l).unwrap();
        assert_eq!(scene.invariant_generators().len(), l * (2 * l + 1));
        assert_eq!(scene.algebra().generators().len(), 2 * 2 * l);
    }
    let one = DualPairScene::new(3, 1).unwrap();
    let labels: Vec<_> = one.invariant_generators().iter().map(QuadraticInvariant::label).collect();
    assert_eq!(labels, ["QQ(1,1)", "QP(1,1)", "PP(1,1)"]);
    assert!(DualPairScene::new(0, 1).is_err());
}

#[test]
fn invariants_commute_with_angular_momenta() {
    for s in 1..=3 {
        for l in 1..=3 {
            let scene = DualPairScene::new(s, l).unwrap();
            let moms = scene.angular_momenta();
            assert_eq!(moms.len(), s * (s - 1) / 2);
            for inv in scene.invariant_generators() {
                for m in &moms {
                    assert!(scene.bracket(&inv.value, m).is_zero(), "{} s={s} l={l}", inv.label());
                }
            }
        }
    }
}

/// The reflection `x_1 ↦ −x_1` on every copy of `ℝ^s`, applied to both
/// `q` and `p`, fixes every quadratic invariant.
#[test]
fn invariants_fixed_by_reflection() {
    for s in 1..=3 {
        for l in 1..=3 {
            let scene = DualPairScene::new(s, l).unwrap();
            let mut map = BTreeMap::new();
            for j in 0..l {
                map.insert(scene.q_var(j, 0).clone(), -Poly::var(scene.q_var(j, 0)));
                map.insert(scene.p_var(j, 0).clone(), -Poly::var(scene.p_var(j, 0)));
            }
            for inv in scene.invariant_generators() {
                assert_eq!(inv.value.substitute(&map), inv.value);
            }
        }
    }
}

#[test]
fn closure_examples_l1() {
    let scene = DualPairScene::new(1, 1).unwrap();
    let (qq, qp, pp) = (scene.qq(0, 0), scene.qp(0, 0), scene.pp(0, 0));
    assert_eq!(scene.bracket(&qq, &pp), qp.scale(&r(4)));
    assert_eq!(scene.bracket(&qp, &qq), qq.scale(&r(-2)));
    assert_eq!(scene.bracket(&qp, &pp), pp.scale(&r(2)));
    let table = scene.closure_table().unwrap();
    // order QQ, QP, PP
    assert_eq!(table.table[0][2], vec![r(0), r(4), r(0)]);
    assert_eq!(table.table[1][0], vec![r(-2), r(0), r(0)]);
    assert_eq!(table.table[1][2], vec![r(0), r(0), r(2)]);
}

/// Oracle for the bracket of two quadratic invariants in `s` dimensions:
/// the same values for every `s`, derived from `{q_j,α, p_k,β} = δ δ`.
#[test]
fn closure_independent_of_s() {
    for l in 1..=2 {
        let base = DualPairScene::new(1, l).unwrap().closure_table().unwrap();
        for s in 2..=3 {
            let other = DualPairScene::new(s, l).unwrap().closure_table().unwrap();
            assert_eq!(base.table, other.table);
        }
    }
}

#[test]
fn closure_table_is_a_lie_algebra() {
    for l in 1..=3 {
        let scene = DualPairScene::new(2, l).unwrap();
        let table = scene.closure_table().unwrap();
        assert_eq!(table.dim(), l * (2 * l + 1));
        assert!(table.is_antisymmetric());
        assert!(table.satisfies_jacobi());
        let invs = scene.invariant_generators();
        for (a, ia) in invs.iter().enumerate() {
            for (b, ib) in invs.iter().enumerate() {
                let c = &table.table[a][b];
                if ia.kind == InvariantKind::QQ && ib.kind == InvariantKind::QQ {
                    assert!(c.iter().all(Zero::is_zero));
                }
                if ia.kind == InvariantKind::QP && ib.kind == InvariantKind::QQ {
                    let support_ok = invs.iter().zip(c).all(|(i, x)| x.is_zero() || i.kind == InvariantKind::QQ);
                    assert!(support_ok);
                }
            }
        }
    }
}

#[test]
fn sp_isomorphism() {
    for l in 1..=3 {
        for s in 1..=3 {
            let rep = DualPairScene::new(s, l).unwrap().verify_sp_isomorphism().unwrap();
            assert!(rep.ok(), "l={l} s={s}: {:?}", rep.failure);
            assert_eq!(rep.dimension, [3, 10, 21][l - 1]);
        }
    }
}

#[test]
fn sp_basis_is_in_sp() {
    for l in 1..=3 {
        let basis = sp_basis(l);
        assert_eq!(basis.len(), l * (2 * l + 1));
        assert!(basis.iter().all(|(_, m)| is_sp(m)));
        let flat: Vec<Vec<Rational>> = basis
            .iter()
            .map(|(_, m)| m.to_rows().into_iter().flatten().collect())
            .collect();
        assert_eq!(QMatrix::from_rows(flat).rank(), basis.len());
    }
}

#[test]
fn momentum_examples() {
    let scene = DualPairScene::new(1, 1).unwrap();
    let m = scene.momentum_matrix(&[r(1), r(2)]).unwrap();
    assert_eq!(m, QMatrix::from_i64(&[&[2, -1], &[4, -2]]));
    let z = DualPairScene::new(2, 2).unwrap();
    assert!(z.momentum_matrix(&vec![r(0); 8]).unwrap().is_zero());
    assert_eq!(
        z.momentum_matrix(&[r(1)]),
        Err(Error::PointLength { expected: 8, got: 1 })
    );
}

#[test]
fn momentum_lands_in_sp_with_bounded_rank() {
    let mut sampler = Sampler::new(17);
    for s in 1..=3 {
        for l in 1..=3 {
            let scene = DualPairScene::new(s, l).unwrap();
            for _ in 0..20 {
                let pt: Vec<Rational> = (0..2 * s * l).map(|_| r(sampler.small_int(4))).collect();
                let m = scene.momentum_matrix(&pt).unwrap();
                assert!(is_sp(&m));
                assert!(m.rank() <= s.min(2 * l));
            }
        }
    }
    // One copy in the plane: the momentum matrix has full rank 2 > min(s, ℓ).
    let scene = DualPairScene::new(2, 1).unwrap();
    let m = scene.momentum_matrix(&[r(1), r(0), r(0), r(1)]).unwrap();
    assert_eq!(m, QMatrix::from_i64(&[&[0, -1], &[1, 0]]));
    assert_eq!(m.rank(), 2);
}

#[test]
fn momentum_property() {
    for l in 1..=2 {
        for s in 1..=2 {
            let rep = DualPairScene::new(s, l).unwrap().momentum_property_check();
            assert!(rep.ok(), "{:?}", rep.failure);
            assert_eq!(rep.pairs_checked, (l * (2 * l + 1)).pow(2));
        }
    }
    // a commuting nilpotent pair
    let scene = DualPairScene::new(1, 2).unwrap();
    let basis = sp_basis(2);
    let (b11, b22) = (&basis[4].1, &basis[6].1);
    assert!(b11.commutator(b22).is_zero());
    assert!(scene.bracket(&scene.pairing(b11), &scene.pairing(b22)).is_zero());
}

#[test]
fn hilbert_map_examples() {
    let scene = DualPairScene::new(2, 2).unwrap();
    let g = scene.hilbert_map(&[r(1), r(0), r(0), r(1)]).unwrap();
    assert_eq!(g.matrix(), &QMatrix::identity(2));
    let scene = DualPairScene::new(1, 2).unwrap();
    let g = scene.hilbert_map(&[r(1), r(2)]).unwrap();
    assert_eq!(g.matrix(), &QMatrix::from_i64(&[&[1, 2], &[2, 4]]));
    assert_eq!(g.rank(), 1);
}

#[test]
fn hilbert_roundtrip() {
    let mut sampler = Sampler::new(29);
    for s in 1..=3 {
        for l in 1..=3 {
            let scene = DualPairScene::new(s, l).unwrap();
            for _ in 0..10 {
                let pt: Vec<Rational> = (0..s * l).map(|_| r(sampler.rng().gen_range(-3..=3))).collect();
                let g = scene.hilbert_map(&pt).unwrap();
                assert!(g.is_psd());
                assert!(g.rank() <= s.min(l));
                match hilbert_preimage(&g, s) {
                    HilbertPreimage::Exact { vectors } => {
                        let flat: Vec<Rational> = vectors.iter().flat_map(|v| coords(v)).collect();
                        assert_eq!(scene.hilbert_map(&flat).unwrap(), g);
                    }
                    HilbertPreimage::Numeric { residual, .. } => assert!(residual <= NUMERIC_TOLERANCE),
                    HilbertPreimage::Infeasible(w) => panic!("{w:?}"),
                }
            }
        }
    }
}

#[test]
fn deficiency() {
    let one = DualPairScene::new(1, 1).unwrap().sal_deficiency_report();
    assert!(one.certified());
    assert_eq!(one.component_dim, 2);
    let pp = one.entries.iter().find(|e| e.kind == InvariantKind::PP).unwrap();
    assert!(!pp.member);
    assert!(one.entries.iter().filter(|e| e.kind == InvariantKind::QP).all(|e| e.member));
    assert!(!one.kinetic_squared_member);

    let two = DualPairScene::new(3, 2).unwrap().sal_deficiency_report();
    assert!(two.certified());
    let missing: Vec<_> = two.entries.iter().filter(|e| !e.member).map(|e| e.label.clone()).collect();
    assert_eq!(missing, ["PP(1,1)", "PP(1,2)", "PP(2,2)"]);
    assert_eq!(two.kinetic_energy, DualPairScene::new(3, 2).unwrap().pp(0, 0) + DualPairScene::new(3, 2).unwrap().pp(1, 1));
}

#[test]
fn so3_r3_scene() {
    let scene = DualPairScene::so3_r3();
    assert_eq!((scene.s(), scene.l()), (3, 1));
    assert_eq!(scene.angular_momenta().len(), 3);
    assert!(SO3_R3_CAVEAT.contains("origin"));
    assert!(scene.verify_sp_isomorphism().unwrap().ok());
}
