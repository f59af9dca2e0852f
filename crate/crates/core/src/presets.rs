//! Named examples: valid presentations, seeded faults, extension data,
//! Poisson sources and reductive pairs.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::extensions::{build_total, ExtensionData, SplitPresentation, Tensor3};
use crate::invariant_theory::{LieAlgebraConstants, ReductivePair};
use crate::lie_rinehart::{LieRinehartPresentation, PoissonAlgebra};
use crate::poly::{Poly, Var};
use crate::Rational;

fn bases(names: &[&str]) -> Vec<Var> {
    names.iter().map(|n| Var::base(n)).collect()
}

fn fibers(names: &[&str]) -> Vec<Var> {
    names.iter().map(|n| Var::fiber(n)).collect()
}

fn zeros3(a: usize, b: usize, c: usize) -> Tensor3 {
    vec![vec![vec![Poly::zero(); c]; b]; a]
}

/// Levi-Civita symbol on `0..3`.
pub fn epsilon(i: usize, j: usize, k: usize) -> i64 {
    if i == j || j == k || i == k {
        0
    } else if (i, j, k) == (0, 1, 2) || (i, j, k) == (1, 2, 0) || (i, j, k) == (2, 0, 1) {
        1
    } else {
        -1
    }
}

fn so3_tensor() -> Tensor3 {
    (0..3)
        .map(|j| (0..3).map(|k| (0..3).map(|i| Poly::int(epsilon(j, k, i))).collect()).collect())
        .collect()
}

/// `A = ℚ[x]`, `L = A·e` with `ρ(e) = ∂/∂x`.
pub fn vect_model() -> LieRinehartPresentation {
    LieRinehartPresentation::new(bases(&["x"]), fibers(&["e"]), vec![vec![Poly::one()]], zeros3(1, 1, 1))
        .expect("valid preset")
}

/// `A = ℚ[x, y]`, `L = A·e` with `ρ(e) = y∂/∂x − x∂/∂y`.
pub fn rotation_field() -> LieRinehartPresentation {
    let (x, y) = (Poly::var(&Var::base("x")), Poly::var(&Var::base("y")));
    LieRinehartPresentation::new(bases(&["x", "y"]), fibers(&["e"]), vec![vec![y, -x]], zeros3(1, 1, 1))
        .expect("valid preset")
}

/// `so(3)` over `ℚ`: `[e_i, e_j] = ε_ijk e_k`.
pub fn so3() -> LieRinehartPresentation {
    LieRinehartPresentation::new(vec![], fibers(&["e1", "e2", "e3"]), vec![vec![]; 3], so3_tensor())
        .expect("valid preset")
}

/// `so(3) × ℚ` with a central generator `f`.
pub fn so3_times_line() -> LieRinehartPresentation {
    let mut c = zeros3(4, 4, 4);
    for j in 0..3 {
        for k in 0..3 {
            for i in 0..3 {
                c[j][k][i] = Poly::int(epsilon(j, k, i));
            }
        }
    }
    LieRinehartPresentation::new(vec![], fibers(&["e1", "e2", "e3", "f"]), vec![vec![]; 4], c)
        .expect("valid preset")
}

/// `so(3)` with `[e1, e2] = e3 + e1`: Jacobi fails on `(e1, e2, e3)`.
pub fn so3_corrupted() -> LieRinehartPresentation {
    let mut c = so3_tensor();
    c[0][1][0] = Poly::one();
    c[1][0][0] = -Poly::one();
    LieRinehartPresentation::new(vec![], fibers(&["e1", "e2", "e3"]), vec![vec![]; 3], c).expect("well-formed")
}

/// `ρ(e1) = ∂/∂x`, `ρ(e2) = x∂/∂x`, `[e1, e2] = 0`: the anchor is not a Lie
/// morphism.
pub fn vect_model_mutant() -> LieRinehartPresentation {
    let x = Poly::var(&Var::base("x"));
    LieRinehartPresentation::new(
        bases(&["x"]),
        fibers(&["e1", "e2"]),
        vec![vec![Poly::one()], vec![x]],
        zeros3(2, 2, 2),
    )
    .expect("well-formed")
}

/// The abelian algebra of coordinate fields `∂/∂x_i` on `ℚ[x_1..x_n]`.
fn coordinate_fields(n: usize) -> LieRinehartPresentation {
    let base: Vec<Var> = (1..=n).map(|i| Var::base(&alloc::format!("x{i}"))).collect();
    let basis: Vec<Var> = (1..=n).map(|i| Var::fiber(&alloc::format!("e{i}"))).collect();
    let anchor = (0..n)
        .map(|j| (0..n).map(|s| if j == s { Poly::one() } else { Poly::zero() }).collect())
        .collect();
    LieRinehartPresentation::new(base, basis, anchor, zeros3(n, n, n)).expect("valid preset")
}

fn central_line(base: Vec<Var>) -> LieRinehartPresentation {
    let n = base.len();
    LieRinehartPresentation::new(base, fibers(&["c"]), vec![vec![Poly::zero(); n]], zeros3(1, 1, 1))
        .expect("valid preset")
}

/// `0 → A·c → L → span(∂_1, ∂_2) → 0` with `Ω(e1, e2) = c`.
pub fn heisenberg() -> ExtensionData {
    let ld = coordinate_fields(2);
    let lp = central_line(ld.base_vars().to_vec());
    let mut omega = zeros3(2, 2, 1);
    omega[0][1][0] = Poly::one();
    omega[1][0][0] = -Poly::one();
    ExtensionData::new(lp, ld, zeros3(2, 1, 1), omega).expect("valid preset")
}

pub fn heisenberg_total() -> SplitPresentation {
    build_total(&heisenberg()).expect("valid preset")
}

/// Over `ℚ[x1, x2, x3]`, `Ω(e1, e2) = x3·c` and `∇ = 0`. The curvature form
/// `x3 dx1∧dx2` is not closed, so the total fails Jacobi on `(e1, e2, e3)`.
pub fn heisenberg_nonclosed() -> ExtensionData {
    let ld = coordinate_fields(3);
    let lp = central_line(ld.base_vars().to_vec());
    let x3 = Poly::var(&ld.base_vars()[2]);
    let mut omega = zeros3(3, 3, 1);
    omega[0][1][0] = x3.clone();
    omega[1][0][0] = -x3;
    ExtensionData::new(lp, ld, zeros3(3, 1, 1), omega).expect("well-formed")
}

/// Abelian `L′ = A·c` and `L″ = span(∂_1, ∂_2)` with `∇ = 0`, `Ω = 0`.
pub fn abelian_product() -> ExtensionData {
    let ld = coordinate_fields(2);
    let lp = central_line(ld.base_vars().to_vec());
    ExtensionData::new(lp, ld, zeros3(2, 1, 1), zeros3(2, 2, 1)).expect("valid preset")
}

/// `so(3) ⋉ ℚ³` over `ℚ`: `∇_{e_j}(v_k) = ε_jki v_i`, `Ω = 0`.
pub fn so3_semidirect() -> ExtensionData {
    let lp = LieRinehartPresentation::new(vec![], fibers(&["v1", "v2", "v3"]), vec![vec![]; 3], zeros3(3, 3, 3))
        .expect("valid preset");
    ExtensionData::new(lp, so3(), so3_tensor(), zeros3(3, 3, 3)).expect("valid preset")
}

/// Trivial-bundle model of an Atiyah sequence: `A = ℚ[x1, x2]`,
/// `L″ = span(∂_1, ∂_2)`, `L′ = A ⊗ so(3)`, connection form
/// `x1·X3 dx2`. Then `∇_2 = x1·ad X3`, `∇_1 = 0` and `Ω(d1, d2) = X3`.
pub fn atiyah() -> ExtensionData {
    let base = bases(&["x1", "x2"]);
    let x1 = Poly::var(&base[0]);
    let ld = LieRinehartPresentation::new(
        base.clone(),
        fibers(&["d1", "d2"]),
        vec![vec![Poly::one(), Poly::zero()], vec![Poly::zero(), Poly::one()]],
        zeros3(2, 2, 2),
    )
    .expect("valid preset");
    let lp = LieRinehartPresentation::new(base, fibers(&["X1", "X2", "X3"]), vec![vec![Poly::zero(); 2]; 3], so3_tensor())
        .expect("valid preset");
    let mut nabla = zeros3(2, 3, 3);
    for k in 0..3 {
        for i in 0..3 {
            nabla[1][k][i] = x1.scale(&Rational::from_integer(epsilon(2, k, i).into()));
        }
    }
    let mut omega = zeros3(2, 2, 3);
    omega[0][1][2] = Poly::one();
    omega[1][0][2] = -Poly::one();
    ExtensionData::new(lp, ld, nabla, omega).expect("valid preset")
}

/// The three valid presentations used for acceptance.
pub fn valid_presentations() -> Vec<LieRinehartPresentation> {
    vec![vect_model(), so3(), heisenberg_total().presentation().clone()]
}

/// The three seeded faults: a broken Jacobi identity, a non-morphic anchor
/// and a non-closed curvature.
pub fn faulty_presentations() -> Vec<LieRinehartPresentation> {
    vec![
        so3_corrupted(),
        vect_model_mutant(),
        build_total(&heisenberg_nonclosed())
            .expect("well-formed")
            .presentation()
            .clone(),
    ]
}

pub fn extension_presets() -> Vec<ExtensionData> {
    vec![heisenberg(), abelian_product(), so3_semidirect(), atiyah()]
}

/// `ℚ[q, p]` with `{q, p} = 1`.
pub fn symplectic_plane() -> PoissonAlgebra {
    PoissonAlgebra::new(
        bases(&["q", "p"]),
        vec![vec![Poly::zero(), Poly::one()], vec![-Poly::one(), Poly::zero()]],
    )
    .expect("valid preset")
}

fn lie_poisson(extra: bool) -> PoissonAlgebra {
    let gens = bases(&["u1", "u2", "u3"]);
    let mut table: Vec<Vec<Poly>> = (0..3)
        .map(|j| {
            (0..3)
                .map(|k| {
                    (0..3).fold(Poly::zero(), |acc, i| {
                        acc + Poly::var(&gens[i]).scale(&Rational::from_integer(epsilon(j, k, i).into()))
                    })
                })
                .collect()
        })
        .collect();
    if extra {
        table[0][1] += Poly::var(&gens[0]);
        table[1][0] -= Poly::var(&gens[0]);
    }
    PoissonAlgebra::new(gens, table).expect("antisymmetric")
}

/// The Lie-Poisson bracket on `so(3)*`.
pub fn so3_lie_poisson() -> PoissonAlgebra {
    lie_poisson(false)
}

/// `{u1, u2} = u3 + u1`: antisymmetric but not a Poisson bracket.
pub fn corrupted_poisson() -> PoissonAlgebra {
    lie_poisson(true)
}

pub fn so3_constants() -> LieAlgebraConstants {
    LieAlgebraConstants::from_brackets(
        &["X1", "X2", "X3"],
        &[(0, 1, &[(2, 1)]), (1, 2, &[(0, 1)]), (2, 0, &[(1, 1)])],
    )
    .expect("valid preset")
}

/// `so(3) = so(2) ⊕ ℝ²` with `h = span(X3)`.
pub fn so3_so2() -> ReductivePair {
    ReductivePair::new(so3_constants(), vec![2], vec![0, 1]).expect("valid preset")
}

/// `so(3) ⊕ so(3)` with the diagonal `h_a = (X_a, X_a)` and the
/// antidiagonal `q_a = (X_a, −X_a)`.
pub fn gxg_so3() -> ReductivePair {
    let gg = so3_constants().direct_sum_with_self();
    let r = |v: i64| Rational::from_integer(v.into());
    let mut rows = Vec::new();
    for sign in [1, -1] {
        for a in 0..3 {
            let mut v = vec![r(0); 6];
            v[a] = r(1);
            v[3 + a] = r(sign);
            rows.push(v);
        }
    }
    let names = ["h1", "h2", "h3", "q1", "q2", "q3"].iter().map(|s| s.to_string()).collect();
    let g = gg.change_basis(names, &rows).expect("invertible");
    ReductivePair::new(g, vec![0, 1, 2], vec![3, 4, 5]).expect("valid preset")
}

/// Upper-triangular `2×2` matrices with `h = span(E11)` and the complement
/// `span(E12, E22)`, which is not closed into `h`.
pub fn upper_triangular_pair() -> ReductivePair {
    let g = LieAlgebraConstants::from_brackets(&["E11", "E12", "E22"], &[(0, 1, &[(1, 1)]), (1, 2, &[(1, 1)])])
        .expect("valid preset");
    ReductivePair::new(g, vec![0], vec![1, 2]).expect("h is a subalgebra")
}
