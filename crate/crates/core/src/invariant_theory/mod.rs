//! Orthogonal invariants of `ℓ` copies of `T*ℝ^s` and the dual pair
//! `O(s) × Sp(ℓ, ℝ)`.
//!
//! The quadratic invariants `q_j·q_k`, `q_j·p_k`, `p_j·p_k` close under the
//! symplectic bracket into a copy of `sp(ℓ, ℝ)`; the momentum matrix
//! realizes the isomorphism, and the Hilbert map sends configurations to
//! their Gram matrices.

mod hilbert;
mod homogeneous;

pub use hilbert::{hilbert_preimage, HilbertPreimage, InfeasibleWitness, SymMatrixQ, NUMERIC_TOLERANCE};
pub use homogeneous::{
    check_reductive, homogeneous_invariant_gap, GapReport, GapRow, LieAlgebraConstants, ReductivePair,
    ReductiveReport, ReductiveViolation,
};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie_rinehart::PoissonAlgebra;
use crate::linalg::{coordinate_matrix, express_in_span, QMatrix};
use crate::poly::{Poly, Var};
use crate::Rational;

/// Caveat attached to the `s = 3, ℓ = 1` scene.
pub const SO3_R3_CAVEAT: &str = "Removing the origin from R^3 changes only the smooth orbit-space statement; \
the polynomial invariants, their brackets and the Hilbert map computed here are those of R^3.";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum InvariantKind {
    QQ,
    QP,
    PP,
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvariantKind::QQ => "QQ",
            InvariantKind::QP => "QP",
            InvariantKind::PP => "PP",
        })
    }
}

/// `Σ_α q_{j,α} q_{k,α}` and its QP, PP analogues; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticInvariant {
    pub kind: InvariantKind,
    pub indices: (usize, usize),
    pub value: Poly,
}

impl QuadraticInvariant {
    pub fn label(&self) -> String {
        format!("{}({},{})", self.kind, self.indices.0, self.indices.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPairScene {
    s: usize,
    l: usize,
    q: Vec<Vec<Var>>,
    p: Vec<Vec<Var>>,
    algebra: PoissonAlgebra,
}

impl DualPairScene {
    pub fn new(s: usize, l: usize) -> Result<Self> {
        if s == 0 || l == 0 {
            return Err(Error::Dimension("s and l must be positive".into()));
        }
        let q: Vec<Vec<Var>> = (1..=l)
            .map(|j| (1..=s).map(|a| Var::base(&format!("q{j}_{a}"))).collect())
            .collect();
        let p: Vec<Vec<Var>> = (1..=l)
            .map(|j| (1..=s).map(|a| Var::fiber(&format!("p{j}_{a}"))).collect())
            .collect();
        let gens: Vec<Var> = q.iter().flatten().chain(p.iter().flatten()).cloned().collect();
        let n = s * l;
        let mut table = vec![vec![Poly::zero(); 2 * n]; 2 * n];
        for i in 0..n {
            table[i][n + i] = Poly::one();
            table[n + i][i] = -Poly::one();
        }
        let algebra = PoissonAlgebra::new(gens, table)?;
        Ok(DualPairScene { s, l, q, p, algebra })
    }

    /// The rotation scene `SO(3) ↷ T*ℝ³`.
    pub fn so3_r3() -> Self {
        DualPairScene::new(3, 1).expect("positive dimensions")
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn algebra(&self) -> &PoissonAlgebra {
        &self.algebra
    }

    /// `q_{j,α}` with 0-based `j`, `α`.
    pub fn q_var(&self, j: usize, a: usize) -> &Var {
        &self.q[j][a]
    }

    pub fn p_var(&self, j: usize, a: usize) -> &Var {
        &self.p[j][a]
    }

    pub fn bracket(&self, f: &Poly, g: &Poly) -> Poly {
        self.algebra.bracket(f, g)
    }

    fn dot(&self, x: &[Var], y: &[Var]) -> Poly {
        x.iter()
            .zip(y)
            .fold(Poly::zero(), |acc, (a, b)| acc + &Poly::var(a) * &Poly::var(b))
    }

    pub fn qq(&self, j: usize, k: usize) -> Poly {
        self.dot(&self.q[j], &self.q[k])
    }

    pub fn qp(&self, j: usize, k: usize) -> Poly {
        self.dot(&self.q[j], &self.p[k])
    }

    pub fn pp(&self, j: usize, k: usize) -> Poly {
        self.dot(&self.p[j], &self.p[k])
    }

    /// QQ (j ≤ k), then QP (all j, k), then PP (j ≤ k).
    pub fn invariant_generators(&self) -> Vec<QuadraticInvariant> {
        let l = self.l;
        let mut out = Vec::with_capacity(l * (2 * l + 1));
        let mut push = |kind, j: usize, k: usize, value| {
            out.push(QuadraticInvariant {
                kind,
                indices: (j + 1, k + 1),
                value,
            })
        };
        for j in 0..l {
            for k in j..l {
                push(InvariantKind::QQ, j, k, self.qq(j, k));
            }
        }
        for j in 0..l {
            for k in 0..l {
                push(InvariantKind::QP, j, k, self.qp(j, k));
            }
        }
        for j in 0..l {
            for k in j..l {
                push(InvariantKind::PP, j, k, self.pp(j, k));
            }
        }
        out
    }

    /// Angular momenta `Σ_j q_{j,α} p_{j,β} − q_{j,β} p_{j,α}`, `α < β`,
    /// generating the infinitesimal `so(s)` action.
    pub fn angular_momenta(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        for a in 0..self.s {
            for b in a + 1..self.s {
                let m = (0..self.l).fold(Poly::zero(), |acc, j| {
                    acc + &Poly::var(&self.q[j][a]) * &Poly::var(&self.p[j][b])
                        - &Poly::var(&self.q[j][b]) * &Poly::var(&self.p[j][a])
                });
                out.push(m);
            }
        }
        out
    }

    /// Pairwise brackets of the invariants expressed in the invariant basis.
    pub fn closure_table(&self) -> Result<ClosureTable> {
        let invariants = self.invariant_generators();
        let basis: Vec<Poly> = invariants.iter().map(|i| i.value.clone()).collect();
        let n = basis.len();
        let mut table = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let br = self.bracket(&basis[a], &basis[b]);
                table[a][b] = express_in_span(&basis, &br)
                    .ok_or_else(|| Error::OutsideSpan(invariants[a].label(), invariants[b].label()))?;
            }
        }
        Ok(ClosureTable { invariants, table })
    }

    /// The momentum matrix `[[B, −C], [D, −Bᵀ]]` with polynomial entries,
    /// `B_jk = q_j·p_k`, `C_jk = q_j·q_k`, `D_jk = p_j·p_k`.
    pub fn symbolic_momentum(&self) -> Vec<Vec<Poly>> {
        let l = self.l;
        let mut m = vec![vec![Poly::zero(); 2 * l]; 2 * l];
        for j in 0..l {
            for k in 0..l {
                m[j][k] = self.qp(j, k);
                m[j][l + k] = -self.qq(j, k);
                m[l + j][k] = self.pp(j, k);
                m[l + j][l + k] = -self.qp(k, j);
            }
        }
        m
    }

    fn point_map(&self, point: &[Rational], with_p: bool) -> Result<alloc::collections::BTreeMap<Var, Rational>> {
        let (s, l) = (self.s, self.l);
        let expected = if with_p { 2 * s * l } else { s * l };
        if point.len() != expected {
            return Err(Error::PointLength {
                expected,
                got: point.len(),
            });
        }
        let mut map = alloc::collections::BTreeMap::new();
        for j in 0..l {
            for a in 0..s {
                if with_p {
                    map.insert(self.q[j][a].clone(), point[2 * s * j + a].clone());
                    map.insert(self.p[j][a].clone(), point[2 * s * j + s + a].clone());
                } else {
                    map.insert(self.q[j][a].clone(), point[s * j + a].clone());
                }
            }
        }
        Ok(map)
    }

    /// Gram matrix `[q_j·q_k]` at a point given as `q_1, …, q_ℓ` blocks.
    pub fn hilbert_map(&self, point: &[Rational]) -> Result<SymMatrixQ> {
        let map = self.point_map(point, false)?;
        let l = self.l;
        let rows = (0..l)
            .map(|j| (0..l).map(|k| eval_const(&self.qq(j, k), &map)).collect())
            .collect();
        SymMatrixQ::new(QMatrix::from_rows(rows))
    }

    /// Momentum matrix at a point given as `q_1, p_1, …, q_ℓ, p_ℓ` blocks.
    pub fn momentum_matrix(&self, point: &[Rational]) -> Result<QMatrix> {
        let map = self.point_map(point, true)?;
        let rows = self
            .symbolic_momentum()
            .iter()
            .map(|r| r.iter().map(|p| eval_const(p, &map)).collect())
            .collect();
        Ok(QMatrix::from_rows(rows))
    }

    /// `⟨μ, X⟩ = ½ tr(μ X)`.
    pub fn pairing(&self, x: &QMatrix) -> Poly {
        let mu = self.symbolic_momentum();
        let n = 2 * self.l;
        let mut out = Poly::zero();
        for i in 0..n {
            for k in 0..n {
                let c = &x[(k, i)];
                if !c.is_zero() {
                    out += mu[i][k].scale(c);
                }
            }
        }
        out.scale(&Rational::new(1.into(), 2.into()))
    }

    /// `{⟨μ,X⟩, ⟨μ,Y⟩} = ⟨μ,[X,Y]⟩` on every pair of standard basis elements.
    pub fn momentum_property_check(&self) -> MomentumReport {
        let basis = sp_basis(self.l);
        let f: Vec<Poly> = basis.iter().map(|(_, x)| self.pairing(x)).collect();
        let mut pairs_checked = 0;
        for a in 0..basis.len() {
            for b in 0..basis.len() {
                pairs_checked += 1;
                let lhs = self.bracket(&f[a], &f[b]);
                let rhs = self.pairing(&basis[a].1.commutator(&basis[b].1));
                if lhs != rhs {
                    return MomentumReport {
                        pairs_checked,
                        failure: Some(MomentumFailure {
                            left: basis[a].0.clone(),
                            right: basis[b].0.clone(),
                            bracket: lhs,
                            expected: rhs,
                        }),
                    };
                }
            }
        }
        MomentumReport {
            pairs_checked,
            failure: None,
        }
    }

    /// Sends the invariant basis to `sp(ℓ, ℝ)` through the momentum pairing
    /// and checks that the closure table maps to matrix commutators.
    pub fn verify_sp_isomorphism(&self) -> Result<SpIsoReport> {
        let closure = self.closure_table()?;
        let basis = sp_basis(self.l);
        let inv: Vec<Poly> = closure.invariants.iter().map(|i| i.value.clone()).collect();
        let n = inv.len();
        // Column b: coordinates of ⟨μ, X_b⟩ in the invariant basis.
        let mut cols = Vec::with_capacity(n);
        for (name, x) in &basis {
            let f = self.pairing(x);
            cols.push(express_in_span(&inv, &f).ok_or_else(|| Error::OutsideSpan(name.clone(), String::from("mu")))?);
        }
        let pm = QMatrix::from_rows((0..n).map(|a| (0..n).map(|b| cols[b][a].clone()).collect()).collect());
        let to_sp = pm
            .inverse()
            .ok_or_else(|| Error::Dimension("momentum pairing does not span the invariants".into()))?;
        let image = |coeffs: &[Rational]| -> QMatrix {
            let v = to_sp.mul_vec(coeffs);
            basis
                .iter()
                .zip(&v)
                .fold(QMatrix::zeros(2 * self.l, 2 * self.l), |acc, ((_, x), c)| acc.add(&x.scale(c)))
        };
        let unit = |a: usize| -> Vec<Rational> {
            (0..n)
                .map(|i| Rational::from_integer(if i == a { 1 } else { 0 }.into()))
                .collect()
        };
        let images: Vec<QMatrix> = (0..n).map(|a| image(&unit(a))).collect();
        let mut failure = None;
        'outer: for a in 0..n {
            for b in 0..n {
                if image(&closure.table[a][b]) != images[a].commutator(&images[b]) {
                    failure = Some((closure.invariants[a].label(), closure.invariants[b].label()));
                    break 'outer;
                }
            }
        }
        let all_sp = images.iter().all(is_sp);
        Ok(SpIsoReport {
            dimension: n,
            expected_dimension: self.l * (2 * self.l + 1),
            images,
            labels: closure.invariants.iter().map(QuadraticInvariant::label).collect(),
            all_in_sp: all_sp,
            failure,
        })
    }

    /// Shows that the subalgebra generated by the QQ and QP invariants misses
    /// every PP invariant, by exact membership in graded components.
    pub fn sal_deficiency_report(&self) -> DeficiencyReport {
        let invs = self.invariant_generators();
        let gens: Vec<Poly> = invs
            .iter()
            .filter(|i| i.kind != InvariantKind::PP)
            .map(|i| i.value.clone())
            .collect();
        // Generators are homogeneous quadratics, so the degree-2 component
        // of the generated subalgebra is their span.
        let component = graded_component(&gens, 1);
        let component_dim = crate::linalg::span_rank(&component);
        let member = |p: &Poly| express_in_span(&component, p).is_some();
        let entries = invs
            .iter()
            .map(|i| MembershipEntry {
                label: i.label(),
                kind: i.kind,
                member: member(&i.value),
            })
            .collect();
        let kinetic = (0..self.l).fold(Poly::zero(), |acc, j| acc + self.pp(j, j));
        let kinetic_member = member(&kinetic);
        let kinetic_sq = kinetic.pow(2);
        let quartic = graded_component(&gens, 2);
        let kinetic_sq_member = express_in_span(&quartic, &kinetic_sq).is_some();
        DeficiencyReport {
            entries,
            component_dim,
            kinetic_energy: kinetic,
            kinetic_member,
            kinetic_squared_member: kinetic_sq_member,
        }
    }
}

fn eval_const(p: &Poly, map: &alloc::collections::BTreeMap<Var, Rational>) -> Rational {
    p.evaluate(map)
        .as_constant()
        .expect("all variables assigned")
}

/// A spanning set of the products of exactly `n` generators.
fn graded_component(gens: &[Poly], n: usize) -> Vec<Poly> {
    let mut out = vec![Poly::one()];
    for _ in 0..n {
        let next: Vec<Poly> = out.iter().flat_map(|p| gens.iter().map(move |g| p * g)).collect();
        let (m, monos) = coordinate_matrix(&next.iter().collect::<Vec<_>>());
        let (_, pivots) = m.rref();
        out = pivots
            .iter()
            .map(|&c| Poly::from_terms(monos.iter().enumerate().map(|(i, mo)| (mo.clone(), m[(i, c)].clone()))))
            .collect();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureTable {
    pub invariants: Vec<QuadraticInvariant>,
    /// `table[a][b]`: coordinates of `{I_a, I_b}` over the invariants.
    pub table: Vec<Vec<Vec<Rational>>>,
}

impl ClosureTable {
    pub fn dim(&self) -> usize {
        self.invariants.len()
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b].iter().zip(&self.table[b][a]).all(|(x, y)| *x == -y)))
    }

    pub fn satisfies_jacobi(&self) -> bool {
        let n = self.dim();
        let br = |x: &[Rational], y: &[Rational]| -> Vec<Rational> {
            let mut out = vec![Rational::from_integer(0.into()); n];
            for (a, xa) in x.iter().enumerate() {
                if xa.is_zero() {
                    continue;
                }
                for (b, yb) in y.iter().enumerate() {
                    if yb.is_zero() {
                        continue;
                    }
                    for (slot, c) in out.iter_mut().zip(&self.table[a][b]) {
                        *slot += xa * yb * c;
                    }
                }
            }
            out
        };
        let unit = |a: usize| -> Vec<Rational> {
            (0..n)
                .map(|i| Rational::from_integer(if i == a { 1 } else { 0 }.into()))
                .collect()
        };
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let t1 = br(&unit(a), &self.table[b][c]);
                    let t2 = br(&unit(b), &self.table[c][a]);
                    let t3 = br(&unit(c), &self.table[a][b]);
                    if t1.iter().zip(&t2).zip(&t3).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Standard basis of `sp(ℓ, ℝ)`: `[[E_jk, 0], [0, −E_kj]]`, then
/// `[[0, S_jk], [0, 0]]` and `[[0, 0], [S_jk, 0]]` for `j ≤ k`, where
/// `S_jk = E_jk + E_kj` off the diagonal and `S_jj = E_jj`.
pub fn sp_basis(l: usize) -> Vec<(String, QMatrix)> {
    let one = Rational::from_integer(1.into());
    let mut out = Vec::new();
    for j in 0..l {
        for k in 0..l {
            let mut m = QMatrix::zeros(2 * l, 2 * l);
            m[(j, k)] = one.clone();
            m[(l + k, l + j)] = -one.clone();
            out.push((format!("A({},{})", j + 1, k + 1), m));
        }
    }
    for (tag, upper) in [("B", true), ("C", false)] {
        for j in 0..l {
            for k in j..l {
                let mut m = QMatrix::zeros(2 * l, 2 * l);
                let (r, c) = if upper { (0, l) } else { (l, 0) };
                m[(r + j, c + k)] = one.clone();
                m[(r + k, c + j)] = one.clone();
                out.push((format!("{tag}({},{})", j + 1, k + 1), m));
            }
        }
    }
    out
}

/// `J = [[0, I], [−I, 0]]`.
pub fn standard_j(l: usize) -> QMatrix {
    let mut j = QMatrix::zeros(2 * l, 2 * l);
    for i in 0..l {
        j[(i, l + i)] = Rational::from_integer(1.into());
        j[(l + i, i)] = Rational::from_integer((-1).into());
    }
    j
}

/// `M ∈ sp(ℓ)` iff `M J` is symmetric.
pub fn is_sp(m: &QMatrix) -> bool {
    m.rows() == m.cols() && m.rows() % 2 == 0 && m.mul(&standard_j(m.rows() / 2)).is_symmetric()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentumFailure {
    pub left: String,
    pub right: String,
    pub bracket: Poly,
    pub expected: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentumReport {
    pub pairs_checked: usize,
    pub failure: Option<MomentumFailure>,
}

impl MomentumReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpIsoReport {
    pub dimension: usize,
    pub expected_dimension: usize,
    /// Image of each invariant in `sp(ℓ, ℝ)`.
    pub images: Vec<QMatrix>,
    pub labels: Vec<String>,
    pub all_in_sp: bool,
    pub failure: Option<(String, String)>,
}

impl SpIsoReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none() && self.all_in_sp && self.dimension == self.expected_dimension
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipEntry {
    pub label: String,
    pub kind: InvariantKind,
    pub member: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeficiencyReport {
    pub entries: Vec<MembershipEntry>,
    /// Dimension of the degree-2 component of the generated subalgebra.
    pub component_dim: usize,
    pub kinetic_energy: Poly,
    pub kinetic_member: bool,
    pub kinetic_squared_member: bool,
}

impl DeficiencyReport {
    /// True when exactly the PP invariants are missing.
    pub fn certified(&self) -> bool {
        self.entries.iter().all(|e| e.member == (e.kind != InvariantKind::PP)) && !self.kinetic_member
    }
}

#[cfg(test)]
mod tests;
