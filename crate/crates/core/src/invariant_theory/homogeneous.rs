//! Reductive pairs `g = h ⊕ q` and invariant polynomials on `q`.
//!
//! `H`-invariance is tested infinitesimally: a polynomial on `q` is
//! invariant when every `ad(h)` annihilates it. For connected `H` this is
//! the same condition.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::{monomials_of_degree, Poly, Var};
use crate::Rational;

/// Structure constants `[e_j, e_k] = Σ_i c[j][k][i] e_i` of a
/// finite-dimensional Lie algebra over `ℚ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraConstants {
    names: Vec<String>,
    c: Vec<Vec<Vec<Rational>>>,
}

impl LieAlgebraConstants {
    pub fn new(names: Vec<String>, c: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let n = names.len();
        if c.len() != n || c.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::Dimension(format!("structure constants must be {n}×{n}×{n}")));
        }
        let g = LieAlgebraConstants { names, c };
        for j in 0..n {
            for k in j..n {
                if (0..n).any(|i| g.c[j][k][i] != -&g.c[k][j][i]) {
                    return Err(Error::InvalidLieAlgebra(format!(
                        "[{}, {}] is not antisymmetric",
                        g.names[j], g.names[k]
                    )));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let jac = g.jacobiator(i, j, k);
                    if jac.iter().any(|x| !x.is_zero()) {
                        return Err(Error::InvalidLieAlgebra(format!(
                            "Jacobi fails on ({}, {}, {})",
                            g.names[i], g.names[j], g.names[k]
                        )));
                    }
                }
            }
        }
        Ok(g)
    }

    /// From integer constants given as `[e_j, e_k] = Σ coeff·e_i` for `j < k`.
    pub fn from_brackets(names: &[&str], brackets: &[(usize, usize, &[(usize, i64)])]) -> Result<Self> {
        let n = names.len();
        let mut c = vec![vec![vec![Rational::zero(); n]; n]; n];
        for &(j, k, terms) in brackets {
            for &(i, v) in terms {
                c[j][k][i] += Rational::from_integer(v.into());
                c[k][j][i] -= Rational::from_integer(v.into());
            }
        }
        LieAlgebraConstants::new(names.iter().map(|s| s.to_string()).collect(), c)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn constants(&self) -> &[Vec<Vec<Rational>>] {
        &self.c
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (j, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (slot, c) in out.iter_mut().zip(&self.c[j][k]) {
                    *slot += &ab * c;
                }
            }
        }
        out
    }

    pub fn unit(&self, i: usize) -> Vec<Rational> {
        (0..self.dim())
            .map(|j| if i == j { Rational::one() } else { Rational::zero() })
            .collect()
    }

    fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<Rational> {
        let t1 = self.bracket(&self.unit(i), &self.c[j][k]);
        let t2 = self.bracket(&self.unit(j), &self.c[k][i]);
        let t3 = self.bracket(&self.unit(k), &self.c[i][j]);
        t1.iter().zip(&t2).zip(&t3).map(|((a, b), c)| a + b + c).collect()
    }

    /// `g ⊕ g` with basis `(e_i, 0)` then `(0, e_i)`; names get suffixes.
    pub fn direct_sum_with_self(&self) -> LieAlgebraConstants {
        let n = self.dim();
        let mut c = vec![vec![vec![Rational::zero(); 2 * n]; 2 * n]; 2 * n];
        for j in 0..n {
            for k in 0..n {
                for i in 0..n {
                    c[j][k][i] = self.c[j][k][i].clone();
                    c[n + j][n + k][n + i] = self.c[j][k][i].clone();
                }
            }
        }
        let names = self
            .names
            .iter()
            .map(|s| format!("{s}_L"))
            .chain(self.names.iter().map(|s| format!("{s}_R")))
            .collect();
        LieAlgebraConstants { names, c }
    }

    /// Rewrites the constants in the basis whose `i`-th element has
    /// coordinates `rows[i]` in the current basis.
    pub fn change_basis(&self, names: Vec<String>, rows: &[Vec<Rational>]) -> Result<LieAlgebraConstants> {
        let n = self.dim();
        if names.len() != n || rows.len() != n {
            return Err(Error::Dimension("new basis must have the same size".into()));
        }
        let p = QMatrix::from_rows(rows.to_vec()).transpose();
        let inv = p.inverse().ok_or_else(|| Error::InvalidLieAlgebra("new basis is singular".into()))?;
        let mut c = vec![vec![Vec::new(); n]; n];
        for j in 0..n {
            for k in 0..n {
                c[j][k] = inv.mul_vec(&self.bracket(&rows[j], &rows[k]));
            }
        }
        LieAlgebraConstants::new(names, c)
    }
}

/// `g = h ⊕ q` with `h` and `q` spanned by complementary basis subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductivePair {
    g: LieAlgebraConstants,
    h: Vec<usize>,
    q: Vec<usize>,
}

impl ReductivePair {
    pub fn new(g: LieAlgebraConstants, h: Vec<usize>, q: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; g.dim()];
        for &i in h.iter().chain(&q) {
            if i >= seen.len() || seen[i] {
                return Err(Error::BadSplit);
            }
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::BadSplit);
        }
        for &a in &h {
            for &b in &h {
                let br = g.bracket(&g.unit(a), &g.unit(b));
                if q.iter().any(|&i| !br[i].is_zero()) {
                    return Err(Error::InvalidLieAlgebra(format!(
                        "h is not a subalgebra: [{}, {}]",
                        g.names[a], g.names[b]
                    )));
                }
            }
        }
        Ok(ReductivePair { g, h, q })
    }

    pub fn g(&self) -> &LieAlgebraConstants {
        &self.g
    }

    pub fn h(&self) -> &[usize] {
        &self.h
    }

    pub fn q(&self) -> &[usize] {
        &self.q
    }

    /// `ad(h_a)` followed by projection to `q`, as `dim q × dim q` matrices.
    pub fn h_action_on_q(&self) -> Vec<QMatrix> {
        let g = &self.g;
        self.h
            .iter()
            .map(|&a| {
                let mut m = QMatrix::zeros(self.q.len(), self.q.len());
                for (col, &b) in self.q.iter().enumerate() {
                    let br = g.bracket(&g.unit(a), &g.unit(b));
                    for (row, &c) in self.q.iter().enumerate() {
                        m[(row, col)] = br[c].clone();
                    }
                }
                m
            })
            .collect()
    }

    /// `dim q^H`: common kernel of the action matrices.
    pub fn q_invariant_dim(&self) -> usize {
        let r = self.q.len();
        let blocks = self.h_action_on_q();
        let mut rows = Vec::new();
        for m in &blocks {
            rows.extend(m.to_rows());
        }
        if rows.is_empty() {
            return r;
        }
        r - QMatrix::from_rows(rows).rank()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductiveViolation {
    pub inclusion: &'static str,
    pub pair: (String, String),
    pub bracket: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductiveReport {
    pub h_q_in_q: bool,
    pub q_q_in_h: bool,
    pub violation: Option<ReductiveViolation>,
    pub q_invariant_dim: usize,
}

impl ReductiveReport {
    pub fn reductive(&self) -> bool {
        self.h_q_in_q && self.q_q_in_h
    }
}

pub fn check_reductive(pair: &ReductivePair) -> ReductiveReport {
    let g = &pair.g;
    let mut violation = None;
    let mut scan = |left: &[usize], right: &[usize], forbidden: &[usize], inclusion: &'static str| -> bool {
        for &a in left {
            for &b in right {
                let br = g.bracket(&g.unit(a), &g.unit(b));
                if forbidden.iter().any(|&i| !br[i].is_zero()) {
                    if violation.is_none() {
                        violation = Some(ReductiveViolation {
                            inclusion,
                            pair: (g.names[a].clone(), g.names[b].clone()),
                            bracket: br,
                        });
                    }
                    return false;
                }
            }
        }
        true
    };
    let h_q_in_q = scan(&pair.h, &pair.q, &pair.h, "[h,q] in q");
    let q_q_in_h = scan(&pair.q, &pair.q, &pair.q, "[q,q] in h");
    ReductiveReport {
        h_q_in_q,
        q_q_in_h,
        violation,
        q_invariant_dim: pair.q_invariant_dim(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapRow {
    pub degree: u32,
    /// `dim S^d(q*)^H`.
    pub invariant_dim: usize,
    /// `dim S^d(q^H)`.
    pub from_q_invariants: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub q_invariant_dim: usize,
    pub rows: Vec<GapRow>,
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Compares invariant polynomials on `q` with polynomials in `q^H`, degree
/// by degree up to `degree_bound`.
pub fn homogeneous_invariant_gap(pair: &ReductivePair, degree_bound: u32) -> GapReport {
    let vars: Vec<Var> = pair.q.iter().map(|&i| Var::base(&pair.g.names[i])).collect();
    // X·y_b = −Σ_c A[b][c] y_c on coordinate functions.
    let derivations: Vec<Vec<Poly>> = pair
        .h_action_on_q()
        .iter()
        .map(|a| {
            (0..vars.len())
                .map(|b| {
                    vars.iter()
                        .enumerate()
                        .fold(Poly::zero(), |acc, (c, y)| acc - Poly::var(y).scale(&a[(b, c)]))
                })
                .collect()
        })
        .collect();
    let k = pair.q_invariant_dim();
    let rows = (0..=degree_bound)
        .map(|d| {
            let monos = monomials_of_degree(&vars, d);
            let mut eqs: Vec<Vec<Rational>> = Vec::new();
            for der in &derivations {
                let images: Vec<Poly> = monos
                    .iter()
                    .map(|m| {
                        let p = Poly::term(Rational::one(), m.clone());
                        vars.iter()
                            .zip(der)
                            .fold(Poly::zero(), |acc, (y, dy)| acc + &p.partial(y) * dy)
                    })
                    .collect();
                for target in &monos {
                    eqs.push(images.iter().map(|p| p.coeff(target)).collect());
                }
            }
            let rank = if eqs.is_empty() { 0 } else { QMatrix::from_rows(eqs).rank() };
            let from_q_invariants = if k == 0 {
                usize::from(d == 0)
            } else {
                binomial(k + d as usize - 1, d as usize)
            };
            GapRow {
                degree: d,
                invariant_dim: monos.len() - rank,
                from_q_invariants,
            }
        })
        .collect();
    GapReport {
        q_invariant_dim: k,
        rows,
    }
}
