//! Gram matrices and their factorizations.
//!
//! A symmetric matrix is the Gram matrix of `ℓ` vectors in `ℝ^s` iff it is
//! positive semidefinite of rank at most `s`. Both conditions are decided
//! exactly by symmetric elimination with diagonal pivoting over `ℚ`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::Rational;

/// Largest entrywise residual accepted for a floating factorization.
pub const NUMERIC_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrixQ {
    m: QMatrix,
}

impl SymMatrixQ {
    pub fn new(m: QMatrix) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(SymMatrixQ { m })
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn rank(&self) -> usize {
        self.m.rank()
    }

    pub fn is_psd(&self) -> bool {
        matches!(ldl(&self.m), Ok(_))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum InfeasibleWitness {
    /// `vᵀ M v = value < 0`.
    NegativeDirection { vector: Vec<Rational>, value: Rational },
    RankExcess { rank: usize, s: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub enum HilbertPreimage {
    Exact { vectors: Vec<Vec<Rational>> },
    Numeric { vectors: Vec<Vec<f64>>, residual: f64 },
    Infeasible(InfeasibleWitness),
}

impl HilbertPreimage {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, HilbertPreimage::Infeasible(_))
    }
}

struct Pivot {
    d: Rational,
    column: Vec<Rational>,
}

/// `M = Σ d_t l_t l_tᵀ` with all `d_t > 0`, or a direction of negativity.
fn ldl(m: &QMatrix) -> core::result::Result<Vec<Pivot>, InfeasibleWitness> {
    let n = m.rows();
    let mut s = m.clone();
    let mut done = vec![false; n];
    let mut pivots = Vec::new();
    loop {
        let rest: Vec<usize> = (0..n).filter(|&i| !done[i]).collect();
        if let Some(&i) = rest.iter().find(|&&i| s[(i, i)].is_negative()) {
            let mut w = vec![Rational::zero(); n];
            w[i] = Rational::one();
            return Err(lift(m, &done, w));
        }
        let Some(&k) = rest.iter().find(|&&i| s[(i, i)].is_positive()) else {
            for (a, &i) in rest.iter().enumerate() {
                for &j in &rest[a + 1..] {
                    if !s[(i, j)].is_zero() {
                        // diagonal is zero here, so (t e_i + e_j)ᵀ S (t e_i + e_j) = 2 t s_ij
                        let mut w = vec![Rational::zero(); n];
                        w[i] = -(&s[(j, j)] + Rational::one()) / (Rational::from_integer(2.into()) * &s[(i, j)]);
                        w[j] = Rational::one();
                        return Err(lift(m, &done, w));
                    }
                }
            }
            return Ok(pivots);
        };
        let d = s[(k, k)].clone();
        let column: Vec<Rational> = (0..n).map(|i| &s[(i, k)] / &d).collect();
        for i in 0..n {
            if column[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if column[j].is_zero() {
                    continue;
                }
                let v = &d * &column[i] * &column[j];
                s[(i, j)] -= v;
            }
        }
        done[k] = true;
        pivots.push(Pivot { d, column });
    }
}

/// Extends `w` (supported off the eliminated indices) by
/// `v_P = −M_PP⁻¹ M_PR w`, so that `vᵀ M v` equals the Schur-complement
/// form evaluated at `w`.
fn lift(m: &QMatrix, eliminated: &[bool], mut w: Vec<Rational>) -> InfeasibleWitness {
    let p: Vec<usize> = (0..m.rows()).filter(|&i| eliminated[i]).collect();
    if !p.is_empty() {
        let mpp = QMatrix::from_rows(p.iter().map(|&i| p.iter().map(|&j| m[(i, j)].clone()).collect()).collect());
        let rhs: Vec<Rational> = p
            .iter()
            .map(|&i| {
                -(0..m.rows())
                    .filter(|&j| !eliminated[j])
                    .fold(Rational::zero(), |acc, j| acc + &m[(i, j)] * &w[j])
            })
            .collect();
        let x = mpp.solve(&rhs).expect("eliminated block is positive definite");
        for (&i, xi) in p.iter().zip(x) {
            w[i] = xi;
        }
    }
    let mv = m.mul_vec(&w);
    let value = w.iter().zip(&mv).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
    InfeasibleWitness::NegativeDirection { vector: w, value }
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

/// Vectors `q_1, …, q_ℓ ∈ ℝ^s` with Gram matrix `m`, or a certificate that
/// none exist.
pub fn hilbert_preimage(m: &SymMatrixQ, s: usize) -> HilbertPreimage {
    let pivots = match ldl(&m.m) {
        Ok(p) => p,
        Err(w) => return HilbertPreimage::Infeasible(w),
    };
    if pivots.len() > s {
        return HilbertPreimage::Infeasible(InfeasibleWitness::RankExcess { rank: pivots.len(), s });
    }
    let l = m.dim();
    let roots: Option<Vec<Rational>> = pivots.iter().map(|p| rational_sqrt(&p.d)).collect();
    if let Some(roots) = roots {
        let vectors = (0..l)
            .map(|j| {
                let mut v: Vec<Rational> = pivots.iter().zip(&roots).map(|(p, r)| r * &p.column[j]).collect();
                v.resize(s, Rational::zero());
                v
            })
            .collect();
        return HilbertPreimage::Exact { vectors };
    }
    let f = |x: &Rational| x.to_f64().expect("finite");
    let vectors: Vec<Vec<f64>> = (0..l)
        .map(|j| {
            let mut v: Vec<f64> = pivots.iter().map(|p| libm::sqrt(f(&p.d)) * f(&p.column[j])).collect();
            v.resize(s, 0.0);
            v
        })
        .collect();
    let mut residual: f64 = 0.0;
    for j in 0..l {
        for k in 0..l {
            let g: f64 = vectors[j].iter().zip(&vectors[k]).map(|(a, b)| a * b).sum();
            residual = residual.max(libm::fabs(g - f(&m.m[(j, k)])));
        }
    }
    HilbertPreimage::Numeric { vectors, residual }
}
