use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{cap, cap_sign, fundamental_cycle, Chain, Cochain, ShiftedChain};
use crate::complex::StratifiedComplex;
use crate::error::{Error, Result};
use crate::linalg::{Ring, Smith, SparseMatrix, SparseVec, Track};

/// `P(x) = (-1)^{m|x|} S^{-m}(x ∩ Γ)`.
pub fn pd(cx: &StratifiedComplex, x: &Cochain) -> Result<ShiftedChain> {
    let gamma = fundamental_cycle(cx)?;
    let m = cx.dim() as i64;
    let c = cap(x, &gamma);
    let c = if (m * x.degree() as i64) % 2 == 1 { c.neg() } else { c };
    Ok(ShiftedChain::new(-m, c))
}

/// A cocycle `x` and a chain `b` with `x∩Γ = (-1)^{mp} C + ∂b`,
/// i.e. `pd(x) - S^{-m}C` is a shifted boundary.
#[derive(Clone, Debug)]
pub struct DualSolution {
    pub cocycle: Cochain<BigRational>,
    pub bounding: Chain<BigRational>,
    pub ring: Ring,
}

impl DualSolution {
    pub fn integral(&self) -> Option<Cochain<BigInt>> {
        self.cocycle.to_integer()
    }
}

/// [`solve_dual_in`] over the rationals.
pub fn solve_dual(cx: &StratifiedComplex, c: &Chain) -> Result<DualSolution> {
    solve_dual_in(cx, c, Ring::Rationals)
}

/// Finds a cocycle dual to the cycle `c` by one exact linear solve in the
/// unknowns `(x, b)`: `δx = 0` and `x∩Γ - ∂b = (-1)^{mp} c`.
pub fn solve_dual_in(cx: &StratifiedComplex, c: &Chain, ring: Ring) -> Result<DualSolution> {
    cx.require_valid()?;
    let m = cx.dim();
    let q = usize::try_from(c.degree()).ok().filter(|&q| q <= m).ok_or_else(|| Error::DualizationFailed {
        coefficients: ring_name(ring),
        reason: format!("degree {} outside 0..={m}", c.degree()),
    })?;
    if !c.boundary().is_zero() {
        return Err(Error::Invalid("solve_dual needs a cycle".into()));
    }
    let p = m - q;
    let (np, nq) = (cx.count(p), cx.count(q));
    let n_delta = if p < m { cx.count(p + 1) } else { 0 };
    let n_b = if q < m { cx.count(q + 1) } else { 0 };

    let mut mat = SparseMatrix::zeros(n_delta + nq, np + n_b);
    // δx = 0
    if p < m {
        for (j, sigma) in cx.simplices(p + 1).iter().enumerate() {
            for (i, f) in sigma.facets() {
                let col = cx.index_of(&f).expect("face closure");
                mat.add_to(j, col, if i % 2 == 0 { BigInt::one() } else { -BigInt::one() });
            }
        }
    }
    // x∩Γ
    let s = if cap_sign(p, q) { -BigInt::one() } else { BigInt::one() };
    for (sigma, o) in fundamental_cycle(cx)?.iter() {
        let back = cx.index_of(&sigma.slice(q, m)).expect("face closure");
        let front = cx.index_of(&sigma.slice(0, q)).expect("face closure");
        mat.add_to(n_delta + front, back, &s * o);
    }
    // -∂b
    if q < m {
        for (j, beta) in cx.simplices(q + 1).iter().enumerate() {
            for (i, f) in beta.facets() {
                let row = cx.index_of(&f).expect("face closure");
                mat.add_to(n_delta + row, np + j, if i % 2 == 0 { -BigInt::one() } else { BigInt::one() });
            }
        }
    }
    let flip = (m * p) % 2 == 1;
    let mut rhs = SparseVec::new();
    for (sigma, x) in c.iter() {
        let i = cx.index_of(sigma).ok_or_else(|| Error::UnknownSimplex(sigma.vertices().to_vec()))?;
        rhs.insert(n_delta + i, if flip { -x.clone() } else { x.clone() });
    }

    let smith = Smith::compute(&mat, Track::SOLVE);
    let sol: Vec<BigRational> = match ring {
        Ring::Integers => smith
            .solve_int(&rhs)
            .map(|v| crate::linalg::densify(&v, np + n_b).into_iter().map(BigRational::from_integer).collect()),
        Ring::Rationals => smith.solve_rat(&rhs),
    }
    .ok_or_else(|| Error::DualizationFailed {
        coefficients: ring_name(ring),
        reason: format!("no {p}-cocycle caps to the class of the given {q}-cycle"),
    })?;

    let cocycle = Cochain::from_values(
        p,
        cx.simplices(p).iter().cloned().zip(sol[..np].iter().cloned()).filter(|(_, v)| !v.is_zero()),
    )?;
    let mut bounding = Chain::zero(q as i64 + 1);
    if q < m {
        for (beta, v) in cx.simplices(q + 1).iter().zip(&sol[np..]) {
            bounding.add_term(beta.clone(), v.clone());
        }
    }
    Ok(DualSolution { cocycle, bounding, ring })
}

fn ring_name(ring: Ring) -> &'static str {
    match ring {
        Ring::Integers => "integers",
        Ring::Rationals => "rationals",
    }
}
