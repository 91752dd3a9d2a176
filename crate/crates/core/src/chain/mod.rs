//! Simplicial chains and cochains with exact coefficients.
//!
//! Orientation is always relative to the sorted vertex order: the simplex
//! `[v0,...,vd]` with `v0 < ... < vd` is the positive generator.

mod duality;
mod literal;
mod tensor;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::complex::{Simplex, StratifiedComplex};
use crate::error::{Error, Result};

pub use duality::{pd, solve_dual, solve_dual_in, DualSolution};
pub use literal::{parse_chain, parse_tensor, LiteralError};
pub use tensor::{bar_epsilon, cross, cross_simplices, e2, theta, theta_inverse, ShiftedTensor, TensorChain};

/// Exact coefficient ring: the integers or the rationals.
pub trait Coeff: Clone + fmt::Debug + fmt::Display + Ord + Signed + Send + Sync {
    fn from_bigint(x: BigInt) -> Self;
}

impl Coeff for BigInt {
    fn from_bigint(x: BigInt) -> Self {
        x
    }
}

impl Coeff for BigRational {
    fn from_bigint(x: BigInt) -> Self {
        BigRational::from_integer(x)
    }
}

pub(crate) fn sign<R: Coeff>(negative: bool) -> R {
    if negative {
        -R::one()
    } else {
        R::one()
    }
}

fn add_term<R: Coeff>(map: &mut BTreeMap<Simplex, R>, s: Simplex, x: R) {
    if x.is_zero() {
        return;
    }
    match map.entry(s) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(x);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let v = e.get().clone() + x;
            if v.is_zero() {
                e.remove();
            } else {
                e.insert(v);
            }
        }
    }
}

/// A homogeneous simplicial chain in canonical form (no zero coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain<R = BigInt> {
    degree: i64,
    terms: BTreeMap<Simplex, R>,
}

impl<R: Coeff> Chain<R> {
    pub fn zero(degree: i64) -> Self {
        Chain { degree, terms: BTreeMap::new() }
    }

    pub fn simplex(s: Simplex) -> Self {
        let degree = s.dim() as i64;
        Chain { degree, terms: BTreeMap::from([(s, R::one())]) }
    }

    /// Merges repeated simplices and drops zeros.
    pub fn from_terms(degree: i64, terms: impl IntoIterator<Item = (Simplex, R)>) -> Result<Self> {
        let mut c = Chain::zero(degree);
        for (s, x) in terms {
            if s.dim() as i64 != degree {
                return Err(Error::Invalid(format!("simplex {s} in a chain of degree {degree}")));
            }
            add_term(&mut c.terms, s, x);
        }
        Ok(c)
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Simplex, R> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &R)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, s: &Simplex) -> R {
        self.terms.get(s).cloned().unwrap_or_else(R::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Simplex> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, s: Simplex, x: R) {
        debug_assert_eq!(s.dim() as i64, self.degree);
        add_term(&mut self.terms, s, x);
    }

    pub fn add(&self, other: &Chain<R>) -> Chain<R> {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Chain<R>) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            self.degree = other.degree;
        }
        assert_eq!(self.degree, other.degree, "adding chains of different degrees");
        for (s, x) in &other.terms {
            add_term(&mut self.terms, s.clone(), x.clone());
        }
    }

    pub fn sub(&self, other: &Chain<R>) -> Chain<R> {
        self.add(&other.scale(&-R::one()))
    }

    pub fn scale(&self, f: &R) -> Chain<R> {
        if f.is_zero() {
            return Chain::zero(self.degree);
        }
        Chain {
            degree: self.degree,
            terms: self.terms.iter().map(|(s, x)| (s.clone(), x.clone() * f.clone())).collect(),
        }
    }

    pub fn neg(&self) -> Chain<R> {
        self.scale(&-R::one())
    }

    pub fn boundary(&self) -> Chain<R> {
        let mut out = Chain::zero(self.degree - 1);
        for (s, x) in &self.terms {
            for (i, f) in s.facets() {
                let t = if i % 2 == 0 { x.clone() } else { -x.clone() };
                add_term(&mut out.terms, f, t);
            }
        }
        out
    }

    /// True when every simplex belongs to `cx`.
    pub fn lies_in(&self, cx: &StratifiedComplex) -> bool {
        self.terms.keys().all(|s| cx.contains(s))
    }
}

impl Chain<BigInt> {
    pub fn to_rational(&self) -> Chain<BigRational> {
        Chain {
            degree: self.degree,
            terms: self.terms.iter().map(|(s, x)| (s.clone(), BigRational::from_integer(x.clone()))).collect(),
        }
    }
}

impl Chain<BigRational> {
    /// The integer chain with the same coefficients, if they are all integral.
    pub fn to_integer(&self) -> Option<Chain<BigInt>> {
        let mut terms = BTreeMap::new();
        for (s, x) in &self.terms {
            if !x.is_integer() {
                return None;
            }
            terms.insert(s.clone(), x.to_integer());
        }
        Some(Chain { degree: self.degree, terms })
    }
}

fn write_terms<'a, R: Coeff + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a R)>,
) -> fmt::Result {
    let mut first = true;
    for (label, x) in terms {
        let neg = x.is_negative();
        let mag = x.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        if mag.is_one() {
            write!(f, "{label}")?;
        } else {
            write!(f, "{mag}·{label}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl<R: Coeff> fmt::Display for Chain<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(s, x)| (s.to_string(), x)))
    }
}

/// A chain viewed in the shifted complex `S^m C`, where `(S^m C)_i = C_{i-m}`
/// and the boundary picks up the sign `(-1)^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedChain<R = BigInt> {
    pub shift: i64,
    pub chain: Chain<R>,
}

impl<R: Coeff> ShiftedChain<R> {
    pub fn new(shift: i64, chain: Chain<R>) -> Self {
        ShiftedChain { shift, chain }
    }

    /// Degree in the shifted complex.
    pub fn degree(&self) -> i64 {
        self.chain.degree() + self.shift
    }

    pub fn boundary(&self) -> Self {
        let b = self.chain.boundary();
        let b = if self.shift.rem_euclid(2) == 1 { b.neg() } else { b };
        ShiftedChain { shift: self.shift, chain: b }
    }

    pub fn support(&self) -> impl Iterator<Item = &Simplex> {
        self.chain.support()
    }

    pub fn is_zero(&self) -> bool {
        self.chain.is_zero()
    }
}

/// A homogeneous cochain: a finitely supported function on `p`-simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain<R = BigInt> {
    degree: usize,
    values: BTreeMap<Simplex, R>,
}

impl<R: Coeff> Cochain<R> {
    pub fn zero(degree: usize) -> Self {
        Cochain { degree, values: BTreeMap::new() }
    }

    pub fn from_values(degree: usize, values: impl IntoIterator<Item = (Simplex, R)>) -> Result<Self> {
        let mut c = Cochain::zero(degree);
        for (s, x) in values {
            if s.dim() != degree {
                return Err(Error::Invalid(format!("simplex {s} in a cochain of degree {degree}")));
            }
            add_term(&mut c.values, s, x);
        }
        Ok(c)
    }

    /// The cochain that is 1 on every vertex.
    pub fn unit(cx: &StratifiedComplex) -> Self {
        Cochain { degree: 0, values: cx.simplices(0).iter().map(|s| (s.clone(), R::one())).collect() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &BTreeMap<Simplex, R> {
        &self.values
    }

    pub fn value(&self, s: &Simplex) -> R {
        self.values.get(s).cloned().unwrap_or_else(R::zero)
    }

    pub fn add(&self, other: &Cochain<R>) -> Cochain<R> {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        assert_eq!(self.degree, other.degree, "adding cochains of different degrees");
        let mut out = self.clone();
        for (s, x) in &other.values {
            add_term(&mut out.values, s.clone(), x.clone());
        }
        out
    }

    pub fn scale(&self, f: &R) -> Cochain<R> {
        if f.is_zero() {
            return Cochain::zero(self.degree);
        }
        Cochain {
            degree: self.degree,
            values: self.values.iter().map(|(s, x)| (s.clone(), x.clone() * f.clone())).collect(),
        }
    }

    pub fn neg(&self) -> Cochain<R> {
        self.scale(&-R::one())
    }

    /// Kronecker pairing with a chain of the same degree.
    pub fn evaluate(&self, c: &Chain<R>) -> R {
        if c.degree() != self.degree as i64 {
            return R::zero();
        }
        let mut s = R::zero();
        for (simplex, x) in c.iter() {
            if let Some(y) = self.values.get(simplex) {
                s = s + x.clone() * y.clone();
            }
        }
        s
    }

    /// `(δx)(σ) = x(∂σ)`.
    pub fn coboundary(&self, cx: &StratifiedComplex) -> Cochain<R> {
        let p = self.degree;
        let mut out = Cochain::zero(p + 1);
        for (tau, x) in &self.values {
            let Some(ti) = cx.index_of(tau) else { continue };
            for &si in cx.cofaces(p, ti) {
                let sigma = cx.simplex(p + 1, si);
                let pos = sigma
                    .vertices()
                    .iter()
                    .position(|v| tau.vertices().binary_search(v).is_err())
                    .expect("coface");
                let t = if pos % 2 == 0 { x.clone() } else { -x.clone() };
                add_term(&mut out.values, sigma.clone(), t);
            }
        }
        out
    }
}

impl Cochain<BigInt> {
    pub fn to_rational(&self) -> Cochain<BigRational> {
        Cochain {
            degree: self.degree,
            values: self
                .values
                .iter()
                .map(|(s, x)| (s.clone(), BigRational::from_integer(x.clone())))
                .collect(),
        }
    }
}

impl Cochain<BigRational> {
    pub fn to_integer(&self) -> Option<Cochain<BigInt>> {
        let mut values = BTreeMap::new();
        for (s, x) in &self.values {
            if !x.is_integer() {
                return None;
            }
            values.insert(s.clone(), x.to_integer());
        }
        Some(Cochain { degree: self.degree, values })
    }
}

impl<R: Coeff> fmt::Display for Cochain<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.values.iter().map(|(s, x)| (format!("{s}*"), x)))
    }
}

/// Front-face/back-face cup product: `(x∪y)(σ) = x(σ[0..p])·y(σ[p..p+q])`.
pub fn cup<R: Coeff>(x: &Cochain<R>, y: &Cochain<R>, cx: &StratifiedComplex) -> Cochain<R> {
    let (p, q) = (x.degree, y.degree);
    let mut out = Cochain::zero(p + q);
    if x.is_zero() || y.is_zero() {
        return out;
    }
    for sigma in cx.simplices(p + q) {
        let a = x.value(&sigma.slice(0, p));
        if a.is_zero() {
            continue;
        }
        let b = y.value(&sigma.slice(p, p + q));
        add_term(&mut out.values, sigma.clone(), a * b);
    }
    out
}

/// Sign making the cap product satisfy `∂(x∩c) = δx∩c + (-1)^p x∩∂c`
/// with back-face evaluation; see [`cap`].
pub(crate) fn cap_sign(p: usize, q: usize) -> bool {
    (p * q + p * (p + 1) / 2) % 2 == 1
}

/// Cap product `C^p ⊗ C_{p+q} -> C_q`:
/// `x ∩ σ = (-1)^{pq + p(p+1)/2} x(σ[q..p+q]) σ[0..q]`.
///
/// The sign is the unique one, normalised by `1 ∩ c = c`, under which
/// `∂(x∩c) = δx∩c + (-1)^p x∩∂c` and `(x∪y)∩c = x∩(y∩c)` hold exactly.
pub fn cap<R: Coeff>(x: &Cochain<R>, c: &Chain<R>) -> Chain<R> {
    let p = x.degree as i64;
    let q = c.degree() - p;
    let mut out = Chain::zero(q);
    if q < 0 {
        return out;
    }
    let (pu, qu) = (p as usize, q as usize);
    let s: R = sign(cap_sign(pu, qu));
    for (sigma, a) in c.iter() {
        let v = x.value(&sigma.slice(qu, qu + pu));
        if v.is_zero() {
            continue;
        }
        add_term(&mut out.terms, sigma.slice(0, qu), s.clone() * v * a.clone());
    }
    out
}

/// `Σ orientation(σ)·σ` over the `n`-simplices of a validated complex.
pub fn fundamental_cycle(cx: &StratifiedComplex) -> Result<Chain<BigInt>> {
    let n = cx.dim();
    if cx.simplices(n).iter().any(|s| cx.orientation(s) == 0) {
        return Err(Error::NotOriented);
    }
    cx.require_valid()?;
    let terms = cx
        .simplices(n)
        .iter()
        .map(|s| (s.clone(), BigInt::from(cx.orientation(s))))
        .collect::<Vec<_>>();
    Chain::from_terms(n as i64, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::{Rng, SeedableRng};
    use num_traits::Zero;
    use rand_chacha::ChaCha8Rng;

    fn random_cochain(cx: &StratifiedComplex, p: usize, rng: &mut ChaCha8Rng) -> Cochain {
        let vals = cx.simplices(p).iter().map(|s| (s.clone(), BigInt::from(rng.gen_range(-2..=2))));
        Cochain::from_values(p, vals.filter(|(_, x)| !x.is_zero())).unwrap()
    }

    fn random_chain(cx: &StratifiedComplex, d: usize, rng: &mut ChaCha8Rng) -> Chain {
        let terms = cx.simplices(d).iter().map(|s| (s.clone(), BigInt::from(rng.gen_range(-2..=2))));
        Chain::from_terms(d as i64, terms.collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn cap_and_cup_identities() {
        let cx = fixtures::sigma_torus();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let d = rng.gen_range(1..=3);
            let p = rng.gen_range(0..=d);
            let x = random_cochain(&cx, p, &mut rng);
            let c = random_chain(&cx, d, &mut rng);
            let lhs = cap(&x, &c).boundary();
            let rhs = cap(&x.coboundary(&cx), &c).add(&cap(&x, &c.boundary()).scale(&sign(p % 2 == 1)));
            assert_eq!(lhs, rhs, "p={p} d={d}");
            if p < d {
                let q = rng.gen_range(0..=d - p);
                let y = random_cochain(&cx, q, &mut rng);
                assert_eq!(cap(&cup(&x, &y, &cx), &c), cap(&x, &cap(&y, &c)));
                let lhs = cup(&x, &y, &cx).coboundary(&cx);
                let rhs = cup(&x.coboundary(&cx), &y, &cx).add(&cup(&x, &y.coboundary(&cx), &cx).scale(&sign(p % 2 == 1)));
                assert_eq!(lhs, rhs);
            }
        }
        let c = random_chain(&cx, 2, &mut rng);
        assert_eq!(cap(&Cochain::unit(&cx), &c), c);
    }
}
