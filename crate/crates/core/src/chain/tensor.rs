use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Chain, ShiftedChain};
use crate::complex::Simplex;
use crate::error::{Error, Result};
use crate::product::ProductComplex;

/// A Koszul-graded tensor of shifted chains `S^{m_1}C ⊗ ... ⊗ S^{m_k}C`,
/// reduced at simplex-tuple granularity.
///
/// The degree of a slot holding a `d`-simplex is `d + m_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorChain {
    shifts: Vec<i64>,
    degree: i64,
    terms: BTreeMap<Vec<Simplex>, BigInt>,
}

impl TensorChain {
    pub fn zero(shifts: Vec<i64>, degree: i64) -> Self {
        TensorChain { shifts, degree, terms: BTreeMap::new() }
    }

    /// A single simplex tuple with coefficient one.
    pub fn primitive(shifts: Vec<i64>, slots: Vec<Simplex>) -> Result<Self> {
        Self::from_terms(shifts, [(slots, BigInt::one())])
    }

    /// Builds a reduced tensor; the degree is taken from the first term.
    pub fn from_terms(shifts: Vec<i64>, terms: impl IntoIterator<Item = (Vec<Simplex>, BigInt)>) -> Result<Self> {
        let mut out: Option<TensorChain> = None;
        for (slots, x) in terms {
            if slots.len() != shifts.len() {
                return Err(Error::DimensionMismatch(shifts.len(), slots.len()));
            }
            let d = tuple_degree(&shifts, &slots);
            let t = out.get_or_insert_with(|| TensorChain::zero(shifts.clone(), d));
            if d != t.degree {
                return Err(Error::Invalid(format!("inhomogeneous tensor: degrees {} and {d}", t.degree)));
            }
            t.add_term(slots, x);
        }
        Ok(out.unwrap_or_else(|| TensorChain::zero(shifts, 0)))
    }

    /// `S^{m_1}c_1 ⊗ ... ⊗ S^{m_k}c_k`, expanded multilinearly.
    pub fn from_chains(shifts: Vec<i64>, chains: &[Chain]) -> Result<Self> {
        if chains.len() != shifts.len() {
            return Err(Error::DimensionMismatch(shifts.len(), chains.len()));
        }
        let degree = chains.iter().map(Chain::degree).sum::<i64>() + shifts.iter().sum::<i64>();
        let mut acc: Vec<(Vec<Simplex>, BigInt)> = vec![(Vec::new(), BigInt::one())];
        for c in chains {
            let mut next = Vec::with_capacity(acc.len() * c.len());
            for (slots, x) in &acc {
                for (s, y) in c.iter() {
                    let mut t = slots.clone();
                    t.push(s.clone());
                    next.push((t, x * y));
                }
            }
            acc = next;
        }
        let mut out = TensorChain::zero(shifts, degree);
        for (slots, x) in acc {
            out.add_term(slots, x);
        }
        Ok(out)
    }

    pub fn arity(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
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

    pub fn terms(&self) -> &BTreeMap<Vec<Simplex>, BigInt> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Simplex>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, slots: &[Simplex]) -> BigInt {
        self.terms.get(slots).cloned().unwrap_or_default()
    }

    /// Simplex tuples with nonzero coefficient, after cancellation.
    pub fn support(&self) -> impl Iterator<Item = &Vec<Simplex>> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, slots: Vec<Simplex>, x: BigInt) {
        if x.is_zero() {
            return;
        }
        match self.terms.entry(slots) {
            Entry::Vacant(e) => {
                e.insert(x);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += x;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &TensorChain) -> TensorChain {
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = other.degree;
        }
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorChain) -> TensorChain {
        self.add(&other.neg())
    }

    pub fn scale(&self, f: &BigInt) -> TensorChain {
        let mut out = TensorChain::zero(self.shifts.clone(), self.degree);
        if f.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * f)).collect();
        out
    }

    pub fn neg(&self) -> TensorChain {
        self.scale(&-BigInt::one())
    }

    /// Koszul boundary: slot `l` picks up `(-1)^{m_l}` from its shift and
    /// `(-1)^{Σ_{j<l} (|x_j| + m_j)}` from the slots to its left.
    pub fn boundary(&self) -> TensorChain {
        let mut out = TensorChain::zero(self.shifts.clone(), self.degree - 1);
        for (slots, x) in &self.terms {
            let mut left = 0i64;
            for l in 0..slots.len() {
                let neg = (left + self.shifts[l]).rem_euclid(2) == 1;
                for (i, f) in slots[l].facets() {
                    let mut t = slots.clone();
                    t[l] = f;
                    let s = if neg ^ (i % 2 == 1) { -x.clone() } else { x.clone() };
                    out.add_term(t, s);
                }
                left += slots[l].dim() as i64 + self.shifts[l];
            }
        }
        out
    }

    /// Reorders slots: slot `i` of the result is slot `perm[i]` of `self`,
    /// with the Koszul sign of the shifted degrees.
    pub fn permute(&self, perm: &[usize]) -> Result<TensorChain> {
        let k = self.arity();
        let mut seen = vec![false; k];
        if perm.len() != k || perm.iter().any(|&p| p >= k || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Invalid(format!("not a permutation of {k} slots: {perm:?}")));
        }
        let shifts: Vec<i64> = perm.iter().map(|&p| self.shifts[p]).collect();
        let mut out = TensorChain::zero(shifts, self.degree);
        for (slots, x) in &self.terms {
            let deg: Vec<i64> = (0..k).map(|i| slots[i].dim() as i64 + self.shifts[i]).collect();
            let mut odd = false;
            for a in 0..k {
                for b in a + 1..k {
                    if perm[a] > perm[b] && (deg[perm[a]] * deg[perm[b]]).rem_euclid(2) == 1 {
                        odd = !odd;
                    }
                }
            }
            let t = perm.iter().map(|&p| slots[p].clone()).collect();
            out.add_term(t, if odd { -x.clone() } else { x.clone() });
        }
        Ok(out)
    }

    /// Splits each tuple after slot `k`: `Σ_J η_J ⊗ σ_J` with `σ_J` the
    /// tuple of the last slots. Returns `(σ_J, η_J)` pairs.
    pub fn split(&self, k: usize) -> Result<Vec<(Vec<Simplex>, TensorChain)>> {
        if k > self.arity() {
            return Err(Error::DimensionMismatch(self.arity(), k));
        }
        let head_shifts = self.shifts[..k].to_vec();
        let mut groups: BTreeMap<Vec<Simplex>, Vec<(Vec<Simplex>, BigInt)>> = BTreeMap::new();
        for (slots, x) in &self.terms {
            groups.entry(slots[k..].to_vec()).or_default().push((slots[..k].to_vec(), x.clone()));
        }
        groups
            .into_iter()
            .map(|(tail, head)| Ok((tail, TensorChain::from_terms(head_shifts.clone(), head)?)))
            .collect()
    }

    /// Distinct simplices occurring in slot `l`.
    pub fn slot_simplices(&self, l: usize) -> Vec<Simplex> {
        let mut v: Vec<Simplex> = self.terms.keys().map(|t| t[l].clone()).collect();
        v.sort();
        v.dedup();
        v
    }
}

fn tuple_degree(shifts: &[i64], slots: &[Simplex]) -> i64 {
    slots.iter().zip(shifts).map(|(s, m)| s.dim() as i64 + m).sum()
}

impl fmt::Display for TensorChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (slots, x)) in self.terms.iter().enumerate() {
            let body = slots.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("⊗");
            let mag = x.abs();
            let coef = if mag.is_one() { String::new() } else { format!("{mag}·") };
            match (n, x.is_negative()) {
                (0, false) => write!(f, "{coef}{body}")?,
                (0, true) => write!(f, "-{coef}{body}")?,
                (_, false) => write!(f, " + {coef}{body}")?,
                (_, true) => write!(f, " - {coef}{body}")?,
            }
        }
        Ok(())
    }
}

/// `S^m` applied to an unshifted tensor: the output of [`theta`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedTensor {
    pub shift: i64,
    pub tensor: TensorChain,
}

impl ShiftedTensor {
    pub fn degree(&self) -> i64 {
        self.tensor.degree() + self.shift
    }

    pub fn boundary(&self) -> ShiftedTensor {
        let b = self.tensor.boundary();
        let tensor = if self.shift.rem_euclid(2) == 1 { b.neg() } else { b };
        ShiftedTensor { shift: self.shift, tensor }
    }
}

fn theta_sign(shifts: &[i64], slots: &[Simplex]) -> bool {
    let mut left = 0i64;
    let mut e = 0i64;
    for (i, s) in slots.iter().enumerate() {
        if i > 0 {
            e += shifts[i] * left;
        }
        left += s.dim() as i64;
    }
    e.rem_euclid(2) == 1
}

/// `Θ: S^{m_1}C ⊗ ... ⊗ S^{m_k}C -> S^{Σm_i}(C ⊗ ... ⊗ C)` with sign
/// `(-1)^{Σ_{i≥2} m_i Σ_{j<i} |x_j|}`.
pub fn theta(t: &TensorChain) -> ShiftedTensor {
    let shift = t.shifts.iter().sum();
    let k = t.arity();
    let mut out = TensorChain::zero(vec![0; k], t.degree - shift);
    for (slots, x) in &t.terms {
        let neg = theta_sign(&t.shifts, slots);
        out.add_term(slots.clone(), if neg { -x.clone() } else { x.clone() });
    }
    ShiftedTensor { shift, tensor: out }
}

/// Inverse of [`theta`] onto the given slot shifts.
pub fn theta_inverse(s: &ShiftedTensor, shifts: &[i64]) -> Result<TensorChain> {
    if shifts.iter().sum::<i64>() != s.shift || shifts.len() != s.tensor.arity() {
        return Err(Error::Invalid(format!("shifts {shifts:?} do not sum to {}", s.shift)));
    }
    let mut out = TensorChain::zero(shifts.to_vec(), s.degree());
    for (slots, x) in &s.tensor.terms {
        let neg = theta_sign(shifts, slots);
        out.add_term(slots.clone(), if neg { -x.clone() } else { x.clone() });
    }
    Ok(out)
}

/// Second elementary symmetric polynomial `Σ_{i<j} m_i m_j`.
pub fn e2(m: &[i64]) -> i64 {
    let mut s = 0;
    let mut acc = 0;
    for &x in m {
        acc += s * x;
        s += x;
    }
    acc
}

/// The shuffle chain of `σ_1 × ... × σ_k` in the product complex.
pub fn cross_simplices(pc: &ProductComplex, factors: &[Simplex]) -> Result<Chain> {
    if factors.len() != pc.k() {
        return Err(Error::ProductUnavailable(format!("{} factors for a {}-fold product", factors.len(), pc.k())));
    }
    let degree = factors.iter().map(|s| s.dim() as i64).sum();
    let mut c = Chain::zero(degree);
    for (s, neg) in pc.cross_simplices(factors) {
        c.add_term(s, if neg { -BigInt::one() } else { BigInt::one() });
    }
    Ok(c)
}

/// Eilenberg–Zilber cross product of an unshifted tensor.
pub fn cross(pc: &ProductComplex, t: &TensorChain) -> Result<Chain> {
    if t.arity() != pc.k() {
        return Err(Error::ProductUnavailable(format!("arity {} for a {}-fold product", t.arity(), pc.k())));
    }
    let degree = t.degree - t.shifts.iter().sum::<i64>();
    let mut c = Chain::zero(degree);
    for (slots, x) in &t.terms {
        for (s, neg) in pc.cross_simplices(slots) {
            c.add_term(s, if neg { -x.clone() } else { x.clone() });
        }
    }
    Ok(c)
}

/// `ε̄ = (-1)^{e_2(m)} S^{Σm}(ε) ∘ Θ`, a degree-zero chain map into the
/// shifted chains of the product.
pub fn bar_epsilon(pc: &ProductComplex, t: &TensorChain) -> Result<ShiftedChain> {
    let th = theta(t);
    let c = cross(pc, &th.tensor)?;
    let c = if e2(t.shifts()).rem_euclid(2) == 1 { c.neg() } else { c };
    Ok(ShiftedChain::new(th.shift, c))
}
