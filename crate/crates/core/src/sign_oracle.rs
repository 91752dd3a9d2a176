//! Exponents of `-1` as polynomials, compared modulo 2.
//!
//! An exponent is built as an integer polynomial in named variables, then
//! reduced over GF(2) with `v² = v` (for an integer `v`, `v² ≡ v mod 2`).
//! Two exponents give the same sign iff their reductions are equal.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub family: &'static str,
    /// `0` for an unindexed variable.
    pub index: usize,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == 0 {
            write!(f, "{}", self.family)
        } else {
            write!(f, "{}{}", self.family, self.index)
        }
    }
}

type Monomial = Vec<(Var, u32)>;

/// Integer polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntPoly {
    terms: BTreeMap<Monomial, i64>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut p = IntPoly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(family: &'static str, index: usize) -> Self {
        let mut p = IntPoly::zero();
        p.add_term(vec![(Var { family, index }, 1)], 1);
        p
    }

    fn add_term(&mut self, m: Monomial, c: i64) {
        let e = self.terms.entry(m).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn sum(items: impl IntoIterator<Item = IntPoly>) -> IntPoly {
        items.into_iter().fold(IntPoly::zero(), |a, b| a + b)
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| *v)).collect()
    }

    pub fn eval(&self, values: &HashMap<Var, i64>) -> i128 {
        self.terms
            .iter()
            .map(|(m, &c)| {
                m.iter().fold(i128::from(c), |acc, (v, e)| acc * i128::from(values[v]).pow(*e))
            })
            .sum()
    }

    pub fn reduce(&self) -> BoolPoly {
        let mut out = BTreeSet::new();
        for (m, c) in &self.terms {
            if c.rem_euclid(2) == 1 {
                let key: BTreeSet<Var> = m.iter().map(|(v, _)| *v).collect();
                if !out.remove(&key) {
                    out.insert(key);
                }
            }
        }
        BoolPoly { monomials: out }
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(mut self, rhs: IntPoly) -> IntPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(mut self) -> IntPoly {
        for c in self.terms.values_mut() {
            *c = -*c;
        }
        self
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        self + (-rhs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut m: BTreeMap<Var, u32> = a.iter().copied().collect();
                for (v, e) in b {
                    *m.entry(*v).or_insert(0) += e;
                }
                out.add_term(m.into_iter().collect(), x * y);
            }
        }
        out
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

/// Polynomial over GF(2) with idempotent variables: a set of square-free monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoolPoly {
    monomials: BTreeSet<BTreeSet<Var>>,
}

impl BoolPoly {
    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }
}

impl fmt::Display for BoolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .monomials
            .iter()
            .map(|m| {
                if m.is_empty() {
                    "1".to_string()
                } else {
                    m.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("·")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Two exponents claimed to agree mod 2.
#[derive(Clone, Debug)]
pub struct Identity {
    pub name: String,
    pub lhs: IntPoly,
    pub rhs: IntPoly,
}

impl Identity {
    fn new(name: impl Into<String>, lhs: IntPoly, rhs: IntPoly) -> Self {
        Identity { name: name.into(), lhs, rhs }
    }

    /// `lhs - rhs` reduced; zero iff the identity holds.
    pub fn difference(&self) -> BoolPoly {
        (self.lhs.clone() - self.rhs.clone()).reduce()
    }

    pub fn holds(&self) -> bool {
        self.difference().is_zero()
    }

    /// Substitutes random integers in `[-bound, bound]` and compares parities.
    pub fn numeric_check(&self, trials: usize, bound: i64, rng: &mut impl Rng) -> bool {
        let vars: BTreeSet<Var> = self.lhs.variables().union(&self.rhs.variables()).copied().collect();
        (0..trials).all(|_| {
            let values: HashMap<Var, i64> = vars.iter().map(|&v| (v, rng.gen_range(-bound..=bound))).collect();
            (self.lhs.eval(&values) - self.rhs.eval(&values)).rem_euclid(2) == 0
        })
    }
}

fn m(i: usize) -> IntPoly {
    IntPoly::var("m", i)
}

fn n(i: usize) -> IntPoly {
    IntPoly::var("n", i)
}

fn x(i: usize) -> IntPoly {
    IntPoly::var("x", i)
}

fn c(v: i64) -> IntPoly {
    IntPoly::constant(v)
}

/// `Σ_{i in range} f(i)`.
fn sum(range: impl IntoIterator<Item = usize>, f: impl Fn(usize) -> IntPoly) -> IntPoly {
    IntPoly::sum(range.into_iter().map(f))
}

/// Second elementary symmetric polynomial of `v_1..v_k`.
pub fn e2(v: impl Fn(usize) -> IntPoly, k: usize) -> IntPoly {
    sum(1..=k, |i| sum(i + 1..=k, |j| &v(i) * &v(j)))
}

/// `∂Θ = Θ∂` at arity `k`, one identity per boundary slot `l`; `x_i` is `|x_i|`.
pub fn theta_identities(k: usize) -> Vec<Identity> {
    (1..=k)
        .map(|l| {
            // ∂ after Θ: Θ's sign, the shift of the total, Koszul past x_a, a < l
            let lhs = sum(2..=k, |i| &m(i) * &sum(1..i, x)) + sum(1..=k, m) + sum(1..l, x);
            // Θ after ∂: the slot-l boundary sign, then Θ with |x_l| lowered by one
            let rhs = sum(1..l, x)
                + sum(1..=l, m)
                + sum(1..=l, |r| &m(r) * &sum(1..r, x))
                + sum(l + 1..=k, |s| &m(s) * &(c(-1) + sum(1..s, x)));
            Identity::new(format!("theta k={k} l={l}"), lhs, rhs)
        })
        .collect()
}

/// `ε̄` against the iterated cochain cross product under duality.
pub fn eps_dual_identity(k: usize) -> Identity {
    let duality = sum(1..=k, |i| &x(i) * &m(i));
    let theta = sum(1..=k, |i| &m(i) * &sum(1..i, |j| x(j) + m(j)));
    let pull_out = sum(1..=k, |i| &m(i) * &sum(i + 1..=k, x));
    let lhs = duality + theta + e2(m, k) + pull_out;
    let rhs = sum(1..=k, m) * sum(1..=k, x);
    Identity::new(format!("eps-dual k={k}"), lhs, rhs)
}

/// The four exponent blocks of the transfer/product commutation, whose sum must vanish.
pub fn mccom_identity(k: usize) -> Identity {
    let bottom = e2(n, k) + sum(1..=k, |i| &n(i) * &sum(1..i, |j| n(j) - m(j) + x(j)));
    let top = e2(m, k) + sum(1..=k, |i| &m(i) * &sum(1..i, x));
    let factors = sum(1..=k, |i| &(m(i) + n(i)) * &(m(i) - x(i)))
        + sum(1..=k, |i| &n(i) * &sum(i + 1..=k, |j| m(j) - x(j)))
        + sum(1..=k, |i| &m(i) * &sum(i + 1..=k, |j| m(j) - x(j)));
    let total = sum(1..=k, m) - sum(1..=k, x);
    let dualities = &sum(1..=k, m) * &total + &sum(1..=k, n) * &total;
    Identity::new(format!("mccom k={k}"), bottom + top + factors + dualities, IntPoly::zero())
}

/// The sign bookkeeping of `μ_k = μ_2(μ_{k_1} ⊗ μ_{k_2})` with `k = k_1+k_2`,
/// `ℓ = ℓ_1+ℓ_2`: the reduction of the nested expression, the conversion
/// step, the mixed-duality step, and the total.
pub fn iteration_identities() -> Vec<Identity> {
    let nn = IntPoly::var("n", 0);
    let k1 = IntPoly::var("k", 1);
    let k2 = IntPoly::var("k", 2);
    let l1 = IntPoly::var("l", 1);
    let l2 = IntPoly::var("l", 2);
    let k = k1.clone() + k2.clone();
    let l = l1.clone() + l2.clone();
    let nk = |kk: &IntPoly| &nn * kk;
    let nested = &nk(&k1) * &(nk(&k1) - l1.clone())
        + &nn * &(nk(&k1) - l1.clone())
        + &nk(&k2) * &(nk(&k2) - l2.clone())
        + &nn * &(nk(&k2) - l2.clone())
        + &(c(2) * nn.clone()) * &(nk(&k) - l.clone())
        + &nn * &(nk(&k) - l.clone());
    let nested_reduced = &nk(&k1) * &l1 + &nk(&k2) * &l2 + nk(&k);
    let convert = &nn * &nn + &nn * &(nn.clone() + l1.clone() - nk(&k1)) + &nn * &(nk(&k2) - l2.clone());
    let convert_reduced = &nn * &l + nk(&k);
    let mix = &nk(&k1) * &(nk(&k1) - l1.clone()) + &nk(&k2) * &(nk(&k2) - l2.clone()) + &nk(&k) * &(nk(&k) - l.clone());
    let mix_reduced = &nk(&k1) * &l1 + &nk(&k2) * &l2 + &nk(&k) * &l;
    let mu_k = &nk(&k) * &(nk(&k) - l.clone()) + &nn * &(nk(&k) - l.clone());
    vec![
        Identity::new("iteration nested", nested, nested_reduced.clone()),
        Identity::new("iteration convert", convert, convert_reduced.clone()),
        Identity::new("iteration mix", mix, mix_reduced.clone()),
        Identity::new("iteration total", nested_reduced + convert_reduced + mix_reduced, &nk(&k) * &l + &nn * &l),
        Identity::new("iteration mu_k", mu_k, &nk(&k) * &l + &nn * &l),
    ]
}

/// The mixed-duality exponent exactly as printed, with `nk_1` in its middle
/// term; it does not reduce to `nk_1ℓ_1 + nk_2ℓ_2 + nkℓ`.
pub fn printed_mix_identity() -> Identity {
    let nn = IntPoly::var("n", 0);
    let k1 = IntPoly::var("k", 1);
    let k2 = IntPoly::var("k", 2);
    let l1 = IntPoly::var("l", 1);
    let l2 = IntPoly::var("l", 2);
    let k = k1.clone() + k2.clone();
    let l = l1.clone() + l2.clone();
    let nk1 = &nn * &k1;
    let nk = &nn * &k;
    let printed = &nk1 * &(nk1.clone() - l1.clone()) + &nk1 * &(&nn * &k2 - l2.clone()) + &nk * &(nk.clone() - l.clone());
    let claimed = &nk1 * &l1 + &(&nn * &k2) * &l2 + &nk * &l;
    Identity::new("iteration mix as printed", printed, claimed)
}

/// `m + (m-i)m + (m-i+1)m ≡ 0`.
pub fn transfer_square_identity() -> Identity {
    let mm = IntPoly::var("m", 0);
    let i = IntPoly::var("i", 0);
    let lhs = mm.clone() + &(mm.clone() - i.clone()) * &mm + &(mm.clone() - i + c(1)) * &mm;
    Identity::new("transfer square", lhs, IntPoly::zero())
}

pub fn verify_theta(k: usize) -> bool {
    theta_identities(k).iter().all(Identity::holds)
}

pub fn verify_eps_dual(k: usize) -> bool {
    eps_dual_identity(k).holds()
}

pub fn verify_mccom(k: usize) -> bool {
    mccom_identity(k).holds()
}

pub fn verify_iteration() -> bool {
    iteration_identities().iter().all(Identity::holds)
}

pub fn verify_transfer_square() -> bool {
    transfer_square_identity().holds()
}

/// Largest arity checked by [`verify_all`].
pub const MAX_ARITY: usize = 6;

/// One family of identities: symbolic verdict and numeric cross-check.
#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub name: &'static str,
    pub identities: Vec<Identity>,
    pub symbolic: bool,
    pub numeric: bool,
}

impl FamilyReport {
    pub fn pass(&self) -> bool {
        self.symbolic && self.numeric
    }
}

/// All five families for arities `1..=MAX_ARITY`, each identity also checked
/// under `trials` random substitutions.
pub fn verify_all(trials: usize, rng: &mut impl Rng) -> Vec<FamilyReport> {
    let arities = 1..=MAX_ARITY;
    let families: Vec<(&'static str, Vec<Identity>)> = vec![
        ("theta", arities.clone().flat_map(theta_identities).collect()),
        ("eps-dual", arities.clone().map(eps_dual_identity).collect()),
        ("mccom", arities.map(mccom_identity).collect()),
        ("iteration", iteration_identities()),
        ("transfer-square", vec![transfer_square_identity()]),
    ];
    families
        .into_iter()
        .map(|(name, identities)| {
            let symbolic = identities.iter().all(Identity::holds);
            let numeric = identities.iter().all(|i| i.numeric_check(trials, 9, rng));
            FamilyReport { name, identities, symbolic, numeric }
        })
        .collect()
}
