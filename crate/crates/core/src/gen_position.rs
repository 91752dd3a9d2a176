//! Stratified general position of tensor chains with respect to the
//! generalized diagonals `R^*: X(k') -> X(k)`, and the domains `G_k`, `G_k^P`.
//!
//! Supports are unions of products of simplices, so every dimension is
//! computed factorwise: a term `σ_1 ⊗ ... ⊗ σ_k` meets the stratum
//! `Z = X_{d_1} × ... × X_{d_k}` in dimension `Σ_i dim(σ_i ∩ X_{d_i})`, and
//! meets `Z ∩ im R^*` in dimension `Σ_j dim(∩_{i ∈ R^{-1}(j)} σ_i ∩ X_{d_j})`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;

use crate::chain::TensorChain;
use crate::chain::{fundamental_cycle, Chain};
use crate::complex::{Simplex, StratifiedComplex};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::homology::IntersectionComplex;
use crate::perversity::Perversity;

/// Largest arity checked; the number of surjections grows like the Bell numbers.
pub const MAX_ARITY: usize = 5;

/// A surjection `k̄ -> k̄'`, zero-based: `map[i]` is the image of slot `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surjection {
    map: Vec<usize>,
    k_prime: usize,
}

impl Surjection {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let k_prime = map.iter().max().map_or(0, |m| m + 1);
        let mut hit = vec![false; k_prime];
        for &j in &map {
            hit[j] = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(Error::Invalid(format!("{map:?} is not onto 0..{k_prime}")));
        }
        Ok(Surjection { map, k_prime })
    }

    pub fn k(&self) -> usize {
        self.map.len()
    }

    pub fn k_prime(&self) -> usize {
        self.k_prime
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `R^{-1}(j)` for each `j`.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k_prime];
        for (i, &j) in self.map.iter().enumerate() {
            out[j].push(i);
        }
        out
    }

    /// `R ∈ Λ_j`: every slot `i ≥ j` (zero-based) is alone in its fiber.
    pub fn in_lambda(&self, j: usize) -> bool {
        let sizes = self.blocks().iter().map(Vec::len).collect::<Vec<_>>();
        (j..self.k()).all(|i| sizes[self.map[i]] == 1)
    }
}

impl fmt::Display for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|j| (j + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// One surjection per set partition of `k̄` into fewer than `k` blocks,
/// blocks numbered by first element. The condition depends only on the
/// partition.
pub fn proper_surjections(k: usize) -> Result<Vec<Surjection>> {
    if k > MAX_ARITY {
        return Err(Error::SizeLimit(format!("arity {k} exceeds {MAX_ARITY}")));
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; k];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Surjection>) {
        if i == rgs.len() {
            if max < rgs.len() {
                out.push(Surjection::new(rgs.clone()).expect("restricted growth"));
            }
            return;
        }
        for v in 0..=max {
            rgs[i] = v;
            rec(i + 1, max.max(v + 1), rgs, out);
        }
    }
    if k > 0 {
        rec(1, 1, &mut rgs, &mut out);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GpEntry {
    pub surjection: Surjection,
    /// Whether the entry concerns `∂D` rather than `D`.
    pub boundary: bool,
    pub strata: Vec<usize>,
    pub lhs: i64,
    pub rhs: i64,
    pub pass: bool,
    pub witness: Option<Vec<Simplex>>,
}

/// Entries for every checked `(R, Z)` with `|D| ∩ Z` nonempty.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GpReport {
    pub entries: Vec<GpEntry>,
}

impl GpReport {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &GpEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    fn extend(&mut self, other: GpReport) {
        self.entries.extend(other.entries);
    }
}

impl fmt::Display for GpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failures().count();
        writeln!(f, "checked: {}", self.entries.len())?;
        writeln!(f, "failed: {failed}")?;
        for e in self.failures() {
            let strata: Vec<String> = e.strata.iter().map(|d| d.to_string()).collect();
            let witness = e
                .witness
                .as_ref()
                .map(|w| w.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("⊗"))
                .unwrap_or_default();
            writeln!(
                f,
                "  R={} {}Z=({}) lhs={} rhs={} witness={}",
                e.surjection,
                if e.boundary { "boundary " } else { "" },
                strata.join(","),
                e.lhs,
                e.rhs,
                witness
            )?;
        }
        Ok(())
    }
}

/// Memoized `dim(s ∩ X_d)` over the depths present in the complex.
struct Strata<'a> {
    cx: &'a StratifiedComplex,
    depths: Vec<usize>,
    memo: HashMap<Simplex, Vec<i64>>,
}

impl<'a> Strata<'a> {
    fn new(cx: &'a StratifiedComplex) -> Self {
        Strata { cx, depths: cx.depths_present(), memo: HashMap::new() }
    }

    /// Indexed like `depths`.
    fn dims(&mut self, s: &Simplex) -> Result<&[i64]> {
        if !self.memo.contains_key(s) {
            let v = self.depths.iter().map(|&d| self.cx.open_stratum_dim(s, d)).collect::<Result<Vec<_>>>()?;
            self.memo.insert(s.clone(), v);
        }
        Ok(&self.memo[s])
    }

    /// `dim(∩ slots ∩ X_d)` per depth, `-1` throughout when the simplices are disjoint.
    fn common_dims(&mut self, slots: &[&Simplex]) -> Result<Vec<i64>> {
        match Simplex::common_face(slots.iter().copied()) {
            Some(f) => Ok(self.dims(&f)?.to_vec()),
            None => Ok(vec![-1; self.depths.len()]),
        }
    }
}

fn tuples(base: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = base.pow(len as u32);
    (0..total).map(move |mut c| {
        let mut v = vec![0; len];
        for x in v.iter_mut() {
            *x = c % base;
            c /= base;
        }
        v
    })
}

fn sum_dims(parts: impl Iterator<Item = i64>) -> i64 {
    let mut total = 0;
    for p in parts {
        if p < 0 {
            return -1;
        }
        total += p;
    }
    total
}

fn check(strata: &mut Strata, d: &TensorChain, r: &Surjection, boundary: bool) -> Result<GpReport> {
    let k = d.arity();
    if r.k() != k {
        return Err(Error::DimensionMismatch(k, r.k()));
    }
    let nd = strata.depths.len();
    let blocks = r.blocks();
    let mut slot_dims: Vec<Vec<Vec<i64>>> = Vec::with_capacity(d.len());
    let mut block_dims: Vec<Vec<Vec<i64>>> = Vec::with_capacity(d.len());
    let terms: Vec<&Vec<Simplex>> = d.support().collect();
    for t in &terms {
        slot_dims.push(t.iter().map(|s| strata.dims(s).map(<[i64]>::to_vec)).collect::<Result<_>>()?);
        block_dims.push(
            blocks
                .iter()
                .map(|b| strata.common_dims(&b.iter().map(|&i| &t[i]).collect::<Vec<_>>()))
                .collect::<Result<_>>()?,
        );
    }
    let mut report = GpReport::default();
    for z in tuples(nd, blocks.len()) {
        // depth index per slot, constant on fibers
        let per_slot: Vec<usize> = r.map().iter().map(|&j| z[j]).collect();
        let a_dim = slot_dims
            .iter()
            .map(|sd| sum_dims(per_slot.iter().enumerate().map(|(i, &di)| sd[i][di])))
            .max()
            .unwrap_or(-1);
        if a_dim < 0 {
            continue;
        }
        let (lhs, witness) = block_dims
            .iter()
            .enumerate()
            .map(|(t, bd)| (sum_dims(z.iter().enumerate().map(|(j, &dj)| bd[j][dj])), t))
            .max_by_key(|&(v, t)| (v, std::cmp::Reverse(t)))
            .expect("nonempty");
        let sum_blocks: i64 = z.iter().map(|&dj| strata.depths[dj] as i64).sum();
        let sum_slots: i64 = per_slot.iter().map(|&di| strata.depths[di] as i64).sum();
        let rhs = a_dim + sum_blocks - sum_slots;
        let pass = lhs < 0 || lhs <= rhs;
        report.entries.push(GpEntry {
            surjection: r.clone(),
            boundary,
            strata: per_slot.iter().map(|&di| strata.depths[di]).collect(),
            lhs,
            rhs,
            pass,
            witness: if pass { None } else { Some(terms[witness].clone()) },
        });
    }
    Ok(report)
}

/// Stratified general position of `|D|` (after cancellation) with respect to `R^*`.
pub fn is_stratified_gp(cx: &StratifiedComplex, d: &TensorChain, r: &Surjection) -> Result<GpReport> {
    check(&mut Strata::new(cx), d, r, false)
}

fn gk_conditions(cx: &StratifiedComplex, d: &TensorChain, keep: impl Fn(&Surjection) -> bool) -> Result<GpReport> {
    let mut strata = Strata::new(cx);
    let boundary = d.boundary();
    let mut report = GpReport::default();
    for r in proper_surjections(d.arity())?.into_iter().filter(|r| keep(r)) {
        report.extend(check(&mut strata, d, &r, false)?);
        report.extend(check(&mut strata, &boundary, &r, true)?);
    }
    Ok(report)
}

/// `D ∈ G_k`: `D` and `∂D` in stratified general position for every `R: k̄ ↠ k̄'`, `k' < k`.
pub fn in_gk(cx: &StratifiedComplex, d: &TensorChain) -> Result<(bool, GpReport)> {
    let report = gk_conditions(cx, d, |_| true)?;
    Ok((report.pass(), report))
}

/// The `G_k` conditions for `R ∈ Λ_j` only.
pub fn in_gk_level(cx: &StratifiedComplex, d: &TensorChain, j: usize) -> Result<(bool, GpReport)> {
    if j > d.arity() {
        return Err(Error::Invalid(format!("level {j} above arity {}", d.arity())));
    }
    let report = gk_conditions(cx, d, |r| r.in_lambda(j))?;
    Ok((report.pass(), report))
}

/// The chains `η` in slot `i` with `D = Σ_J (η_J in slot i) ⊗ (σ_J elsewhere)`.
fn slot_chains(d: &TensorChain, i: usize) -> Vec<Chain> {
    let mut groups: BTreeMap<Vec<Simplex>, Vec<(Simplex, BigInt)>> = BTreeMap::new();
    for (slots, x) in d.iter() {
        let mut rest = slots.clone();
        let s = rest.remove(i);
        groups.entry(rest).or_default().push((s, x.clone()));
    }
    groups
        .into_values()
        .map(|terms| {
            let deg = terms[0].0.dim() as i64;
            Chain::from_terms(deg, terms).expect("one degree per slot")
        })
        .collect()
}

/// Whether every slot of `D` lies in `I^{p_i}C_*`; `false` with the offending slot.
pub fn slots_allowable(cx: &StratifiedComplex, d: &TensorChain, p: &[Perversity]) -> Result<Option<usize>> {
    if p.len() != d.arity() {
        return Err(Error::DimensionMismatch(d.arity(), p.len()));
    }
    let mut ics: HashMap<&Perversity, IntersectionComplex> = HashMap::new();
    for (i, pi) in p.iter().enumerate() {
        if !ics.contains_key(pi) {
            ics.insert(pi, IntersectionComplex::new(cx, Some(pi))?);
        }
        let ic = &ics[pi];
        for c in slot_chains(d, i) {
            let deg = c.degree() as usize;
            if ic.coordinates(deg, &c).is_none() {
                return Ok(Some(i));
            }
        }
    }
    Ok(None)
}

/// `D ∈ G_k^P`.
pub fn in_gkp(cx: &StratifiedComplex, d: &TensorChain, p: &[Perversity]) -> Result<(bool, GpReport)> {
    let bad_slot = slots_allowable(cx, d, p)?;
    let (ok, report) = in_gk(cx, d)?;
    Ok((ok && bad_slot.is_none(), report))
}

/// The three conditions for the transfer `Δ_!` on `D` of shifted degree `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferCheck {
    /// `dim(|D| ∩ Σ_{X(k)}) < dim |D|`
    pub thin_singular_part: bool,
    /// general position of `D` and `∂D` with respect to the diagonal
    pub diagonal_position: bool,
    /// `dim(Δ^{-1}|D| ∩ Σ_X) ≤ i+n-2` and `dim(Δ^{-1}|∂D| ∩ Σ_X) ≤ i+n-3`
    pub singular_preimage: bool,
}

impl TransferCheck {
    pub fn pass(&self) -> bool {
        self.thin_singular_part && self.diagonal_position && self.singular_preimage
    }
}

pub fn in_transfer_domain(cx: &StratifiedComplex, d: &TensorChain) -> Result<TransferCheck> {
    let n = cx.dim();
    let k = d.arity();
    let mut strata = Strata::new(cx);
    let singular: Vec<usize> = (0..strata.depths.len()).filter(|&j| strata.depths[j] < n).collect();
    let i = d.degree();

    let mut support_dim = -1i64;
    let mut singular_dim = -1i64;
    for t in d.support() {
        support_dim = support_dim.max(t.iter().map(|s| s.dim() as i64).sum());
        for forced in 0..k {
            let mut total = 0i64;
            for (slot, s) in t.iter().enumerate() {
                let dims = strata.dims(s)?;
                let best = if slot == forced {
                    singular.iter().map(|&j| dims[j]).max().unwrap_or(-1)
                } else {
                    s.dim() as i64
                };
                if best < 0 {
                    total = -1;
                    break;
                }
                total += best;
            }
            singular_dim = singular_dim.max(total);
        }
    }
    let thin_singular_part = support_dim < 0 || singular_dim < support_dim;

    let diagonal = Surjection::new(vec![0; k])?;
    let diagonal_position =
        check(&mut strata, d, &diagonal, false)?.pass() && check(&mut strata, &d.boundary(), &diagonal, true)?.pass();

    let mut preimage = |t: &TensorChain| -> Result<i64> {
        let mut best = -1;
        for slots in t.support() {
            let dims = strata.common_dims(&slots.iter().collect::<Vec<_>>())?;
            best = singular.iter().map(|&j| dims[j]).fold(best, i64::max);
        }
        Ok(best)
    };
    let n = n as i64;
    let singular_preimage = preimage(d)? <= i + n - 2 && preimage(&d.boundary())? <= i + n - 3;
    Ok(TransferCheck { thin_singular_part, diagonal_position, singular_preimage })
}

/// `ξ = Σ_J η_J ⊗ σ_J`, split after slot `k`, with whether each `η_J ∈ G_k^{P_1}`.
#[derive(Clone, Debug)]
pub struct Split {
    pub pieces: Vec<(Vec<Simplex>, TensorChain, bool)>,
}

impl Split {
    pub fn pass(&self) -> bool {
        self.pieces.iter().all(|p| p.2)
    }
}

/// Rewrites `ξ ∈ G_{k+l}^P` over the simplex tuples of its last `l` slots and
/// checks each head. `NotInDomain` unless `ξ ∈ G_{k+l}^P`.
pub fn split_check(cx: &StratifiedComplex, xi: &TensorChain, p: &[Perversity], k: usize, l: usize) -> Result<Split> {
    if k + l != xi.arity() || k == 0 || l == 0 {
        return Err(Error::Invalid(format!("cannot split arity {} as {k}+{l}", xi.arity())));
    }
    if !in_gkp(cx, xi, p)?.0 {
        return Err(Error::NotInDomain(format!("not in G_{}^P", k + l)));
    }
    let mut pieces = Vec::new();
    for (tail, eta) in xi.split(k)? {
        let ok = in_gkp(cx, &eta, &p[..k])?.0;
        pieces.push((tail, eta, ok));
    }
    Ok(Split { pieces })
}

/// `Γ ⊗ ... ⊗ Γ` with `S^{-n}` shifts.
pub fn gamma_power(cx: &StratifiedComplex, k: usize) -> Result<TensorChain> {
    let g = fundamental_cycle(cx)?;
    TensorChain::from_chains(vec![-(cx.dim() as i64); k], &vec![g; k])
}

/// `Star(w) ⊗ w` on `∂Δ³`, `w = 0`: in `G_2` because `∂ Star(w)` misses `w`,
/// while each primitive `σ ⊗ w` fails through the edges of `∂σ` at `w`.
/// Returns the complex, the sum and its primitives.
pub fn cancellation_fixture() -> (StratifiedComplex, TensorChain, Vec<TensorChain>) {
    let cx = fixtures::boundary_tetrahedron();
    let w = Simplex::vertex(0);
    let shifts = vec![-2, -2];
    let mut primitives = Vec::new();
    let mut terms = Vec::new();
    for s in cx.simplices(2) {
        if s.vertices().contains(&0) {
            let x = BigInt::from(cx.orientation(s));
            terms.push((vec![s.clone(), w.clone()], x.clone()));
            primitives.push(TensorChain::from_terms(shifts.clone(), [(vec![s.clone(), w.clone()], x)]).expect("fixture"));
        }
    }
    let sum = TensorChain::from_terms(shifts, terms).expect("fixture");
    (cx, sum, primitives)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perversity;

    #[test]
    fn surjection_counts() {
        // Bell numbers minus the identity partition
        let counts: Vec<usize> = (1..=5).map(|k| proper_surjections(k).unwrap().len()).collect();
        assert_eq!(counts, vec![0, 1, 4, 14, 51]);
        assert!(matches!(proper_surjections(6), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn lambda_levels() {
        let r = Surjection::new(vec![0, 0, 1]).unwrap();
        assert!(!r.in_lambda(0));
        assert!(!r.in_lambda(1));
        assert!(r.in_lambda(2));
        assert!(r.in_lambda(3));
    }

    #[test]
    fn disjoint_edges_and_repeated_edge() {
        let cx = fixtures::boundary_tetrahedron();
        let r = Surjection::new(vec![0, 0]).unwrap();
        let e = |a, b| Simplex::new(vec![a, b]).unwrap();
        let d = TensorChain::primitive(vec![-2, -2], vec![e(0, 1), e(2, 3)]).unwrap();
        let rep = is_stratified_gp(&cx, &d, &r).unwrap();
        assert!(rep.pass());
        assert_eq!((rep.entries[0].lhs, rep.entries[0].rhs), (-1, 0));
        let d = TensorChain::primitive(vec![-2, -2], vec![e(0, 1), e(0, 1)]).unwrap();
        let rep = is_stratified_gp(&cx, &d, &r).unwrap();
        assert!(!rep.pass());
        let f = rep.failures().next().unwrap();
        assert_eq!((f.lhs, f.rhs), (1, 0));
        assert_eq!(f.witness.as_ref().unwrap(), &vec![e(0, 1), e(0, 1)]);
    }

    #[test]
    fn fundamental_class_squared() {
        for cx in [fixtures::boundary_tetrahedron(), fixtures::torus(), fixtures::sigma_torus()] {
            let g2 = gamma_power(&cx, 2).unwrap();
            assert!(in_gk(&cx, &g2).unwrap().0, "{}", cx.name());
            let z = vec![perversity::zero(cx.dim()); 2];
            assert!(in_gkp(&cx, &g2, &z).unwrap().0);
            assert!(in_transfer_domain(&cx, &g2).unwrap().pass());
        }
    }

    #[test]
    fn cancellation() {
        let (cx, sum, primitives) = cancellation_fixture();
        assert!(in_gk(&cx, &sum).unwrap().0);
        for p in &primitives {
            let (ok, rep) = in_gk(&cx, p).unwrap();
            assert!(!ok);
            assert!(rep.failures().all(|e| e.boundary));
        }
    }

    #[test]
    fn vacuous_cases() {
        let cx = fixtures::torus();
        let empty = TensorChain::zero(vec![-2, -2], 0);
        assert!(in_gkp(&cx, &empty, &[perversity::zero(2), perversity::zero(2)]).unwrap().0);
        let g1 = gamma_power(&cx, 1).unwrap();
        assert!(in_gk(&cx, &g1).unwrap().0);
    }
}
