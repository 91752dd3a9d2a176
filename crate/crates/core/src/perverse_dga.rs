//! Perverse graded modules (functors from the poset of perversities to
//! graded abelian groups), the `⊠` product, and the homology-level
//! restricted algebra `r ↦ S^{-n} I^r H_*` with its action of set maps.
//!
//! All groups are finitely presented; equalities are decided exactly by
//! integer solves against the relation lattice. The model has zero
//! differential, so quasi-isomorphism is checked as isomorphism.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::chain::{fundamental_cycle, Chain};
use crate::complex::StratifiedComplex;
use crate::error::{Error, Result};
use crate::linalg::{add_entry, axpy, Smith, SparseMatrix, SparseVec, Track};
use crate::pairing::IhProducts;
use crate::perversity::{self, Perversity};

/// Largest `n` for which the poset is enumerated.
pub const MAX_N: usize = 6;

/// Largest arity handled by [`check_leinster`] and [`check_functoriality`].
pub const MAX_ARITY: usize = 3;

/// `ℤ^gens / ⟨relations⟩`.
#[derive(Clone, Debug, Default)]
pub struct Presentation {
    gens: usize,
    relations: Vec<SparseVec>,
    smith: OnceLock<Smith>,
}

impl Presentation {
    pub fn new(gens: usize, relations: Vec<SparseVec>) -> Result<Self> {
        if relations.iter().any(|r| r.keys().any(|&i| i >= gens)) {
            return Err(Error::Invalid("relation outside the generators".into()));
        }
        let relations = relations.into_iter().filter(|r| !r.is_empty()).collect();
        Ok(Presentation { gens, relations, smith: OnceLock::new() })
    }

    pub fn free(gens: usize) -> Self {
        Presentation { gens, relations: Vec::new(), smith: OnceLock::new() }
    }

    /// `ℤ/m`.
    pub fn cyclic(m: BigInt) -> Self {
        let mut r = SparseVec::new();
        add_entry(&mut r, 0, m);
        Presentation::new(1, vec![r]).expect("in range")
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &[SparseVec] {
        &self.relations
    }

    fn smith(&self) -> &Smith {
        self.smith.get_or_init(|| Smith::compute(&SparseMatrix::from_columns(self.gens, &self.relations), Track::SOLVE))
    }

    /// Whether `v` lies in the relation lattice.
    pub fn is_zero(&self, v: &SparseVec) -> bool {
        v.is_empty() || (!self.relations.is_empty() && self.smith().solve_int(v).is_some())
    }

    pub fn invariants(&self) -> GroupInvariants {
        if self.relations.is_empty() {
            return GroupInvariants { rank: self.gens, torsion: Vec::new() };
        }
        let s = self.smith();
        GroupInvariants {
            rank: self.gens - s.rank(),
            torsion: s.factors().iter().filter(|f| !f.is_one()).cloned().collect(),
        }
    }

    /// `A ⊗ B` on the product basis, `(i, j) ↦ i * B.gens + j`.
    pub fn tensor(&self, other: &Presentation) -> Presentation {
        let mut relations = Vec::new();
        for rel in &self.relations {
            for j in 0..other.gens {
                relations.push(rel.iter().map(|(i, x)| (i * other.gens + j, x.clone())).collect());
            }
        }
        for rel in &other.relations {
            for i in 0..self.gens {
                relations.push(rel.iter().map(|(j, x)| (i * other.gens + j, x.clone())).collect());
            }
        }
        Presentation::new(self.gens * other.gens, relations).expect("in range")
    }
}

/// Rank and torsion coefficients of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupInvariants {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl GroupInvariants {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for GroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub type GradedGroup = BTreeMap<i64, Presentation>;

/// Images of the generators, per degree.
pub type GradedMap = BTreeMap<i64, Vec<SparseVec>>;

fn unit_vector(i: usize) -> SparseVec {
    SparseVec::from([(i, BigInt::one())])
}

fn le(p: &Perversity, q: &Perversity) -> bool {
    p.values().iter().zip(q.values()).all(|(a, b)| a <= b)
}

fn poset(n: usize) -> Result<Vec<Perversity>> {
    if n < 2 {
        return Err(Error::Invalid(format!("perversities need n >= 2, got {n}")));
    }
    if n > MAX_N {
        return Err(Error::SizeLimit(format!("perversity poset for n = {n} exceeds n = {MAX_N}")));
    }
    perversity::enumerate(n)
}

/// A functor from the `n`-perversities to graded groups, with a structure
/// map for every comparable pair `p < q`.
#[derive(Clone, Debug)]
pub struct PerverseGradedModule {
    n: usize,
    perversities: Vec<Perversity>,
    groups: Vec<GradedGroup>,
    maps: HashMap<(usize, usize), GradedMap>,
}

impl PerverseGradedModule {
    pub fn from_fn(
        n: usize,
        mut group: impl FnMut(&Perversity) -> Result<GradedGroup>,
        mut map: impl FnMut(&Perversity, &Perversity, i64) -> Result<Vec<SparseVec>>,
    ) -> Result<Self> {
        let perversities = poset(n)?;
        let mut groups = Vec::with_capacity(perversities.len());
        for p in &perversities {
            let mut g = group(p)?;
            g.retain(|_, pres| pres.gens > 0);
            groups.push(g);
        }
        let mut maps = HashMap::new();
        for (i, p) in perversities.iter().enumerate() {
            for (j, q) in perversities.iter().enumerate() {
                if i == j || !le(p, q) {
                    continue;
                }
                let mut gm = GradedMap::new();
                for (&d, pres) in &groups[i] {
                    let cols = map(p, q, d)?;
                    let target = groups[j].get(&d).map_or(0, |t| t.gens);
                    if cols.len() != pres.gens || cols.iter().any(|c| c.keys().any(|&x| x >= target)) {
                        return Err(Error::Invalid(format!("structure map {p} -> {q} in degree {d} has the wrong shape")));
                    }
                    gm.insert(d, cols);
                }
                maps.insert((i, j), gm);
            }
        }
        Ok(PerverseGradedModule { n, perversities, groups, maps })
    }

    /// The same group at every perversity, identity structure maps.
    pub fn constant(n: usize, group: GradedGroup) -> Result<Self> {
        let g = group.clone();
        Self::from_fn(n, |_| Ok(group.clone()), |_, _, d| Ok((0..g[&d].gens).map(unit_vector).collect()))
    }

    /// `{ℤ[0]}`.
    pub fn unit(n: usize) -> Result<Self> {
        Self::constant(n, GradedGroup::from([(0, Presentation::free(1))]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn perversities(&self) -> &[Perversity] {
        &self.perversities
    }

    pub fn index(&self, p: &Perversity) -> Option<usize> {
        self.perversities.binary_search(p).ok()
    }

    pub fn group(&self, p: usize, d: i64) -> Option<&Presentation> {
        self.groups[p].get(&d)
    }

    pub fn groups(&self, p: usize) -> &GradedGroup {
        &self.groups[p]
    }

    /// Structure map `p -> q` in degree `d`, `None` for the identity or a zero group.
    pub fn map(&self, p: usize, q: usize, d: i64) -> Option<&[SparseVec]> {
        self.maps.get(&(p, q)).and_then(|m| m.get(&d)).map(Vec::as_slice)
    }

    /// Image of `v` under the structure map `p -> q`.
    pub fn image(&self, p: usize, q: usize, d: i64, v: &SparseVec) -> SparseVec {
        if p == q {
            return v.clone();
        }
        let mut out = SparseVec::new();
        if let Some(cols) = self.map(p, q, d) {
            for (i, x) in v {
                axpy(&mut out, x, &cols[*i]);
            }
        }
        out
    }

    pub fn is_zero(&self, p: usize, d: i64, v: &SparseVec) -> bool {
        self.group(p, d).map_or(v.is_empty(), |g| g.is_zero(v))
    }

    /// Nonzero groups at `p`.
    pub fn invariants(&self, p: usize) -> BTreeMap<i64, GroupInvariants> {
        self.groups[p].iter().map(|(&d, g)| (d, g.invariants())).filter(|(_, i)| !i.is_zero()).collect()
    }

    pub fn same_invariants(&self, other: &PerverseGradedModule) -> bool {
        self.n == other.n && (0..self.perversities.len()).all(|p| self.invariants(p) == other.invariants(p))
    }

    /// Structure maps respect relations and compose along every chain `p < q < r`.
    pub fn check_functorial(&self) -> Result<()> {
        let mut keys: Vec<&(usize, usize)> = self.maps.keys().collect();
        keys.sort();
        for &(p, q) in keys {
            for (&d, cols) in &self.maps[&(p, q)] {
                for rel in self.groups[p][&d].relations() {
                    let mut img = SparseVec::new();
                    for (i, x) in rel {
                        axpy(&mut img, x, &cols[*i]);
                    }
                    if !self.is_zero(q, d, &img) {
                        return Err(Error::Invalid(format!(
                            "structure map {} -> {} does not preserve relations in degree {d}",
                            self.perversities[p], self.perversities[q]
                        )));
                    }
                }
            }
        }
        let m = self.perversities.len();
        for p in 0..m {
            for q in 0..m {
                if p == q || !self.maps.contains_key(&(p, q)) {
                    continue;
                }
                for r in 0..m {
                    if r == q || r == p || !self.maps.contains_key(&(q, r)) {
                        continue;
                    }
                    for (&d, g) in &self.groups[p] {
                        for i in 0..g.gens {
                            let e = unit_vector(i);
                            let mut diff = self.image(p, r, d, &e);
                            axpy(&mut diff, &-BigInt::one(), &self.image(q, r, d, &self.image(p, q, d, &e)));
                            if !self.is_zero(r, d, &diff) {
                                return Err(Error::Invalid(format!(
                                    "structure maps do not compose along {} < {} < {}",
                                    self.perversities[p], self.perversities[q], self.perversities[r]
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for PerverseGradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.perversities.iter().enumerate() {
            let parts: Vec<String> = self.invariants(i).iter().map(|(d, g)| format!("[{d}] {g}")).collect();
            writeln!(f, "{p}: {}", if parts.is_empty() { "0".to_string() } else { parts.join(", ") })?;
        }
        Ok(())
    }
}

/// A generator of a `⊠`-product: one perversity per factor and, per
/// factor, `(degree, generator index)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoxGen {
    pub perversities: Vec<usize>,
    pub parts: Vec<(i64, usize)>,
}

impl BoxGen {
    pub fn degree(&self) -> i64 {
        self.parts.iter().map(|(d, _)| d).sum()
    }

    pub fn arity(&self) -> usize {
        self.parts.len()
    }

    /// The first `k` slots and the rest.
    pub fn split(&self, k: usize) -> (BoxGen, BoxGen) {
        (
            BoxGen { perversities: self.perversities[..k].to_vec(), parts: self.parts[..k].to_vec() },
            BoxGen { perversities: self.perversities[k..].to_vec(), parts: self.parts[k..].to_vec() },
        )
    }

    pub fn join(&self, other: &BoxGen) -> BoxGen {
        let mut g = self.clone();
        g.perversities.extend(&other.perversities);
        g.parts.extend(&other.parts);
        g
    }
}

/// A formal combination of [`BoxGen`]s.
pub type Element = BTreeMap<BoxGen, BigInt>;

pub fn add_term(e: &mut Element, g: BoxGen, x: BigInt) {
    if x.is_zero() {
        return;
    }
    let entry = e.entry(g.clone()).or_insert_with(BigInt::zero);
    *entry += x;
    if entry.is_zero() {
        e.remove(&g);
    }
}

fn difference(a: &Element, b: &Element) -> Element {
    let mut out = a.clone();
    for (g, x) in b {
        add_term(&mut out, g.clone(), -x);
    }
    out
}

fn generator(g: &BoxGen) -> Element {
    Element::from([(g.clone(), BigInt::one())])
}

/// `{D_1} ⊠ ⋯ ⊠ {D_k}` with its generators labeled by [`BoxGen`].
#[derive(Clone, Debug)]
pub struct BoxProduct {
    module: PerverseGradedModule,
    arity: usize,
    gens: Vec<BTreeMap<i64, Vec<BoxGen>>>,
    index: Vec<HashMap<BoxGen, usize>>,
}

impl BoxProduct {
    pub fn module(&self) -> &PerverseGradedModule {
        &self.module
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn generators(&self, r: usize, d: i64) -> &[BoxGen] {
        self.gens[r].get(&d).map_or(&[], Vec::as_slice)
    }

    pub fn all_generators(&self, r: usize) -> impl Iterator<Item = &BoxGen> {
        self.gens[r].values().flatten()
    }

    /// Index of `g` among the generators of its degree at `r`.
    pub fn position(&self, r: usize, g: &BoxGen) -> Option<usize> {
        self.index[r].get(g).copied()
    }

    pub fn vectors(&self, r: usize, x: &Element) -> Result<BTreeMap<i64, SparseVec>> {
        let mut out: BTreeMap<i64, SparseVec> = BTreeMap::new();
        for (g, c) in x {
            let i = self.position(r, g).ok_or_else(|| {
                Error::Invalid(format!("{g:?} is not a generator at {}", self.module.perversities[r]))
            })?;
            add_entry(out.entry(g.degree()).or_default(), i, c.clone());
        }
        Ok(out)
    }

    pub fn element(&self, r: usize, d: i64, v: &SparseVec) -> Element {
        let gens = self.generators(r, d);
        v.iter().map(|(i, x)| (gens[*i].clone(), x.clone())).collect()
    }

    pub fn is_zero(&self, r: usize, x: &Element) -> Result<bool> {
        Ok(self.vectors(r, x)?.iter().all(|(d, v)| self.module.is_zero(r, *d, v)))
    }

    pub fn equal(&self, r: usize, a: &Element, b: &Element) -> Result<bool> {
        self.is_zero(r, &difference(a, b))
    }
}

/// Tuples of perversity indices whose pointwise sum is at most `r`.
fn tuples_below(perversities: &[Perversity], k: usize, r: &Perversity) -> Vec<Vec<usize>> {
    fn rec(ps: &[Perversity], k: usize, r: &[usize], sum: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for (i, p) in ps.iter().enumerate() {
            let next: Vec<usize> = sum.iter().zip(p.values()).map(|(a, b)| a + b).collect();
            if next.iter().zip(r).all(|(a, b)| a <= b) {
                let old = std::mem::replace(sum, next);
                cur.push(i);
                rec(ps, k, r, sum, cur, out);
                cur.pop();
                *sum = old;
            }
        }
    }
    let mut out = Vec::new();
    rec(perversities, k, r.values(), &mut vec![0; r.values().len()], &mut Vec::new(), &mut out);
    out
}

fn sum_below(perversities: &[Perversity], tuple: &[usize], r: &Perversity) -> bool {
    r.values()
        .iter()
        .enumerate()
        .all(|(j, &b)| tuple.iter().map(|&i| perversities[i].values()[j]).sum::<usize>() <= b)
}

/// `(⊠ D_i)^r = colim_{p_1+⋯+p_k ≤ r} ⊗ D_i^{p_i}`; with no factors, `{ℤ[0]}`.
///
/// Generators are the tensor generators of every summand; relations are
/// the factors' own relations and, for each single-slot step `p_s < q_s`
/// inside the indexing poset, `x = (structure map)(x)`.
pub fn boxtimes_many(n: usize, factors: &[&PerverseGradedModule]) -> Result<BoxProduct> {
    let perversities = poset(n)?;
    if let Some(f) = factors.iter().find(|f| f.n != n) {
        return Err(Error::DimensionMismatch(f.n, n));
    }
    let mut gens_all = Vec::with_capacity(perversities.len());
    let mut index_all = Vec::with_capacity(perversities.len());
    let mut groups = Vec::with_capacity(perversities.len());
    for r in &perversities {
        let mut by_degree: BTreeMap<i64, Vec<BoxGen>> = BTreeMap::new();
        for tuple in tuples_below(&perversities, factors.len(), r) {
            let mut partial: Vec<Vec<(i64, usize)>> = vec![Vec::new()];
            for (f, &p) in factors.iter().zip(&tuple) {
                let slot: Vec<(i64, usize)> = f.groups[p].iter().flat_map(|(&d, g)| (0..g.gens).map(move |i| (d, i))).collect();
                partial = partial
                    .into_iter()
                    .flat_map(|pre| slot.iter().map(move |&s| {
                        let mut v = pre.clone();
                        v.push(s);
                        v
                    }))
                    .collect();
            }
            for parts in partial {
                let g = BoxGen { perversities: tuple.clone(), parts };
                by_degree.entry(g.degree()).or_default().push(g);
            }
        }
        let index: HashMap<BoxGen, usize> =
            by_degree.values().flat_map(|gs| gs.iter().enumerate().map(|(i, g)| (g.clone(), i))).collect();

        let mut group = GradedGroup::new();
        for (&d, gens) in &by_degree {
            let mut rels = Vec::new();
            for g in gens {
                for (s, f) in factors.iter().enumerate() {
                    let (ds, gs) = g.parts[s];
                    let ps = g.perversities[s];
                    // the factor's relations, once per choice of the other slots
                    if gs == 0 {
                        for rel in f.groups[ps][&ds].relations() {
                            let mut v = SparseVec::new();
                            for (c, x) in rel {
                                let mut h = g.clone();
                                h.parts[s].1 = *c;
                                add_entry(&mut v, index[&h], x.clone());
                            }
                            rels.push(v);
                        }
                    }
                    for qs in 0..perversities.len() {
                        if qs == ps || !le(&perversities[ps], &perversities[qs]) {
                            continue;
                        }
                        let mut tuple = g.perversities.clone();
                        tuple[s] = qs;
                        if !sum_below(&perversities, &tuple, r) {
                            continue;
                        }
                        let mut v = SparseVec::from([(index[g], BigInt::one())]);
                        for (c, x) in f.image(ps, qs, ds, &unit_vector(gs)) {
                            let mut h = BoxGen { perversities: tuple.clone(), parts: g.parts.clone() };
                            h.parts[s].1 = c;
                            add_entry(&mut v, index[&h], -x);
                        }
                        rels.push(v);
                    }
                }
            }
            group.insert(d, Presentation::new(gens.len(), rels)?);
        }
        groups.push(group);
        gens_all.push(by_degree);
        index_all.push(index);
    }
    let mut maps = HashMap::new();
    for (i, p) in perversities.iter().enumerate() {
        for (j, q) in perversities.iter().enumerate() {
            if i == j || !le(p, q) {
                continue;
            }
            let gm: GradedMap = gens_all[i]
                .iter()
                .map(|(&d, gs)| (d, gs.iter().map(|g| unit_vector(index_all[j][g])).collect()))
                .collect();
            maps.insert((i, j), gm);
        }
    }
    Ok(BoxProduct {
        module: PerverseGradedModule { n, perversities, groups, maps },
        arity: factors.len(),
        gens: gens_all,
        index: index_all,
    })
}

/// `(A ⊠ B)^r = colim_{p+q ≤ r} A^p ⊗ B^q`.
pub fn boxtimes(a: &PerverseGradedModule, b: &PerverseGradedModule) -> Result<PerverseGradedModule> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch(a.n, b.n));
    }
    Ok(boxtimes_many(a.n, &[a, b])?.module)
}

/// Products `D^p ⊗ D^q → D^r` for `p + q ≤ r`, on generators.
#[derive(Clone, Debug, Default)]
pub struct RestrictedProductStructure {
    // (p, q, r) -> (da, db) -> [ga][gb] -> image in degree da + db
    table: BTreeMap<(usize, usize, usize), BTreeMap<(i64, i64), Vec<Vec<SparseVec>>>>,
}

impl RestrictedProductStructure {
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.table.keys().copied()
    }

    /// `μ(a, b)` for `a` in degree `da` at `p` and `b` in degree `db` at `q`.
    pub fn product(&self, t: (usize, usize, usize), da: i64, a: &SparseVec, db: i64, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        let Some(block) = self.table.get(&t).and_then(|m| m.get(&(da, db))) else { return out };
        for (i, x) in a {
            for (j, y) in b {
                axpy(&mut out, &(x * y), &block[*i][*j]);
            }
        }
        out
    }

    pub fn entry(&self, t: (usize, usize, usize), a: (i64, usize), b: (i64, usize)) -> Option<&SparseVec> {
        self.table.get(&t)?.get(&(a.0, b.0))?.get(a.1)?.get(b.1)
    }

    /// Negates one table entry; `false` if there is no such entry.
    pub fn negate_entry(&mut self, t: (usize, usize, usize), a: (i64, usize), b: (i64, usize)) -> bool {
        let Some(v) = self.table.get_mut(&t).and_then(|m| m.get_mut(&(a.0, b.0))).and_then(|m| m.get_mut(a.1)).and_then(|m| m.get_mut(b.1))
        else {
            return false;
        };
        for x in v.values_mut() {
            *x = -x.clone();
        }
        true
    }

    /// Enlarging `r` or shrinking `p`, `q` commutes with the products.
    pub fn check_compatibility(&self, m: &PerverseGradedModule) -> Result<()> {
        for (&(p, q, r), blocks) in &self.table {
            for &(p2, q2, r2) in self.table.keys() {
                let ps = m.perversities();
                if (p, q, r) == (p2, q2, r2) || !le(&ps[p], &ps[p2]) || !le(&ps[q], &ps[q2]) || !le(&ps[r], &ps[r2]) {
                    continue;
                }
                for (&(da, db), block) in blocks {
                    for (ga, row) in block.iter().enumerate() {
                        for (gb, prod) in row.iter().enumerate() {
                            let mut diff = m.image(r, r2, da + db, prod);
                            let a = m.image(p, p2, da, &unit_vector(ga));
                            let b = m.image(q, q2, db, &unit_vector(gb));
                            axpy(&mut diff, &-BigInt::one(), &self.product((p2, q2, r2), da, &a, db, &b));
                            if !m.is_zero(r2, da + db, &diff) {
                                return Err(Error::Invalid(format!(
                                    "products at ({}, {}, {}) and ({}, {}, {}) disagree",
                                    ps[p], ps[q], ps[r], ps[p2], ps[q2], ps[r2]
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `r ↦ S^{-n} I^r H_*(X)` with inclusion-induced structure maps and the
/// intersection products. Degrees are shifted: `I^rH_i` sits in `i - n`.
#[derive(Clone, Debug)]
pub struct IhModel {
    n: usize,
    module: PerverseGradedModule,
    generators: Vec<BTreeMap<i64, Vec<Chain>>>,
    gamma: SparseVec,
    products: RestrictedProductStructure,
}

/// Builds the model from exact homology and the products of generators.
pub fn build_ih_model(cx: &StratifiedComplex) -> Result<IhModel> {
    let n = cx.dim();
    let perversities = poset(n)?;
    let ihp = IhProducts::new(cx)?;
    let ni = n as i64;
    let mut generators = Vec::with_capacity(perversities.len());
    let mut ics = Vec::with_capacity(perversities.len());
    for p in &perversities {
        let ic = ihp.intersection_complex(p)?;
        if !ic.homology().is_torsion_free() {
            return Err(Error::ModeUnsupported(format!("torsion in I^{p}H_*")));
        }
        generators.push((0..=n).map(|i| (i as i64 - ni, ic.generators(i).to_vec())).filter(|(_, g)| !g.is_empty()).collect::<BTreeMap<_, _>>());
        ics.push(ic);
    }
    let index = |p: &Perversity| perversities.binary_search(p).expect("enumerated");
    let module = PerverseGradedModule::from_fn(
        n,
        |p| Ok(generators[index(p)].iter().map(|(&d, g)| (d, Presentation::free(g.len()))).collect()),
        |p, q, d| {
            generators[index(p)][&d]
                .iter()
                .map(|g| {
                    let class = ics[index(q)].class_of(g).ok_or_else(|| Error::Invalid(format!("generator of I^{p}H is not {q}-allowable")))?;
                    Ok(crate::linalg::sparsify(&class))
                })
                .collect()
        },
    )?;
    module.check_functorial()?;

    let mut products = RestrictedProductStructure::default();
    for (pi, p) in perversities.iter().enumerate() {
        for (qi, q) in perversities.iter().enumerate() {
            for (ri, r) in perversities.iter().enumerate() {
                if !sum_below(&perversities, &[pi, qi], r) {
                    continue;
                }
                let mut blocks = BTreeMap::new();
                for (&da, ga) in &generators[pi] {
                    for (&db, gb) in &generators[qi] {
                        if da + db < -ni {
                            continue;
                        }
                        let mut block = Vec::with_capacity(ga.len());
                        for a in ga {
                            let mut row = Vec::with_capacity(gb.len());
                            for b in gb {
                                let coords = ihp.product_class(a, p, b, q, r)?;
                                let mut v = SparseVec::new();
                                for (i, x) in coords.into_iter().enumerate() {
                                    if !x.is_integer() {
                                        return Err(Error::ModeUnsupported(format!("non-integral product at ({p}, {q}, {r})")));
                                    }
                                    add_entry(&mut v, i, x.to_integer());
                                }
                                row.push(v);
                            }
                            block.push(row);
                        }
                        blocks.insert((da, db), block);
                    }
                }
                products.table.insert((pi, qi, ri), blocks);
            }
        }
    }
    products.check_compatibility(&module)?;

    let gamma = ics[0].class_of(&fundamental_cycle(cx)?).map(|c| crate::linalg::sparsify(&c)).ok_or(Error::NotOriented)?;
    Ok(IhModel { n, module, generators, gamma, products })
}

impl IhModel {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn module(&self) -> &PerverseGradedModule {
        &self.module
    }

    /// Homology generators of `I^pH` in shifted degree `d`.
    pub fn generators(&self, p: usize, d: i64) -> &[Chain] {
        self.generators[p].get(&d).map_or(&[], Vec::as_slice)
    }

    /// `[Γ]` in `I^0H_n`, shifted degree 0.
    pub fn gamma(&self) -> &SparseVec {
        &self.gamma
    }

    pub fn products(&self) -> &RestrictedProductStructure {
        &self.products
    }

    pub fn products_mut(&mut self) -> &mut RestrictedProductStructure {
        &mut self.products
    }

    /// Index of the zero perversity.
    pub fn zero(&self) -> usize {
        0
    }

    fn cover(&self, p: usize, q: usize) -> Result<usize> {
        let ps = self.module.perversities();
        let s = perversity::minimal_cover(&ps[p], &ps[q])?;
        Ok(self.module.index(&s).expect("enumerated"))
    }

    /// Left-iterated minimal cover; the zero perversity for no entries.
    pub fn target(&self, tuple: &[usize]) -> Result<usize> {
        let Some((&first, rest)) = tuple.split_first() else { return Ok(self.zero()) };
        rest.iter().try_fold(first, |acc, &q| self.cover(acc, q))
    }

    /// The arity-`k` value `A_k = {S^{-n}I^⋆H}^{⊠k}`, with `A_0 = {ℤ[0]}`.
    pub fn arity(&self, k: usize) -> Result<BoxProduct> {
        boxtimes_many(self.n, &vec![&self.module; k])
    }

    /// Product of the classes in one fiber, left to right at iterated
    /// minimal covers; `None` when it vanishes for degree reasons.
    fn merge(&self, fiber: &[(usize, i64, SparseVec)]) -> Result<Option<(usize, i64, SparseVec)>> {
        let Some(((p0, d0, v0), rest)) = fiber.split_first() else {
            return Ok(Some((self.zero(), 0, self.gamma.clone())));
        };
        let (mut p, mut d, mut v) = (*p0, *d0, v0.clone());
        for (q, e, w) in rest {
            if d + e < -(self.n as i64) {
                return Ok(None);
            }
            let r = self.cover(p, *q)?;
            v = self.products.product((p, *q, r), d, &v, *e, w);
            p = r;
            d += e;
        }
        Ok(if v.is_empty() { None } else { Some((p, d, v)) })
    }
}

/// `R_*` for `R: k̄ → l̄` given by `map[i] = R(i)` (zero-based): the
/// Koszul-signed permutation sorting the slots by image, the products
/// along each fiber, and `[Γ]` at the zero perversity in every slot
/// outside the image.
pub fn apply_set_map(model: &IhModel, map: &[usize], l: usize, x: &Element) -> Result<Element> {
    if map.iter().any(|&j| j >= l) {
        return Err(Error::Invalid(format!("set map {map:?} does not land in {l} points")));
    }
    let mut out = Element::new();
    for (g, c) in x {
        if g.arity() != map.len() {
            return Err(Error::Invalid(format!("element of arity {} under a map from {} points", g.arity(), map.len())));
        }
        let k = map.len();
        let mut sign = false;
        for i in 0..k {
            for j in i + 1..k {
                if map[i] > map[j] && (g.parts[i].0 * g.parts[j].0) % 2 != 0 {
                    sign = !sign;
                }
            }
        }
        let mut slots = Vec::with_capacity(l);
        let mut vanishes = false;
        for j in 0..l {
            let fiber: Vec<(usize, i64, SparseVec)> = (0..k)
                .filter(|&i| map[i] == j)
                .map(|i| (g.perversities[i], g.parts[i].0, unit_vector(g.parts[i].1)))
                .collect();
            match model.merge(&fiber)? {
                Some(s) => slots.push(s),
                None => {
                    vanishes = true;
                    break;
                }
            }
        }
        if vanishes {
            continue;
        }
        let c = if sign { -c.clone() } else { c.clone() };
        let mut terms: Vec<(BoxGen, BigInt)> = vec![(BoxGen { perversities: Vec::new(), parts: Vec::new() }, c)];
        for (p, d, v) in &slots {
            terms = terms
                .into_iter()
                .flat_map(|(h, a)| {
                    v.iter().map(move |(i, y)| {
                        let mut h = h.clone();
                        h.perversities.push(*p);
                        h.parts.push((*d, *i));
                        (h, &a * y)
                    })
                })
                .collect();
        }
        for (h, a) in terms {
            add_term(&mut out, h, a);
        }
    }
    Ok(out)
}

/// Every map `k̄ → l̄`, as value lists.
pub fn set_maps(k: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out.into_iter().flat_map(|m| (0..l).map(move |j| {
            let mut m = m.clone();
            m.push(j);
            m
        })).collect();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Naturality,
    Associativity,
    Commutativity,
    Unit,
    QuasiIsomorphism,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [Axiom::Naturality, Axiom::Associativity, Axiom::Commutativity, Axiom::Unit, Axiom::QuasiIsomorphism];
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Naturality => "naturality",
            Axiom::Associativity => "associativity",
            Axiom::Commutativity => "commutativity",
            Axiom::Unit => "unit",
            Axiom::QuasiIsomorphism => "quasi-isomorphism",
        };
        write!(f, "{s}")
    }
}

/// One axiom at one tuple of arities and one perversity.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub arities: Vec<usize>,
    pub perversity: Perversity,
    pub pass: bool,
    /// The first offending input when `pass` is false.
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn axiom_passes(&self, a: Axiom) -> bool {
        self.checks.iter().filter(|c| c.axiom == a).all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in Axiom::ALL {
            let all: Vec<&AxiomCheck> = self.checks.iter().filter(|c| c.axiom == a).collect();
            let bad = all.iter().filter(|c| !c.pass).count();
            writeln!(f, "{a}: {} ({} checks, {bad} failed)", if bad == 0 { "pass" } else { "FAIL" }, all.len())?;
        }
        for c in self.failures() {
            writeln!(f, "  {} arities {:?} at {}: {}", c.axiom, c.arities, c.perversity, c.detail)?;
        }
        writeln!(f, "note: zero differentials, so quasi-isomorphism is checked as isomorphism")
    }
}

/// The model with its arity values and the `⊠`-products the axioms need.
struct Leinster<'a> {
    model: &'a IhModel,
    arities: Vec<BoxProduct>,
    pairs: HashMap<(usize, usize), BoxProduct>,
    triples: HashMap<(usize, usize, usize), BoxProduct>,
}

impl<'a> Leinster<'a> {
    fn new(model: &'a IhModel, max: usize) -> Result<Self> {
        let n = model.n;
        let arities = (0..=max).map(|k| model.arity(k)).collect::<Result<Vec<_>>>()?;
        let mut pairs = HashMap::new();
        let mut triples = HashMap::new();
        for k in 0..=max {
            for l in 0..=max - k {
                pairs.insert((k, l), boxtimes_many(n, &[arities[k].module(), arities[l].module()])?);
                for m in 0..=max - k - l {
                    triples.insert((k, l, m), boxtimes_many(n, &[arities[k].module(), arities[l].module(), arities[m].module()])?);
                }
            }
        }
        Ok(Leinster { model, arities, pairs, triples })
    }

    fn gen_of(&self, k: usize, p: usize, part: (i64, usize)) -> &BoxGen {
        &self.arities[k].generators(p, part.0)[part.1]
    }

    fn part_of(&self, k: usize, p: usize, g: &BoxGen) -> Result<(i64, usize)> {
        let i = self.arities[k]
            .position(p, g)
            .ok_or_else(|| Error::Invalid(format!("{g:?} is not a generator of A_{k} at {}", self.model.module.perversities[p])))?;
        Ok((g.degree(), i))
    }

    /// `ζ_{k,l}: A_{k+l} → A_k ⊠ A_l`.
    fn zeta(&self, k: usize, x: &Element) -> Result<Element> {
        let mut out = Element::new();
        for (g, c) in x {
            let (a, b) = g.split(k);
            let l = b.arity();
            let p = self.model.target(&a.perversities)?;
            let q = self.model.target(&b.perversities)?;
            let label = BoxGen { perversities: vec![p, q], parts: vec![self.part_of(k, p, &a)?, self.part_of(l, q, &b)?] };
            add_term(&mut out, label, c.clone());
        }
        Ok(out)
    }

    /// The inverse of `ζ_{k,l}`: concatenation of labels.
    fn zeta_inv(&self, k: usize, l: usize, y: &Element) -> Element {
        let mut out = Element::new();
        for (g, c) in y {
            let a = self.gen_of(k, g.perversities[0], g.parts[0]);
            let b = self.gen_of(l, g.perversities[1], g.parts[1]);
            add_term(&mut out, a.join(b), c.clone());
        }
        out
    }

    /// `R_* ⊠ S_*` on `A_k ⊠ A_l`.
    fn box_maps(&self, (k, l): (usize, usize), r: &[usize], s: &[usize], (k2, l2): (usize, usize), y: &Element) -> Result<Element> {
        let mut out = Element::new();
        for (g, c) in y {
            let (p, q) = (g.perversities[0], g.perversities[1]);
            let ra = apply_set_map(self.model, r, k2, &generator(self.gen_of(k, p, g.parts[0])))?;
            let sb = apply_set_map(self.model, s, l2, &generator(self.gen_of(l, q, g.parts[1])))?;
            for (a, x) in &ra {
                for (b, z) in &sb {
                    let label = BoxGen { perversities: vec![p, q], parts: vec![self.part_of(k2, p, a)?, self.part_of(l2, q, b)?] };
                    add_term(&mut out, label, c * x * z);
                }
            }
        }
        Ok(out)
    }

    /// `(ζ_{k,l} ⊠ 1)` or `(1 ⊠ ζ_{l,m})` into the triple product.
    fn refine(&self, y: &Element, left: bool, (k, l, m): (usize, usize, usize)) -> Result<Element> {
        let mut out = Element::new();
        for (g, c) in y {
            let (split_slot, keep_slot, first) = if left { (0, 1, k) } else { (1, 0, l) };
            let big = if left { k + l } else { l + m };
            let inner = self.gen_of(big, g.perversities[split_slot], g.parts[split_slot]);
            for (h, x) in self.zeta(first, &generator(inner))? {
                let mut label = BoxGen { perversities: Vec::new(), parts: Vec::new() };
                if left {
                    label.perversities.extend(&h.perversities);
                    label.parts.extend(&h.parts);
                    label.perversities.push(g.perversities[keep_slot]);
                    label.parts.push(g.parts[keep_slot]);
                } else {
                    label.perversities.push(g.perversities[keep_slot]);
                    label.parts.push(g.parts[keep_slot]);
                    label.perversities.extend(&h.perversities);
                    label.parts.extend(&h.parts);
                }
                add_term(&mut out, label, c * x);
            }
        }
        Ok(out)
    }
}

fn show(e: &Element) -> String {
    let terms: Vec<String> = e.iter().map(|(g, c)| format!("{c}·{:?}{:?}", g.perversities, g.parts)).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Runs the five axioms on arities up to `max_arity` at every perversity.
///
/// Besides the diagrams, commutativity also checks that the arity-2
/// product is invariant under the block transposition, and associativity
/// that both ways of merging three slots agree.
pub fn check_leinster(model: &IhModel, max_arity: usize) -> Result<AxiomReport> {
    if max_arity > MAX_ARITY {
        return Err(Error::SizeLimit(format!("arity {max_arity} exceeds {MAX_ARITY}")));
    }
    let ld = Leinster::new(model, max_arity)?;
    let ps = model.module.perversities();
    let mut report = AxiomReport::default();
    let mut record = |axiom, arities: Vec<usize>, r: usize, failure: Option<String>| {
        report.checks.push(AxiomCheck {
            axiom,
            arities,
            perversity: ps[r].clone(),
            pass: failure.is_none(),
            detail: failure.unwrap_or_default(),
        });
    };

    for r in 0..ps.len() {
        for k in 0..=max_arity {
            for l in 0..=max_arity - k {
                let source = &ld.arities[k + l];
                let pair = &ld.pairs[&(k, l)];

                // naturality
                let mut failure = None;
                'nat: for k2 in 0..=max_arity {
                    for l2 in 0..=max_arity - k2 {
                        let target = &ld.pairs[&(k2, l2)];
                        for rm in set_maps(k, k2) {
                            for sm in set_maps(l, l2) {
                                let joint: Vec<usize> = rm.iter().copied().chain(sm.iter().map(|&j| k2 + j)).collect();
                                for g in source.all_generators(r) {
                                    let x = generator(g);
                                    let lhs = ld.zeta(k2, &apply_set_map(model, &joint, k2 + l2, &x)?)?;
                                    let rhs = ld.box_maps((k, l), &rm, &sm, (k2, l2), &ld.zeta(k, &x)?)?;
                                    if !target.equal(r, &lhs, &rhs)? {
                                        failure = Some(format!("R = {rm:?}, S = {sm:?} on {}: {} vs {}", show(&x), show(&lhs), show(&rhs)));
                                        break 'nat;
                                    }
                                }
                            }
                        }
                    }
                }
                record(Axiom::Naturality, vec![k, l], r, failure);

                // commutativity
                let swapped = &ld.pairs[&(l, k)];
                let tau: Vec<usize> = (0..k + l).map(|i| if i < k { l + i } else { i - k }).collect();
                let mut failure = None;
                for g in source.all_generators(r) {
                    let x = generator(g);
                    let mut lhs = Element::new();
                    for (h, c) in ld.zeta(k, &x)? {
                        let s = (h.parts[0].0 * h.parts[1].0) % 2 != 0;
                        let label = BoxGen { perversities: vec![h.perversities[1], h.perversities[0]], parts: vec![h.parts[1], h.parts[0]] };
                        add_term(&mut lhs, label, if s { -c } else { c });
                    }
                    let rhs = ld.zeta(l, &apply_set_map(model, &tau, k + l, &x)?)?;
                    if !swapped.equal(r, &lhs, &rhs)? {
                        failure = Some(format!("{}: {} vs {}", show(&x), show(&lhs), show(&rhs)));
                        break;
                    }
                }
                if failure.is_none() && k == 1 && l == 1 {
                    let one = &ld.arities[1];
                    for g in source.all_generators(r) {
                        let x = generator(g);
                        let direct = apply_set_map(model, &[0, 0], 1, &x)?;
                        let swapped = apply_set_map(model, &[0, 0], 1, &apply_set_map(model, &tau, 2, &x)?)?;
                        if !one.equal(r, &direct, &swapped)? {
                            failure = Some(format!("product of {} is not invariant under the transposition: {} vs {}", show(&x), show(&direct), show(&swapped)));
                            break;
                        }
                    }
                }
                record(Axiom::Commutativity, vec![k, l], r, failure);

                // quasi-isomorphism: ζ_{k,l} is an isomorphism
                let mut failure = None;
                'qi: {
                    for (&d, pres) in source.module().groups(r) {
                        for rel in pres.relations() {
                            let y = ld.zeta(k, &source.element(r, d, rel))?;
                            if !pair.is_zero(r, &y)? {
                                failure = Some(format!("ζ does not preserve a relation in degree {d}"));
                                break 'qi;
                            }
                        }
                    }
                    for (&d, pres) in pair.module().groups(r) {
                        for rel in pres.relations() {
                            let y = ld.zeta_inv(k, l, &pair.element(r, d, rel));
                            if !source.is_zero(r, &y)? {
                                failure = Some(format!("the inverse of ζ does not preserve a relation in degree {d}"));
                                break 'qi;
                            }
                        }
                    }
                    for g in source.all_generators(r) {
                        let x = generator(g);
                        if !source.equal(r, &ld.zeta_inv(k, l, &ld.zeta(k, &x)?), &x)? {
                            failure = Some(format!("not injective at {}", show(&x)));
                            break 'qi;
                        }
                    }
                    for g in pair.all_generators(r) {
                        let y = generator(g);
                        if !pair.equal(r, &ld.zeta(k, &ld.zeta_inv(k, l, &y))?, &y)? {
                            failure = Some(format!("not surjective at {}", show(&y)));
                            break 'qi;
                        }
                    }
                }
                record(Axiom::QuasiIsomorphism, vec![k, l], r, failure);

                // associativity
                for m in 0..=max_arity - k - l {
                    let total = &ld.arities[k + l + m];
                    let triple = &ld.triples[&(k, l, m)];
                    let mut failure = None;
                    for g in total.all_generators(r) {
                        let x = generator(g);
                        let lhs = ld.refine(&ld.zeta(k + l, &x)?, true, (k, l, m))?;
                        let rhs = ld.refine(&ld.zeta(k, &x)?, false, (k, l, m))?;
                        if !triple.equal(r, &lhs, &rhs)? {
                            failure = Some(format!("{}: {} vs {}", show(&x), show(&lhs), show(&rhs)));
                            break;
                        }
                    }
                    if failure.is_none() && (k, l, m) == (1, 1, 1) {
                        let one = &ld.arities[1];
                        for g in total.all_generators(r) {
                            let x = generator(g);
                            let left = apply_set_map(model, &[0, 0], 1, &apply_set_map(model, &[0, 0, 1], 2, &x)?)?;
                            let right = apply_set_map(model, &[0, 0], 1, &apply_set_map(model, &[0, 1, 1], 2, &x)?)?;
                            if !one.equal(r, &left, &right)? {
                                failure = Some(format!("triple product of {}: {} vs {}", show(&x), show(&left), show(&right)));
                                break;
                            }
                        }
                    }
                    record(Axiom::Associativity, vec![k, l, m], r, failure);
                }
            }

            // unit: (ζ_0 ⊠ 1) ζ_{0,k} against A_k ≅ ℤ[0] ⊠ A_k
            let ak = &ld.arities[k];
            let pair = &ld.pairs[&(0, k)];
            let mut failure = None;
            for g in ak.all_generators(r) {
                let x = generator(g);
                let lhs = ld.zeta(0, &x)?;
                let rhs = generator(&BoxGen { perversities: vec![model.zero(), r], parts: vec![(0, 0), ld.part_of(k, r, g)?] });
                if !pair.equal(r, &lhs, &rhs)? {
                    failure = Some(format!("{}: {} vs {}", show(&x), show(&lhs), show(&rhs)));
                    break;
                }
            }
            record(Axiom::Unit, vec![k], r, failure);
        }
        // ζ_0: A_0 → ℤ[0]
        let a0 = ld.arities[0].module().invariants(r);
        let ok = a0 == BTreeMap::from([(0, GroupInvariants { rank: 1, torsion: Vec::new() })]);
        record(Axiom::QuasiIsomorphism, vec![0], r, (!ok).then(|| "A_0 is not Z[0]".to_string()));
    }
    Ok(report)
}

/// `(R ∘ R')_* = R_* ∘ R'_*` for all composable maps between sets of at
/// most `max_arity` points, on `samples` random elements per map pair and
/// perversity. Returns the failures.
pub fn check_functoriality(model: &IhModel, max_arity: usize, samples: usize, rng: &mut impl Rng) -> Result<Vec<String>> {
    if max_arity > MAX_ARITY {
        return Err(Error::SizeLimit(format!("arity {max_arity} exceeds {MAX_ARITY}")));
    }
    let arities = (0..=max_arity).map(|k| model.arity(k)).collect::<Result<Vec<_>>>()?;
    let ps = model.module.perversities();
    let mut failures = Vec::new();
    for a in 0..=max_arity {
        for b in 0..=max_arity {
            for c in 0..=max_arity {
                for inner in set_maps(a, b) {
                    for outer in set_maps(b, c) {
                        let composite: Vec<usize> = inner.iter().map(|&i| outer[i]).collect();
                        for r in 0..ps.len() {
                            let gens: Vec<&BoxGen> = arities[a].all_generators(r).collect();
                            for _ in 0..samples {
                                let mut x = Element::new();
                                for g in &gens {
                                    add_term(&mut x, (*g).clone(), BigInt::from(rng.gen_range(-3i64..=3)));
                                }
                                let once = apply_set_map(model, &composite, c, &x)?;
                                let twice = apply_set_map(model, &outer, c, &apply_set_map(model, &inner, b, &x)?)?;
                                if !arities[c].equal(r, &once, &twice)? {
                                    failures.push(format!("{outer:?} after {inner:?} at {}", ps[r]));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn free_at(d: i64, g: usize) -> GradedGroup {
        GradedGroup::from([(d, Presentation::free(g))])
    }

    #[test]
    fn presentations() {
        let z2 = Presentation::cyclic(2.into());
        assert_eq!(z2.invariants(), GroupInvariants { rank: 0, torsion: vec![2.into()] });
        assert_eq!(z2.tensor(&z2).invariants().torsion, vec![BigInt::from(2)]);
        assert_eq!(z2.tensor(&Presentation::cyclic(3.into())).invariants().to_string(), "0");
        assert_eq!(Presentation::free(2).tensor(&Presentation::free(3)).invariants().to_string(), "Z^6");
        assert!(z2.is_zero(&SparseVec::from([(0, BigInt::from(4))])));
        assert!(!z2.is_zero(&SparseVec::from([(0, BigInt::from(3))])));
    }

    #[test]
    fn single_perversity_boxtimes_is_the_tensor_product() {
        let a = PerverseGradedModule::constant(2, free_at(-1, 2)).unwrap();
        let b = PerverseGradedModule::constant(2, GradedGroup::from([(0, Presentation::free(1)), (-1, Presentation::cyclic(2.into()))])).unwrap();
        let ab = boxtimes(&a, &b).unwrap();
        let inv = ab.invariants(0);
        assert_eq!(inv[&-1].to_string(), "Z^2");
        assert_eq!(inv[&-2].to_string(), "Z/2 + Z/2");
    }

    #[test]
    fn unit_of_boxtimes() {
        let u = PerverseGradedModule::unit(4).unwrap();
        let a = PerverseGradedModule::from_fn(
            4,
            |p| Ok(if p.at(4) >= 1 { free_at(-2, 2) } else { GradedGroup::new() }),
            |p, _, _| Ok((0..if p.at(4) >= 1 { 2 } else { 0 }).map(unit_vector).collect()),
        )
        .unwrap();
        a.check_functorial().unwrap();
        assert!(boxtimes(&a, &u).unwrap().same_invariants(&a));
        assert!(boxtimes(&u, &a).unwrap().same_invariants(&a));
    }

    #[test]
    fn torus_model() {
        let m = build_ih_model(&fixtures::torus()).unwrap();
        assert_eq!(m.module().perversities().len(), 1);
        let inv = m.module().invariants(0);
        assert_eq!(inv[&-2].rank + inv[&-1].rank + inv[&0].rank, 4);
        assert_eq!(m.gamma(), &unit_vector(0));
        // Γ is a unit for the arity-2 product
        let a = BoxGen { perversities: vec![0, 0], parts: vec![(-1, 0), (0, 0)] };
        let prod = apply_set_map(&m, &[0, 0], 1, &generator(&a)).unwrap();
        assert_eq!(prod, generator(&BoxGen { perversities: vec![0], parts: vec![(-1, 0)] }));
    }

    #[test]
    fn set_map_counts() {
        assert_eq!(set_maps(2, 3).len(), 9);
        assert_eq!(set_maps(0, 2), vec![Vec::<usize>::new()]);
        assert!(set_maps(1, 0).is_empty());
    }
}
