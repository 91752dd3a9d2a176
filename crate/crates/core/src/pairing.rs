//! Intersection products on (intersection) homology.
//!
//! On a complex with empty singular set the product is the cup/cap formula
//! `C ⋔ D = (ΥC ∪ ΥD) ∩ Γ`, where `Υ` inverts `· ∩ Γ` on homology.
//!
//! With a singular set, `ΥC` must be taken among cochains whose dual blocks
//! are allowable, otherwise `ΥC ∩ Γ` need not represent `C` in `I^pH`. Dual
//! blocks live in the barycentric subdivision `K'`: the block of a
//! `d`-simplex `τ` is spanned by the flags `τ = σ_0 < ... < σ_{n-d}`, and
//! `θ^*x ∩ Sd Γ = Σ_τ ±x(τ) D(τ)`. The product is `θ^*(ΥC) ∩ Sd D`, a cycle of
//! `I^rC_*(K')`, expressed back in the generators of `I^rH_*(K)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chain::{cap, cap_sign, cup, fundamental_cycle, solve_dual_in, Chain, Cochain};
use crate::complex::{Simplex, StratifiedComplex};
use crate::error::{Error, Result};
use crate::homology::{allowable, allowable_chain, IntersectionComplex};
use crate::linalg::{Ring, Smith, SparseMatrix, SparseVec, Track};
use crate::perversity::{self, minimal_cover, Perversity};
use crate::subdivision::Subdivision;

pub use crate::perversity::target_perversity;

/// `ΥC`: a cocycle `y` with `y ∩ Γ` homologous to `C`, integral when possible.
pub fn upsilon(cx: &StratifiedComplex, c: &Chain) -> Result<Cochain<BigRational>> {
    let sol = match solve_dual_in(cx, c, Ring::Integers) {
        Ok(s) => s,
        Err(Error::DualizationFailed { .. }) => solve_dual_in(cx, c, Ring::Rationals)?,
        Err(e) => return Err(e),
    };
    let m = cx.dim();
    let y = sol.cocycle;
    Ok(if (m * y.degree()) % 2 == 1 { y.neg() } else { y })
}

/// `(ΥC ∪ ΥD) ∩ Γ`, a cycle of degree `i + j - n`.
pub fn gm_product(cx: &StratifiedComplex, c: &Chain, d: &Chain) -> Result<Chain<BigRational>> {
    let n = cx.dim() as i64;
    let degree = c.degree() + d.degree() - n;
    if degree < 0 {
        return Ok(Chain::zero(degree));
    }
    let yc = upsilon(cx, c)?;
    let yd = upsilon(cx, d)?;
    let gamma = fundamental_cycle(cx)?.to_rational();
    Ok(cap(&cup(&yc, &yd, cx), &gamma))
}

/// Left-iterated [`gm_product`]; `μ_1` is the identity.
pub fn mu_k(cx: &StratifiedComplex, chains: &[Chain]) -> Result<Chain<BigRational>> {
    let (first, rest) = chains.split_first().ok_or_else(|| Error::Invalid("mu_k of no chains".into()))?;
    let mut acc = first.to_rational();
    for c in rest {
        let (z, l) = clear_denominators(&acc);
        acc = gm_product(cx, &z, c)?.scale(&BigRational::new(BigInt::one(), l));
    }
    Ok(acc)
}

/// `L·c` with integer coefficients, and `L`.
pub fn clear_denominators(c: &Chain<BigRational>) -> (Chain, BigInt) {
    let l = c.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let z = c.scale(&BigRational::from_integer(l.clone())).to_integer().expect("cleared");
    (z, l)
}

fn cochain_denominators(x: &Cochain<BigRational>) -> BigInt {
    x.values().values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

type Flags = Arc<Vec<bool>>;

/// Perversity-aware products on one complex, with cached subcomplexes.
pub struct IhProducts {
    cx: StratifiedComplex,
    sd: Option<Subdivision>,
    base_ics: Mutex<HashMap<Perversity, Arc<IntersectionComplex>>>,
    sd_allowed: Mutex<HashMap<(Perversity, usize), Flags>>,
    dual_allowed: Mutex<HashMap<(Perversity, usize), Flags>>,
}

impl IhProducts {
    pub fn new(cx: &StratifiedComplex) -> Result<Self> {
        cx.require_valid()?;
        let sd = if cx.is_manifold_stratified() { None } else { Some(Subdivision::new(cx)?) };
        Ok(IhProducts {
            cx: cx.clone(),
            sd,
            base_ics: Mutex::default(),
            sd_allowed: Mutex::default(),
            dual_allowed: Mutex::default(),
        })
    }

    /// Forces the dual-block route even when the singular set is empty.
    pub fn with_subdivision(cx: &StratifiedComplex) -> Result<Self> {
        let mut s = Self::new(cx)?;
        if s.sd.is_none() {
            s.sd = Some(Subdivision::new(cx)?);
        }
        Ok(s)
    }

    pub fn complex(&self) -> &StratifiedComplex {
        &self.cx
    }

    pub fn uses_subdivision(&self) -> bool {
        self.sd.is_some()
    }

    /// `I^pC_*` of the base complex.
    pub fn intersection_complex(&self, p: &Perversity) -> Result<Arc<IntersectionComplex>> {
        if let Some(ic) = self.base_ics.lock().expect("poisoned").get(p) {
            return Ok(ic.clone());
        }
        let ic = Arc::new(IntersectionComplex::new(&self.cx, Some(p))?);
        self.base_ics.lock().expect("poisoned").insert(p.clone(), ic.clone());
        Ok(ic)
    }

    fn sd_allowed(&self, sd: &Subdivision, p: &Perversity, d: usize) -> Result<Flags> {
        let key = (p.clone(), d);
        if let Some(f) = self.sd_allowed.lock().expect("poisoned").get(&key) {
            return Ok(f.clone());
        }
        let k = sd.complex();
        let flags = Arc::new(k.simplices(d).iter().map(|s| allowable(k, s, p)).collect::<Result<Vec<_>>>()?);
        self.sd_allowed.lock().expect("poisoned").insert(key, flags.clone());
        Ok(flags)
    }

    /// `d`-simplices of the base whose dual blocks are `p`-allowable.
    fn dual_allowed(&self, sd: &Subdivision, p: &Perversity, d: usize) -> Result<Flags> {
        let key = (p.clone(), d);
        if let Some(f) = self.dual_allowed.lock().expect("poisoned").get(&key) {
            return Ok(f.clone());
        }
        let n = self.cx.dim();
        let k = sd.complex();
        let top = self.sd_allowed(sd, p, n - d)?;
        let mut flags = Vec::with_capacity(self.cx.count(d));
        for (i, _) in self.cx.simplices(d).iter().enumerate() {
            let mut ok = true;
            let mut stack = vec![(d, i, vec![sd.barycenter(self.cx.simplex(d, i)).expect("barycenter")])];
            while let Some((dim, idx, verts)) = stack.pop() {
                if dim == n {
                    let mut v = verts.clone();
                    v.sort_unstable();
                    let j = k.index_of(&Simplex::from_sorted(v)).expect("flag simplex");
                    if !top[j] {
                        ok = false;
                        break;
                    }
                    continue;
                }
                for &c in self.cx.cofaces(dim, idx) {
                    let mut v = verts.clone();
                    v.push(sd.barycenter(self.cx.simplex(dim + 1, c)).expect("barycenter"));
                    stack.push((dim + 1, c, v));
                }
            }
            flags.push(ok);
        }
        let flags = Arc::new(flags);
        self.dual_allowed.lock().expect("poisoned").insert(key, flags.clone());
        Ok(flags)
    }

    /// `ΥC` for a `p`-allowable cycle `C`; with a singular set, supported
    /// on simplices with `p`-allowable dual blocks.
    pub fn dual(&self, c: &Chain, p: &Perversity) -> Result<Cochain<BigRational>> {
        if !c.boundary().is_zero() || !allowable_chain(&self.cx, c, p)? {
            return Err(Error::NotInDomain(format!("not a {p}-allowable cycle")));
        }
        let Some(sd) = &self.sd else {
            return upsilon(&self.cx, c);
        };
        let n = self.cx.dim();
        let i = usize::try_from(c.degree()).ok().filter(|&i| i <= n).ok_or_else(|| Error::NotInDomain("degree".into()))?;
        let d = n - i;
        let k = sd.complex();
        let allowed_tau = self.dual_allowed(sd, p, d)?;
        let cols_x: Vec<usize> = (0..allowed_tau.len()).filter(|&t| allowed_tau[t]).collect();
        let col_of_tau: HashMap<usize, usize> = cols_x.iter().enumerate().map(|(a, &t)| (t, a)).collect();
        let allowed_b = if i < n { self.sd_allowed(sd, p, i + 1)? } else { Arc::new(Vec::new()) };
        let cols_b: Vec<usize> = (0..allowed_b.len()).filter(|&j| allowed_b[j]).collect();

        let n_delta = if d < n { self.cx.count(d + 1) } else { 0 };
        let mut mat = SparseMatrix::zeros(n_delta + k.count(i), cols_x.len() + cols_b.len());
        if d < n {
            for (row, sigma) in self.cx.simplices(d + 1).iter().enumerate() {
                for (f_i, f) in sigma.facets() {
                    let t = self.cx.index_of(&f).expect("closure");
                    if let Some(&col) = col_of_tau.get(&t) {
                        mat.add_to(row, col, if f_i % 2 == 0 { BigInt::one() } else { -BigInt::one() });
                    }
                }
            }
        }
        let s_cap = cap_sign(d, i);
        for top in k.simplices(n) {
            let Some((tau, neg)) = sd.theta_simplex(&top.slice(i, n)) else { continue };
            let Some(&col) = col_of_tau.get(&self.cx.index_of(&tau).expect("image in base")) else { continue };
            let front = k.index_of(&top.slice(0, i)).expect("closure");
            let o = i64::from(k.orientation(top));
            let v = if s_cap ^ neg { -o } else { o };
            mat.add_to(n_delta + front, col, BigInt::from(v));
        }
        for (a, &j) in cols_b.iter().enumerate() {
            for (f_i, f) in k.simplex(i + 1, j).facets() {
                let row = k.index_of(&f).expect("closure");
                mat.add_to(n_delta + row, cols_x.len() + a, if f_i % 2 == 0 { -BigInt::one() } else { BigInt::one() });
            }
        }
        let mut rhs = SparseVec::new();
        for (s, x) in sd.subdivide(c).iter() {
            rhs.insert(n_delta + k.index_of(s).expect("subdivided simplex"), x.clone());
        }
        let sol = solve(&mat, &rhs).ok_or_else(|| Error::DualizationFailed {
            coefficients: "rationals",
            reason: format!("no cocycle with {p}-allowable dual blocks represents the class"),
        })?;
        Cochain::from_values(
            d,
            cols_x
                .iter()
                .zip(sol)
                .filter(|(_, v)| !v.is_zero())
                .map(|(&t, v)| (self.cx.simplex(d, t).clone(), v)),
        )
    }

    /// Coordinates of the class of `C ⋔ D` against the generators of `I^rH_*`.
    pub fn product_class(&self, c: &Chain, p: &Perversity, d: &Chain, q: &Perversity, r: &Perversity) -> Result<Vec<BigRational>> {
        let n = self.cx.dim() as i64;
        if !perversity::collection_leq(&perversity::PerversityCollection::new(vec![p.clone(), q.clone()])?, r)? {
            return Err(Error::NotInDomain(format!("{p} + {q} is not below {r}")));
        }
        let e = c.degree() + d.degree() - n;
        if e < 0 {
            return Ok(Vec::new());
        }
        let e = e as usize;
        // a class through the singular set may have no dual-block cocycle;
        // then dualize `D` instead and apply the commutativity sign
        let (y, other, other_p, neg) = match self.dual(c, p) {
            Ok(y) => (y, d, q, false),
            Err(Error::DualizationFailed { .. }) => {
                let y = self.dual(d, q)?;
                let s = (n - c.degree()) * (n - d.degree());
                (y, c, p, s % 2 != 0)
            }
            Err(err) => return Err(err),
        };
        if !other.boundary().is_zero() || !allowable_chain(&self.cx, other, other_p)? {
            return Err(Error::NotInDomain(format!("not a {other_p}-allowable cycle")));
        }
        let target = self.intersection_complex(r)?;
        let mut l = BigRational::from_integer(cochain_denominators(&y));
        let y_int = y.scale(&l).to_integer().expect("denominators cleared");
        if neg {
            l = -l;
        }
        let scale_back = |v: Vec<BigRational>| v.into_iter().map(|x| x / &l).collect();

        let Some(sd) = &self.sd else {
            let z = cap(&y_int, other);
            let coords = target.class_of(&z).ok_or_else(|| Error::Invalid("product is not an allowable cycle".into()))?;
            return Ok(scale_back(coords.into_iter().map(BigRational::from_integer).collect()));
        };

        let k = sd.complex();
        let z = cap(&sd.pullback(&y_int), &sd.subdivide(other));
        if !allowable_chain(k, &z, r)? {
            return Err(Error::Invalid(format!("product chain is not {r}-allowable")));
        }
        let gens = target.generators(e);
        let allowed_b = if e < k.dim() { self.sd_allowed(sd, r, e + 1)? } else { Arc::new(Vec::new()) };
        let cols_b: Vec<usize> = (0..allowed_b.len()).filter(|&j| allowed_b[j]).collect();
        let mut columns: Vec<SparseVec> = Vec::with_capacity(gens.len() + cols_b.len());
        for g in gens {
            let mut v = SparseVec::new();
            for (s, x) in sd.subdivide(g).iter() {
                v.insert(k.index_of(s).expect("subdivided simplex"), x.clone());
            }
            columns.push(v);
        }
        for &j in &cols_b {
            let mut v = SparseVec::new();
            for (f_i, f) in k.simplex(e + 1, j).facets() {
                v.insert(k.index_of(&f).expect("closure"), if f_i % 2 == 0 { BigInt::one() } else { -BigInt::one() });
            }
            columns.push(v);
        }
        let mat = SparseMatrix::from_columns(k.count(e), &columns);
        let mut rhs = SparseVec::new();
        for (s, x) in z.iter() {
            rhs.insert(k.index_of(s).expect("closure"), x.clone());
        }
        let sol = solve(&mat, &rhs).ok_or_else(|| Error::Invalid("product class not found in the target basis".into()))?;
        Ok(scale_back(sol.into_iter().take(gens.len()).collect()))
    }

    /// `C ⋔ D` at the minimal cover of `p` and `q`, as `(r, coordinates)`.
    pub fn product(&self, c: &Chain, p: &Perversity, d: &Chain, q: &Perversity) -> Result<(Perversity, Vec<BigRational>)> {
        let r = minimal_cover(p, q)?;
        let coords = self.product_class(c, p, d, q, &r)?;
        Ok((r, coords))
    }

    /// A representative on the base complex of a rational class.
    pub fn representative(&self, r: &Perversity, degree: usize, coords: &[BigRational]) -> Result<Chain<BigRational>> {
        let ic = self.intersection_complex(r)?;
        let mut out = Chain::zero(degree as i64);
        for (g, a) in ic.generators(degree).iter().zip(coords) {
            out.add_assign(&g.to_rational().scale(a));
        }
        Ok(out)
    }

    /// Class of an `r`-allowable cycle, rational coordinates.
    pub fn class_of(&self, c: &Chain<BigRational>, r: &Perversity) -> Result<Vec<BigRational>> {
        let (z, l) = clear_denominators(c);
        let ic = self.intersection_complex(r)?;
        let v = ic.class_of(&z).ok_or_else(|| Error::NotInDomain(format!("not a {r}-allowable cycle")))?;
        Ok(v.into_iter().map(|x| BigRational::new(x, l.clone())).collect())
    }

    /// Left-iterated product of `(C_i, p_i)`, landing at the iterated minimal
    /// cover: `(r, degree, coordinates)`. A negative degree has no classes.
    pub fn mu_k(&self, items: &[(Chain, Perversity)]) -> Result<(Perversity, i64, Vec<BigRational>)> {
        let ((c0, p0), rest) = items.split_first().ok_or_else(|| Error::Invalid("mu_k of no chains".into()))?;
        let n = self.cx.dim() as i64;
        let mut p = p0.clone();
        let mut degree = c0.degree();
        let mut coords = self.class_of(&c0.to_rational(), p0)?;
        for (c, q) in rest {
            let r = minimal_cover(&p, q)?;
            let e = degree + c.degree() - n;
            if e < 0 {
                return Ok((r, e, Vec::new()));
            }
            let rep = self.representative(&p, degree as usize, &coords)?;
            let (z, l) = clear_denominators(&rep);
            coords = self
                .product_class(&z, &p, c, q, &r)?
                .into_iter()
                .map(|x| x / BigRational::from_integer(l.clone()))
                .collect();
            p = r;
            degree = e;
        }
        Ok((p, degree, coords))
    }
}

/// `M x = b`, integers first, then rationals.
fn solve(mat: &SparseMatrix, rhs: &SparseVec) -> Option<Vec<BigRational>> {
    let smith = Smith::compute(mat, Track::SOLVE);
    if let Some(x) = smith.solve_int(rhs) {
        return Some(crate::linalg::densify(&x, mat.cols()).into_iter().map(BigRational::from_integer).collect());
    }
    smith.solve_rat(rhs)
}

/// Products of generator bases, with coordinates in the target basis.
#[derive(Clone, Debug)]
pub struct PairingMatrix {
    pub rows: Vec<Chain>,
    pub cols: Vec<Chain>,
    pub target: Vec<Chain>,
    pub entries: Vec<Vec<std::result::Result<Vec<BigRational>, String>>>,
}

impl PairingMatrix {
    /// Entries as integers when the target has rank one.
    pub fn scalar_matrix(&self) -> Option<Vec<Vec<BigInt>>> {
        if self.target.len() != 1 {
            return None;
        }
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.as_ref().ok().filter(|v| v[0].is_integer()).map(|v| v[0].to_integer()))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for PairingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = |e: &std::result::Result<Vec<BigRational>, String>| match e {
            Ok(v) if v.len() == 1 => v[0].to_string(),
            Ok(v) => format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
            Err(_) => "fail".to_string(),
        };
        let cells: Vec<Vec<String>> = self.entries.iter().map(|r| r.iter().map(cell).collect()).collect();
        let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
        for row in &cells {
            let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "[{}]", padded.join(" "))?;
        }
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if let Err(msg) = e {
                    writeln!(f, "cell ({i},{j}): {msg}")?;
                }
            }
        }
        Ok(())
    }
}

/// `IH^p_i × IH^q_j -> IH^r_{i+j-n}` on generator bases.
pub fn pairing_matrix(
    prod: &IhProducts,
    p: &Perversity,
    q: &Perversity,
    i: usize,
    j: usize,
    r: &Perversity,
) -> Result<PairingMatrix> {
    if !perversity::collection_leq(&perversity::PerversityCollection::new(vec![p.clone(), q.clone()])?, r)? {
        return Err(Error::NotInDomain(format!("{p} + {q} is not below {r}")));
    }
    let rows = prod.intersection_complex(p)?.generators(i).to_vec();
    let cols = prod.intersection_complex(q)?.generators(j).to_vec();
    let n = prod.complex().dim();
    let target = if i + j >= n { prod.intersection_complex(r)?.generators(i + j - n).to_vec() } else { Vec::new() };
    let entries = rows
        .iter()
        .map(|c| cols.iter().map(|d| prod.product_class(c, p, d, q, r).map_err(|e| e.to_string())).collect())
        .collect();
    Ok(PairingMatrix { rows, cols, target, entries })
}

/// One stratum of an [`AuditReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditRow {
    pub kappa: usize,
    pub lhs: i64,
    pub rhs: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
}

impl AuditReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let verdict = if r.pass { "ok" } else { "FAIL" };
            writeln!(f, "kappa {}: dim {} <= {}  {verdict}", r.kappa, r.lhs, r.rhs)?;
        }
        Ok(())
    }
}

/// `dim(|C| ∩ |D| ∩ X_κ) ≤ (i + j - n) - (n - κ) + r(n - κ)` for each stratum
/// (with `r(0) = 0` at `κ = n`). An empty intersection passes.
pub fn allowability_audit(cx: &StratifiedComplex, c: &Chain, d: &Chain, r: &Perversity) -> Result<AuditReport> {
    let n = cx.dim();
    if r.n() != n {
        return Err(Error::DimensionMismatch(n, r.n()));
    }
    let e = c.degree() + d.degree() - n as i64;
    let mut meets: Vec<Simplex> = Vec::new();
    for s in c.support() {
        for t in d.support() {
            if let Some(f) = Simplex::common_face([s, t].into_iter()) {
                meets.push(f);
            }
        }
    }
    meets.sort();
    meets.dedup();
    let mut rows = Vec::new();
    for kappa in (0..n.saturating_sub(1)).chain(std::iter::once(n)) {
        let mut lhs = -1i64;
        for f in &meets {
            lhs = lhs.max(cx.open_stratum_dim(f, kappa)?);
        }
        let codim = n - kappa;
        let rv = if codim >= 2 { r.at(codim) as i64 } else { 0 };
        let rhs = e - codim as i64 + rv;
        rows.push(AuditRow { kappa, lhs, rhs, pass: lhs < 0 || lhs <= rhs });
    }
    Ok(AuditReport { rows })
}
