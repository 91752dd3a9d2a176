//! Triangulated stratified pseudomanifolds.
//!
//! A complex is stored as the face closure of its facets. Every simplex
//! carries a depth: the least `m` with the simplex inside the skeleton `X^m`.
//! Depths default to `n` and are lowered by overrides, which propagate to
//! faces, so the skeleta are subcomplexes by construction.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;

use crate::error::{Error, Result};

/// Sorted list of distinct vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts the vertices; rejects repeats and the empty list.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.is_empty() {
            return Err(Error::Invalid("empty simplex".into()));
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("repeated vertex in {vertices:?}")));
        }
        Ok(Simplex(vertices))
    }

    /// Caller guarantees the list is strictly increasing.
    pub fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]), "unsorted {vertices:?}");
        Simplex(vertices)
    }

    pub fn vertex(v: usize) -> Self {
        Simplex(vec![v])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.0
    }

    /// The face opposite the `i`-th vertex; `None` for a vertex.
    pub fn face(&self, i: usize) -> Option<Simplex> {
        if self.0.len() < 2 {
            return None;
        }
        let mut v = self.0.clone();
        v.remove(i);
        Some(Simplex(v))
    }

    /// `(i, face opposite vertex i)` for each codimension-one face.
    pub fn facets(&self) -> Vec<(usize, Simplex)> {
        (0..self.0.len()).filter_map(|i| self.face(i).map(|f| (i, f))).collect()
    }

    /// All non-empty faces, including the simplex itself.
    pub fn all_faces(&self) -> Vec<Simplex> {
        let k = self.0.len();
        (1u64..(1 << k))
            .map(|mask| Simplex((0..k).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect()))
            .collect()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    /// Vertices `from..=to`, in order.
    pub fn slice(&self, from: usize, to: usize) -> Simplex {
        Simplex(self.0[from..=to].to_vec())
    }

    /// Common face of several simplices, `None` when they share no vertex.
    pub fn common_face<'a>(mut simplices: impl Iterator<Item = &'a Simplex>) -> Option<Simplex> {
        let first = simplices.next()?;
        let mut common = first.0.clone();
        for s in simplices {
            common.retain(|v| s.0.binary_search(v).is_ok());
        }
        (!common.is_empty()).then_some(Simplex(common))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Sign of the permutation sorting `v` (0 if `v` has repeats), with the sorted list.
pub fn sort_with_sign(v: &[usize]) -> (i32, Vec<usize>) {
    let mut w = v.to_vec();
    let mut sign = 1;
    // insertion sort keeps the swap count, inputs are short
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            w.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return (0, w);
    }
    (sign, w)
}

/// One violated invariant and a simplex witnessing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Simplex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    /// A maximal simplex of dimension below `n`.
    Impure,
    /// `depth(s) < dim(s)`.
    DepthBelowDimension,
    /// A simplex of depth `n - 1`; the singular set must have codimension two.
    CodimensionOneStratum,
    /// An `(n-1)`-simplex not in exactly two `n`-simplices.
    NotPseudomanifold,
    /// An `n`-simplex without an orientation sign.
    MissingOrientation,
    /// An `(n-1)`-simplex whose induced orientations do not cancel.
    IncoherentOrientation,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::Impure => "impure",
            ViolationKind::DepthBelowDimension => "depth-below-dimension",
            ViolationKind::CodimensionOneStratum => "codimension-one-stratum",
            ViolationKind::NotPseudomanifold => "not-pseudomanifold",
            ViolationKind::MissingOrientation => "missing-orientation",
            ViolationKind::IncoherentOrientation => "incoherent-orientation",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid: yes");
        }
        writeln!(f, "valid: no")?;
        for v in &self.violations {
            writeln!(f, "violation: {} {}", v.kind, v.witness)?;
        }
        Ok(())
    }
}

/// How depths are assigned when building a complex.
pub enum DepthSpec<'a> {
    /// Overrides on chosen simplices; each lowers the depth of all its faces.
    Overrides(&'a [(Simplex, usize)]),
    /// Depth given directly for every simplex.
    Function(&'a dyn Fn(&Simplex) -> usize),
}

/// Orientation input when building a complex.
pub enum OrientationSpec {
    /// Find a coherent orientation, if the complex is orientable.
    Auto,
    /// One sign per facet, in facet order.
    Signs(Vec<i8>),
}

/// A finite simplicial complex with a skeleton filtration and orientation.
#[derive(Debug)]
pub struct StratifiedComplex {
    name: String,
    n: usize,
    vertex_count: usize,
    coords: Option<Vec<Vec<BigRational>>>,
    facets: Vec<Simplex>,
    // simplices by dimension, each list sorted
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    depth: Vec<Vec<usize>>,
    cofaces: Vec<Vec<Vec<usize>>>,
    orientation: Vec<i8>,
    report: OnceLock<ValidationReport>,
}

impl Clone for StratifiedComplex {
    fn clone(&self) -> Self {
        StratifiedComplex {
            name: self.name.clone(),
            n: self.n,
            vertex_count: self.vertex_count,
            coords: self.coords.clone(),
            facets: self.facets.clone(),
            simplices: self.simplices.clone(),
            index: self.index.clone(),
            depth: self.depth.clone(),
            cofaces: self.cofaces.clone(),
            orientation: self.orientation.clone(),
            report: OnceLock::new(),
        }
    }
}


impl StratifiedComplex {
    /// Builds the face closure of `facets`. Vertex indices must be `< vertex_count`.
    pub fn new(
        name: impl Into<String>,
        n: usize,
        vertex_count: usize,
        facets: Vec<Simplex>,
        depth: DepthSpec<'_>,
        orientation: OrientationSpec,
    ) -> Result<Self> {
        for f in &facets {
            if f.dim() > n {
                return Err(Error::Invalid(format!("facet {f} has dimension above {n}")));
            }
            if let Some(&v) = f.vertices().iter().find(|&&v| v >= vertex_count) {
                return Err(Error::Invalid(format!("vertex {v} out of range in {f}")));
            }
        }
        let mut by_dim: Vec<std::collections::BTreeSet<Simplex>> = vec![Default::default(); n + 1];
        for f in &facets {
            for face in f.all_faces() {
                by_dim[face.dim()].insert(face);
            }
        }
        let simplices: Vec<Vec<Simplex>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let index: Vec<HashMap<Simplex, usize>> = simplices
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();

        let mut depths: Vec<Vec<usize>> = simplices.iter().map(|l| vec![n; l.len()]).collect();
        match depth {
            DepthSpec::Overrides(list) => {
                for (s, d) in list {
                    if !index.get(s.dim()).is_some_and(|m| m.contains_key(s)) {
                        return Err(Error::UnknownSimplex(s.vertices().to_vec()));
                    }
                    if *d > n {
                        return Err(Error::Invalid(format!("depth {d} of {s} exceeds {n}")));
                    }
                    for face in s.all_faces() {
                        let slot = &mut depths[face.dim()][index[face.dim()][&face]];
                        *slot = (*slot).min(*d);
                    }
                }
            }
            DepthSpec::Function(f) => {
                for (d, list) in simplices.iter().enumerate() {
                    for (i, s) in list.iter().enumerate() {
                        depths[d][i] = f(s);
                    }
                }
            }
        }

        let mut cofaces: Vec<Vec<Vec<usize>>> = simplices.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        for d in 1..=n {
            for (j, s) in simplices[d].iter().enumerate() {
                for (_, f) in s.facets() {
                    cofaces[d - 1][index[d - 1][&f]].push(j);
                }
            }
        }

        let mut cx = StratifiedComplex {
            name: name.into(),
            n,
            vertex_count,
            coords: None,
            facets,
            simplices,
            index,
            depth: depths,
            cofaces,
            orientation: Vec::new(),
            report: OnceLock::new(),
        };
        cx.orientation = match orientation {
            OrientationSpec::Auto => cx.coherent_orientation(),
            OrientationSpec::Signs(signs) => {
                if signs.len() != cx.facets.len() {
                    return Err(Error::Invalid(format!(
                        "{} orientation signs for {} facets",
                        signs.len(),
                        cx.facets.len()
                    )));
                }
                let mut o = vec![0i8; cx.simplices[n].len()];
                for (f, s) in cx.facets.iter().zip(signs) {
                    if s != 1 && s != -1 {
                        return Err(Error::Invalid(format!("orientation sign {s} for {f}")));
                    }
                    if f.dim() == n {
                        o[cx.index[n][f]] = s;
                    }
                }
                o
            }
        };
        Ok(cx)
    }

    pub fn with_coordinates(mut self, coords: Vec<Vec<BigRational>>) -> Result<Self> {
        if coords.len() != self.vertex_count {
            return Err(Error::Invalid(format!(
                "{} coordinate rows for {} vertices",
                coords.len(),
                self.vertex_count
            )));
        }
        if let Some(first) = coords.first() {
            if coords.iter().any(|c| c.len() != first.len()) {
                return Err(Error::Invalid("coordinate rows of different lengths".into()));
            }
        }
        self.coords = Some(coords);
        Ok(self)
    }

    /// Breadth-first propagation of a sign across shared `(n-1)`-faces.
    /// Leaves zeros if the complex is not orientable or not a pseudomanifold.
    fn coherent_orientation(&self) -> Vec<i8> {
        let n = self.n;
        let top = &self.simplices[n];
        let mut o = vec![0i8; top.len()];
        if n == 0 {
            return vec![1; top.len()];
        }
        for start in 0..top.len() {
            if o[start] != 0 {
                continue;
            }
            o[start] = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(a) = queue.pop_front() {
                for (i, f) in top[a].facets() {
                    let fi = self.index[n - 1][&f];
                    let cof = &self.cofaces[n - 1][fi];
                    if cof.len() != 2 {
                        return vec![0; top.len()];
                    }
                    let b = if cof[0] == a { cof[1] } else { cof[0] };
                    let j = position_of_missing(&top[b], &f);
                    // induced signs o_a (-1)^i and o_b (-1)^j must cancel
                    let want = -o[a] * parity(i) * parity(j);
                    if o[b] == 0 {
                        o[b] = want;
                        queue.push_back(b);
                    } else if o[b] != want {
                        return vec![0; top.len()];
                    }
                }
            }
        }
        o
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn coordinates(&self) -> Option<&[Vec<BigRational>]> {
        self.coords.as_deref()
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// Sorted simplices of dimension `d` (empty beyond `n`).
    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    pub fn simplex(&self, d: usize, i: usize) -> &Simplex {
        &self.simplices[d][i]
    }

    /// Indices of the `(d+1)`-simplices containing simplex `i` of dimension `d`.
    pub fn cofaces(&self, d: usize, i: usize) -> &[usize] {
        self.cofaces.get(d).map_or(&[], |c| c[i].as_slice())
    }

    pub fn depth(&self, s: &Simplex) -> Result<usize> {
        let i = self.index_of(s).ok_or_else(|| Error::UnknownSimplex(s.vertices().to_vec()))?;
        Ok(self.depth[s.dim()][i])
    }

    pub fn depth_at(&self, d: usize, i: usize) -> usize {
        self.depth[d][i]
    }

    /// Orientation sign of an `n`-simplex, 0 when unknown.
    pub fn orientation(&self, s: &Simplex) -> i8 {
        if s.dim() != self.n {
            return 0;
        }
        self.index_of(s).map_or(0, |i| self.orientation[i])
    }

    /// Depths that occur, ascending: the strata present.
    pub fn depths_present(&self) -> Vec<usize> {
        let mut set = std::collections::BTreeSet::new();
        for l in &self.depth {
            set.extend(l.iter().copied());
        }
        set.into_iter().collect()
    }

    /// True when no simplex lies in the singular set.
    pub fn is_manifold_stratified(&self) -> bool {
        self.depth.iter().all(|l| l.iter().all(|&d| d == self.n))
    }

    /// `max dim` of faces of `s` in the skeleton `X^m`, or `-1`.
    pub fn skeleton_intersection_dim(&self, s: &Simplex, m: usize) -> Result<i64> {
        if !self.contains(s) {
            return Err(Error::UnknownSimplex(s.vertices().to_vec()));
        }
        Ok(self.faces_max_dim(s, |d| d <= m))
    }

    /// `max dim` of faces of `s` in the open stratum `X^d - X^{d-1}`, or `-1`.
    pub fn open_stratum_dim(&self, s: &Simplex, d: usize) -> Result<i64> {
        if !self.contains(s) {
            return Err(Error::UnknownSimplex(s.vertices().to_vec()));
        }
        Ok(self.faces_max_dim(s, |x| x == d))
    }

    fn faces_max_dim(&self, s: &Simplex, pred: impl Fn(usize) -> bool) -> i64 {
        if pred(self.depth[s.dim()][self.index[s.dim()][s]]) {
            return s.dim() as i64;
        }
        let mut best = -1i64;
        for f in s.all_faces() {
            let d = f.dim();
            if (d as i64) > best && pred(self.depth[d][self.index[d][&f]]) {
                best = d as i64;
            }
        }
        best
    }

    pub fn validate(&self) -> &ValidationReport {
        self.report.get_or_init(|| self.compute_report())
    }

    fn compute_report(&self) -> ValidationReport {
        let n = self.n;
        let mut v = Vec::new();
        let push = |v: &mut Vec<Violation>, kind, s: &Simplex| v.push(Violation { kind, witness: s.clone() });
        for (d, list) in self.simplices.iter().enumerate() {
            for (i, s) in list.iter().enumerate() {
                if d < n && self.cofaces[d][i].is_empty() {
                    push(&mut v, ViolationKind::Impure, s);
                }
                if self.depth[d][i] < d {
                    push(&mut v, ViolationKind::DepthBelowDimension, s);
                }
                if n >= 1 && self.depth[d][i] == n - 1 {
                    push(&mut v, ViolationKind::CodimensionOneStratum, s);
                }
            }
        }
        if n >= 1 {
            for (i, s) in self.simplices[n - 1].iter().enumerate() {
                if self.cofaces[n - 1][i].len() != 2 {
                    push(&mut v, ViolationKind::NotPseudomanifold, s);
                }
            }
        }
        for (i, s) in self.simplices[n].iter().enumerate() {
            if self.orientation[i] == 0 {
                push(&mut v, ViolationKind::MissingOrientation, s);
            }
        }
        if n >= 1 && self.orientation.iter().all(|&o| o != 0) {
            for (fi, f) in self.simplices[n - 1].iter().enumerate() {
                let mut total = 0i64;
                for &a in &self.cofaces[n - 1][fi] {
                    let j = position_of_missing(&self.simplices[n][a], f);
                    total += i64::from(self.orientation[a] * parity(j));
                }
                if total != 0 {
                    push(&mut v, ViolationKind::IncoherentOrientation, f);
                }
            }
        }
        v.sort_by(|a, b| (a.kind, &a.witness).cmp(&(b.kind, &b.witness)));
        ValidationReport { violations: v }
    }

    pub fn require_valid(&self) -> Result<()> {
        let r = self.validate();
        if r.is_valid() {
            Ok(())
        } else {
            let first = &r.violations[0];
            Err(Error::NotValidated(format!(
                "{} violation(s), first: {} {}",
                r.violations.len(),
                first.kind,
                first.witness
            )))
        }
    }

    /// Depth overrides that reproduce this complex's filtration: every
    /// simplex whose depth is below `n` and below that of its cofaces.
    pub fn depth_generators(&self) -> Vec<(Simplex, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for (d, list) in self.simplices.iter().enumerate() {
            for (i, s) in list.iter().enumerate() {
                let dep = self.depth[d][i];
                if dep >= n {
                    continue;
                }
                let covered = d < n && self.cofaces[d][i].iter().any(|&j| self.depth[d + 1][j] <= dep);
                if !covered {
                    out.push((s.clone(), dep));
                }
            }
        }
        out
    }

    /// Maximal simplices, sorted (the facets as stored after closure).
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for (d, list) in self.simplices.iter().enumerate() {
            for (i, s) in list.iter().enumerate() {
                if d == self.n || self.cofaces[d][i].is_empty() {
                    out.push(s.clone());
                }
            }
        }
        out
    }
}

fn parity(i: usize) -> i8 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Index in `s` of the vertex not in its facet `f`.
fn position_of_missing(s: &Simplex, f: &Simplex) -> usize {
    s.vertices()
        .iter()
        .position(|v| f.vertices().binary_search(v).is_err())
        .expect("f is a facet of s")
}

