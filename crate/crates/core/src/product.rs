//! Shuffle triangulation of `X(k) = X × ... × X`.
//!
//! A vertex of `X(k)` is a `k`-tuple of vertices of `X`, encoded as the
//! base-`N` number `v_1 v_2 ... v_k`, so numeric order is lexicographic
//! order. A simplex is a chain of tuples that is non-decreasing in every
//! coordinate, which is exactly a simplex of the staircase triangulation of
//! a product of simplices.

use crate::complex::{DepthSpec, OrientationSpec, Simplex, StratifiedComplex};
use crate::error::{Error, Result};

/// Upper bound on the number of top simplices [`ProductComplex::new`] builds.
pub const PRODUCT_FACET_LIMIT: usize = 500_000;

#[derive(Clone, Debug)]
pub struct ProductComplex {
    base: StratifiedComplex,
    k: usize,
    complex: StratifiedComplex,
}

/// All words with `dims[i]` copies of letter `i`, with the sign of the
/// shuffle: the parity of pairs where a larger letter precedes a smaller one.
pub fn shuffles(dims: &[usize]) -> Vec<(Vec<usize>, bool)> {
    let total: usize = dims.iter().sum();
    let mut out = Vec::new();
    let mut left = dims.to_vec();
    let mut word = Vec::with_capacity(total);
    fn rec(left: &mut [usize], word: &mut Vec<usize>, total: usize, inv: usize, out: &mut Vec<(Vec<usize>, bool)>) {
        if word.len() == total {
            out.push((word.clone(), inv % 2 == 1));
            return;
        }
        for a in 0..left.len() {
            if left[a] == 0 {
                continue;
            }
            // letters smaller than a still to come each form an inversion with a
            let extra: usize = left[..a].iter().sum();
            left[a] -= 1;
            word.push(a);
            rec(left, word, total, inv + extra, out);
            word.pop();
            left[a] += 1;
        }
    }
    rec(&mut left, &mut word, total, 0, &mut out);
    out
}

fn multinomial(parts: &[usize]) -> Option<usize> {
    let mut acc: usize = 1;
    let mut seen = 0usize;
    for &p in parts {
        for j in 1..=p {
            seen += 1;
            acc = acc.checked_mul(seen)? / j;
        }
    }
    Some(acc)
}

impl ProductComplex {
    pub fn new(base: &StratifiedComplex, k: usize) -> Result<Self> {
        base.require_valid()?;
        if k == 0 {
            return Err(Error::Invalid("product of zero factors".into()));
        }
        let n = base.dim();
        let nv = base.vertex_count();
        let vertex_count = (0..k)
            .try_fold(1usize, |a, _| a.checked_mul(nv))
            .ok_or_else(|| Error::SizeLimit("vertex code overflow".into()))?;
        let top = base.simplices(n);
        let count = (0..k)
            .try_fold(1usize, |a, _| a.checked_mul(top.len()))
            .and_then(|a| a.checked_mul(multinomial(&vec![n; k])?))
            .filter(|&c| c <= PRODUCT_FACET_LIMIT)
            .ok_or_else(|| Error::SizeLimit(format!("{k}-fold product of {} facets", top.len())))?;

        let words = shuffles(&vec![n; k]);
        let mut facets = Vec::with_capacity(count);
        let mut signs = Vec::with_capacity(count);
        let mut choice = vec![0usize; k];
        loop {
            let factors: Vec<&Simplex> = choice.iter().map(|&c| &top[c]).collect();
            let o: i8 = factors.iter().map(|s| base.orientation(s)).product();
            for (word, neg) in &words {
                facets.push(path_simplex(&factors, word, nv));
                signs.push(if *neg { -o } else { o });
            }
            // odometer over facet tuples
            let mut pos = k;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < top.len() {
                    break;
                }
                choice[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX || top.is_empty() {
                break;
            }
        }

        let depth_of = |s: &Simplex| -> usize {
            (0..k)
                .map(|i| base.depth(&project_raw(s, i, k, nv)).expect("projection lies in the base"))
                .sum()
        };
        let complex = StratifiedComplex::new(
            format!("{}^{k}", base.name()),
            n * k,
            vertex_count,
            facets,
            DepthSpec::Function(&depth_of),
            OrientationSpec::Signs(signs),
        )?;
        Ok(ProductComplex { base: base.clone(), k, complex })
    }

    pub fn base(&self) -> &StratifiedComplex {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn complex(&self) -> &StratifiedComplex {
        &self.complex
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        encode(tuple, self.base.vertex_count())
    }

    pub fn decode(&self, v: usize) -> Vec<usize> {
        decode(v, self.k, self.base.vertex_count())
    }

    /// The carrier of `s` in factor `i`: the simplex spanned by its `i`-th coordinates.
    pub fn project(&self, s: &Simplex, i: usize) -> Simplex {
        project_raw(s, i, self.k, self.base.vertex_count())
    }

    /// `(d_1, ..., d_k)`: the depth of each factor's carrier.
    pub fn stratum_tuple(&self, s: &Simplex) -> Result<Vec<usize>> {
        (0..self.k).map(|i| self.base.depth(&self.project(s, i))).collect()
    }

    /// The shuffle chain of `σ_1 × ... × σ_k` (the Eilenberg–Zilber cross product).
    pub fn cross_simplices(&self, factors: &[Simplex]) -> Vec<(Simplex, bool)> {
        assert_eq!(factors.len(), self.k, "arity mismatch");
        let dims: Vec<usize> = factors.iter().map(|s| s.dim()).collect();
        let refs: Vec<&Simplex> = factors.iter().collect();
        shuffles(&dims)
            .into_iter()
            .map(|(w, neg)| (path_simplex(&refs, &w, self.base.vertex_count()), neg))
            .collect()
    }
}

fn encode(tuple: &[usize], nv: usize) -> usize {
    tuple.iter().fold(0, |a, &v| a * nv + v)
}

fn decode(mut v: usize, k: usize, nv: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for i in (0..k).rev() {
        out[i] = v % nv;
        v /= nv;
    }
    out
}

fn project_raw(s: &Simplex, i: usize, k: usize, nv: usize) -> Simplex {
    let mut coords: Vec<usize> = s.vertices().iter().map(|&v| decode(v, k, nv)[i]).collect();
    coords.dedup();
    Simplex::from_sorted(coords)
}

/// Vertices visited by the staircase path of `word` through the factors.
fn path_simplex(factors: &[&Simplex], word: &[usize], nv: usize) -> Simplex {
    let mut idx = vec![0usize; factors.len()];
    let tuple = |idx: &[usize]| -> Vec<usize> { factors.iter().zip(idx).map(|(s, &i)| s.vertices()[i]).collect() };
    let mut verts = Vec::with_capacity(word.len() + 1);
    verts.push(encode(&tuple(&idx), nv));
    for &a in word {
        idx[a] += 1;
        verts.push(encode(&tuple(&idx), nv));
    }
    Simplex::from_sorted(verts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shuffle_signs() {
        let w = shuffles(&[1, 1]);
        assert_eq!(w, vec![(vec![0, 1], false), (vec![1, 0], true)]);
        assert_eq!(shuffles(&[2, 2]).len(), 6);
        assert_eq!(shuffles(&[0, 3]), vec![(vec![1, 1, 1], false)]);
        assert_eq!(multinomial(&[2, 2]), Some(6));
        assert_eq!(multinomial(&[2, 2, 2]), Some(90));
    }

    #[test]
    fn codes_are_lexicographic() {
        let nv = 5;
        assert!(encode(&[1, 4], nv) < encode(&[2, 0], nv));
        assert_eq!(decode(encode(&[3, 1, 4], nv), 3, nv), vec![3, 1, 4]);
    }
}
