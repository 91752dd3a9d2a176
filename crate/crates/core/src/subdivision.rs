//! First barycentric subdivision, the subdivision chain map `Sd`, and the
//! simplicial approximation `θ: K' -> K` sending `b(σ)` to the least vertex of `σ`.
//!
//! The barycenter of `σ` is a vertex of `K'`; barycenters are numbered by
//! decreasing dimension of `σ`, then lexicographically. A simplex of `K'` is
//! a flag `σ_0 < ... < σ_d`, so its sorted vertex list is
//! `[b(σ_d), ..., b(σ_0)]`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chain::{fundamental_cycle, Chain, Cochain, Coeff};
use crate::complex::{sort_with_sign, DepthSpec, OrientationSpec, Simplex, StratifiedComplex};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct Subdivision {
    base: StratifiedComplex,
    complex: StratifiedComplex,
    carriers: Vec<Simplex>,
    barycenter: HashMap<Simplex, usize>,
}

impl Subdivision {
    pub fn new(base: &StratifiedComplex) -> Result<Self> {
        base.require_valid()?;
        let n = base.dim();
        let mut carriers = Vec::new();
        for d in (0..=n).rev() {
            carriers.extend(base.simplices(d).iter().cloned());
        }
        let barycenter: HashMap<Simplex, usize> = carriers.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mut sd = Subdivision { base: base.clone(), complex: base.clone(), carriers, barycenter };

        let gamma = fundamental_cycle(base)?;
        let sd_gamma = sd.subdivide(&gamma);
        let (facets, signs): (Vec<Simplex>, Vec<i8>) =
            sd_gamma.iter().map(|(s, x)| (s.clone(), if x.is_one() { 1 } else { -1 })).unzip();
        let depth_of = |s: &Simplex| base.depth(&sd.carriers[s.vertices()[0]]).expect("carrier in base");
        let mut complex = StratifiedComplex::new(
            format!("sd({})", base.name()),
            n,
            sd.carriers.len(),
            facets,
            DepthSpec::Function(&depth_of),
            OrientationSpec::Signs(signs),
        )?;
        if let Some(coords) = base.coordinates() {
            let bary = sd
                .carriers
                .iter()
                .map(|s| {
                    let k = BigRational::from_integer(BigInt::from(s.vertices().len()));
                    let mut c = vec![BigRational::zero(); coords[0].len()];
                    for &v in s.vertices() {
                        for (a, x) in c.iter_mut().zip(&coords[v]) {
                            *a += x;
                        }
                    }
                    c.into_iter().map(|x| x / &k).collect()
                })
                .collect();
            complex = complex.with_coordinates(bary)?;
        }
        sd.complex = complex;
        Ok(sd)
    }

    pub fn base(&self) -> &StratifiedComplex {
        &self.base
    }

    pub fn complex(&self) -> &StratifiedComplex {
        &self.complex
    }

    pub fn barycenter(&self, s: &Simplex) -> Option<usize> {
        self.barycenter.get(s).copied()
    }

    /// The simplex of `K` whose barycenter is vertex `v` of `K'`.
    pub fn carrier(&self, v: usize) -> &Simplex {
        &self.carriers[v]
    }

    /// The flag of a `K'` simplex, smallest element first.
    pub fn flag(&self, s: &Simplex) -> Vec<Simplex> {
        s.vertices().iter().rev().map(|&v| self.carriers[v].clone()).collect()
    }

    /// `Sd(σ) = b(σ) * Sd(∂σ)`.
    pub fn subdivide<R: Coeff>(&self, c: &Chain<R>) -> Chain<R> {
        let mut out = Chain::zero(c.degree());
        let mut memo: HashMap<Simplex, Vec<(Vec<usize>, bool)>> = HashMap::new();
        for (s, x) in c.iter() {
            for (verts, neg) in self.sd_simplex(s, &mut memo) {
                let v = if neg { -x.clone() } else { x.clone() };
                out.add_term(Simplex::from_sorted(verts), v);
            }
        }
        out
    }

    fn sd_simplex(&self, s: &Simplex, memo: &mut HashMap<Simplex, Vec<(Vec<usize>, bool)>>) -> Vec<(Vec<usize>, bool)> {
        if let Some(v) = memo.get(s) {
            return v.clone();
        }
        let b = self.barycenter[s];
        let out = if s.dim() == 0 {
            vec![(vec![b], false)]
        } else {
            let mut out = Vec::new();
            for (i, f) in s.facets() {
                for (mut verts, neg) in self.sd_simplex(&f, memo) {
                    verts.insert(0, b);
                    out.push((verts, neg ^ (i % 2 == 1)));
                }
            }
            out
        };
        memo.insert(s.clone(), out.clone());
        out
    }

    /// `θ(s)` with its orientation sign, or `None` when `θ` collapses `s`.
    pub fn theta_simplex(&self, s: &Simplex) -> Option<(Simplex, bool)> {
        let image: Vec<usize> = s.vertices().iter().map(|&v| self.carriers[v].vertices()[0]).collect();
        let (sign, sorted) = sort_with_sign(&image);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Simplex::from_sorted(sorted), sign < 0))
    }

    /// `θ_#` on chains of `K'`.
    pub fn theta<R: Coeff>(&self, c: &Chain<R>) -> Chain<R> {
        let mut out = Chain::zero(c.degree());
        for (s, x) in c.iter() {
            if let Some((t, neg)) = self.theta_simplex(s) {
                out.add_term(t, if neg { -x.clone() } else { x.clone() });
            }
        }
        out
    }

    /// `θ^*` on cochains of `K`.
    pub fn pullback<R: Coeff>(&self, x: &Cochain<R>) -> Cochain<R> {
        let d = x.degree();
        let values = self.complex.simplices(d).iter().filter_map(|s| {
            let (t, neg) = self.theta_simplex(s)?;
            let v = x.value(&t);
            if v.is_zero() {
                return None;
            }
            Some((s.clone(), if neg { -v } else { v }))
        });
        Cochain::from_values(d, values).expect("degree-homogeneous")
    }
}

/// The first barycentric subdivision of a validated complex.
pub fn barycentric_subdivide(cx: &StratifiedComplex) -> Result<StratifiedComplex> {
    Ok(Subdivision::new(cx)?.complex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homology::{homology, Mode};
    use crate::perversity::Perversity;

    #[test]
    fn sphere_subdivision() {
        let cx = fixtures::boundary_tetrahedron();
        let sd = Subdivision::new(&cx).unwrap();
        assert_eq!(sd.complex().count(2), 24);
        assert!(sd.complex().validate().is_valid(), "{}", sd.complex().validate());
        let g = fundamental_cycle(&cx).unwrap();
        assert_eq!(sd.theta(&sd.subdivide(&g)), g);
        assert!(sd.subdivide(&g).boundary().is_zero());
    }

    #[test]
    fn theta_inverts_subdivision() {
        let cx = fixtures::sigma_torus();
        let sd = Subdivision::new(&cx).unwrap();
        for d in 0..=3 {
            for s in cx.simplices(d) {
                let c: Chain = Chain::simplex(s.clone());
                assert_eq!(sd.theta(&sd.subdivide(&c)), c);
                assert_eq!(sd.subdivide(&c.boundary()), sd.subdivide(&c).boundary());
            }
        }
    }

    #[test]
    fn suspension_invariance() {
        let cx = fixtures::sigma_torus();
        let sd = barycentric_subdivide(&cx).unwrap();
        assert!(sd.validate().is_valid());
        assert_eq!(sd.depth(&Simplex::vertex(sd.count(0) - 1)).unwrap(), 0);
        for p in [vec![0, 0], vec![0, 1]] {
            let p = Perversity::new(3, p).unwrap();
            let a = homology(&cx, Mode::Intersection(&p)).unwrap();
            let b = homology(&sd, Mode::Intersection(&p)).unwrap();
            assert!(a.same_groups(&b));
        }
    }
}
