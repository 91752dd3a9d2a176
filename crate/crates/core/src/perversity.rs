//! Traditional perversities on codimensions `2..=n` and the poset they form.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest `n` accepted by [`enumerate`].
pub const ENUMERATE_BOUND: usize = 12;

/// A function `p: {2..n} -> N` with `p(2) = 0` and `p(k) <= p(k+1) <= p(k) + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perversity {
    n: usize,
    values: Vec<usize>,
}

impl Perversity {
    /// `values[j]` is `p(j + 2)`.
    pub fn new(n: usize, values: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidPerversity(format!("n = {n} < 2")));
        }
        if values.len() != n - 1 {
            return Err(Error::InvalidPerversity(format!(
                "expected {} values for n = {n}, got {}",
                n - 1,
                values.len()
            )));
        }
        if values[0] != 0 {
            return Err(Error::InvalidPerversity("p(2) must be 0".into()));
        }
        for w in values.windows(2) {
            if w[1] < w[0] || w[1] > w[0] + 1 {
                return Err(Error::InvalidPerversity(format!(
                    "growth violated in {values:?}"
                )));
            }
        }
        Ok(Perversity { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `p(k)` for `2 <= k <= n`.
    pub fn at(&self, k: usize) -> usize {
        assert!((2..=self.n).contains(&k), "codimension {k} out of range");
        self.values[k - 2]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Pointwise maximum, again a perversity.
    pub fn join(&self, other: &Perversity) -> Result<Perversity> {
        check_same(self, other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| *a.max(b)).collect();
        Ok(Perversity { n: self.n, values })
    }
}

impl fmt::Display for Perversity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Perversity {
    type Err = Error;

    /// Parses `"0,0,1,1,2"`; `n` is one more than the number of entries.
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPerversity(format!("bad entry {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Perversity::new(values.len() + 1, values)
    }
}

fn check_same(p: &Perversity, q: &Perversity) -> Result<()> {
    if p.n != q.n {
        return Err(Error::DimensionMismatch(p.n, q.n));
    }
    Ok(())
}

pub fn zero(n: usize) -> Perversity {
    assert!(n >= 2, "perversities need n >= 2");
    Perversity { n, values: vec![0; n - 1] }
}

pub fn top(n: usize) -> Perversity {
    assert!(n >= 2, "perversities need n >= 2");
    Perversity { n, values: (0..n - 1).collect() }
}

pub fn leq(p: &Perversity, q: &Perversity) -> Result<bool> {
    check_same(p, q)?;
    Ok(p.values.iter().zip(&q.values).all(|(a, b)| a <= b))
}

/// A non-empty list of perversities sharing one `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerversityCollection {
    entries: Vec<Perversity>,
}

impl PerversityCollection {
    pub fn new(entries: Vec<Perversity>) -> Result<Self> {
        let first = entries
            .first()
            .ok_or_else(|| Error::InvalidPerversity("empty collection".into()))?;
        for p in &entries {
            check_same(first, p)?;
        }
        Ok(PerversityCollection { entries })
    }

    pub fn n(&self) -> usize {
        self.entries[0].n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[Perversity] {
        &self.entries
    }

    /// Pointwise sum, which need not itself be a perversity.
    pub fn sum(&self) -> Vec<usize> {
        let mut s = vec![0; self.n() - 1];
        for p in &self.entries {
            for (a, b) in s.iter_mut().zip(&p.values) {
                *a += b;
            }
        }
        s
    }
}

pub fn collection_leq(coll: &PerversityCollection, r: &Perversity) -> Result<bool> {
    if coll.n() != r.n {
        return Err(Error::DimensionMismatch(coll.n(), r.n));
    }
    Ok(coll.sum().iter().zip(&r.values).all(|(a, b)| a <= b))
}

/// The least perversity `s` with `p + q <= s`, by the backward recursion from `k = n`.
pub fn minimal_cover(p: &Perversity, q: &Perversity) -> Result<Perversity> {
    check_same(p, q)?;
    let sum: Vec<usize> = p.values.iter().zip(&q.values).map(|(a, b)| a + b).collect();
    cover_of_sum(p.n, &sum)
}

pub(crate) fn cover_of_sum(n: usize, sum: &[usize]) -> Result<Perversity> {
    let len = n - 1;
    let mut s = vec![0usize; len];
    s[len - 1] = sum[len - 1];
    for j in (0..len - 1).rev() {
        // s(k) = s(k+1) - 1 when the sum leaves room, else s(k+1)
        s[j] = if sum[j] < s[j + 1] { s[j + 1] - 1 } else { s[j + 1] };
    }
    if s[0] != 0 {
        return Err(Error::NoCover);
    }
    Ok(Perversity { n, values: s })
}

/// All n-perversities in lexicographic order; there are `2^(n-2)`.
pub fn enumerate(n: usize) -> Result<Vec<Perversity>> {
    if n > ENUMERATE_BOUND {
        return Err(Error::BoundExceeded(format!("enumerate({n}) exceeds {ENUMERATE_BOUND}")));
    }
    assert!(n >= 2, "perversities need n >= 2");
    let mut out = Vec::with_capacity(1 << (n - 2));
    // bit j of the mask says whether p steps up between k = j+2 and k = j+3
    for mask in 0u32..(1 << (n - 2)) {
        let mut values = vec![0usize; n - 1];
        for j in 0..n - 2 {
            values[j + 1] = values[j] + ((mask >> (n - 3 - j)) & 1) as usize;
        }
        out.push(Perversity { n, values });
    }
    out.sort();
    Ok(out)
}

/// Left fold of [`minimal_cover`] over a collection.
pub fn target_perversity(coll: &PerversityCollection) -> Result<Perversity> {
    let mut it = coll.entries.iter();
    let mut acc = it.next().expect("non-empty collection").clone();
    for p in it {
        acc = minimal_cover(&acc, p)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(s: &str) -> Perversity {
        s.parse().unwrap()
    }

    #[test]
    fn zero_and_top() {
        assert_eq!(zero(4).values(), &[0, 0, 0]);
        assert_eq!(zero(2).values(), &[0]);
        assert_eq!(top(6).values(), &[0, 1, 2, 3, 4]);
        assert_eq!(top(3).values(), &[0, 1]);
    }

    #[test]
    fn rejects_bad_growth() {
        assert!(Perversity::new(4, vec![0, 2, 2]).is_err());
        assert!(Perversity::new(4, vec![1, 1, 1]).is_err());
        assert!(Perversity::new(4, vec![0, 1, 0]).is_err());
        assert!(Perversity::new(4, vec![0, 1]).is_err());
    }

    #[test]
    fn order() {
        assert!(leq(&pv("0,0,1"), &pv("0,1,1")).unwrap());
        assert!(!leq(&pv("0,1,1"), &pv("0,0,1")).unwrap());
        assert_eq!(leq(&pv("0,0"), &pv("0,0,0")), Err(Error::DimensionMismatch(3, 4)));
    }

    #[test]
    fn collections() {
        let m = pv("0,0,1,1,2");
        let c = PerversityCollection::new(vec![m.clone(), m]).unwrap();
        assert_eq!(c.sum(), vec![0, 0, 2, 2, 4]);
        assert!(collection_leq(&c, &top(6)).unwrap());
        let t = PerversityCollection::new(vec![top(4), top(4)]).unwrap();
        assert!(!collection_leq(&t, &top(4)).unwrap());
    }

    #[test]
    fn cover_examples() {
        let m = pv("0,0,1,1,2");
        assert_eq!(minimal_cover(&m, &m).unwrap(), top(6));
        assert_eq!(minimal_cover(&zero(5), &zero(5)).unwrap(), zero(5));
        assert_eq!(minimal_cover(&top(4), &top(4)), Err(Error::NoCover));
        let p = pv("0,0,1");
        assert_eq!(minimal_cover(&zero(4), &p).unwrap(), p);
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate(2).unwrap(), vec![zero(2)]);
        assert_eq!(enumerate(3).unwrap(), vec![pv("0,0"), pv("0,1")]);
        assert_eq!(enumerate(5).unwrap().len(), 8);
        assert!(matches!(enumerate(13), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn display_roundtrip() {
        let p = pv("0,0,1,1,2");
        assert_eq!(p.to_string(), "0,0,1,1,2");
        assert_eq!(p.n(), 6);
    }
}
