use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer partition, stored without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Partition(Vec<usize>);

/// Weakly decreasing integer tuple of explicit length; negative parts allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Signature(Vec<i64>);

fn check_decreasing(parts: &[i64]) -> Result<()> {
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotDecreasing(parts.to_vec()));
    }
    Ok(())
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(parts.iter().map(|&x| x as i64).collect()));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts into decreasing order first.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("sorted")
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Part `i` (1-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return usize::MAX;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts equal to `i` (for `i >= 1`).
    pub fn multiplicity(&self, i: usize) -> usize {
        self.0.iter().filter(|&&x| x == i).count()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&x| x >= j).count()).collect())
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn nlam(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &x)| i * x).sum()
    }

    /// Diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Interlacing `self ≺ lambda`: `λ_1 ≥ self_1 ≥ λ_2 ≥ self_2 ≥ …`.
    pub fn interlaces(&self, lambda: &Partition) -> bool {
        let n = lambda.len().max(self.len() + 1);
        (1..=n).all(|i| lambda.part(i) >= self.part(i) && self.part(i) >= lambda.part(i + 1))
    }

    /// Zero-padded signature of length `n`.
    pub fn to_signature(&self, n: usize) -> Result<Signature> {
        if self.len() > n {
            return Err(Error::TooManyParts { len: self.len(), n });
        }
        let mut v: Vec<i64> = self.0.iter().map(|&x| x as i64).collect();
        v.resize(n, 0);
        Ok(Signature(v))
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        if v.iter().any(|&x| x < 0) {
            return Err(Error::NegativePart(v));
        }
        check_decreasing(&v)?;
        Partition::new(v.into_iter().map(|x| x as usize).collect())
    }
}

impl From<Partition> for Vec<i64> {
    fn from(p: Partition) -> Self {
        p.0.into_iter().map(|x| x as i64).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Signature {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        check_decreasing(&parts)?;
        Ok(Signature(parts))
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn multiplicity(&self, i: i64) -> usize {
        self.0.iter().filter(|&&x| x == i).count()
    }

    /// Adds `d` to every part.
    pub fn shift(&self, d: i64) -> Signature {
        Signature(self.0.iter().map(|x| x + d).collect())
    }

    /// The partition with the same parts, if all are nonnegative.
    pub fn to_partition(&self) -> Option<Partition> {
        if self.0.iter().any(|&x| x < 0) {
            return None;
        }
        Partition::new(self.0.iter().map(|&x| x as usize).collect()).ok()
    }

    /// Interlacing `self ≺ lambda` for `len(self) ∈ {len(λ) - 1, len(λ)}`:
    /// `λ_i ≥ self_i ≥ λ_{i+1}`.
    pub fn interlaces(&self, lambda: &Signature) -> bool {
        let (m, n) = (self.len(), lambda.len());
        if m + 1 != n && m != n {
            return false;
        }
        (0..m).all(|i| lambda.0[i] >= self.0[i] && (i + 1 >= n || self.0[i] >= lambda.0[i + 1]))
    }
}

impl TryFrom<Vec<i64>> for Signature {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Signature::new(v)
    }
}

impl From<Signature> for Vec<i64> {
    fn from(s: Signature) -> Self {
        s.0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
