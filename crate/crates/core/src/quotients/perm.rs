use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::Degree;

/// A permutation of `0..n` stored as its image array.
///
/// Composition follows function composition: `p.compose(q)` applies `q`
/// first, so `p.compose(q).apply(i) == p.apply(q.apply(i))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Perm(Vec<u32>);

impl TryFrom<Vec<u32>> for Perm {
    type Error = Error;

    fn try_from(images: Vec<u32>) -> Result<Self> {
        Perm::from_images(images)
    }
}

impl From<Perm> for Vec<u32> {
    fn from(p: Perm) -> Self {
        p.0
    }
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let i = i as usize;
            if i >= images.len() || seen[i] {
                return Err(Error::Invalid("image array is not a permutation".into()));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Perm(images)
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.len(), other.len());
        Perm(other.0.iter().map(|&j| self.0[j as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// First point moved, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(i, &j)| *i as u32 != j).map(|(i, _)| i)
    }

    pub fn support_size(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, &j)| *i as u32 != j).count()
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, k: u64) -> Perm {
        let mut out = Perm::identity(self.len());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        out
    }

    /// Cycle lengths, one entry per cycle including fixed points.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.apply(i);
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// Whether this permutation of level `level` vertices (lexicographic
    /// order) preserves prefixes, i.e. is a tree automorphism at that level.
    pub fn is_tree_automorphism(&self, degree: Degree, level: usize) -> bool {
        let d = degree.get();
        if degree.pow(level) != Some(self.len()) {
            return false;
        }
        // The image of i·w must start with the image of i; equivalently
        // blocks of size d^(k) map onto blocks at every depth k.
        let mut block = d;
        while block <= self.len() {
            for start in (0..self.len()).step_by(block) {
                let target = self.apply(start) / block;
                if (start..start + block).any(|i| self.apply(i) / block != target) {
                    return false;
                }
            }
            block *= d;
        }
        true
    }

    /// Restriction of a level-`from` tree automorphism to level `to <= from`.
    pub fn project(&self, degree: Degree, from: usize, to: usize) -> Perm {
        assert!(to <= from);
        let factor = degree.pow(from - to).expect("level within point cap");
        let n = self.len() / factor;
        Perm((0..n).map(|v| (self.0[v * factor] as usize / factor) as u32).collect())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_order() {
        let p = Perm::from_images(vec![1, 2, 0]).unwrap();
        let q = Perm::from_images(vec![0, 2, 1]).unwrap();
        let pq = p.compose(&q);
        for i in 0..3 {
            assert_eq!(pq.apply(i), p.apply(q.apply(i)));
        }
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.pow(3), Perm::identity(3));
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_images(vec![2, 0]).is_err());
    }

    #[test]
    fn tree_check_and_projection() {
        // swap of the two halves of level 2: 00<->10, 01<->11
        let p = Perm::from_images(vec![2, 3, 0, 1]).unwrap();
        assert!(p.is_tree_automorphism(Degree::BINARY, 2));
        assert_eq!(p.project(Degree::BINARY, 2, 1).images(), &[1, 0]);
        assert_eq!(p.project(Degree::BINARY, 2, 0).images(), &[0]);
        let bad = Perm::from_images(vec![0, 2, 1, 3]).unwrap();
        assert!(!bad.is_tree_automorphism(Degree::BINARY, 2));
    }
}
