use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tree::{Degree, Vertex};

use super::bsgs::Bsgs;
use super::perm::Perm;

/// A tree automorphism restricted to level `level`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LevelPermutation {
    pub level: usize,
    pub perm: Perm,
}

impl LevelPermutation {
    /// Checks that `perm` acts on level `level` and preserves prefixes.
    pub fn new(degree: Degree, level: usize, perm: Perm) -> Result<Self> {
        if !perm.is_tree_automorphism(degree, level) {
            return Err(Error::Invalid(format!(
                "permutation of {} points is not a level-{level} tree automorphism",
                perm.len()
            )));
        }
        Ok(LevelPermutation { level, perm })
    }

    pub fn identity(degree: Degree, level: usize) -> Self {
        let n = degree.pow(level).expect("level within point cap");
        LevelPermutation {
            level,
            perm: Perm::identity(n),
        }
    }

    pub fn project(&self, degree: Degree, n: usize) -> LevelPermutation {
        LevelPermutation {
            level: n,
            perm: self.perm.project(degree, self.level, n),
        }
    }

    pub fn compose(&self, other: &LevelPermutation) -> LevelPermutation {
        assert_eq!(self.level, other.level);
        LevelPermutation {
            level: self.level,
            perm: self.perm.compose(&other.perm),
        }
    }

    /// Order of the permutation as a group element.
    pub fn order(&self) -> BigUint {
        self.perm
            .cycle_lengths()
            .into_iter()
            .fold(BigUint::from(1u32), |acc, l| acc.lcm(&BigUint::from(l)))
    }
}

/// A permutation group on the vertices of one tree level, with a lazily
/// computed base and strong generating set.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: Degree,
    level: usize,
    points: usize,
    generators: Vec<Perm>,
    bsgs: OnceLock<Arc<Bsgs>>,
}

/// Serialized summary of a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub level: usize,
    pub generators: Vec<Perm>,
    pub order: String,
    pub transitive: bool,
    pub flags: Vec<String>,
}

impl PermGroup {
    /// Group generated by `generators`, each a permutation of the `d^level`
    /// level vertices.
    pub fn new(degree: Degree, level: usize, generators: Vec<Perm>) -> Result<Self> {
        let points = degree
            .pow(level)
            .ok_or_else(|| Error::cap(format!("level {level} vertex count"), u64::MAX))?;
        for g in &generators {
            if g.len() != points {
                return Err(Error::LevelMismatch {
                    expected: points,
                    found: g.len(),
                });
            }
        }
        Ok(Self::new_unchecked(degree, level, generators))
    }

    pub(crate) fn new_unchecked(degree: Degree, level: usize, generators: Vec<Perm>) -> Self {
        let points = degree.pow(level).expect("level checked by caller");
        let mut seen = HashSet::new();
        let generators: Vec<Perm> = generators
            .into_iter()
            .filter(|g| !g.is_identity() && seen.insert(g.clone()))
            .collect();
        PermGroup {
            degree,
            level,
            points,
            generators,
            bsgs: OnceLock::new(),
        }
    }

    pub fn trivial(degree: Degree, level: usize) -> Self {
        Self::new_unchecked(degree, level, Vec::new())
    }

    /// Group with a precomputed BSGS; `generators` are its strong generators.
    pub(crate) fn from_bsgs(degree: Degree, level: usize, bsgs: Bsgs) -> Self {
        let generators = if bsgs.depth() == 0 { Vec::new() } else { bsgs.level_generators(0) };
        let g = Self::new_unchecked(degree, level, generators);
        let _ = g.bsgs.set(Arc::new(bsgs));
        g
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn bsgs(&self) -> &Bsgs {
        self.bsgs
            .get_or_init(|| Arc::new(Bsgs::build(self.points, &self.generators, &[])))
    }

    pub fn has_bsgs(&self) -> bool {
        self.bsgs.get().is_some()
    }

    /// Installs a BSGS loaded from a cache. Ignored if one is already present.
    pub fn set_bsgs(&self, bsgs: Bsgs) {
        let _ = self.bsgs.set(Arc::new(bsgs));
    }

    pub fn order(&self) -> BigUint {
        self.bsgs().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(self.order()).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.points];
        seen[point] = true;
        let mut out = vec![point];
        let mut k = 0;
        while k < out.len() {
            let p = out[k];
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    out.push(q);
                }
            }
            k += 1;
        }
        out
    }

    /// Orbit partition, each orbit sorted, orbits ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.points];
        let mut out = Vec::new();
        for p in 0..self.points {
            if seen[p] {
                continue;
            }
            let mut o = self.orbit(p);
            for &q in &o {
                seen[q] = true;
            }
            o.sort_unstable();
            out.push(o);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.points
    }

    fn index_of(&self, v: &Vertex) -> Result<usize> {
        if v.level() != self.level {
            return Err(Error::LevelMismatch {
                expected: self.level,
                found: v.level(),
            });
        }
        Ok(v.index(self.degree))
    }

    pub fn point_stabilizer(&self, v: &Vertex) -> Result<PermGroup> {
        let p = self.index_of(v)?;
        Ok(self.pointwise_stabilizer_of_points(&[p]))
    }

    pub fn pointwise_stabilizer(&self, vs: &[Vertex]) -> Result<PermGroup> {
        let pts = vs.iter().map(|v| self.index_of(v)).collect::<Result<Vec<_>>>()?;
        Ok(self.pointwise_stabilizer_of_points(&pts))
    }

    /// BSGS whose base starts with `prefix` (duplicates dropped).
    pub fn bsgs_with_prefix(&self, prefix: &[usize]) -> Bsgs {
        let mut seen = HashSet::new();
        let prefix: Vec<u32> = prefix
            .iter()
            .filter(|&&p| seen.insert(p))
            .map(|&p| p as u32)
            .collect();
        let gens = match self.bsgs.get() {
            Some(b) if b.depth() > 0 => b.level_generators(0),
            _ => self.generators.clone(),
        };
        Bsgs::build(self.points, &gens, &prefix)
    }

    pub fn pointwise_stabilizer_of_points(&self, points: &[usize]) -> PermGroup {
        if self.is_trivial() {
            return self.clone();
        }
        let mut distinct: Vec<usize> = points.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let b = self.bsgs_with_prefix(points);
        PermGroup::from_bsgs(self.degree, self.level, b.suffix(distinct.len()))
    }

    /// Image under restriction to level `n`.
    pub fn project(&self, n: usize) -> Result<PermGroup> {
        if n > self.level {
            return Err(Error::LevelMismatch {
                expected: self.level,
                found: n,
            });
        }
        let gens = self
            .generators
            .iter()
            .map(|g| g.project(self.degree, self.level, n))
            .collect();
        Ok(PermGroup::new_unchecked(self.degree, n, gens))
    }

    pub fn contains(&self, p: &Perm) -> Result<bool> {
        if p.len() != self.points {
            return Err(Error::LevelMismatch {
                expected: self.points,
                found: p.len(),
            });
        }
        if self.is_trivial() {
            return Ok(p.is_identity());
        }
        Ok(self.bsgs().contains(p))
    }

    pub fn membership(&self, p: &LevelPermutation) -> Result<bool> {
        if p.level != self.level {
            return Err(Error::LevelMismatch {
                expected: self.level,
                found: p.level,
            });
        }
        self.contains(&p.perm)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> Result<bool> {
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_group(&self, other: &PermGroup) -> Result<bool> {
        Ok(self.order() == other.order() && self.is_subgroup_of(other)?)
    }

    /// All elements; fails when the order exceeds `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Perm>> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(Error::cap("group element enumeration", cap));
        }
        if self.is_trivial() {
            return Ok(vec![Perm::identity(self.points)]);
        }
        Ok(self.bsgs().elements())
    }

    /// Centralizer of `targets` by filtering every element.
    pub fn centralizer_by_enumeration(&self, targets: &[Perm], cap: u64) -> Result<PermGroup> {
        let elems = self.elements(cap)?;
        let mut found = Bsgs::build(self.points, &[], &[]);
        for z in elems {
            if targets.iter().all(|t| commutes(&z, t)) && !found.contains(&z) {
                found.extend(&z);
            }
        }
        Ok(PermGroup::from_bsgs(self.degree, self.level, found))
    }

    /// Centralizer `{z in self : z t = t z for all targets}`.
    ///
    /// Small groups are filtered element by element; larger ones use a
    /// backtrack over base images pruned by equivariance under the targets.
    /// The search is bounded by `node_cap` and reports `Undecided` past it.
    pub fn centralizer_in(&self, targets: &[Perm], small: u64, node_cap: u64) -> Result<PermGroup> {
        for t in targets {
            if t.len() != self.points {
                return Err(Error::LevelMismatch {
                    expected: self.points,
                    found: t.len(),
                });
            }
        }
        if self.is_trivial() {
            return Ok(self.clone());
        }
        if self.generators.iter().all(|g| targets.iter().all(|t| commutes(g, t))) {
            return Ok(self.clone());
        }
        if self.order() <= BigUint::from(small) {
            return self.centralizer_by_enumeration(targets, small);
        }
        super::centralizer::backtrack(self, targets, node_cap)
    }

    pub fn summary(&self, flags: Vec<String>) -> GroupSummary {
        GroupSummary {
            level: self.level,
            generators: self.generators.clone(),
            order: self.order().to_string(),
            transitive: self.is_transitive(),
            flags,
        }
    }

    /// Map from point to its orbit index.
    pub fn orbit_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.points];
        let mut next = 0;
        for p in 0..self.points {
            if label[p] != usize::MAX {
                continue;
            }
            for q in self.orbit(p) {
                label[q] = next;
            }
            next += 1;
        }
        label
    }
}

pub fn commutes(a: &Perm, b: &Perm) -> bool {
    (0..a.len()).all(|i| a.apply(b.apply(i)) == b.apply(a.apply(i)))
}

/// Brute-force closure, for tests and small oracles.
pub fn closure(gens: &[Perm], points: usize, cap: usize) -> Result<HashSet<Perm>> {
    let id = Perm::identity(points);
    let mut seen = HashSet::new();
    seen.insert(id.clone());
    let mut stack = vec![id];
    while let Some(g) = stack.pop() {
        for s in gens {
            let h = s.compose(&g);
            if seen.insert(h.clone()) {
                if seen.len() > cap {
                    return Err(Error::cap("closure", cap as u64));
                }
                stack.push(h);
            }
        }
    }
    Ok(seen)
}
