//! Centralizer of a set of permutations inside a group given by a BSGS.
//!
//! Elements of the group are enumerated by their base images, deepest level
//! first, so that only one element per coset of the part already found has
//! to be located. A candidate `z` must commute with every target `t`, hence
//! `z(t·q) = t·z(q)`: fixing `z` at one point fixes it on the whole orbit
//! of the targets through that point, which prunes most branches early.

use std::collections::HashSet;

use crate::error::{Error, Result};

use super::bsgs::Bsgs;
use super::group::{commutes, PermGroup};
use super::perm::Perm;

const UNSET: u32 = u32::MAX;

struct Search<'a> {
    bsgs: &'a Bsgs,
    targets: &'a [Perm],
    /// Partial equivariant map and its inverse.
    image: Vec<u32>,
    preimage: Vec<u32>,
    trail: Vec<u32>,
    nodes: u64,
    node_cap: u64,
}

impl<'a> Search<'a> {
    fn assign(&mut self, q: u32, img: u32) -> bool {
        let cur = self.image[q as usize];
        if cur != UNSET {
            return cur == img;
        }
        if self.preimage[img as usize] != UNSET {
            return false;
        }
        self.image[q as usize] = img;
        self.preimage[img as usize] = q;
        self.trail.push(q);
        true
    }

    /// Sets `z(q) = img` and closes under the targets. On conflict the
    /// partial assignments stay on the trail for the caller to undo.
    fn propagate(&mut self, q: u32, img: u32) -> bool {
        if !self.assign(q, img) {
            return false;
        }
        let mut stack = vec![q];
        while let Some(p) = stack.pop() {
            let zp = self.image[p as usize];
            for t in self.targets {
                let tp = t.apply(p as usize) as u32;
                let tzp = t.apply(zp as usize) as u32;
                let known = self.image[tp as usize];
                if known == UNSET {
                    if !self.assign(tp, tzp) {
                        return false;
                    }
                    stack.push(tp);
                } else if known != tzp {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let q = self.trail.pop().unwrap();
            let img = self.image[q as usize];
            self.image[q as usize] = UNSET;
            self.preimage[img as usize] = UNSET;
        }
    }

    /// Depth-first search for an element whose base images from level `j`
    /// on extend `pre`.
    fn dfs(&mut self, j: usize, pre: &Perm) -> Result<Option<Perm>> {
        if j == self.bsgs.depth() {
            return Ok(self.targets.iter().all(|t| commutes(pre, t)).then(|| pre.clone()));
        }
        let level = self.bsgs.level(j);
        let base = level.base;
        let forced = self.image[base as usize];
        for (k, &delta) in level.orbit.iter().enumerate() {
            let gamma = pre.apply(delta as usize) as u32;
            if forced != UNSET && forced != gamma {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.node_cap {
                return Err(Error::undecided("centralizer backtrack nodes", self.node_cap));
            }
            let mark = self.trail.len();
            if forced == UNSET && !self.propagate(base, gamma) {
                self.undo(mark);
                continue;
            }
            let u = self
                .bsgs
                .transversal(j, level.orbit[k])
                .expect("orbit point has a transversal element");
            let next = pre.compose(&u);
            let found = self.dfs(j + 1, &next)?;
            self.undo(mark);
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

pub(super) fn backtrack(group: &PermGroup, targets: &[Perm], node_cap: u64) -> Result<PermGroup> {
    let bsgs = group.bsgs();
    let n = group.points();
    let mut seen = HashSet::new();
    let targets: Vec<Perm> = targets
        .iter()
        .filter(|t| !t.is_identity() && seen.insert((*t).clone()))
        .cloned()
        .collect();
    let mut search = Search {
        bsgs,
        targets: &targets,
        image: vec![UNSET; n],
        preimage: vec![UNSET; n],
        trail: Vec::new(),
        nodes: 0,
        node_cap,
    };
    let mut found: Vec<Perm> = Vec::new();
    for i in (0..bsgs.depth()).rev() {
        let level = bsgs.level(i);
        // Elements found at deeper levels fix b_0..b_i.
        let deep = found.clone();
        let mut failed = vec![false; n];
        let mut candidates: Vec<u32> = level.orbit.clone();
        candidates.sort_unstable();
        for gamma in candidates {
            let in_orbit = orbit_of(&found, level.base, n)[gamma as usize];
            if in_orbit || failed[gamma as usize] || gamma == level.base {
                continue;
            }
            search.undo(0);
            let mut ok = true;
            for l in 0..i {
                let b = bsgs.level(l).base;
                if search.image[b as usize] == UNSET && !search.propagate(b, b) {
                    ok = false;
                    break;
                }
            }
            let element = if ok {
                search.dfs_from(i, gamma)?
            } else {
                None
            };
            match element {
                Some(z) => found.push(z),
                None => {
                    let orb = orbit_of(&deep, gamma, n);
                    for (p, &hit) in orb.iter().enumerate() {
                        if hit {
                            failed[p] = true;
                        }
                    }
                }
            }
        }
    }
    search.undo(0);
    let result = Bsgs::build(n, &found, &[]);
    Ok(PermGroup::from_bsgs(group.degree(), group.level(), result))
}

impl Search<'_> {
    /// Searches for an element fixing the base points before level `i` and
    /// mapping `b_i` to `gamma`.
    fn dfs_from(&mut self, i: usize, gamma: u32) -> Result<Option<Perm>> {
        let level = self.bsgs.level(i);
        let Some(u) = self.bsgs.transversal(i, gamma) else {
            return Ok(None);
        };
        let mark = self.trail.len();
        if !self.propagate(level.base, gamma) {
            self.undo(mark);
            return Ok(None);
        }
        self.nodes += 1;
        let out = self.dfs(i + 1, &u);
        self.undo(mark);
        out
    }
}

fn orbit_of(gens: &[Perm], point: u32, n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[point as usize] = true;
    let mut stack = vec![point as usize];
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::Degree;

    /// Automorphism group of the level-`level` binary tree, generated by the
    /// swap at the leftmost vertex of each level.
    fn full_tree_group(level: usize) -> PermGroup {
        let n = 1usize << level;
        let gens = (0..level)
            .map(|k| {
                let half = n >> (k + 1);
                let mut img: Vec<u32> = (0..n as u32).collect();
                for x in 0..half {
                    img.swap(x, half + x);
                }
                Perm::from_images(img).unwrap()
            })
            .collect();
        PermGroup::new(Degree::BINARY, level, gens).unwrap()
    }

    #[test]
    fn matches_enumeration() {
        let g = full_tree_group(3);
        assert_eq!(g.order(), 128u32.into());
        let t = g.generators()[1].clone();
        let by_enum = g.centralizer_by_enumeration(std::slice::from_ref(&t), 1 << 20).unwrap();
        let by_bt = backtrack(&g, &[t], 1 << 20).unwrap();
        assert_eq!(by_enum.order(), by_bt.order());
        assert!(by_bt.is_subgroup_of(&by_enum).unwrap());
    }

    #[test]
    fn abelian_and_trivial_targets() {
        let c = Perm::from_images((0..8).map(|i| (i + 1) % 8).collect()).unwrap();
        let g = PermGroup::new(Degree::BINARY, 3, vec![c.clone()]).unwrap();
        assert_eq!(backtrack(&g, &[c], 1000).unwrap().order(), 8u32.into());
        assert_eq!(backtrack(&g, &[], 1000).unwrap().order(), 8u32.into());
    }
}
