//! Base and strong generating set via deterministic incremental
//! Schreier–Sims.
//!
//! Schreier trees only ever grow, so a transversal element, once assigned,
//! never changes. That lets each level remember which (orbit point,
//! generator) pairs have already produced a Schreier generator that sifts.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::perm::Perm;

/// Stored inverse transversal entries (in `u32`s) before a level falls back
/// to walking its Schreier tree.
const EXPLICIT_BUDGET: usize = 1 << 24;

#[derive(Debug)]
pub(crate) struct StrongGen {
    pub perm: Perm,
    pub inv: Perm,
}

#[derive(Debug, Clone)]
pub(crate) struct Level {
    pub base: u32,
    /// Indices into the strong generator list.
    pub gens: Vec<u32>,
    pub orbit: Vec<u32>,
    pub pos: HashMap<u32, u32>,
    /// For orbit position `k > 0`: (local generator index, parent position).
    pub parent: Vec<(u32, u32)>,
    /// `u_β^{-1}` per orbit position, when within budget.
    pub inv_reps: Option<Vec<Perm>>,
    /// All pairs `(pos < checked.0, gen < checked.1)` are known to sift.
    checked: (usize, usize),
    /// Resume point of an interrupted scan: (linear index, orbit len, gen count).
    cursor: (usize, usize, usize),
}

impl Level {
    fn new(base: u32, points: usize, explicit: bool) -> Self {
        let mut pos = HashMap::new();
        pos.insert(base, 0);
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            pos,
            parent: vec![(u32::MAX, u32::MAX)],
            inv_reps: explicit.then(|| vec![Perm::identity(points)]),
            checked: (0, 0),
            cursor: (0, 0, 0),
        }
    }

    pub fn orbit_len(&self) -> usize {
        self.orbit.len()
    }
}

/// Serializable form: base points and strong generators.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct BsgsData {
    pub points: usize,
    pub base: Vec<u32>,
    pub strong: Vec<Perm>,
}

/// A complete base and strong generating set.
#[derive(Debug, Clone)]
pub struct Bsgs {
    points: usize,
    strong: Arc<Vec<Arc<StrongGen>>>,
    levels: Vec<Arc<Level>>,
}

struct Builder {
    points: usize,
    strong: Vec<Arc<StrongGen>>,
    levels: Vec<Level>,
    explicit_used: usize,
}

impl Builder {
    fn new(points: usize) -> Self {
        Builder {
            points,
            strong: Vec::new(),
            levels: Vec::new(),
            explicit_used: 0,
        }
    }

    fn push_level(&mut self, base: u32) {
        let explicit = self.explicit_used + self.points <= EXPLICIT_BUDGET;
        if explicit {
            self.explicit_used += self.points;
        }
        self.levels.push(Level::new(base, self.points, explicit));
    }

    fn add_strong(&mut self, perm: Perm) -> u32 {
        let inv = perm.inverse();
        self.strong.push(Arc::new(StrongGen { perm, inv }));
        (self.strong.len() - 1) as u32
    }

    /// Appends generator `g` to level `i` and extends its orbit.
    fn add_gen_to_level(&mut self, i: usize, g: u32) {
        let points = self.points;
        let strong = &self.strong;
        let level = &mut self.levels[i];
        level.gens.push(g);
        let new_local = (level.gens.len() - 1) as u32;
        let old_len = level.orbit.len();
        let mut added = 0usize;
        let extend = |level: &mut Level, k: usize, gl: u32, added: &mut usize| {
            let s = &strong[level.gens[gl as usize] as usize];
            let p = level.orbit[k];
            let q = s.perm.apply(p as usize) as u32;
            if level.pos.contains_key(&q) {
                return;
            }
            level.pos.insert(q, level.orbit.len() as u32);
            level.orbit.push(q);
            level.parent.push((gl, k as u32));
            if let Some(reps) = level.inv_reps.as_mut() {
                let r = reps[k].compose(&s.inv);
                reps.push(r);
                *added += points;
            }
        };
        for k in 0..old_len {
            extend(level, k, new_local, &mut added);
        }
        let mut k = old_len;
        while k < level.orbit.len() {
            for gl in 0..level.gens.len() as u32 {
                extend(level, k, gl, &mut added);
            }
            k += 1;
        }
        self.explicit_used += added;
        if self.explicit_used > EXPLICIT_BUDGET {
            if let Some(reps) = self.levels[i].inv_reps.take() {
                self.explicit_used -= reps.len() * points;
            }
        }
    }

    fn sift_from(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for i in start..self.levels.len() {
            let level = &self.levels[i];
            let beta = g.apply(level.base as usize) as u32;
            let Some(&k) = level.pos.get(&beta) else {
                return (g, i);
            };
            g = apply_inverse_rep(&self.strong, level, k as usize, g);
        }
        (g, self.levels.len())
    }

    /// Adds a sifted residue fixing the first `drop` base points to levels
    /// `from..=drop`, creating a new base point if needed.
    fn install(&mut self, residue: Perm, from: usize, drop: usize) -> usize {
        let g = self.add_strong(residue);
        if drop == self.levels.len() {
            let moved = self.strong[g as usize]
                .perm
                .first_moved()
                .expect("residue is not the identity") as u32;
            self.push_level(moved);
        }
        for l in from..=drop {
            self.add_gen_to_level(l, g);
        }
        drop
    }

    /// Scans unchecked Schreier generators of level `i`; returns the first
    /// one that does not sift, installed, with its drop level.
    fn scan(&mut self, i: usize) -> Option<usize> {
        let (cp, cg) = self.levels[i].checked;
        let big_p = self.levels[i].orbit.len();
        let big_g = self.levels[i].gens.len();
        let region_a = cp * (big_g - cg);
        let total = region_a + (big_p - cp) * big_g;
        let (mut idx, snap_p, snap_g) = self.levels[i].cursor;
        if snap_p != big_p || snap_g != big_g {
            idx = 0;
        }
        while idx < total {
            let (k, gl) = if idx < region_a {
                (idx / (big_g - cg), cg + idx % (big_g - cg))
            } else {
                let r = idx - region_a;
                (cp + r / big_g, r % big_g)
            };
            idx += 1;
            let h = self.schreier_generator(i, k, gl);
            let (res, drop) = self.sift_from(h, i + 1);
            if drop < self.levels.len() || !res.is_identity() {
                self.levels[i].cursor = (idx, big_p, big_g);
                return Some(self.install(res, i + 1, drop));
            }
        }
        self.levels[i].checked = (big_p, big_g);
        self.levels[i].cursor = (0, 0, 0);
        None
    }

    /// `u_{s(β)}^{-1} · s · u_β` for the orbit point at position `k`.
    fn schreier_generator(&self, i: usize, k: usize, gl: usize) -> Perm {
        let level = &self.levels[i];
        let s = &self.strong[level.gens[gl] as usize];
        let u = forward_rep(&self.strong, level, k, self.points);
        let su = s.perm.compose(&u);
        let target = s.perm.apply(level.orbit[k] as usize) as u32;
        let kt = level.pos[&target] as usize;
        apply_inverse_rep(&self.strong, level, kt, su)
    }

    fn complete(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            match self.scan(i as usize) {
                None => i -= 1,
                Some(j) => i = j.min(self.levels.len() - 1) as isize,
            }
        }
    }

    fn finish(self) -> Bsgs {
        Bsgs {
            points: self.points,
            strong: Arc::new(self.strong),
            levels: self.levels.into_iter().map(Arc::new).collect(),
        }
    }
}

/// `u_β^{-1} ∘ g` for the orbit point at position `k`.
fn apply_inverse_rep(strong: &[Arc<StrongGen>], level: &Level, mut k: usize, mut g: Perm) -> Perm {
    if let Some(reps) = &level.inv_reps {
        return reps[k].compose(&g);
    }
    while k != 0 {
        let (gl, parent) = level.parent[k];
        g = strong[level.gens[gl as usize] as usize].inv.compose(&g);
        k = parent as usize;
    }
    g
}

/// `u_β` for the orbit point at position `k`.
fn forward_rep(strong: &[Arc<StrongGen>], level: &Level, k: usize, points: usize) -> Perm {
    if let Some(reps) = &level.inv_reps {
        return reps[k].inverse();
    }
    let mut path = Vec::new();
    let mut j = k;
    while j != 0 {
        let (gl, parent) = level.parent[j];
        path.push(level.gens[gl as usize]);
        j = parent as usize;
    }
    // u_β = s_last ∘ … ∘ s_first, where s_first is applied to the base point
    let mut u = Perm::identity(points);
    for &g in path.iter().rev() {
        u = strong[g as usize].perm.compose(&u);
    }
    u
}

impl Bsgs {
    /// Runs Schreier–Sims on `gens` with the given base prefix; further base
    /// points are the first points moved by new residues.
    pub fn build(points: usize, gens: &[Perm], prefix: &[u32]) -> Bsgs {
        let mut b = Builder::new(points);
        for &p in prefix {
            b.push_level(p);
        }
        let mut ids = Vec::new();
        for g in gens {
            if g.is_identity() {
                continue;
            }
            let id = b.add_strong(g.clone());
            ids.push(id);
            let fixes_all = b.levels.iter().all(|l| g.apply(l.base as usize) == l.base as usize);
            if fixes_all {
                let moved = g.first_moved().unwrap() as u32;
                b.push_level(moved);
            }
        }
        for i in 0..b.levels.len() {
            for &id in &ids {
                let s = &b.strong[id as usize].perm;
                if b.levels[..i].iter().all(|l| s.apply(l.base as usize) == l.base as usize) {
                    b.add_gen_to_level(i, id);
                }
            }
        }
        if !b.levels.is_empty() {
            let top = b.levels.len() - 1;
            b.complete(top);
        }
        b.finish()
    }

    /// Rebuilds from serialized data, trusting that it is complete.
    pub fn from_data(data: &BsgsData) -> Bsgs {
        let mut b = Builder::new(data.points);
        for &p in &data.base {
            b.push_level(p);
        }
        for g in &data.strong {
            let id = b.add_strong(g.clone());
            for i in 0..b.levels.len() {
                let fixes_prefix = b.levels[..i]
                    .iter()
                    .all(|l| g.apply(l.base as usize) == l.base as usize);
                if fixes_prefix {
                    b.add_gen_to_level(i, id);
                }
            }
        }
        b.finish()
    }

    pub fn to_data(&self) -> BsgsData {
        // Only the generators referenced by some level are needed.
        let mut used: Vec<u32> = self.levels.iter().flat_map(|l| l.gens.iter().copied()).collect();
        used.sort_unstable();
        used.dedup();
        BsgsData {
            points: self.points,
            base: self.base(),
            strong: used.iter().map(|&g| self.strong[g as usize].perm.clone()).collect(),
        }
    }

    /// Adds `g` to the group; returns whether the group grew.
    pub fn extend(&mut self, g: &Perm) -> bool {
        let (res, drop) = self.sift(g);
        if drop == self.levels.len() && res.is_identity() {
            return false;
        }
        let points = self.points;
        let strong = std::mem::take(&mut self.strong);
        let levels: Vec<Level> = std::mem::take(&mut self.levels)
            .into_iter()
            .map(|l| Arc::try_unwrap(l).unwrap_or_else(|a| (*a).clone()))
            .collect();
        let explicit_used = levels
            .iter()
            .filter(|l| l.inv_reps.is_some())
            .map(|l| l.orbit.len() * points)
            .sum();
        let mut b = Builder {
            points,
            strong: Arc::try_unwrap(strong).unwrap_or_else(|a| (*a).clone()),
            levels,
            explicit_used,
        };
        let j = b.install(res, 0, drop);
        b.complete(j.min(b.levels.len() - 1));
        *self = b.finish();
        true
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit_len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit_len()))
    }

    /// Residue of `g` and the level where sifting stopped.
    pub fn sift(&self, g: &Perm) -> (Perm, usize) {
        let mut g = g.clone();
        for (i, level) in self.levels.iter().enumerate() {
            let beta = g.apply(level.base as usize) as u32;
            let Some(&k) = level.pos.get(&beta) else {
                return (g, i);
            };
            g = apply_inverse_rep(&self.strong, level, k as usize, g);
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.len() != self.points {
            return false;
        }
        let (res, drop) = self.sift(g);
        drop == self.levels.len() && res.is_identity()
    }

    pub(crate) fn level(&self, i: usize) -> &Level {
        &self.levels[i]
    }

    /// Strong generators of the pointwise stabilizer of the first `i` base
    /// points.
    pub fn level_generators(&self, i: usize) -> Vec<Perm> {
        match self.levels.get(i) {
            Some(l) => l.gens.iter().map(|&g| self.strong[g as usize].perm.clone()).collect(),
            None => Vec::new(),
        }
    }

    /// The BSGS of the pointwise stabilizer of the first `i` base points.
    pub fn suffix(&self, i: usize) -> Bsgs {
        Bsgs {
            points: self.points,
            strong: self.strong.clone(),
            levels: self.levels[i.min(self.levels.len())..].to_vec(),
        }
    }

    /// Transversal element of level `i` mapping the base point to `point`.
    pub fn transversal(&self, i: usize, point: u32) -> Option<Perm> {
        let level = &self.levels[i];
        let &k = level.pos.get(&point)?;
        Some(forward_rep(&self.strong, level, k as usize, self.points))
    }

    /// Whether some element maps the first `images.len()` base points to
    /// `images`.
    pub fn base_image_feasible(&self, images: &[u32]) -> bool {
        let mut w: Option<Perm> = None;
        for (i, &img) in images.iter().enumerate() {
            let level = &self.levels[i];
            let beta = match &w {
                Some(p) => p.apply(img as usize) as u32,
                None => img,
            };
            let Some(&k) = level.pos.get(&beta) else {
                return false;
            };
            let cur = w.take().unwrap_or_else(|| Perm::identity(self.points));
            w = Some(apply_inverse_rep(&self.strong, level, k as usize, cur));
        }
        true
    }

    /// All elements, in base-image order.
    pub fn elements(&self) -> Vec<Perm> {
        let reps: Vec<Vec<Perm>> = self
            .levels
            .iter()
            .map(|l| (0..l.orbit_len()).map(|k| forward_rep(&self.strong, l, k, self.points)).collect())
            .collect();
        let mut out = vec![Perm::identity(self.points)];
        // g = u_0 ∘ u_1 ∘ … ∘ u_{k-1}; build from the deepest level up
        for level_reps in reps.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level_reps.len());
            for u in level_reps {
                for g in &out {
                    next.push(u.compose(g));
                }
            }
            out = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn closure(gens: &[Perm], points: usize) -> HashSet<Perm> {
        let mut seen = HashSet::new();
        let id = Perm::identity(points);
        seen.insert(id.clone());
        let mut stack = vec![id];
        while let Some(g) = stack.pop() {
            for s in gens {
                let h = s.compose(&g);
                if seen.insert(h.clone()) {
                    stack.push(h);
                }
            }
        }
        seen
    }

    fn p(v: &[u32]) -> Perm {
        Perm::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn symmetric_groups() {
        for n in 1..=6usize {
            let mut gens = Vec::new();
            if n > 1 {
                gens.push(p(&(0..n as u32).map(|i| (i + 1) % n as u32).collect::<Vec<_>>()));
                let mut t: Vec<u32> = (0..n as u32).collect();
                t.swap(0, 1);
                gens.push(p(&t));
            }
            let b = Bsgs::build(n, &gens, &[]);
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(b.order(), BigUint::from(fact));
            assert_eq!(b.elements().len() as u64, fact);
        }
    }

    #[test]
    fn order_matches_closure() {
        let gens = vec![p(&[1, 0, 2, 3, 4, 5, 6, 7]), p(&[2, 3, 4, 5, 6, 7, 0, 1]), p(&[0, 1, 2, 3, 5, 4, 7, 6])];
        let b = Bsgs::build(8, &gens, &[]);
        let c = closure(&gens, 8);
        assert_eq!(b.order(), BigUint::from(c.len()));
        for g in &c {
            assert!(b.contains(g));
        }
        let elems: HashSet<Perm> = b.elements().into_iter().collect();
        assert_eq!(elems, c);
    }

    #[test]
    fn prefix_gives_stabilizers() {
        let gens = vec![p(&[1, 2, 3, 4, 0]), p(&[1, 0, 2, 3, 4])];
        let b = Bsgs::build(5, &gens, &[3, 1]);
        assert_eq!(b.base()[..2], [3, 1]);
        assert_eq!(b.order(), BigUint::from(120u32));
        assert_eq!(b.suffix(1).order(), BigUint::from(24u32));
        assert_eq!(b.suffix(2).order(), BigUint::from(6u32));
        for g in b.suffix(2).elements() {
            assert_eq!(g.apply(3), 3);
            assert_eq!(g.apply(1), 1);
        }
    }

    #[test]
    fn extension_and_roundtrip() {
        let mut b = Bsgs::build(6, &[p(&[1, 0, 2, 3, 4, 5])], &[]);
        assert_eq!(b.order(), BigUint::from(2u32));
        assert!(b.extend(&p(&[0, 1, 3, 2, 4, 5])));
        assert!(!b.extend(&p(&[1, 0, 3, 2, 4, 5])));
        assert_eq!(b.order(), BigUint::from(4u32));
        assert!(b.extend(&p(&[2, 3, 0, 1, 4, 5])));
        assert_eq!(b.order(), BigUint::from(8u32));
        let again = Bsgs::from_data(&b.to_data());
        assert_eq!(again.order(), b.order());
        assert!(again.contains(&p(&[3, 2, 1, 0, 4, 5])));
    }

    #[test]
    fn base_image_feasibility() {
        let gens = vec![p(&[1, 2, 0, 3])];
        let b = Bsgs::build(4, &gens, &[]);
        assert!(b.base_image_feasible(&[1]));
        assert!(!b.base_image_feasible(&[3]));
    }
}
