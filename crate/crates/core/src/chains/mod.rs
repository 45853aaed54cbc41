//! Vertex-stabilizer chains along a basepoint path, truncated at finite depth.
//!
//! Level `l` of a chain stands for the stabilizer `G_l` of the length-`l`
//! prefix of the basepoint and the cylinder `U_l` below that prefix. Every
//! group here is a finite image on one tree level; limit objects are only
//! ever represented by such truncations.

mod certificates;
mod classify;
mod conjugacy;
mod discriminant;
mod kernel;
mod report;
mod subchains;

use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::automaton::AutomatonSystem;
use crate::error::{Error, Result};
use crate::quotients::{group_image, Bsgs, BsgsData, PermGroup};
use crate::tree::{BoundaryPoint, Cylinder, Vertex};

pub use certificates::{growth_certificates, GrowthCertificate};
pub use classify::{classify, ClassificationVerdict, Evidence, Verdict, VerdictData};
pub use conjugacy::conjugacy_witness;
pub use discriminant::{discriminant_approx, DiscriminantApprox};
pub use kernel::{kernel_probe, totally_not_normal_check, KernelReport, TnnReport, TnnWitness};
pub use report::{analyze, ChainAnalysis, ChainReport, LevelRow};
pub use subchains::{centralizer_subchain, heights, stabilizer_subchain, Height, ZEntry};

/// Persistent storage for BSGS data, keyed by an opaque string that encodes
/// the system hash, the kind of group, the level and the base prefix.
pub trait GroupStore: Send + Sync {
    fn load(&self, key: &str) -> Option<BsgsData>;
    fn store(&self, key: &str, data: &BsgsData);
}

/// The chain `G = G_0 ⊃ G_1 ⊃ … ⊃ G_L` of stabilizers of the prefixes of `x`.
pub struct GroupChain {
    sys: Arc<AutomatonSystem>,
    basepoint: BoundaryPoint,
    depth: usize,
    store: Option<Arc<dyn GroupStore>>,
    images: Vec<OnceLock<PermGroup>>,
}

impl std::fmt::Debug for GroupChain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupChain")
            .field("system", &self.sys.hash())
            .field("basepoint", &self.basepoint.to_string())
            .field("depth", &self.depth)
            .finish()
    }
}

/// Builds the chain at `x` down to level `depth`, checking that every level
/// image is transitive (so the action on the boundary is minimal).
pub fn build_chain(sys: Arc<AutomatonSystem>, x: BoundaryPoint, depth: usize) -> Result<GroupChain> {
    x.validate(sys.degree())?;
    let cap = sys.limits().point_cap;
    if sys.degree().pow(depth).is_none_or(|c| c > cap) {
        return Err(Error::cap(format!("level {depth} vertex count"), cap as u64));
    }
    // Transitivity at level L implies it at every level above.
    if depth > 0 && !group_image(&sys, depth)?.is_transitive() {
        for l in 1..=depth {
            if !group_image(&sys, l)?.is_transitive() {
                return Err(Error::NotMinimal { level: l });
            }
        }
    }
    // Cylinders are adapted because generators permute level vertices.
    let perms = sys.letter_perms(depth)?;
    assert!(perms.iter().all(|p| p.is_tree_automorphism(sys.degree(), depth)));
    Ok(GroupChain {
        sys,
        basepoint: x,
        depth,
        store: None,
        images: (0..=depth).map(|_| OnceLock::new()).collect(),
    })
}

impl GroupChain {
    pub fn with_store(mut self, store: Arc<dyn GroupStore>) -> Self {
        self.store = Some(store);
        self
    }

    pub fn system(&self) -> &AutomatonSystem {
        &self.sys
    }

    pub fn basepoint(&self) -> &BoundaryPoint {
        &self.basepoint
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn prefix(&self, l: usize) -> Vertex {
        self.basepoint.prefix(l)
    }

    pub fn cylinder(&self, l: usize) -> Cylinder {
        self.basepoint.cylinder(l)
    }

    /// Index of the level-`l` prefix among the level vertices.
    pub fn point(&self, l: usize) -> usize {
        self.prefix(l).index(self.sys.degree())
    }

    /// Indices at level `n` of the descendants of the level-`l` prefix.
    pub fn descendants(&self, l: usize, n: usize) -> std::ops::Range<usize> {
        let width = self.sys.degree().get().pow((n - l) as u32);
        let start = self.point(l) * width;
        start..start + width
    }

    fn check_level(&self, l: usize) -> Result<()> {
        if l > self.depth {
            return Err(Error::LevelMismatch {
                expected: self.depth,
                found: l,
            });
        }
        Ok(())
    }

    pub(crate) fn store_key(&self, kind: &str, level: usize) -> String {
        format!("{}-{kind}-{level}-{}", self.sys.hash(), self.prefix(level))
    }

    /// Loads a BSGS from the store if present, otherwise computes and saves it.
    pub(crate) fn cached_bsgs(&self, key: &str, points: usize, compute: impl FnOnce() -> Result<Bsgs>) -> Result<Bsgs> {
        if let Some(store) = &self.store {
            if let Some(data) = store.load(key) {
                if data.points == points && data.strong.iter().all(|g| g.len() == points) {
                    return Ok(Bsgs::from_data(&data));
                }
            }
        }
        let b = compute()?;
        if let Some(store) = &self.store {
            store.store(key, &b.to_data());
        }
        Ok(b)
    }

    /// The level image `Q_l`, with a base starting at the prefix of `x`.
    pub fn level_group(&self, l: usize) -> Result<&PermGroup> {
        self.check_level(l)?;
        if let Some(g) = self.images[l].get() {
            return Ok(g);
        }
        let q = group_image(&self.sys, l)?;
        if !q.is_trivial() {
            let key = self.store_key("Q", l);
            let b = self.cached_bsgs(&key, q.points(), || Ok(q.bsgs_with_prefix(&[self.point(l)])))?;
            q.set_bsgs(b);
        }
        Ok(self.images[l].get_or_init(|| q))
    }
}

/// One row of the quotient table: `Q_l` and the stabilizer `D_l` of the
/// level-`l` prefix.
#[derive(Debug, Clone)]
pub struct QuotientLevel {
    pub level: usize,
    pub q: PermGroup,
    pub d: PermGroup,
    pub vertices: usize,
    /// Index of the basepoint prefix, the point `D` stabilizes.
    pub point: usize,
}

impl QuotientLevel {
    pub fn order_q(&self) -> BigUint {
        self.q.order()
    }

    pub fn order_d(&self) -> BigUint {
        self.d.order()
    }
}

/// `Q_l` and `D_l` for every `l <= depth`.
pub fn quotient_table(chain: &GroupChain, depth: usize) -> Result<Vec<QuotientLevel>> {
    chain.check_level(depth)?;
    let rows = (0..=depth)
        .into_par_iter()
        .map(|l| {
            let q = chain.level_group(l)?.clone();
            let d = if q.is_trivial() {
                PermGroup::trivial(q.degree(), l)
            } else {
                PermGroup::from_bsgs(q.degree(), l, q.bsgs().suffix(1))
            };
            let vertices = q.points();
            assert_eq!(q.order(), BigUint::from(vertices) * d.order(), "orbit-stabilizer at level {l}");
            Ok(QuotientLevel {
                level: l,
                q,
                d,
                vertices,
                point: chain.point(l),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rows)
}
