use std::collections::HashMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::automaton::{GroupWord, ReducedWords};
use crate::error::{Error, Result};
use crate::quotients::Perm;

use super::{GroupChain, QuotientLevel};

/// Words up to a length bound that fix the basepoint, those acting
/// trivially, and the fixers up to equality in the group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KernelReport {
    pub word_length: usize,
    pub fixers: Vec<String>,
    pub trivial_actors: Vec<String>,
    /// One shortest representative per group element among the fixers.
    pub rational_points: Vec<String>,
    pub undecided: Vec<String>,
}

/// Tests every reduced word of length at most `len` for fixing the
/// basepoint and for acting as the identity.
pub fn kernel_probe(chain: &GroupChain, len: usize) -> Result<KernelReport> {
    let sys = chain.system();
    let cap = sys.limits().word_cap;
    if ReducedWords::count(sys.generator_count(), len) > cap {
        return Err(Error::cap(format!("reduced words of length <= {len}"), cap));
    }
    let x = chain.basepoint();
    // level images bucket candidates before the exact identity test
    let bucket_level = chain.depth().min(8);
    let mut fixers = Vec::new();
    let mut trivial = Vec::new();
    let mut reps: Vec<GroupWord> = Vec::new();
    let mut buckets: HashMap<Perm, Vec<usize>> = HashMap::new();
    let mut undecided = Vec::new();
    for w in ReducedWords::new(sys.generator_count(), len) {
        match sys.fixes_boundary_point(&w, x) {
            Ok(true) => {}
            Ok(false) => continue,
            Err(e @ Error::Undecided { .. }) => {
                undecided.push(format!("{}: {e}", sys.format_word(&w)));
                continue;
            }
            Err(e) => return Err(e),
        }
        fixers.push(sys.format_word(&w));
        match sys.is_identity(&w) {
            Ok(true) => trivial.push(sys.format_word(&w)),
            Ok(false) => {}
            Err(e @ Error::Undecided { .. }) => undecided.push(format!("{}: {e}", sys.format_word(&w))),
            Err(e) => return Err(e),
        }
        let img = sys.word_perm(&w, bucket_level)?;
        let bucket = buckets.entry(img).or_default();
        let mut known = false;
        for &r in bucket.iter() {
            let diff = reps[r].inverse().mul(&w);
            match sys.is_identity(&diff) {
                Ok(true) => {
                    known = true;
                    break;
                }
                Ok(false) => {}
                Err(e @ Error::Undecided { .. }) => {
                    undecided.push(format!("{}: {e}", sys.format_word(&diff)));
                }
                Err(e) => return Err(e),
            }
        }
        if !known {
            bucket.push(reps.len());
            reps.push(w);
        }
    }
    Ok(KernelReport {
        word_length: len,
        fixers,
        trivial_actors: trivial,
        rational_points: reps.iter().map(|w| sys.format_word(w)).collect(),
        undecided,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TnnWitness {
    pub h: Perm,
    pub g: Perm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TnnReport {
    pub level: usize,
    pub holds: bool,
    /// Number of nontrivial elements of `D` checked.
    pub checked: u64,
    /// The first few witnesses `(h, g)` with `g h g^-1` outside `D`.
    pub witnesses: Vec<TnnWitness>,
}

const KEPT_WITNESSES: usize = 8;

/// Checks that no nontrivial element of `D_l` has all its `Q_l`-conjugates
/// inside `D_l`. For each `h`, a point `p` moved by `h` and an element `g`
/// with `g(p) = x_l` give `g h g^-1 (x_l) = g(h(p)) != x_l`.
pub fn totally_not_normal_check(q: &QuotientLevel, enum_cap: u64) -> Result<TnnReport> {
    if q.d.order() > BigUint::from(enum_cap) {
        return Err(Error::undecided("totally-not-normal enumeration", enum_cap));
    }
    let x = q.point;
    let b = q.q.bsgs_with_prefix(&[x]);
    let mut witnesses = Vec::new();
    let mut checked = 0u64;
    let mut holds = true;
    for h in q.d.elements(enum_cap)? {
        if h.is_identity() {
            continue;
        }
        checked += 1;
        let p = h.first_moved().expect("nontrivial");
        let u = b.transversal(0, p as u32).expect("transitive level image");
        let g = u.inverse();
        let conj = g.compose(&h).compose(&u);
        if conj.apply(x) == x {
            holds = false;
            continue;
        }
        if witnesses.len() < KEPT_WITNESSES {
            witnesses.push(TnnWitness { h, g });
        }
    }
    Ok(TnnReport {
        level: q.level,
        holds,
        checked,
        witnesses,
    })
}
