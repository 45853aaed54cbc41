//! Box-bounded dynamical probes with exact certificates.
//!
//! Every claim returned here is backed by the automaton decision procedures;
//! an empty result only means the searched box held no witness.

mod coe;
mod freeness;
mod lqa;
mod nonhausdorff;

use rayon::prelude::*;

use crate::automaton::{AutomatonSystem, GroupWord, ReducedWords};
use crate::error::{Error, Result};
use crate::tree::Vertex;

pub use coe::{coe_check, Assignment, CoeOptions, CoeWitness, Collision};
pub use freeness::{topological_freeness_probe, FreenessReport, FreenessVerdict, FixedCylinders};
pub use lqa::{lqa_probe, LqaOptions, LqaReport, LqaViolation};
pub use nonhausdorff::{
    germ_hausdorff_probe, non_hausdorff_probe, GermReport, NhFailure, NhLevel, NonHausdorffWitness,
};

/// The maximal cylinders below `root`, down to level `max_level`, on which
/// `word` acts as the identity, in lexicographic order. A vertex is listed
/// when the word fixes it and its section is trivial, while the section at
/// its parent is not.
pub fn identity_cylinders(sys: &AutomatonSystem, word: &GroupWord, root: &Vertex, max_level: usize) -> Result<Vec<Vertex>> {
    let (img, section) = sys.act_with_section(word, root);
    let mut out = Vec::new();
    if img != *root {
        return Ok(out);
    }
    if sys.is_identity(&section)? {
        out.push(root.clone());
        return Ok(out);
    }
    descend(sys, root, &section, max_level, &mut out)?;
    Ok(out)
}

fn descend(sys: &AutomatonSystem, u: &Vertex, section: &GroupWord, max_level: usize, out: &mut Vec<Vertex>) -> Result<()> {
    if u.level() >= max_level {
        return Ok(());
    }
    for c in 0..sys.degree().get() as u8 {
        let (img, sub) = sys.step(section, c);
        if img != c {
            continue;
        }
        let child = u.child(c);
        if sys.is_identity(&sub)? {
            out.push(child);
        } else {
            descend(sys, &child, &sub, max_level, out)?;
        }
    }
    Ok(())
}

/// Reduced words of length at most `len`, in enumeration order, checked
/// against the word cap.
pub(crate) fn word_box(sys: &AutomatonSystem, len: usize) -> Result<Vec<GroupWord>> {
    let cap = sys.limits().word_cap;
    if ReducedWords::count(sys.generator_count(), len) > cap {
        return Err(Error::cap(format!("reduced words of length <= {len}"), cap));
    }
    Ok(ReducedWords::new(sys.generator_count(), len).collect())
}

/// Per-word results computed in parallel, returned in word order.
pub(crate) fn per_word<T: Send>(
    words: &[GroupWord],
    f: impl Fn(&GroupWord) -> Result<T> + Sync + Send,
) -> Result<Vec<T>> {
    words.par_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::builtin;

    #[test]
    fn coe_pair_identity_cylinders() {
        let sys = builtin("coe-pair").unwrap().unwrap();
        let a2 = sys.parse_word("a2").unwrap();
        let found = identity_cylinders(&sys, &a2, &Vertex::root(), 6).unwrap();
        assert_eq!(found, vec![sys.parse_vertex("1").unwrap()]);
        let a1 = sys.parse_word("a1^4").unwrap();
        assert!(identity_cylinders(&sys, &a1, &Vertex::root(), 8).unwrap().is_empty());
    }

    #[test]
    fn identity_word_covers_root() {
        let sys = builtin("odometer").unwrap().unwrap();
        let found = identity_cylinders(&sys, &GroupWord::identity(), &Vertex::root(), 3).unwrap();
        assert_eq!(found, vec![Vertex::root()]);
    }
}
