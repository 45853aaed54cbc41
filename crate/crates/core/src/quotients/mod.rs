//! Finite permutation groups on the vertices of one tree level.

mod bsgs;
mod centralizer;
mod group;
mod perm;

pub use bsgs::{Bsgs, BsgsData};
pub use group::{closure, commutes, GroupSummary, LevelPermutation, PermGroup};
pub use perm::Perm;

use crate::automaton::{AutomatonSystem, GroupWord};
use crate::error::Result;

/// Permutation of level `n` vertices induced by `word`.
pub fn level_image(sys: &AutomatonSystem, word: &GroupWord, n: usize) -> Result<LevelPermutation> {
    let perm = sys.word_perm(word, n)?;
    debug_assert!(perm.is_tree_automorphism(sys.degree(), n));
    Ok(LevelPermutation { level: n, perm })
}

/// Image of the whole group on level `n`, generated by the generator images.
pub fn group_image(sys: &AutomatonSystem, n: usize) -> Result<PermGroup> {
    let perms = sys.letter_perms(n)?;
    let gens = perms.iter().step_by(2).cloned().collect();
    Ok(PermGroup::new_unchecked(sys.degree(), n, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::builtin;
    use crate::tree::{Degree, Vertex};
    use num_bigint::BigUint;

    #[test]
    fn odometer_images() {
        let sys = builtin("odometer").unwrap().unwrap();
        let a = sys.parse_word("a").unwrap();
        assert_eq!(level_image(&sys, &a, 1).unwrap().perm.images(), &[1, 0]);
        let p3 = level_image(&sys, &a, 3).unwrap();
        assert_eq!(p3.perm.cycle_lengths(), vec![8]);
        assert!(level_image(&sys, &GroupWord::identity(), 4).unwrap().perm.is_identity());
        let g = group_image(&sys, 3).unwrap();
        assert_eq!(g.order(), BigUint::from(8u32));
        assert!(g.is_transitive());
        let st = g.point_stabilizer(&Vertex::parse("000", Degree::BINARY).unwrap()).unwrap();
        assert_eq!(st.order(), BigUint::from(1u32));
        assert_eq!(group_image(&sys, 0).unwrap().order(), BigUint::from(1u32));
        assert_eq!(p3.project(Degree::BINARY, 1), level_image(&sys, &a, 1).unwrap());
    }

    #[test]
    fn coe_pair_images() {
        let sys = builtin("coe-pair").unwrap().unwrap();
        let a2 = sys.parse_word("a2").unwrap();
        let h = builtin("coe-pair-H").unwrap().unwrap();
        let hg = group_image(&h, 2).unwrap();
        // a2 agrees with a1^2 on 0T and with e on 1T, but is neither
        // globally: the cyclic image of H acts regularly, so it does not
        // contain a nontrivial element with a fixed point.
        let a2_img = level_image(&sys, &a2, 2).unwrap();
        let brute = closure(hg.generators(), 4, 100).unwrap();
        assert_eq!(hg.membership(&a2_img).unwrap(), brute.contains(&a2_img.perm));
        assert!(!hg.membership(&a2_img).unwrap());
        let only_a2 = PermGroup::new(Degree::BINARY, 1, vec![level_image(&sys, &a2, 1).unwrap().perm]).unwrap();
        assert!(!only_a2.is_transitive());
    }

    #[test]
    fn pink_projection() {
        let sys = builtin("pink2s:2").unwrap().unwrap();
        let g4 = group_image(&sys, 4).unwrap();
        let g2 = group_image(&sys, 2).unwrap();
        let proj = g4.project(2).unwrap();
        assert!(proj.same_group(&g2).unwrap());
        let brute = closure(g2.generators(), 4, 100).unwrap();
        assert_eq!(g2.order(), BigUint::from(brute.len()));
    }
}
