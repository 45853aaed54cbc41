//! The stabilizer chain `K_l` and centralizer chain `Z_l`, truncated at a
//! level `n`, inside the discriminant approximation `D` on that level.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::automaton::GroupWord;
use crate::error::{Error, Result};
use crate::quotients::{Bsgs, Perm, PermGroup};

use super::{DiscriminantApprox, GroupChain};

/// Elements of `D` fixing every level-`n` descendant of `x_l`, for
/// `l = 0..=n`. The base of `D` is ordered so that each `K_l` is a suffix of
/// the stabilizer chain.
pub fn stabilizer_subchain(chain: &GroupChain, disc: &DiscriminantApprox) -> Result<Vec<PermGroup>> {
    let n = disc.level;
    let d = &disc.group;
    let degree = d.degree();
    if d.is_trivial() {
        return Ok((0..=n).map(|_| PermGroup::trivial(degree, n)).collect());
    }
    let mut prefix: Vec<u32> = vec![chain.point(n) as u32];
    for l in (0..n).rev() {
        let inner = chain.descendants(l + 1, n);
        prefix.extend(chain.descendants(l, n).filter(|p| !inner.contains(p)).map(|p| p as u32));
    }
    let b = Bsgs::build(d.points(), &d.bsgs().level_generators(0), &prefix);
    let k: Vec<PermGroup> = (0..=n)
        .map(|l| PermGroup::from_bsgs(degree, n, b.suffix(chain.descendants(l, n).len())))
        .collect();
    debug_assert!(k.windows(2).all(|w| w[0].is_subgroup_of(&w[1]).unwrap()));
    Ok(k)
}

/// A centralizer level, or the reason it could not be decided.
#[derive(Debug, Clone)]
pub enum ZEntry {
    Group(PermGroup),
    Undecided(String),
}

impl ZEntry {
    pub fn group(&self) -> Option<&PermGroup> {
        match self {
            ZEntry::Group(g) => Some(g),
            ZEntry::Undecided(_) => None,
        }
    }

    pub fn order(&self) -> Option<BigUint> {
        self.group().map(|g| g.order())
    }
}

/// Generators of the stabilizer of `x_l` in `Q_n`: the stabilizer of `x_n`
/// plus coset representatives reaching the rest of the descendants of `x_l`.
fn stabilizer_generators(chain: &GroupChain, l: usize, n: usize) -> Result<Vec<Perm>> {
    let q = chain.level_group(n)?;
    if q.is_trivial() {
        return Ok(Vec::new());
    }
    let b = q.bsgs();
    let xn = chain.point(n) as u32;
    debug_assert_eq!(b.base().first(), Some(&xn));
    let mut gens = b.level_generators(1);
    let mut reached = orbit_flags(&gens, xn as usize, q.points());
    for beta in chain.descendants(l, n) {
        if reached[beta] {
            continue;
        }
        let u = b
            .transversal(0, beta as u32)
            .expect("transitive level image reaches every descendant");
        gens.push(u);
        reached = orbit_flags(&gens, xn as usize, q.points());
    }
    Ok(gens)
}

fn orbit_flags(gens: &[Perm], start: usize, points: usize) -> Vec<bool> {
    let mut seen = vec![false; points];
    seen[start] = true;
    let mut stack = vec![start];
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

/// `Z_l`: elements of `D` commuting with the image of `G_l` in `Q_n`.
/// Levels are computed independently; a level whose search exceeds the node
/// cap is reported as undecided.
pub fn centralizer_subchain(chain: &GroupChain, disc: &DiscriminantApprox) -> Result<Vec<ZEntry>> {
    let n = disc.level;
    let limits = *chain.system().limits();
    let small = limits.enum_cap.min(1 << 12);
    let z = (0..=n)
        .into_par_iter()
        .map(|l| {
            let targets = stabilizer_generators(chain, l, n)?;
            match disc.group.centralizer_in(&targets, small, limits.node_cap) {
                Ok(g) => Ok(ZEntry::Group(g)),
                Err(e @ Error::Undecided { .. }) => Ok(ZEntry::Undecided(e.to_string())),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(z)
}

/// Checks the inclusions `K_l ⊆ K_{l+1}`, `Z_l ⊆ Z_{l+1}` and `Z_l ⊆ K_l`
/// wherever both sides are known.
pub(crate) fn check_inclusions(k: &[PermGroup], z: &[ZEntry]) -> Result<()> {
    for l in 0..k.len() {
        if l + 1 < k.len() && !k[l].is_subgroup_of(&k[l + 1])? {
            return Err(Error::Invalid(format!("stabilizer chain not monotone at level {l}")));
        }
        if let Some(zl) = z[l].group() {
            if !zl.is_subgroup_of(&k[l])? {
                return Err(Error::Invalid(format!("centralizer not inside stabilizer at level {l}")));
            }
            if let Some(next) = z.get(l + 1).and_then(|e| e.group()) {
                if !zl.is_subgroup_of(next)? {
                    return Err(Error::Invalid(format!("centralizer chain not monotone at level {l}")));
                }
            }
        }
    }
    Ok(())
}

/// Position of a probe element in the stabilizer chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Height {
    pub word: String,
    pub in_discriminant: bool,
    /// Least `l` with the level image in `K_l`, if any.
    pub height: Option<usize>,
}

pub fn heights(chain: &GroupChain, disc: &DiscriminantApprox, k: &[PermGroup], words: &[GroupWord]) -> Result<Vec<Height>> {
    let sys = chain.system();
    words
        .iter()
        .map(|w| {
            let img = sys.word_perm(w, disc.level)?;
            let in_discriminant = disc.group.contains(&img)?;
            let mut height = None;
            if in_discriminant {
                for (l, kl) in k.iter().enumerate() {
                    if kl.contains(&img)? {
                        height = Some(l);
                        break;
                    }
                }
            }
            Ok(Height {
                word: sys.format_word(w),
                in_discriminant,
                height,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::builtin;
    use crate::chains::{build_chain, discriminant_approx};
    use crate::quotients::{closure, commutes};
    use std::sync::Arc;

    fn setup(name: &str, x: &str, n: usize, look: usize) -> (GroupChain, DiscriminantApprox) {
        let sys = Arc::new(builtin(name).unwrap().unwrap());
        let x = sys.parse_point(x).unwrap();
        let c = build_chain(sys, x, look).unwrap();
        let d = discriminant_approx(&c, n, look).unwrap();
        (c, d)
    }

    #[test]
    fn odometer_all_trivial() {
        let (c, d) = setup("odometer", ".(1)", 5, 7);
        let k = stabilizer_subchain(&c, &d).unwrap();
        let z = centralizer_subchain(&c, &d).unwrap();
        assert!(k.iter().all(|g| g.is_trivial()));
        assert!(z.iter().all(|e| e.group().unwrap().is_trivial()));
    }

    /// Oracle: filter the closure of `D` by the defining conditions.
    #[test]
    fn pink_level_three_matches_enumeration() {
        let (c, d) = setup("pink2s:2", "11.(0)", 3, 5);
        let k = stabilizer_subchain(&c, &d).unwrap();
        let z = centralizer_subchain(&c, &d).unwrap();
        check_inclusions(&k, &z).unwrap();
        let elems = closure(d.group.generators(), 8, 1 << 20).unwrap();
        let q3 = closure(c.level_group(3).unwrap().generators(), 8, 1 << 20).unwrap();
        for l in 0..=3 {
            let desc: Vec<usize> = c.descendants(l, 3).collect();
            let kl = elems.iter().filter(|g| desc.iter().all(|&p| g.apply(p) == p)).count();
            assert_eq!(k[l].order(), BigUint::from(kl), "K_{l}");
            let xl = c.point(l);
            let stab: Vec<&Perm> = q3.iter().filter(|g| g.apply(desc[0]) / desc.len() == xl).collect();
            let zl = elems
                .iter()
                .filter(|g| stab.iter().all(|t| commutes(g, t)))
                .count();
            assert_eq!(z[l].order().unwrap(), BigUint::from(zl), "Z_{l}");
        }
    }

    #[test]
    fn generators_sit_in_deep_stabilizers() {
        let (c, d) = setup("pink2s:2", "11.(0)", 4, 6);
        let k = stabilizer_subchain(&c, &d).unwrap();
        let sys = c.system();
        let words: Vec<GroupWord> = ["a2", "a3", "a4"].iter().map(|w| sys.parse_word(w).unwrap()).collect();
        for h in heights(&c, &d, &k, &words).unwrap() {
            assert!(h.in_discriminant);
            assert!(h.height.unwrap() <= 2, "{h:?}");
        }
    }
}
