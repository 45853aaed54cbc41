//! Exact witnesses for strict growth `K_l ⊊ K_{l+1}`.
//!
//! A certificate is a word `w` that acts as the identity on `U_{l+1}`, is
//! not the identity on `U_l`, and whose level-`n` image lies in
//! `K_{l+1} \ K_l`. The first two facts are decided on the automaton, the
//! last on the level image.

use std::collections::VecDeque;

use serde::Serialize;

use crate::automaton::{GroupWord, Letter, ReducedWords};
use crate::error::Result;
use crate::quotients::{Perm, PermGroup};
use crate::tree::Vertex;

use super::GroupChain;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthCertificate {
    /// The certificate separates `K_step` from `K_{step+1}`.
    pub step: usize,
    pub word: String,
    pub seed: String,
    pub conjugator: String,
    /// Vertex at level `step + 1` below which the seed is the identity.
    pub vertex: String,
    #[serde(skip)]
    pub(crate) element: GroupWord,
}

impl GrowthCertificate {
    /// Re-runs every check from scratch.
    pub fn verify(&self, chain: &GroupChain, n: usize, k: &[PermGroup]) -> Result<bool> {
        check(chain, n, k, self.step, &self.element)
    }
}

fn check(chain: &GroupChain, n: usize, k: &[PermGroup], step: usize, w: &GroupWord) -> Result<bool> {
    let sys = chain.system();
    if !sys.is_identity_on_cylinder(w, &chain.cylinder(step + 1))? {
        return Ok(false);
    }
    if sys.is_identity_on_cylinder(w, &chain.cylinder(step))? {
        return Ok(false);
    }
    let img = sys.word_perm(w, n)?;
    Ok(k[step + 1].contains(&img)? && !k[step].contains(&img)?)
}

/// Searches for one certificate per step `l = 0..n-1`, conjugating short
/// seed words so that their identity region lands on the basepoint path.
/// Steps without a certificate within the seed box are `None`.
pub fn growth_certificates(
    chain: &GroupChain,
    n: usize,
    k: &[PermGroup],
    seed_len: usize,
) -> Result<Vec<Option<GrowthCertificate>>> {
    let sys = chain.system();
    let mut found: Vec<Option<GrowthCertificate>> = vec![None; n];
    if n == 0 || k[n].is_trivial() {
        return Ok(found);
    }
    for seed in ReducedWords::new(sys.generator_count(), seed_len) {
        if found.iter().all(|c| c.is_some()) {
            break;
        }
        if seed.is_empty() || sys.is_identity(&seed)? {
            continue;
        }
        let perm = sys.word_perm(&seed, n)?;
        let mut hits = Vec::new();
        collect_boundaries(chain, &perm, n, Vertex::root(), seed.clone(), &mut hits)?;
        for v in hits {
            let step = v.level() - 1;
            if found[step].is_some() {
                continue;
            }
            let g = route(chain, &v)?;
            let w = g.mul(&seed).mul(&g.inverse());
            if check(chain, n, k, step, &w)? {
                found[step] = Some(GrowthCertificate {
                    step,
                    word: sys.format_word(&w),
                    seed: sys.format_word(&seed),
                    conjugator: sys.format_word(&g),
                    vertex: v.to_string(),
                    element: w,
                });
            }
        }
    }
    Ok(found)
}

/// Vertices `v` fixed by `seed` whose section is the identity while the
/// seed moves some level-`n` descendant of the parent of `v`.
fn collect_boundaries(
    chain: &GroupChain,
    perm: &Perm,
    n: usize,
    u: Vertex,
    section: GroupWord,
    out: &mut Vec<Vertex>,
) -> Result<()> {
    let sys = chain.system();
    if u.level() >= n {
        return Ok(());
    }
    let d = sys.degree();
    for c in 0..d.get() as u8 {
        let (img, sub) = sys.step(&section, c);
        if img != c {
            continue;
        }
        let child = u.child(c);
        if sys.is_identity(&sub)? {
            let width = d.get().pow((n - u.level()) as u32);
            let start = u.index(d) * width;
            if (start..start + width).any(|p| perm.apply(p) != p) {
                out.push(child);
            }
        } else {
            collect_boundaries(chain, perm, n, child, sub, out)?;
        }
    }
    Ok(())
}

/// A word mapping `v` to the prefix of the basepoint at the same level,
/// found by breadth-first search on the level's Schreier graph.
fn route(chain: &GroupChain, v: &Vertex) -> Result<GroupWord> {
    let sys = chain.system();
    let level = v.level();
    let perms = sys.letter_perms(level)?;
    let start = v.index(sys.degree());
    let target = chain.point(level);
    let points = perms[0].len();
    let mut via: Vec<Option<(usize, usize)>> = vec![None; points];
    let mut seen = vec![false; points];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        if p == target {
            break;
        }
        for (slot, g) in perms.iter().enumerate() {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                via[q] = Some((p, slot));
                queue.push_back(q);
            }
        }
    }
    let mut letters = Vec::new();
    let mut p = target;
    while p != start {
        let (prev, slot) = via[p].expect("level images are transitive");
        letters.push(Letter::new(slot / 2, slot % 2 == 1));
        p = prev;
    }
    // letters were collected last-applied first, which is word order
    Ok(GroupWord::from_letters(letters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::builtin;
    use crate::chains::{build_chain, discriminant_approx, stabilizer_subchain};
    use std::sync::Arc;

    #[test]
    fn pink_certificates_cover_every_step() {
        let sys = Arc::new(builtin("pink2s:2").unwrap().unwrap());
        let x = sys.parse_point("11.(0)").unwrap();
        let c = build_chain(sys, x, 6).unwrap();
        let d = discriminant_approx(&c, 5, 6).unwrap();
        let k = stabilizer_subchain(&c, &d).unwrap();
        let certs = growth_certificates(&c, 5, &k, 2).unwrap();
        // D fixes x_5 and hence its sibling, so K_4 = K_5 on a binary tree
        assert!(certs[4].is_none());
        assert_eq!(k[4].order(), k[5].order());
        for (l, cert) in certs.iter().enumerate().take(4) {
            let cert = cert.as_ref().unwrap_or_else(|| panic!("no certificate at step {l}"));
            assert!(cert.verify(&c, 5, &k).unwrap());
            assert!(k[l].order() < k[l + 1].order());
        }
    }

    #[test]
    fn odometer_has_none() {
        let sys = Arc::new(builtin("odometer").unwrap().unwrap());
        let c = build_chain(sys, crate::tree::BoundaryPoint::constant(1), 5).unwrap();
        let d = discriminant_approx(&c, 4, 5).unwrap();
        let k = stabilizer_subchain(&c, &d).unwrap();
        assert!(growth_certificates(&c, 4, &k, 3).unwrap().iter().all(|c| c.is_none()));
    }
}
