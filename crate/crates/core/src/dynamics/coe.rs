//! Continuous orbit equivalence between two actions on the same tree,
//! checked through locally constant cocycles on a cylinder partition.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::automaton::{AutomatonSystem, GroupWord};
use crate::error::{Error, Result};
use crate::tree::{level_vertices, Cylinder};

use super::word_box;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoeOptions {
    /// Level of the cylinder partition.
    pub level: usize,
    pub word_len: usize,
    /// Level down to which partition preservation is checked.
    pub depth: usize,
    /// Length of the source words compared in the non-injectivity report.
    pub collision_len: usize,
}

/// `word` agrees with `generator` on `block`, or no word within the box did.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub generator: String,
    pub block: Cylinder,
    pub word: Option<String>,
}

/// Distinct source elements whose cocycle value on `block` is `target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub block: Cylinder,
    pub target: String,
    pub sources: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CoeWitness {
    pub level: usize,
    pub word_len: usize,
    pub depth: usize,
    pub partition: Vec<Cylinder>,
    /// `alpha(g, B)`: a word of the second system equal to generator `g` of
    /// the first on block `B`.
    pub alpha: Vec<Assignment>,
    /// `beta(k, B)`: the same in the other direction.
    pub beta: Vec<Assignment>,
    pub non_injectivity: Vec<Collision>,
    /// Every word up to the length bound maps blocks onto blocks.
    pub partition_preserved: bool,
    /// Generator/block pairs without a match in the box.
    pub unresolved: Vec<String>,
    pub undecided: Vec<String>,
    pub complete: bool,
}

struct Union {
    sys: AutomatonSystem,
    offset: usize,
}

impl Union {
    fn left(&self, w: &GroupWord) -> GroupWord {
        w.clone()
    }

    fn right(&self, w: &GroupWord) -> GroupWord {
        w.shift_generators(self.offset)
    }

    /// Index of the first candidate equal to `src` on `block`.
    fn first_match(
        &self,
        src: &GroupWord,
        candidates: &[GroupWord],
        block: &Cylinder,
        undecided: &mut Vec<String>,
    ) -> Result<Option<usize>> {
        for (i, c) in candidates.iter().enumerate() {
            match self.sys.equal_on_cylinder(src, c, block) {
                Ok(true) => return Ok(Some(i)),
                Ok(false) => {}
                Err(e @ Error::Undecided { .. }) => undecided.push(format!(
                    "{} vs {} on {block}: {e}",
                    self.sys.format_word(src),
                    self.sys.format_word(c)
                )),
                Err(e) => return Err(e),
            }
        }
        Ok(None)
    }
}

/// Searches for cocycles `alpha: G × X → H` and `beta: H × X → G` that are
/// constant on the cylinders of level `opts.level`, with values among the
/// reduced words up to `opts.word_len`. Each value is certified by an exact
/// equality of the two actions on the block.
pub fn coe_check(g: &AutomatonSystem, h: &AutomatonSystem, opts: CoeOptions) -> Result<CoeWitness> {
    let union = Union {
        sys: AutomatonSystem::disjoint_union(g, h, "G", "H")?,
        offset: g.generator_count(),
    };
    let blocks: Vec<Cylinder> = level_vertices(g.degree(), opts.level, g.limits().point_cap)?
        .into_iter()
        .map(Cylinder::new)
        .collect();
    let g_words = word_box(g, opts.word_len)?;
    let h_words = word_box(h, opts.word_len)?;
    let g_in_union: Vec<GroupWord> = g_words.iter().map(|w| union.left(w)).collect();
    let h_in_union: Vec<GroupWord> = h_words.iter().map(|w| union.right(w)).collect();

    let mut undecided = Vec::new();
    let mut unresolved = Vec::new();
    let mut alpha = Vec::new();
    for gi in 0..g.generator_count() {
        let src = union.left(&GroupWord::generator(gi));
        for b in &blocks {
            let hit = union.first_match(&src, &h_in_union, b, &mut undecided)?;
            if hit.is_none() {
                unresolved.push(format!("alpha({}, {b})", g.names()[gi]));
            }
            alpha.push(Assignment {
                generator: g.names()[gi].clone(),
                block: b.clone(),
                word: hit.map(|i| h.format_word(&h_words[i])),
            });
            if let Some(i) = hit {
                assert!(union.sys.equal_on_cylinder(&src, &h_in_union[i], b)?);
            }
        }
    }
    let mut beta = Vec::new();
    for hj in 0..h.generator_count() {
        let src = union.right(&GroupWord::generator(hj));
        for b in &blocks {
            let hit = union.first_match(&src, &g_in_union, b, &mut undecided)?;
            if hit.is_none() {
                unresolved.push(format!("beta({}, {b})", h.names()[hj]));
            }
            beta.push(Assignment {
                generator: h.names()[hj].clone(),
                block: b.clone(),
                word: hit.map(|i| g.format_word(&g_words[i])),
            });
            if let Some(i) = hit {
                assert!(union.sys.equal_on_cylinder(&src, &g_in_union[i], b)?);
            }
        }
    }

    let non_injectivity = collisions(g, h, &union, &blocks, &h_words, &h_in_union, opts, &mut undecided)?;
    let check_level = opts.depth.max(opts.level);
    let partition_preserved = preserves_partition(g, &g_words, opts.level, check_level)?
        && preserves_partition(h, &h_words, opts.level, check_level)?;
    let complete = unresolved.is_empty() && undecided.is_empty();
    Ok(CoeWitness {
        level: opts.level,
        word_len: opts.word_len,
        depth: opts.depth,
        partition: blocks,
        alpha,
        beta,
        non_injectivity,
        partition_preserved,
        unresolved,
        undecided,
        complete,
    })
}

/// Groups the short words of the first system by their cocycle value on
/// each block and reports values hit by distinct group elements.
#[allow(clippy::too_many_arguments)]
fn collisions(
    g: &AutomatonSystem,
    h: &AutomatonSystem,
    union: &Union,
    blocks: &[Cylinder],
    h_words: &[GroupWord],
    h_in_union: &[GroupWord],
    opts: CoeOptions,
    undecided: &mut Vec<String>,
) -> Result<Vec<Collision>> {
    let sources = distinct_elements(g, &word_box(g, opts.collision_len.min(opts.word_len))?, undecided)?;
    let mut out = Vec::new();
    for b in blocks {
        let mut by_target: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for s in &sources {
            if let Some(i) = union.first_match(&union.left(s), h_in_union, b, undecided)? {
                by_target.entry(i).or_default().push(g.format_word(s));
            }
        }
        for (i, srcs) in by_target {
            if srcs.len() > 1 {
                out.push(Collision {
                    block: b.clone(),
                    target: h.format_word(&h_words[i]),
                    sources: srcs,
                });
            }
        }
    }
    Ok(out)
}

/// The first word of each group element among `words`.
fn distinct_elements(sys: &AutomatonSystem, words: &[GroupWord], undecided: &mut Vec<String>) -> Result<Vec<GroupWord>> {
    let mut reps: Vec<GroupWord> = Vec::new();
    'next: for w in words {
        for r in &reps {
            match sys.is_identity(&r.inverse().mul(w)) {
                Ok(true) => continue 'next,
                Ok(false) => {}
                Err(e @ Error::Undecided { .. }) => undecided.push(format!("{}: {e}", sys.format_word(w))),
                Err(e) => return Err(e),
            }
        }
        reps.push(w.clone());
    }
    Ok(reps)
}

/// Whether every word sends each level-`level` block onto a single block,
/// judged on the level-`check` vertices, with distinct blocks going to
/// distinct blocks.
fn preserves_partition(sys: &AutomatonSystem, words: &[GroupWord], level: usize, check: usize) -> Result<bool> {
    let width = sys.degree().get().pow((check - level) as u32);
    let blocks = sys.degree().get().pow(level as u32);
    for w in words {
        let perm = sys.word_perm(w, check)?;
        let mut block_image = vec![usize::MAX; blocks];
        for p in 0..perm.len() {
            let (from, to) = (p / width, perm.apply(p) / width);
            if block_image[from] == usize::MAX {
                block_image[from] = to;
            } else if block_image[from] != to {
                return Ok(false);
            }
        }
        let mut hit = vec![false; blocks];
        for &t in &block_image {
            if std::mem::replace(&mut hit[t], true) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
