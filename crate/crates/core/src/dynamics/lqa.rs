use serde::Serialize;

use crate::automaton::{AutomatonSystem, GroupWord};
use crate::error::{Error, Result};
use crate::tree::{Cylinder, Vertex};

use super::{identity_cylinders, per_word, word_box};

/// A word that is the identity on `inner` but not on the larger `outer`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LqaViolation {
    pub word: String,
    pub outer: Cylinder,
    pub inner: Cylinder,
    /// Section of the word at the inner root; decided to be the identity.
    pub inner_section: String,
    /// Section of the word at the outer root; decided to be nontrivial.
    pub outer_section: String,
    #[serde(skip)]
    pub(crate) element: GroupWord,
}

impl LqaViolation {
    /// Re-decides both certificates from scratch.
    pub fn verify(&self, sys: &AutomatonSystem) -> Result<bool> {
        Ok(self.inner.level() > self.outer.level()
            && self.outer.contains_cylinder(&self.inner)
            && sys.is_identity_on_cylinder(&self.element, &self.inner)?
            && !sys.is_identity_on_cylinder(&self.element, &self.outer)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LqaOptions {
    pub word_len: usize,
    pub max_outer: usize,
    pub max_inner: usize,
    /// Violations kept in the report; the search still covers the box.
    pub max_results: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LqaReport {
    pub word_len: usize,
    pub max_outer: usize,
    pub max_inner: usize,
    pub words_checked: usize,
    pub violation_count: usize,
    pub truncated: bool,
    pub violations: Vec<LqaViolation>,
    pub undecided: Vec<String>,
}

/// Exhaustive search for local quasi-analyticity violations in the box
/// of reduced words up to `word_len` and cylinder pairs `V ⊂ U` with `U` at
/// level at most `max_outer` and `V` at most `max_inner`.
///
/// For each word and each maximal cylinder `V` on which it is the identity,
/// the reported `U` is the deepest proper ancestor of `V` within the outer
/// bound. Identity words are skipped since they violate nothing.
pub fn lqa_probe(sys: &AutomatonSystem, opts: LqaOptions) -> Result<LqaReport> {
    let words = word_box(sys, opts.word_len)?;
    let found = per_word(&words, |w| {
        let mut out = Vec::new();
        let mut undecided = Vec::new();
        match sys.is_identity(w) {
            Ok(true) => return Ok((out, undecided)),
            Ok(false) => {}
            Err(e @ Error::Undecided { .. }) => {
                undecided.push(format!("{}: {e}", sys.format_word(w)));
                return Ok((out, undecided));
            }
            Err(e) => return Err(e),
        }
        let cylinders = match identity_cylinders(sys, w, &Vertex::root(), opts.max_inner) {
            Ok(c) => c,
            Err(e @ Error::Undecided { .. }) => {
                undecided.push(format!("{}: {e}", sys.format_word(w)));
                return Ok((out, undecided));
            }
            Err(e) => return Err(e),
        };
        for v in cylinders {
            let outer_level = (v.level() - 1).min(opts.max_outer);
            let u = v.truncate(outer_level);
            let violation = LqaViolation {
                word: sys.format_word(w),
                outer: Cylinder::new(u.clone()),
                inner: Cylinder::new(v.clone()),
                inner_section: sys.format_word(&sys.section(w, &v)),
                outer_section: sys.format_word(&sys.section(w, &u)),
                element: w.clone(),
            };
            out.push(violation);
        }
        Ok((out, undecided))
    })?;
    let mut violations = Vec::new();
    let mut undecided = Vec::new();
    let mut count = 0;
    for (vs, us) in found {
        undecided.extend(us);
        for v in vs {
            count += 1;
            if violations.len() < opts.max_results {
                assert!(v.verify(sys)?, "LQA certificate failed re-verification");
                violations.push(v);
            }
        }
    }
    Ok(LqaReport {
        word_len: opts.word_len,
        max_outer: opts.max_outer,
        max_inner: opts.max_inner,
        words_checked: words.len(),
        violation_count: count,
        truncated: count > violations.len(),
        violations,
        undecided,
    })
}
