use serde::Serialize;

use crate::automaton::AutomatonSystem;
use crate::error::{Error, Result};
use crate::tree::{Cylinder, Vertex};

use super::{identity_cylinders, per_word, word_box};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FreenessVerdict {
    /// Some nontrivial element is the identity on a cylinder.
    WitnessedNotFree,
    /// No such element in the searched box.
    ConsistentWithFree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedCylinders {
    pub word: String,
    pub cylinders: Vec<Cylinder>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FreenessReport {
    pub word_len: usize,
    pub depth: usize,
    pub verdict: FreenessVerdict,
    pub words_checked: usize,
    /// Nontrivial words with at least one identity cylinder, in word order.
    pub witnesses: Vec<FixedCylinders>,
    pub undecided: Vec<String>,
}

/// For every nontrivial reduced word up to `word_len`, the maximal cylinders
/// of level at most `depth` on which it acts as the identity.
pub fn topological_freeness_probe(sys: &AutomatonSystem, word_len: usize, depth: usize) -> Result<FreenessReport> {
    let words = word_box(sys, word_len)?;
    let results = per_word(&words, |w| {
        let label = sys.format_word(w);
        let run = || -> Result<Option<Vec<Vertex>>> {
            if sys.is_identity(w)? {
                return Ok(None);
            }
            Ok(Some(identity_cylinders(sys, w, &Vertex::root(), depth)?))
        };
        match run() {
            Ok(None) => Ok(Ok(None)),
            Ok(Some(vs)) if vs.is_empty() => Ok(Ok(None)),
            Ok(Some(vs)) => {
                for v in &vs {
                    assert!(sys.is_identity_on_cylinder(w, &Cylinder::new(v.clone()))?);
                }
                Ok(Ok(Some(FixedCylinders {
                    word: label,
                    cylinders: vs.into_iter().map(Cylinder::new).collect(),
                })))
            }
            Err(e @ Error::Undecided { .. }) => Ok(Err(format!("{label}: {e}"))),
            Err(e) => Err(e),
        }
    })?;
    let mut witnesses = Vec::new();
    let mut undecided = Vec::new();
    for r in results {
        match r {
            Ok(Some(f)) => witnesses.push(f),
            Ok(None) => {}
            Err(u) => undecided.push(u),
        }
    }
    let verdict = if witnesses.is_empty() {
        FreenessVerdict::ConsistentWithFree
    } else {
        FreenessVerdict::WitnessedNotFree
    };
    Ok(FreenessReport {
        word_len,
        depth,
        verdict,
        words_checked: words.len(),
        witnesses,
        undecided,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::builtin;

    #[test]
    fn coe_pair_g_is_not_free() {
        let sys = builtin("coe-pair-G").unwrap().unwrap();
        let r = topological_freeness_probe(&sys, 3, 4).unwrap();
        assert_eq!(r.verdict, FreenessVerdict::WitnessedNotFree);
        let a2 = r.witnesses.iter().find(|f| f.word == "a2").unwrap();
        assert_eq!(a2.cylinders.len(), 1);
        assert_eq!(a2.cylinders[0].to_string(), "1T");
    }

    #[test]
    fn coe_pair_h_is_free_in_box() {
        let sys = builtin("coe-pair-H").unwrap().unwrap();
        let r = topological_freeness_probe(&sys, 8, 8).unwrap();
        assert_eq!(r.verdict, FreenessVerdict::ConsistentWithFree);
        assert_eq!(r.words_checked, 17);
        assert!(r.undecided.is_empty());
    }
}
