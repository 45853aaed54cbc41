use std::collections::VecDeque;

use crate::automaton::{AutomatonSystem, GroupWord, Letter};
use crate::error::{Error, Result};
use crate::quotients::group_image;
use crate::tree::BoundaryPoint;

/// Words `w_0, …, w_L` with `w_l` mapping the length-`l` prefix of `x` to
/// that of `y`, each extending the previous one within its coset:
/// `w_{l+1} = w_l u` with `u` fixing the length-`l` prefix of `x`.
///
/// Every `u` comes from a breadth-first search on the level's Schreier
/// graph; `word_cap` bounds the total number of visited vertices.
pub fn conjugacy_witness(
    sys: &AutomatonSystem,
    x: &BoundaryPoint,
    y: &BoundaryPoint,
    depth: usize,
    word_cap: u64,
) -> Result<Vec<GroupWord>> {
    x.validate(sys.degree())?;
    y.validate(sys.degree())?;
    if depth > 0 && !group_image(sys, depth)?.is_transitive() {
        return Err(Error::Precondition(format!("level {depth} image is not transitive")));
    }
    let mut words = vec![GroupWord::identity()];
    let mut visited: u64 = 0;
    for l in 0..depth {
        let w = words[l].clone();
        let target = sys.act_on_vertex(&w.inverse(), &y.prefix(l + 1));
        let start = x.prefix(l + 1);
        let perms = sys.letter_perms(l + 1)?;
        let degree = sys.degree();
        let (s, t) = (start.index(degree), target.index(degree));
        let mut via: Vec<Option<(usize, usize)>> = vec![None; perms[0].len()];
        let mut seen = vec![false; perms[0].len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(p) = queue.pop_front() {
            if p == t {
                break;
            }
            visited += 1;
            if visited > word_cap {
                return Err(Error::Cap {
                    what: "conjugacy witness search".into(),
                    cap: word_cap,
                    partial: Some(format!("reached level {l}")),
                });
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
        let mut p = t;
        while p != s {
            let (prev, slot) = via[p].expect("transitive level image");
            letters.push(Letter::new(slot / 2, slot % 2 == 1));
            p = prev;
        }
        let u = GroupWord::from_letters(letters);
        let next = w.mul(&u);
        debug_assert_eq!(sys.act_on_vertex(&next, &x.prefix(l + 1)), y.prefix(l + 1));
        words.push(next);
    }
    Ok(words)
}
