//! Wreath-recursion systems and the exact action of group words on the tree.
//!
//! A generator `g` with root permutation `p` and sections `(g_0, .., g_{d-1})`
//! acts by `g(i·w) = p(i) · g_{p(i)}(w)`. Words act rightmost letter first.

mod builtins;
mod parse;
mod word;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::quotients::Perm;
use crate::tree::{BoundaryPoint, Cylinder, Degree, Vertex};

pub use builtins::{builtin, BUILTIN_NAMES};
pub use word::{GroupWord, Letter, ReducedWords, WordDisplay};

/// Entries kept in the identity memo before it is flushed.
const IDENTITY_MEMO_LIMIT: usize = 1 << 20;

/// Levels whose images are used as a cheap pre-check in `is_identity`.
const QUICK_REJECT_POINTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorDef {
    pub name: String,
    /// `root[i]` is the image of letter `i`.
    pub root: Vec<u8>,
    /// `sections[j]` acts below the image letter `j`.
    pub sections: Vec<GroupWord>,
}

/// Finite description of an automorphism: the root permutation of its section
/// at every vertex of levels `0..depth`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Portrait {
    pub depth: usize,
    /// `levels[k][v]` is the root permutation at the `v`-th level-`k` vertex.
    pub levels: Vec<Vec<Vec<u8>>>,
}

impl Portrait {
    pub fn is_trivial(&self) -> bool {
        self.levels
            .iter()
            .flatten()
            .all(|p| p.iter().enumerate().all(|(i, &j)| i == j as usize))
    }
}

/// Outcome of a boundary walk: either the image or a letter that moved.
enum Walk {
    Image(BoundaryPoint),
    Moved,
    Fixed,
}

/// An immutable self-similar system with shared memo tables.
pub struct AutomatonSystem {
    degree: Degree,
    generators: Vec<GeneratorDef>,
    names: Vec<String>,
    source: String,
    hash: String,
    limits: Limits,
    /// Per letter slot: image of each letter.
    letter_root: Vec<Vec<u8>>,
    /// Per letter slot: section below each *input* letter.
    letter_sections: Vec<Vec<GroupWord>>,
    identity_memo: RwLock<HashMap<GroupWord, bool>>,
    /// `level_perms[n][slot]` is the level-`n` image of that letter.
    level_perms: RwLock<Vec<Arc<Vec<Perm>>>>,
}

impl fmt::Debug for AutomatonSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AutomatonSystem")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .field("hash", &self.hash)
            .finish()
    }
}

impl Clone for AutomatonSystem {
    fn clone(&self) -> Self {
        Self::from_defs(self.degree, self.generators.clone(), self.source.clone())
            .expect("definitions already validated")
            .with_limits(self.limits)
    }
}

impl AutomatonSystem {
    /// Parses a system definition.
    pub fn parse(text: &str) -> Result<Self> {
        let raw = parse::parse_raw(text)?;
        let degree = Degree::new(raw.degree)?;
        let names: Vec<String> = raw.generators.iter().map(|g| g.name.clone()).collect();
        for (i, g) in raw.generators.iter().enumerate() {
            if names[..i].contains(&g.name) {
                return Err(Error::Parse {
                    line: g.line,
                    column: 1,
                    message: format!("generator `{}` defined twice", g.name),
                });
            }
        }
        let mut defs = Vec::with_capacity(raw.generators.len());
        for g in &raw.generators {
            let d = degree.get();
            if g.root.len() != d || g.sections.len() != d {
                return Err(Error::Parse {
                    line: g.line,
                    column: 1,
                    message: format!(
                        "generator `{}` needs {d} root images and {d} sections, found {} and {}",
                        g.name,
                        g.root.len(),
                        g.sections.len()
                    ),
                });
            }
            let mut seen = vec![false; d];
            for &i in &g.root {
                if i >= d || seen[i] {
                    return Err(Error::NonBijective {
                        name: g.name.clone(),
                        degree: d,
                    });
                }
                seen[i] = true;
            }
            let sections = g
                .sections
                .iter()
                .map(|w| parse::resolve(w, &names))
                .collect::<Result<Vec<_>>>()?;
            defs.push(GeneratorDef {
                name: g.name.clone(),
                root: g.root.iter().map(|&i| i as u8).collect(),
                sections,
            });
        }
        Self::from_defs(degree, defs, text.to_string())
    }

    /// Builds a system from resolved definitions.
    pub fn from_defs(degree: Degree, generators: Vec<GeneratorDef>, source: String) -> Result<Self> {
        let d = degree.get();
        let names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();
        for g in &generators {
            let mut seen = vec![false; d];
            if g.root.len() != d || g.sections.len() != d {
                return Err(Error::Invalid(format!("generator `{}` has wrong arity", g.name)));
            }
            for &i in &g.root {
                if i as usize >= d || seen[i as usize] {
                    return Err(Error::NonBijective {
                        name: g.name.clone(),
                        degree: d,
                    });
                }
                seen[i as usize] = true;
            }
            for s in &g.sections {
                if s.max_generator().is_some_and(|m| m >= generators.len()) {
                    return Err(Error::Invalid(format!("section of `{}` references a missing generator", g.name)));
                }
            }
        }
        let mut letter_root = Vec::with_capacity(2 * generators.len());
        let mut letter_sections = Vec::with_capacity(2 * generators.len());
        for g in &generators {
            // positive letter: input i goes to p(i), section g_{p(i)}
            letter_root.push(g.root.clone());
            letter_sections.push((0..d).map(|i| g.sections[g.root[i] as usize].clone()).collect());
            // inverse letter: input j goes to p^-1(j), section (g_j)^-1
            let mut inv = vec![0u8; d];
            for (i, &j) in g.root.iter().enumerate() {
                inv[j as usize] = i as u8;
            }
            letter_root.push(inv);
            letter_sections.push(g.sections.iter().map(|s| s.inverse()).collect());
        }
        let mut sys = AutomatonSystem {
            degree,
            generators,
            names,
            source,
            hash: String::new(),
            limits: Limits::default(),
            letter_root,
            letter_sections,
            identity_memo: RwLock::new(HashMap::new()),
            level_perms: RwLock::new(Vec::new()),
        };
        sys.hash = hex::encode(Sha256::digest(sys.canonical_text().as_bytes()));
        Ok(sys)
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn generators(&self) -> &[GeneratorDef] {
        &self.generators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Hex SHA-256 of the canonical rendering; independent of comments and
    /// whitespace in the source.
    pub fn hash(&self) -> &str {
        &self.hash
    }

    pub fn canonical_text(&self) -> String {
        let mut out = format!("degree = {}\n", self.degree.get());
        for g in &self.generators {
            let root: Vec<String> = g.root.iter().map(|i| i.to_string()).collect();
            let secs: Vec<String> = g.sections.iter().map(|w| self.format_word(w)).collect();
            out.push_str(&format!("gen {} = [{}] ({})\n", g.name, root.join(","), secs.join(", ")));
        }
        out
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn generator_word(&self, name: &str) -> Result<GroupWord> {
        Ok(GroupWord::generator(self.generator_index(name)?))
    }

    pub fn parse_word(&self, text: &str) -> Result<GroupWord> {
        parse::resolve(&parse::parse_raw_word(text)?, &self.names)
    }

    pub fn format_word(&self, w: &GroupWord) -> String {
        self.display_word(w).to_string()
    }

    pub fn display_word<'a>(&'a self, w: &'a GroupWord) -> WordDisplay<'a> {
        WordDisplay {
            word: w,
            names: &self.names,
        }
    }

    pub fn parse_vertex(&self, text: &str) -> Result<Vertex> {
        Vertex::parse(text, self.degree)
    }

    pub fn parse_point(&self, text: &str) -> Result<BoundaryPoint> {
        BoundaryPoint::parse(text, self.degree)
    }

    /// Disjoint union of two systems on the same tree. Generator names are
    /// prefixed `left:` and `right:`; the right system's letters are shifted
    /// past the left's.
    pub fn disjoint_union(left: &Self, right: &Self, left_tag: &str, right_tag: &str) -> Result<Self> {
        if left.degree != right.degree {
            return Err(Error::Precondition("systems act on trees of different degree".into()));
        }
        let offset = left.generators.len();
        let mut defs = Vec::new();
        for g in &left.generators {
            defs.push(GeneratorDef {
                name: format!("{left_tag}:{}", g.name),
                root: g.root.clone(),
                sections: g.sections.clone(),
            });
        }
        for g in &right.generators {
            defs.push(GeneratorDef {
                name: format!("{right_tag}:{}", g.name),
                root: g.root.clone(),
                sections: g.sections.iter().map(|w| w.shift_generators(offset)).collect(),
            });
        }
        let sys = Self::from_defs(left.degree, defs, String::new())?.with_limits(left.limits);
        let source = sys.canonical_text();
        Ok(AutomatonSystem { source, ..sys })
    }

    /// Image letter and section of `word` at the input letter `i`.
    pub fn step(&self, word: &GroupWord, i: u8) -> (u8, GroupWord) {
        let mut c = i;
        let mut secs: Vec<&GroupWord> = Vec::with_capacity(word.len());
        for l in word.letters().iter().rev() {
            let slot = l.slot();
            secs.push(&self.letter_sections[slot][c as usize]);
            c = self.letter_root[slot][c as usize];
        }
        let section = GroupWord::from_letters(secs.iter().rev().flat_map(|w| w.letters().iter().copied()));
        (c, section)
    }

    /// Image of a single letter under the root permutation of `word`.
    pub fn root_image(&self, word: &GroupWord, i: u8) -> u8 {
        word.letters()
            .iter()
            .rev()
            .fold(i, |c, l| self.letter_root[l.slot()][c as usize])
    }

    /// Root permutation of `word` as an image list.
    pub fn root_perm(&self, word: &GroupWord) -> Vec<u8> {
        (0..self.degree.get() as u8).map(|i| self.root_image(word, i)).collect()
    }

    fn root_is_trivial(&self, word: &GroupWord) -> bool {
        (0..self.degree.get() as u8).all(|i| self.root_image(word, i) == i)
    }

    pub fn act_on_vertex(&self, word: &GroupWord, v: &Vertex) -> Vertex {
        let mut w = word.clone();
        let mut out = Vec::with_capacity(v.level());
        for &i in v.letters() {
            if w.is_empty() {
                out.push(i);
                continue;
            }
            let (j, s) = self.step(&w, i);
            out.push(j);
            w = s;
        }
        Vertex::from_letters(out)
    }

    /// Section of `word` at `v`: `word(v·s) = word(v) · section(s)`.
    pub fn section(&self, word: &GroupWord, v: &Vertex) -> GroupWord {
        let mut w = word.clone();
        for &i in v.letters() {
            if w.is_empty() {
                break;
            }
            w = self.step(&w, i).1;
        }
        w
    }

    /// Image of `v` together with the section there.
    pub fn act_with_section(&self, word: &GroupWord, v: &Vertex) -> (Vertex, GroupWord) {
        let mut w = word.clone();
        let mut out = Vec::with_capacity(v.level());
        for &i in v.letters() {
            let (j, s) = if w.is_empty() { (i, GroupWord::identity()) } else { self.step(&w, i) };
            out.push(j);
            w = s;
        }
        (Vertex::from_letters(out), w)
    }

    fn walk(&self, word: &GroupWord, x: &BoundaryPoint, stop_on_move: bool) -> Result<Walk> {
        let pre = x.preperiod().len();
        let per = x.period().len();
        let mut w = word.clone();
        let mut out: Vec<u8> = Vec::new();
        let mut seen: HashMap<(GroupWord, usize), usize> = HashMap::new();
        let mut pos = 0usize;
        loop {
            if w.is_empty() {
                if stop_on_move {
                    return Ok(Walk::Fixed);
                }
                let rest = x.drop_prefix(pos);
                return Ok(Walk::Image(rest.prepend(&Vertex::from_letters(out))));
            }
            if pos >= pre {
                let phase = (pos - pre) % per;
                if let Some(&start) = seen.get(&(w.clone(), phase)) {
                    if stop_on_move {
                        return Ok(Walk::Fixed);
                    }
                    let period = out[start..].to_vec();
                    out.truncate(start);
                    return BoundaryPoint::new(out, period).map(Walk::Image);
                }
                if seen.len() >= self.limits.state_cap {
                    let shown: String = out.iter().take(64).map(|l| l.to_string()).collect();
                    return Err(Error::Cap {
                        what: "boundary walk states".into(),
                        cap: self.limits.state_cap as u64,
                        partial: Some(format!("image prefix {shown}")),
                    });
                }
                seen.insert((w.clone(), phase), pos);
            }
            let i = x.letter(pos);
            let (j, s) = self.step(&w, i);
            if stop_on_move && i != j {
                return Ok(Walk::Moved);
            }
            out.push(j);
            w = s;
            pos += 1;
        }
    }

    /// Exact image of an eventually periodic point.
    pub fn act_on_boundary(&self, word: &GroupWord, x: &BoundaryPoint) -> Result<BoundaryPoint> {
        match self.walk(word, x, false)? {
            Walk::Image(p) => Ok(p),
            _ => unreachable!("image walk never stops early"),
        }
    }

    pub fn fixes_boundary_point(&self, word: &GroupWord, x: &BoundaryPoint) -> Result<bool> {
        match self.walk(word, x, true) {
            Ok(Walk::Moved) => Ok(false),
            Ok(_) => Ok(true),
            Err(Error::Cap { what, cap, .. }) => Err(Error::undecided(what, cap)),
            Err(e) => Err(e),
        }
    }

    /// Decides whether `word` is the identity automorphism.
    ///
    /// Explores the closure of `{word}` under one-letter sections; the word is
    /// trivial iff every reachable word has trivial root permutation.
    pub fn is_identity(&self, word: &GroupWord) -> Result<bool> {
        if word.is_empty() {
            return Ok(true);
        }
        let known = self.identity_memo.read().get(word).copied();
        if let Some(known) = known {
            return Ok(known);
        }
        if self.quick_reject(word) {
            self.remember(word, false);
            return Ok(false);
        }
        let mut seen: HashSet<GroupWord> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(word.clone());
        queue.push_back(word.clone());
        let d = self.degree.get() as u8;
        while let Some(w) = queue.pop_front() {
            if !self.root_is_trivial(&w) {
                self.remember(word, false);
                return Ok(false);
            }
            for i in 0..d {
                let (_, s) = self.step(&w, i);
                if s.is_empty() || seen.contains(&s) {
                    continue;
                }
                let known = self.identity_memo.read().get(&s).copied();
                match known {
                    Some(true) => continue,
                    Some(false) => {
                        self.remember(word, false);
                        return Ok(false);
                    }
                    None => {}
                }
                if seen.len() >= self.limits.identity_cap {
                    return Err(Error::undecided("identity closure", self.limits.identity_cap as u64));
                }
                seen.insert(s.clone());
                queue.push_back(s);
            }
        }
        let mut memo = self.identity_memo.write();
        if memo.len() + seen.len() > IDENTITY_MEMO_LIMIT {
            memo.clear();
        }
        for w in seen {
            memo.insert(w, true);
        }
        Ok(true)
    }

    fn remember(&self, word: &GroupWord, value: bool) {
        let mut memo = self.identity_memo.write();
        if memo.len() >= IDENTITY_MEMO_LIMIT {
            memo.clear();
        }
        memo.insert(word.clone(), value);
    }

    /// Nontrivial image on a small level proves non-identity.
    fn quick_reject(&self, word: &GroupWord) -> bool {
        let mut level = 0;
        while self.degree.pow(level + 1).is_some_and(|n| n <= QUICK_REJECT_POINTS) {
            level += 1;
        }
        match self.word_perm(word, level) {
            Ok(p) => !p.is_identity(),
            Err(_) => false,
        }
    }

    pub fn is_identity_on_cylinder(&self, word: &GroupWord, c: &Cylinder) -> Result<bool> {
        let (image, section) = self.act_with_section(word, &c.root);
        if image != c.root {
            return Ok(false);
        }
        self.is_identity(&section)
    }

    /// Whether the two words restrict to the same map on the cylinder.
    pub fn equal_on_cylinder(&self, w1: &GroupWord, w2: &GroupWord, c: &Cylinder) -> Result<bool> {
        if self.act_on_vertex(w1, &c.root) != self.act_on_vertex(w2, &c.root) {
            return Ok(false);
        }
        let q = w1.inverse().mul(w2);
        self.is_identity(&self.section(&q, &c.root))
    }

    /// Root permutations of all sections at levels `0..depth`.
    pub fn portrait(&self, word: &GroupWord, depth: usize) -> Result<Portrait> {
        let d = self.degree.get();
        let mut levels = Vec::with_capacity(depth);
        let mut frontier = vec![word.clone()];
        for k in 0..depth {
            let count = self.degree.pow(k).filter(|&c| c <= self.limits.point_cap);
            if count.is_none() {
                return Err(Error::cap(format!("portrait level {k}"), self.limits.point_cap as u64));
            }
            levels.push(frontier.iter().map(|w| self.root_perm(w)).collect());
            if k + 1 < depth {
                let mut next = Vec::with_capacity(frontier.len() * d);
                for w in &frontier {
                    for i in 0..d as u8 {
                        next.push(if w.is_empty() { GroupWord::identity() } else { self.step(w, i).1 });
                    }
                }
                frontier = next;
            }
        }
        Ok(Portrait { depth, levels })
    }

    /// Level-`n` images of every letter slot, cached.
    pub fn letter_perms(&self, n: usize) -> Result<Arc<Vec<Perm>>> {
        let points = self
            .degree
            .pow(n)
            .filter(|&c| c <= self.limits.point_cap)
            .ok_or_else(|| Error::cap(format!("level {n} vertex count"), self.limits.point_cap as u64))?;
        if let Some(p) = self.level_perms.read().get(n) {
            return Ok(p.clone());
        }
        let mut table = self.level_perms.write();
        if table.is_empty() {
            let trivial = vec![Perm::identity(1); self.letter_root.len()];
            table.push(Arc::new(trivial));
        }
        let d = self.degree.get();
        while table.len() <= n {
            let m = table.len();
            let prev = table[m - 1].clone();
            let block = points / d.pow((n - m) as u32) / d;
            let mut level = Vec::with_capacity(self.letter_root.len());
            for slot in 0..self.letter_root.len() {
                if slot % 2 == 1 {
                    let pos: &Perm = &level[slot - 1];
                    level.push(pos.inverse());
                    continue;
                }
                let mut images = vec![0u32; block * d];
                for i in 0..d {
                    let j = self.letter_root[slot][i] as usize;
                    let sec = word_perm_from(&prev, &self.letter_sections[slot][i], block);
                    for w in 0..block {
                        images[i * block + w] = (j * block + sec.apply(w)) as u32;
                    }
                }
                level.push(Perm::from_images_unchecked(images));
            }
            table.push(Arc::new(level));
        }
        Ok(table[n].clone())
    }

    /// Level-`n` image of a word.
    pub fn word_perm(&self, word: &GroupWord, n: usize) -> Result<Perm> {
        let perms = self.letter_perms(n)?;
        let points = perms.first().map(|p| p.len()).unwrap_or_else(|| self.degree.pow(n).unwrap_or(1));
        Ok(word_perm_from(&perms, word, points))
    }
}

/// Product of letter images; the rightmost letter is applied first.
pub(crate) fn word_perm_from(perms: &[Perm], word: &GroupWord, points: usize) -> Perm {
    let mut images: Vec<u32> = (0..points as u32).collect();
    for l in word.letters().iter().rev() {
        let p = &perms[l.slot()];
        for x in images.iter_mut() {
            *x = p.apply(*x as usize) as u32;
        }
    }
    Perm::from_images_unchecked(images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odometer() -> AutomatonSystem {
        AutomatonSystem::parse("degree=2; gen a = [1,0](a,e)").unwrap()
    }

    fn coe() -> AutomatonSystem {
        builtin("coe-pair").unwrap().unwrap()
    }

    fn bp(s: &str) -> BoundaryPoint {
        BoundaryPoint::parse(s, Degree::BINARY).unwrap()
    }

    fn v(s: &str) -> Vertex {
        Vertex::parse(s, Degree::BINARY).unwrap()
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            AutomatonSystem::parse("degree=2; gen b = [0,1](a,e)"),
            Err(Error::UnknownGenerator(n)) if n == "a"
        ));
        assert!(matches!(
            AutomatonSystem::parse("degree=2; gen c = [1,1](c,e)"),
            Err(Error::NonBijective { .. })
        ));
        assert!(matches!(
            AutomatonSystem::parse("degree=2; gen a = [1,0](a,e); gen a = [0,1](e,e)"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            AutomatonSystem::parse("degree=2; gen a = [1,0](a,e,e)"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn hash_ignores_formatting() {
        let a = AutomatonSystem::parse("degree=2; gen a = [1,0](a,e)").unwrap();
        let b = AutomatonSystem::parse("# odometer\ndegree = 2\ngen a=[1,0] ( a , e )\n").unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }

    #[test]
    fn evaluation_vectors() {
        let s = odometer();
        let a = s.parse_word("a").unwrap();
        assert_eq!(s.act_on_boundary(&a, &bp(".(1)")).unwrap(), bp(".(0)"));
        assert_eq!(s.act_on_boundary(&a, &bp("11001.(1)")).unwrap(), bp("00101.(1)"));
        assert_eq!(s.act_on_boundary(&a, &bp("0001110.(0)")).unwrap(), bp("1001110.(0)"));
        assert_eq!(s.act_on_vertex(&a, &v("0001110")), v("1001110"));
        let aa = s.parse_word("a*a").unwrap();
        assert_eq!(s.act_on_vertex(&aa, &v("00")), v("01"));
        assert_eq!(s.act_on_vertex(&GroupWord::identity(), &v("0110")), v("0110"));
    }

    #[test]
    fn sections() {
        let s = odometer();
        let a = s.parse_word("a").unwrap();
        assert_eq!(s.section(&a, &v("1")), a);
        assert!(s.section(&a, &v("0")).is_empty());
        assert!(s.section(&GroupWord::identity(), &v("0101")).is_empty());
    }

    #[test]
    fn identity_decisions() {
        let s = odometer();
        let a = s.parse_word("a").unwrap();
        assert!(s.is_identity(&GroupWord::identity()).unwrap());
        assert!(!s.is_identity(&a).unwrap());
        assert!(s.is_identity(&s.parse_word("a*a^-1").unwrap()).unwrap());
        let c = coe();
        let a2 = c.parse_word("a2").unwrap();
        assert!(c.is_identity(&c.section(&a2, &v("1"))).unwrap());
        assert!(c.is_identity_on_cylinder(&a2, &Cylinder::new(v("1"))).unwrap());
        assert!(!c.is_identity_on_cylinder(&a2, &Cylinder::new(v("0"))).unwrap());
        assert!(c.is_identity_on_cylinder(&GroupWord::identity(), &Cylinder::new(v("0"))).unwrap());
    }

    #[test]
    fn fixing_points() {
        let s = odometer();
        let a = s.parse_word("a").unwrap();
        assert!(!s.fixes_boundary_point(&a, &bp(".(1)")).unwrap());
        assert!(s.fixes_boundary_point(&GroupWord::identity(), &bp("01.(10)")).unwrap());
        let c = coe();
        assert!(c.fixes_boundary_point(&c.parse_word("a2").unwrap(), &bp(".(1)")).unwrap());
    }

    #[test]
    fn cylinder_equality() {
        let c = coe();
        let a1 = c.parse_word("a1").unwrap();
        let a2 = c.parse_word("a2").unwrap();
        let zero = Cylinder::new(v("0"));
        assert!(c.equal_on_cylinder(&a2, &a1.pow(2), &zero).unwrap());
        assert!(!c.equal_on_cylinder(&a1, &GroupWord::identity(), &zero).unwrap());
        assert!(c.equal_on_cylinder(&a2, &a2, &zero).unwrap());
    }

    #[test]
    fn portraits() {
        let s = odometer();
        let a = s.parse_word("a").unwrap();
        let p = s.portrait(&a, 2).unwrap();
        assert_eq!(p.levels[0], vec![vec![1, 0]]);
        assert_eq!(p.levels[1], vec![vec![0, 1], vec![1, 0]]);
        assert!(s.portrait(&GroupWord::identity(), 4).unwrap().is_trivial());
        let c = coe();
        let p = c.portrait(&c.parse_word("a2").unwrap(), 2).unwrap();
        assert_eq!(p.levels[0], vec![vec![0, 1]]);
        assert_eq!(p.levels[1], vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn level_images_match_vertex_action() {
        let c = builtin("pink:2,3").unwrap().unwrap();
        let words = ["a1", "a2*a3^-1", "a3*a1*a2^2", "a1^-1*a3"];
        for text in words {
            let w = c.parse_word(text).unwrap();
            for n in 0..=6 {
                let p = c.word_perm(&w, n).unwrap();
                assert!(p.is_tree_automorphism(c.degree(), n));
                for idx in 0..p.len() {
                    let vx = Vertex::from_index(idx, n, c.degree());
                    assert_eq!(c.act_on_vertex(&w, &vx).index(c.degree()), p.apply(idx));
                }
            }
        }
    }

    #[test]
    fn disjoint_union_keeps_actions() {
        let g = builtin("coe-pair-G").unwrap().unwrap();
        let h = builtin("coe-pair-H").unwrap().unwrap();
        let u = AutomatonSystem::disjoint_union(&g, &h, "G", "H").unwrap();
        assert_eq!(u.names(), &["G:a1", "G:a2", "H:a1"]);
        let ga1 = u.parse_word("G:a1").unwrap();
        let ha1 = u.parse_word("H:a1").unwrap();
        assert!(u.is_identity(&ga1.mul(&ha1.inverse())).unwrap());
        let ga2 = u.parse_word("G:a2").unwrap();
        assert!(u.equal_on_cylinder(&ga2, &ha1.pow(2), &Cylinder::new(v("0"))).unwrap());
    }
}
