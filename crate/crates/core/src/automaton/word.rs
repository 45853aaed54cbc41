use std::fmt;

/// One signed generator occurrence. Stored as `±(index + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        let code = generator as i32 + 1;
        Letter(if inverse { -code } else { code })
    }

    pub fn generator(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    /// Dense index `2 * generator + sign`, used for per-letter tables. Also
    /// the letter order of word enumeration: positive before inverse.
    pub(crate) fn slot(self) -> usize {
        2 * self.generator() + usize::from(self.is_inverse())
    }
}

/// A freely reduced word in the generators. The empty word is the identity.
///
/// A word `u * v` acts as `u` after `v`: the rightmost letter is applied first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        GroupWord(vec![l])
    }

    pub fn generator(index: usize) -> Self {
        Self::letter(Letter::new(index, false))
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        GroupWord::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, k: i64) -> GroupWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `self * other * self^-1`
    pub fn conjugate(&self, other: &GroupWord) -> GroupWord {
        self.mul(other).mul(&self.inverse())
    }

    /// Largest generator index referenced, if any.
    pub(crate) fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator()).max()
    }

    pub(crate) fn shift_generators(&self, offset: usize) -> GroupWord {
        GroupWord(
            self.0
                .iter()
                .map(|l| Letter::new(l.generator() + offset, l.is_inverse()))
                .collect(),
        )
    }
}

/// Renders a word with generator names, compressing runs as `name^k`.
pub struct WordDisplay<'a> {
    pub(crate) word: &'a GroupWord,
    pub(crate) names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return f.write_str("e");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            let name = &self.names[letters[i].generator()];
            let run = (j - i) as i64;
            let exp = if letters[i].is_inverse() { -run } else { run };
            if exp == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i = j;
        }
        Ok(())
    }
}

/// All freely reduced words of length at most `max_len` over `generators`
/// generators, in order of length and then lexicographically by letter rank.
pub struct ReducedWords {
    generators: usize,
    max_len: usize,
    current: Option<Vec<usize>>,
}

impl ReducedWords {
    pub fn new(generators: usize, max_len: usize) -> Self {
        ReducedWords {
            generators,
            max_len,
            current: Some(Vec::new()),
        }
    }

    /// Number of reduced words of length at most `max_len`, saturating.
    pub fn count(generators: usize, max_len: usize) -> u64 {
        if generators == 0 {
            return 1;
        }
        let a = 2 * generators as u64;
        let mut total: u64 = 1;
        let mut layer: u64 = a;
        for _ in 0..max_len {
            total = total.saturating_add(layer);
            layer = layer.saturating_mul(a - 1);
        }
        total
    }

    fn letter_of(rank: usize) -> Letter {
        Letter::new(rank / 2, rank % 2 == 1)
    }

    fn inverse_rank(rank: usize) -> usize {
        rank ^ 1
    }

    /// Lexicographic successor among reduced words of the same length.
    fn advance(&self, ranks: &mut [usize]) -> bool {
        let a = 2 * self.generators;
        let mut pos = ranks.len();
        while pos > 0 {
            pos -= 1;
            let mut r = ranks[pos] + 1;
            if pos > 0 && r == Self::inverse_rank(ranks[pos - 1]) {
                r += 1;
            }
            if r < a {
                ranks[pos] = r;
                for i in pos + 1..ranks.len() {
                    ranks[i] = usize::from(Self::inverse_rank(ranks[i - 1]) == 0);
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for ReducedWords {
    type Item = GroupWord;

    fn next(&mut self) -> Option<GroupWord> {
        let ranks = self.current.take()?;
        let word = GroupWord(ranks.iter().map(|&r| Self::letter_of(r)).collect());
        let mut next = ranks;
        if self.generators > 0 {
            if !self.advance(&mut next) {
                let len = next.len() + 1;
                if len <= self.max_len {
                    self.current = Some(vec![0; len]);
                }
            } else {
                self.current = Some(next);
            }
        }
        Some(word)
    }
}
