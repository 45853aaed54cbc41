//! Line-based system definition grammar.
//!
//! ```text
//! degree = 2
//! gen a1 = [1,0] (a1, e)    # comment
//! gen a2 = [0,1] (a1, e)
//! ```
//!
//! Statements are separated by newlines or `;`. Words are `e` or factors
//! `name`, `name^k` joined with `*`.

use crate::error::{Error, Result};

use super::word::{GroupWord, Letter};

/// A word before name resolution: `(name, exponent, line, column)` factors.
#[derive(Debug, Clone)]
pub(crate) struct RawWord {
    pub factors: Vec<(String, i64, usize, usize)>,
}

#[derive(Debug, Clone)]
pub(crate) struct RawGenerator {
    pub name: String,
    pub root: Vec<usize>,
    pub sections: Vec<RawWord>,
    pub line: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct RawSystem {
    pub degree: usize,
    pub generators: Vec<RawGenerator>,
}

pub(crate) fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub(crate) fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == ':' || c == '\''
}

struct Cursor {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, line: usize, col_offset: usize) -> Self {
        Cursor {
            chars: src.chars().enumerate().map(|(i, c)| (i + col_offset, c)).collect(),
            pos: 0,
            line,
        }
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(c, _)| c + 1)
            .unwrap_or_else(|| self.chars.last().map(|&(c, _)| c + 2).unwrap_or(1))
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn name(&mut self) -> Result<String> {
        match self.peek() {
            Some(c) if is_name_start(c) => {}
            _ => return Err(self.err("expected a name")),
        }
        let mut out = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if is_name_char(c) {
                out.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let mut text = String::new();
        if let Some(&(_, c)) = self.chars.get(self.pos) {
            if c == '-' || c == '+' {
                text.push(c);
                self.pos += 1;
            }
        }
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_ascii_digit() {
                text.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        text.parse::<i64>().map_err(|_| {
            self.pos = start;
            self.err("expected an integer")
        })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn word(&mut self) -> Result<RawWord> {
        let mut factors = Vec::new();
        loop {
            self.skip_ws();
            let col = self.column();
            let name = self.name()?;
            let exp = if self.eat('^') { self.integer()? } else { 1 };
            if name == "e" {
                if exp != 1 {
                    return Err(self.err("the identity `e` takes no exponent"));
                }
            } else {
                if exp == 0 {
                    return Err(self.err("exponent must be nonzero"));
                }
                factors.push((name, exp, self.line, col));
            }
            if !self.eat('*') {
                break;
            }
        }
        Ok(RawWord { factors })
    }
}

/// Splits into `(line number, column offset, statement text)`, dropping
/// comments and blank statements.
fn statements(text: &str) -> Vec<(usize, usize, &str)> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut offset = 0;
        for part in line.split(';') {
            if !part.trim().is_empty() {
                out.push((ln + 1, offset, part));
            }
            offset += part.chars().count() + 1;
        }
    }
    out
}

pub(crate) fn parse_raw(text: &str) -> Result<RawSystem> {
    let mut degree: Option<usize> = None;
    let mut generators = Vec::new();
    for (line, offset, stmt) in statements(text) {
        let mut cur = Cursor::new(stmt, line, offset);
        let keyword = cur.name()?;
        match keyword.as_str() {
            "degree" => {
                cur.expect('=')?;
                let d = cur.integer()?;
                if !cur.at_end() {
                    return Err(cur.err("trailing input after degree"));
                }
                if degree.is_some() {
                    return Err(cur.err("degree declared twice"));
                }
                if !(2..=36).contains(&d) {
                    return Err(Error::InvalidDegree(d.max(0) as usize));
                }
                degree = Some(d as usize);
            }
            "gen" => {
                let name = cur.name()?;
                if name == "e" {
                    return Err(cur.err("`e` is reserved for the identity"));
                }
                cur.expect('=')?;
                cur.expect('[')?;
                let mut root = Vec::new();
                if !cur.eat(']') {
                    loop {
                        let i = cur.integer()?;
                        if i < 0 {
                            return Err(cur.err("permutation images must be non-negative"));
                        }
                        root.push(i as usize);
                        if cur.eat(']') {
                            break;
                        }
                        cur.expect(',')?;
                    }
                }
                cur.expect('(')?;
                let mut sections = vec![cur.word()?];
                while cur.eat(',') {
                    sections.push(cur.word()?);
                }
                cur.expect(')')?;
                if !cur.at_end() {
                    return Err(cur.err("trailing input after generator definition"));
                }
                generators.push(RawGenerator {
                    name,
                    root,
                    sections,
                    line,
                });
            }
            other => {
                return Err(Error::Parse {
                    line,
                    column: offset + 1,
                    message: format!("unknown statement `{other}`; expected `degree` or `gen`"),
                })
            }
        }
    }
    let degree = degree.ok_or_else(|| Error::Parse {
        line: 1,
        column: 1,
        message: "missing `degree = N` declaration".into(),
    })?;
    Ok(RawSystem { degree, generators })
}

pub(crate) fn parse_raw_word(text: &str) -> Result<RawWord> {
    let mut cur = Cursor::new(text, 1, 0);
    if cur.at_end() {
        return Err(cur.err("empty word; use `e` for the identity"));
    }
    let w = cur.word()?;
    if !cur.at_end() {
        return Err(cur.err("trailing input after word"));
    }
    Ok(w)
}

/// Resolves names against `names`, producing a freely reduced word.
pub(crate) fn resolve(raw: &RawWord, names: &[String]) -> Result<GroupWord> {
    let mut letters = Vec::new();
    for (name, exp, _, _) in &raw.factors {
        let idx = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
        let l = Letter::new(idx, *exp < 0);
        for _ in 0..exp.unsigned_abs() {
            letters.push(l);
        }
    }
    Ok(GroupWord::from_letters(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statements_and_comments() {
        let raw = parse_raw("degree = 2 # binary\ngen a = [1,0] (a, e); gen b=[0,1](a^-1*b^2,e)").unwrap();
        assert_eq!(raw.degree, 2);
        assert_eq!(raw.generators.len(), 2);
        assert_eq!(raw.generators[1].sections[0].factors.len(), 2);
        assert_eq!(raw.generators[1].sections[0].factors[0].1, -1);
    }

    #[test]
    fn error_positions() {
        match parse_raw("degree=2\ngen a = [1,0] (a e)") {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(column, 18);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_raw("gen a = [0,1](e,e)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_raw("degree=1"), Err(Error::InvalidDegree(1))));
    }

    #[test]
    fn words() {
        let w = parse_raw_word("a1^2 * a2^-1").unwrap();
        assert_eq!(w.factors.len(), 2);
        assert!(parse_raw_word("e").unwrap().factors.is_empty());
        assert!(parse_raw_word("a^0").is_err());
        assert!(parse_raw_word("").is_err());
        assert!(parse_raw_word("a b").is_err());
    }
}
