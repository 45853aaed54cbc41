//! Rooted `d`-ary tree combinatorics.
//!
//! Vertices are finite words over `{0, .., d-1}`; a vertex `w` also names the
//! cylinder of all boundary paths through it. Boundary points are restricted
//! to eventually periodic sequences `u v v v ...`, stored in a canonical form
//! so that structural equality coincides with equality of sequences.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const DIGITS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// Branching degree of the tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Degree(usize);

impl Degree {
    pub const BINARY: Degree = Degree(2);

    pub fn new(d: usize) -> Result<Self> {
        if (2..=36).contains(&d) {
            Ok(Degree(d))
        } else {
            Err(Error::InvalidDegree(d))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// `d^n`, or `None` on overflow.
    pub fn pow(self, n: usize) -> Option<usize> {
        u32::try_from(n).ok().and_then(|n| self.0.checked_pow(n))
    }
}

fn digit_value(c: char) -> Option<u8> {
    c.to_digit(36).map(|v| v as u8)
}

/// A vertex of the tree, i.e. a finite word; its level is its length.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(Vec<u8>);

impl Vertex {
    pub fn root() -> Self {
        Vertex(Vec::new())
    }

    pub fn new(letters: Vec<u8>, degree: Degree) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l as usize >= degree.get()) {
            return Err(Error::Invalid(format!(
                "letter {bad} out of range for degree {}",
                degree.get()
            )));
        }
        Ok(Vertex(letters))
    }

    /// Builds a vertex without range checks; callers guarantee letters < d.
    pub(crate) fn from_letters(letters: Vec<u8>) -> Self {
        Vertex(letters)
    }

    pub fn parse(text: &str, degree: Degree) -> Result<Self> {
        let text = text.trim();
        if text == "^" || text.is_empty() {
            return Ok(Vertex::root());
        }
        let letters = text
            .chars()
            .map(|c| {
                digit_value(c)
                    .filter(|&v| (v as usize) < degree.get())
                    .ok_or_else(|| Error::Invalid(format!("bad vertex letter `{c}` in `{text}`")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Vertex(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn child(&self, letter: u8) -> Vertex {
        let mut letters = self.0.clone();
        letters.push(letter);
        Vertex(letters)
    }

    pub fn parent(&self) -> Option<Vertex> {
        if self.0.is_empty() {
            None
        } else {
            Some(Vertex(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn truncate(&self, n: usize) -> Vertex {
        Vertex(self.0[..n.min(self.0.len())].to_vec())
    }

    pub fn is_prefix_of(&self, other: &Vertex) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn concat(&self, other: &Vertex) -> Vertex {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Vertex(letters)
    }

    /// Position of this vertex in the lexicographic order of its level.
    pub fn index(&self, degree: Degree) -> usize {
        self.0
            .iter()
            .fold(0usize, |acc, &l| acc * degree.get() + l as usize)
    }

    pub fn from_index(mut index: usize, level: usize, degree: Degree) -> Vertex {
        let d = degree.get();
        let mut letters = vec![0u8; level];
        for slot in letters.iter_mut().rev() {
            *slot = (index % d) as u8;
            index /= d;
        }
        Vertex(letters)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("^");
        }
        for &l in &self.0 {
            write!(f, "{}", DIGITS[l as usize] as char)?;
        }
        Ok(())
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The clopen set of boundary paths passing through `root`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cylinder {
    pub root: Vertex,
}

impl Cylinder {
    pub fn new(root: Vertex) -> Self {
        Cylinder { root }
    }

    pub fn whole() -> Self {
        Cylinder {
            root: Vertex::root(),
        }
    }

    pub fn level(&self) -> usize {
        self.root.level()
    }

    pub fn contains(&self, x: &BoundaryPoint) -> bool {
        contains(self, x)
    }

    pub fn contains_cylinder(&self, other: &Cylinder) -> bool {
        self.root.is_prefix_of(&other.root)
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root.level() == 0 {
            f.write_str("T")
        } else {
            write!(f, "{}T", self.root)
        }
    }
}

impl Serialize for Cylinder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An eventually periodic boundary point `preperiod · period^∞` in canonical
/// form: the period is primitive and the preperiod is as short as possible.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryPoint {
    preperiod: Vec<u8>,
    period: Vec<u8>,
}

impl BoundaryPoint {
    pub fn new(preperiod: Vec<u8>, period: Vec<u8>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Invalid("boundary point period must be nonempty".into()));
        }
        Ok(Self::canonical(preperiod, period))
    }

    pub fn constant(letter: u8) -> Self {
        BoundaryPoint {
            preperiod: Vec::new(),
            period: vec![letter],
        }
    }

    fn canonical(mut preperiod: Vec<u8>, mut period: Vec<u8>) -> Self {
        let p = primitive_root_len(&period);
        period.truncate(p);
        while let (Some(&u), Some(&v)) = (preperiod.last(), period.last()) {
            if u != v {
                break;
            }
            preperiod.pop();
            period.rotate_right(1);
        }
        BoundaryPoint { preperiod, period }
    }

    pub fn parse(text: &str, degree: Degree) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::Invalid(format!("bad boundary point `{text}`: expected PREPERIOD.(PERIOD)"));
        let (pre, rest) = text.split_once('.').ok_or_else(bad)?;
        let per = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        if per.is_empty() {
            return Err(bad());
        }
        let pre = if pre == "^" { "" } else { pre };
        let u = Vertex::parse(pre, degree)?;
        let v = Vertex::parse(per, degree)?;
        Self::new(u.0, v.0)
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    /// The `i`-th letter (0-based) of the infinite sequence.
    pub fn letter(&self, i: usize) -> u8 {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Vertex {
        prefix(self, n)
    }

    pub fn cylinder(&self, n: usize) -> Cylinder {
        Cylinder::new(self.prefix(n))
    }

    /// `w · self`, the point whose path starts with `w` and continues as `self`.
    pub fn prepend(&self, w: &Vertex) -> BoundaryPoint {
        let mut pre = w.0.clone();
        pre.extend_from_slice(&self.preperiod);
        Self::canonical(pre, self.period.clone())
    }

    /// Drops the first `k` letters.
    pub fn drop_prefix(&self, k: usize) -> BoundaryPoint {
        if k <= self.preperiod.len() {
            Self::canonical(self.preperiod[k..].to_vec(), self.period.clone())
        } else {
            let mut period = self.period.clone();
            let r = (k - self.preperiod.len()) % period.len();
            period.rotate_left(r);
            Self::canonical(Vec::new(), period)
        }
    }

    pub fn validate(&self, degree: Degree) -> Result<()> {
        if self
            .preperiod
            .iter()
            .chain(&self.period)
            .any(|&l| l as usize >= degree.get())
        {
            return Err(Error::Invalid(format!("point {self} uses letters >= {}", degree.get())));
        }
        Ok(())
    }
}

/// Length of the shortest word `r` with `period = r^k`.
fn primitive_root_len(period: &[u8]) -> usize {
    let n = period.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| period[i] == period[i - p]))
        .unwrap_or(n)
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.preperiod {
            write!(f, "{}", DIGITS[l as usize] as char)?;
        }
        f.write_str(".(")?;
        for &l in &self.period {
            write!(f, "{}", DIGITS[l as usize] as char)?;
        }
        f.write_str(")")
    }
}

impl FromStr for BoundaryPoint {
    type Err = Error;

    /// Parses with the largest supported alphabet; use [`BoundaryPoint::parse`]
    /// to check against a specific degree.
    fn from_str(s: &str) -> Result<Self> {
        BoundaryPoint::parse(s, Degree(36))
    }
}

impl Serialize for BoundaryPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BoundaryPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

pub fn prefix(x: &BoundaryPoint, n: usize) -> Vertex {
    Vertex((0..n).map(|i| x.letter(i)).collect())
}

pub fn contains(c: &Cylinder, x: &BoundaryPoint) -> bool {
    c.root
        .letters()
        .iter()
        .enumerate()
        .all(|(i, &l)| x.letter(i) == l)
}

/// All `d^n` vertices of level `n` in lexicographic order.
pub fn level_vertices(degree: Degree, n: usize, point_cap: usize) -> Result<Vec<Vertex>> {
    let count = degree
        .pow(n)
        .filter(|&c| c <= point_cap)
        .ok_or_else(|| Error::cap(format!("level {n} vertex count"), point_cap as u64))?;
    Ok((0..count).map(|i| Vertex::from_index(i, n, degree)).collect())
}

/// Removes the cylinder root from a point of the cylinder.
pub fn shift(c: &Cylinder, x: &BoundaryPoint) -> Result<BoundaryPoint> {
    if !contains(c, x) {
        return Err(Error::NotInCylinder(c.to_string()));
    }
    Ok(x.drop_prefix(c.level()))
}
