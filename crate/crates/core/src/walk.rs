//! Letters, walks and cyclic walks, with their text syntax.
//!
//! A walk is written as letters separated by whitespace or `·`, an inverse
//! letter carrying the suffix `^-1`: `a' d'^-1 a e^-1`. The trivial walk at
//! vertex `v` is written `@v`, and a cyclic walk is wrapped as `cycle( … )`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::quiver::{Arrow, BoundQuiver, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Fwd,
    Inv,
}

/// An arrow or its formal inverse. Ordered by arrow declaration, `Fwd` first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub arrow: Arrow,
    pub dir: Direction,
}

impl Letter {
    pub fn fwd(arrow: Arrow) -> Self {
        Letter {
            arrow,
            dir: Direction::Fwd,
        }
    }

    pub fn inv(arrow: Arrow) -> Self {
        Letter {
            arrow,
            dir: Direction::Inv,
        }
    }

    pub fn is_fwd(self) -> bool {
        self.dir == Direction::Fwd
    }

    pub fn inverse(self) -> Self {
        Letter {
            arrow: self.arrow,
            dir: match self.dir {
                Direction::Fwd => Direction::Inv,
                Direction::Inv => Direction::Fwd,
            },
        }
    }

    pub fn source(self, bq: &BoundQuiver) -> Vertex {
        match self.dir {
            Direction::Fwd => bq.source(self.arrow),
            Direction::Inv => bq.target(self.arrow),
        }
    }

    pub fn target(self, bq: &BoundQuiver) -> Vertex {
        match self.dir {
            Direction::Fwd => bq.target(self.arrow),
            Direction::Inv => bq.source(self.arrow),
        }
    }

    pub fn format(self, bq: &BoundQuiver) -> String {
        match self.dir {
            Direction::Fwd => bq.arrow_name(self.arrow).to_string(),
            Direction::Inv => format!("{}^-1", bq.arrow_name(self.arrow)),
        }
    }
}

/// A finite walk. `start` and `end` matter on their own only for trivial walks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Walk {
    pub start: Vertex,
    pub end: Vertex,
    pub letters: Vec<Letter>,
}

impl Walk {
    pub fn trivial(v: Vertex) -> Self {
        Walk {
            start: v,
            end: v,
            letters: Vec::new(),
        }
    }

    /// Builds a nonempty walk; endpoints are read off the first and last letter.
    pub fn from_letters(bq: &BoundQuiver, letters: Vec<Letter>) -> Result<Self> {
        let (first, last) = match (letters.first(), letters.last()) {
            (Some(&f), Some(&l)) => (f, l),
            _ => {
                return Err(Error::InvalidWalk(
                    "empty letter list without anchor".into(),
                ))
            }
        };
        if let Some(bad) = letters.iter().find(|l| l.arrow.0 >= bq.num_arrows()) {
            return Err(Error::UnknownArrow(format!("#{}", bad.arrow.0)));
        }
        Ok(Walk {
            start: first.source(bq),
            end: last.target(bq),
            letters,
        })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Walk {
            start: self.end,
            end: self.start,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Vertex at position `i`, `0 ..= len`.
    pub fn vertex_at(&self, bq: &BoundQuiver, i: usize) -> Vertex {
        if i == 0 {
            self.start
        } else {
            self.letters[i - 1].target(bq)
        }
    }

    /// Sub-walk between vertex positions `i <= j`.
    pub fn slice(&self, bq: &BoundQuiver, i: usize, j: usize) -> Walk {
        let v = self.vertex_at(bq, i);
        Walk {
            start: v,
            end: self.vertex_at(bq, j),
            letters: self.letters[i..j].to_vec(),
        }
    }

    pub fn format(&self, bq: &BoundQuiver) -> String {
        if self.letters.is_empty() {
            format!("@{}", bq.vertex_name(self.start))
        } else {
            format_letters(bq, &self.letters)
        }
    }
}

impl PartialOrd for Walk {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Length, then letters, then anchor.
impl Ord for Walk {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.letters.len(), &self.letters, self.start).cmp(&(
            other.letters.len(),
            &other.letters,
            other.start,
        ))
    }
}

/// A nonempty walk read cyclically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWalk {
    pub letters: Vec<Letter>,
}

impl CyclicWalk {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidWalk(
                "a cyclic walk needs at least one letter".into(),
            ));
        }
        Ok(CyclicWalk { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        CyclicWalk {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `b[t]`: start reading at letter `t`.
    pub fn rotate(&self, t: usize) -> Self {
        let mut letters = self.letters.clone();
        letters.rotate_left(t % self.letters.len().max(1));
        CyclicWalk { letters }
    }

    pub fn power(&self, k: usize) -> Self {
        CyclicWalk {
            letters: self.letters.repeat(k),
        }
    }

    /// Length of the shortest word whose power is this one.
    pub fn primitive_period(&self) -> usize {
        let n = self.letters.len();
        (1..=n)
            .filter(|p| n % p == 0)
            .find(|&p| (0..n).all(|i| self.letters[i] == self.letters[(i + p) % n]))
            .unwrap_or(n)
    }

    pub fn primitive_root(&self) -> Self {
        CyclicWalk {
            letters: self.letters[..self.primitive_period()].to_vec(),
        }
    }

    pub fn format(&self, bq: &BoundQuiver) -> String {
        format!("cycle( {} )", format_letters(bq, &self.letters))
    }
}

fn format_letters(bq: &BoundQuiver, letters: &[Letter]) -> String {
    letters
        .iter()
        .map(|l| l.format(bq))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Representative of `{w, w^-1}`: the lexicographically smaller letter sequence.
pub fn canonical_string(w: &Walk) -> Walk {
    if w.is_trivial() {
        return w.clone();
    }
    let inv = w.inverse();
    if inv.letters < w.letters {
        inv
    } else {
        w.clone()
    }
}

/// Minimum over all rotations of both orientations.
pub fn canonical_band(cw: &CyclicWalk) -> CyclicWalk {
    let inv = cw.inverse();
    (0..cw.len())
        .flat_map(|t| [cw.rotate(t), inv.rotate(t)])
        .min()
        .expect("cyclic walks are nonempty")
}

fn parse_letter(bq: &BoundQuiver, token: &str) -> Result<Letter> {
    let (name, dir) = match token.strip_suffix("^-1") {
        Some(name) => (name, Direction::Inv),
        None => (token, Direction::Fwd),
    };
    let arrow = bq.arrow(name)?;
    Ok(Letter { arrow, dir })
}

fn split_letters(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| c.is_whitespace() || c == '·')
        .filter(|t| !t.is_empty())
}

pub fn parse_walk(bq: &BoundQuiver, text: &str) -> Result<Walk> {
    let text = text.trim();
    if let Some(v) = text.strip_prefix('@') {
        return Ok(Walk::trivial(bq.vertex(v.trim())?));
    }
    if text.starts_with("cycle(") {
        return Err(Error::InvalidWalk(
            "expected a linear walk, found `cycle(`".into(),
        ));
    }
    let letters = split_letters(text)
        .map(|t| parse_letter(bq, t))
        .collect::<Result<Vec<_>>>()?;
    Walk::from_letters(bq, letters)
}

pub fn parse_cyclic_walk(bq: &BoundQuiver, text: &str) -> Result<CyclicWalk> {
    let text = text.trim();
    let inner = text
        .strip_prefix("cycle(")
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(text);
    let letters = split_letters(inner)
        .map(|t| parse_letter(bq, t))
        .collect::<Result<Vec<_>>>()?;
    CyclicWalk::new(letters)
}
