//! String modules at the combinatorial level: strings of projectives and of
//! arrow modules `αA`, factor and image substrings, and hom dimensions.
//!
//! Modules are right modules over `kQ/I` with `ab = a then b`, so `P(v) = e_v A`
//! is spanned by the relation-free paths leaving `v` and `Hom(P(w), P(v))` has
//! a basis indexed by paths from `v` to `w`.

use serde::Serialize;

use crate::classify::require_string;
use crate::error::{Error, Result};
use crate::quiver::{Arrow, BoundQuiver, Vertex};
use crate::walk::{canonical_string, Letter, Walk};
use crate::walks::string_defect;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OccurrenceKind {
    /// Boundary letters point out of the substring (a quotient of the module).
    Factor,
    /// Boundary letters point into the substring (a submodule).
    Image,
}

/// A positioned substring: letters `start..end` of the walk, i.e. the vertex
/// positions `start ..= end`. `start == end` is a trivial occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubstringOccurrence {
    pub start: usize,
    pub end: usize,
    pub kind: OccurrenceKind,
}

impl SubstringOccurrence {
    pub fn new(start: usize, end: usize, kind: OccurrenceKind) -> Self {
        SubstringOccurrence { start, end, kind }
    }

    pub fn is_trivial(&self) -> bool {
        self.start == self.end
    }

    pub fn letters<'w>(&self, w: &'w Walk) -> &'w [Letter] {
        &w.letters[self.start..self.end]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleLabel {
    Projective(Vertex),
    Arrow(Arrow),
    Simple(Vertex),
    Plain,
}

/// A string module named by the canonical form of its string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringModuleHandle {
    pub string: Walk,
    pub label: ModuleLabel,
}

impl StringModuleHandle {
    pub fn projective(bq: &BoundQuiver, v: Vertex) -> Result<Self> {
        Ok(StringModuleHandle {
            string: canonical_string(&projective_string(bq, v)?),
            label: ModuleLabel::Projective(v),
        })
    }

    pub fn arrow(bq: &BoundQuiver, a: Arrow) -> Result<Self> {
        Ok(StringModuleHandle {
            string: canonical_string(&arrow_module_string(bq, a)?),
            label: ModuleLabel::Arrow(a),
        })
    }

    pub fn simple(v: Vertex) -> Self {
        StringModuleHandle {
            string: Walk::trivial(v),
            label: ModuleLabel::Simple(v),
        }
    }

    pub fn plain(w: &Walk) -> Self {
        StringModuleHandle {
            string: canonical_string(w),
            label: ModuleLabel::Plain,
        }
    }
}

fn preconditions(bq: &BoundQuiver) -> Result<()> {
    require_string(bq)?;
    if !bq.is_finite_dimensional() {
        return Err(Error::InfiniteDimensional);
    }
    Ok(())
}

/// Extends `path` by the unique relation-free continuation until none is left.
fn extend_maximally(bq: &BoundQuiver, path: &mut Vec<Arrow>) {
    loop {
        let last = *path.last().expect("nonempty path");
        let next = bq.out_arrows(bq.target(last)).iter().copied().find(|&b| {
            path.push(b);
            let free = !bq.arrows_in_ideal(path);
            path.pop();
            free
        });
        match next {
            Some(b) => path.push(b),
            None => break,
        }
    }
}

/// The maximal relation-free paths leaving `v`, one per outgoing arrow,
/// in arrow declaration order.
pub fn projective_branches(bq: &BoundQuiver, v: Vertex) -> Result<Vec<Vec<Arrow>>> {
    preconditions(bq)?;
    Ok(bq
        .out_arrows(v)
        .iter()
        .map(|&a| {
            let mut path = vec![a];
            extend_maximally(bq, &mut path);
            path
        })
        .collect())
}

/// String of `P(v)`: the second branch inverted, then the first branch.
pub fn projective_string(bq: &BoundQuiver, v: Vertex) -> Result<Walk> {
    let branches = projective_branches(bq, v)?;
    let mut letters = Vec::new();
    if let Some(second) = branches.get(1) {
        letters.extend(second.iter().rev().map(|&a| Letter::inv(a)));
    }
    if let Some(first) = branches.first() {
        letters.extend(first.iter().map(|&a| Letter::fwd(a)));
    }
    if letters.is_empty() {
        Ok(Walk::trivial(v))
    } else {
        Walk::from_letters(bq, letters)
    }
}

/// String of `αA`: the maximal continuation `a_2 ⋯ a_n` with `α a_2 ⋯ a_n ∉ I`.
pub fn arrow_module_string(bq: &BoundQuiver, alpha: Arrow) -> Result<Walk> {
    preconditions(bq)?;
    if alpha.0 >= bq.num_arrows() {
        return Err(Error::UnknownArrow(format!("#{}", alpha.0)));
    }
    let mut path = vec![alpha];
    extend_maximally(bq, &mut path);
    if path.len() == 1 {
        Ok(Walk::trivial(bq.target(alpha)))
    } else {
        Walk::from_letters(bq, path[1..].iter().map(|&a| Letter::fwd(a)).collect())
    }
}

fn occurrences(w: &Walk, kind: OccurrenceKind) -> Vec<SubstringOccurrence> {
    let n = w.letters.len();
    // A factor needs an inverse letter before it and a forward letter after it;
    // an image needs the opposite. Missing neighbours always qualify.
    let (before_fwd, after_fwd) = match kind {
        OccurrenceKind::Factor => (false, true),
        OccurrenceKind::Image => (true, false),
    };
    let left_ok = |i: usize| i == 0 || w.letters[i - 1].is_fwd() == before_fwd;
    let right_ok = |j: usize| j == n || w.letters[j].is_fwd() == after_fwd;
    let mut out = Vec::new();
    for i in 0..=n {
        if !left_ok(i) {
            continue;
        }
        for j in i..=n {
            if right_ok(j) {
                out.push(SubstringOccurrence::new(i, j, kind));
            }
        }
    }
    out
}

pub fn factor_substrings(w: &Walk) -> Vec<SubstringOccurrence> {
    occurrences(w, OccurrenceKind::Factor)
}

pub fn image_substrings(w: &Walk) -> Vec<SubstringOccurrence> {
    occurrences(w, OccurrenceKind::Image)
}

/// Number of identifications between factor occurrence `q` of `s2` and
/// image occurrence `p` of `s1`: direct and inverse matches each count, and a
/// trivial pair at the same vertex counts once.
fn identifications(
    bq: &BoundQuiver,
    s2: &Walk,
    q: &SubstringOccurrence,
    s1: &Walk,
    p: &SubstringOccurrence,
) -> usize {
    if q.end - q.start != p.end - p.start {
        return 0;
    }
    if q.is_trivial() {
        return usize::from(s2.vertex_at(bq, q.start) == s1.vertex_at(bq, p.start));
    }
    let ql = q.letters(s2);
    let pl = p.letters(s1);
    let direct = ql == pl;
    let inverse = ql
        .iter()
        .zip(pl.iter().rev())
        .all(|(x, y)| *x == y.inverse());
    usize::from(direct) + usize::from(inverse)
}

/// `dim Hom(M(s2), M(s1))` by counting coinciding factor/image pairs.
pub fn hom_dim(bq: &BoundQuiver, s2: &Walk, s1: &Walk) -> Result<usize> {
    require_string(bq)?;
    for w in [s2, s1] {
        if let Some(defect) = string_defect(bq, w) {
            return Err(Error::InvalidWalk(format!("{}: {defect}", w.format(bq))));
        }
    }
    let factors = factor_substrings(s2);
    let images = image_substrings(s1);
    Ok(factors
        .iter()
        .map(|q| {
            images
                .iter()
                .map(|p| identifications(bq, s2, q, s1, p))
                .sum::<usize>()
        })
        .sum())
}
