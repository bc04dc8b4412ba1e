//! Forbidden paths and cycles, left forbidden arrows, and the perfect index.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::classify::require_sag;
use crate::error::{Error, Result};
use crate::quiver::{Arrow, BoundQuiver, Vertex};

/// Oriented cycle `c_1 ⋯ c_n` on pairwise distinct vertices with every
/// cyclically consecutive product `c_i c_{i+1}` in the ideal. The cycle must
/// be chordless: two of its vertices that are not consecutive on it are not
/// joined by any arrow. Stored rotated so that the smallest arrow comes first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForbiddenCycle {
    pub arrows: Vec<Arrow>,
}

impl ForbiddenCycle {
    pub fn new(mut arrows: Vec<Arrow>) -> Self {
        if let Some(pos) = arrows
            .iter()
            .enumerate()
            .min_by_key(|(_, a)| **a)
            .map(|(i, _)| i)
        {
            arrows.rotate_left(pos);
        }
        ForbiddenCycle { arrows }
    }

    pub fn contains(&self, a: Arrow) -> bool {
        self.arrows.contains(&a)
    }

    pub fn format(&self, bq: &BoundQuiver) -> String {
        self.arrows
            .iter()
            .map(|&a| bq.arrow_name(a))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PerfectIndex {
    pub arrows: BTreeSet<Arrow>,
    pub cycles: Vec<ForbiddenCycle>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForbiddenReport {
    pub left_forbidden: Vec<String>,
    pub cycles: Vec<CycleReport>,
    pub perfect_index: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleReport {
    pub arrows: Vec<String>,
    pub perfect: bool,
}

/// Arrows `α` with some `αβ ∈ I`.
pub fn left_forbidden_arrows(bq: &BoundQuiver) -> BTreeSet<Arrow> {
    bq.arrows()
        .filter(|&a| {
            bq.out_arrows(bq.target(a))
                .iter()
                .any(|&b| bq.pair_in_ideal(a, b))
        })
        .collect()
}

/// Arrows `β` with some `αβ ∈ I`.
pub fn right_forbidden_arrows(bq: &BoundQuiver) -> BTreeSet<Arrow> {
    bq.arrows()
        .filter(|&b| {
            bq.in_arrows(bq.source(b))
                .iter()
                .any(|&a| bq.pair_in_ideal(a, b))
        })
        .collect()
}

/// Simple cycles of the relation digraph (arrows as nodes, `a -> b` iff
/// `ab ∈ I`) that visit pairwise distinct quiver vertices and have no chord.
pub fn forbidden_cycles(bq: &BoundQuiver) -> Vec<ForbiddenCycle> {
    let mut found = Vec::new();
    for start in bq.arrows() {
        let mut path = vec![start];
        let mut seen_vertices = vec![bq.source(start)];
        search_cycles(bq, start, &mut path, &mut seen_vertices, &mut found);
    }
    found.retain(|c| chord(bq, &c.arrows).is_none());
    found.sort();
    found
}

/// An arrow joining two vertices that are not consecutive on the cycle.
fn chord(bq: &BoundQuiver, cycle: &[Arrow]) -> Option<Arrow> {
    let n = cycle.len();
    let pos: Vec<Vertex> = cycle.iter().map(|&a| bq.source(a)).collect();
    let index_of = |v: Vertex| pos.iter().position(|&u| u == v);
    bq.arrows().find(
        |&x| match (index_of(bq.source(x)), index_of(bq.target(x))) {
            (Some(i), Some(j)) => {
                let d = (i + n - j) % n;
                d != 1 && d != n - 1 && d != 0
            }
            _ => false,
        },
    )
}

fn search_cycles(
    bq: &BoundQuiver,
    start: Arrow,
    path: &mut Vec<Arrow>,
    seen: &mut Vec<Vertex>,
    found: &mut Vec<ForbiddenCycle>,
) {
    let last = *path.last().expect("nonempty");
    let at = bq.target(last);
    if at == bq.source(start) && bq.pair_in_ideal(last, start) {
        found.push(ForbiddenCycle::new(path.clone()));
    }
    if seen.contains(&at) {
        return;
    }
    for &next in bq.out_arrows(at) {
        // only cycles whose smallest arrow is `start`
        if next <= start || !bq.pair_in_ideal(last, next) {
            continue;
        }
        path.push(next);
        seen.push(at);
        search_cycles(bq, start, path, seen, found);
        seen.pop();
        path.pop();
    }
}

fn check_forbidden_cycle(bq: &BoundQuiver, c: &ForbiddenCycle) -> Result<()> {
    let n = c.arrows.len();
    let bad = |msg: String| Err(Error::NotForbiddenCycle(msg));
    if n == 0 {
        return bad("empty cycle".into());
    }
    if let Some(a) = c.arrows.iter().find(|a| a.0 >= bq.num_arrows()) {
        return bad(format!("arrow index {} out of range", a.0));
    }
    let mut vertices = BTreeSet::new();
    for i in 0..n {
        let (a, b) = (c.arrows[i], c.arrows[(i + 1) % n]);
        if bq.target(a) != bq.source(b) {
            return bad(format!(
                "`{}` does not compose with `{}`",
                bq.arrow_name(a),
                bq.arrow_name(b)
            ));
        }
        if !bq.pair_in_ideal(a, b) {
            return bad(format!(
                "`{} {}` is not in the ideal",
                bq.arrow_name(a),
                bq.arrow_name(b)
            ));
        }
        if !vertices.insert(bq.source(a)) {
            return bad(format!("vertex `{}` repeats", bq.vertex_name(bq.source(a))));
        }
    }
    if let Some(x) = chord(bq, &c.arrows) {
        return bad(format!("`{}` is a chord", bq.arrow_name(x)));
    }
    Ok(())
}

/// Every relation `x y` that stops `c` from being perfect: an outside arrow
/// entering a cycle vertex composed with the cycle arrow leaving it, or the
/// cycle arrow entering a vertex composed with an outside arrow leaving it.
/// Arrows of the cycle itself are exempt. Listed vertex by vertex along `c`.
pub fn perfection_witnesses(bq: &BoundQuiver, c: &ForbiddenCycle) -> Result<Vec<(Arrow, Arrow)>> {
    check_forbidden_cycle(bq, c)?;
    let n = c.arrows.len();
    let mut out = Vec::new();
    for i in 0..n {
        let leaving = c.arrows[i];
        let entering = c.arrows[(i + n - 1) % n];
        let t = bq.source(leaving);
        for &alpha in bq.in_arrows(t) {
            if !c.contains(alpha) && bq.pair_in_ideal(alpha, leaving) {
                out.push((alpha, leaving));
            }
        }
        for &beta in bq.out_arrows(t) {
            if !c.contains(beta) && bq.pair_in_ideal(entering, beta) {
                out.push((entering, beta));
            }
        }
    }
    Ok(out)
}

/// The first of [`perfection_witnesses`], if any.
pub fn perfection_witness(bq: &BoundQuiver, c: &ForbiddenCycle) -> Result<Option<(Arrow, Arrow)>> {
    Ok(perfection_witnesses(bq, c)?.into_iter().next())
}

pub fn is_perfect(bq: &BoundQuiver, c: &ForbiddenCycle) -> Result<bool> {
    Ok(perfection_witness(bq, c)?.is_none())
}

/// Union of the arrows on all perfect forbidden cycles.
pub fn perfect_index(bq: &BoundQuiver) -> Result<PerfectIndex> {
    require_sag(bq)?;
    let mut index = PerfectIndex::default();
    for c in forbidden_cycles(bq) {
        if is_perfect(bq, &c)? {
            index.arrows.extend(c.arrows.iter().copied());
            index.cycles.push(c);
        }
    }
    Ok(index)
}

/// Everything the `forbidden` command prints. Requires an SAG pair for the
/// perfect index.
pub fn report(bq: &BoundQuiver) -> Result<ForbiddenReport> {
    let name = |a: &Arrow| bq.arrow_name(*a).to_string();
    let index = perfect_index(bq)?;
    let mut cycles = Vec::new();
    for c in forbidden_cycles(bq) {
        cycles.push(CycleReport {
            arrows: c.arrows.iter().map(name).collect(),
            perfect: is_perfect(bq, &c)?,
        });
    }
    Ok(ForbiddenReport {
        left_forbidden: left_forbidden_arrows(bq).iter().map(name).collect(),
        cycles,
        perfect_index: index.arrows.iter().map(name).collect(),
    })
}
