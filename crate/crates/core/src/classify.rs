//! Axiom checks: string pairs, almost gentle pairs, SAG pairs and gentle pairs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{Arrow, BoundQuiver, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    /// Continuations after the arrow.
    R,
    /// Continuations before the arrow.
    L,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// One of `S1`, `S2_R`, `S2_L`, `AG2`, `G_R`, `G_L`.
    pub axiom: &'static str,
    /// Vertex id, arrow plus the offending neighbours, or relation arrows.
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    #[serde(rename = "string")]
    pub is_string: bool,
    #[serde(rename = "almost_gentle")]
    pub is_almost_gentle: bool,
    #[serde(rename = "sag")]
    pub is_sag: bool,
    #[serde(rename = "gentle")]
    pub is_gentle: bool,
    pub violations: Vec<Violation>,
}

/// Vertices that are the source, or the target, of three or more arrows.
pub fn check_s1(bq: &BoundQuiver) -> Vec<Vertex> {
    bq.vertices()
        .filter(|&v| bq.out_arrows(v).len() > 2 || bq.in_arrows(v).len() > 2)
        .collect()
}

fn free_successors(bq: &BoundQuiver, a: Arrow) -> Vec<Arrow> {
    bq.out_arrows(bq.target(a))
        .iter()
        .copied()
        .filter(|&b| !bq.pair_in_ideal(a, b))
        .collect()
}

fn free_predecessors(bq: &BoundQuiver, a: Arrow) -> Vec<Arrow> {
    bq.in_arrows(bq.source(a))
        .iter()
        .copied()
        .filter(|&g| !bq.pair_in_ideal(g, a))
        .collect()
}

/// Arrows with two or more relation-free continuations on some side.
pub fn check_s2(bq: &BoundQuiver) -> Vec<(Arrow, Side)> {
    let mut out = Vec::new();
    for a in bq.arrows() {
        if free_successors(bq, a).len() > 1 {
            out.push((a, Side::R));
        }
        if free_predecessors(bq, a).len() > 1 {
            out.push((a, Side::L));
        }
    }
    out
}

pub fn classify(bq: &BoundQuiver) -> Classification {
    let name = |a: Arrow| bq.arrow_name(a).to_string();
    let mut violations = Vec::new();

    let s1 = check_s1(bq);
    for &v in &s1 {
        violations.push(Violation {
            axiom: "S1",
            witness: vec![bq.vertex_name(v).to_string()],
        });
    }

    let s2 = check_s2(bq);
    for &(a, side) in &s2 {
        let (axiom, others) = match side {
            Side::R => ("S2_R", free_successors(bq, a)),
            Side::L => ("S2_L", free_predecessors(bq, a)),
        };
        let mut witness = vec![name(a)];
        witness.extend(others.into_iter().map(name));
        violations.push(Violation { axiom, witness });
    }

    let long: Vec<&Vec<Arrow>> = bq.relations().iter().filter(|r| r.len() != 2).collect();
    for r in &long {
        violations.push(Violation {
            axiom: "AG2",
            witness: r.iter().map(|&a| name(a)).collect(),
        });
    }

    let is_string = s1.is_empty() && s2.is_empty();
    let is_almost_gentle = s2.is_empty() && long.is_empty();
    let is_sag = is_string && is_almost_gentle;

    let mut gentle_ok = true;
    for a in bq.arrows() {
        let after: Vec<Arrow> = bq
            .out_arrows(bq.target(a))
            .iter()
            .copied()
            .filter(|&b| bq.pair_in_ideal(a, b))
            .collect();
        if after.len() > 1 {
            gentle_ok = false;
            let mut witness = vec![name(a)];
            witness.extend(after.into_iter().map(name));
            violations.push(Violation {
                axiom: "G_R",
                witness,
            });
        }
        let before: Vec<Arrow> = bq
            .in_arrows(bq.source(a))
            .iter()
            .copied()
            .filter(|&g| bq.pair_in_ideal(g, a))
            .collect();
        if before.len() > 1 {
            gentle_ok = false;
            let mut witness = vec![name(a)];
            witness.extend(before.into_iter().map(name));
            violations.push(Violation {
                axiom: "G_L",
                witness,
            });
        }
    }

    Classification {
        is_string,
        is_almost_gentle,
        is_sag,
        is_gentle: is_sag && gentle_ok,
        violations,
    }
}

pub(crate) fn require_string(bq: &BoundQuiver) -> Result<()> {
    let c = classify(bq);
    if c.is_string {
        Ok(())
    } else {
        let first = c
            .violations
            .iter()
            .find(|v| matches!(v.axiom, "S1" | "S2_R" | "S2_L"))
            .map(|v| format!("{} violated at {}", v.axiom, v.witness.join(" ")))
            .unwrap_or_default();
        Err(Error::NotStringPair(first))
    }
}

pub(crate) fn require_sag(bq: &BoundQuiver) -> Result<()> {
    let c = classify(bq);
    if c.is_sag {
        Ok(())
    } else {
        let first = c
            .violations
            .iter()
            .find(|v| matches!(v.axiom, "S1" | "S2_R" | "S2_L" | "AG2"))
            .map(|v| format!("{} violated at {}", v.axiom, v.witness.join(" ")))
            .unwrap_or_default();
        Err(Error::NotSag(first))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_quiver;

    #[test]
    fn empty_and_single_vertex_satisfy_everything() {
        for text in ["quiver\nvertices:\n", "quiver\nvertices: 1\n"] {
            let c = classify(&parse_quiver(text).unwrap());
            assert!(c.is_string && c.is_almost_gentle && c.is_sag && c.is_gentle);
            assert!(c.violations.is_empty());
        }
    }

    #[test]
    fn star_violates_s1_at_centre() {
        let bq = parse_quiver(
            "quiver\nvertices: c x y z\narrows:\n a: c -> x\n b: c -> y\n d: c -> z\n",
        )
        .unwrap();
        assert_eq!(check_s1(&bq), vec![bq.vertex("c").unwrap()]);
        let c = classify(&bq);
        assert!(!c.is_string);
        assert!(c.is_almost_gentle);
        assert_eq!(c.violations[0].witness, vec!["c"]);
    }

    #[test]
    fn single_arrow_has_no_s2_violation() {
        let bq = parse_quiver("quiver\nvertices: 1 2\narrows:\n a: 1 -> 2\n").unwrap();
        assert!(check_s2(&bq).is_empty());
    }

    #[test]
    fn two_free_continuations_violate_s2_r() {
        let bq = parse_quiver(
            "quiver\nvertices: 1 2 3 4\narrows:\n a: 1 -> 2\n b: 2 -> 3\n c: 2 -> 4\n",
        )
        .unwrap();
        let a = bq.arrow("a").unwrap();
        assert_eq!(check_s2(&bq), vec![(a, Side::R)]);
        let c = classify(&bq);
        assert_eq!(c.violations[0].witness, vec!["a", "b", "c"]);
        assert!(!c.is_sag);
    }

    #[test]
    fn gentle_needs_unique_relation_partner() {
        // a b and a c both in I: almost gentle but not gentle
        let bq = parse_quiver(
            "quiver\nvertices: 1 2 3 4\narrows:\n a: 1 -> 2\n b: 2 -> 3\n c: 2 -> 4\nrelations:\n a b\n a c\n",
        )
        .unwrap();
        let c = classify(&bq);
        assert!(c.is_sag);
        assert!(!c.is_gentle);
        assert_eq!(c.violations[0].axiom, "G_R");
    }
}
