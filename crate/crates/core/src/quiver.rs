//! Bound quivers with monomial relations.
//!
//! Composition is written left to right: the path `a b` means `a` then `b`,
//! so `t(a) = s(b)`. A path lies in the ideal iff it contains one of the
//! relations as a contiguous factor.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automaton::FactorAutomaton;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arrow(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowInfo {
    pub id: String,
    pub source: Vertex,
    pub target: Vertex,
}

/// Id-level description of a bound quiver, mirrored one-to-one by the JSON format.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub id: String,
    pub source: String,
    pub target: String,
}

impl ArrowSpec {
    pub fn new(
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        ArrowSpec {
            id: id.into(),
            source: source.into(),
            target: target.into(),
        }
    }
}

/// A path in the quiver. Trivial paths keep their anchor vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: Vertex,
    pub arrows: Vec<Arrow>,
}

impl Path {
    pub fn trivial(v: Vertex) -> Self {
        Path {
            source: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    fn order_key(&self) -> (usize, &[Arrow], Vertex) {
        (self.arrows.len(), &self.arrows, self.source)
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Length first, then lexicographic on arrow declaration order.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

pub(crate) fn is_token(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

#[derive(Debug, Clone)]
pub struct BoundQuiver {
    vertices: Vec<String>,
    arrows: Vec<ArrowInfo>,
    relations: Vec<Vec<Arrow>>,
    vertex_index: HashMap<String, Vertex>,
    arrow_index: HashMap<String, Arrow>,
    out_arrows: Vec<Vec<Arrow>>,
    in_arrows: Vec<Vec<Arrow>>,
    ideal: FactorAutomaton,
    reversed_ideal: FactorAutomaton,
}

impl PartialEq for BoundQuiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.arrows == other.arrows
            && self.relations == other.relations
    }
}

impl Eq for BoundQuiver {}

impl BoundQuiver {
    pub fn from_spec(spec: &QuiverSpec) -> Result<Self> {
        let mut vertex_index = HashMap::new();
        for (i, v) in spec.vertices.iter().enumerate() {
            if !is_token(v) {
                return Err(Error::Parse {
                    line: 0,
                    col: 0,
                    message: format!("invalid vertex id `{v}`"),
                });
            }
            if vertex_index.insert(v.clone(), Vertex(i)).is_some() {
                return Err(Error::DuplicateId(v.clone()));
            }
        }

        let mut arrow_index = HashMap::new();
        let mut arrows = Vec::with_capacity(spec.arrows.len());
        for (i, a) in spec.arrows.iter().enumerate() {
            if !is_token(&a.id) {
                return Err(Error::Parse {
                    line: 0,
                    col: 0,
                    message: format!("invalid arrow id `{}`", a.id),
                });
            }
            if vertex_index.contains_key(&a.id)
                || arrow_index.insert(a.id.clone(), Arrow(i)).is_some()
            {
                return Err(Error::DuplicateId(a.id.clone()));
            }
            let endpoint = |name: &str| {
                vertex_index
                    .get(name)
                    .copied()
                    .ok_or_else(|| Error::DanglingEndpoint {
                        arrow: a.id.clone(),
                        vertex: name.to_string(),
                    })
            };
            arrows.push(ArrowInfo {
                id: a.id.clone(),
                source: endpoint(&a.source)?,
                target: endpoint(&a.target)?,
            });
        }

        let mut relations = Vec::with_capacity(spec.relations.len());
        for rel in &spec.relations {
            let text = rel.join(" ");
            if rel.len() < 2 {
                return Err(Error::RelationTooShort(text));
            }
            let mut path = Vec::with_capacity(rel.len());
            for id in rel {
                let a = arrow_index
                    .get(id)
                    .copied()
                    .ok_or_else(|| Error::UnknownArrow(id.clone()))?;
                path.push(a);
            }
            for pair in path.windows(2) {
                if arrows[pair[0].0].target != arrows[pair[1].0].source {
                    return Err(Error::NonComposableRelation {
                        relation: text,
                        left: arrows[pair[0].0].id.clone(),
                        right: arrows[pair[1].0].id.clone(),
                    });
                }
            }
            relations.push(path);
        }

        Ok(Self::assemble(spec.vertices.clone(), arrows, relations))
    }

    /// Builds from already-validated parts; relations are normalized here.
    fn assemble(vertices: Vec<String>, arrows: Vec<ArrowInfo>, relations: Vec<Vec<Arrow>>) -> Self {
        let relations = normalize_relations(relations);
        let vertex_index = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), Vertex(i)))
            .collect();
        let arrow_index = arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.id.clone(), Arrow(i)))
            .collect();
        let mut out_arrows = vec![Vec::new(); vertices.len()];
        let mut in_arrows = vec![Vec::new(); vertices.len()];
        for (i, a) in arrows.iter().enumerate() {
            out_arrows[a.source.0].push(Arrow(i));
            in_arrows[a.target.0].push(Arrow(i));
        }
        let forward: Vec<Vec<usize>> = relations
            .iter()
            .map(|r| r.iter().map(|a| a.0).collect())
            .collect();
        let backward: Vec<Vec<usize>> = forward
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        let ideal = FactorAutomaton::new(arrows.len(), &forward);
        let reversed_ideal = FactorAutomaton::new(arrows.len(), &backward);
        BoundQuiver {
            vertices,
            arrows,
            relations,
            vertex_index,
            arrow_index,
            out_arrows,
            in_arrows,
            ideal,
            reversed_ideal,
        }
    }

    pub(crate) fn from_parts(
        vertices: Vec<String>,
        arrows: Vec<ArrowInfo>,
        relations: Vec<Vec<Arrow>>,
    ) -> Self {
        Self::assemble(vertices, arrows, relations)
    }

    pub fn to_spec(&self) -> QuiverSpec {
        QuiverSpec {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| {
                    ArrowSpec::new(
                        &a.id,
                        &self.vertices[a.source.0],
                        &self.vertices[a.target.0],
                    )
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| r.iter().map(|a| self.arrows[a.0].id.clone()).collect())
                .collect(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertices.len()).map(Vertex)
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        (0..self.arrows.len()).map(Arrow)
    }

    pub fn relations(&self) -> &[Vec<Arrow>] {
        &self.relations
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow_name(&self, a: Arrow) -> &str {
        &self.arrows[a.0].id
    }

    pub fn arrow_info(&self, a: Arrow) -> &ArrowInfo {
        &self.arrows[a.0]
    }

    pub fn source(&self, a: Arrow) -> Vertex {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: Arrow) -> Vertex {
        self.arrows[a.0].target
    }

    pub fn vertex(&self, id: &str) -> Result<Vertex> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn arrow(&self, id: &str) -> Result<Arrow> {
        self.arrow_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    /// Arrows leaving `v`, in declaration order.
    pub fn out_arrows(&self, v: Vertex) -> &[Arrow] {
        &self.out_arrows[v.0]
    }

    /// Arrows entering `v`, in declaration order.
    pub fn in_arrows(&self, v: Vertex) -> &[Arrow] {
        &self.in_arrows[v.0]
    }

    pub(crate) fn ideal_automaton(&self) -> &FactorAutomaton {
        &self.ideal
    }

    /// Automaton for the reversed relations, used to scan inverse runs of a walk.
    pub(crate) fn reversed_ideal_automaton(&self) -> &FactorAutomaton {
        &self.reversed_ideal
    }

    pub fn max_relation_len(&self) -> usize {
        self.relations.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn path(&self, ids: &[&str]) -> Result<Path> {
        let arrows = ids
            .iter()
            .map(|id| self.arrow(id))
            .collect::<Result<Vec<_>>>()?;
        let first = *arrows
            .first()
            .ok_or_else(|| Error::InvalidPath("empty arrow list; use a trivial path".into()))?;
        let path = Path {
            source: self.source(first),
            arrows,
        };
        self.check_path(&path)?;
        Ok(path)
    }

    pub fn check_path(&self, p: &Path) -> Result<()> {
        if p.source.0 >= self.vertices.len() {
            return Err(Error::InvalidPath(format!(
                "vertex index {} out of range",
                p.source.0
            )));
        }
        let mut at = p.source;
        for &a in &p.arrows {
            if a.0 >= self.arrows.len() {
                return Err(Error::InvalidPath(format!(
                    "arrow index {} out of range",
                    a.0
                )));
            }
            if self.source(a) != at {
                return Err(Error::InvalidPath(format!(
                    "`{}` does not start at `{}`",
                    self.arrow_name(a),
                    self.vertex_name(at)
                )));
            }
            at = self.target(a);
        }
        Ok(())
    }

    pub fn path_target(&self, p: &Path) -> Vertex {
        p.arrows.last().map_or(p.source, |&a| self.target(a))
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e_{}", self.vertex_name(p.source))
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrow_name(a))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// True iff the arrow sequence contains a relation as a contiguous factor.
    pub fn arrows_in_ideal(&self, arrows: &[Arrow]) -> bool {
        let word: Vec<usize> = arrows.iter().map(|a| a.0).collect();
        self.ideal.contains_factor(&word)
    }

    pub fn in_ideal(&self, p: &Path) -> Result<bool> {
        self.check_path(p)?;
        Ok(self.arrows_in_ideal(&p.arrows))
    }

    /// Shorthand for `a b ∈ I` on two composable arrows.
    pub fn pair_in_ideal(&self, a: Arrow, b: Arrow) -> bool {
        self.arrows_in_ideal(&[a, b])
    }

    /// No oriented cycle can be traversed forever without completing a relation.
    pub fn is_finite_dimensional(&self) -> bool {
        let states = self.ideal.num_states();
        let node = |v: Vertex, s: usize| v.0 * states + s;
        // 0 = unseen, 1 = on stack, 2 = done
        let mut color = vec![0u8; self.vertices.len() * states];
        for v in self.vertices() {
            let start = node(v, FactorAutomaton::ROOT);
            if color[start] != 0 {
                continue;
            }
            color[start] = 1;
            let mut stack: Vec<(Vertex, usize, usize)> = vec![(v, FactorAutomaton::ROOT, 0)];
            while let Some(top) = stack.last_mut() {
                let (at, state, idx) = *top;
                let outs = &self.out_arrows[at.0];
                if idx == outs.len() {
                    color[node(at, state)] = 2;
                    stack.pop();
                    continue;
                }
                top.2 += 1;
                let a = outs[idx];
                let next = self.ideal.step(state, a.0);
                if self.ideal.is_dead(next) {
                    continue;
                }
                let w = self.target(a);
                match color[node(w, next)] {
                    0 => {
                        color[node(w, next)] = 1;
                        stack.push((w, next, 0));
                    }
                    1 => return false,
                    _ => {}
                }
            }
        }
        true
    }

    fn ensure_finite(&self) -> Result<()> {
        if self.is_finite_dimensional() {
            Ok(())
        } else {
            Err(Error::InfiniteDimensional)
        }
    }

    /// All paths `from -> to` outside the ideal, trivial path included when
    /// `from == to`, sorted by length then arrow order.
    pub fn enumerate_paths(&self, from: Vertex, to: Vertex) -> Result<Vec<Path>> {
        self.ensure_finite()?;
        let mut found = Vec::new();
        let mut current = Vec::new();
        self.collect_paths(
            from,
            FactorAutomaton::ROOT,
            to,
            &mut current,
            from,
            &mut found,
        );
        found.sort();
        Ok(found)
    }

    fn collect_paths(
        &self,
        at: Vertex,
        state: usize,
        to: Vertex,
        current: &mut Vec<Arrow>,
        source: Vertex,
        found: &mut Vec<Path>,
    ) {
        if at == to {
            found.push(Path {
                source,
                arrows: current.clone(),
            });
        }
        for &a in &self.out_arrows[at.0] {
            let next = self.ideal.step(state, a.0);
            if self.ideal.is_dead(next) {
                continue;
            }
            current.push(a);
            self.collect_paths(self.target(a), next, to, current, source, found);
            current.pop();
        }
    }

    /// Number of paths (trivial ones included) outside the ideal.
    ///
    /// Counted on the product of the quiver with the forbidden-factor
    /// automaton, which is acyclic once the algebra is finite dimensional.
    pub fn algebra_dim(&self) -> Result<usize> {
        self.ensure_finite()?;
        let states = self.ideal.num_states();
        let mut memo: Vec<Option<usize>> = vec![None; self.vertices.len() * states];
        let mut total = 0;
        for v in self.vertices() {
            total += self.count_from(v, FactorAutomaton::ROOT, &mut memo);
        }
        Ok(total)
    }

    fn count_from(&self, at: Vertex, state: usize, memo: &mut Vec<Option<usize>>) -> usize {
        let key = at.0 * self.ideal.num_states() + state;
        if let Some(n) = memo[key] {
            return n;
        }
        let mut n = 1;
        for &a in &self.out_arrows[at.0] {
            let next = self.ideal.step(state, a.0);
            if !self.ideal.is_dead(next) {
                n += self.count_from(self.target(a), next, memo);
            }
        }
        memo[key] = Some(n);
        n
    }
}

/// Drops duplicates and every relation that contains another one as a factor.
pub fn normalize_relations(relations: Vec<Vec<Arrow>>) -> Vec<Vec<Arrow>> {
    let mut unique: Vec<Vec<Arrow>> = Vec::with_capacity(relations.len());
    for r in relations {
        if !unique.contains(&r) {
            unique.push(r);
        }
    }
    let contains = |big: &[Arrow], small: &[Arrow]| {
        small.len() < big.len() && big.windows(small.len()).any(|w| w == small)
    };
    unique
        .iter()
        .filter(|r| !unique.iter().any(|other| contains(r, other)))
        .cloned()
        .collect()
}

impl fmt::Display for BoundQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::to_dsl(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(vertices: &[&str], arrows: &[(&str, &str, &str)], relations: &[&[&str]]) -> QuiverSpec {
        QuiverSpec {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(a, s, t)| ArrowSpec::new(*a, *s, *t))
                .collect(),
            relations: relations
                .iter()
                .map(|r| r.iter().map(|s| s.to_string()).collect())
                .collect(),
        }
    }

    #[test]
    fn single_vertex_has_dimension_one() {
        let bq = BoundQuiver::from_spec(&spec(&["1"], &[], &[])).unwrap();
        assert_eq!(bq.algebra_dim().unwrap(), 1);
        assert!(bq.is_finite_dimensional());
    }

    #[test]
    fn single_arrow_has_dimension_three() {
        let bq = BoundQuiver::from_spec(&spec(&["1", "2"], &[("a", "1", "2")], &[])).unwrap();
        assert_eq!(bq.algebra_dim().unwrap(), 3);
    }

    #[test]
    fn free_loop_is_infinite_and_bounded_loop_is_not() {
        let free = BoundQuiver::from_spec(&spec(&["1"], &[("l", "1", "1")], &[])).unwrap();
        assert!(!free.is_finite_dimensional());
        assert_eq!(free.algebra_dim(), Err(Error::InfiniteDimensional));
        assert_eq!(
            free.enumerate_paths(Vertex(0), Vertex(0)),
            Err(Error::InfiniteDimensional)
        );

        let bound =
            BoundQuiver::from_spec(&spec(&["1"], &[("l", "1", "1")], &[&["l", "l"]])).unwrap();
        assert!(bound.is_finite_dimensional());
        assert_eq!(bound.algebra_dim().unwrap(), 2);
    }

    #[test]
    fn relations_are_factor_minimalized() {
        let bq = BoundQuiver::from_spec(&spec(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")],
            &[&["a", "b", "c"], &["b", "c"], &["b", "c"]],
        ))
        .unwrap();
        assert_eq!(bq.relations().len(), 1);
        assert_eq!(
            bq.format_path(&Path {
                source: Vertex(1),
                arrows: bq.relations()[0].clone()
            }),
            "b c"
        );
    }

    #[test]
    fn construction_errors() {
        let dup = spec(&["1", "1"], &[], &[]);
        assert_eq!(
            BoundQuiver::from_spec(&dup),
            Err(Error::DuplicateId("1".into()))
        );

        let clash = spec(&["a"], &[("a", "a", "a")], &[]);
        assert_eq!(
            BoundQuiver::from_spec(&clash),
            Err(Error::DuplicateId("a".into()))
        );

        let dangling = spec(&["1"], &[("a", "1", "2")], &[]);
        assert!(matches!(
            BoundQuiver::from_spec(&dangling),
            Err(Error::DanglingEndpoint { .. })
        ));

        let short = spec(&["1", "2"], &[("a", "1", "2")], &[&["a"]]);
        assert!(matches!(
            BoundQuiver::from_spec(&short),
            Err(Error::RelationTooShort(_))
        ));

        let skew = spec(
            &["1", "2"],
            &[("a", "1", "2"), ("b", "1", "2")],
            &[&["a", "b"]],
        );
        assert!(matches!(
            BoundQuiver::from_spec(&skew),
            Err(Error::NonComposableRelation { .. })
        ));
    }

    #[test]
    fn trivial_paths_are_never_in_the_ideal() {
        let bq = BoundQuiver::from_spec(&spec(&["1"], &[("l", "1", "1")], &[&["l", "l"]])).unwrap();
        assert!(!bq.in_ideal(&Path::trivial(Vertex(0))).unwrap());
        assert!(bq.in_ideal(&bq.path(&["l", "l", "l"]).unwrap()).unwrap());
    }
}
