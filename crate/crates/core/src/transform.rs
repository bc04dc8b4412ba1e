//! The R-bound quiver: splitting arrows of a left forbidden arrow index.
//!
//! For an index `R` every `α ∈ R` becomes a pair `α_L: s(α) -> v_α` and
//! `α_R: v_α -> t(α)` through a fresh vertex `v_α` standing for the module
//! `αA`. A relation `a_1 a_2 ⋯ a_n` is rewritten with `a_1` replaced by its
//! right half, `a_n` by its left half and every interior `a_i ∈ R` by
//! `a_i,L a_i,R`; arrows outside `R` are kept as they are.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::classify::require_sag;
use crate::error::{Error, Result};
use crate::forbidden::{left_forbidden_arrows, perfect_index};
use crate::quiver::{Arrow, ArrowInfo, BoundQuiver, Vertex};
use crate::strmod::{arrow_module_string, hom_dim, projective_string};
use crate::walk::{CyclicWalk, Letter, Walk};
use crate::walks::{band_defect, string_defect};

/// A validated left forbidden arrow index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RIndex {
    pub arrows: BTreeSet<Arrow>,
}

impl RIndex {
    pub fn empty() -> Self {
        RIndex::default()
    }

    pub fn contains(&self, a: Arrow) -> bool {
        self.arrows.contains(&a)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformResult {
    pub source: BoundQuiver,
    pub index: RIndex,
    pub quiver: BoundQuiver,
    /// `α ↦ v_α` for `α ∈ R`.
    pub vertex_map: BTreeMap<Arrow, Vertex>,
    /// `α ↦ (α_L, α_R)` for `α ∈ R`.
    pub arrow_map: BTreeMap<Arrow, (Arrow, Arrow)>,
    /// Arrows outside `R`, old index to new index. Vertices keep their index.
    pub passthrough: BTreeMap<Arrow, Arrow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransformedAlgebraReport {
    #[serde(skip)]
    pub result: TransformResult,
    pub dim_source_endo: usize,
    pub dim_transformed: usize,
}

impl TransformedAlgebraReport {
    pub fn dimensions_agree(&self) -> bool {
        self.dim_source_endo == self.dim_transformed
    }
}

pub fn validate_index(bq: &BoundQuiver, arrows: impl IntoIterator<Item = Arrow>) -> Result<RIndex> {
    let allowed = left_forbidden_arrows(bq);
    let mut index = RIndex::empty();
    for a in arrows {
        if a.0 >= bq.num_arrows() {
            return Err(Error::UnknownArrow(format!("#{}", a.0)));
        }
        if !allowed.contains(&a) {
            return Err(Error::NotLeftForbidden(bq.arrow_name(a).to_string()));
        }
        index.arrows.insert(a);
    }
    Ok(index)
}

pub fn validate_index_ids(bq: &BoundQuiver, ids: &[&str]) -> Result<RIndex> {
    let arrows = ids
        .iter()
        .map(|id| bq.arrow(id))
        .collect::<Result<Vec<_>>>()?;
    validate_index(bq, arrows)
}

/// Picks `base`, or `base2`, `base3`, … if taken.
fn fresh_id(base: String, taken: &mut HashSet<String>) -> String {
    let mut candidate = base.clone();
    let mut n = 2;
    while taken.contains(&candidate) {
        candidate = format!("{base}{n}");
        n += 1;
    }
    taken.insert(candidate.clone());
    candidate
}

pub fn r_transform(bq: &BoundQuiver, index: &RIndex) -> Result<TransformResult> {
    // Re-validate: an RIndex built for another quiver must not slip through.
    let index = validate_index(bq, index.arrows.iter().copied())?;

    let mut taken: HashSet<String> = bq
        .vertices()
        .map(|v| bq.vertex_name(v).to_string())
        .chain(bq.arrows().map(|a| bq.arrow_name(a).to_string()))
        .collect();

    let mut vertices: Vec<String> = bq
        .vertices()
        .map(|v| bq.vertex_name(v).to_string())
        .collect();
    let mut vertex_map = BTreeMap::new();
    for &a in &index.arrows {
        let id = fresh_id(format!("v_{}", bq.arrow_name(a)), &mut taken);
        vertex_map.insert(a, Vertex(vertices.len()));
        vertices.push(id);
    }

    let mut arrows: Vec<ArrowInfo> = Vec::new();
    let mut arrow_map = BTreeMap::new();
    let mut passthrough = BTreeMap::new();
    for a in bq.arrows() {
        let info = bq.arrow_info(a);
        if let Some(&mid) = vertex_map.get(&a) {
            let left = Arrow(arrows.len());
            arrows.push(ArrowInfo {
                id: fresh_id(format!("{}_L", info.id), &mut taken),
                source: info.source,
                target: mid,
            });
            let right = Arrow(arrows.len());
            arrows.push(ArrowInfo {
                id: fresh_id(format!("{}_R", info.id), &mut taken),
                source: mid,
                target: info.target,
            });
            arrow_map.insert(a, (left, right));
        } else {
            passthrough.insert(a, Arrow(arrows.len()));
            arrows.push(info.clone());
        }
    }

    let whole = |a: Arrow| -> Vec<Arrow> {
        match arrow_map.get(&a) {
            Some(&(l, r)) => vec![l, r],
            None => vec![passthrough[&a]],
        }
    };
    let left_half = |a: Arrow| {
        arrow_map
            .get(&a)
            .map_or_else(|| passthrough[&a], |&(l, _)| l)
    };
    let right_half = |a: Arrow| {
        arrow_map
            .get(&a)
            .map_or_else(|| passthrough[&a], |&(_, r)| r)
    };

    let relations = bq
        .relations()
        .iter()
        .map(|rel| {
            let n = rel.len();
            let mut out = vec![right_half(rel[0])];
            for &a in &rel[1..n - 1] {
                out.extend(whole(a));
            }
            out.push(left_half(rel[n - 1]));
            out
        })
        .collect();

    Ok(TransformResult {
        source: bq.clone(),
        index,
        quiver: BoundQuiver::from_parts(vertices, arrows, relations),
        vertex_map,
        arrow_map,
        passthrough,
    })
}

impl TransformResult {
    fn lift_letters(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(letters.len() * 2);
        for l in letters {
            match (self.arrow_map.get(&l.arrow), l.is_fwd()) {
                (Some(&(left, right)), true) => {
                    out.push(Letter::fwd(left));
                    out.push(Letter::fwd(right));
                }
                (Some(&(left, right)), false) => {
                    out.push(Letter::inv(right));
                    out.push(Letter::inv(left));
                }
                (None, _) => out.push(Letter {
                    arrow: self.passthrough[&l.arrow],
                    dir: l.dir,
                }),
            }
        }
        out
    }
}

/// Rewrites a string on the source quiver letter by letter.
pub fn lift_walk(tr: &TransformResult, w: &Walk) -> Result<Walk> {
    if let Some(defect) = string_defect(&tr.source, w) {
        return Err(Error::InvalidWalk(defect));
    }
    if w.is_trivial() {
        return Ok(Walk::trivial(w.start));
    }
    Walk::from_letters(&tr.quiver, tr.lift_letters(&w.letters))
}

/// Rewrites a band on the source quiver letter by letter.
pub fn lift_cyclic_walk(tr: &TransformResult, cw: &CyclicWalk) -> Result<CyclicWalk> {
    if let Some(defect) = band_defect(&tr.source, cw) {
        return Err(Error::InvalidWalk(defect));
    }
    CyclicWalk::new(tr.lift_letters(&cw.letters))
}

fn sag_finite(bq: &BoundQuiver) -> Result<()> {
    require_sag(bq)?;
    if !bq.is_finite_dimensional() {
        return Err(Error::InfiniteDimensional);
    }
    Ok(())
}

/// The bound quiver of the Cohen–Macaulay Auslander algebra: the transform
/// by the perfect index.
pub fn cma(bq: &BoundQuiver) -> Result<TransformResult> {
    sag_finite(bq)?;
    let index = perfect_index(bq)?;
    r_transform(
        bq,
        &RIndex {
            arrows: index.arrows,
        },
    )
}

/// Compares `dim End(A ⊕ ⊕_{α∈R} αA)`, summed from hom dimensions between
/// the summand strings, with the dimension of the transformed algebra.
pub fn verify_endo_dimension(bq: &BoundQuiver, index: &RIndex) -> Result<TransformedAlgebraReport> {
    sag_finite(bq)?;
    let result = r_transform(bq, index)?;
    let mut summands = Vec::new();
    for v in bq.vertices() {
        summands.push(projective_string(bq, v)?);
    }
    for &a in &result.index.arrows {
        summands.push(arrow_module_string(bq, a)?);
    }
    let mut dim_source_endo = 0;
    for x in &summands {
        for y in &summands {
            dim_source_endo += hom_dim(bq, x, y)?;
        }
    }
    let dim_transformed = result.quiver.algebra_dim()?;
    Ok(TransformedAlgebraReport {
        result,
        dim_source_endo,
        dim_transformed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_quiver;
    use crate::walk::parse_walk;

    fn zero_path() -> BoundQuiver {
        parse_quiver("quiver\nvertices: 1 2 3\narrows:\n a: 1 -> 2\n b: 2 -> 3\nrelations:\n a b\n")
            .unwrap()
    }

    #[test]
    fn splitting_one_arrow() {
        let bq = zero_path();
        let r = validate_index_ids(&bq, &["a"]).unwrap();
        let tr = r_transform(&bq, &r).unwrap();
        let q = &tr.quiver;
        assert_eq!(q.num_vertices(), 4);
        assert_eq!(q.num_arrows(), 3);
        assert_eq!(crate::dsl::to_dsl(q), "quiver\nvertices: 1 2 3 v_a\narrows:\n  a_L: 1 -> v_a\n  a_R: v_a -> 2\n  b: 2 -> 3\nrelations:\n  a_R b\n");
        // hand count: ε×4, a_L, a_R, b, a_L a_R
        assert_eq!(q.algebra_dim().unwrap(), 8);
        let report = verify_endo_dimension(&bq, &r).unwrap();
        assert_eq!(report.dim_source_endo, 8);
        assert!(report.dimensions_agree());
    }

    #[test]
    fn empty_index_is_identity() {
        let bq = zero_path();
        let tr = r_transform(&bq, &RIndex::empty()).unwrap();
        assert_eq!(tr.quiver, bq);
    }

    #[test]
    fn rejects_arrows_that_head_no_relation() {
        let bq = zero_path();
        assert_eq!(
            validate_index_ids(&bq, &["b"]),
            Err(Error::NotLeftForbidden("b".into()))
        );
    }

    #[test]
    fn fresh_ids_avoid_collisions() {
        let bq = parse_quiver(
            "quiver\nvertices: 1 2 3 v_a\narrows:\n a: 1 -> 2\n b: 2 -> 3\n a_L: v_a -> 1\nrelations:\n a b\n",
        )
        .unwrap();
        let tr = r_transform(&bq, &validate_index_ids(&bq, &["a"]).unwrap()).unwrap();
        let (l, _) = tr.arrow_map[&bq.arrow("a").unwrap()];
        assert_eq!(tr.quiver.arrow_name(l), "a_L2");
        assert_eq!(
            tr.quiver
                .vertex_name(tr.vertex_map[&bq.arrow("a").unwrap()]),
            "v_a2"
        );
    }

    #[test]
    fn lifting_splits_letters() {
        let bq = zero_path();
        let tr = r_transform(&bq, &validate_index_ids(&bq, &["a"]).unwrap()).unwrap();
        let w = parse_walk(&bq, "a").unwrap();
        assert_eq!(lift_walk(&tr, &w).unwrap().format(&tr.quiver), "a_L a_R");
        assert_eq!(
            lift_walk(&tr, &w.inverse()).unwrap().format(&tr.quiver),
            "a_R^-1 a_L^-1"
        );
        let bad = parse_walk(&bq, "a b").unwrap();
        assert!(matches!(lift_walk(&tr, &bad), Err(Error::InvalidWalk(_))));
    }
}
