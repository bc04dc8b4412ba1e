//! Strings and bands on a string pair: validation, enumeration and band detection.
//!
//! A walk is a string when it is composable, reduced (no letter is followed by
//! its own inverse) and every maximal same-direction run avoids the ideal. For
//! inverse runs the run is read backwards as a path, which is the same as
//! scanning the arrows in walk order against the reversed relations.
//!
//! Band detection works on a transition graph whose nodes are letters paired
//! with the forbidden-factor state of the run they end. An edge is a legal
//! one-letter extension. Cycles in this graph are exactly the periodic
//! relation-free walks, so a band exists iff the graph has a cycle.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::automaton::FactorAutomaton;
use crate::classify::require_string;
use crate::error::{Error, Result};
use crate::quiver::BoundQuiver;
use crate::walk::{canonical_string, CyclicWalk, Direction, Letter, Walk};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepresentationType {
    Finite,
    Infinite,
}

impl std::fmt::Display for RepresentationType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RepresentationType::Finite => "finite",
            RepresentationType::Infinite => "infinite",
        })
    }
}

/// Outcome of a validation: `reason` names the first defect found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validity {
    pub valid: bool,
    pub reason: Option<String>,
}

impl Validity {
    fn from_defect(defect: Option<String>) -> Self {
        Validity {
            valid: defect.is_none(),
            reason: defect,
        }
    }
}

fn automaton_for(bq: &BoundQuiver, dir: Direction) -> &FactorAutomaton {
    match dir {
        Direction::Fwd => bq.ideal_automaton(),
        Direction::Inv => bq.reversed_ideal_automaton(),
    }
}

/// Run state after appending `next` to a walk ending in `prev` with run state `state`.
/// `None` if the extension is not a legal string step.
pub(crate) fn extend_state(
    bq: &BoundQuiver,
    prev: Letter,
    state: usize,
    next: Letter,
) -> Option<usize> {
    if prev.target(bq) != next.source(bq) || next == prev.inverse() {
        return None;
    }
    let ac = automaton_for(bq, next.dir);
    let from = if next.dir == prev.dir {
        state
    } else {
        FactorAutomaton::ROOT
    };
    let s = ac.step(from, next.arrow.0);
    (!ac.is_dead(s)).then_some(s)
}

pub(crate) fn start_state(bq: &BoundQuiver, l: Letter) -> usize {
    automaton_for(bq, l.dir).step(FactorAutomaton::ROOT, l.arrow.0)
}

fn check_arrows(bq: &BoundQuiver, letters: &[Letter]) -> Result<()> {
    match letters.iter().find(|l| l.arrow.0 >= bq.num_arrows()) {
        Some(l) => Err(Error::UnknownArrow(format!("#{}", l.arrow.0))),
        None => Ok(()),
    }
}

fn describe_step(bq: &BoundQuiver, prev: Letter, next: Letter) -> String {
    if prev.target(bq) != next.source(bq) {
        format!(
            "`{}` does not compose with `{}`",
            prev.format(bq),
            next.format(bq)
        )
    } else if next == prev.inverse() {
        format!("`{}` is followed by its inverse", prev.format(bq))
    } else {
        format!(
            "a run through `{} {}` hits a relation",
            prev.format(bq),
            next.format(bq)
        )
    }
}

/// First defect of a linear walk, ignoring whether `bq` is a string pair.
pub(crate) fn string_defect(bq: &BoundQuiver, w: &Walk) -> Option<String> {
    if w.start.0 >= bq.num_vertices() {
        return Some(format!("vertex index {} out of range", w.start.0));
    }
    let Some(&first) = w.letters.first() else {
        return None;
    };
    if first.source(bq) != w.start {
        return Some("walk does not start at its anchor".into());
    }
    let mut state = start_state(bq, first);
    for pair in w.letters.windows(2) {
        match extend_state(bq, pair[0], state, pair[1]) {
            Some(s) => state = s,
            None => return Some(describe_step(bq, pair[0], pair[1])),
        }
    }
    None
}

/// First defect of a cyclic walk, including primitivity.
pub(crate) fn band_defect(bq: &BoundQuiver, cw: &CyclicWalk) -> Option<String> {
    let n = cw.len();
    if n == 0 {
        return Some("empty cyclic walk".into());
    }
    for i in 0..n {
        let (a, b) = (cw.letters[i], cw.letters[(i + 1) % n]);
        if a.target(bq) != b.source(bq) {
            return Some(format!(
                "`{}` does not compose with `{}`",
                a.format(bq),
                b.format(bq)
            ));
        }
        if b == a.inverse() {
            return Some(format!("`{}` is followed by its inverse", a.format(bq)));
        }
    }
    // Read far enough around the cycle that every run, including the one
    // crossing the seam, is scanned in full.
    let mixed = cw.letters.iter().any(|l| l.dir != cw.letters[0].dir);
    let unrolled: Vec<Letter> = if mixed {
        let cut = (0..n)
            .find(|&i| cw.letters[i].dir != cw.letters[(i + n - 1) % n].dir)
            .expect("mixed walk has a direction change");
        cw.rotate(cut).letters
    } else {
        let copies = bq.max_relation_len() / n + 2;
        cw.letters.repeat(copies)
    };
    let w = Walk {
        start: unrolled[0].source(bq),
        end: unrolled[unrolled.len() - 1].target(bq),
        letters: unrolled,
    };
    if let Some(defect) = string_defect(bq, &w) {
        return Some(defect);
    }
    if cw.primitive_period() != n {
        return Some(format!(
            "cyclic walk is a power of a word of length {}",
            cw.primitive_period()
        ));
    }
    None
}

pub fn validate_string(bq: &BoundQuiver, w: &Walk) -> Result<Validity> {
    require_string(bq)?;
    check_arrows(bq, &w.letters)?;
    Ok(Validity::from_defect(string_defect(bq, w)))
}

pub fn validate_band(bq: &BoundQuiver, cw: &CyclicWalk) -> Result<Validity> {
    require_string(bq)?;
    check_arrows(bq, &cw.letters)?;
    Ok(Validity::from_defect(band_defect(bq, cw)))
}

pub fn all_letters(bq: &BoundQuiver) -> Vec<Letter> {
    bq.arrows()
        .flat_map(|a| [Letter::fwd(a), Letter::inv(a)])
        .collect()
}

/// One representative per equivalence class of strings with at most
/// `max_letters` letters, trivial strings first, sorted by length then letters.
pub fn enumerate_strings(bq: &BoundQuiver, max_letters: usize) -> Result<Vec<Walk>> {
    require_string(bq)?;
    let mut out: Vec<Walk> = bq.vertices().map(Walk::trivial).collect();
    if max_letters > 0 {
        let mut stack: Vec<(Vec<Letter>, usize)> = all_letters(bq)
            .into_iter()
            .map(|l| (vec![l], start_state(bq, l)))
            .collect();
        while let Some((letters, state)) = stack.pop() {
            let last = *letters.last().expect("nonempty");
            if letters.len() < max_letters {
                for next in all_letters(bq) {
                    if let Some(s) = extend_state(bq, last, state, next) {
                        let mut longer = letters.clone();
                        longer.push(next);
                        stack.push((longer, s));
                    }
                }
            }
            let w = Walk::from_letters(bq, letters)?;
            if canonical_string(&w) == w {
                out.push(w);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Node of the band-detection graph: a letter and the run state it leaves behind.
type Node = (Letter, usize);

struct TransitionGraph {
    nodes: Vec<Node>,
    succ: Vec<Vec<usize>>,
}

impl TransitionGraph {
    fn build(bq: &BoundQuiver) -> Self {
        let letters = all_letters(bq);
        let mut index: HashMap<Node, usize> = HashMap::new();
        let mut nodes = Vec::new();
        let mut queue = VecDeque::new();
        for &l in &letters {
            let node = (l, start_state(bq, l));
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(node) {
                e.insert(nodes.len());
                nodes.push(node);
                queue.push_back(node);
            }
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        while let Some((l, s)) = queue.pop_front() {
            let from = index[&(l, s)];
            for &next in &letters {
                if let Some(ns) = extend_state(bq, l, s, next) {
                    let node = (next, ns);
                    let to = *index.entry(node).or_insert_with(|| {
                        nodes.push(node);
                        queue.push_back(node);
                        nodes.len() - 1
                    });
                    edges.push((from, to));
                }
            }
        }
        let mut succ = vec![Vec::new(); nodes.len()];
        for (from, to) in edges {
            succ[from].push(to);
        }
        TransitionGraph { nodes, succ }
    }

    fn has_cycle(&self) -> bool {
        let mut color = vec![0u8; self.nodes.len()];
        for root in 0..self.nodes.len() {
            if color[root] != 0 {
                continue;
            }
            color[root] = 1;
            let mut stack = vec![(root, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (u, i) = *top;
                if i == self.succ[u].len() {
                    color[u] = 2;
                    stack.pop();
                    continue;
                }
                top.1 += 1;
                let v = self.succ[u][i];
                match color[v] {
                    0 => {
                        color[v] = 1;
                        stack.push((v, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            }
        }
        false
    }

    /// Shortest directed cycle, as the node sequence along it.
    fn shortest_cycle(&self) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        for root in 0..self.nodes.len() {
            let mut parent = vec![usize::MAX; self.nodes.len()];
            let mut seen = HashSet::new();
            let mut queue = VecDeque::from([root]);
            seen.insert(root);
            let mut closing = None;
            'bfs: while let Some(u) = queue.pop_front() {
                for &v in &self.succ[u] {
                    if v == root {
                        closing = Some(u);
                        break 'bfs;
                    }
                    if seen.insert(v) {
                        parent[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            if let Some(mut u) = closing {
                let mut cycle = vec![u];
                while u != root {
                    u = parent[u];
                    cycle.push(u);
                }
                cycle.reverse();
                if best.as_ref().map_or(true, |b| cycle.len() < b.len()) {
                    best = Some(cycle);
                }
            }
        }
        best
    }
}

fn band_preconditions(bq: &BoundQuiver) -> Result<()> {
    require_string(bq)?;
    if !bq.is_finite_dimensional() {
        return Err(Error::InfiniteDimensional);
    }
    Ok(())
}

pub fn band_exists(bq: &BoundQuiver) -> Result<bool> {
    band_preconditions(bq)?;
    Ok(TransitionGraph::build(bq).has_cycle())
}

/// A band read off a shortest cycle of the transition graph.
pub fn find_band(bq: &BoundQuiver) -> Result<Option<CyclicWalk>> {
    band_preconditions(bq)?;
    let graph = TransitionGraph::build(bq);
    Ok(graph.shortest_cycle().map(|cycle| {
        let letters = cycle.iter().map(|&i| graph.nodes[i].0).collect();
        CyclicWalk { letters }.primitive_root()
    }))
}

pub fn representation_type(bq: &BoundQuiver) -> Result<RepresentationType> {
    Ok(if band_exists(bq)? {
        RepresentationType::Infinite
    } else {
        RepresentationType::Finite
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_quiver;
    use crate::walk::parse_walk;

    fn a_to_b() -> BoundQuiver {
        parse_quiver("quiver\nvertices: 1 2\narrows:\n a: 1 -> 2\n").unwrap()
    }

    #[test]
    fn single_arrow_strings() {
        let bq = a_to_b();
        assert_eq!(enumerate_strings(&bq, 0).unwrap().len(), 2);
        let all = enumerate_strings(&bq, 1).unwrap();
        assert_eq!(all.len(), 3);
        assert_eq!(all[2].format(&bq), "a");
        assert_eq!(enumerate_strings(&bq, 5).unwrap().len(), 3);
    }

    #[test]
    fn single_arrow_is_representation_finite() {
        let bq = a_to_b();
        assert!(!band_exists(&bq).unwrap());
        assert_eq!(find_band(&bq).unwrap(), None);
        assert_eq!(
            representation_type(&bq).unwrap(),
            RepresentationType::Finite
        );
    }

    #[test]
    fn kronecker_has_a_band() {
        let bq = parse_quiver("quiver\nvertices: 1 2\narrows:\n a: 1 -> 2\n b: 1 -> 2\n").unwrap();
        let band = find_band(&bq).unwrap().unwrap();
        assert_eq!(band.len(), 2);
        assert!(validate_band(&bq, &band).unwrap().valid);
        assert!(!validate_band(&bq, &band.power(2)).unwrap().valid);
    }

    #[test]
    fn validation_reports_defects() {
        let bq = parse_quiver(
            "quiver\nvertices: 1 2 3\narrows:\n a: 1 -> 2\n b: 2 -> 3\nrelations:\n a b\n",
        )
        .unwrap();
        let ab = parse_walk(&bq, "a b").unwrap();
        let v = validate_string(&bq, &ab).unwrap();
        assert!(!v.valid);
        assert!(v.reason.unwrap().contains("relation"));

        let back = parse_walk(&bq, "a a^-1").unwrap();
        assert!(!validate_string(&bq, &back).unwrap().valid);

        let skew = Walk::from_letters(
            &bq,
            vec![
                Letter::fwd(bq.arrow("b").unwrap()),
                Letter::fwd(bq.arrow("a").unwrap()),
            ],
        )
        .unwrap();
        assert!(!validate_string(&bq, &skew).unwrap().valid);
    }

    #[test]
    fn non_string_pair_is_rejected() {
        let bq = parse_quiver(
            "quiver\nvertices: 1 2 3 4\narrows:\n a: 1 -> 2\n b: 2 -> 3\n c: 2 -> 4\n",
        )
        .unwrap();
        assert!(matches!(
            validate_string(&bq, &Walk::trivial(crate::Vertex(0))),
            Err(Error::NotStringPair(_))
        ));
        assert!(matches!(band_exists(&bq), Err(Error::NotStringPair(_))));
    }

    #[test]
    fn infinite_dimensional_blocks_band_detection() {
        let bq = parse_quiver("quiver\nvertices: 1\narrows:\n l: 1 -> 1\n").unwrap();
        assert_eq!(band_exists(&bq), Err(Error::InfiniteDimensional));
    }
}
