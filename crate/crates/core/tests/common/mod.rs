//! Shared fixtures and independent oracles for the integration tests.
//!
//! The oracles here only read the quiver's arrows and relation list. They do
//! not call the library's automata, string code or band search.

#![allow(dead_code)]

use sag_core::gen::{gen_random_sag, gen_random_string, RandomSagSpec};
use sag_core::{parse_quiver, Arrow, BoundQuiver, Letter, Vertex, Walk};

pub const FIG1: &str = include_str!("../../../../fixtures/fig1.quiver");
pub const FIG4: &str = include_str!("../../../../fixtures/fig4.expected");
pub const FIG5: &str = include_str!("../../../../fixtures/fig5.quiver");
pub const FIG6: &str = include_str!("../../../../fixtures/fig6.expected");

pub fn fig1() -> BoundQuiver {
    parse_quiver(FIG1).unwrap()
}

pub fn fig5() -> BoundQuiver {
    parse_quiver(FIG5).unwrap()
}

pub fn sag(seed: u64) -> BoundQuiver {
    gen_random_sag(&RandomSagSpec::new(seed, 6, 9, 0.3)).unwrap()
}

pub fn string_pair(seed: u64) -> BoundQuiver {
    gen_random_string(&RandomSagSpec::new(seed, 6, 9, 0.25), 2).unwrap()
}

/// Arrow ids, so relation lists can be compared as text.
pub fn relation_strings(bq: &BoundQuiver) -> Vec<String> {
    let mut out: Vec<String> = bq
        .relations()
        .iter()
        .map(|r| {
            r.iter()
                .map(|&a| bq.arrow_name(a))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Naive ideal membership.

/// Does some relation occur as a contiguous factor of `path`?
pub fn naive_in_ideal(bq: &BoundQuiver, path: &[Arrow]) -> bool {
    bq.relations()
        .iter()
        .any(|r| r.len() <= path.len() && path.windows(r.len()).any(|w| w == r.as_slice()))
}

/// Relation-free paths leaving `v`, trivial path first. Assumes finite dimension.
pub fn naive_paths_from(bq: &BoundQuiver, v: Vertex) -> Vec<Vec<Arrow>> {
    let mut out = vec![Vec::new()];
    let mut stack = vec![Vec::new()];
    while let Some(p) = stack.pop() {
        let at = p.last().map_or(v, |&a: &Arrow| bq.target(a));
        for &a in bq.out_arrows(at) {
            let mut q = p.clone();
            q.push(a);
            if !naive_in_ideal(bq, &q) {
                out.push(q.clone());
                stack.push(q);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Representations with 0/1 structure maps and hom spaces over GF(p).

/// A representation whose basis vectors are sent to basis vectors or zero.
#[derive(Debug, Clone)]
pub struct Rep {
    pub vertex_of: Vec<Vertex>,
    /// `action[a]` lists `(i, j)` with `e_i · a = e_j`.
    pub action: Vec<Vec<(usize, usize)>>,
}

impl Rep {
    pub fn dim(&self) -> usize {
        self.vertex_of.len()
    }

    /// The right module `start·A` for a nonzero path `start` (empty = `e_v`).
    pub fn from_paths(bq: &BoundQuiver, v: Vertex, start: &[Arrow]) -> Rep {
        let tail_vertex = start.last().map_or(v, |&a| bq.target(a));
        let mut basis: Vec<Vec<Arrow>> = naive_paths_from(bq, tail_vertex)
            .into_iter()
            .map(|p| start.iter().copied().chain(p).collect::<Vec<_>>())
            .filter(|p| !naive_in_ideal(bq, p))
            .collect();
        basis.sort();
        let vertex_of = basis
            .iter()
            .map(|p| p.last().map_or(v, |&a| bq.target(a)))
            .collect();
        let mut action = vec![Vec::new(); bq.num_arrows()];
        for (i, p) in basis.iter().enumerate() {
            for a in bq.arrows() {
                let mut q = p.clone();
                q.push(a);
                if let Some(j) = basis.iter().position(|b| *b == q) {
                    action[a.0].push((i, j));
                }
            }
        }
        Rep { vertex_of, action }
    }

    /// The string module of `w`: one basis vector per vertex position.
    pub fn from_string(bq: &BoundQuiver, w: &Walk) -> Rep {
        let vertex_of = (0..=w.len()).map(|i| w.vertex_at(bq, i)).collect();
        let mut action = vec![Vec::new(); bq.num_arrows()];
        for (i, l) in w.letters.iter().enumerate() {
            if l.is_fwd() {
                action[l.arrow.0].push((i, i + 1));
            } else {
                action[l.arrow.0].push((i + 1, i));
            }
        }
        Rep { vertex_of, action }
    }
}

const P: i64 = 1_000_000_007;

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn rank_mod_p(mut rows: Vec<Vec<i64>>, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][c], P - 2);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % P;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in 0..cols {
                    rows[r][k] = ((rows[r][k] - f * rows[rank][k]) % P + P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim Hom(m, n)` as the nullity of the commutativity equations.
pub fn hom_dim_linear(bq: &BoundQuiver, m: &Rep, n: &Rep) -> usize {
    let mut var = vec![vec![None; n.dim()]; m.dim()];
    let mut count = 0;
    for i in 0..m.dim() {
        for k in 0..n.dim() {
            if m.vertex_of[i] == n.vertex_of[k] {
                var[i][k] = Some(count);
                count += 1;
            }
        }
    }
    if count == 0 {
        return 0;
    }
    let mut rows = Vec::new();
    for a in bq.arrows() {
        let (s, t) = (bq.source(a), bq.target(a));
        for i in (0..m.dim()).filter(|&i| m.vertex_of[i] == s) {
            let image = m.action[a.0]
                .iter()
                .find(|&&(x, _)| x == i)
                .map(|&(_, j)| j);
            for k in (0..n.dim()).filter(|&k| n.vertex_of[k] == t) {
                // f(e_i · a) = f(e_i) · a, coordinate k
                let mut row = vec![0i64; count];
                if let Some(j) = image {
                    row[var[j][k].expect("same vertex")] += 1;
                }
                for &(l, kk) in &n.action[a.0] {
                    if kk == k {
                        if let Some(x) = var[i][l] {
                            row[x] -= 1;
                        }
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row.into_iter().map(|x| (x % P + P) % P).collect());
                }
            }
        }
    }
    count - rank_mod_p(rows, count)
}

/// `dim End(A ⊕ ⊕_{α∈R} αA)` with every summand built from paths.
pub fn endo_dim_linear(bq: &BoundQuiver, index: &[Arrow]) -> usize {
    let mut summands: Vec<Rep> = bq.vertices().map(|v| Rep::from_paths(bq, v, &[])).collect();
    for &a in index {
        summands.push(Rep::from_paths(bq, bq.source(a), &[a]));
    }
    let mut total = 0;
    for x in &summands {
        for y in &summands {
            total += hom_dim_linear(bq, x, y);
        }
    }
    total
}

// ---------------------------------------------------------------------------
// Naive walk checks.

pub fn letters(bq: &BoundQuiver) -> Vec<Letter> {
    bq.arrows()
        .flat_map(|a| [Letter::fwd(a), Letter::inv(a)])
        .collect()
}

fn naive_run_ok(bq: &BoundQuiver, run: &[Letter]) -> bool {
    let mut path: Vec<Arrow> = run.iter().map(|l| l.arrow).collect();
    if !run[0].is_fwd() {
        path.reverse();
    }
    !naive_in_ideal(bq, &path)
}

/// Composable, reduced, and every maximal same-direction run relation free.
pub fn naive_is_string(bq: &BoundQuiver, ls: &[Letter]) -> bool {
    for w in ls.windows(2) {
        if w[0].target(bq) != w[1].source(bq) || w[1] == w[0].inverse() {
            return false;
        }
    }
    let mut i = 0;
    while i < ls.len() {
        let mut j = i + 1;
        while j < ls.len() && ls[j].dir == ls[i].dir {
            j += 1;
        }
        if !naive_run_ok(bq, &ls[i..j]) {
            return false;
        }
        i = j;
    }
    true
}

/// Closed walk whose every power is locally a string.
pub fn naive_is_cyclic_string(bq: &BoundQuiver, ls: &[Letter]) -> bool {
    let n = ls.len();
    if n == 0 || ls[n - 1].target(bq) != ls[0].source(bq) {
        return false;
    }
    let reps = bq.relations().iter().map(Vec::len).max().unwrap_or(2) / n + 3;
    let unrolled: Vec<Letter> = ls.iter().copied().cycle().take(n * reps).collect();
    naive_is_string(bq, &unrolled)
}

/// Search all closed walks with at most `max_len` letters for one that is a
/// cyclic string. Prefixes that already fail as strings are pruned.
pub fn brute_force_band(bq: &BoundQuiver, max_len: usize) -> Option<Vec<Letter>> {
    fn go(
        bq: &BoundQuiver,
        cur: &mut Vec<Letter>,
        all: &[Letter],
        max_len: usize,
    ) -> Option<Vec<Letter>> {
        if naive_is_cyclic_string(bq, cur) {
            return Some(cur.clone());
        }
        if cur.len() == max_len {
            return None;
        }
        for &l in all {
            if l < cur[0] {
                // the rotation starting at the smallest letter is searched elsewhere
                continue;
            }
            cur.push(l);
            if naive_is_string(bq, cur) {
                if let Some(found) = go(bq, cur, all, max_len) {
                    return Some(found);
                }
            }
            cur.pop();
        }
        None
    }
    let all = letters(bq);
    for &first in &all {
        let mut cur = vec![first];
        if let Some(found) = go(bq, &mut cur, &all, max_len) {
            return Some(found);
        }
    }
    None
}

/// Every closed walk with at most `max_len` letters that is a cyclic string,
/// one per rotation class, starting at its smallest letter.
pub fn all_cyclic_strings(bq: &BoundQuiver, max_len: usize) -> Vec<Vec<Letter>> {
    fn go(
        bq: &BoundQuiver,
        cur: &mut Vec<Letter>,
        all: &[Letter],
        max_len: usize,
        out: &mut Vec<Vec<Letter>>,
    ) {
        if naive_is_cyclic_string(bq, cur) {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for &l in all {
            if l < cur[0] {
                continue;
            }
            cur.push(l);
            if naive_is_string(bq, cur) {
                go(bq, cur, all, max_len, out);
            }
            cur.pop();
        }
    }
    let all = letters(bq);
    let mut out = Vec::new();
    for &first in &all {
        go(bq, &mut vec![first], &all, max_len, &mut out);
    }
    out
}
