//! Seeded random bound quivers for property suites.
//!
//! Arrows are placed so that no vertex has more than two arrows in or out.
//! Relations of length two are drawn at the requested density and then added
//! where needed so that every arrow has at most one relation-free
//! continuation on each side. Candidates with a relation-free oriented cycle
//! are rejected and redrawn.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quiver::{ArrowSpec, BoundQuiver, QuiverSpec};

const REJECTION_BUDGET: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomSagSpec {
    pub seed: u64,
    /// Upper bound; the actual count is drawn from `1 ..= num_vertices`.
    pub num_vertices: usize,
    /// Upper bound; the actual count is drawn from `0 ..= num_arrows` and
    /// capped by what the degree bound allows.
    pub num_arrows: usize,
    pub relation_density: f64,
}

impl RandomSagSpec {
    pub fn new(seed: u64, num_vertices: usize, num_arrows: usize, relation_density: f64) -> Self {
        RandomSagSpec {
            seed,
            num_vertices,
            num_arrows,
            relation_density,
        }
    }
}

fn draw_arrows(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<(usize, usize)> {
    let mut out_deg = vec![0usize; n];
    let mut in_deg = vec![0usize; n];
    let mut arrows = Vec::new();
    for _ in 0..m {
        let sources: Vec<usize> = (0..n).filter(|&v| out_deg[v] < 2).collect();
        let targets: Vec<usize> = (0..n).filter(|&v| in_deg[v] < 2).collect();
        let (Some(&s), Some(&t)) = (sources.choose(rng), targets.choose(rng)) else {
            break;
        };
        out_deg[s] += 1;
        in_deg[t] += 1;
        arrows.push((s, t));
    }
    arrows
}

/// Length-two relations: random ones first, then whatever (S2) demands.
fn draw_relations(
    rng: &mut ChaCha8Rng,
    arrows: &[(usize, usize)],
    density: f64,
) -> Vec<(usize, usize)> {
    let m = arrows.len();
    let mut rel = vec![vec![false; m]; m];
    for a in 0..m {
        for b in 0..m {
            if arrows[a].1 == arrows[b].0 && rng.gen_bool(density.clamp(0.0, 1.0)) {
                rel[a][b] = true;
            }
        }
    }
    // Right side: keep at most one free successor per arrow.
    for a in 0..m {
        let mut free: Vec<usize> = (0..m)
            .filter(|&b| arrows[a].1 == arrows[b].0 && !rel[a][b])
            .collect();
        free.shuffle(rng);
        for &b in free.iter().skip(1) {
            rel[a][b] = true;
        }
    }
    // Left side: adding relations never creates new free pairs, so this
    // keeps the right side intact.
    for b in 0..m {
        let mut free: Vec<usize> = (0..m)
            .filter(|&a| arrows[a].1 == arrows[b].0 && !rel[a][b])
            .collect();
        free.shuffle(rng);
        for &a in free.iter().skip(1) {
            rel[a][b] = true;
        }
    }
    let mut out = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if rel[a][b] {
                out.push((a, b));
            }
        }
    }
    out
}

fn assemble(n: usize, arrows: &[(usize, usize)], relations: Vec<Vec<usize>>) -> QuiverSpec {
    QuiverSpec {
        vertices: (1..=n).map(|i| i.to_string()).collect(),
        arrows: arrows
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| {
                ArrowSpec::new(
                    format!("a{}", i + 1),
                    (s + 1).to_string(),
                    (t + 1).to_string(),
                )
            })
            .collect(),
        relations: relations
            .into_iter()
            .map(|r| r.into_iter().map(|i| format!("a{}", i + 1)).collect())
            .collect(),
    }
}

fn generate(spec: &RandomSagSpec, long_relations: usize) -> Result<BoundQuiver> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..REJECTION_BUDGET {
        let n = rng.gen_range(1..=spec.num_vertices.max(1));
        let m = rng.gen_range(0..=spec.num_arrows);
        let arrows = draw_arrows(&mut rng, n, m);
        let mut relations: Vec<Vec<usize>> =
            draw_relations(&mut rng, &arrows, spec.relation_density)
                .into_iter()
                .map(|(a, b)| vec![a, b])
                .collect();

        // Optional length-three relations over relation-free composable pairs.
        let mut candidates = Vec::new();
        for a in 0..arrows.len() {
            for b in 0..arrows.len() {
                for c in 0..arrows.len() {
                    let composable = arrows[a].1 == arrows[b].0 && arrows[b].1 == arrows[c].0;
                    let has = |x: usize, y: usize| relations.iter().any(|r| r == &vec![x, y]);
                    if composable && !has(a, b) && !has(b, c) {
                        candidates.push(vec![a, b, c]);
                    }
                }
            }
        }
        candidates.shuffle(&mut rng);
        relations.extend(candidates.into_iter().take(long_relations));

        let bq = BoundQuiver::from_spec(&assemble(n, &arrows, relations))
            .expect("generated quivers are well formed");
        if bq.is_finite_dimensional() {
            return Ok(bq);
        }
    }
    Err(Error::GenerationExhausted(REJECTION_BUDGET))
}

/// A finite-dimensional SAG bound quiver, a pure function of `spec`.
pub fn gen_random_sag(spec: &RandomSagSpec) -> Result<BoundQuiver> {
    generate(spec, 0)
}

/// Like [`gen_random_sag`] but with up to `long_relations` extra relations of
/// length three, so the result is a string pair that need not be SAG.
pub fn gen_random_string(spec: &RandomSagSpec, long_relations: usize) -> Result<BoundQuiver> {
    generate(spec, long_relations)
}
