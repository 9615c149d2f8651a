//! Local search for open ear-decompositions with few even ears.
//!
//! Ears are grown by randomized depth-first search from a covered vertex
//! through uncovered ones; the search stack is always a simple path, and
//! every stack whose top sees another covered vertex is a candidate ear.
//! Improvement is ruin-and-recreate: keep a random prefix of the nontrivial
//! ears and regrow the rest.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ear::{compute_open_ed, count_even_ears, validate, Ear, EarDecomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::phi::append_trivial;

#[derive(Clone, Debug)]
pub struct HeuristicConfig {
    pub seed: u64,
    pub restarts: usize,
    pub rounds: usize,
    /// Start vertices tried per ear.
    pub starts_per_ear: usize,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig {
            seed: 0,
            restarts: 4,
            rounds: 120,
            starts_per_ear: 3,
        }
    }
}

/// Lexicographic objective: even ears, then nontrivial ears.
fn score(ed: &EarDecomposition) -> (usize, usize) {
    (count_even_ears(ed), ed.nontrivial_count())
}

pub fn minimize(g: &Graph, cfg: &HeuristicConfig) -> Result<EarDecomposition> {
    let mut best = compute_open_ed(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.restarts {
        let cand = grow(g, &[], None, cfg, &mut rng);
        if score(&cand) < score(&best) {
            best = cand;
        }
    }
    for _ in 0..cfg.rounds {
        let nt = best.nontrivial_count();
        let keep = rng.gen_range(0..nt.max(1));
        let prefix: Vec<Ear> = best.ears[..keep].to_vec();
        let base = (keep > 0).then_some(best.base);
        let cand = grow(g, &prefix, base, cfg, &mut rng);
        if score(&cand) <= score(&best) {
            best = cand;
        }
    }
    validate(&best, g).map_err(|v| Error::Internal(format!("heuristic: {v}")))?;
    Ok(best)
}

struct Frame {
    v: usize,
    order: Vec<usize>,
    next: usize,
}

/// Completes `prefix` (nontrivial ears of a valid open prefix) to a full
/// open decomposition.
pub(crate) fn grow(
    g: &Graph,
    prefix: &[Ear],
    base: Option<usize>,
    cfg: &HeuristicConfig,
    rng: &mut ChaCha8Rng,
) -> EarDecomposition {
    let n = g.n();
    let mut covered = vec![false; n];
    let mut ears: Vec<Ear> = prefix.to_vec();
    let base = match base {
        Some(b) => b,
        None => rng.gen_range(0..n),
    };
    covered[base] = true;
    for e in &ears {
        for &v in e.inner() {
            covered[v] = true;
        }
    }
    let mut remaining = covered.iter().filter(|c| !**c).count();
    let mut seen = vec![0u32; n];
    let mut stamp = 0u32;
    while remaining > 0 {
        let frontier: Vec<usize> = (0..n)
            .filter(|&c| covered[c] && g.neighbors(c).iter().any(|&u| !covered[u]))
            .collect();
        let mut best: Option<((bool, usize), Vec<usize>)> = None;
        let tries = cfg.starts_per_ear.max(1);
        for _ in 0..tries {
            let c = *frontier.choose(rng).expect("2-connected graph has a frontier");
            stamp += 1;
            if let Some(cand) = search_from(g, &covered, c, ears.is_empty(), &mut seen, stamp, rng) {
                if best.as_ref().is_none_or(|(s, _)| cand.0 > *s) {
                    best = Some(cand);
                }
            }
        }
        let (_, path) = best.expect("an ear always exists in a 2-connected graph");
        for &v in &path[1..path.len() - 1] {
            covered[v] = true;
            remaining -= 1;
        }
        ears.push(Ear::new(path));
    }
    append_trivial(g, base, ears)
}

/// One randomized DFS from `c`. Returns the best candidate ear by
/// (odd, length).
fn search_from(
    g: &Graph,
    covered: &[bool],
    c: usize,
    closed: bool,
    seen: &mut [u32],
    stamp: u32,
    rng: &mut ChaCha8Rng,
) -> Option<((bool, usize), Vec<usize>)> {
    let shuffled = |v: usize, rng: &mut ChaCha8Rng| {
        let mut o: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| !covered[u]).collect();
        o.shuffle(rng);
        o
    };
    // half the searches prefer short ears
    let greedy_long = rng.gen_bool(0.5);
    let mut best: Option<((bool, usize), Vec<usize>)> = None;
    let mut best_key = None;
    let mut stack = vec![Frame {
        v: c,
        order: shuffled(c, rng),
        next: 0,
    }];
    seen[c] = stamp;
    while let Some(top) = stack.last_mut() {
        if top.next == top.order.len() {
            stack.pop();
            continue;
        }
        let x = top.order[top.next];
        top.next += 1;
        if seen[x] == stamp {
            continue;
        }
        seen[x] = stamp;
        stack.push(Frame {
            v: x,
            order: shuffled(x, rng),
            next: 0,
        });
        let inner = stack.len() - 1;
        let ends: Vec<usize> = g
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&d| covered[d] && (if closed { d == c && inner >= 2 } else { d != c }))
            .collect();
        if ends.is_empty() {
            continue;
        }
        let odd = (inner + 1) % 2 == 1;
        let key = (odd, if greedy_long { inner } else { usize::MAX - inner });
        if best_key.is_none_or(|k| key > k) {
            best_key = Some(key);
            let mut path: Vec<usize> = stack.iter().map(|f| f.v).collect();
            path.push(*ends.choose(rng).expect("nonempty"));
            best = Some(((odd, inner), path));
        }
    }
    best
}
