//! Even-ear minimization.
//!
//! The exact oracle is a dynamic program over covered-vertex sets. Every
//! edge of a nontrivial ear touches one of that ear's new inner vertices,
//! and unused edges become trivial ears at the end, so the set of covered
//! vertices is the whole state.

use std::collections::HashSet;

use crate::ear::{validate_with, Ear, EarDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::heuristic::{self, HeuristicConfig};

pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 12;
/// Hard cap for the bitmask tables.
pub const MAX_EXHAUSTIVE: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Heuristic,
}

impl std::str::FromStr for Backend {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exact" => Ok(Backend::Exact),
            "heuristic" => Ok(Backend::Heuristic),
            other => Err(format!("unknown backend `{other}`")),
        }
    }
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Heuristic => "heuristic",
        })
    }
}

struct BitGraph {
    n: usize,
    nb: Vec<u32>,
}

impl BitGraph {
    fn new(g: &Graph) -> Self {
        let nb = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &u| acc | 1 << u))
            .collect();
        BitGraph { n: g.n(), nb }
    }

    fn full(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }
}

fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

/// Which ends a path `c, S..., x` may close at.
#[derive(Clone, Copy)]
struct EndRule {
    covered: u32,
    /// Endpoints may not lie here.
    forbidden: u32,
    allow_closed: bool,
}

impl EndRule {
    /// Valid second endpoints for a path ending at `x` with `size` inner
    /// vertices, starting at `c`. Bit `c` set means a closed ear.
    fn ends(&self, bg: &BitGraph, c: usize, x: usize, size: u32) -> u32 {
        let single = self.covered.count_ones() == 1;
        let mut out = 0;
        if !single {
            out |= bg.nb[x] & self.covered & !self.forbidden & !(1 << c);
        }
        if (single || self.allow_closed) && size >= 2 && bg.nb[x] & (1 << c) != 0 {
            out |= 1 << c;
        }
        out
    }
}

/// Fills `table[S]` with the set of last vertices `x` such that a simple
/// path `c, s1, ..., x` visits exactly `S` (a subset of the uncovered
/// vertices).
fn path_table(bg: &BitGraph, covered: u32, c: usize, table: &mut [u32]) {
    let u = bg.full() & !covered;
    let mut s = 0u32;
    loop {
        table[s as usize] = 0;
        s = s.wrapping_sub(u) & u;
        if s == 0 {
            break;
        }
    }
    for x in bits(bg.nb[c] & u) {
        table[1 << x] |= 1 << x;
    }
    let mut s = 0u32;
    loop {
        s = s.wrapping_sub(u) & u;
        if s == 0 {
            break;
        }
        let ends = table[s as usize];
        for x in bits(ends) {
            for y in bits(bg.nb[x] & u & !s) {
                table[(s | 1 << y) as usize] |= 1 << y;
            }
        }
    }
}

fn trace_path(bg: &BitGraph, table: &[u32], c: usize, set: u32, x: usize) -> Vec<usize> {
    let mut rev = vec![x];
    let mut rem = set;
    let mut cur = x;
    while rem != 1 << cur {
        rem ^= 1 << cur;
        let prev = bits(table[rem as usize] & bg.nb[cur])
            .next()
            .expect("path table is consistent");
        rev.push(prev);
        cur = prev;
    }
    rev.push(c);
    rev.reverse();
    rev
}

fn check_size(g: &Graph, limit: usize) -> Result<()> {
    let limit = limit.min(MAX_EXHAUSTIVE);
    if g.n() > limit {
        return Err(Error::SizeLimit { n: g.n(), limit });
    }
    if let Some(why) = g.two_connectivity_witness() {
        return Err(Error::NotTwoConnected(why));
    }
    Ok(())
}

#[derive(Clone, Copy)]
struct Parent {
    prev: u32,
    c: u8,
    x: u8,
    d: u8,
}

/// Minimum even-ear decomposition by dynamic programming.
fn exact_dp(g: &Graph, allow_closed: bool) -> EarDecomposition {
    let bg = BitGraph::new(g);
    let n = bg.n;
    let full = bg.full();
    let size = 1usize << n;
    let mut dist = vec![u8::MAX; size];
    let mut parent: Vec<Option<Parent>> = vec![None; size];
    let mut table = vec![0u32; size];
    for b in 0..n {
        dist[1 << b] = 0;
    }
    for cov in 1..full {
        let here = dist[cov as usize];
        if here == u8::MAX {
            continue;
        }
        let rule = EndRule {
            covered: cov,
            forbidden: 0,
            allow_closed,
        };
        for c in bits(cov) {
            path_table(&bg, cov, c, &mut table);
            let u = full & !cov;
            let mut s = 0u32;
            loop {
                s = s.wrapping_sub(u) & u;
                if s == 0 {
                    break;
                }
                let k = s.count_ones();
                let cost = here + u8::from((k + 1).is_multiple_of(2));
                let next = (cov | s) as usize;
                if cost >= dist[next] {
                    continue;
                }
                let pick = bits(table[s as usize]).find_map(|x| {
                    let ends = rule.ends(&bg, c, x, k);
                    // prefer an open ear when one exists
                    let open = ends & !(1 << c);
                    let d = if open != 0 { open } else { ends };
                    (d != 0).then(|| (x, d.trailing_zeros() as usize))
                });
                if let Some((x, d)) = pick {
                    dist[next] = cost;
                    parent[next] = Some(Parent {
                        prev: cov,
                        c: c as u8,
                        x: x as u8,
                        d: d as u8,
                    });
                }
            }
        }
    }
    // reconstruct
    let mut ears = Vec::new();
    let mut cur = full;
    while let Some(p) = parent[cur as usize] {
        path_table(&bg, p.prev, p.c as usize, &mut table);
        let set = cur & !p.prev;
        let mut path = trace_path(&bg, &table, p.c as usize, set, p.x as usize);
        path.push(p.d as usize);
        ears.push(Ear::new(path));
        cur = p.prev;
    }
    debug_assert_eq!(cur.count_ones(), 1);
    let base = cur.trailing_zeros() as usize;
    ears.reverse();
    append_trivial(g, base, ears)
}

/// Completes nontrivial ears with the unused edges as trivial ears.
pub(crate) fn append_trivial(g: &Graph, base: usize, mut ears: Vec<Ear>) -> EarDecomposition {
    let used: HashSet<Edge> = ears.iter().flat_map(|e| e.edges()).collect();
    ears.extend(g.edges().filter(|e| !used.contains(e)).map(Ear::trivial));
    EarDecomposition::new(base, ears)
}

/// φ(G): the minimum number of even ears over all ear-decompositions.
pub fn phi_exact(g: &Graph) -> Result<usize> {
    phi_exact_with_limit(g, DEFAULT_EXHAUSTIVE_LIMIT)
}

pub fn phi_exact_with_limit(g: &Graph, limit: usize) -> Result<usize> {
    check_size(g, limit)?;
    let ed = exact_dp(g, true);
    validate_with(&ed, g, false).map_err(|v| Error::Internal(v.to_string()))?;
    Ok(crate::ear::count_even_ears(&ed))
}

/// Open decomposition with the fewest even ears among open ones.
pub fn exact_open_decomposition(g: &Graph, limit: usize) -> Result<EarDecomposition> {
    check_size(g, limit)?;
    let ed = exact_dp(g, false);
    crate::ear::validate(&ed, g).map_err(|v| Error::Internal(v.to_string()))?;
    Ok(ed)
}

pub fn minimize_even_ears(g: &Graph, backend: Backend) -> Result<EarDecomposition> {
    match backend {
        Backend::Exact => exact_open_decomposition(g, DEFAULT_EXHAUSTIVE_LIMIT),
        Backend::Heuristic => heuristic::minimize(g, &HeuristicConfig::default()),
    }
}

/// Searches all ear-decompositions for one with no even ear in which
/// every 3-ear is pendant. Only the first ear is closed unless
/// `allow_closed` is set.
pub fn odd_decomposition_with_pendant_triples(
    g: &Graph,
    limit: usize,
    allow_closed: bool,
) -> Result<Option<EarDecomposition>> {
    check_size(g, limit)?;
    let bg = BitGraph::new(g);
    let mut failed = HashSet::new();
    let mut table = vec![0u32; 1 << bg.n];
    for b in 0..bg.n {
        let mut ears = Vec::new();
        if pendant_search(&bg, 1 << b, 0, allow_closed, &mut failed, &mut table, &mut ears) {
            return Ok(Some(append_trivial(g, b, ears)));
        }
    }
    Ok(None)
}

fn pendant_search(
    bg: &BitGraph,
    cov: u32,
    forbidden: u32,
    allow_closed: bool,
    failed: &mut HashSet<(u32, u32)>,
    table: &mut Vec<u32>,
    ears: &mut Vec<Ear>,
) -> bool {
    if cov == bg.full() {
        return true;
    }
    if failed.contains(&(cov, forbidden)) {
        return false;
    }
    let rule = EndRule {
        covered: cov,
        forbidden,
        allow_closed,
    };
    let u = bg.full() & !cov;
    for c in bits(cov & !forbidden) {
        path_table(bg, cov, c, table);
        let mut moves = Vec::new();
        let mut s = 0u32;
        loop {
            s = s.wrapping_sub(u) & u;
            if s == 0 {
                break;
            }
            let k = s.count_ones();
            if (k + 1).is_multiple_of(2) {
                continue;
            }
            for x in bits(table[s as usize]) {
                if let Some(d) = bits(rule.ends(bg, c, x, k)).next() {
                    moves.push((s, x, d));
                }
            }
        }
        for (s, x, d) in moves {
            // the table is clobbered by recursion
            path_table(bg, cov, c, table);
            let mut path = trace_path(bg, table, c, s, x);
            path.push(d);
            let f = if s.count_ones() == 2 { forbidden | s } else { forbidden };
            ears.push(Ear::new(path));
            if pendant_search(bg, cov | s, f, allow_closed, failed, table, ears) {
                return true;
            }
            ears.pop();
        }
    }
    failed.insert((cov, forbidden));
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ear::{count_even_ears, validate};

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn cycles() {
        assert_eq!(phi_exact(&cycle(5)).unwrap(), 0);
        assert_eq!(phi_exact(&cycle(4)).unwrap(), 1);
        assert_eq!(phi_exact(&cycle(3)).unwrap(), 0);
        let ed = minimize_even_ears(&cycle(5), Backend::Exact).unwrap();
        assert_eq!(ed.ears.len(), 1);
        assert!(ed.ears[0].is_closed());
        assert_eq!(count_even_ears(&ed), 0);
    }

    #[test]
    fn k4_and_k33() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        // the last vertex needs a 2-ear unless the first ear is a 4-cycle
        assert_eq!(phi_exact(&k4).unwrap(), 1);
        let k33 = Graph::from_edges(
            6,
            [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        // bipartite: every cycle is even, and so is every open ear with
        // both ends on the same side
        let ed = minimize_even_ears(&k33, Backend::Exact).unwrap();
        validate(&ed, &k33).unwrap();
        assert_eq!(count_even_ears(&ed), phi_exact(&k33).unwrap());
    }

    #[test]
    fn size_limit_is_enforced() {
        assert!(matches!(phi_exact(&cycle(13)), Err(Error::SizeLimit { n: 13, limit: 12 })));
        assert_eq!(phi_exact_with_limit(&cycle(13), 13).unwrap(), 0);
    }
}
