//! Exhaustive oracles for small graphs: OPT, L_D2 and betas.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSubset, Graph};
use crate::phi::{phi_exact_with_limit, DEFAULT_EXHAUSTIVE_LIMIT};

pub const DEFAULT_OPT_LIMIT: usize = 9;

/// Branch and bound over edge subsets of a fixed size `k`, deciding edges
/// in ascending order.
struct Search<'a> {
    g: &'a Graph,
    edges: Vec<Edge>,
    k: usize,
    /// Allowed total of `deg(v) - 2` over vertices with degree above 2.
    excess_budget: usize,
    need_connectivity: bool,
    deg: Vec<usize>,
    undecided: Vec<usize>,
    chosen: Vec<bool>,
    count: usize,
    excess: usize,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, k: usize, need_connectivity: bool) -> Self {
        let n = g.n();
        let edges = g.edge_vec();
        let undecided = (0..n).map(|v| g.degree(v)).collect();
        Search {
            g,
            chosen: vec![false; edges.len()],
            edges,
            k,
            excess_budget: 2 * k - 2 * n,
            need_connectivity,
            deg: vec![0; n],
            undecided,
            count: 0,
            excess: 0,
            nodes: 0,
        }
    }

    fn deficit(&self) -> usize {
        self.deg.iter().map(|&d| 2usize.saturating_sub(d)).sum()
    }

    fn leaf_ok(&self) -> bool {
        if self.deg.iter().any(|&d| d < 2) {
            return false;
        }
        if !self.need_connectivity {
            return true;
        }
        let picked = self
            .edges
            .iter()
            .zip(&self.chosen)
            .filter(|(_, &c)| c)
            .map(|(e, _)| e);
        self.g
            .spanning_subgraph(picked)
            .map(|h| h.is_two_connected())
            .unwrap_or(false)
    }

    fn run(&mut self, idx: usize) -> bool {
        self.nodes += 1;
        if self.count == self.k {
            return self.leaf_ok();
        }
        if idx == self.edges.len() || self.count + (self.edges.len() - idx) < self.k {
            return false;
        }
        if self.deficit() > 2 * (self.k - self.count) {
            return false;
        }
        let Edge(u, v) = self.edges[idx];
        self.undecided[u] -= 1;
        self.undecided[v] -= 1;
        // include
        let extra = usize::from(self.deg[u] >= 2) + usize::from(self.deg[v] >= 2);
        if self.excess + extra <= self.excess_budget {
            self.deg[u] += 1;
            self.deg[v] += 1;
            self.excess += extra;
            self.chosen[idx] = true;
            self.count += 1;
            if self.run(idx + 1) {
                return true;
            }
            self.count -= 1;
            self.chosen[idx] = false;
            self.excess -= extra;
            self.deg[u] -= 1;
            self.deg[v] -= 1;
        }
        // exclude
        if self.deg[u] + self.undecided[u] >= 2 && self.deg[v] + self.undecided[v] >= 2 && self.run(idx + 1) {
            return true;
        }
        self.undecided[u] += 1;
        self.undecided[v] += 1;
        false
    }

    fn picked(&self) -> Vec<Edge> {
        self.edges
            .iter()
            .zip(&self.chosen)
            .filter(|(_, &c)| c)
            .map(|(e, _)| *e)
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct OptResult {
    pub value: usize,
    pub witness: EdgeSubset,
    /// Search nodes visited, summed over all sizes tried.
    pub nodes: u64,
}

/// Minimum number of edges of a 2-connected spanning subgraph.
pub fn opt_exact(g: &Graph) -> Result<OptResult> {
    opt_exact_with_limit(g, DEFAULT_OPT_LIMIT)
}

pub fn opt_exact_with_limit(g: &Graph, limit: usize) -> Result<OptResult> {
    if g.n() > limit {
        return Err(Error::SizeLimit { n: g.n(), limit });
    }
    if let Some(why) = g.two_connectivity_witness() {
        return Err(Error::NotTwoConnected(why));
    }
    let mut lower = g.n();
    if g.n() <= DEFAULT_EXHAUSTIVE_LIMIT {
        lower = lower.max(g.n() - 1 + phi_exact_with_limit(g, DEFAULT_EXHAUSTIVE_LIMIT)?);
    }
    let mut nodes = 0;
    for k in lower..=g.m() {
        let mut s = Search::new(g, k, true);
        let found = s.run(0);
        nodes += s.nodes;
        if found {
            let witness = EdgeSubset::new(g, s.picked())?;
            return Ok(OptResult {
                value: k,
                witness,
                nodes,
            });
        }
    }
    Err(Error::Internal("a 2-connected graph is its own witness".into()))
}

/// Minimum number of edges of a spanning subgraph with all degrees at
/// least 2, with a witness.
pub fn l_d2_exact(g: &Graph, limit: usize) -> Result<(usize, Vec<Edge>)> {
    if g.n() > limit {
        return Err(Error::SizeLimit { n: g.n(), limit });
    }
    if (0..g.n()).any(|v| g.degree(v) < 2) {
        return Err(Error::Precondition("a vertex has degree below 2".into()));
    }
    for k in g.n()..=g.m() {
        let mut s = Search::new(g, k, false);
        if s.run(0) {
            let value = k;
            assert!(value >= g.n());
            return Ok((value, s.picked()));
        }
    }
    unreachable!("the whole edge set has all degrees at least 2")
}

/// `L_D2 = n` certified by a 2-regular spanning subgraph.
pub fn l_d2_from_two_factor(g: &Graph, edges: &[Edge]) -> Result<usize> {
    let h = g.spanning_subgraph(edges)?;
    if let Some(v) = (0..g.n()).find(|&v| h.degree(v) != 2) {
        return Err(Error::InvalidWitness(format!(
            "vertex {v} has degree {} in the claimed 2-factor",
            h.degree(v)
        )));
    }
    Ok(g.n())
}

/// Vertex sets of size at most 2 that form one of at least three
/// components of `G - {s, t}`, over all pairs `s < t`.
pub fn find_betas(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out = BTreeSet::new();
    let mut comp = vec![usize::MAX; n];
    for s in 0..n {
        for t in s + 1..n {
            comp.iter_mut().for_each(|c| *c = usize::MAX);
            let mut sets: Vec<Vec<usize>> = Vec::new();
            for start in 0..n {
                if start == s || start == t || comp[start] != usize::MAX {
                    continue;
                }
                let id = sets.len();
                let mut members = vec![start];
                comp[start] = id;
                let mut stack = vec![start];
                while let Some(u) = stack.pop() {
                    for &w in g.neighbors(u) {
                        if w != s && w != t && comp[w] == usize::MAX {
                            comp[w] = id;
                            members.push(w);
                            stack.push(w);
                        }
                    }
                }
                members.sort_unstable();
                sets.push(members);
            }
            if sets.len() >= 3 {
                out.extend(sets.into_iter().filter(|c| c.len() <= 2));
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut es = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                es.push((u, v));
            }
        }
        Graph::from_edges(n, es).unwrap()
    }

    #[test]
    fn opt_of_cycles_and_cliques() {
        for n in 3..9 {
            assert_eq!(opt_exact(&cycle(n)).unwrap().value, n);
        }
        for n in 3..8 {
            assert_eq!(opt_exact(&complete(n)).unwrap().value, n);
        }
    }

    #[test]
    fn opt_of_k23_needs_all_edges() {
        let g = Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let r = opt_exact(&g).unwrap();
        assert_eq!(r.value, 6);
        assert!(r.witness.to_graph(&g).is_two_connected());
    }

    #[test]
    fn opt_respects_limit() {
        assert!(matches!(opt_exact(&cycle(10)), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn l_d2_small() {
        assert_eq!(l_d2_exact(&cycle(6), 9).unwrap().0, 6);
        assert_eq!(l_d2_exact(&complete(4), 9).unwrap().0, 4);
        // two triangles sharing a vertex need all six edges
        let bowtie = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(l_d2_exact(&bowtie, 9).unwrap().0, 6);
        let c = cycle(5);
        assert_eq!(l_d2_from_two_factor(&c, &c.edge_vec()).unwrap(), 5);
    }

    #[test]
    fn betas() {
        assert!(find_betas(&complete(4)).is_empty());
        // K_{2,3}: removing the two hubs leaves three singletons
        let g = Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(find_betas(&g), vec![vec![2], vec![3], vec![4]]);
    }
}
