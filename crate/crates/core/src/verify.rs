//! Independent checks of solver output. Connectivity here is tested by
//! plain searches with one vertex or edge removed, not by the lowpoint
//! routines the solver uses.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::ear::{count_even_ears, validate, EarDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::phi::phi_exact_with_limit;
use crate::redundancy::check_property_p;
use crate::restructure::check_e;

/// Number of components reached from scratch, skipping `skip_v` and the
/// edge `skip_e`.
fn components(n: usize, adj: &[Vec<usize>], skip_v: Option<usize>, skip_e: Option<Edge>) -> usize {
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] || Some(s) == skip_v {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if seen[w] || Some(w) == skip_v || Some(Edge::new(u, w)) == skip_e {
                    continue;
                }
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgraphCheck {
    pub edges: usize,
    pub connected: bool,
    pub two_connected: bool,
    pub two_edge_connected: bool,
    /// First obstruction to 2-connectivity.
    pub problem: Option<String>,
}

impl SubgraphCheck {
    pub fn ok(&self) -> bool {
        self.two_connected
    }
}

/// Checks that `edges` form a 2-connected spanning subgraph of `g`. Edges
/// outside `g` and repeated edges are input errors.
pub fn verify_subgraph(g: &Graph, edges: &[Edge]) -> Result<SubgraphCheck> {
    let n = g.n();
    let mut set = BTreeSet::new();
    let mut adj = vec![Vec::new(); n];
    for &e in edges {
        if e.0 >= n || e.1 >= n || !g.has_edge(e.0, e.1) {
            return Err(Error::UnknownEdge(e));
        }
        if !set.insert(e) {
            return Err(Error::ParallelEdge(e));
        }
        adj[e.0].push(e.1);
        adj[e.1].push(e.0);
    }
    let connected = n > 0 && components(n, &adj, None, None) == 1;
    let mut problem = None;
    if !connected {
        problem = Some("disconnected".to_string());
    } else if n < 3 {
        problem = Some("fewer than 3 vertices".to_string());
    } else if let Some(v) = (0..n).find(|&v| components(n, &adj, Some(v), None) > 1) {
        problem = Some(format!("cut vertex {v}"));
    }
    let two_edge_connected = connected && n >= 2 && set.iter().all(|&e| components(n, &adj, None, Some(e)) == 1);
    Ok(SubgraphCheck {
        edges: set.len(),
        connected,
        two_connected: problem.is_none(),
        two_edge_connected,
        problem,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionCheck {
    pub problems: Vec<String>,
    /// Whether (E1) was compared against the exact minimum.
    pub e1_checked: bool,
}

impl DecompositionCheck {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Validates `ed` on `g` and checks (E1)-(E7) and property (P) of `g`.
/// (E1) is only checked when `g` has at most `phi_limit` vertices, or when
/// the even ears are forced by parity.
pub fn verify_decomposition(g: &Graph, ed: &EarDecomposition, phi_limit: usize) -> Result<DecompositionCheck> {
    let mut problems = Vec::new();
    if let Err(v) = validate(ed, g) {
        problems.push(v.to_string());
        return Ok(DecompositionCheck {
            problems,
            e1_checked: false,
        });
    }
    let even = count_even_ears(ed);
    let reference = if even == 0 || (even == 1 && g.n().is_multiple_of(2)) {
        Some(even)
    } else if g.n() <= phi_limit {
        Some(phi_exact_with_limit(g, phi_limit)?)
    } else {
        None
    };
    for which in 1..=7u8 {
        if which == 1 && reference.is_none() {
            continue;
        }
        if let Some(site) = check_e(ed, g, which, reference.unwrap_or(0))? {
            problems.push(site.to_string());
        }
    }
    if let Some(w) = check_property_p(g)? {
        problems.push(format!("property (P) fails at {w}"));
    }
    let sub = verify_subgraph(g, &ed.nontrivial_edges())?;
    if let Some(p) = sub.problem {
        problems.push(format!("nontrivial ears: {p}"));
    }
    Ok(DecompositionCheck {
        problems,
        e1_checked: reference.is_some(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_and_path() {
        let g = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let all = g.edge_vec();
        let r = verify_subgraph(&g, &all).unwrap();
        assert!(r.ok() && r.two_edge_connected);
        let r = verify_subgraph(&g, &all[1..]).unwrap();
        assert!(!r.ok() && !r.two_edge_connected);
        assert!(r.problem.unwrap().starts_with("cut vertex"));
        let r = verify_subgraph(&g, &all[2..]).unwrap();
        assert_eq!(r.problem.as_deref(), Some("disconnected"));
        assert!(verify_subgraph(&g, &[Edge(0, 2)]).is_err());
    }

    #[test]
    fn bowtie_is_two_edge_connected_only() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        let r = verify_subgraph(&g, &g.edge_vec()).unwrap();
        assert!(!r.two_connected && r.two_edge_connected);
        assert_eq!(r.problem.as_deref(), Some("cut vertex 0"));
    }
}
