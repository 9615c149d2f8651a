//! Simple undirected graphs on the dense vertex set `0..n`.
//!
//! Adjacency lists are kept sorted so every scan over neighbours is
//! deterministic; the restructuring rules always pick the smallest
//! qualifying vertex.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected edge stored with `0 < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`. Panics if `v` is not an endpoint.
    pub fn other(&self, v: usize) -> usize {
        if self.0 == v {
            self.1
        } else {
            assert_eq!(self.1, v, "{v} is not an endpoint of {self}");
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

/// A graph derived from a parent by deleting or selecting vertices.
/// `to_parent[new] = old`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derived {
    pub graph: Graph,
    pub to_parent: Vec<usize>,
}

impl Derived {
    pub fn from_parent(&self, old: usize) -> Option<usize> {
        self.to_parent.iter().position(|&p| p == old)
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<Edge> {
        let n = self.n();
        if u >= n {
            return Err(Error::UnknownVertex(u));
        }
        if v >= n {
            return Err(Error::UnknownVertex(v));
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        let e = Edge::new(u, v);
        match self.adj[u].binary_search(&v) {
            Ok(_) => return Err(Error::ParallelEdge(e)),
            Err(pos) => self.adj[u].insert(pos, v),
        }
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.m += 1;
        Ok(e)
    }

    pub fn remove_edge(&mut self, e: Edge) -> Result<()> {
        let Edge(u, v) = e;
        if u >= self.n() || v >= self.n() {
            return Err(Error::UnknownEdge(e));
        }
        let pu = self.adj[u].binary_search(&v).map_err(|_| Error::UnknownEdge(e))?;
        self.adj[u].remove(pu);
        let pv = self.adj[v].binary_search(&u).expect("adjacency lists out of sync");
        self.adj[v].remove(pv);
        self.m -= 1;
        Ok(())
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.0, e.1)
    }

    /// All edges in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nb)| {
            nb.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| Edge(u, v))
        })
    }

    pub fn edge_vec(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    /// Number of connected components when `skip_vertex` and `skip_edge`
    /// are ignored. Cheaper than materialising `G - v - e`.
    pub fn component_count_avoiding(&self, skip_vertex: Option<usize>, skip_edge: Option<Edge>) -> usize {
        let n = self.n();
        let mut seen = vec![false; n];
        if let Some(s) = skip_vertex {
            seen[s] = true;
        }
        let mut stack = Vec::new();
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if seen[v] || skip_edge == Some(Edge::new(u, v)) {
                        continue;
                    }
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        count
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                        stack.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.component_count_avoiding(None, None) == 1
    }

    /// Articulation points, ascending. Errors if the graph is disconnected.
    pub fn cut_vertices(&self) -> Result<Vec<usize>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let (cuts, _) = self.lowpoint_scan();
        Ok(cuts)
    }

    /// Bridges, ascending. Errors if the graph is disconnected.
    pub fn bridges(&self) -> Result<Vec<Edge>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let (_, bridges) = self.lowpoint_scan();
        Ok(bridges)
    }

    pub fn is_two_connected(&self) -> bool {
        self.n() >= 3 && self.is_connected() && self.lowpoint_scan().0.is_empty()
    }

    pub fn is_two_edge_connected(&self) -> bool {
        self.n() >= 2 && self.is_connected() && self.lowpoint_scan().1.is_empty()
    }

    /// Explains why the graph is not 2-connected, or `None` if it is.
    pub fn two_connectivity_witness(&self) -> Option<String> {
        if self.n() < 3 {
            return Some(format!("only {} vertices", self.n()));
        }
        if !self.is_connected() {
            return Some("graph is disconnected".to_string());
        }
        let (cuts, _) = self.lowpoint_scan();
        cuts.first().map(|c| format!("cut vertex {c}"))
    }

    /// Iterative DFS lowpoint computation over every component.
    fn lowpoint_scan(&self) -> (Vec<usize>, Vec<Edge>) {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut bridges = Vec::new();
        let mut timer = 0;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            stack.push((root, usize::MAX, 0));
            while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
                if *idx < self.adj[u].len() {
                    let v = self.adj[u][*idx];
                    *idx += 1;
                    if v == parent {
                        continue;
                    }
                    if disc[v] == usize::MAX {
                        disc[v] = timer;
                        low[v] = timer;
                        timer += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((v, u, 0));
                    } else {
                        low[u] = low[u].min(disc[v]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[u]);
                        if parent != root && low[u] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                        if low[u] > disc[parent] {
                            bridges.push(Edge::new(parent, u));
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        bridges.sort_unstable();
        let cuts = (0..n).filter(|&v| is_cut[v]).collect();
        (cuts, bridges)
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Derived> {
        if v >= self.n() {
            return Err(Error::UnknownVertex(v));
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    pub fn delete_edge(&self, e: Edge) -> Result<Graph> {
        let mut g = self.clone();
        g.remove_edge(e)?;
        Ok(g)
    }

    /// `G[W]` with vertices renumbered in ascending order of `W`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Derived> {
        let n = self.n();
        let mut to_new = vec![usize::MAX; n];
        let mut to_parent: Vec<usize> = vertices.to_vec();
        to_parent.sort_unstable();
        to_parent.dedup();
        for (i, &v) in to_parent.iter().enumerate() {
            if v >= n {
                return Err(Error::UnknownVertex(v));
            }
            to_new[v] = i;
        }
        let mut g = Graph::new(to_parent.len());
        for &u in &to_parent {
            for &v in &self.adj[u] {
                if u < v && to_new[v] != usize::MAX {
                    g.add_edge(to_new[u], to_new[v])?;
                }
            }
        }
        Ok(Derived { graph: g, to_parent })
    }

    /// Spanning subgraph on the same vertex set.
    pub fn spanning_subgraph<'a, I>(&self, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        let mut h = Graph::new(self.n());
        for &e in edges {
            if !self.contains_edge(e) {
                return Err(Error::UnknownEdge(e));
            }
            h.add_edge(e.0, e.1)?;
        }
        Ok(h)
    }
}

/// A subset of a parent graph's edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSubset {
    pub members: BTreeSet<Edge>,
}

impl EdgeSubset {
    pub fn new<I: IntoIterator<Item = Edge>>(parent: &Graph, edges: I) -> Result<Self> {
        let mut members = BTreeSet::new();
        for e in edges {
            let e = Edge::new(e.0, e.1);
            if !parent.contains_edge(e) {
                return Err(Error::UnknownEdge(e));
            }
            members.insert(e);
        }
        Ok(EdgeSubset { members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn to_graph(&self, parent: &Graph) -> Graph {
        parent
            .spanning_subgraph(self.members.iter())
            .expect("subset members are parent edges")
    }
}
