//! Redundant edges next to pairs of degree-2 vertices, and reduction to
//! property (P).

use std::fmt;

use serde::Serialize;

use crate::ear::compute_open_ed;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// `Γ(a) = {c, d}`, `Γ(b) = {c, e}`, `f = {d, e}` with five distinct
/// vertices and `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PatternWitness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub e: usize,
}

impl PatternWitness {
    pub fn f(&self) -> Edge {
        Edge::new(self.d, self.e)
    }

    pub fn check(&self, g: &Graph) -> Result<()> {
        let vs = [self.a, self.b, self.c, self.d, self.e];
        if let Some(&v) = vs.iter().find(|&&v| v >= g.n()) {
            return Err(Error::UnknownVertex(v));
        }
        for i in 0..5 {
            for j in i + 1..5 {
                if vs[i] == vs[j] {
                    return Err(Error::InvalidWitness(format!("{self}: repeated vertex")));
                }
            }
        }
        let nbrs = |v: usize, x: usize, y: usize| {
            let mut want = [x, y];
            want.sort_unstable();
            g.neighbors(v) == want
        };
        if !nbrs(self.a, self.c, self.d) || !nbrs(self.b, self.c, self.e) {
            return Err(Error::InvalidWitness(format!("{self}: neighbourhoods differ")));
        }
        if !g.contains_edge(self.f()) {
            return Err(Error::InvalidWitness(format!("{self}: {} is not an edge", self.f())));
        }
        Ok(())
    }
}

impl fmt::Display for PatternWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(a={}, b={}, c={}, d={}, e={})",
            self.a, self.b, self.c, self.d, self.e
        )
    }
}

/// All witnesses, ordered by `(a, b)`. A pair of degree-2 vertices has at
/// most one.
pub fn find_patterns(g: &Graph) -> Vec<PatternWitness> {
    let mut out = Vec::new();
    for c in 0..g.n() {
        let twos: Vec<usize> = g
            .neighbors(c)
            .iter()
            .copied()
            .filter(|&v| g.degree(v) == 2)
            .collect();
        for (i, &a) in twos.iter().enumerate() {
            for &b in &twos[i + 1..] {
                let d = g.neighbors(a).iter().copied().find(|&x| x != c).unwrap();
                let e = g.neighbors(b).iter().copied().find(|&x| x != c).unwrap();
                if d == e || d == b || e == a || !g.has_edge(d, e) {
                    continue;
                }
                out.push(PatternWitness { a, b, c, d, e });
            }
        }
    }
    out.sort_unstable();
    out
}

/// `f` is redundant iff `(G - c) - f` is connected.
pub fn is_redundant(g: &Graph, w: &PatternWitness) -> Result<bool> {
    w.check(g)?;
    Ok(g.component_count_avoiding(Some(w.c), Some(w.f())) == 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Deletion {
    pub edge: Edge,
    pub witness: PatternWitness,
}

impl fmt::Display for Deletion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "del {} {} witness {} {} {}",
            self.edge.0, self.edge.1, self.witness.a, self.witness.b, self.witness.c
        )
    }
}

pub fn format_log(log: &[Deletion]) -> String {
    log.iter().map(|d| format!("{d}\n")).collect()
}

/// Deletes redundant pattern edges until property (P) holds. Pattern edges
/// that are trivial ears of an open decomposition go first, then the
/// remaining patterns are rescanned in `(a, b)` order after every deletion.
pub fn reduce_to_property_p(g: &Graph) -> Result<(Graph, Vec<Deletion>)> {
    let ed = compute_open_ed(g)?;
    let trivial: std::collections::HashSet<Edge> = ed
        .ears
        .iter()
        .filter(|e| e.is_trivial())
        .flat_map(|e| e.edges())
        .collect();
    let mut h = g.clone();
    let mut log = Vec::new();
    for w in find_patterns(g) {
        let f = w.f();
        if !trivial.contains(&f) || !h.contains_edge(f) {
            continue;
        }
        if w.check(&h).is_ok() && is_redundant(&h, &w)? {
            h.remove_edge(f)?;
            log.push(Deletion { edge: f, witness: w });
        }
    }
    'scan: loop {
        for w in find_patterns(&h) {
            if is_redundant(&h, &w)? {
                h.remove_edge(w.f())?;
                log.push(Deletion {
                    edge: w.f(),
                    witness: w,
                });
                continue 'scan;
            }
        }
        break;
    }
    Ok((h, log))
}

pub fn check_property_p(g: &Graph) -> Result<Option<PatternWitness>> {
    if let Some(why) = g.two_connectivity_witness() {
        return Err(Error::NotTwoConnected(why));
    }
    for w in find_patterns(g) {
        if is_redundant(g, &w)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}
