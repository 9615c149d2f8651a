//! Ear-decompositions: data model, validation, construction and
//! per-ear classification.

use std::collections::HashSet;
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EarKind {
    Closed,
    Open,
    Trivial,
}

impl EarKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EarKind::Closed => "closed",
            EarKind::Open => "open",
            EarKind::Trivial => "trivial",
        }
    }
}

/// A path `v0 .. vl`, or a circuit when `v0 == vl`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ear {
    pub vertices: Vec<usize>,
}

impl Ear {
    pub fn new(vertices: Vec<usize>) -> Self {
        Ear { vertices }
    }

    pub fn trivial(e: Edge) -> Self {
        Ear {
            vertices: vec![e.0, e.1],
        }
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_closed(&self) -> bool {
        self.vertices.len() > 2 && self.vertices.first() == self.vertices.last()
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    pub fn is_even(&self) -> bool {
        self.len().is_multiple_of(2)
    }

    pub fn kind(&self) -> EarKind {
        if self.is_trivial() {
            EarKind::Trivial
        } else if self.is_closed() {
            EarKind::Closed
        } else {
            EarKind::Open
        }
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().expect("ear has vertices")
    }

    /// One endpoint for a closed ear, two otherwise.
    pub fn endpoints(&self) -> Vec<usize> {
        if self.is_closed() {
            vec![self.first()]
        } else {
            vec![self.first(), self.last()]
        }
    }

    pub fn inner(&self) -> &[usize] {
        if self.vertices.len() <= 2 {
            &[]
        } else {
            &self.vertices[1..self.vertices.len() - 1]
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices.windows(2).map(|w| Edge::new(w[0], w[1]))
    }

    pub fn reversed(&self) -> Ear {
        let mut v = self.vertices.clone();
        v.reverse();
        Ear { vertices: v }
    }

    /// The same ear oriented so that it starts at `v` (an endpoint).
    pub fn oriented_from(&self, v: usize) -> Ear {
        if self.first() == v {
            self.clone()
        } else {
            debug_assert_eq!(self.last(), v);
            self.reversed()
        }
    }
}

impl fmt::Display for Ear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "{}[{}]", self.kind().as_str(), parts.join("-"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarDecomposition {
    pub base: usize,
    pub ears: Vec<Ear>,
}

/// The definition clause a decomposition breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    Shape,
    Prefix,
    EdgePartition,
    VertexCoverage,
    Open,
    TrivialOrder,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::Shape => "ear shape",
            Clause::Prefix => "prefix condition",
            Clause::EdgePartition => "edge partition",
            Clause::VertexCoverage => "vertex coverage",
            Clause::Open => "open decomposition",
            Clause::TrivialOrder => "trivial ears last",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: Clause,
    pub ear: Option<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ear {
            Some(i) => write!(f, "{} violated at ear {}: {}", self.clause, i, self.detail),
            None => write!(f, "{} violated: {}", self.clause, self.detail),
        }
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::InvalidDecomposition(v.to_string())
    }
}

fn violation(clause: Clause, ear: Option<usize>, detail: impl Into<String>) -> Violation {
    Violation {
        clause,
        ear,
        detail: detail.into(),
    }
}

impl EarDecomposition {
    pub fn new(base: usize, ears: Vec<Ear>) -> Self {
        EarDecomposition { base, ears }
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = (usize, &Ear)> {
        self.ears.iter().enumerate().filter(|(_, e)| !e.is_trivial())
    }

    pub fn trivial_count(&self) -> usize {
        self.ears.iter().filter(|e| e.is_trivial()).count()
    }

    pub fn nontrivial_count(&self) -> usize {
        self.ears.len() - self.trivial_count()
    }

    pub fn is_open(&self) -> bool {
        self.ears.iter().skip(1).all(|e| !e.is_closed())
    }

    /// Edges of the nontrivial ears, ascending.
    pub fn nontrivial_edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .ears
            .iter()
            .filter(|e| !e.is_trivial())
            .flat_map(|e| e.edges())
            .collect();
        out.sort_unstable();
        out
    }

    /// Stable partition: nontrivial ears keep their order, trivial ears
    /// follow.
    pub fn move_trivial_last(&mut self) {
        let (mut nt, tr): (Vec<Ear>, Vec<Ear>) =
            self.ears.drain(..).partition(|e| !e.is_trivial());
        nt.extend(tr);
        self.ears = nt;
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "base {}", self.base).unwrap();
        for ear in &self.ears {
            write!(out, "ear {}", ear.kind().as_str()).unwrap();
            for v in &ear.vertices {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let perr = |line: usize, message: &str| Error::Parse {
            line,
            message: message.to_string(),
        };
        let mut base = None;
        let mut ears = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let mut toks = raw.split_whitespace();
            match toks.next() {
                None => continue,
                Some("base") => {
                    let v = toks
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| perr(line, "bad base vertex"))?;
                    base = Some(v);
                }
                Some("ear") => {
                    let kind = toks.next().ok_or_else(|| perr(line, "missing ear kind"))?;
                    let vertices: Vec<usize> = toks
                        .map(|t| t.parse().map_err(|_| perr(line, "bad vertex")))
                        .collect::<Result<_>>()?;
                    if vertices.len() < 2 {
                        return Err(perr(line, "ear needs at least two vertices"));
                    }
                    let ear = Ear::new(vertices);
                    if ear.kind().as_str() != kind {
                        return Err(perr(line, "ear kind does not match its vertex sequence"));
                    }
                    ears.push(ear);
                }
                Some(_) => return Err(perr(line, "unknown record")),
            }
        }
        let base = base.ok_or_else(|| perr(0, "missing base line"))?;
        Ok(EarDecomposition { base, ears })
    }
}

/// Checks every clause of the definition, including openness.
pub fn validate(ed: &EarDecomposition, g: &Graph) -> std::result::Result<(), Violation> {
    validate_with(ed, g, true)
}

/// Like [`validate`], optionally accepting closed ears after the first.
pub fn validate_with(
    ed: &EarDecomposition,
    g: &Graph,
    require_open: bool,
) -> std::result::Result<(), Violation> {
    let n = g.n();
    if ed.base >= n {
        return Err(violation(Clause::Shape, None, format!("base {} out of range", ed.base)));
    }
    let mut covered = vec![false; n];
    covered[ed.base] = true;
    let mut used: HashSet<Edge> = HashSet::with_capacity(g.m());
    let mut seen_trivial = false;
    for (i, ear) in ed.ears.iter().enumerate() {
        let vs = &ear.vertices;
        if vs.len() < 2 {
            return Err(violation(Clause::Shape, Some(i), "fewer than two vertices"));
        }
        if let Some(&v) = vs.iter().find(|&&v| v >= n) {
            return Err(violation(Clause::Shape, Some(i), format!("vertex {v} out of range")));
        }
        let closed = ear.is_closed();
        let body = if closed { &vs[..vs.len() - 1] } else { &vs[..] };
        let mut distinct = HashSet::new();
        if !body.iter().all(|v| distinct.insert(*v)) {
            return Err(violation(Clause::Shape, Some(i), "repeated vertex"));
        }
        if closed && ear.len() < 3 {
            return Err(violation(Clause::Shape, Some(i), "closed ear shorter than 3"));
        }
        for e in ear.edges() {
            if !g.contains_edge(e) {
                return Err(violation(Clause::Shape, Some(i), format!("{e} is not a graph edge")));
            }
        }
        if i == 0 && !(closed && ear.first() == ed.base) {
            return Err(violation(
                Clause::Prefix,
                Some(0),
                "first ear must be a circuit through the base vertex",
            ));
        }
        for &p in &ear.endpoints() {
            if !covered[p] {
                return Err(violation(Clause::Prefix, Some(i), format!("endpoint {p} not yet covered")));
            }
        }
        for &p in ear.inner() {
            if covered[p] {
                return Err(violation(Clause::Prefix, Some(i), format!("inner vertex {p} already covered")));
            }
        }
        for e in ear.edges() {
            if !used.insert(e) {
                return Err(violation(Clause::EdgePartition, Some(i), format!("{e} used twice")));
            }
        }
        for &p in ear.inner() {
            covered[p] = true;
        }
        if require_open && i > 0 && closed {
            return Err(violation(Clause::Open, Some(i), "closed ear after the first"));
        }
        if ear.is_trivial() {
            seen_trivial = true;
        } else if seen_trivial {
            return Err(violation(Clause::TrivialOrder, Some(i), "nontrivial ear after a trivial ear"));
        }
    }
    if used.len() != g.m() {
        let missing = g.edges().find(|e| !used.contains(e)).expect("some edge missing");
        return Err(violation(Clause::EdgePartition, None, format!("{missing} in no ear")));
    }
    if let Some(v) = (0..n).find(|&v| !covered[v]) {
        return Err(violation(Clause::VertexCoverage, None, format!("vertex {v} not covered")));
    }
    Ok(())
}

pub fn count_even_ears(ed: &EarDecomposition) -> usize {
    ed.ears.iter().filter(|e| e.is_even()).count()
}

/// Open ear-decomposition from a DFS chain decomposition; trivial ears
/// are moved to the end.
pub fn compute_open_ed(g: &Graph) -> Result<EarDecomposition> {
    if let Some(why) = g.two_connectivity_witness() {
        return Err(Error::NotTwoConnected(why));
    }
    let n = g.n();
    let root = 0;
    let mut disc = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
    disc[root] = 0;
    order.push(root);
    while let Some(&mut (u, ref mut idx)) = stack.last_mut() {
        if *idx < g.degree(u) {
            let v = g.neighbors(u)[*idx];
            *idx += 1;
            if disc[v] == usize::MAX {
                disc[v] = order.len();
                parent[v] = u;
                order.push(v);
                stack.push((v, 0));
            }
        } else {
            stack.pop();
        }
    }
    let mut visited = vec![false; n];
    let mut ears = Vec::new();
    let mut trivial = Vec::new();
    for &v in &order {
        for &w in g.neighbors(v) {
            // back edge from ancestor v down to descendant w
            if disc[w] <= disc[v] || parent[w] == v {
                continue;
            }
            visited[v] = true;
            let mut chain = vec![v];
            let mut cur = w;
            while !visited[cur] {
                visited[cur] = true;
                chain.push(cur);
                cur = parent[cur];
            }
            chain.push(cur);
            let ear = Ear::new(chain);
            if ear.is_trivial() {
                trivial.push(ear);
            } else {
                ears.push(ear);
            }
        }
    }
    ears.extend(trivial);
    let ed = EarDecomposition::new(root, ears);
    validate(&ed, g).map_err(|v| Error::Internal(format!("chain decomposition: {v}")))?;
    Ok(ed)
}

/// Derived lookup tables for a valid decomposition.
#[derive(Clone, Debug)]
pub struct EarIndex {
    /// Ear in which a vertex is inner; `None` for the base vertex.
    pub owner: Vec<Option<usize>>,
    /// Nontrivial ears attached to each ear, ascending.
    pub attached: Vec<Vec<usize>>,
}

impl EarIndex {
    pub fn new(ed: &EarDecomposition, n: usize) -> Self {
        let mut owner = vec![None; n];
        for (i, ear) in ed.ears.iter().enumerate() {
            for &v in ear.inner() {
                owner[v] = Some(i);
            }
        }
        let mut attached = vec![Vec::new(); ed.ears.len()];
        for (j, ear) in ed.nontrivial() {
            for p in ear.endpoints() {
                if let Some(i) = owner[p] {
                    if attached[i].last() != Some(&j) {
                        attached[i].push(j);
                    }
                }
            }
        }
        EarIndex { owner, attached }
    }

    pub fn is_pendant(&self, i: usize) -> bool {
        self.attached[i].is_empty()
    }

    pub fn first_attached(&self, i: usize) -> Option<usize> {
        self.attached[i].first().copied()
    }

    /// Vertices covered by ears `0..=i` (plus the base).
    pub fn covered_through(&self, v: usize, i: usize) -> bool {
        match self.owner[v] {
            None => true,
            Some(o) => o <= i,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EarClass {
    pub index: usize,
    pub kind: EarKind,
    pub length: usize,
    /// Only meaningful for nontrivial ears.
    pub pendant: bool,
    /// `(ear, vertex)` for every ear (trivial included) having an
    /// endpoint among this ear's inner vertices.
    pub attachments: Vec<(usize, usize)>,
    pub first_attached: Option<usize>,
}

pub fn classify(ed: &EarDecomposition) -> Vec<EarClass> {
    let n = ed
        .ears
        .iter()
        .flat_map(|e| e.vertices.iter().copied())
        .chain(std::iter::once(ed.base))
        .max()
        .map_or(0, |m| m + 1);
    let idx = EarIndex::new(ed, n);
    let mut attachments = vec![Vec::new(); ed.ears.len()];
    for (j, ear) in ed.ears.iter().enumerate() {
        for p in ear.endpoints() {
            if let Some(i) = idx.owner[p] {
                attachments[i].push((j, p));
            }
        }
    }
    ed.ears
        .iter()
        .enumerate()
        .map(|(i, ear)| EarClass {
            index: i,
            kind: ear.kind(),
            length: ear.len(),
            pendant: !ear.is_trivial() && idx.is_pendant(i),
            attachments: std::mem::take(&mut attachments[i]),
            first_attached: idx.first_attached(i),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn k4() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn triangle_as_single_closed_ear() {
        let g = cycle(3);
        let ed = EarDecomposition::new(0, vec![Ear::new(vec![0, 1, 2, 0])]);
        assert_eq!(validate(&ed, &g), Ok(()));
        assert_eq!(ed.ears[0].kind(), EarKind::Closed);
        assert_eq!(ed.ears[0].len(), 3);
    }

    #[test]
    fn missing_edge_is_an_edge_partition_violation() {
        let g = k4();
        let ed = EarDecomposition::new(
            0,
            vec![Ear::new(vec![0, 1, 2, 0]), Ear::new(vec![0, 3, 1])],
        );
        let v = validate(&ed, &g).unwrap_err();
        assert_eq!(v.clause, Clause::EdgePartition);
    }

    #[test]
    fn second_closed_ear_is_an_open_violation() {
        // bowtie plus an edge so the second circuit can be closed
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        let ed = EarDecomposition::new(
            0,
            vec![Ear::new(vec![0, 1, 2, 0]), Ear::new(vec![0, 3, 4, 0])],
        );
        let v = validate(&ed, &g).unwrap_err();
        assert_eq!(v.clause, Clause::Open);
        assert_eq!(v.ear, Some(1));
        assert_eq!(validate_with(&ed, &g, false), Ok(()));
    }

    #[test]
    fn prefix_and_order_violations() {
        let g = k4();
        let bad_prefix = EarDecomposition::new(
            0,
            vec![Ear::new(vec![0, 1, 2, 0]), Ear::new(vec![3, 0, 1])],
        );
        assert_eq!(validate(&bad_prefix, &g).unwrap_err().clause, Clause::Prefix);
        let bad_order = EarDecomposition::new(
            0,
            vec![
                Ear::new(vec![0, 1, 2, 0]),
                Ear::trivial(Edge(1, 2)),
                Ear::new(vec![0, 3, 1]),
            ],
        );
        // edge {1,2} is already used by the first ear
        assert_eq!(validate(&bad_order, &g).unwrap_err().clause, Clause::EdgePartition);
        let g5 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 1), (2, 3)]).unwrap();
        let late = EarDecomposition::new(
            0,
            vec![
                Ear::new(vec![0, 1, 2, 0]),
                Ear::trivial(Edge(2, 3)),
                Ear::new(vec![0, 3, 1]),
            ],
        );
        assert_eq!(validate(&late, &g5).unwrap_err().clause, Clause::Prefix);
    }

    #[test]
    fn cycle_gives_one_closed_ear() {
        for n in 3..9 {
            let ed = compute_open_ed(&cycle(n)).unwrap();
            assert_eq!(ed.ears.len(), 1);
            assert!(ed.ears[0].is_closed());
            assert_eq!(ed.ears[0].len(), n);
        }
    }

    #[test]
    fn k4_lengths_are_forced() {
        let ed = compute_open_ed(&k4()).unwrap();
        let mut lens: Vec<usize> = ed.ears.iter().map(|e| e.len()).collect();
        assert_eq!(lens.iter().sum::<usize>(), 6);
        lens.sort_unstable();
        assert_eq!(lens, vec![1, 2, 3]);
    }

    #[test]
    fn compute_rejects_non_two_connected() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(compute_open_ed(&path), Err(Error::NotTwoConnected(_))));
    }

    #[test]
    fn even_counts() {
        let c5 = EarDecomposition::new(0, vec![Ear::new(vec![0, 1, 2, 3, 4, 0])]);
        assert_eq!(count_even_ears(&c5), 0);
        let c4 = EarDecomposition::new(0, vec![Ear::new(vec![0, 1, 2, 3, 0])]);
        assert_eq!(count_even_ears(&c4), 1);
    }

    #[test]
    fn classification_of_single_closed_ear() {
        let ed = EarDecomposition::new(0, vec![Ear::new(vec![0, 1, 2, 0])]);
        let c = classify(&ed);
        assert!(c[0].pendant);
        assert!(c[0].attachments.is_empty());
        assert_eq!(c[0].first_attached, None);
    }

    #[test]
    fn text_round_trip_is_exact() {
        let ed = compute_open_ed(&k4()).unwrap();
        let text = ed.to_text();
        let back = EarDecomposition::parse(&text).unwrap();
        assert_eq!(back, ed);
        assert_eq!(back.to_text(), text);
        assert!(EarDecomposition::parse("base 0\near open 0 1 0\n").is_err());
    }
}
