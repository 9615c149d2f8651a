//! End-to-end solver: reduction, restructuring, bounds and the report.

use serde::Serialize;

use crate::bounds::{ser_q, star_value, BoundReport, Q};
use crate::ear::{count_even_ears, EarDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::phi::{append_trivial, Backend};
use crate::redundancy::{reduce_to_property_p, Deletion};
use crate::restructure::{run_pipeline, Counts, PipelineOptions};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub schema: u32,
    pub n: usize,
    pub m: usize,
    /// Redundant edges removed before restructuring.
    pub deleted: Vec<String>,
    pub edges: Vec<Edge>,
    pub edge_count: usize,
    pub counts: Counts,
    /// `5/4 (n-1) + 3/4 phi + 1/2 (a+b+c+e)`.
    #[serde(serialize_with = "ser_q")]
    pub star: Q,
    pub bounds: BoundReport,
    /// `star / combined`.
    #[serde(serialize_with = "ser_q")]
    pub ratio_bound: Q,
    pub backend: String,
    pub source: String,
    pub log: Vec<String>,
    #[serde(skip)]
    pub decomposition: EarDecomposition,
    #[serde(skip)]
    pub reduced: Graph,
}

impl SolveReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Whether the decomposition's even-ear count is known to be minimum.
fn phi_is_exact(g: &Graph, ed: &EarDecomposition, from_exact: bool) -> bool {
    let even = count_even_ears(ed);
    // every odd ear adds an even number of vertices
    from_exact || even == 0 || (even == 1 && g.n().is_multiple_of(2))
}

/// Reduces `g` to property (P), restructures a decomposition with few even
/// ears until (E1)-(E7) hold, and reports the output with its bounds.
///
/// A decomposition in `opts.initial` refers to `g`; edges deleted by the
/// reduction must be trivial ears of it.
pub fn solve(g: &Graph, opts: &PipelineOptions) -> Result<SolveReport> {
    if let Some(why) = g.two_connectivity_witness() {
        return Err(Error::NotTwoConnected(why));
    }
    let (reduced, deleted) = reduce_to_property_p(g)?;
    let mut local = opts.clone();
    if let Some(ed) = &opts.initial {
        crate::ear::validate(ed, g)?;
        let nontrivial: Vec<_> = ed.ears.iter().filter(|e| !e.is_trivial()).cloned().collect();
        if let Some(d) = deleted
            .iter()
            .find(|d| nontrivial.iter().any(|e| e.edges().any(|f| f == d.edge)))
        {
            return Err(Error::Precondition(format!(
                "the given decomposition uses the redundant edge {}",
                d.edge
            )));
        }
        local.initial = Some(append_trivial(&reduced, ed.base, nontrivial));
    }
    let result = run_pipeline(&reduced, &local)?;
    let from_exact = opts.initial.is_none() && opts.backend == Backend::Exact;
    let exact = phi_is_exact(&reduced, &result.decomposition, from_exact);
    let bounds = BoundReport::compute(&result.decomposition, &reduced, exact)?;
    let star = star_value(reduced.n(), &result.counts);
    let ratio_bound = star / Q::from_integer(bounds.combined as i128);
    Ok(SolveReport {
        schema: SCHEMA,
        n: g.n(),
        m: g.m(),
        deleted: deleted.iter().map(Deletion::to_string).collect(),
        edge_count: result.subgraph.len(),
        edges: result.subgraph,
        counts: result.counts,
        star,
        bounds,
        ratio_bound,
        backend: opts.backend.to_string(),
        source: result.source,
        log: result.log.iter().map(|r| r.to_string()).collect(),
        decomposition: result.decomposition,
        reduced,
    })
}
