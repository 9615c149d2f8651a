use serde::Serialize;

use super::{annotate, enforce_e2, enforce_e3, enforce_e4, enforce_e567, Counts, Rewrite, View};
use crate::ear::{count_even_ears, validate, Ear, EarDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::heuristic::{self, HeuristicConfig};
use crate::phi::{exact_open_decomposition, Backend, DEFAULT_EXHAUSTIVE_LIMIT};

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub backend: Backend,
    pub exhaustive_limit: usize,
    pub heuristic: HeuristicConfig,
    /// Start from this decomposition instead of minimizing even ears.
    pub initial: Option<EarDecomposition>,
    /// Idle-step budget for the (E5)-(E7) stage; `None` means `n - 1`.
    pub e567_budget: Option<usize>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            backend: Backend::Exact,
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
            heuristic: HeuristicConfig::default(),
            initial: None,
            e567_budget: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineResult {
    pub decomposition: EarDecomposition,
    /// Edges of the nontrivial ears, ascending.
    pub subgraph: Vec<Edge>,
    pub counts: Counts,
    /// Even ears of the starting decomposition.
    pub initial_even: usize,
    /// Where the starting decomposition came from.
    pub source: String,
    pub log: Vec<Rewrite>,
}

pub fn run_pipeline(g: &Graph, opts: &PipelineOptions) -> Result<PipelineResult> {
    if let Some(why) = g.two_connectivity_witness() {
        return Err(Error::NotTwoConnected(why));
    }
    let (mut ed, source) = match &opts.initial {
        Some(ed) => {
            validate(ed, g)?;
            (ed.clone(), "given".to_string())
        }
        None if g.n() == 3 => {
            // the triangle is its own decomposition
            (EarDecomposition::new(0, vec![Ear::new(vec![0, 1, 2, 0])]), "exact".to_string())
        }
        None => match opts.backend {
            Backend::Exact => (exact_open_decomposition(g, opts.exhaustive_limit)?, "exact".to_string()),
            Backend::Heuristic => (heuristic::minimize(g, &opts.heuristic)?, "heuristic".to_string()),
        },
    };
    let initial_even = count_even_ears(&ed);
    let mut log = Vec::new();
    // every rewrite adds a trivial ear, except the (E5)-(E7) stage, which
    // is followed by another check round
    let guard = 2 * g.n() + 4;
    for _ in 0..guard {
        let before = count_even_ears(&ed);
        let view = View::new(g, &ed);
        let e2 = view.e2_violation().is_some();
        let e3 = view.nonpendant_threes().any(|t| !view.e3_holds(&t));
        let e4 = view.nonpendant_threes().any(|t| !view.e4_holds(&t));
        let e567 = view
            .nonpendant_threes()
            .any(|t| !(view.e5_holds(&t) && view.e6_holds(&t) && view.e7_holds(&t)));
        drop(view);
        ed = if e2 {
            enforce_e2(&ed, g, &mut log)?
        } else if e3 {
            enforce_e3(&ed, g, &mut log)?
        } else if e4 {
            enforce_e4(&ed, g, &mut log)?
        } else if e567 {
            enforce_e567(&ed, g, &mut log, opts.e567_budget)?
        } else {
            let counts = annotate(&ed, g);
            return Ok(PipelineResult {
                subgraph: ed.nontrivial_edges(),
                decomposition: ed,
                counts,
                initial_even,
                source,
                log,
            });
        };
        if count_even_ears(&ed) > before {
            return Err(Error::Internal("a rewrite created an even ear".into()));
        }
    }
    Err(Error::NoProgress { iterations: guard })
}
