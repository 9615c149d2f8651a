use super::{nontrivial_ears, orient3, rebuild, record, Rewrite, View};
use crate::ear::{Ear, EarDecomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Merges two pendant 3-ears with adjacent inner vertices into a pendant
/// 5-ear placed after all other nontrivial ears.
pub fn enforce_e2(ed: &EarDecomposition, g: &Graph, log: &mut Vec<Rewrite>) -> Result<EarDecomposition> {
    let view = View::new(g, ed);
    let (i, j, v, v2) = view
        .e2_violation()
        .ok_or_else(|| Error::Precondition("(E2) already holds".into()))?;
    let (x, v, w, y) = orient3(view.ear(i), v);
    let (x2, v2, w2, y2) = orient3(view.ear(j), v2);

    let (case, path) = if y != y2 {
        ("1".to_string(), vec![y, w, v, v2, w2, y2])
    } else if g.degree(w) > 2 {
        let (c, p) = case3(g, (x, v, w, y), (x2, v2, w2));
        (format!("3.{c}"), p)
    } else if g.degree(w2) > 2 {
        let (c, p) = case3(g, (x2, v2, w2, y), (x, v, w));
        (format!("4.{c}"), p)
    } else {
        return Err(Error::PropertyP(format!(
            "pendant 3-ears {i} and {j} share endpoint {y}, inner vertices {w} and {w2} have degree 2, \
             and {{{v},{v2}}} is redundant"
        )));
    };

    let mut ears = nontrivial_ears(ed);
    ears.remove(j);
    ears.remove(i);
    ears.push(Ear::new(path));
    let out = rebuild(g, ed.base, ears, "E2 rewrite")?;
    record(log, "L4", case, (i, j), ed, &out);
    Ok(out)
}

/// `P = x-v-w-y` with `deg w > 2`, `P' = x'-v'-w'-y` with the same `y`.
fn case3(
    g: &Graph,
    (x, v, w, y): (usize, usize, usize, usize),
    (x2, v2, w2): (usize, usize, usize),
) -> (u8, Vec<usize>) {
    let inside = [x, v, w, y, x2, v2, w2];
    if let Some(&z) = g.neighbors(w).iter().find(|z| !inside.contains(z)) {
        (1, vec![z, w, v, v2, w2, y])
    } else if g.has_edge(w, x) {
        (2, vec![x, w, v, v2, w2, y])
    } else if g.has_edge(w, x2) {
        (3, vec![x2, w, v, v2, w2, y])
    } else if g.has_edge(w, v2) {
        (4, vec![x, v, w, v2, w2, y])
    } else {
        debug_assert!(g.has_edge(w, w2));
        (5, vec![x, v, v2, w2, w, y])
    }
}
