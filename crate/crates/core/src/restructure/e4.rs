use super::{nontrivial_ears, rebuild, record, Rewrite, View};
use crate::ear::{Ear, EarDecomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Merges a nonpendant 3-ear `P` and its first attached ear, a pendant
/// 3-ear `Q = v-v'-w'-y`, into a 5-ear when (E4) fails at `w'`.
///
/// `P` and the pendant 3-ears attached to it are first moved behind all
/// other nontrivial ears.
pub fn enforce_e4(ed: &EarDecomposition, g: &Graph, log: &mut Vec<Rewrite>) -> Result<EarDecomposition> {
    let view = View::new(g, ed);
    let t = view
        .nonpendant_threes()
        .find(|t| !view.e4_holds(t))
        .ok_or_else(|| Error::Precondition("(E4) already holds".into()))?;
    let (x, v, w, y) = (t.x, t.v, t.w, t.y);
    let (v1, w1) = (t.q_path[1], t.q_path[2]);

    let (case, path) = if let Some(&z) = g.neighbors(w1).iter().find(|z| ![y, v1, v].contains(z)) {
        if z == w {
            ("1.1", vec![x, v, v1, w1, w, y])
        } else {
            ("1.2", vec![y, w, v, v1, w1, z])
        }
    } else if let Some(&z) = g.neighbors(v1).iter().find(|z| ![v, w1, y].contains(z)) {
        if z == w {
            ("2.1", vec![x, v, w, v1, w1, y])
        } else {
            ("2.2", vec![y, w, v, w1, v1, z])
        }
    } else {
        return Err(Error::Internal(format!("(E4) site at ear {} has no case", t.index)));
    };

    // reorder: P and its attached ears go last, P first among them
    let moved: Vec<usize> = std::iter::once(t.index)
        .chain(view.idx.attached[t.index].iter().copied())
        .collect();
    let all = nontrivial_ears(ed);
    let mut ears: Vec<Ear> = Vec::with_capacity(all.len());
    let mut tail: Vec<Ear> = Vec::new();
    for (k, ear) in all.into_iter().enumerate() {
        if k == t.q {
            continue;
        }
        if k == t.index {
            tail.push(Ear::new(path.clone()));
        } else if moved.contains(&k) {
            tail.push(ear);
        } else {
            ears.push(ear);
        }
    }
    ears.extend(tail);
    let out = rebuild(g, ed.base, ears, "E4 rewrite")?;
    record(log, "L6", case, (t.index, t.q), ed, &out);
    Ok(out)
}
