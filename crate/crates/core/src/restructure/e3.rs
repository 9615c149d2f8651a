use super::{nontrivial_ears, rebuild, record, Rewrite, View};
use crate::ear::{Ear, EarDecomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Fixes the first nonpendant 3-ear whose first attached ear `Q` does not
/// run from `v` to `y` (or whose `x` equals `y`).
pub fn enforce_e3(ed: &EarDecomposition, g: &Graph, log: &mut Vec<Rewrite>) -> Result<EarDecomposition> {
    let view = View::new(g, ed);
    let t = view
        .nonpendant_threes()
        .find(|t| !view.e3_holds(t))
        .ok_or_else(|| Error::Precondition("(E3) already holds".into()))?;
    let (i, q) = (t.index, t.q);
    let q_other = t.q_other();
    // Q from v; `inner` excludes both ends
    let q_inner = &t.q_path[1..t.q_path.len() - 1];
    let mut ears = nontrivial_ears(ed);
    let case;
    if q_other == t.w {
        // replace {v,w} by Q
        let mut p = vec![t.x, t.v];
        p.extend_from_slice(q_inner);
        p.extend([t.w, t.y]);
        ears[i] = Ear::new(p);
        ears.remove(q);
        case = "a";
    } else if q_other == t.x {
        // replace {x,v} by Q
        let mut p = vec![t.x];
        p.extend(q_inner.iter().rev());
        p.extend([t.v, t.w, t.y]);
        ears[i] = Ear::new(p);
        ears.remove(q);
        case = "b";
    } else {
        // Q followed by the v-y path of P, at the position of Q
        let mut p: Vec<usize> = t.q_path.iter().rev().copied().collect();
        p.extend([t.w, t.y]);
        ears[q] = Ear::new(p);
        ears.remove(i);
        case = "c";
    }
    let out = rebuild(g, ed.base, ears, "E3 rewrite")?;
    record(log, "L5", case, (i, q), ed, &out);
    Ok(out)
}

/// Applies [`enforce_e3`] until (E3) holds.
pub fn enforce_e3_all(ed: EarDecomposition, g: &Graph, log: &mut Vec<Rewrite>) -> Result<EarDecomposition> {
    let mut ed = ed;
    loop {
        let view = View::new(g, &ed);
        if view.nonpendant_threes().all(|t| view.e3_holds(&t)) {
            return Ok(ed);
        }
        ed = enforce_e3(&ed, g, log)?;
    }
}
