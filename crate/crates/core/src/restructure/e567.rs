use super::{enforce_e3_all, nontrivial_ears, rebuild, record, Rewrite, ThreeEar, View};
use crate::ear::{Ear, EarDecomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// The path `S` grown from the ear `R` attached at `w`, and the ears it
/// borrowed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrownPath {
    /// `w = s[0]`, ..., ends in `X \ {w}`.
    pub vertices: Vec<usize>,
    pub r: usize,
    /// `(ear, what is left of it)`. The leftover runs from the last vertex
    /// shared with `S` to the ear's other endpoint.
    pub donors: Vec<(usize, Vec<usize>)>,
}

/// Grows `S` from ear `r`, which must have the inner vertex `w` of ear
/// `p` as an endpoint. While the current end `a` lies outside
/// `X = V(P_0) ∪ ... ∪ V(P_p)`, `S` follows the ear containing `a` as an
/// inner vertex to one of its endpoints, preferring an even stretch.
pub fn grow_s(ed: &EarDecomposition, g: &Graph, p: usize, r: usize, w: usize) -> Result<GrownPath> {
    let view = View::new(g, ed);
    let r_ear = view.ear(r);
    if !view.ear(p).inner().contains(&w) || !r_ear.endpoints().contains(&w) {
        return Err(Error::Precondition(format!("ear {r} is not attached to ear {p} at {w}")));
    }
    let mut s = r_ear.oriented_from(w).vertices;
    let mut donors = Vec::new();
    let mut a = *s.last().unwrap();
    while !view.idx.covered_through(a, p) {
        let d = view.idx.owner[a].expect("vertices outside X have an owner");
        let vs = &view.ear(d).vertices;
        let pos = vs.iter().position(|&u| u == a).unwrap();
        let to_first = pos;
        let to_last = vs.len() - 1 - pos;
        let go_first = to_first % 2 == 0 || to_last % 2 == 1;
        let (t, rest): (Vec<usize>, Vec<usize>) = if go_first {
            (vs[..=pos].iter().rev().copied().collect(), vs[pos..].to_vec())
        } else {
            (vs[pos..].to_vec(), vs[..=pos].to_vec())
        };
        s.extend_from_slice(&t[1..]);
        donors.push((d, rest));
        a = *s.last().unwrap();
    }
    Ok(GrownPath {
        vertices: s,
        r,
        donors,
    })
}

/// Establishes (E5), (E6) and (E7), keeping (E3) via [`enforce_e3_all`].
/// Fails with `NoProgress` when more than `budget` steps (default `n - 1`)
/// pass without a new trivial ear.
pub fn enforce_e567(
    ed: &EarDecomposition,
    g: &Graph,
    log: &mut Vec<Rewrite>,
    budget: Option<usize>,
) -> Result<EarDecomposition> {
    let budget = budget.unwrap_or(g.n().saturating_sub(1));
    let mut ed = enforce_e3_all(ed.clone(), g, log)?;
    let mut trivial = ed.trivial_count();
    let mut idle = 0;
    loop {
        let view = View::new(g, &ed);
        let Some(t) = view
            .nonpendant_threes()
            .find(|t| !(view.e5_holds(t) && view.e6_holds(t) && view.e7_holds(t)))
        else {
            return Ok(ed);
        };
        let next = if !view.e5_holds(&t) {
            step1(&ed, g, t.index, log)?
        } else if !view.e6_holds(&t) {
            step2(&ed, g, t.index, log)?
        } else {
            step3(&ed, g, &t, log)?
        };
        drop(view);
        ed = enforce_e3_all(next, g, log)?;
        if ed.trivial_count() > trivial {
            trivial = ed.trivial_count();
            idle = 0;
        } else {
            idle += 1;
            if idle > budget {
                return Err(Error::NoProgress { iterations: idle });
            }
        }
    }
}

/// Moves the pendant 3-ears attached to ear `h` that precede its first
/// attached ear that is not a pendant 3-ear to just after that ear.
fn step1(ed: &EarDecomposition, g: &Graph, h: usize, log: &mut Vec<Rewrite>) -> Result<EarDecomposition> {
    let view = View::new(g, ed);
    let attached = &view.idx.attached[h];
    let q2 = *attached
        .iter()
        .find(|&&j| !view.is_pendant_three(j))
        .ok_or_else(|| Error::Precondition(format!("(E5) holds at ear {h}")))?;
    let early: Vec<usize> = attached.iter().copied().filter(|&j| j < q2).collect();
    let all = nontrivial_ears(ed);
    let mut ears = Vec::with_capacity(all.len());
    for (k, ear) in all.iter().enumerate() {
        if early.contains(&k) {
            continue;
        }
        ears.push(ear.clone());
        if k == q2 {
            ears.extend(early.iter().map(|&j| all[j].clone()));
        }
    }
    let out = rebuild(g, ed.base, ears, "step 1")?;
    record(log, "L7", "step1", (h, q2), ed, &out);
    Ok(out)
}

/// First ear (possibly trivial) with endpoint `w`, after ear `i`.
fn first_at(ed: &EarDecomposition, i: usize, w: usize) -> Option<usize> {
    (i + 1..ed.ears.len()).find(|&j| ed.ears[j].endpoints().contains(&w))
}

fn step2(ed: &EarDecomposition, g: &Graph, i: usize, log: &mut Vec<Rewrite>) -> Result<EarDecomposition> {
    let view = View::new(g, ed);
    let t = view
        .nonpendant_three(i)
        .ok_or_else(|| Error::Precondition(format!("ear {i} is not a nonpendant 3-ear")))?;
    let r = first_at(ed, i, t.w)
        .ok_or_else(|| Error::Precondition(format!("nothing attached at {}", t.w)))?;
    let grown = grow_s(ed, g, i, r, t.w)?;
    let s = &grown.vertices;
    let end = *s.last().unwrap();
    let mut drop_q = false;
    let (case, path) = if end == t.v {
        let mut p = vec![t.x];
        p.extend(s.iter().rev());
        p.push(t.y);
        ("step2.2", p)
    } else if end == t.y {
        let mut p = vec![t.x, t.v];
        p.extend(s.iter());
        ("step2.3", p)
    } else {
        if s.iter().any(|u| t.q_path.contains(u)) {
            return Err(Error::Internal(format!("S meets Q at ear {i}")));
        }
        let mut p: Vec<usize> = s.iter().rev().copied().collect();
        p.extend(t.q_path.iter());
        drop_q = true;
        ("step2.1", p)
    };
    let nt = ed.nontrivial_count();
    let mut ears = Vec::with_capacity(nt);
    for (k, ear) in ed.ears[..nt].iter().enumerate() {
        if k == i {
            ears.push(Ear::new(path.clone()));
        } else if k == r || (drop_q && k == t.q) {
            continue;
        } else if let Some((_, rest)) = grown.donors.iter().find(|(d, _)| *d == k) {
            if rest.len() > 2 {
                ears.push(Ear::new(rest.clone()));
            }
        } else {
            ears.push(ear.clone());
        }
    }
    let mut out = rebuild(g, ed.base, ears, case)?;
    record(log, "L7", case, (i, r), ed, &out);
    // an earlier 3-ear may now have the new ear attached after pendant
    // 3-ears
    loop {
        let view = View::new(g, &out);
        let Some(h) = (0..i).find(|&h| {
            view.nonpendant_three(h)
                .is_some_and(|t| !view.e5_holds(&t))
        }) else {
            break;
        };
        drop(view);
        out = step1(&out, g, h, log)?;
    }
    Ok(out)
}

/// `Q = v-v'-y` with `deg v' > 2`: `P' = x-v-v'-y`, `Q' = v-w-y`, then
/// step 2 on `P'`.
fn step3(ed: &EarDecomposition, g: &Graph, t: &ThreeEar, log: &mut Vec<Rewrite>) -> Result<EarDecomposition> {
    let v1 = t.q_path[1];
    let mut ears = nontrivial_ears(ed);
    ears[t.index] = Ear::new(vec![t.x, t.v, v1, t.y]);
    ears[t.q] = Ear::new(vec![t.v, t.w, t.y]);
    let mid = rebuild(g, ed.base, ears, "step 3")?;
    record(log, "L7", "step3", (t.index, t.q), ed, &mid);
    step2(&mid, g, t.index, log)
}
