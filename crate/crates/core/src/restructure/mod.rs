//! Properties (E1)-(E7) of an ear-decomposition and the rewrites that
//! establish them.
//!
//! Rewrites operate on the list of nontrivial ears; trivial ears are
//! recomputed as the unused edges afterwards.

mod e2;
mod e3;
mod e4;
mod e567;
mod pipeline;

use std::fmt;

use serde::Serialize;

use crate::ear::{count_even_ears, validate, Ear, EarDecomposition, EarIndex};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::phi::append_trivial;

pub use e2::enforce_e2;
pub use e3::{enforce_e3, enforce_e3_all};
pub use e4::enforce_e4;
pub use e567::{enforce_e567, grow_s, GrownPath};
pub use pipeline::{run_pipeline, PipelineOptions, PipelineResult};

/// Labels of a nonpendant 3-ear `P = x-v-w-y` whose first attached
/// nontrivial ear `Q` starts at `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeEar {
    pub index: usize,
    pub x: usize,
    pub v: usize,
    pub w: usize,
    pub y: usize,
    /// Index of `Q`.
    pub q: usize,
    /// `Q` oriented from `v`.
    pub q_path: Vec<usize>,
}

impl ThreeEar {
    pub fn q_other(&self) -> usize {
        *self.q_path.last().unwrap()
    }
}

/// Orients the 3-ear `p` so that `v` is its second vertex.
pub(crate) fn orient3(p: &Ear, v: usize) -> (usize, usize, usize, usize) {
    let s = &p.vertices;
    if s[1] == v {
        (s[0], s[1], s[2], s[3])
    } else {
        debug_assert_eq!(s[2], v);
        (s[3], s[2], s[1], s[0])
    }
}

/// Analysis of one decomposition.
pub(crate) struct View<'a> {
    pub g: &'a Graph,
    pub ed: &'a EarDecomposition,
    pub idx: EarIndex,
}

impl<'a> View<'a> {
    pub fn new(g: &'a Graph, ed: &'a EarDecomposition) -> Self {
        View {
            g,
            ed,
            idx: EarIndex::new(ed, g.n()),
        }
    }

    pub fn ear(&self, i: usize) -> &Ear {
        &self.ed.ears[i]
    }

    pub fn is_pendant(&self, i: usize) -> bool {
        self.idx.is_pendant(i)
    }

    pub fn is_pendant_three(&self, i: usize) -> bool {
        self.ear(i).len() == 3 && self.is_pendant(i)
    }

    pub fn nonpendant_three(&self, i: usize) -> Option<ThreeEar> {
        let p = self.ear(i);
        if p.len() != 3 || self.is_pendant(i) {
            return None;
        }
        let q = self.idx.first_attached(i)?;
        let qe = self.ear(q);
        let inner = p.inner();
        let v = if inner.contains(&qe.first()) {
            qe.first()
        } else {
            qe.last()
        };
        let (x, v, w, y) = orient3(p, v);
        Some(ThreeEar {
            index: i,
            x,
            v,
            w,
            y,
            q,
            q_path: qe.oriented_from(v).vertices,
        })
    }

    pub fn nonpendant_threes(&self) -> impl Iterator<Item = ThreeEar> + '_ {
        (0..self.ed.ears.len()).filter_map(move |i| self.nonpendant_three(i))
    }

    /// Whether only pendant 3-ears (and trivial ears) are attached.
    pub fn only_pendant_threes_attached(&self, i: usize) -> bool {
        self.idx.attached[i].iter().all(|&j| self.is_pendant_three(j))
    }

    pub fn e3_holds(&self, t: &ThreeEar) -> bool {
        t.q_other() == t.y && t.x != t.y
    }

    pub fn e4_holds(&self, t: &ThreeEar) -> bool {
        if !self.only_pendant_threes_attached(t.index) || t.q_path.len() != 4 || t.q_other() != t.y {
            return true;
        }
        let (v1, w1) = (t.q_path[1], t.q_path[2]);
        if self.g.degree(w1) == 2 {
            return true;
        }
        let mut want = [t.y, v1, t.v];
        want.sort_unstable();
        self.g.neighbors(w1) == want
            && self
                .g
                .neighbors(v1)
                .iter()
                .all(|u| [t.v, w1, t.y].contains(u))
    }

    pub fn e5_holds(&self, t: &ThreeEar) -> bool {
        !self.is_pendant_three(t.q) || self.only_pendant_threes_attached(t.index)
    }

    pub fn e6_holds(&self, t: &ThreeEar) -> bool {
        self.g.degree(t.w) == 2
    }

    pub fn e7_holds(&self, t: &ThreeEar) -> bool {
        t.q_path.len() != 3 || self.g.degree(t.q_path[1]) == 2
    }

    /// First pair of pendant 3-ears with adjacent inner vertices, as
    /// `(i, j, v, v')` with `v` inner to ear `i`.
    pub fn e2_violation(&self) -> Option<(usize, usize, usize, usize)> {
        let pend: Vec<usize> = (0..self.ed.ears.len())
            .filter(|&i| self.is_pendant_three(i) && !self.ear(i).is_closed())
            .collect();
        for (a, &i) in pend.iter().enumerate() {
            for &j in &pend[a + 1..] {
                for &v in self.ear(i).inner() {
                    for &v2 in self.ear(j).inner() {
                        if self.g.has_edge(v, v2) {
                            return Some((i, j, v, v2));
                        }
                    }
                }
            }
        }
        None
    }
}

/// Which property fails, and where.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Site {
    /// Even ears found versus the reference value, or a closed ear after
    /// the first.
    E1 { even: usize, reference: usize },
    E2 { ears: (usize, usize), vertices: (usize, usize) },
    E3 { ear: usize },
    E4 { ear: usize, vertex: usize },
    E5 { ear: usize },
    E6 { ear: usize, vertex: usize },
    E7 { ear: usize, vertex: usize },
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::E1 { even, reference } => {
                write!(f, "(E1) {even} even ears against reference {reference}")
            }
            Site::E2 { ears, vertices } => write!(
                f,
                "(E2) pendant 3-ears {} and {} joined by {{{},{}}}",
                ears.0, ears.1, vertices.0, vertices.1
            ),
            Site::E3 { ear } => write!(f, "(E3) at ear {ear}"),
            Site::E4 { ear, vertex } => write!(f, "(E4) at ear {ear}, vertex {vertex}"),
            Site::E5 { ear } => write!(f, "(E5) at ear {ear}"),
            Site::E6 { ear, vertex } => write!(f, "(E6) at ear {ear}, vertex {vertex}"),
            Site::E7 { ear, vertex } => write!(f, "(E7) at ear {ear}, vertex {vertex}"),
        }
    }
}

/// Checks property `which` (1..=7). `phi_ref` is only used by (E1).
pub fn check_e(
    ed: &EarDecomposition,
    g: &Graph,
    which: u8,
    phi_ref: usize,
) -> Result<Option<Site>> {
    validate(ed, g)?;
    let view = View::new(g, ed);
    Ok(match which {
        1 => {
            let even = count_even_ears(ed);
            (even != phi_ref).then_some(Site::E1 {
                even,
                reference: phi_ref,
            })
        }
        2 => view.e2_violation().map(|(i, j, v, v2)| Site::E2 {
            ears: (i, j),
            vertices: (v, v2),
        }),
        3 => view
            .nonpendant_threes()
            .find(|t| !view.e3_holds(t))
            .map(|t| Site::E3 { ear: t.index }),
        4 => view
            .nonpendant_threes()
            .find(|t| !view.e4_holds(t))
            .map(|t| Site::E4 {
                ear: t.index,
                vertex: t.q_path[2],
            }),
        5 => view
            .nonpendant_threes()
            .find(|t| !view.e5_holds(t))
            .map(|t| Site::E5 { ear: t.index }),
        6 => view
            .nonpendant_threes()
            .find(|t| !view.e6_holds(t))
            .map(|t| Site::E6 {
                ear: t.index,
                vertex: t.w,
            }),
        7 => view
            .nonpendant_threes()
            .find(|t| !view.e7_holds(t))
            .map(|t| Site::E7 {
                ear: t.index,
                vertex: t.q_path[1],
            }),
        _ => return Err(Error::Precondition(format!("no property (E{which})"))),
    })
}

/// All failing properties among (E2)-(E7), one site each.
pub fn violations(ed: &EarDecomposition, g: &Graph) -> Result<Vec<Site>> {
    let mut out = Vec::new();
    for which in 2..=7 {
        if let Some(s) = check_e(ed, g, which, 0)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// One applied rewrite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rewrite {
    pub lemma: &'static str,
    pub case: String,
    pub ears: (usize, usize),
    pub trivial_delta: i64,
}

impl fmt::Display for Rewrite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "apply {} case {} ears {},{} trivial_delta {}",
            self.lemma, self.case, self.ears.0, self.ears.1, self.trivial_delta
        )
    }
}

pub fn format_rewrites(log: &[Rewrite]) -> String {
    log.iter().map(|r| format!("{r}\n")).collect()
}

/// Counts of 3-ears: pendant (`a`) and nonpendant by the length of the
/// first attached nontrivial ear (2, 3, 4, at least 5).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub e: usize,
    /// Even ears.
    pub phi: usize,
}

pub fn annotate(ed: &EarDecomposition, g: &Graph) -> Counts {
    let view = View::new(g, ed);
    let mut c = Counts {
        phi: count_even_ears(ed),
        ..Counts::default()
    };
    for (i, ear) in ed.nontrivial() {
        if ear.len() != 3 {
            continue;
        }
        match view.idx.first_attached(i).map(|q| view.ear(q).len()) {
            None => c.a += 1,
            Some(2) => c.b += 1,
            Some(3) => c.c += 1,
            Some(4) => c.d += 1,
            Some(_) => c.e += 1,
        }
    }
    c
}

/// Rebuilds a decomposition from its nontrivial ears and validates it.
pub(crate) fn rebuild(g: &Graph, base: usize, nontrivial: Vec<Ear>, what: &str) -> Result<EarDecomposition> {
    let ed = append_trivial(g, base, nontrivial);
    validate(&ed, g).map_err(|v| Error::Internal(format!("{what}: {v}")))?;
    Ok(ed)
}

/// Nontrivial ears as an owned list.
pub(crate) fn nontrivial_ears(ed: &EarDecomposition) -> Vec<Ear> {
    ed.ears.iter().filter(|e| !e.is_trivial()).cloned().collect()
}

pub(crate) fn record(
    log: &mut Vec<Rewrite>,
    lemma: &'static str,
    case: impl Into<String>,
    ears: (usize, usize),
    before: &EarDecomposition,
    after: &EarDecomposition,
) {
    log.push(Rewrite {
        lemma,
        case: case.into(),
        ears,
        trivial_delta: after.trivial_count() as i64 - before.trivial_count() as i64,
    });
}
