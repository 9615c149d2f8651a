//! Lower bounds on OPT and the accounting that compares them with the
//! size of the output.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::ear::{EarDecomposition, EarIndex};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::restructure::{annotate, Counts};

pub type Q = Ratio<i128>;

pub fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

fn qi(n: usize) -> Q {
    Q::from_integer(n as i128)
}

/// `n - 1 + phi`. Only a lower bound when `phi` is exact.
pub fn bound_phi(g: &Graph, phi: usize) -> usize {
    g.n() - 1 + phi
}

/// Inner vertices of pendant 3-ears, degree-2 inner vertices of 3-ears,
/// and inner vertices of 2-ears that are the first nontrivial ear
/// attached to a 3-ear. Ascending.
pub fn choose_w(ed: &EarDecomposition, g: &Graph) -> Vec<usize> {
    let idx = EarIndex::new(ed, g.n());
    let mut w = Vec::new();
    for (i, ear) in ed.nontrivial() {
        if ear.len() != 3 {
            continue;
        }
        match idx.first_attached(i) {
            None => w.extend_from_slice(ear.inner()),
            Some(q) => {
                w.extend(ear.inner().iter().filter(|&&u| g.degree(u) == 2));
                if ed.ears[q].len() == 2 {
                    w.extend_from_slice(ed.ears[q].inner());
                }
            }
        }
    }
    w.sort_unstable();
    w.dedup();
    w
}

/// `|W| + q_W` where `q_W` counts the components of `G[W]`.
pub fn bound_garg(g: &Graph, w: &[usize]) -> Result<usize> {
    if w.is_empty() {
        return Ok(0);
    }
    if w.len() >= g.n() {
        return Err(Error::Precondition("W must be a proper subset of V".into()));
    }
    let sub = g.induced_subgraph(w)?;
    Ok(w.len() + sub.graph.connected_components().len())
}

/// Nonpendant 3-ears whose first attached nontrivial ear has length 2 or 3.
pub fn new_bound_witnesses(ed: &EarDecomposition, g: &Graph) -> Vec<usize> {
    let idx = EarIndex::new(ed, g.n());
    ed.nontrivial()
        .filter(|(_, e)| e.len() == 3)
        .filter(|&(i, _)| idx.first_attached(i).is_some_and(|q| matches!(ed.ears[q].len(), 2 | 3)))
        .map(|(i, _)| i)
        .collect()
}

/// `n - 1 + k`, with the `k` qualifying 3-ears.
pub fn bound_new(ed: &EarDecomposition, g: &Graph) -> (usize, Vec<usize>) {
    let ws = new_bound_witnesses(ed, g);
    (g.n() - 1 + ws.len(), ws)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub phi_bound: usize,
    pub phi_exact: bool,
    pub garg_bound: usize,
    pub w: Vec<usize>,
    pub new_bound: usize,
    pub new_witnesses: Vec<usize>,
    pub combined: usize,
}

impl BoundReport {
    pub fn compute(ed: &EarDecomposition, g: &Graph, phi_exact: bool) -> Result<Self> {
        let phi = crate::ear::count_even_ears(ed);
        let phi_bound = bound_phi(g, phi);
        let w = choose_w(ed, g);
        let garg_bound = bound_garg(g, &w)?;
        let (new_bound, new_witnesses) = bound_new(ed, g);
        Ok(BoundReport {
            phi_bound,
            phi_exact,
            garg_bound,
            w,
            new_bound,
            new_witnesses,
            combined: phi_bound.max(garg_bound).max(new_bound),
        })
    }

    /// Largest bound that is valid as a lower bound on OPT.
    pub fn certified(&self) -> usize {
        let phi = if self.phi_exact { self.phi_bound } else { 0 };
        phi.max(self.garg_bound).max(self.new_bound)
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = if self.phi_exact { "exact" } else { "upper" };
        writeln!(f, "phi {} {flag}", self.phi_bound)?;
        let list: Vec<String> = self.w.iter().map(|v| v.to_string()).collect();
        writeln!(f, "garg {} W {}", self.garg_bound, list.join(" "))?;
        writeln!(f, "new {} k {}", self.new_bound, self.new_witnesses.len())?;
        writeln!(f, "combined {}", self.combined)
    }
}

/// `5/4 (n-1) + 3/4 phi + 1/2 (a+b+c+e)`, the bound on the output size.
pub fn star_value(n: usize, c: &Counts) -> Q {
    q(5, 4) * qi(n - 1) + q(3, 4) * qi(c.phi) + q(1, 2) * qi(c.a + c.b + c.c + c.e)
}

/// `max{n-1+phi, 3a+4b+2c+2d+2e, n-1+b+c}`.
pub fn star_star_value(n: usize, c: &Counts) -> usize {
    (n - 1 + c.phi)
        .max(3 * c.a + 4 * c.b + 2 * c.c + 2 * c.d + 2 * c.e)
        .max(n - 1 + c.b + c.c)
}

/// The links of the final chain of inequalities, checked exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub output: usize,
    #[serde(serialize_with = "ser_q")]
    pub star: Q,
    pub star_star: usize,
    pub output_le_star: bool,
    pub star_le_ratio: bool,
    pub star_star_le_opt: Option<bool>,
}

impl Chain {
    pub fn compute(ed: &EarDecomposition, g: &Graph, opt: Option<usize>) -> Chain {
        let c = annotate(ed, g);
        let output = ed.nontrivial_edges().len();
        let star = star_value(g.n(), &c);
        let star_star = star_star_value(g.n(), &c);
        Chain {
            output,
            output_le_star: qi(output) <= star,
            star_le_ratio: star <= q(10, 7) * qi(star_star),
            star_star_le_opt: opt.map(|o| star_star <= o),
            star,
            star_star,
        }
    }

    pub fn holds(&self) -> bool {
        self.output_le_star && self.star_le_ratio && self.star_star_le_opt.unwrap_or(true)
    }
}

pub(crate) fn ser_q<S: serde::Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// One deletion made by [`lemma11_certificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertStep {
    pub ear: usize,
    pub case: &'static str,
    pub edge: Edge,
}

/// Replays the edge-deletion argument behind [`bound_new`]: for each
/// qualifying 3-ear, in reverse ear order, one edge of its first attached
/// ear is deleted from `h`, and the rest must stay connected.
///
/// `ed` must satisfy (E1)-(E7) on a graph with property (P), and `h` must
/// be a 2-connected spanning subgraph of `g`.
pub fn lemma11_certificate(ed: &EarDecomposition, g: &Graph, h: &[Edge]) -> Result<Vec<CertStep>> {
    let mut hg = g.spanning_subgraph(h)?;
    if !hg.is_two_connected() {
        return Err(Error::Precondition("H is not 2-connected".into()));
    }
    let idx = EarIndex::new(ed, g.n());
    let mut steps = Vec::new();
    for i in new_bound_witnesses(ed, g).into_iter().rev() {
        let p = &ed.ears[i];
        let q = idx.first_attached(i).expect("qualifying ears have one");
        let qe = &ed.ears[q];
        let v = if p.inner().contains(&qe.first()) {
            qe.first()
        } else {
            qe.last()
        };
        let qp = qe.oriented_from(v).vertices;
        let (case, edge) = if qp.len() == 3 {
            ("1", Edge::new(qp[1], v))
        } else {
            let (v1, w1, y) = (qp[1], qp[2], qp[3]);
            if !idx.attached[q].is_empty() {
                ("2", Edge::new(v1, v))
            } else if g.degree(w1) == 2 {
                ("3.1", Edge::new(v1, v))
            } else {
                let has = |a: usize, b: usize| hg.has_edge(a, b);
                if has(v, w1) && has(w1, v1) && has(v1, y) {
                    ("3.2.1", Edge::new(w1, v1))
                } else if has(v, v1) && has(v1, w1) && has(w1, y) {
                    ("3.2.2", Edge::new(v1, v))
                } else if has(v, w1) && has(w1, y) && has(y, v1) && has(v1, v) {
                    ("3.2.3", Edge::new(v1, v))
                } else {
                    return Err(Error::InvalidWitness(format!(
                        "ear {q}: H matches none of the subcases at {{{v1},{w1}}}"
                    )));
                }
            }
        };
        if !hg.contains_edge(edge) {
            return Err(Error::InvalidWitness(format!("ear {i}, case {case}: H lacks {edge}")));
        }
        hg.remove_edge(edge)?;
        if !hg.is_connected() {
            return Err(Error::InvalidWitness(format!(
                "ear {i}, case {case}: deleting {edge} disconnects H"
            )));
        }
        steps.push(CertStep { ear: i, case, edge });
    }
    Ok(steps)
}

/// `f(a,b,c,d,e,n,phi)`, exact.
pub fn f_ratio(a: Q, b: Q, c: Q, d: Q, e: Q, n: Q, phi: Q) -> Result<Q> {
    let one = Q::from_integer(1);
    let num = q(5, 4) * (n - one) + q(3, 4) * phi + q(1, 2) * (a + b + c + e);
    let den1 = n - one + phi;
    let den2 = Q::from_integer(3) * a + Q::from_integer(4) * b + Q::from_integer(2) * (c + d + e);
    let den3 = n - one + b + c;
    let den = den1.max(den2).max(den3);
    if den <= Q::from_integer(0) {
        return Err(Error::Precondition("denominator of f is not positive".into()));
    }
    Ok(num / den)
}

fn fi(a: i128, b: i128, c: i128, d: i128, e: i128, n: i128, phi: i128) -> Result<Q> {
    let z = Q::from_integer;
    f_ratio(z(a), z(b), z(c), z(d), z(e), z(n), z(phi))
}

#[derive(Clone, Debug, Serialize)]
pub struct DualConstraint {
    pub name: &'static str,
    #[serde(serialize_with = "ser_q")]
    pub lhs: Q,
    #[serde(serialize_with = "ser_q")]
    pub rhs: Q,
    pub tight: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma107Report {
    pub constraints: Vec<DualConstraint>,
    pub dual_feasible: bool,
    /// Coefficients of `k` and `n - 1` in the dual objective.
    #[serde(serialize_with = "ser_q")]
    pub dual_k: Q,
    #[serde(serialize_with = "ser_q")]
    pub dual_n: Q,
    #[serde(serialize_with = "ser_q")]
    pub attained: Q,
    pub samples: usize,
    #[serde(serialize_with = "ser_q")]
    pub max_seen: Q,
    pub exceed: usize,
}

impl Lemma107Report {
    pub fn ok(&self) -> bool {
        self.dual_feasible
            && self.dual_k == q(4, 7)
            && self.dual_n == q(-3, 14)
            && self.attained == q(10, 7)
            && self.exceed == 0
            && self.max_seen <= q(10, 7)
    }
}

impl fmt::Display for Lemma107Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.constraints {
            writeln!(
                f,
                "dual {} = {} >= {}{}",
                c.name,
                c.lhs,
                c.rhs,
                if c.tight { " tight" } else { "" }
            )?;
        }
        writeln!(f, "dual value {} k + {} (n-1)", self.dual_k, self.dual_n)?;
        writeln!(f, "attained {}", self.attained)?;
        writeln!(f, "samples {} max {} exceed {}", self.samples, self.max_seen, self.exceed)?;
        writeln!(f, "result {}", if self.ok() { "ok" } else { "FAIL" })
    }
}

/// The dual witness `(x, y, z)` checked against its five constraints.
pub fn dual_check() -> Vec<DualConstraint> {
    let (x, y, z) = (q(2, 7), q(2, 7), q(1, 14));
    let one = Q::from_integer(1);
    let zero = Q::from_integer(0);
    let k = |n: i128| Q::from_integer(n);
    [
        ("3y+2z", k(3) * y + k(2) * z, one),
        ("x+4y+3z", x + k(4) * y + k(3) * z, one),
        ("x+2y+2z", x + k(2) * y + k(2) * z, one),
        ("2y+5z", k(2) * y + k(5) * z, zero),
        ("2y+6z", k(2) * y + k(6) * z, one),
    ]
    .into_iter()
    .map(|(name, lhs, rhs)| DualConstraint {
        name,
        tight: lhs == rhs,
        lhs,
        rhs,
    })
    .collect()
}

/// Exact checks of the dual witness and the attaining point, then
/// `samples` random feasible points (the attaining point among them).
pub fn verify_lemma107(samples: usize, seed: u64) -> Result<Lemma107Report> {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    let constraints = dual_check();
    let dual_feasible = constraints.iter().all(|c| c.lhs >= c.rhs);
    let (x, y, z) = (q(2, 7), q(2, 7), q(1, 14));
    // (k-n+1) x + k y + (n-1) z
    let dual_k = x + y;
    let dual_n = z - x;
    let attained = fi(4, 0, 0, 0, 1, 15, 0)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_seen = Q::from_integer(0);
    let mut exceed = 0;
    let ten_sevenths = q(10, 7);
    for s in 0..samples {
        let val = if s == 0 {
            attained
        } else {
            let (pt, n, phi) = sample_point(&mut rng);
            f_ratio(pt[0], pt[1], pt[2], pt[3], pt[4], n, phi)?
        };
        if val > ten_sevenths {
            exceed += 1;
        }
        max_seen = max_seen.max(val);
    }
    Ok(Lemma107Report {
        constraints,
        dual_feasible,
        dual_k,
        dual_n,
        attained,
        samples,
        max_seen,
        exceed,
    })
}

/// A random point with `2a+3b+2c+5d+6e <= n-1`. Half the points are
/// integral; coordinates are zeroed at random to reach the faces.
fn sample_point(rng: &mut impl rand::Rng) -> ([Q; 5], Q, Q) {
    const W: [i128; 5] = [2, 3, 2, 5, 6];
    let integral = rng.gen_bool(0.5);
    let n: i128 = rng.gen_range(2..=400);
    let budget = n - 1;
    let mut pt = [Q::from_integer(0); 5];
    if integral {
        let mut left = budget;
        let mut order = [0usize, 1, 2, 3, 4];
        for i in (1..5).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        for &i in &order {
            if rng.gen_bool(0.4) {
                continue;
            }
            let v = rng.gen_range(0..=left / W[i]);
            pt[i] = Q::from_integer(v);
            left -= v * W[i];
        }
        let phi = Q::from_integer(rng.gen_range(0..=budget));
        (pt, Q::from_integer(n), if rng.gen_bool(0.5) { Q::from_integer(0) } else { phi })
    } else {
        let den: i128 = rng.gen_range(1..=24);
        let mut raw = [0i128; 5];
        for r in raw.iter_mut() {
            if rng.gen_bool(0.6) {
                *r = rng.gen_range(0..=den);
            }
        }
        let load: i128 = raw.iter().zip(W).map(|(r, w)| r * w).sum();
        let fill = q(rng.gen_range(1..=den), den);
        if load > 0 {
            for i in 0..5 {
                pt[i] = Q::from_integer(raw[i] * budget) / Q::from_integer(load) * fill;
            }
        }
        let phi = if rng.gen_bool(0.5) {
            Q::from_integer(0)
        } else {
            q(rng.gen_range(0..=den * budget), den)
        };
        (pt, Q::from_integer(n), phi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ear::Ear;

    #[test]
    fn f_examples() {
        assert_eq!(fi(4, 0, 0, 0, 1, 15, 0).unwrap(), q(10, 7));
        for n in 2..30 {
            assert_eq!(fi(0, 0, 0, 0, 0, n, 0).unwrap(), q(5, 4));
            for phi in 0..10 {
                assert!(fi(0, 0, 0, 0, 0, n, phi).unwrap() <= q(5, 4));
            }
        }
        assert!(fi(0, 0, 0, 0, 0, 1, 0).is_err());
    }

    #[test]
    fn dual_witness() {
        let cs = dual_check();
        assert!(cs.iter().all(|c| c.lhs >= c.rhs));
        let tight: Vec<_> = cs.iter().filter(|c| c.tight).map(|c| c.name).collect();
        assert_eq!(tight, ["3y+2z", "x+2y+2z", "2y+6z"]);
        assert_eq!(cs[0].lhs, q(6, 7) + q(2, 14));
    }

    #[test]
    fn lemma107_sampled() {
        let r = verify_lemma107(20_000, 7).unwrap();
        assert!(r.ok(), "{r}");
        assert_eq!(r.max_seen, q(10, 7));
    }

    #[test]
    fn bounds_on_cycle() {
        let g = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let ed = EarDecomposition::new(0, vec![Ear::new(vec![0, 1, 2, 3, 4, 0])]);
        let r = BoundReport::compute(&ed, &g, true).unwrap();
        assert_eq!((r.phi_bound, r.garg_bound, r.new_bound, r.combined), (4, 0, 4, 4));
        assert_eq!(r.to_string(), "phi 4 exact\ngarg 0 W \nnew 4 k 0\ncombined 4\n");
        assert_eq!(bound_garg(&g, &[2]).unwrap(), 2);
        assert!(bound_garg(&g, &[0, 1, 2, 3, 4]).is_err());
    }

    #[test]
    fn three_ear_with_two_ear() {
        // 4-cycle 0-1-2-3, 3-ear 0-4-5-2, 2-ear 4-6-2
        let g = Graph::from_edges(
            7,
            [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 2), (4, 6), (6, 2)],
        )
        .unwrap();
        let ed = EarDecomposition::new(
            0,
            vec![
                Ear::new(vec![0, 1, 2, 3, 0]),
                Ear::new(vec![0, 4, 5, 2]),
                Ear::new(vec![4, 6, 2]),
            ],
        );
        crate::ear::validate(&ed, &g).unwrap();
        assert_eq!(choose_w(&ed, &g), vec![5, 6]);
        assert_eq!(bound_garg(&g, &choose_w(&ed, &g)).unwrap(), 4);
        assert_eq!(bound_new(&ed, &g), (7, vec![1]));
        let steps = lemma11_certificate(&ed, &g, &g.edge_vec()).unwrap();
        assert_eq!(steps[0].case, "1");
        assert_eq!(steps[0].edge, Edge::new(4, 6));
    }
}
