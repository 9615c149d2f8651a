//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so the lines are always visible; exits non-zero on any failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twovc_core::bounds::{bound_phi, dual_check, f_ratio, q, verify_lemma107, Chain, Q};
use twovc_core::ear::{count_even_ears, validate};
use twovc_core::instances::{gen_ear_configuration, gen_fig1, gen_fig8, gen_random_2connected, gen_tight, gen_vv};
use twovc_core::oracle::{find_betas, l_d2_from_two_factor, opt_exact, opt_exact_with_limit};
use twovc_core::phi::phi_exact;
use twovc_core::redundancy::{check_property_p, find_patterns, is_redundant, reduce_to_property_p};
use twovc_core::restructure::{enforce_e2, enforce_e3, enforce_e4, enforce_e567, violations, PipelineOptions, Site};
use twovc_core::solve::solve;
use twovc_core::verify::verify_subgraph;
use twovc_core::{Backend, EarDecomposition, Edge, Graph};

const TIGHT_K: std::ops::RangeInclusive<usize> = 1..=5;
const TIGHT_SECONDS: f64 = 5.0;
const RATIO_SEEDS: std::ops::RangeInclusive<u64> = 1..=500;
const RATIO_MAX_N: usize = 9;
const RATIO_SECONDS: f64 = 600.0;
const LEMMA_SAMPLES: usize = 1_000_000;
const LEMMA_SECONDS: f64 = 60.0;
const CONFIGURATIONS: usize = 10_000;
const PATTERN_HOSTS: usize = 200;
const VV_K: std::ops::RangeInclusive<usize> = 1..=13;
const SCALING_SIZES: [usize; 3] = [100, 200, 400];
const SCALING_RUNS: u64 = 7;
/// Allowed slack over cubic growth.
const CUBIC_SLACK: f64 = 2.0;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ratio(a: usize, b: usize) -> Q {
    Q::new(a as i128, b as i128)
}

fn is_hamiltonian_cycle(g: &Graph, order: &[usize]) -> bool {
    let distinct: BTreeSet<_> = order.iter().collect();
    order.len() == g.n()
        && distinct.len() == g.n()
        && (0..order.len()).all(|i| g.has_edge(order[i], order[(i + 1) % order.len()]))
}

fn tight_family() -> Outcome {
    let mut detail = Vec::new();
    for k in TIGHT_K {
        let inst = gen_tight(k).map_err(|e| e.to_string())?;
        let g = &inst.graph;
        let target = 20 * k + 5;

        let start = Instant::now();
        let seeded = PipelineOptions {
            initial: inst.reference.clone(),
            ..Default::default()
        };
        let r = solve(g, &seeded).map_err(|e| e.to_string())?;
        let secs = start.elapsed().as_secs_f64();
        ensure(verify_subgraph(g, &r.edges).map_err(|e| e.to_string())?.ok(), || {
            format!("k={k}: seeded output not 2-connected")
        })?;
        ensure(r.edge_count == target, || format!("k={k}: seeded {} edges", r.edge_count))?;
        ensure(secs < TIGHT_SECONDS, || format!("k={k}: seeded run took {secs:.2}s"))?;

        let start = Instant::now();
        let scratch = PipelineOptions {
            backend: Backend::Heuristic,
            ..Default::default()
        };
        let s = solve(g, &scratch).map_err(|e| e.to_string())?;
        let secs = start.elapsed().as_secs_f64();
        ensure(verify_subgraph(g, &s.edges).map_err(|e| e.to_string())?.ok(), || {
            format!("k={k}: scratch output not 2-connected")
        })?;
        ensure(s.edge_count <= target, || format!("k={k}: scratch {} edges", s.edge_count))?;
        ensure(secs < TIGHT_SECONDS, || format!("k={k}: scratch run took {secs:.2}s"))?;

        let ham = inst.hamiltonian.as_ref().ok_or("no Hamiltonian cycle")?;
        ensure(is_hamiltonian_cycle(g, ham) && ham.len() == 14 * k + 5, || {
            format!("k={k}: bad Hamiltonian cycle")
        })?;
        // any 2-connected spanning subgraph has at least n edges
        let measured = ratio(r.edge_count, ham.len());
        ensure(measured == ratio(20 * k + 5, 14 * k + 5), || format!("k={k}: ratio {measured}"))?;
        detail.push(format!("{measured}"));
    }
    Ok(format!("ratios {}", detail.join(" ")))
}

/// Small random corpus shared by the ratio and bound criteria.
fn small_corpus() -> impl Iterator<Item = (u64, Graph)> {
    RATIO_SEEDS.map(|seed| {
        let n = 3 + (seed as usize % (RATIO_MAX_N - 2));
        let extra = seed as usize % 5;
        (seed, gen_random_2connected(n, extra, seed).expect("generator"))
    })
}

fn ratio_guarantee() -> Outcome {
    let start = Instant::now();
    let mut worst = Q::from_integer(0);
    let mut count = 0;
    for (seed, g) in small_corpus() {
        let opt = opt_exact(&g).map_err(|e| e.to_string())?.value;
        let r = solve(&g, &PipelineOptions::default()).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(verify_subgraph(&g, &r.edges).map_err(|e| e.to_string())?.ok(), || {
            format!("seed {seed}: output not 2-connected")
        })?;
        let got = ratio(r.edge_count, opt);
        ensure(got <= q(10, 7), || format!("seed {seed}: ratio {got}"))?;
        let chain = Chain::compute(&r.decomposition, &r.reduced, Some(opt));
        ensure(chain.output == r.edge_count && chain.holds(), || {
            format!("seed {seed}: chain {chain:?} opt {opt}")
        })?;
        worst = worst.max(got);
        count += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < RATIO_SECONDS, || format!("took {secs:.1}s"))?;
    Ok(format!("{count} graphs, worst ratio {worst}, {secs:.1}s"))
}

fn bound_soundness() -> Outcome {
    let mut count = 0;
    for (seed, g) in small_corpus() {
        let opt = opt_exact(&g).map_err(|e| e.to_string())?.value;
        let phi = phi_exact(&g).map_err(|e| e.to_string())?;
        ensure(bound_phi(&g, phi) <= opt, || format!("seed {seed}: phi bound on the input"))?;
        let r = solve(&g, &PipelineOptions::default()).map_err(|e| format!("seed {seed}: {e}"))?;
        let b = &r.bounds;
        ensure(b.phi_exact, || format!("seed {seed}: phi not exact"))?;
        for (name, v) in [("phi", b.phi_bound), ("garg", b.garg_bound), ("new", b.new_bound)] {
            ensure(v <= opt, || format!("seed {seed}: {name} bound {v} > opt {opt}"))?;
        }
        count += 1;
    }
    Ok(format!("{count} graphs, 0 violations"))
}

fn lemma_certificate() -> Outcome {
    let start = Instant::now();
    // dual witness and constraint rows evaluated here from scratch
    let (x, y, z) = (q(2, 7), q(2, 7), q(1, 14));
    let rows: [(&str, [i128; 3], i128); 5] = [
        ("3y+2z", [0, 3, 2], 1),
        ("x+4y+3z", [1, 4, 3], 1),
        ("x+2y+2z", [1, 2, 2], 1),
        ("2y+5z", [0, 2, 5], 0),
        ("2y+6z", [0, 2, 6], 1),
    ];
    let cons = dual_check();
    ensure(cons.len() == rows.len(), || format!("{} constraints", cons.len()))?;
    let mut tight = BTreeSet::new();
    for ((name, c, rhs), got) in rows.iter().zip(&cons) {
        let lhs = x * Q::from_integer(c[0]) + y * Q::from_integer(c[1]) + z * Q::from_integer(c[2]);
        let rhs = Q::from_integer(*rhs);
        ensure(got.name == *name && got.lhs == lhs && got.rhs == rhs, || format!("row {name}: {got:?}"))?;
        ensure(lhs >= rhs, || format!("{name} violated"))?;
        if lhs == rhs {
            ensure(lhs == q(1, 1), || format!("{name} tight at {lhs}"))?;
            tight.insert(*name);
        }
        ensure(got.tight == (lhs == rhs), || format!("{name}: tight flag"))?;
    }
    let want: BTreeSet<&str> = ["3y+2z", "x+2y+2z", "2y+6z"].into_iter().collect();
    ensure(tight == want, || format!("tight set {tight:?}"))?;
    let o = Q::from_integer(0);
    let i = |v: i128| Q::from_integer(v);
    let at = f_ratio(i(4), o, o, o, i(1), i(15), o).map_err(|e| e.to_string())?;
    ensure(at == q(10, 7), || format!("f = {at}"))?;
    let r = verify_lemma107(LEMMA_SAMPLES, 7).map_err(|e| e.to_string())?;
    ensure(r.ok() && r.exceed == 0 && r.samples == LEMMA_SAMPLES, || format!("{r}"))?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < LEMMA_SECONDS, || format!("took {secs:.1}s"))?;
    Ok(format!("{} samples, max {}, {secs:.1}s", r.samples, r.max_seen))
}

fn rewrite_properties() -> Outcome {
    let mut cases = BTreeSet::new();
    let mut configs = 0;
    let mut applications = 0;
    let mut seed = 0u64;
    while configs < CONFIGURATIONS {
        seed += 1;
        let n = 8 + (seed as usize % 23);
        let Some((g, ed)) = gen_ear_configuration(n, seed).map_err(|e| e.to_string())? else {
            continue;
        };
        if violations(&ed, &g).map_err(|e| e.to_string())?.is_empty() {
            continue;
        }
        configs += 1;
        let even = count_even_ears(&ed);
        let mut ed = ed;
        let mut log = Vec::new();
        loop {
            let v = violations(&ed, &g).map_err(|e| e.to_string())?;
            let Some(site) = v.first() else { break };
            let before = ed.trivial_count();
            let (next, e567) = match site {
                Site::E2 { .. } => (enforce_e2(&ed, &g, &mut log), false),
                Site::E3 { .. } => (enforce_e3(&ed, &g, &mut log), false),
                Site::E4 { .. } => (enforce_e4(&ed, &g, &mut log), false),
                _ => (enforce_e567(&ed, &g, &mut log, None), true),
            };
            // the default budget is n - 1 idle steps; exceeding it is an error
            let next = next.map_err(|e| format!("seed {seed}: {site}: {e}"))?;
            applications += 1;
            validate(&next, &g).map_err(|e| format!("seed {seed}: invalid after {site}: {e}"))?;
            ensure(next.is_open(), || format!("seed {seed}: closed ear after {site}"))?;
            ensure(count_even_ears(&next) == even, || format!("seed {seed}: even count changed at {site}"))?;
            let after = next.trivial_count();
            if e567 {
                ensure(after >= before, || format!("seed {seed}: trivial ears dropped at {site}"))?;
            } else {
                ensure(after == before + 1, || format!("seed {seed}: trivial {before} -> {after} at {site}"))?;
            }
            ensure(applications < 100 * CONFIGURATIONS, || "no termination".into())?;
            ed = next;
        }
        cases.extend(log.iter().map(|r| format!("{} {}", r.lemma, r.case)));
    }
    let required = [
        "L4 1", "L4 3.1", "L4 3.2", "L4 3.3", "L4 3.4", "L4 3.5", "L5 a", "L5 b", "L5 c", "L6 1.1", "L6 1.2",
        "L6 2.1", "L6 2.2", "L7 step1", "L7 step2.1", "L7 step2.2", "L7 step2.3", "L7 step3",
    ];
    let missing: Vec<_> = required.iter().filter(|c| !cases.contains(**c)).collect();
    ensure(missing.is_empty(), || format!("cases never exercised: {missing:?}"))?;
    Ok(format!("{configs} configurations, {applications} rewrites, {} cases", cases.len()))
}

/// Random 2-connected host on at most nine vertices; every other one has
/// the two-ear pattern planted.
fn pattern_host(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if seed.is_multiple_of(2) {
        let n = rng.gen_range(5..=9);
        return gen_random_2connected(n, rng.gen_range(0..4), seed).expect("generator");
    }
    let base = rng.gen_range(3..=7);
    let h = gen_random_2connected(base, rng.gen_range(0..3), seed).expect("generator");
    let edges = h.edge_vec();
    let f = edges[rng.gen_range(0..edges.len())];
    let others: Vec<usize> = (0..base).filter(|&v| !f.contains(v)).collect();
    let c = others[rng.gen_range(0..others.len())];
    let mut g = Graph::new(base + 2);
    for e in edges {
        g.add_edge(e.0, e.1).unwrap();
    }
    let (a, b) = (base, base + 1);
    for (u, v) in [(a, c), (a, f.0), (b, c), (b, f.1)] {
        g.add_edge(u, v).unwrap();
    }
    g
}

fn redundancy() -> Outcome {
    let mut hosts = 0;
    let mut checked = 0;
    let mut redundant = 0;
    let mut seed = 0;
    while hosts < PATTERN_HOSTS {
        seed += 1;
        let g = pattern_host(seed);
        let patterns = find_patterns(&g);
        if patterns.is_empty() {
            continue;
        }
        hosts += 1;
        let opt = opt_exact(&g).map_err(|e| e.to_string())?.value;
        for w in patterns {
            let claim = is_redundant(&g, &w).map_err(|e| e.to_string())?;
            let h = g.delete_edge(w.f()).map_err(|e| e.to_string())?;
            let truth = h.is_two_connected() && opt_exact(&h).map_err(|e| e.to_string())?.value == opt;
            ensure(claim == truth, || format!("seed {seed}: {w} claimed {claim}, oracle {truth}"))?;
            checked += 1;
            redundant += truth as usize;
        }
        let (reduced, _) = reduce_to_property_p(&g).map_err(|e| e.to_string())?;
        let after = opt_exact(&reduced).map_err(|e| e.to_string())?.value;
        ensure(after == opt, || format!("seed {seed}: reduction changed opt {opt} -> {after}"))?;
    }
    let fig1 = gen_fig1().map_err(|e| e.to_string())?;
    let (reduced, log) = reduce_to_property_p(&fig1.graph).map_err(|e| e.to_string())?;
    ensure(log.is_empty() && reduced.m() == fig1.graph.m(), || "fig1 reduced".into())?;
    ensure(check_property_p(&fig1.graph).map_err(|e| e.to_string())?.is_none(), || {
        "fig1 violates (P)".into()
    })?;
    Ok(format!("{hosts} hosts, {checked} patterns ({redundant} redundant), fig1 fixed"))
}

fn vv_family() -> Outcome {
    for k in VV_K {
        let inst = gen_vv(k).map_err(|e| e.to_string())?;
        let g = &inst.graph;
        ensure(g.n() == 5 * k + 3 && g.is_two_connected(), || format!("k={k}: size or connectivity"))?;
        ensure(find_betas(g).is_empty(), || format!("k={k}: beta found"))?;
        ensure(
            g.edges().all(|e| g.degree(e.0) != 2 || g.degree(e.1) != 2),
            || format!("k={k}: adjacent degree-2 vertices"),
        )?;
        let factor: &[Edge] = inst.two_factor.as_deref().ok_or("no two-factor")?;
        let l = l_d2_from_two_factor(g, factor).map_err(|e| e.to_string())?;
        ensure(l == 5 * k + 3, || format!("k={k}: L_D2 {l}"))?;
    }
    let g2 = gen_vv(2).map_err(|e| e.to_string())?.graph;
    let opt2 = opt_exact_with_limit(&g2, g2.n()).map_err(|e| e.to_string())?.value;
    ensure(opt2 >= 14, || format!("opt(vv:2) = {opt2}"))?;
    for k in 1..=20i128 {
        let above = Q::new(7 * k, 5 * k + 3) > q(4, 3);
        ensure(above == (k > 12), || format!("symbolic check at k={k}"))?;
    }
    Ok(format!("k=1..13 self-checks, opt(vv:2) = {opt2}"))
}

fn fig8_scope() -> Outcome {
    let inst = gen_fig8().map_err(|e| e.to_string())?;
    let g = &inst.graph;
    let ed: &EarDecomposition = inst.reference.as_ref().ok_or("no reference")?;
    let (new_bound, _) = twovc_core::bounds::bound_new(ed, g);
    ensure(new_bound == 21, || format!("new bound {new_bound}"))?;
    let solid = inst.classes.get("solid").ok_or("no solid class")?;
    let r = verify_subgraph(g, solid).map_err(|e| e.to_string())?;
    ensure(solid.len() == 20, || format!("{} solid edges", solid.len()))?;
    ensure(r.two_edge_connected && !r.two_connected, || format!("{r:?}"))?;
    Ok(format!("new bound 21 > 20 solid edges, which are 2EC but {}", r.problem.unwrap_or_default()))
}

fn median(mut v: Vec<Duration>) -> f64 {
    v.sort();
    v[v.len() / 2].as_secs_f64()
}

fn scaling() -> Outcome {
    let opts = PipelineOptions {
        backend: Backend::Heuristic,
        ..Default::default()
    };
    let mut medians = Vec::new();
    for n in SCALING_SIZES {
        let mut times = Vec::new();
        for seed in 0..SCALING_RUNS {
            let g = gen_random_2connected(n, n / 10, 1000 + seed).map_err(|e| e.to_string())?;
            let start = Instant::now();
            let r = solve(&g, &opts).map_err(|e| e.to_string())?;
            times.push(start.elapsed());
            ensure(verify_subgraph(&g, &r.edges).map_err(|e| e.to_string())?.ok(), || {
                format!("n={n}: output not 2-connected")
            })?;
        }
        medians.push(median(times));
    }
    let growth = medians[2] / medians[0];
    let cubic = (SCALING_SIZES[2] as f64 / SCALING_SIZES[0] as f64).powi(3);
    ensure(growth <= CUBIC_SLACK * cubic, || format!("t(400)/t(100) = {growth:.1}"))?;
    Ok(format!(
        "medians {:.1}/{:.1}/{:.1} ms, growth {growth:.1} <= {}",
        medians[0] * 1e3,
        medians[1] * 1e3,
        medians[2] * 1e3,
        CUBIC_SLACK * cubic
    ))
}

fn run(name: &str, f: fn() -> Outcome) -> (String, bool) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panic: {msg}"))
    });
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(d) => (format!("PASS {name}: {d} [{secs:.1}s]"), true),
        Err(d) => (format!("FAIL {name}: {d} [{secs:.1}s]"), false),
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 tight family", tight_family),
        ("2 ratio guarantee", ratio_guarantee),
        ("3 lower bounds", bound_soundness),
        ("4 ratio lemma certificate", lemma_certificate),
        ("5 rewrite properties", rewrite_properties),
        ("6 redundancy", redundancy),
        ("7 two-factor counterexample", vv_family),
        ("8 2EC scope", fig8_scope),
    ];
    let mut results: Vec<(String, bool)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria.iter().map(|&(name, f)| s.spawn(move || run(name, f))).collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    // timed alone so the other criteria do not skew it
    results.push(run("9 scaling", scaling));
    let mut ok = true;
    for (line, pass) in &results {
        println!("{line}");
        ok &= pass;
    }
    if !ok {
        std::process::exit(1);
    }
}
