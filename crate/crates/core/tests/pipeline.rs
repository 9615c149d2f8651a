use twovc_core::bounds::Chain;
use twovc_core::instances::{gen_random_2connected, gen_tight};
use twovc_core::redundancy::reduce_to_property_p;
use twovc_core::restructure::{run_pipeline, violations, PipelineOptions};
use twovc_core::{Backend, Graph};

fn check_result(g: &Graph, opts: &PipelineOptions) -> usize {
    let r = run_pipeline(g, opts).unwrap();
    assert!(violations(&r.decomposition, g).unwrap().is_empty());
    let c = r.counts;
    assert!(2 * c.a + 3 * c.b + 2 * c.c + 5 * c.d + 6 * c.e < g.n(), "{c:?}");
    let h = g.spanning_subgraph(&r.subgraph).unwrap();
    assert!(h.is_two_connected());
    assert_eq!(c.phi, r.initial_even);
    let chain = Chain::compute(&r.decomposition, g, None);
    assert!(chain.holds(), "{chain:?}");
    r.subgraph.len()
}

#[test]
fn random_exact() {
    for seed in 0..300 {
        let n = 4 + (seed as usize % 9);
        let g = gen_random_2connected(n, seed as usize % 4, seed).unwrap();
        let (gbar, _) = reduce_to_property_p(&g).unwrap();
        check_result(&gbar, &PipelineOptions::default());
    }
}

#[test]
fn random_heuristic_larger() {
    for seed in 0..40 {
        let n = 20 + (seed as usize % 40);
        let g = gen_random_2connected(n, seed as usize % 7, seed).unwrap();
        let (gbar, _) = reduce_to_property_p(&g).unwrap();
        let opts = PipelineOptions {
            backend: Backend::Heuristic,
            ..Default::default()
        };
        check_result(&gbar, &opts);
    }
}

#[test]
fn tight_family_seeded_and_scratch() {
    for k in 1..=5 {
        let inst = gen_tight(k).unwrap();
        let g = &inst.graph;
        let seeded = PipelineOptions {
            initial: inst.reference.clone(),
            ..Default::default()
        };
        assert_eq!(check_result(g, &seeded), 20 * k + 5);
        let opts = PipelineOptions {
            backend: Backend::Heuristic,
            ..Default::default()
        };
        assert!(check_result(g, &opts) <= 20 * k + 5);
    }
}
