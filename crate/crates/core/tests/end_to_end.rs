//! Whole-pipeline checks against exhaustive enumeration and known graphs.

use proptest::prelude::*;
use wca_core::exclusion::build_exclusion_set;
use wca_core::graph::{builtin_graph, parse_graph6, to_graph6, Builtin, DirectedGraph};
use wca_core::model::{total_inducers, ExclusionSet, Inducer};
use wca_core::oracle::{enumerate_hamilton_cycles, exact_closure, perm_of};
use wca_core::wca::{decide, decide_with_sets, exclusion_stats, verify_cycle, Reason, SolverConfig, Stage, Verdict};

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

#[test]
fn petersen_end_to_end() {
    let g = builtin_graph(Builtin::Petersen).unwrap();
    let stats = exclusion_stats(&g).unwrap();
    assert_eq!((stats.p_free, stats.q_free, stats.e_size), (57, 858, 1734));
    let r = decide(&g, &cfg()).unwrap();
    assert_eq!(r.decision.verdict, Verdict::NonHamiltonian);
    assert_eq!(r.e_tilde_size, total_inducers(9));
    assert_eq!(r.initial_counts.p, 57);
}

#[test]
fn petersen_survives_graph6_round_trip() {
    let g = builtin_graph(Builtin::Petersen).unwrap();
    let text = to_graph6(&g).unwrap();
    assert_eq!(parse_graph6(&text).unwrap(), g);
}

#[test]
fn herschel_fails_before_any_probe() {
    let g = builtin_graph(Builtin::Herschel).unwrap();
    let r = decide(&g, &cfg()).unwrap();
    assert_eq!(r.decision.verdict, Verdict::NonHamiltonian);
    assert_eq!(r.decision.stage, Stage::InitialFeasibility);
    assert_eq!(r.probes, 0);
}

#[test]
fn adding_an_edge_to_petersen_is_never_refuted() {
    let g = builtin_graph(Builtin::PetersenPlusEdge).unwrap();
    let r = decide(&g, &cfg()).unwrap();
    assert_ne!(r.decision.verdict, Verdict::NonHamiltonian);
    if let Some(p) = &r.decision.witness {
        assert!(verify_cycle(p, &g));
    }
}

#[test]
fn the_start_vertex_is_a_relabelling() {
    let g = builtin_graph(Builtin::Petersen).unwrap();
    for s in 1..=g.order() {
        let h = g.relabel_as_start(s).unwrap();
        assert_eq!(
            decide(&h, &cfg()).unwrap().decision.verdict,
            Verdict::NonHamiltonian,
            "start {s}"
        );
    }
}

#[test]
fn seeding_every_inducer_decides_at_once() {
    let g = DirectedGraph::complete(4).unwrap();
    let cfg = SolverConfig {
        seed_exclusions: Some(ExclusionSet::all(3)),
        ..cfg()
    };
    let r = decide(&g, &cfg).unwrap();
    assert_eq!(r.decision.verdict, Verdict::NonHamiltonian);
    assert_eq!(r.decision.reason, Reason::ExclusionClosedAllInducers);
    assert_eq!(r.probes, 0);
}

#[test]
fn a_single_inducer_blocks_its_own_permutations() {
    // for n = 3 only the identity pins both 1 -> 1 and 2 -> 2
    let mut e = ExclusionSet::new();
    e.insert(Inducer::new(1, 1, 2, 2).unwrap());
    assert_eq!(perm_of(&e, 3).unwrap().len(), 1);
    assert!(exact_closure(&ExclusionSet::new(), 3).unwrap().e_bar.is_empty());
}

#[test]
fn directed_cycle_complement_is_its_own_inducers() {
    let g = builtin_graph(Builtin::Cycle(5)).unwrap();
    let closure = exact_closure(&build_exclusion_set(&g), 4).unwrap();
    assert_eq!(closure.e_bar_complement.len(), 4 * 3 / 2);
    assert_eq!(decide(&g, &cfg()).unwrap().decision.verdict, Verdict::Hamiltonian);
}

/// Random strongly connected digraphs of order 4..=7.
fn small_digraph() -> impl Strategy<Value = DirectedGraph> {
    (4usize..=7)
        .prop_flat_map(|k| (Just(k), proptest::collection::vec(any::<bool>(), k * (k - 1))))
        .prop_filter_map("strongly connected", |(k, bits)| {
            let arcs = (1..=k)
                .flat_map(|u| (1..=k).filter(move |&v| v != u).map(move |v| (u, v)))
                .zip(bits)
                .filter_map(|(arc, keep)| keep.then_some(arc));
            let g = DirectedGraph::from_arcs(k, arcs).ok()?;
            g.is_strongly_connected().then_some(g)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verdicts_agree_with_enumeration(g in small_digraph()) {
        let cycles = enumerate_hamilton_cycles(&g).unwrap();
        let (r, sets) = decide_with_sets(&g, &cfg()).unwrap();
        match r.decision.verdict {
            Verdict::NonHamiltonian => prop_assert!(cycles.is_empty()),
            Verdict::Hamiltonian => {
                let p = r.decision.witness.as_ref().unwrap();
                prop_assert!(verify_cycle(p, &g) && cycles.contains(p));
            }
            Verdict::Undecided => {}
        }
        let e = build_exclusion_set(&g);
        let e_bar = exact_closure(&e, g.model_size()).unwrap().e_bar;
        prop_assert!(e.is_subset(&sets.e_tilde));
        prop_assert!(sets.e_tilde.is_subset(&e_bar));
    }
}
