use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::exclusion::{apply_exclusion, build_exclusion_set};
use crate::graph::{builtin_graph, Builtin, DirectedGraph};

fn coded(g: &DirectedGraph) -> VarLattice {
    let mut lat = VarLattice::new(g.model_size()).unwrap();
    assert!(apply_exclusion(&build_exclusion_set(g), &mut lat).unwrap());
    lat
}

fn ind(u: usize, i: usize, v: usize, j: usize) -> Inducer {
    Inducer::new(u, i, v, j).unwrap()
}

/// A lattice with `zeros` random q cells set to Zero, unpropagated.
fn random_lattice(rng: &mut ChaCha8Rng, n: usize, zeros: usize) -> VarLattice {
    let mut lat = VarLattice::new(n).unwrap();
    for _ in 0..zeros {
        let q = rng.gen_range(0..lat.geo.nq);
        let id = lat.geo.np + q;
        lat.set(id, VarState::Zero);
    }
    lat
}

#[test]
fn fresh_lattice_is_a_fixpoint() {
    let mut lat = VarLattice::new(4).unwrap();
    let out = propagate(&mut lat);
    assert!(out.is_consistent());
    assert!(out.changed.is_empty());
}

#[test]
fn unit_p_clears_its_row_and_column() {
    let mut lat = VarLattice::new(3).unwrap();
    lat.assign(Cell::P { u: 1, i: 1 }, VarState::One).unwrap();
    assert!(propagate(&mut lat).is_consistent());
    for k in 2..=3 {
        assert_eq!(lat.p(1, k).unwrap(), VarState::Zero);
        assert_eq!(lat.p(k, 1).unwrap(), VarState::Zero);
    }
}

#[test]
fn empty_p_row_is_a_contradiction() {
    let mut lat = VarLattice::new(3).unwrap();
    for i in 1..=3 {
        lat.assign(Cell::P { u: 2, i }, VarState::Zero).unwrap();
    }
    assert_eq!(propagate(&mut lat).status, Status::Contradiction);
    assert!(lat.is_contradicted());
}

#[test]
fn q_one_pins_the_rest_for_three() {
    let mut lat = VarLattice::new(3).unwrap();
    let out = assign_q_one(&mut lat, &ind(1, 1, 2, 2)).unwrap();
    assert!(out.is_consistent());
    assert!(lat.is_complete());
    assert_eq!(lat.p(3, 3).unwrap(), VarState::One);
    assert_eq!(integer_solution(&lat).unwrap(), PermutationMatrix::identity(3));

    let again = assign_q_one(&mut lat, &ind(1, 1, 2, 2)).unwrap();
    assert!(again.is_consistent());
    assert!(again.changed.is_empty());
}

#[test]
fn q_one_on_zero_cell_is_rejected() {
    let mut lat = VarLattice::new(3).unwrap();
    lat.assign(Cell::Q(ind(1, 1, 2, 2)), VarState::Zero).unwrap();
    assert!(matches!(
        assign_q_one(&mut lat, &ind(1, 1, 2, 2)),
        Err(Error::CellAlreadyZero(_))
    ));
}

#[test]
fn probe_leaves_lattice_unchanged() {
    let g = builtin_graph(Builtin::Complete(5)).unwrap();
    let mut lat = coded(&g);
    let before = lat.cells.clone();
    for bit in [true, false] {
        assert_eq!(probe(&mut lat, &ind(1, 1, 2, 2), bit).unwrap(), ProbeResult::Possible);
        assert_eq!(lat.cells, before);
    }
}

#[test]
fn probe_needs_free_cell() {
    let mut lat = VarLattice::new(3).unwrap();
    lat.assign(Cell::Q(ind(1, 1, 2, 2)), VarState::Zero).unwrap();
    assert!(probe(&mut lat, &ind(1, 1, 2, 2), true).is_err());
}

#[test]
fn petersen_is_consistent_after_coding() {
    let mut lat = coded(&builtin_graph(Builtin::Petersen).unwrap());
    assert!(propagate(&mut lat).is_consistent());
    assert!(match_p(&lat));
    assert_eq!(lat.count_free(), (57, 858));
}

#[test]
fn closure_of_complete_graph_stays_fractional() {
    let mut lat = coded(&builtin_graph(Builtin::Complete(5)).unwrap());
    assert_eq!(implement_closure(&mut lat), ClosureOutcome::FeasibleFractional);
    assert!(WorkingSets::of(&lat).e_tilde.is_empty());
}

#[test]
fn closure_of_single_cycle_is_integer() {
    let g = builtin_graph(Builtin::Cycle(6)).unwrap();
    let mut lat = coded(&g);
    match implement_closure(&mut lat) {
        ClosureOutcome::FeasibleInteger(p) => assert!(crate::wca::verify_cycle(&p, &g)),
        other => panic!("expected an integer outcome, got {other:?}"),
    }
}

#[test]
fn closure_refutes_petersen() {
    let mut lat = coded(&builtin_graph(Builtin::Petersen).unwrap());
    assert_eq!(implement_closure(&mut lat), ClosureOutcome::Infeasible);
}

#[test]
fn literal_and_work_queue_closures_agree() {
    let g = parse("5\n1 2\n2 3\n3 4\n4 5\n5 1\n1 3\n3 5\n2 4");
    let mut a = coded(&g);
    let mut b = a.clone();
    let ra = Engine::new(ClosureConfig {
        restart: RestartMode::Literal,
    })
    .implement_closure(&mut a);
    let rb = Engine::new(ClosureConfig {
        restart: RestartMode::WorkQueue,
    })
    .implement_closure(&mut b);
    assert_eq!(ra, rb);
    assert_eq!(WorkingSets::of(&a), WorkingSets::of(&b));
}

fn parse(text: &str) -> DirectedGraph {
    crate::graph::parse_edge_list(text, true).unwrap()
}

#[test]
fn trace_reports_each_deduction() {
    let g = builtin_graph(Builtin::Petersen).unwrap();
    let mut lat = coded(&g);
    let mut events = Vec::new();
    let mut sink = |e: TraceEvent| events.push(e);
    let mut engine = Engine::new(ClosureConfig::default()).with_trace(&mut sink);
    engine.implement_closure(&mut lat).unwrap();
    let deductions = engine.stats.deductions;
    drop(engine);
    assert_eq!(events.iter().filter(|e| e.via == Via::Probe).count() as u64, deductions);
    assert!(events[0].to_string().contains(" -> "));
}

#[test]
fn budget_interrupts_the_sweep() {
    let mut lat = coded(&builtin_graph(Builtin::Complete(5)).unwrap());
    let res = Engine::new(ClosureConfig::default())
        .with_budget(Some(3))
        .implement_closure(&mut lat);
    assert_eq!(res, Err(Interrupt::ProbeBudget));
}

#[test]
fn rule_order_does_not_change_the_fixpoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let n = rng.gen_range(3..=6);
        let zeros = rng.gen_range(0..VarLattice::new(n).unwrap().geo.nq / 2);
        let base = random_lattice(&mut rng, n, zeros);
        let mut fifo = base.clone();
        let ok = propagate(&mut fifo).is_consistent();
        for _ in 0..5 {
            let mut other = base.clone();
            let mut pick = |k: usize| rng.gen_range(0..k);
            let ok2 = propagate_in_order(&mut other, &mut pick).is_consistent();
            assert_eq!(ok, ok2);
            if ok {
                assert_eq!(fifo.cells, other.cells);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fixpoint_is_locally_consistent(seed in any::<u64>(), n in 3usize..6, frac in 0.0f64..0.6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nq = VarLattice::new(n).unwrap().geo.nq;
        let mut lat = random_lattice(&mut rng, n, (nq as f64 * frac) as usize);
        if propagate(&mut lat).is_consistent() {
            let geo = lat.geo.clone();
            for q in 0..geo.nq {
                let (x, k, y, l) = geo.decode(q);
                let (a, b) = (lat.cells[x * n + k], lat.cells[y * n + l]);
                match lat.cells[geo.np + q] {
                    VarState::One => prop_assert!(a == VarState::One && b == VarState::One),
                    VarState::Free => prop_assert!(a != VarState::Zero && b != VarState::Zero),
                    VarState::Zero => {}
                }
            }
            // propagating again adds nothing
            prop_assert!(propagate(&mut lat).changed.is_empty());
        }
    }

    #[test]
    fn snapshot_round_trip_after_propagation(seed in any::<u64>(), n in 3usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut lat = random_lattice(&mut rng, n, 10);
        let before = lat.cells.clone();
        let s = lat.snapshot();
        propagate(&mut lat);
        lat.restore(s).unwrap();
        prop_assert_eq!(lat.cells, before);
    }
}
