//! The two-level deduction loop and the solver front end.
//!
//! Level one is the closure sweep of the base state. Level two assumes each
//! remaining q cell at 1 and at 0, runs the closure sweep on that
//! hypothetical state, and commits the opposite value when the assumption is
//! infeasible. After every level-two deduction the base is closed again.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::closure::{
    match_p, orbit_key, orbit_of, ClosureConfig, ClosureOutcome, Coverage, Engine, Interrupt, Orbits, RestartMode,
    Step, Symmetry, TraceEvent, Via, WorkingSets,
};
use crate::error::{Error, Result};
use crate::exclusion::{apply_exclusion, build_exclusion_set, build_noniso_exclusion, is_isomorphism};
use crate::graph::DirectedGraph;
use crate::model::{total_inducers, ExclusionSet, PermutationMatrix, VarLattice, VarState};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    NonHamiltonian,
    Hamiltonian,
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reason {
    /// Every inducer was already excluded on entry.
    ExclusionClosedAllInducers,
    MatchFailure,
    PropagationContradiction,
    IntegerSolutionVerified,
    /// An integer screen appeared but is not a cycle of the graph.
    IntegerSolutionRejected,
    Fixpoint,
    NotStronglyConnected,
    ProbeBudgetExhausted,
    TimeLimitReached,
}

/// Where the run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Screening,
    /// Propagation and matching of the exclusion-coded state, before any probe.
    InitialFeasibility,
    Closure,
    Assumptions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub witness: Option<PermutationMatrix>,
    pub reason: Reason,
    pub stage: Stage,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Top-level probe cap; `None` means `50 n^4`.
    pub probe_budget: Option<u64>,
    /// Wall-clock cap in seconds.
    pub time_limit: Option<f64>,
    pub restart: RestartMode,
    /// After a verified witness, keep deducing to the fixpoint so that the
    /// reported sets do not depend on which probe found the witness first.
    #[serde(default = "yes")]
    pub settle: bool,
    /// Inducers merged into the graph's own exclusion set.
    #[serde(skip)]
    pub seed_exclusions: Option<ExclusionSet>,
}

fn yes() -> bool {
    true
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            probe_budget: None,
            time_limit: None,
            restart: RestartMode::WorkQueue,
            settle: true,
            seed_exclusions: None,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.probe_budget == Some(0) {
            return Err(Error::Config("probe budget must be positive".into()));
        }
        if let Some(t) = self.time_limit {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Config(format!("time limit must be positive, got {t}")));
            }
        }
        Ok(())
    }

    pub fn budget_for(&self, n: usize) -> u64 {
        self.probe_budget.unwrap_or(50 * (n as u64).pow(4))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub p: usize,
    pub q: usize,
}

impl From<(usize, usize)> for Counts {
    fn from((p, q): (usize, usize)) -> Self {
        Self { p, q }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub solver_version: String,
    pub config: SolverConfig,
    pub decision: Decision,
    pub n: usize,
    /// Non-Zero cells after the exclusion set is applied and propagated.
    pub initial_counts: Counts,
    pub final_counts: Counts,
    pub e_size_initial: usize,
    /// Zero q cells at exit; all inducers when the verdict is NonHamiltonian.
    pub e_tilde_size: usize,
    pub f_tilde_size: usize,
    pub probes: u64,
    pub nested_probes: u64,
    pub deductions: u64,
    /// Seconds.
    pub wall_time: f64,
}

/// Result of [`run_wca`] before it is checked against a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WcaOutcome {
    Infeasible { reason: Reason, stage: Stage },
    Integer { witness: PermutationMatrix, stage: Stage },
    Undecided { reason: Reason, stage: Stage },
}

fn infeasible(lat: &VarLattice, stage: Stage) -> WcaOutcome {
    let reason = if lat.is_contradicted() {
        Reason::PropagationContradiction
    } else {
        Reason::MatchFailure
    };
    WcaOutcome::Infeasible { reason, stage }
}

fn interrupted(i: Interrupt, stage: Stage) -> WcaOutcome {
    let reason = match i {
        Interrupt::ProbeBudget => Reason::ProbeBudgetExhausted,
        Interrupt::TimeLimit => Reason::TimeLimitReached,
    };
    WcaOutcome::Undecided { reason, stage }
}

/// Runs both deduction levels on an exclusion-coded lattice.
pub fn run_wca(engine: &mut Engine<'_>, lat: &mut VarLattice) -> WcaOutcome {
    if lat.zero_q_count() == total_inducers(lat.n()) {
        return WcaOutcome::Infeasible {
            reason: Reason::ExclusionClosedAllInducers,
            stage: Stage::InitialFeasibility,
        };
    }
    if !lat.run_queue(None) || !match_p(lat) {
        return infeasible(lat, Stage::InitialFeasibility);
    }
    let nq = lat.geo.nq;
    let mut cover1 = Coverage::new(nq);
    let mut cover2 = Coverage::new(nq);
    // orbit-wide deductions keep the state fixed by these maps throughout
    let top = engine.orbits(lat, None);
    let top = top.as_ref();
    let close = |engine: &mut Engine<'_>, lat: &mut VarLattice, cover1: &mut Coverage| match engine
        .closure(lat, cover1, true, top)
    {
        Err(i) => Some(interrupted(i, Stage::Closure)),
        Ok(ClosureOutcome::Infeasible) => Some(infeasible(lat, Stage::Closure)),
        Ok(ClosureOutcome::FeasibleInteger(witness)) => Some(WcaOutcome::Integer {
            witness,
            stage: Stage::Closure,
        }),
        Ok(ClosureOutcome::FeasibleFractional) => None,
    };
    let on_step = |step: std::result::Result<Step, Interrupt>, lat: &VarLattice| match step {
        Err(i) => Err(interrupted(i, Stage::Assumptions)),
        Ok(Step::Exit(ClosureOutcome::Infeasible)) => Err(infeasible(lat, Stage::Assumptions)),
        Ok(Step::Exit(ClosureOutcome::FeasibleInteger(witness))) => Err(WcaOutcome::Integer {
            witness,
            stage: Stage::Assumptions,
        }),
        Ok(Step::Exit(ClosureOutcome::FeasibleFractional)) => unreachable!("steps never exit fractional"),
        Ok(Step::Deduced) => Ok(true),
        Ok(Step::Nothing) => Ok(false),
    };
    let geo = lat.geo.clone();
    let np = geo.np;
    let fixpoint = WcaOutcome::Undecided {
        reason: Reason::Fixpoint,
        stage: Stage::Assumptions,
    };

    match engine.config.restart {
        RestartMode::Literal => 'start: loop {
            if let Some(out) = close(engine, lat, &mut cover1) {
                return out;
            }
            for &q in &geo.lex {
                let q = q as usize;
                if lat.cells[np + q] != VarState::Free {
                    continue;
                }
                let step = step2(engine, lat, q, &mut cover1, &mut cover2, top);
                match on_step(step, lat) {
                    Err(out) => return out,
                    Ok(true) => continue 'start,
                    Ok(false) => {}
                }
            }
            return fixpoint;
        },
        RestartMode::WorkQueue => {
            if let Some(out) = close(engine, lat, &mut cover1) {
                return out;
            }
            let order: Vec<usize> = geo
                .lex
                .iter()
                .map(|&q| q as usize)
                .filter(|&q| lat.cells[np + q] == VarState::Free && orbit_key(top, q) == q)
                .collect();
            let mut idx = 0;
            let mut quiet = 0;
            while quiet < order.len() {
                let q = order[idx];
                idx = (idx + 1) % order.len();
                quiet += 1;
                if lat.cells[np + q] != VarState::Free {
                    continue;
                }
                let step = step2(engine, lat, q, &mut cover1, &mut cover2, top);
                match on_step(step, lat) {
                    Err(out) => return out,
                    Ok(true) => {
                        quiet = 0;
                        if let Some(out) = close(engine, lat, &mut cover1) {
                            return out;
                        }
                    }
                    Ok(false) => {}
                }
            }
            fixpoint
        }
    }
}

/// Nested tests of one cell: assume 1, then 0.
fn step2(
    engine: &mut Engine<'_>,
    lat: &mut VarLattice,
    q: usize,
    cover1: &mut Coverage,
    cover2: &mut Coverage,
    top: Option<&Orbits>,
) -> std::result::Result<Step, Interrupt> {
    let skip = engine.config.restart == RestartMode::WorkQueue;
    let id = lat.geo.np + q;
    for bit in [true, false] {
        if skip && cover2.covers(q, bit) {
            continue;
        }
        engine.count_probe(true)?;
        let mark = lat.trail_len();
        let ok = lat.set(id, VarState::from_bit(bit)) && lat.run_queue(None) && match_p(lat);
        let result = if ok {
            engine.nested_closure(lat, Some(q))
        } else {
            Ok(ClosureOutcome::Infeasible)
        };
        match result {
            Err(i) => {
                lat.undo_to(mark);
                return Err(i);
            }
            Ok(ClosureOutcome::FeasibleFractional) => {
                if skip {
                    // a closed hypothetical state is also a propagation fixpoint
                    cover2.record(lat, mark, top);
                    cover1.record(lat, mark, top);
                }
                lat.undo_to(mark);
            }
            Ok(ClosureOutcome::FeasibleInteger(_)) if engine.settling() => lat.undo_to(mark),
            Ok(ClosureOutcome::FeasibleInteger(p)) => {
                lat.undo_to(mark);
                return Ok(Step::Exit(ClosureOutcome::FeasibleInteger(p)));
            }
            Ok(ClosureOutcome::Infeasible) => {
                lat.undo_to(mark);
                cover1.clear();
                cover2.clear();
                return Ok(
                    match engine.deduce(lat, &orbit_of(top, q), !bit, Via::Assumption, true) {
                        Some(out) => Step::Exit(out),
                        None => Step::Deduced,
                    },
                );
            }
        }
    }
    Ok(Step::Nothing)
}

/// True iff the cycle `n+1 -> order[0] -> ... -> order[n-1] -> n+1` encoded
/// by `p` lies in `g`.
pub fn verify_cycle(p: &PermutationMatrix, g: &DirectedGraph) -> bool {
    let n = g.model_size();
    if p.n() != n {
        return false;
    }
    let start = g.start_vertex();
    let order = p.vertex_order();
    let mut walk = Vec::with_capacity(n + 2);
    walk.push(start);
    walk.extend(&order);
    walk.push(start);
    walk.windows(2).all(|w| g.has_arc(w[0], w[1]))
}

/// Free counts and exclusion size of a graph after its exclusion set is applied
/// and propagated once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionStats {
    pub n: usize,
    pub p_free: usize,
    pub q_free: usize,
    pub e_size: usize,
    /// False when the propagation itself contradicts.
    pub consistent: bool,
}

pub fn exclusion_stats(g: &DirectedGraph) -> Result<ExclusionStats> {
    let e = build_exclusion_set(g);
    let mut lat = VarLattice::new(g.model_size())?;
    let consistent = apply_exclusion(&e, &mut lat)? && lat.run_queue(None);
    let (p_free, q_free) = lat.count_free();
    Ok(ExclusionStats {
        n: g.model_size(),
        p_free,
        q_free,
        e_size: e.len(),
        consistent,
    })
}

pub fn decide(g: &DirectedGraph, cfg: &SolverConfig) -> Result<Report> {
    decide_traced(g, cfg, None)
}

/// As [`decide`], reporting every top-level deduction to `trace`.
pub fn decide_traced(
    g: &DirectedGraph,
    cfg: &SolverConfig,
    trace: Option<&mut dyn FnMut(TraceEvent)>,
) -> Result<Report> {
    run_decide(g, cfg, trace).map(|(report, _)| report)
}

/// As [`decide`], also returning the final `Ẽ` and `F̃`. A NonHamiltonian
/// verdict reports every inducer in `Ẽ`.
pub fn decide_with_sets(g: &DirectedGraph, cfg: &SolverConfig) -> Result<(Report, WorkingSets)> {
    run_decide(g, cfg, None)
}

fn run_decide(
    g: &DirectedGraph,
    cfg: &SolverConfig,
    trace: Option<&mut dyn FnMut(TraceEvent)>,
) -> Result<(Report, WorkingSets)> {
    cfg.validate()?;
    let clock = Instant::now();
    let n = g.model_size();
    let mut e = build_exclusion_set(g);
    if let Some(seed) = &cfg.seed_exclusions {
        e.extend(seed.iter().copied());
    }
    let mut lat = VarLattice::new(n)?;
    apply_exclusion(&e, &mut lat)?;

    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        solver_version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        decision: Decision {
            verdict: Verdict::Undecided,
            witness: None,
            reason: Reason::Fixpoint,
            stage: Stage::Screening,
        },
        n,
        initial_counts: lat.count_free().into(),
        final_counts: lat.count_free().into(),
        e_size_initial: e.len(),
        e_tilde_size: lat.zero_q_count(),
        f_tilde_size: 0,
        probes: 0,
        nested_probes: 0,
        deductions: 0,
        wall_time: 0.0,
    };

    if !g.is_strongly_connected() {
        report.decision = Decision {
            verdict: Verdict::NonHamiltonian,
            witness: None,
            reason: Reason::NotStronglyConnected,
            stage: Stage::Screening,
        };
        let sets = saturate(&mut report);
        report.wall_time = clock.elapsed().as_secs_f64();
        return Ok((report, sets));
    }

    let mut probe_lat = lat.clone();
    if probe_lat.run_queue(None) {
        report.initial_counts = probe_lat.count_free().into();
    }
    drop(probe_lat);

    let deadline = cfg.time_limit.map(|t| clock + Duration::from_secs_f64(t));
    let mut engine = Engine::new(ClosureConfig { restart: cfg.restart })
        .with_budget(Some(cfg.budget_for(n)))
        .with_deadline(deadline)
        .with_symmetry(Symmetry::of_graph(g));
    if let Some(trace) = trace {
        engine = engine.with_trace(trace);
    }
    let mut out = run_wca(&mut engine, &mut lat);
    if let WcaOutcome::Integer { witness, stage } = &out {
        if cfg.settle && verify_cycle(witness, g) {
            // the settled state is sound for the known cycle, so the rerun
            // cannot refute it; only the sets it reports change
            engine.settle();
            run_wca(&mut engine, &mut lat);
            out = WcaOutcome::Integer {
                witness: witness.clone(),
                stage: *stage,
            };
        }
    }

    report.probes = engine.stats.probes;
    report.nested_probes = engine.stats.nested_probes;
    report.deductions = engine.stats.deductions;
    report.final_counts = lat.count_free().into();
    report.e_tilde_size = lat.zero_q_count();
    report.f_tilde_size = lat.one_q_count();
    report.decision = match out {
        WcaOutcome::Infeasible { reason, stage } => Decision {
            verdict: Verdict::NonHamiltonian,
            witness: None,
            reason,
            stage,
        },
        WcaOutcome::Integer { witness, stage } => {
            if verify_cycle(&witness, g) {
                Decision {
                    verdict: Verdict::Hamiltonian,
                    witness: Some(witness),
                    reason: Reason::IntegerSolutionVerified,
                    stage,
                }
            } else {
                Decision {
                    verdict: Verdict::Undecided,
                    witness: None,
                    reason: Reason::IntegerSolutionRejected,
                    stage,
                }
            }
        }
        WcaOutcome::Undecided { reason, stage } => Decision {
            verdict: Verdict::Undecided,
            witness: None,
            reason,
            stage,
        },
    };
    let sets = if report.decision.verdict == Verdict::NonHamiltonian {
        saturate(&mut report)
    } else {
        WorkingSets::of(&lat)
    };
    report.wall_time = clock.elapsed().as_secs_f64();
    Ok((report, sets))
}

/// An infeasible system admits every inducer as a deduced zero.
fn saturate(report: &mut Report) -> WorkingSets {
    report.e_tilde_size = total_inducers(report.n);
    report.f_tilde_size = 0;
    report.final_counts = Counts { p: 0, q: 0 };
    WorkingSets {
        e_tilde: ExclusionSet::all(report.n),
        f_tilde: ExclusionSet::new(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NonisoVerdict {
    /// No permutation satisfies `P^T G P = H`: the graphs are not isomorphic.
    Infeasible,
    /// A verified isomorphism was found.
    FeasibleInteger,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonisoReport {
    pub schema_version: u32,
    pub solver_version: String,
    pub config: SolverConfig,
    pub verdict: NonisoVerdict,
    /// `witness[u-1] = i` maps vertex `u` of G to vertex `i` of H.
    pub witness: Option<PermutationMatrix>,
    pub reason: String,
    pub n: usize,
    pub e_size: usize,
    pub probes: u64,
    pub wall_time: f64,
}

/// Decides whether two equal-order adjacency matrices are isomorphic with
/// the same two-level closure used for cycles.
pub fn decide_noniso(g: &[Vec<bool>], h: &[Vec<bool>], cfg: &SolverConfig) -> Result<NonisoReport> {
    cfg.validate()?;
    let clock = Instant::now();
    let e = build_noniso_exclusion(g, h)?;
    let n = g.len();
    let mut report = NonisoReport {
        schema_version: SCHEMA_VERSION,
        solver_version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        verdict: NonisoVerdict::Undecided,
        witness: None,
        reason: String::new(),
        n,
        e_size: e.len(),
        probes: 0,
        wall_time: 0.0,
    };
    let arcs = |m: &[Vec<bool>]| {
        m.iter()
            .enumerate()
            .map(|(u, r)| r.iter().enumerate().filter(|&(v, &b)| b && v != u).count())
            .sum::<usize>()
    };
    let loops = |m: &[Vec<bool>]| (0..m.len()).filter(|&u| m[u][u]).count();
    if arcs(g) != arcs(h) || loops(g) != loops(h) {
        report.verdict = NonisoVerdict::Infeasible;
        report.reason = "arc counts differ".into();
        report.wall_time = clock.elapsed().as_secs_f64();
        return Ok(report);
    }
    if n < 2 {
        // a single vertex maps onto a single vertex
        report.verdict = NonisoVerdict::FeasibleInteger;
        report.witness = Some(PermutationMatrix::identity(n));
        report.reason = "trivial".into();
        return Ok(report);
    }
    let mut lat = VarLattice::new(n)?;
    // self-loops must map onto self-loops
    for u in 0..n {
        for i in 0..n {
            if g[u][u] != h[i][i] {
                lat.assign(crate::model::Cell::P { u: u + 1, i: i + 1 }, VarState::Zero)?;
            }
        }
    }
    apply_exclusion(&e, &mut lat)?;
    let deadline = cfg.time_limit.map(|t| clock + Duration::from_secs_f64(t));
    let mut engine = Engine::new(ClosureConfig { restart: cfg.restart })
        .with_budget(Some(cfg.budget_for(n)))
        .with_deadline(deadline);
    let out = run_wca(&mut engine, &mut lat);
    report.probes = engine.stats.probes;
    match out {
        WcaOutcome::Infeasible { reason, .. } => {
            report.verdict = NonisoVerdict::Infeasible;
            report.reason = format!("{reason:?}");
        }
        WcaOutcome::Integer { witness, .. } => {
            if is_isomorphism(&witness, g, h) {
                report.verdict = NonisoVerdict::FeasibleInteger;
                report.reason = "witness verified".into();
                report.witness = Some(witness);
            } else {
                report.reason = format!("integer screen {witness} fails P^T G P = H");
            }
        }
        WcaOutcome::Undecided { reason, .. } => report.reason = format!("{reason:?}"),
    }
    report.wall_time = clock.elapsed().as_secs_f64();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{builtin_graph, parse_edge_list, Builtin};

    fn four_cycle() -> DirectedGraph {
        builtin_graph(Builtin::Cycle(4)).unwrap()
    }

    #[test]
    fn verify_cycle_examples() {
        let g = four_cycle();
        assert!(verify_cycle(&PermutationMatrix::identity(3), &g));
        let mut missing = g.clone();
        missing.remove_arc(3, 4);
        assert!(!verify_cycle(&PermutationMatrix::identity(3), &missing));
        assert!(!verify_cycle(&PermutationMatrix::new(vec![2, 1, 3]).unwrap(), &g));
    }

    #[test]
    fn unique_cycle_is_found() {
        let r = decide(&four_cycle(), &SolverConfig::default()).unwrap();
        assert_eq!(r.decision.verdict, Verdict::Hamiltonian);
        assert_eq!(r.decision.witness, Some(PermutationMatrix::identity(3)));
        assert_eq!(r.decision.reason, Reason::IntegerSolutionVerified);
    }

    #[test]
    fn complete_graph_is_not_refuted() {
        let r = decide(&builtin_graph(Builtin::Complete(5)).unwrap(), &SolverConfig::default()).unwrap();
        assert_ne!(r.decision.verdict, Verdict::NonHamiltonian);
        assert_eq!(r.initial_counts, Counts { p: 16, q: 72 });
        assert_eq!(r.e_size_initial, 0);
    }

    #[test]
    fn settled_sets_do_not_depend_on_restart_mode() {
        let g = parse_edge_list("6\n1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n1 4\n2 5", false).unwrap();
        let literal = SolverConfig {
            restart: RestartMode::Literal,
            ..SolverConfig::default()
        };
        let (a, sa) = decide_with_sets(&g, &SolverConfig::default()).unwrap();
        let (b, sb) = decide_with_sets(&g, &literal).unwrap();
        assert_eq!(a.decision.verdict, Verdict::Hamiltonian);
        assert_eq!(b.decision.verdict, Verdict::Hamiltonian);
        assert_eq!(sa, sb);
        assert_eq!(sa.e_tilde.len(), a.e_tilde_size);

        let unsettled = SolverConfig {
            settle: false,
            ..SolverConfig::default()
        };
        let (c, sc) = decide_with_sets(&g, &unsettled).unwrap();
        assert_eq!(c.decision.verdict, Verdict::Hamiltonian);
        assert!(sc.e_tilde.is_subset(&sa.e_tilde));
    }

    #[test]
    fn disconnected_graphs_are_screened() {
        let g = parse_edge_list("4\n1 2\n2 3\n3 1\n1 4", true).unwrap();
        let r = decide(&g, &SolverConfig::default()).unwrap();
        assert_eq!(r.decision.verdict, Verdict::NonHamiltonian);
        assert_eq!(r.decision.reason, Reason::NotStronglyConnected);
        assert_eq!(r.e_tilde_size, total_inducers(3));
    }

    #[test]
    fn full_exclusion_exits_immediately() {
        let mut lat = VarLattice::new(3).unwrap();
        apply_exclusion(&ExclusionSet::all(3), &mut lat).unwrap();
        let mut engine = Engine::new(ClosureConfig::default());
        assert_eq!(
            run_wca(&mut engine, &mut lat),
            WcaOutcome::Infeasible {
                reason: Reason::ExclusionClosedAllInducers,
                stage: Stage::InitialFeasibility
            }
        );
        assert_eq!(engine.stats.probes, 0);
    }

    #[test]
    fn config_validation() {
        let cfg = SolverConfig {
            probe_budget: Some(0),
            ..SolverConfig::default()
        };
        assert!(decide(&four_cycle(), &cfg).is_err());
        let cfg = SolverConfig {
            time_limit: Some(-1.0),
            ..SolverConfig::default()
        };
        assert!(cfg.validate().is_err());
        assert_eq!(SolverConfig::default().budget_for(9), 50 * 6561);
    }

    #[test]
    fn report_serializes() {
        let r = decide(&four_cycle(), &SolverConfig::default()).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        for key in [
            "schema_version",
            "solver_version",
            "config",
            "decision",
            "n",
            "initial_counts",
            "final_counts",
            "e_size_initial",
            "e_tilde_size",
            "f_tilde_size",
            "probes",
            "deductions",
            "wall_time",
        ] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert_eq!(json["decision"]["witness"], serde_json::json!([1, 2, 3]));
    }

    #[test]
    fn noniso_small_cases() {
        let k3 = vec![
            vec![false, true, true],
            vec![true, false, true],
            vec![true, true, false],
        ];
        let r = decide_noniso(&k3, &k3, &SolverConfig::default()).unwrap();
        assert_eq!(r.verdict, NonisoVerdict::FeasibleInteger);

        let mut path = vec![vec![false; 3]; 3];
        for (a, b) in [(0, 1), (1, 2)] {
            path[a][b] = true;
            path[b][a] = true;
        }
        let r = decide_noniso(&path, &k3, &SolverConfig::default()).unwrap();
        assert_eq!(r.verdict, NonisoVerdict::Infeasible);

        let mut c = vec![vec![false; 3]; 3];
        let mut d = vec![vec![false; 3]; 3];
        for u in 0..3 {
            c[u][(u + 1) % 3] = true;
            d[(u + 1) % 3][u] = true;
        }
        let r = decide_noniso(&c, &d, &SolverConfig::default()).unwrap();
        assert_eq!(r.verdict, NonisoVerdict::FeasibleInteger);
        assert!(is_isomorphism(r.witness.as_ref().unwrap(), &c, &d));
    }
}
