//! Boolean closure: propagation, matching feasibility, probes and the
//! closure sweeps that stand in for LP max/min tests.
//!
//! A probe assumes one q cell at 0 or 1, propagates, and checks that the
//! non-Zero p screen still has a perfect matching. A refuted probe licenses
//! the opposite value. The working sets are views of the lattice: Ẽ is the
//! set of Zero q cells and F̃ the set of One q cells.
//!
//! Skipping. Any consistent propagation fixpoint `W` that contains the
//! current state proves that every assignment recorded in `W` survives its
//! own probe (the probe's fixpoint is a subset of `W`). The sweep therefore
//! skips probes already answered by such a state. Coverage is dropped on
//! every deduction so that skipped probes are exactly the unrefutable ones.
//! A successful probe state is first extended greedily with further cells at
//! 1, which keeps it a consistent fixpoint while making it answer more.
//! Integer states are never recorded, so no skipped probe could have ended
//! the run with a witness.

mod matching;
mod propagate;
mod symmetry;

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use matching::perfect_matching;
pub(crate) use symmetry::Orbits;
pub use symmetry::Symmetry;

use crate::error::{Error, Result};
use crate::model::{Cell, ExclusionSet, Inducer, PermutationMatrix, VarLattice, VarState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Consistent,
    Contradiction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropagationOutcome {
    pub status: Status,
    /// Cells written during this call, in write order.
    pub changed: Vec<Cell>,
}

impl PropagationOutcome {
    pub fn is_consistent(&self) -> bool {
        self.status == Status::Consistent
    }
}

fn outcome(lat: &VarLattice, from: usize, ok: bool) -> PropagationOutcome {
    PropagationOutcome {
        status: if ok { Status::Consistent } else { Status::Contradiction },
        changed: lat.written_since(from).map(|id| lat.cell_of(id)).collect(),
    }
}

/// Runs every rule to fixpoint in FIFO order.
pub fn propagate(lat: &mut VarLattice) -> PropagationOutcome {
    let from = lat.trail_len();
    let ok = lat.run_queue(None);
    outcome(lat, from, ok)
}

/// As [`propagate`], but `pick(k)` chooses which of the `k` pending writes
/// fires next. Used to check that the fixpoint is order independent.
pub fn propagate_in_order(lat: &mut VarLattice, pick: &mut dyn FnMut(usize) -> usize) -> PropagationOutcome {
    let from = lat.trail_len();
    let ok = lat.run_queue(Some(pick));
    outcome(lat, from, ok)
}

/// Perfect matching on the non-Zero p screen.
pub fn match_p(lat: &VarLattice) -> bool {
    matching_of(lat).is_some()
}

fn matching_of(lat: &VarLattice) -> Option<Vec<usize>> {
    let n = lat.n();
    perfect_matching(n, |x, k| lat.cells[x * n + k] != VarState::Zero)
}

/// Deduced-zero and deduced-one inducers of a lattice.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WorkingSets {
    pub e_tilde: ExclusionSet,
    pub f_tilde: ExclusionSet,
}

impl WorkingSets {
    pub fn of(lat: &VarLattice) -> Self {
        Self {
            e_tilde: lat.inducers_in(VarState::Zero).into_iter().collect(),
            f_tilde: lat.inducers_in(VarState::One).into_iter().collect(),
        }
    }
}

fn q_cell_id(lat: &VarLattice, ind: &Inducer) -> Result<usize> {
    Ok(lat.geo.np + lat.geo.q_of(ind)?)
}

/// Sets `ind` to One (which pins both p cells and zeroes the row, column
/// and line complements) and propagates.
pub fn assign_q_one(lat: &mut VarLattice, ind: &Inducer) -> Result<PropagationOutcome> {
    let id = q_cell_id(lat, ind)?;
    if lat.cells[id] == VarState::Zero {
        return Err(Error::CellAlreadyZero(ind.to_string()));
    }
    let from = lat.trail_len();
    let ok = lat.set(id, VarState::One) && lat.run_queue(None);
    Ok(outcome(lat, from, ok))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeResult {
    /// The assumption propagates to a contradiction or an unmatchable screen.
    Refuted,
    Possible,
    /// The assumption propagates to a complete consistent assignment.
    Integer(PermutationMatrix),
}

/// Tests one value of a Free q cell, leaving the lattice unchanged.
pub fn probe(lat: &mut VarLattice, ind: &Inducer, assumed: bool) -> Result<ProbeResult> {
    let id = q_cell_id(lat, ind)?;
    if lat.cells[id] != VarState::Free {
        return Err(Error::InvalidInducer {
            u: ind.u,
            i: ind.i,
            v: ind.v,
            j: ind.j,
            reason: "probe needs a Free q cell",
        });
    }
    if !lat.run_queue(None) {
        return Ok(ProbeResult::Refuted);
    }
    Ok(probe_cell(lat, id, assumed))
}

fn probe_cell(lat: &mut VarLattice, id: usize, assumed: bool) -> ProbeResult {
    let mark = lat.trail_len();
    let result = probe_state(lat, id, assumed);
    lat.undo_to(mark);
    result
}

/// Applies one assumption and reports on it, leaving the state applied for
/// the caller to inspect and undo.
fn probe_state(lat: &mut VarLattice, id: usize, assumed: bool) -> ProbeResult {
    let ok = lat.set(id, VarState::from_bit(assumed)) && lat.run_queue(None) && match_p(lat);
    if !ok {
        ProbeResult::Refuted
    } else if lat.is_complete() {
        ProbeResult::Integer(integer_solution(lat).expect("complete consistent lattice"))
    } else {
        ProbeResult::Possible
    }
}

fn integer_solution(lat: &VarLattice) -> Option<PermutationMatrix> {
    let pos = lat.integer_positions()?;
    PermutationMatrix::new(pos.into_iter().map(|k| k + 1).collect()).ok()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureOutcome {
    Infeasible,
    FeasibleInteger(PermutationMatrix),
    FeasibleFractional,
}

/// How a sweep resumes after a deduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RestartMode {
    /// Continue cyclically from the deduction; stop after a full cycle
    /// without one. Probes answered by a known fixpoint are skipped.
    #[default]
    WorkQueue,
    /// Restart from the lexicographically first inducer after every
    /// deduction and run every probe.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ClosureConfig {
    pub restart: RestartMode,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepStats {
    /// Top-level probes: single-level probes of the base state plus
    /// nested assumption tests.
    pub probes: u64,
    /// Probes run inside nested assumption tests.
    pub nested_probes: u64,
    /// Top-level deductions.
    pub deductions: u64,
}

/// Why a sweep stopped before reaching a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interrupt {
    ProbeBudget,
    TimeLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Via {
    /// Refuted by a single-level probe.
    Probe,
    /// Refuted by a nested assumption test.
    Assumption,
    /// Forced by propagation after a deduction.
    Propagation,
}

/// One top-level deduction, for differential testing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub inducer: Inducer,
    pub value: bool,
    pub via: Via,
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let via = match self.via {
            Via::Probe => "probe",
            Via::Assumption => "assumption",
            Via::Propagation => "propagation",
        };
        write!(f, "{} -> {} via {via}", self.inducer, self.value as u8)
    }
}

/// q cells answered for each bit by some consistent fixpoint containing the
/// current state, keyed by orbit name. Cleared by bumping the epoch.
#[derive(Debug)]
pub(crate) struct Coverage {
    epoch: u32,
    marks: [Vec<u32>; 2],
}

impl Coverage {
    pub(crate) fn new(nq: usize) -> Self {
        Self {
            epoch: 1,
            marks: [vec![0; nq], vec![0; nq]],
        }
    }

    pub(crate) fn clear(&mut self) {
        self.epoch += 1;
    }

    #[inline]
    pub(crate) fn covers(&self, key: usize, bit: bool) -> bool {
        self.marks[bit as usize][key] == self.epoch
    }

    /// Records every q write after `mark` in the current (consistent,
    /// quiescent) state.
    pub(crate) fn record(&mut self, lat: &VarLattice, mark: usize, orbits: Option<&Orbits>) {
        let np = lat.geo.np;
        for id in lat.written_since(mark) {
            if id >= np {
                let bit = lat.cells[id] == VarState::One;
                self.marks[bit as usize][orbit_key(orbits, id - np)] = self.epoch;
            }
        }
    }
}

#[inline]
pub(crate) fn orbit_key(orbits: Option<&Orbits>, q: usize) -> usize {
    orbits.map_or(q, |o| o.rep(q))
}

/// The cells deduced together with `q`.
pub(crate) fn orbit_of(orbits: Option<&Orbits>, q: usize) -> Vec<u32> {
    orbits.map_or_else(|| vec![q as u32], |o| o.members(q).to_vec())
}

/// Greedily pins further q cells at 1 while the state stays consistent and
/// fractional, so that one recorded fixpoint answers many bit-1 probes.
fn extend_witness(lat: &mut VarLattice, cover: &Coverage, orbits: Option<&Orbits>) {
    let geo = lat.geo.clone();
    let np = geo.np;
    for &q in &geo.lex {
        let q = q as usize;
        if lat.cells[np + q] != VarState::Free || cover.covers(orbit_key(orbits, q), true) {
            continue;
        }
        let mark = lat.trail_len();
        let ok = lat.set(np + q, VarState::One) && lat.run_queue(None) && match_p(lat) && !lat.is_complete();
        if !ok {
            // the first failure usually means the state is nearly pinned;
            // further attempts cost more than the probes they would save
            lat.undo_to(mark);
            break;
        }
    }
}

pub(crate) enum Step {
    Nothing,
    Deduced,
    Exit(ClosureOutcome),
}

/// Sweep driver shared by the single-level closure and the nested
/// assumption tests.
pub struct Engine<'t> {
    pub config: ClosureConfig,
    pub stats: SweepStats,
    budget: Option<u64>,
    deadline: Option<Instant>,
    trace: Option<&'t mut dyn FnMut(TraceEvent)>,
    symmetry: Symmetry,
    /// Once a witness is known, integer probes only show their cell can take
    /// the probed value, and sweeps run on to the fixpoint.
    settling: bool,
    /// Reused coverage for nested sweeps.
    scratch: Option<Coverage>,
}

impl<'t> Engine<'t> {
    pub fn new(config: ClosureConfig) -> Self {
        Self {
            config,
            stats: SweepStats::default(),
            budget: None,
            deadline: None,
            trace: None,
            symmetry: Symmetry::none(),
            settling: false,
            scratch: None,
        }
    }

    /// Caps the number of top-level probes.
    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }

    pub fn with_trace(mut self, trace: &'t mut dyn FnMut(TraceEvent)) -> Self {
        self.trace = Some(trace);
        self
    }

    /// Candidate symmetries for orbit reduction. Only work-queue sweeps use
    /// them, and each is checked against the state first.
    pub fn with_symmetry(mut self, symmetry: Symmetry) -> Self {
        self.symmetry = symmetry;
        self
    }

    pub(crate) fn settle(&mut self) {
        self.settling = true;
    }

    pub(crate) fn settling(&self) -> bool {
        self.settling
    }

    pub(crate) fn skipping(&self) -> bool {
        self.config.restart == RestartMode::WorkQueue
    }

    /// Orbits of the current (propagated) state, if reduction applies.
    pub(crate) fn orbits(&self, lat: &VarLattice, fixed: Option<usize>) -> Option<Orbits> {
        if self.skipping() {
            self.symmetry.orbits(lat, fixed)
        } else {
            None
        }
    }

    pub(crate) fn count_probe(&mut self, top: bool) -> std::result::Result<(), Interrupt> {
        if top {
            if self.budget.is_some_and(|b| self.stats.probes >= b) {
                return Err(Interrupt::ProbeBudget);
            }
            self.stats.probes += 1;
        } else {
            self.stats.nested_probes += 1;
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Interrupt::TimeLimit);
        }
        Ok(())
    }

    /// Commits one value for every cell in `qs` and propagates.
    pub(crate) fn deduce(
        &mut self,
        lat: &mut VarLattice,
        qs: &[u32],
        value: bool,
        via: Via,
        top: bool,
    ) -> Option<ClosureOutcome> {
        let np = lat.geo.np;
        let mark = lat.trail_len();
        let mut ok = true;
        for &q in qs {
            ok &= lat.set(np + q as usize, VarState::from_bit(value));
        }
        ok = ok && lat.run_queue(None) && match_p(lat);
        if top {
            self.stats.deductions += qs.len() as u64;
            if let Some(trace) = self.trace.as_deref_mut() {
                for &q in qs {
                    trace(TraceEvent {
                        inducer: lat.geo.inducer(q as usize),
                        value,
                        via,
                    });
                }
                let from = (mark + qs.len()).min(lat.trail_len());
                for w in lat.written_since(from) {
                    if w >= np {
                        trace(TraceEvent {
                            inducer: lat.geo.inducer(w - np),
                            value: lat.cells[w] == VarState::One,
                            via: Via::Propagation,
                        });
                    }
                }
            }
        }
        if !ok {
            Some(ClosureOutcome::Infeasible)
        } else if lat.is_complete() {
            Some(ClosureOutcome::FeasibleInteger(
                integer_solution(lat).expect("complete"),
            ))
        } else {
            None
        }
    }

    /// Single-level probes of one cell: bit 1 first, then bit 0.
    fn step1(
        &mut self,
        lat: &mut VarLattice,
        q: usize,
        cover: &mut Coverage,
        top: bool,
        orbits: Option<&Orbits>,
    ) -> std::result::Result<Step, Interrupt> {
        let skip = self.skipping();
        let id = lat.geo.np + q;
        for bit in [true, false] {
            if skip && cover.covers(q, bit) {
                continue;
            }
            self.count_probe(top)?;
            let mark = lat.trail_len();
            match probe_state(lat, id, bit) {
                ProbeResult::Possible => {
                    if skip {
                        extend_witness(lat, cover, orbits);
                        cover.record(lat, mark, orbits);
                    }
                    lat.undo_to(mark);
                }
                // Settling only matters at top level. Every rule is implied by
                // the integer constraints, so a hypothetical state with an
                // integer point is never refuted and may exit at once.
                ProbeResult::Integer(_) if self.settling && top => lat.undo_to(mark),
                ProbeResult::Integer(p) => {
                    lat.undo_to(mark);
                    return Ok(Step::Exit(ClosureOutcome::FeasibleInteger(p)));
                }
                ProbeResult::Refuted => {
                    lat.undo_to(mark);
                    cover.clear();
                    let cells = orbit_of(orbits, q);
                    return Ok(match self.deduce(lat, &cells, !bit, Via::Probe, top) {
                        Some(out) => Step::Exit(out),
                        None => Step::Deduced,
                    });
                }
            }
        }
        Ok(Step::Nothing)
    }

    /// Closure sweep of the current state: propagate, match, then probe every
    /// Free q cell until none can be refuted. With `orbits`, the state must
    /// be fixed by the maps that generated them.
    pub(crate) fn closure(
        &mut self,
        lat: &mut VarLattice,
        cover: &mut Coverage,
        top: bool,
        orbits: Option<&Orbits>,
    ) -> std::result::Result<ClosureOutcome, Interrupt> {
        if !lat.run_queue(None) || !match_p(lat) {
            return Ok(ClosureOutcome::Infeasible);
        }
        if lat.is_complete() {
            return Ok(ClosureOutcome::FeasibleInteger(
                integer_solution(lat).expect("complete"),
            ));
        }
        let geo = lat.geo.clone();
        let np = geo.np;
        match self.config.restart {
            RestartMode::Literal => 'restart: loop {
                for &q in &geo.lex {
                    let q = q as usize;
                    if lat.cells[np + q] != VarState::Free {
                        continue;
                    }
                    match self.step1(lat, q, cover, top, None)? {
                        Step::Nothing => {}
                        Step::Deduced => continue 'restart,
                        Step::Exit(out) => return Ok(out),
                    }
                }
                return Ok(ClosureOutcome::FeasibleFractional);
            },
            RestartMode::WorkQueue => {
                let order: Vec<usize> = geo
                    .lex
                    .iter()
                    .map(|&q| q as usize)
                    .filter(|&q| lat.cells[np + q] == VarState::Free && orbit_key(orbits, q) == q)
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
                    match self.step1(lat, q, cover, top, orbits)? {
                        Step::Nothing => {}
                        Step::Deduced => quiet = 0,
                        Step::Exit(out) => return Ok(out),
                    }
                }
                Ok(ClosureOutcome::FeasibleFractional)
            }
        }
    }

    /// Closure of a propagated hypothetical state, with private coverage.
    /// `fixed` names the assumed cell, which narrows the symmetry
    /// candidates.
    pub(crate) fn nested_closure(
        &mut self,
        lat: &mut VarLattice,
        fixed: Option<usize>,
    ) -> std::result::Result<ClosureOutcome, Interrupt> {
        let nq = lat.geo.nq;
        let mut cover = match self.scratch.take() {
            Some(c) if c.marks[0].len() == nq => c,
            _ => Coverage::new(nq),
        };
        cover.clear();
        let orbits = if lat.run_queue(None) {
            self.orbits(lat, fixed)
        } else {
            None
        };
        let out = self.closure(lat, &mut cover, false, orbits.as_ref());
        self.scratch = Some(cover);
        out
    }

    /// Single-level closure of `lat` in place.
    pub fn implement_closure(&mut self, lat: &mut VarLattice) -> std::result::Result<ClosureOutcome, Interrupt> {
        let mut cover = Coverage::new(lat.geo.nq);
        let orbits = if lat.run_queue(None) {
            self.orbits(lat, None)
        } else {
            None
        };
        self.closure(lat, &mut cover, true, orbits.as_ref())
    }

    /// The closure body applied to a state that already carries a
    /// hypothetical assignment. Deductions stay in `lat`.
    pub fn test_assumption(&mut self, lat: &mut VarLattice) -> std::result::Result<ClosureOutcome, Interrupt> {
        self.nested_closure(lat, None)
    }
}

/// Single-level closure with default settings and no limits.
pub fn implement_closure(lat: &mut VarLattice) -> ClosureOutcome {
    Engine::new(ClosureConfig::default())
        .implement_closure(lat)
        .expect("no limits set")
}

/// Closure of a hypothetical state; identical in body to
/// [`implement_closure`].
pub fn test_assumption(lat: &mut VarLattice) -> ClosureOutcome {
    Engine::new(ClosureConfig::default())
        .test_assumption(lat)
        .expect("no limits set")
}

#[cfg(test)]
mod tests;
