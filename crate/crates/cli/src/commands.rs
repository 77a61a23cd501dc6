use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use wca_core::exclusion::build_exclusion_set;
use wca_core::graph::DirectedGraph;
use wca_core::oracle::{
    check_theory, enumerate_hamilton_cycles, exact_closure, TheoryChecks, CYCLE_LIMIT, THEORY_LIMIT,
};
use wca_core::wca::{
    decide_noniso, decide_traced, decide_with_sets, exclusion_stats, verify_cycle, ExclusionStats, Report,
    SolverConfig, Verdict, SCHEMA_VERSION,
};

use crate::input::{load_graph, load_matrix, load_seed};
use crate::{input_error, CheckFailed, DecideArgs, NonisoArgs, OracleArgs, StatsArgs};

pub const SOLVER_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Writes `value` as one JSON line to `path`, or to standard output for `-`.
pub fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let line = serde_json::to_string(value)?;
    if path == Path::new("-") {
        println!("{line}");
        Ok(())
    } else {
        let mut f = fs::File::create(path).map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))?;
        writeln!(f, "{line}").with_context(|| format!("writing {}", path.display()))
    }
}

fn checked_config(cfg: SolverConfig) -> Result<SolverConfig> {
    cfg.validate().map_err(|e| input_error(e.to_string()))?;
    Ok(cfg)
}

pub fn cmd_decide(args: &DecideArgs) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let mut cfg = checked_config(args.solver.config())?;
    if let Some(path) = &args.seed_exclusions {
        cfg.seed_exclusions = Some(load_seed(path, g.model_size())?);
    }
    let mut sink = |e: wca_core::closure::TraceEvent| eprintln!("{e}");
    let trace: Option<&mut dyn FnMut(_)> = if args.trace { Some(&mut sink) } else { None };
    let report = decide_traced(&g, &cfg, trace).context("solver failed")?;
    println!("{:?}", report.decision.verdict);
    if let Some(path) = &args.json {
        write_json(path, &report)?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct StatsReport {
    pub schema_version: u32,
    pub solver_version: &'static str,
    #[serde(flatten)]
    pub stats: ExclusionStats,
}

pub fn cmd_stats(args: &StatsArgs) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let stats = exclusion_stats(&g).context("computing exclusion statistics")?;
    write_json(
        Path::new("-"),
        &StatsReport {
            schema_version: SCHEMA_VERSION,
            solver_version: SOLVER_VERSION,
            stats,
        },
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMode {
    /// Every theory check plus the solver cross-check.
    Theory,
    /// Too large for inducer tables: cycle count and verdict agreement only.
    CycleCount,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub schema_version: u32,
    pub solver_version: &'static str,
    pub config: SolverConfig,
    pub mode: OracleMode,
    pub n: usize,
    pub hamilton_cycles: usize,
    pub report: Report,
    /// Present in theory mode.
    pub theory: Option<TheoryChecks>,
    pub checks: Vec<(String, bool)>,
}

impl OracleReport {
    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name.as_str())
            .collect()
    }
}

/// Runs the solver on `g` and compares it with exhaustive enumeration and,
/// for small models, with the exact closure.
pub fn oracle_checks(g: &DirectedGraph, cfg: &SolverConfig) -> Result<OracleReport> {
    let n = g.model_size();
    if n > CYCLE_LIMIT {
        return Err(input_error(format!(
            "oracle budget exceeded: model size {n} is above {CYCLE_LIMIT}"
        )));
    }
    let cycles = enumerate_hamilton_cycles(g)?;
    let (report, sets) = decide_with_sets(g, cfg)?;
    let verdict_sound = match report.decision.verdict {
        Verdict::NonHamiltonian => cycles.is_empty(),
        Verdict::Hamiltonian => report
            .decision
            .witness
            .as_ref()
            .is_some_and(|p| verify_cycle(p, g) && cycles.contains(p)),
        Verdict::Undecided => true,
    };
    let mut checks = vec![("verdict_sound".to_string(), verdict_sound)];
    let mut theory = None;
    let mode = if n <= THEORY_LIMIT {
        let t = theory.insert(check_theory(g)?);
        checks.extend(t.checks().iter().map(|&(name, ok)| (name.to_string(), ok)));
        let e = build_exclusion_set(g);
        let e_bar = exact_closure(&e, n)?.e_bar;
        checks.push((
            "e_tilde_bounds".to_string(),
            e.is_subset(&sets.e_tilde) && sets.e_tilde.is_subset(&e_bar),
        ));
        OracleMode::Theory
    } else {
        OracleMode::CycleCount
    };
    Ok(OracleReport {
        schema_version: SCHEMA_VERSION,
        solver_version: SOLVER_VERSION,
        config: cfg.clone(),
        mode,
        n,
        hamilton_cycles: cycles.len(),
        report,
        theory,
        checks,
    })
}

pub fn cmd_oracle(args: &OracleArgs) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let cfg = checked_config(args.solver.config())?;
    let out = oracle_checks(&g, &cfg)?;
    println!("hamilton cycles: {}", out.hamilton_cycles);
    println!("verdict: {:?}", out.report.decision.verdict);
    for (name, ok) in &out.checks {
        println!("{} {name}", if *ok { "PASS" } else { "FAIL" });
    }
    if let Some(path) = &args.json {
        write_json(path, &out)?;
    }
    let failed = out.failures();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CheckFailed(format!("failed checks: {}", failed.join(", "))).into())
    }
}

pub fn cmd_noniso(args: &NonisoArgs) -> Result<()> {
    let g = load_matrix(&args.g)?;
    let h = load_matrix(&args.h)?;
    let cfg = checked_config(args.solver.config())?;
    // every failure here comes from the shape of the inputs
    let report = decide_noniso(&g, &h, &cfg).map_err(|e| input_error(e.to_string()))?;
    write_json(Path::new("-"), &report)
}
