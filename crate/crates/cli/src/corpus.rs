//! Manifest-driven batch runs.
//!
//! A manifest names each graph, where it comes from and what the solver is
//! expected to report. Paths are relative to the manifest's directory.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use wca_core::wca::{decide, exclusion_stats, Report, SolverConfig, Stage, Verdict};

use crate::input::{load_graph, parse_graph};
use crate::{input_error, CheckFailed, CorpusArgs, Format, GraphArgs};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(rename = "graph")]
    pub graphs: Vec<Entry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub name: String,
    /// Builtin graph name, used when `file` is absent.
    pub builtin: Option<String>,
    pub file: Option<PathBuf>,
    pub format: Option<String>,
    #[serde(default)]
    pub directed: bool,
    pub start_vertex: Option<usize>,
    /// Where the encoding came from.
    pub provenance: String,
    #[serde(default)]
    pub expect: Expect,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    /// Acceptable verdicts; empty accepts any.
    #[serde(default)]
    pub verdict: Vec<Verdict>,
    pub stage: Option<Stage>,
    pub p_free: Option<usize>,
    pub q_free: Option<usize>,
    pub e_size: Option<usize>,
    /// `e_tilde_size` must equal `e_size_initial`.
    #[serde(default)]
    pub no_new_deductions: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Line {
    pub name: String,
    pub provenance: String,
    pub ok: bool,
    pub mismatches: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
}

pub fn load_manifest(path: &Path) -> Result<Manifest> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn format_of(name: &str) -> Result<Format> {
    match name {
        "edgelist" => Ok(Format::Edgelist),
        "graph6" => Ok(Format::Graph6),
        "builtin" => Ok(Format::Builtin),
        other => Err(input_error(format!("unknown format `{other}`"))),
    }
}

fn load_entry(entry: &Entry, root: &Path) -> Result<wca_core::graph::DirectedGraph> {
    let (input, format) = match (&entry.file, &entry.builtin) {
        (Some(file), None) => (
            root.join(file).to_string_lossy().into_owned(),
            entry.format.as_deref().map(format_of).transpose()?,
        ),
        (None, Some(b)) => {
            parse_graph(b, Format::Builtin, false)?;
            (b.clone(), Some(Format::Builtin))
        }
        _ => {
            return Err(input_error(format!(
                "{}: give exactly one of `file` and `builtin`",
                entry.name
            )))
        }
    };
    load_graph(&GraphArgs {
        input,
        format,
        directed: entry.directed,
        start_vertex: entry.start_vertex,
    })
}

/// Lists everything in `report` that contradicts `expect`.
pub fn mismatches(expect: &Expect, report: &Report) -> Vec<String> {
    let mut out = Vec::new();
    let verdict = report.decision.verdict;
    if !expect.verdict.is_empty() && !expect.verdict.contains(&verdict) {
        out.push(format!("verdict {verdict:?}, expected one of {:?}", expect.verdict));
    }
    if let Some(stage) = expect.stage {
        if report.decision.stage != stage {
            out.push(format!("stage {:?}, expected {stage:?}", report.decision.stage));
        }
    }
    if expect.no_new_deductions && report.e_tilde_size != report.e_size_initial {
        out.push(format!(
            "e_tilde_size {} differs from e_size_initial {}",
            report.e_tilde_size, report.e_size_initial
        ));
    }
    out
}

pub fn run_entry(entry: &Entry, root: &Path, cfg: &SolverConfig) -> Line {
    let mut line = Line {
        name: entry.name.clone(),
        provenance: entry.provenance.clone(),
        ok: false,
        mismatches: Vec::new(),
        error: None,
        report: None,
    };
    let result = (|| -> Result<()> {
        let g = load_entry(entry, root)?;
        let stats = exclusion_stats(&g)?;
        let e = &entry.expect;
        for (label, want, got) in [
            ("p_free", e.p_free, stats.p_free),
            ("q_free", e.q_free, stats.q_free),
            ("e_size", e.e_size, stats.e_size),
        ] {
            if want.is_some_and(|w| w != got) {
                line.mismatches
                    .push(format!("{label} {got}, expected {}", want.unwrap()));
            }
        }
        let report = decide(&g, cfg)?;
        line.mismatches.extend(mismatches(e, &report));
        line.report = Some(report);
        Ok(())
    })();
    if let Err(err) = result {
        line.error = Some(format!("{err:#}"));
    }
    line.ok = line.error.is_none() && line.mismatches.is_empty();
    line
}

pub fn run_manifest(manifest: &Manifest, root: &Path, cfg: &SolverConfig, jobs: usize) -> Result<Vec<Line>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .context("starting worker pool")?;
    Ok(pool.install(|| {
        manifest
            .graphs
            .par_iter()
            .map(|entry| run_entry(entry, root, cfg))
            .collect()
    }))
}

pub fn cmd_corpus(args: &CorpusArgs) -> Result<()> {
    let manifest = load_manifest(&args.manifest)?;
    let cfg = args.solver.config();
    cfg.validate().map_err(|e| input_error(e.to_string()))?;
    let root = args.manifest.parent().unwrap_or(Path::new("."));
    let lines = run_manifest(&manifest, root, &cfg, args.jobs)?;
    for line in &lines {
        println!("{}", serde_json::to_string(line)?);
    }
    let errors = lines.iter().filter(|l| l.error.is_some()).count();
    let failed = lines.iter().filter(|l| !l.ok).count();
    if errors > 0 {
        Err(input_error(format!("{errors} graph(s) could not be run")))
    } else if failed > 0 {
        Err(CheckFailed(format!("{failed} of {} graph(s) differ from the manifest", lines.len())).into())
    } else {
        Ok(())
    }
}
