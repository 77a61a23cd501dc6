use std::fs;
use std::path::Path;

use anyhow::Result;
use wca_core::graph::{builtin_graph, parse_edge_list, parse_graph6, Builtin, DirectedGraph};
use wca_core::model::ExclusionSet;

use crate::{input_error, Format, GraphArgs};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))
}

/// Format named by the flag, else by the file extension, else builtin when
/// no such file exists.
pub fn infer_format(args: &GraphArgs) -> Format {
    if let Some(f) = args.format {
        return f;
    }
    let path = Path::new(&args.input);
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6" | "graph6") => Format::Graph6,
        _ if path.exists() => Format::Edgelist,
        _ if args.input.parse::<Builtin>().is_ok() => Format::Builtin,
        _ => Format::Edgelist,
    }
}

pub fn parse_graph(text: &str, format: Format, directed: bool) -> Result<DirectedGraph> {
    let g = match format {
        Format::Edgelist => parse_edge_list(text, directed),
        Format::Graph6 => parse_graph6(text),
        Format::Builtin => text.parse::<Builtin>().and_then(builtin_graph),
    };
    g.map_err(|e| input_error(e.to_string()))
}

pub fn load_graph(args: &GraphArgs) -> Result<DirectedGraph> {
    let format = infer_format(args);
    let g = match format {
        Format::Builtin => parse_graph(&args.input, format, args.directed)?,
        _ => {
            let path = Path::new(&args.input);
            let text = read(path)?;
            parse_graph(&text, format, args.directed).map_err(|e| input_error(format!("{}: {e}", path.display())))?
        }
    };
    match args.start_vertex {
        Some(label) => g.relabel_as_start(label).map_err(|e| input_error(e.to_string())),
        None => Ok(g),
    }
}

/// Reads `u i v j` lines for a model of size `n`.
pub fn load_seed(path: &Path, n: usize) -> Result<ExclusionSet> {
    let text = read(path)?;
    ExclusionSet::from_text(&text, n).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

/// A square 0/1 matrix, one row per line. Entries may be separated by
/// whitespace or commas, or written as one run of digits.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<bool>>> {
    let mut rows = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        let cells: Vec<char> = if tokens.len() == 1 {
            tokens[0].chars().collect()
        } else {
            tokens
                .iter()
                .map(|t| if t.len() == 1 { t.chars().next().unwrap() } else { '?' })
                .collect()
        };
        let row = cells
            .into_iter()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(input_error(format!("line {}: entries must be 0 or 1", k + 1))),
            })
            .collect::<Result<Vec<bool>>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 {
        return Err(input_error("empty matrix"));
    }
    if let Some(bad) = rows.iter().position(|r| r.len() != n) {
        return Err(input_error(format!(
            "matrix is not square: {n} rows but row {} has {} entries",
            bad + 1,
            rows[bad].len()
        )));
    }
    Ok(rows)
}

pub fn load_matrix(path: &Path) -> Result<Vec<Vec<bool>>> {
    let text = read(path)?;
    parse_matrix(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}
