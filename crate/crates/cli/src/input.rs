use std::fs;
use std::path::Path;

use clap::ValueEnum;
use madcert::graph::{generate, parse_edge_list, parse_graph6, Generator, Graph};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Edgelist,
    Graph6,
}

/// Resolves one input argument. `gen:<name>` builds a named graph;
/// anything else is a file whose format comes from `forced` or, failing
/// that, its extension (`.g6`/`.graph6` are graph6, everything else an
/// edge list).
pub fn load_graph(input: &str, forced: Option<InputFormat>) -> Result<Graph, CliError> {
    let fail = |message: String| CliError::Input {
        input: input.to_string(),
        message,
    };
    if let Some(spec) = input.strip_prefix("gen:") {
        let gen: Generator = spec.parse().map_err(|e| fail(format!("{e}")))?;
        return generate(gen).map_err(|e| fail(format!("{e}")));
    }
    let text = fs::read_to_string(input).map_err(|e| fail(format!("cannot read: {e}")))?;
    let format = forced.unwrap_or_else(|| detect(input));
    match format {
        InputFormat::Graph6 => parse_graph6(&text),
        InputFormat::Edgelist => parse_edge_list(&text),
    }
    .map_err(|e| fail(format!("{e}")))
}

fn detect(input: &str) -> InputFormat {
    match Path::new(input).extension().and_then(|e| e.to_str()) {
        Some("g6") | Some("graph6") => InputFormat::Graph6,
        _ => InputFormat::Edgelist,
    }
}
