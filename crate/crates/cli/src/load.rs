//! Reading input files and inline lists.

use std::fs;
use std::path::Path;

use zeroerr::codec::Codebook;
use zeroerr::graph::io::GraphFile;
use zeroerr::graph::{ChannelSpec, Distribution, Graph, ProbabilisticGraph};
use zeroerr::Error;

use crate::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Failed(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path) -> impl Fn(Error) -> CliError + '_ {
    move |e| CliError::Failed(format!("{}: {e}", path.display()))
}

fn graph_file(path: &Path) -> Result<GraphFile, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Failed(format!("{}: malformed graph file: {e}", path.display())))
}

pub fn graph(path: &Path) -> Result<Graph, CliError> {
    graph_file(path)?.to_graph().map_err(in_file(path))
}

/// A probabilistic graph; files without a `dist` field get the uniform distribution.
pub fn probabilistic(path: &Path) -> Result<ProbabilisticGraph, CliError> {
    let f = graph_file(path)?;
    if f.dist.is_some() {
        f.to_probabilistic().map_err(in_file(path))
    } else {
        Ok(ProbabilisticGraph::uniform(f.to_graph().map_err(in_file(path))?))
    }
}

/// Whether the file carries its own distribution.
pub fn has_dist(path: &Path) -> Result<bool, CliError> {
    Ok(graph_file(path)?.dist.is_some())
}

pub fn channel(path: &Path) -> Result<ChannelSpec, CliError> {
    zeroerr::graph::io::channel_from_json(&read(path)?).map_err(in_file(path))
}

/// A codebook file: a JSON list of equal-length integer sequences.
pub fn codebook(path: &Path) -> Result<Codebook, CliError> {
    let words: Vec<Vec<usize>> = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Failed(format!("{}: malformed codebook: {e}", path.display())))?;
    let n = words.first().map_or(0, Vec::len);
    if n == 0 || words.iter().any(|w| w.len() != n) {
        return Err(CliError::Failed(format!(
            "{}: codewords must be non-empty and of equal length",
            path.display()
        )));
    }
    Ok(Codebook::unchecked(n, words))
}

/// Joint weights: a JSON matrix indexed `[x][y]`.
pub fn matrix(path: &Path) -> Result<Vec<Vec<f64>>, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Failed(format!("{}: malformed weight matrix: {e}", path.display())))
}

pub fn floats(text: &str, what: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Failed(format!("{what}: `{s}` is not a number")))
        })
        .collect()
}

pub fn distribution(text: &str, what: &str) -> Result<Distribution, CliError> {
    Distribution::new(floats(text, what)?).map_err(|e| CliError::Failed(format!("{what}: {e}")))
}

/// Edges written as `0-1,1-2,...`.
pub fn edges(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|e| {
            let bad = || CliError::Failed(format!("edges: `{e}` is not of the form u-v"));
            let (u, v) = e.trim().split_once('-').ok_or_else(bad)?;
            Ok((u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?))
        })
        .collect()
}
