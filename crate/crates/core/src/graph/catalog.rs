//! Named graph constructions.

use super::Graph;
use crate::error::{Error, Result};

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    Ok(Graph::from_fn(n, |u, v| v == u + 1 || (u == 0 && v == n - 1)))
}

pub fn complete(n: usize) -> Graph {
    Graph::from_fn(n, |_, _| true)
}

pub fn empty(n: usize) -> Graph {
    Graph::empty(n)
}

pub fn path(n: usize) -> Graph {
    Graph::from_fn(n, |u, v| v == u + 1)
}

/// Labels of the 27 lines on a cubic surface: `a1..a6`, `b1..b6`, `c12..c56`.
fn line_labels() -> Vec<Line> {
    let mut lines: Vec<Line> = (0..6).map(Line::A).collect();
    lines.extend((0..6).map(Line::B));
    for i in 0..6 {
        for j in i + 1..6 {
            lines.push(Line::C(i, j));
        }
    }
    lines
}

#[derive(Clone, Copy)]
enum Line {
    A(usize),
    B(usize),
    C(usize, usize),
}

impl Line {
    fn label(self) -> String {
        match self {
            Line::A(i) => format!("a{}", i + 1),
            Line::B(i) => format!("b{}", i + 1),
            Line::C(i, j) => format!("c{}{}", i + 1, j + 1),
        }
    }
}

fn lines_meet(x: Line, y: Line) -> bool {
    use Line::*;
    match (x, y) {
        (A(i), B(j)) | (B(j), A(i)) => i != j,
        (A(i), C(j, k)) | (C(j, k), A(i)) | (B(i), C(j, k)) | (C(j, k), B(i)) => {
            i == j || i == k
        }
        (C(i, j), C(k, l)) => i != k && i != l && j != k && j != l,
        _ => false,
    }
}

/// The Schläfli graph: 27 lines on a cubic surface, adjacent when skew.
pub fn schlafli() -> Graph {
    let lines = line_labels();
    let g = Graph::from_fn(27, |u, v| !lines_meet(lines[u], lines[v]));
    g.with_labels(lines.iter().map(|l| l.label()).collect())
        .expect("27 labels")
}

/// Looks up a catalog graph. Sized families take their vertex count as `params[0]`.
pub fn catalog_get(name: &str, params: &[usize]) -> Result<Graph> {
    let size = || {
        params.first().copied().ok_or_else(|| {
            Error::InvalidParameter(format!("catalog graph `{name}` needs a vertex count"))
        })
    };
    match name.to_ascii_lowercase().as_str() {
        "cycle" | "c" => cycle(size()?),
        "complete" | "k" => Ok(complete(size()?)),
        "empty" | "n" => Ok(empty(size()?)),
        "path" | "p" => Ok(path(size()?)),
        "schlafli" => Ok(schlafli()),
        _ => Err(Error::UnknownCatalog(name.to_string())),
    }
}
