//! JSON file formats for graphs, probabilistic graphs and channels.

use serde::{Deserialize, Serialize};

use super::{ChannelSpec, Distribution, Graph, ProbabilisticGraph};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dist: Option<DistFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DistFile {
    Floats(Vec<f64>),
    Rational { num: Vec<u64>, den: u64 },
}

impl DistFile {
    pub fn to_distribution(&self) -> Result<Distribution> {
        match self {
            DistFile::Floats(w) => Distribution::new(w.clone()),
            DistFile::Rational { num, den } => Distribution::from_rational(num, *den),
        }
        .map_err(|e| Error::Format(format!("field `dist`: {e}")))
    }
}

impl GraphFile {
    pub fn from_graph(g: &Graph) -> Self {
        GraphFile {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: g.labels().map(<[String]>::to_vec),
            dist: None,
        }
    }

    pub fn from_probabilistic(pg: &ProbabilisticGraph) -> Self {
        let mut f = GraphFile::from_graph(&pg.graph);
        f.dist = Some(DistFile::Floats(pg.dist.weights().to_vec()));
        f
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::from_edges(self.n, &edges)
            .map_err(|e| Error::Format(format!("field `edges`: {e}")))?;
        match &self.labels {
            Some(l) => g
                .with_labels(l.clone())
                .map_err(|e| Error::Format(format!("field `labels`: {e}"))),
            None => Ok(g),
        }
    }

    /// The probabilistic graph; a missing `dist` means uniform.
    pub fn to_probabilistic(&self) -> Result<ProbabilisticGraph> {
        let g = self.to_graph()?;
        match &self.dist {
            Some(d) => ProbabilisticGraph::new(g, d.to_distribution()?)
                .map_err(|e| Error::Format(format!("field `dist`: {e}"))),
            None => Ok(ProbabilisticGraph::uniform(g)),
        }
    }
}

pub fn graph_from_json(text: &str) -> Result<Graph> {
    let f: GraphFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    f.to_graph()
}

pub fn probabilistic_from_json(text: &str) -> Result<ProbabilisticGraph> {
    let f: GraphFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    f.to_probabilistic()
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphFile::from_graph(g)).expect("graph serializes")
}

pub fn probabilistic_to_json(pg: &ProbabilisticGraph) -> String {
    serde_json::to_string(&GraphFile::from_probabilistic(pg)).expect("graph serializes")
}

pub fn channel_from_json(text: &str) -> Result<ChannelSpec> {
    let mut spec: ChannelSpec =
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    spec.support.sort_unstable();
    spec.support.dedup();
    spec.validate()?;
    Ok(spec)
}

pub fn channel_to_json(c: &ChannelSpec) -> String {
    serde_json::to_string(c).expect("channel serializes")
}
