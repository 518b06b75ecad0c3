//! JSON instance files.
//!
//! ```json
//! {"topology": {"kind": "path", "nodes": 6, "edges": [[0,1],[1,2],[2,3],[3,4],[4,5]]},
//!  "d": 2, "k": "inf", "paths": [[0,1,2,3,4,5]]}
//! ```
//!
//! The order of `paths` is arrival order; a path's id is its index. For a
//! path topology `edges` may be omitted, but if present must be the line.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Lightpath, NodeCap, NodeId, Topology, TopologyKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub topology: Topology,
    pub d: usize,
    pub k: NodeCap,
    pub paths: Vec<Lightpath>,
}

#[derive(Serialize, Deserialize)]
struct TopologyFile {
    kind: TopologyKind,
    nodes: usize,
    #[serde(default)]
    edges: Vec<[NodeId; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CapFile {
    Finite(usize),
    Text(String),
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    topology: TopologyFile,
    d: usize,
    k: CapFile,
    paths: Vec<Vec<NodeId>>,
}

impl Instance {
    /// Builds an instance, renumbering path ids to arrival order and
    /// validating every path against the topology.
    pub fn new(topology: Topology, d: usize, k: NodeCap, paths: Vec<Vec<NodeId>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Format("d must be at least 1".into()));
        }
        if k == NodeCap::Bounded(0) {
            return Err(Error::Format("k must be at least 1".into()));
        }
        let paths: Vec<Lightpath> = paths.into_iter().enumerate().map(|(i, nodes)| Lightpath::new(i, nodes)).collect();
        for p in &paths {
            topology.check_path(p)?;
        }
        Ok(Self { topology, d, k, paths })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let topology = match file.topology.kind {
            TopologyKind::Path => {
                let t = Topology::path(file.topology.nodes)?;
                if !file.topology.edges.is_empty() {
                    let given =
                        Topology::general(file.topology.nodes, file.topology.edges.iter().map(|e| (e[0], e[1])))?;
                    if !given.edges().eq(t.edges()) {
                        return Err(Error::Format("path topology edges must be (i, i+1)".into()));
                    }
                }
                t
            }
            TopologyKind::General => {
                Topology::general(file.topology.nodes, file.topology.edges.iter().map(|e| (e[0], e[1])))?
            }
        };
        let k = match file.k {
            CapFile::Finite(k) => NodeCap::Bounded(k),
            CapFile::Text(t) if t == "inf" => NodeCap::Unbounded,
            CapFile::Text(t) => return Err(Error::Format(format!("k must be an integer or \"inf\", got {t:?}"))),
        };
        Self::new(topology, file.d, k, file.paths)
    }

    pub fn to_json(&self) -> String {
        let file = InstanceFile {
            topology: TopologyFile {
                kind: self.topology.kind(),
                nodes: self.topology.node_count(),
                edges: self.topology.edges().map(|(u, v)| [u, v]).collect(),
            },
            d: self.d,
            k: match self.k {
                NodeCap::Bounded(k) => CapFile::Finite(k),
                NodeCap::Unbounded => CapFile::Text("inf".into()),
            },
            paths: self.paths.iter().map(|p| p.nodes.clone()).collect(),
        };
        serde_json::to_string(&file).expect("instance serializes")
    }
}
