//! Parameter dependency networks.
//!
//! A link `p1 -> p2` means some operation takes an instance of archetype
//! `p1` as input and yields an instance of archetype `p2` as output. Links
//! are simple (one per ordered pair) and carry the number of contributing
//! input/output instance pairs as weight. Pairs whose endpoints collapse to
//! the same archetype are counted in `self_loop_count` instead.

mod io;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::collection::ServiceCollection;
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::matching::{build_archetypes, Archetype, Matcher, MatcherKind};

pub use io::{export, load_network, read_graphml, save_network, sidecar_path, ExportFormat};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    pub source: usize,
    pub target: usize,
    pub weight: usize,
    /// One operation id per contributing (input, output) instance pair.
    pub witness_operations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyNetwork {
    nodes: Vec<Archetype>,
    links: Vec<Link>,
    matcher: MatcherKind,
    self_loop_count: usize,
}

impl DependencyNetwork {
    /// Assembles a network from parts, checking the simple-graph invariants.
    /// Links are sorted by (source, target).
    pub fn from_parts(
        nodes: Vec<Archetype>,
        mut links: Vec<Link>,
        matcher: MatcherKind,
        self_loop_count: usize,
    ) -> Result<Self> {
        for (i, node) in nodes.iter().enumerate() {
            if node.id != i {
                return Err(Error::InvalidArgument(format!(
                    "node at position {i} has id {}",
                    node.id
                )));
            }
        }
        links.sort_by_key(|l| (l.source, l.target));
        for pair in links.windows(2) {
            if (pair[0].source, pair[0].target) == (pair[1].source, pair[1].target) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate link {} -> {}",
                    pair[0].source, pair[0].target
                )));
            }
        }
        for l in &links {
            if l.source >= nodes.len() || l.target >= nodes.len() {
                return Err(Error::InvalidArgument(format!(
                    "link {} -> {} has an endpoint outside 0..{}",
                    l.source,
                    l.target,
                    nodes.len()
                )));
            }
            if l.source == l.target {
                return Err(Error::InvalidArgument(format!("self-loop on {}", l.source)));
            }
            if l.weight == 0 {
                return Err(Error::InvalidArgument(format!(
                    "link {} -> {} has zero weight",
                    l.source, l.target
                )));
            }
        }
        Ok(Self {
            nodes,
            links,
            matcher,
            self_loop_count,
        })
    }

    /// Network over anonymous nodes `0..n` labelled by their id, with unit
    /// weights. Meant for tests and synthetic graphs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let nodes = (0..n)
            .map(|id| Archetype {
                id,
                label: id.to_string(),
                key: id.to_string(),
                members: Vec::new(),
                instance_count: 0,
            })
            .collect();
        let mut dedup: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &(u, v) in edges {
            if u != v {
                *dedup.entry((u, v)).or_default() += 1;
            }
        }
        let links = dedup
            .into_iter()
            .map(|((source, target), weight)| Link {
                source,
                target,
                weight,
                witness_operations: Vec::new(),
            })
            .collect();
        Self::from_parts(nodes, links, MatcherKind::SyntacticEqual, 0)
    }

    pub fn nodes(&self) -> &[Archetype] {
        &self.nodes
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn matcher(&self) -> MatcherKind {
        self.matcher
    }

    pub fn self_loop_count(&self) -> usize {
        self.self_loop_count
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Unweighted simple graph view used by every metric.
    pub fn graph(&self) -> Digraph {
        Digraph::new(
            self.nodes.len(),
            self.links.iter().map(|l| (l.source, l.target)),
        )
    }

    /// Subnetwork induced by `node_ids` (in that order), ids re-densified.
    pub fn induced(&self, node_ids: &[usize]) -> Subnetwork {
        let mut pos = vec![usize::MAX; self.nodes.len()];
        for (i, &u) in node_ids.iter().enumerate() {
            pos[u] = i;
        }
        let nodes = node_ids
            .iter()
            .enumerate()
            .map(|(i, &u)| Archetype {
                id: i,
                ..self.nodes[u].clone()
            })
            .collect();
        let links = self
            .links
            .iter()
            .filter(|l| pos[l.source] != usize::MAX && pos[l.target] != usize::MAX)
            .map(|l| Link {
                source: pos[l.source],
                target: pos[l.target],
                ..l.clone()
            })
            .collect();
        let network = Self::from_parts(nodes, links, self.matcher, 0)
            .expect("induced subgraph keeps invariants");
        Subnetwork {
            network,
            original_ids: node_ids.to_vec(),
        }
    }
}

/// A network derived from another one, with the id translation retained:
/// node `i` of `network` is node `original_ids[i]` of the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subnetwork {
    pub network: DependencyNetwork,
    pub original_ids: Vec<usize>,
}

pub fn build_network(c: &ServiceCollection, matcher: impl Into<Matcher>) -> DependencyNetwork {
    let matcher = matcher.into();
    let archetypes = build_archetypes(c, matcher);
    let map = &archetypes.instance_map;

    let mut links: BTreeMap<(usize, usize), Link> = BTreeMap::new();
    let mut self_loop_count = 0;
    let mut offset = 0;
    for op in c.operations() {
        let first_output = offset + op.inputs.len();
        for i in offset..first_output {
            for o in first_output..first_output + op.outputs.len() {
                let (source, target) = (map[i], map[o]);
                if source == target {
                    self_loop_count += 1;
                    continue;
                }
                let link = links.entry((source, target)).or_insert_with(|| Link {
                    source,
                    target,
                    weight: 0,
                    witness_operations: Vec::new(),
                });
                link.weight += 1;
                link.witness_operations.push(op.id.clone());
            }
        }
        offset = first_output + op.outputs.len();
    }

    DependencyNetwork::from_parts(
        archetypes.archetypes,
        links.into_values().collect(),
        matcher.kind,
        self_loop_count,
    )
    .expect("constructed network keeps invariants")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetworkSummary {
    pub nodes: usize,
    pub links: usize,
    pub isolated_nodes: usize,
    pub isolated_fraction: f64,
    pub self_loop_count: usize,
}

pub fn network_summary(n: &DependencyNetwork) -> NetworkSummary {
    let g = n.graph();
    let isolated_nodes = (0..g.node_count())
        .filter(|&u| g.undirected_degree(u) == 0)
        .count();
    NetworkSummary {
        nodes: n.node_count(),
        links: n.link_count(),
        isolated_nodes,
        isolated_fraction: if n.is_empty() {
            0.0
        } else {
            isolated_nodes as f64 / n.node_count() as f64
        },
        self_loop_count: n.self_loop_count,
    }
}
