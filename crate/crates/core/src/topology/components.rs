use serde::{Deserialize, Serialize};

use crate::depnet::{DependencyNetwork, Subnetwork};
use crate::disjoint_set::DisjointSet;
use crate::error::{Error, Result};
use crate::graph::Digraph;

/// Weakly connected components, ordered by size (descending) then by
/// smallest node id. Isolated nodes are singleton components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDecomposition {
    /// Sorted node ids of each component.
    pub components: Vec<Vec<usize>>,
    pub giant_index: usize,
    /// (nodes, links) per component.
    pub sizes: Vec<(usize, usize)>,
}

impl ComponentDecomposition {
    pub fn giant(&self) -> Option<&[usize]> {
        self.components.get(self.giant_index).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

pub fn components(g: &Digraph) -> ComponentDecomposition {
    let n = g.node_count();
    let mut ds = DisjointSet::new(n);
    for &(u, v) in g.links() {
        ds.union(u, v);
    }
    // roots are the smallest member, so iterating ids in order yields
    // components keyed by their smallest node
    let mut slot = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        let r = ds.find(u);
        if slot[r] == usize::MAX {
            slot[r] = comps.len();
            comps.push(Vec::new());
        }
        comps[slot[r]].push(u);
    }
    let mut links = vec![0usize; comps.len()];
    for &(u, _) in g.links() {
        links[slot[ds.find(u)]] += 1;
    }
    let mut order: Vec<usize> = (0..comps.len()).collect();
    order.sort_by(|&a, &b| {
        comps[b]
            .len()
            .cmp(&comps[a].len())
            .then(comps[a][0].cmp(&comps[b][0]))
    });
    let sizes = order.iter().map(|&i| (comps[i].len(), links[i])).collect();
    let components = order
        .into_iter()
        .map(|i| std::mem::take(&mut comps[i]))
        .collect();
    ComponentDecomposition {
        components,
        giant_index: 0,
        sizes,
    }
}

/// Subnetwork induced by the largest weakly connected component.
pub fn giant_subnetwork(n: &DependencyNetwork) -> Result<Subnetwork> {
    let decomposition = components(&n.graph());
    let giant = decomposition.giant().ok_or(Error::EmptyNetwork)?;
    Ok(n.induced(giant))
}
