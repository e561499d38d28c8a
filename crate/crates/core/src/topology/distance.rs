use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Digraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceMode {
    Directed,
    Undirected,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceStats {
    /// Mean over ordered pairs (u, v), u != v, with finite distance.
    /// `None` when there is no such pair.
    pub average: Option<f64>,
    pub diameter: usize,
    pub finite_pairs: u64,
}

const UNREACHED: usize = usize::MAX;

/// Hop distances from `source`; `None` for unreachable nodes.
pub fn bfs_distances(g: &Digraph, source: usize, mode: DistanceMode) -> Vec<Option<usize>> {
    let mut dist = vec![UNREACHED; g.node_count()];
    bfs_into(g, source, mode, &mut dist, &mut VecDeque::new());
    dist.into_iter()
        .map(|d| (d != UNREACHED).then_some(d))
        .collect()
}

fn bfs_into(
    g: &Digraph,
    source: usize,
    mode: DistanceMode,
    dist: &mut [usize],
    queue: &mut VecDeque<usize>,
) {
    dist.fill(UNREACHED);
    queue.clear();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = match mode {
            DistanceMode::Directed => g.out_neighbors(u),
            DistanceMode::Undirected => g.neighbors(u),
        };
        for &v in next {
            if dist[v] == UNREACHED {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
}

/// Full distance matrix, row per source.
pub fn all_pairs_distances(g: &Digraph, mode: DistanceMode) -> Vec<Vec<Option<usize>>> {
    (0..g.node_count())
        .into_par_iter()
        .map(|s| bfs_distances(g, s, mode))
        .collect()
}

/// Average distance and diameter from a BFS sweep over every source.
///
/// Both modes average over the ordered pairs that have a finite distance;
/// on a connected graph the undirected mode therefore covers all pairs.
pub fn distances(g: &Digraph, mode: DistanceMode) -> Result<DistanceStats> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyNetwork);
    }
    let (sum, pairs, diameter) = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![UNREACHED; n], VecDeque::new()),
            |(dist, queue), s| {
                bfs_into(g, s, mode, dist, queue);
                dist.iter()
                    .fold((0u64, 0u64, 0usize), |(sum, cnt, max), &d| {
                        if d == UNREACHED || d == 0 {
                            (sum, cnt, max)
                        } else {
                            (sum + d as u64, cnt + 1, max.max(d))
                        }
                    })
            },
        )
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2.max(b.2)));
    Ok(DistanceStats {
        average: (pairs > 0).then(|| sum as f64 / pairs as f64),
        diameter,
        finite_pairs: pairs,
    })
}
