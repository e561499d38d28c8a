use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{modularity, CommunityPartition};
use crate::disjoint_set::DisjointSet;
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::topology::components;

/// One agglomeration step: communities `a < b` become community `n + step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub step: usize,
    pub a: usize,
    pub b: usize,
    pub delta_sigma: f64,
}

#[derive(Clone, Copy, PartialEq)]
struct Candidate {
    delta: f64,
    a: usize,
    b: usize,
}

impl Eq for Candidate {}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.delta
            .total_cmp(&other.delta)
            .then(self.a.cmp(&other.a))
            .then(self.b.cmp(&other.b))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn check_input(g: &Digraph, t: usize) -> Result<()> {
    if t < 1 {
        return Err(Error::InvalidArgument(
            "walk length must be at least 1".into(),
        ));
    }
    if g.node_count() == 0 {
        return Err(Error::EmptyNetwork);
    }
    if g.undirected_edge_count() == 0 {
        return Err(Error::NoLinks);
    }
    if components(g).len() > 1 {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Row `source` of P^t on the undirected projection, each entry divided by
/// the square root of the target's degree.
fn walk_row(g: &Digraph, source: usize, t: usize) -> Vec<f64> {
    let n = g.node_count();
    let mut cur = vec![0.0; n];
    let mut next = vec![0.0; n];
    cur[source] = 1.0;
    for _ in 0..t {
        next.fill(0.0);
        for (u, &p) in cur.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let ns = g.neighbors(u);
            let share = p / ns.len() as f64;
            for &v in ns {
                next[v] += share;
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    for (k, p) in cur.iter_mut().enumerate() {
        *p /= (g.undirected_degree(k) as f64).sqrt();
    }
    cur
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Random-walk distance between nodes `i` and `j` after `t` steps.
pub fn walk_distance(g: &Digraph, i: usize, j: usize, t: usize) -> Result<f64> {
    check_input(g, t)?;
    Ok(squared_distance(&walk_row(g, i, t), &walk_row(g, j, t)).sqrt())
}

/// Community assignment after applying the first `steps` merges, with
/// community ids numbered by first appearance over node ids.
pub fn cut_assignment(n: usize, merges: &[Merge], steps: usize) -> Vec<usize> {
    // merged community ids map back to the node that represents them
    let mut representative: Vec<usize> = (0..n).collect();
    let mut ds = DisjointSet::new(n);
    for m in &merges[..steps] {
        let (ra, rb) = (representative[m.a], representative[m.b]);
        ds.union(ra, rb);
        representative.push(ra.min(rb));
    }
    let mut dense = vec![usize::MAX; n];
    let mut next = 0;
    (0..n)
        .map(|u| {
            let r = ds.find(u);
            if dense[r] == usize::MAX {
                dense[r] = next;
                next += 1;
            }
            dense[r]
        })
        .collect()
}

/// Walktrap agglomerative clustering on the undirected projection of a
/// connected graph, returning the dendrogram cut of highest modularity and
/// the full merge list.
///
/// Merges always join adjacent communities with the smallest increase in
/// mean squared walk distance; ties go to the smallest (lower id, higher id)
/// pair. Among equally good cuts the earliest one wins.
pub fn walktrap(g: &Digraph, t: usize) -> Result<(CommunityPartition, Vec<Merge>)> {
    check_input(g, t)?;
    let n = g.node_count();
    let m = g.undirected_edge_count() as i128;

    let mut rows: Vec<Option<Vec<f64>>> = (0..n)
        .into_par_iter()
        .map(|u| Some(walk_row(g, u, t)))
        .collect();
    let mut size: Vec<usize> = vec![1; n];
    let mut degree: Vec<i128> = (0..n).map(|u| g.undirected_degree(u) as i128).collect();
    // neighbour community -> edges between the two
    let mut adjacent: Vec<BTreeMap<usize, i128>> = (0..n)
        .map(|u| g.neighbors(u).iter().map(|&v| (v, 1)).collect())
        .collect();
    let mut pair_delta: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut queue: BTreeSet<Candidate> = BTreeSet::new();

    let delta_sigma = |ra: &[f64], sa: usize, rb: &[f64], sb: usize| {
        let (sa, sb) = (sa as f64, sb as f64);
        sa * sb / (sa + sb) * squared_distance(ra, rb) / n as f64
    };

    for (u, v) in g.undirected_edges() {
        let d = delta_sigma(
            rows[u].as_deref().unwrap(),
            1,
            rows[v].as_deref().unwrap(),
            1,
        );
        pair_delta.insert((u, v), d);
        queue.insert(Candidate {
            delta: d,
            a: u,
            b: v,
        });
    }

    // modularity numerator 4m * sum(e_c) - sum(d_c^2), tracked exactly
    let mut intra: i128 = 0;
    let mut deg_sq: i128 = degree.iter().map(|d| d * d).sum();
    let mut best_score = 4 * m * intra - deg_sq;
    let mut best_steps = 0;
    let mut merges = Vec::with_capacity(n - 1);

    while let Some(c) = queue.pop_first() {
        let (a, b) = (c.a, c.b);
        pair_delta.remove(&(a, b));
        let id = n + merges.len();
        merges.push(Merge {
            step: merges.len(),
            a,
            b,
            delta_sigma: c.delta,
        });

        let ra = rows[a].take().unwrap();
        let rb = rows[b].take().unwrap();
        let (sa, sb) = (size[a], size[b]);
        let total = (sa + sb) as f64;
        let merged: Vec<f64> = ra
            .iter()
            .zip(&rb)
            .map(|(x, y)| (sa as f64 * x + sb as f64 * y) / total)
            .collect();

        let mut na = std::mem::take(&mut adjacent[a]);
        let nb = std::mem::take(&mut adjacent[b]);
        let between = na.remove(&b).unwrap_or(0);
        for (k, e) in nb {
            if k != a {
                *na.entry(k).or_insert(0) += e;
            }
        }
        intra += between;
        deg_sq += 2 * degree[a] * degree[b];

        size.push(sa + sb);
        degree.push(degree[a] + degree[b]);
        for (&k, &e) in &na {
            for old in [a, b] {
                let key = (old.min(k), old.max(k));
                if let Some(d) = pair_delta.remove(&key) {
                    queue.remove(&Candidate {
                        delta: d,
                        a: key.0,
                        b: key.1,
                    });
                }
                adjacent[k].remove(&old);
            }
            adjacent[k].insert(id, e);
            let d = delta_sigma(&merged, sa + sb, rows[k].as_deref().unwrap(), size[k]);
            pair_delta.insert((k, id), d);
            queue.insert(Candidate {
                delta: d,
                a: k,
                b: id,
            });
        }
        adjacent.push(na);
        rows.push(Some(merged));

        let score = 4 * m * intra - deg_sq;
        if score > best_score {
            best_score = score;
            best_steps = merges.len();
        }
    }

    let assignment = cut_assignment(n, &merges, best_steps);
    let community_count = n - best_steps;
    let q = modularity(g, &assignment)?;
    Ok((
        CommunityPartition {
            assignment,
            community_count,
            modularity: q,
            walktrap_t: t,
        },
        merges,
    ))
}
