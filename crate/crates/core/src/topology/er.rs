use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::clustering::transitivity;
use super::components::components;
use super::distance::{distances, DistanceMode};
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::rng::stream_rng;

/// Random-graph reference values for a network with the same node and link
/// counts. Monte-Carlo figures are measured on each sample's giant component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErBaseline {
    pub nodes: usize,
    pub links: usize,
    pub samples: usize,
    pub seed: u64,
    pub avg_distance_mean: Option<f64>,
    pub avg_distance_sd: Option<f64>,
    pub transitivity_mean: f64,
    pub transitivity_sd: f64,
    /// `<k> / n`
    pub analytic_transitivity: f64,
    /// `ln n / ln <k>`, undefined when `<k> <= 1`.
    pub analytic_distance: Option<f64>,
}

fn pair_count(n: usize) -> u128 {
    n as u128 * n.saturating_sub(1) as u128 / 2
}

/// Uniform simple undirected graph with `n` nodes and exactly `m` edges.
pub fn gnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Digraph> {
    let total = pair_count(n);
    if m as u128 > total {
        return Err(Error::InvalidArgument(format!(
            "{m} edges do not fit in a simple graph on {n} nodes"
        )));
    }
    let total = usize::try_from(total)
        .map_err(|_| Error::InvalidArgument(format!("{n} nodes is too many")))?;
    // offsets[i] = index of pair (i, i + 1) in row-major upper-triangle order
    let offsets: Vec<usize> = (0..n).map(|i| i * (2 * n - i - 1) / 2).collect();
    let edges = index::sample(rng, total, m).into_iter().map(|k| {
        let i = offsets.partition_point(|&o| o <= k) - 1;
        (i, i + 1 + (k - offsets[i]))
    });
    Ok(Digraph::undirected(n, edges))
}

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

pub fn er_baseline(nodes: usize, links: usize, samples: usize, seed: u64) -> Result<ErBaseline> {
    if nodes == 0 {
        return Err(Error::EmptyNetwork);
    }
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "at least one random sample is required".into(),
        ));
    }
    if links as u128 > pair_count(nodes) {
        return Err(Error::Degenerate {
            what: "random baseline",
            reason: format!("{links} links exceed the {} node pairs", pair_count(nodes)),
        });
    }
    let measured: Vec<(Option<f64>, f64)> = (0..samples as u64)
        .into_par_iter()
        .map(|s| {
            let g = gnm(nodes, links, &mut stream_rng(seed, s))?;
            let decomposition = components(&g);
            let giant = g.induced(decomposition.giant().unwrap_or(&[]));
            let d = distances(&giant, DistanceMode::Undirected)?;
            Ok((d.average, transitivity(&giant)))
        })
        .collect::<Result<_>>()?;

    let dist: Vec<f64> = measured.iter().filter_map(|m| m.0).collect();
    let trans: Vec<f64> = measured.iter().map(|m| m.1).collect();
    let (dist_mean, dist_sd) = if dist.is_empty() {
        (None, None)
    } else {
        let (m, s) = mean_sd(&dist);
        (Some(m), Some(s))
    };
    let (transitivity_mean, transitivity_sd) = mean_sd(&trans);
    let k = 2.0 * links as f64 / nodes as f64;
    Ok(ErBaseline {
        nodes,
        links,
        samples,
        seed,
        avg_distance_mean: dist_mean,
        avg_distance_sd: dist_sd,
        transitivity_mean,
        transitivity_sd,
        analytic_transitivity: k / nodes as f64,
        analytic_distance: (k > 1.0).then(|| (nodes as f64).ln() / k.ln()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnm_has_exact_edge_count() {
        let mut rng = stream_rng(3, 0);
        let g = gnm(30, 100, &mut rng).unwrap();
        assert_eq!(g.undirected_edge_count(), 100);
        assert!(g.undirected_edges().all(|(u, v)| u < v && v < 30));
    }

    #[test]
    fn gnm_covers_every_pair() {
        let mut rng = stream_rng(0, 0);
        let g = gnm(7, 21, &mut rng).unwrap();
        assert_eq!(g.undirected_edge_count(), 21);
        assert!(gnm(7, 22, &mut rng).is_err());
    }

    #[test]
    fn complete_graph_baseline() {
        let b = er_baseline(10, 45, 5, 1).unwrap();
        assert_eq!(b.avg_distance_mean, Some(1.0));
        assert_eq!(b.transitivity_mean, 1.0);
        assert_eq!(b.transitivity_sd, 0.0);
        assert!((b.analytic_transitivity - 0.9).abs() < 1e-12);
        assert!((b.analytic_distance.unwrap() - 10f64.ln() / 9f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn deterministic_for_seed() {
        let a = er_baseline(60, 120, 8, 42).unwrap();
        let b = er_baseline(60, 120, 8, 42).unwrap();
        assert_eq!(a, b);
        let c = er_baseline(60, 120, 8, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn too_many_links_is_degenerate() {
        assert!(er_baseline(3, 4, 1, 0).unwrap_err().is_degenerate());
    }

    #[test]
    fn sparse_graph_has_no_analytic_distance() {
        let b = er_baseline(10, 3, 2, 0).unwrap();
        assert_eq!(b.analytic_distance, None);
    }
}
