//! Community detection on the undirected projection: Newman modularity and
//! Walktrap.

mod walktrap;

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Digraph;

pub use walktrap::{cut_assignment, walk_distance, walktrap, Merge};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityPartition {
    /// Community of each node, dense ids from 0.
    pub assignment: Vec<usize>,
    pub community_count: usize,
    pub modularity: f64,
    pub walktrap_t: usize,
}

/// Newman modularity of `assignment` on the simple undirected projection.
pub fn modularity(g: &Digraph, assignment: &[usize]) -> Result<f64> {
    if assignment.len() != g.node_count() {
        return Err(Error::InvalidArgument(format!(
            "assignment covers {} nodes, graph has {}",
            assignment.len(),
            g.node_count()
        )));
    }
    let m = g.undirected_edge_count();
    if m == 0 {
        return Err(Error::NoLinks);
    }
    let k = assignment.iter().max().map_or(0, |c| c + 1);
    let mut intra = vec![0u64; k];
    let mut degree = vec![0u64; k];
    for (u, v) in g.undirected_edges() {
        if assignment[u] == assignment[v] {
            intra[assignment[u]] += 1;
        }
    }
    for (u, &c) in assignment.iter().enumerate() {
        degree[c] += g.undirected_degree(u) as u64;
    }
    let m = m as f64;
    Ok(intra
        .iter()
        .zip(&degree)
        .map(|(&e, &d)| e as f64 / m - (d as f64 / (2.0 * m)).powi(2))
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionRow {
    pub node_id: usize,
    pub label: String,
    pub community_id: usize,
}

pub fn write_partition_csv(rows: &[PartitionRow], out: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_dendrogram_csv(merges: &[Merge], out: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["step", "community_a", "community_b", "delta_sigma"])
        .map_err(csv_error)?;
    for m in merges {
        w.write_record([
            m.step.to_string(),
            m.a.to_string(),
            m.b.to_string(),
            m.delta_sigma.to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Write(io),
        other => Error::InvalidArgument(format!("csv output: {other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_community_scores_zero() {
        let g = Digraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 1)]);
        assert_eq!(modularity(&g, &[0, 0, 0, 0]).unwrap(), 0.0);
    }

    #[test]
    fn bridged_triangles() {
        let g = Digraph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]);
        let q = modularity(&g, &[0, 0, 0, 1, 1, 1]).unwrap();
        assert!((q - 0.357_143).abs() < 1e-6);
    }

    #[test]
    fn reciprocal_links_collapse() {
        let a = Digraph::new(3, [(0, 1), (1, 2)]);
        let b = Digraph::new(3, [(0, 1), (1, 0), (1, 2), (2, 1)]);
        let p = [0, 0, 1];
        assert_eq!(modularity(&a, &p).unwrap(), modularity(&b, &p).unwrap());
    }

    #[test]
    fn errors() {
        let g = Digraph::new(2, []);
        assert!(matches!(modularity(&g, &[0, 0]), Err(Error::NoLinks)));
        let g = Digraph::new(2, [(0, 1)]);
        assert!(modularity(&g, &[0]).is_err());
    }

    #[test]
    fn csv_outputs() {
        let rows = vec![
            PartitionRow {
                node_id: 0,
                label: "name, first".into(),
                community_id: 1,
            },
            PartitionRow {
                node_id: 3,
                label: "zip".into(),
                community_id: 0,
            },
        ];
        let mut out = Vec::new();
        write_partition_csv(&rows, &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "node_id,label,community_id\n0,\"name, first\",1\n3,zip,0\n"
        );
        let merges = [Merge {
            step: 0,
            a: 1,
            b: 2,
            delta_sigma: 0.25,
        }];
        let mut out = Vec::new();
        write_dendrogram_csv(&merges, &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "step,community_a,community_b,delta_sigma\n0,1,2,0.25\n"
        );
    }
}
