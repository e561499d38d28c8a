use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Digraph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub in_degrees: Vec<usize>,
    pub out_degrees: Vec<usize>,
    /// in + out
    pub total_degrees: Vec<usize>,
    pub avg_in: f64,
    pub avg_out: f64,
    pub avg_total: f64,
    pub max_total: usize,
}

pub fn degree_stats(g: &Digraph) -> DegreeStats {
    let n = g.node_count();
    let in_degrees: Vec<usize> = (0..n).map(|u| g.in_degree(u)).collect();
    let out_degrees: Vec<usize> = (0..n).map(|u| g.out_degree(u)).collect();
    let total_degrees: Vec<usize> = in_degrees
        .iter()
        .zip(&out_degrees)
        .map(|(a, b)| a + b)
        .collect();
    let mean = |v: &[usize]| {
        if v.is_empty() {
            0.0
        } else {
            v.iter().sum::<usize>() as f64 / v.len() as f64
        }
    };
    DegreeStats {
        avg_in: mean(&in_degrees),
        avg_out: mean(&out_degrees),
        avg_total: mean(&total_degrees),
        max_total: total_degrees.iter().copied().max().unwrap_or(0),
        in_degrees,
        out_degrees,
        total_degrees,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorrelationMode {
    /// Degrees of the undirected projection, each edge taken in both
    /// orientations (Newman's r).
    #[default]
    Undirected,
    /// Out-degree of the source against in-degree of the target, per link.
    OutIn,
}

/// Pearson correlation of endpoint degrees. Sums are kept in integers so
/// a zero-variance sequence is detected exactly.
pub fn degree_correlation(g: &Digraph, mode: CorrelationMode) -> Result<f64> {
    let pairs: Vec<(u64, u64)> = match mode {
        CorrelationMode::Undirected => g
            .undirected_edges()
            .flat_map(|(u, v)| {
                let (du, dv) = (g.undirected_degree(u) as u64, g.undirected_degree(v) as u64);
                [(du, dv), (dv, du)]
            })
            .collect(),
        CorrelationMode::OutIn => g
            .links()
            .iter()
            .map(|&(u, v)| (g.out_degree(u) as u64, g.in_degree(v) as u64))
            .collect(),
    };
    if pairs.is_empty() {
        return Err(Error::NoLinks);
    }
    let n = pairs.len() as i128;
    let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0i128, 0i128, 0i128, 0i128, 0i128);
    for &(x, y) in &pairs {
        let (x, y) = (x as i128, y as i128);
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    let var_x = n * sxx - sx * sx;
    let var_y = n * syy - sy * sy;
    if var_x == 0 || var_y == 0 {
        return Err(Error::Degenerate {
            what: "degree correlation",
            reason: "all endpoint degrees are equal".into(),
        });
    }
    let cov = n * sxy - sx * sy;
    let r = cov as f64 / ((var_x as f64).sqrt() * (var_y as f64).sqrt());
    Ok(r.clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_is_perfectly_disassortative() {
        let g = Digraph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4)]);
        let r = degree_correlation(&g, CorrelationMode::Undirected).unwrap();
        assert!((r + 1.0).abs() < 1e-12);
    }

    #[test]
    fn cycle_is_degenerate() {
        let g = Digraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(matches!(
            degree_correlation(&g, CorrelationMode::Undirected),
            Err(Error::Degenerate { .. })
        ));
    }

    #[test]
    fn no_links() {
        let g = Digraph::new(3, []);
        assert!(matches!(
            degree_correlation(&g, CorrelationMode::Undirected),
            Err(Error::NoLinks)
        ));
    }

    #[test]
    fn single_edge_degrees() {
        let g = Digraph::new(2, [(0, 1)]);
        let s = degree_stats(&g);
        assert_eq!(
            (s.in_degrees[0], s.out_degrees[0], s.total_degrees[0]),
            (0, 1, 1)
        );
        assert_eq!(
            (s.in_degrees[1], s.out_degrees[1], s.total_degrees[1]),
            (1, 0, 1)
        );
        assert_eq!(s.avg_in, 0.5);
        assert_eq!(s.avg_total, 1.0);
        assert_eq!(s.max_total, 1);
    }

    #[test]
    fn out_in_variant() {
        // 0 -> 2, 1 -> 2, 2 -> 3: out(src) = 1,1,1 has zero variance
        let g = Digraph::new(4, [(0, 2), (1, 2), (2, 3)]);
        assert!(degree_correlation(&g, CorrelationMode::OutIn).is_err());
        // 0 -> 1, 0 -> 2, 3 -> 2
        let g = Digraph::new(4, [(0, 1), (0, 2), (3, 2)]);
        // x = [2,2,1], y = [1,2,2]
        let r = degree_correlation(&g, CorrelationMode::OutIn).unwrap();
        assert!((r + 0.5).abs() < 1e-12);
    }
}
