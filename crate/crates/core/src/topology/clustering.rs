use crate::graph::Digraph;

/// Triangles of the undirected projection.
pub fn triangle_count(g: &Digraph) -> u64 {
    let mut count = 0u64;
    for (u, v) in g.undirected_edges() {
        // common neighbours w > v, so each triangle u < v < w counts once
        let (a, b) = (g.neighbors(u), g.neighbors(v));
        let (mut i, mut j) = (
            a.partition_point(|&w| w <= v),
            b.partition_point(|&w| w <= v),
        );
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    count
}

/// Paths of length two (connected triples) in the undirected projection.
pub fn connected_triples(g: &Digraph) -> u64 {
    (0..g.node_count())
        .map(|u| {
            let d = g.undirected_degree(u) as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum()
}

/// Global transitivity `3 * triangles / connected triples`, 0 without triples.
pub fn transitivity(g: &Digraph) -> f64 {
    let triples = connected_triples(g);
    if triples == 0 {
        return 0.0;
    }
    3.0 * triangle_count(g) as f64 / triples as f64
}

/// Mean of local clustering coefficients; nodes of degree < 2 count as 0.
pub fn average_local_clustering(g: &Digraph) -> f64 {
    let n = g.node_count();
    if n == 0 {
        return 0.0;
    }
    let mut total = 0.0;
    for u in 0..n {
        let ns = g.neighbors(u);
        let d = ns.len();
        if d < 2 {
            continue;
        }
        let mut links = 0usize;
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                if g.neighbors(a).binary_search(&b).is_ok() {
                    links += 1;
                }
            }
        }
        total += 2.0 * links as f64 / (d * (d - 1)) as f64;
    }
    total / n as f64
}
