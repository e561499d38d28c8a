//! Compact adjacency representation that the metric code runs on.

/// Directed simple graph on `0..n` with cached adjacency in both directions
/// and of the undirected projection. Self-loops and duplicates are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    und_adj: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().filter(|(u, v)| u != v).collect();
        edges.sort_unstable();
        edges.dedup();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut und_adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            assert!(u < n && v < n, "edge ({u},{v}) out of range for {n} nodes");
            out_adj[u].push(v);
            in_adj[v].push(u);
            und_adj[u].push(v);
            und_adj[v].push(u);
        }
        for list in in_adj.iter_mut().chain(und_adj.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        Self {
            n,
            edges,
            out_adj,
            in_adj,
            und_adj,
        }
    }

    /// Undirected graph: each pair is stored once with the smaller id first.
    pub fn undirected(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Self::new(n, edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))))
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn link_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Directed links sorted by (source, target).
    pub fn links(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out_adj[u]
    }

    pub fn in_neighbors(&self, u: usize) -> &[usize] {
        &self.in_adj[u]
    }

    /// Neighbors in the undirected projection, sorted.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.und_adj[u]
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.in_adj[u].len()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_adj[u].len()
    }

    /// Degree in the undirected projection (reciprocal links count once).
    pub fn undirected_degree(&self, u: usize) -> usize {
        self.und_adj[u].len()
    }

    /// Edges of the undirected projection as (u, v) with u < v, sorted.
    pub fn undirected_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.und_adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn undirected_edge_count(&self) -> usize {
        self.und_adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Subgraph induced by `nodes`, renumbered in the given order.
    pub fn induced(&self, nodes: &[usize]) -> Digraph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &u) in nodes.iter().enumerate() {
            pos[u] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]));
        Digraph::new(nodes.len(), edges)
    }
}
