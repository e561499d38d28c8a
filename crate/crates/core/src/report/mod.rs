//! Full metric profile of a network's giant component, and side-by-side
//! comparison of two profiles.

mod compare;
mod text;

use serde::{Deserialize, Serialize};

use crate::community::walktrap;
use crate::depnet::DependencyNetwork;
use crate::error::{Error, Result};
use crate::powerlaw::{fit_power_law, PowerLawFit};
use crate::topology::{
    components, connected_triples, degree_correlation, degree_stats, distances, er_baseline,
    transitivity, CorrelationMode, DistanceMode, ErBaseline,
};

pub use compare::{compare, ComparisonReport, MetricDelta, NarrativeFlags};
pub use text::{render_comparison, render_report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnalysisConfig {
    pub er_samples: usize,
    pub bootstrap_n: usize,
    pub walktrap_t: usize,
    pub seed: u64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            er_samples: 100,
            bootstrap_n: 1000,
            walktrap_t: 4,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerLawSet {
    #[serde(rename = "in")]
    pub in_degree: Option<PowerLawFit>,
    #[serde(rename = "out")]
    pub out_degree: Option<PowerLawFit>,
    pub all: Option<PowerLawFit>,
}

/// The whole network the giant component was taken from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkContext {
    pub nodes: usize,
    pub links: usize,
    pub isolated_nodes: usize,
    pub self_loop_count: usize,
    pub components: usize,
    pub giant_node_fraction: f64,
    pub giant_link_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerateMetric {
    pub metric: String,
    pub reason: String,
}

/// Metrics of the giant component. Values a metric cannot produce on this
/// network are `None` and explained in `degenerate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub label: String,
    pub nodes: usize,
    pub links: usize,
    pub avg_distance_directed: Option<f64>,
    pub avg_distance_undirected: Option<f64>,
    pub diameter_directed: usize,
    pub diameter_undirected: usize,
    pub transitivity: f64,
    pub degree_correlation: Option<f64>,
    pub avg_in_degree: f64,
    pub avg_out_degree: f64,
    pub avg_total_degree: f64,
    pub max_total_degree: usize,
    pub er_avg_distance: Option<f64>,
    pub er_transitivity: Option<f64>,
    pub power_law: PowerLawSet,
    pub communities: Option<usize>,
    pub modularity: Option<f64>,
    pub er_baseline: Option<ErBaseline>,
    pub network: NetworkContext,
    pub config: AnalysisConfig,
    pub degenerate: Vec<DegenerateMetric>,
}

struct Degeneracies(Vec<DegenerateMetric>);

impl Degeneracies {
    /// Keeps the value, records a degenerate outcome, or fails with the
    /// metric named for any other error.
    fn take<T>(&mut self, metric: &'static str, r: Result<T>) -> Result<Option<T>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(e) if e.is_degenerate() => {
                self.note(metric, e.to_string());
                Ok(None)
            }
            Err(e) => Err(e.in_metric(metric)),
        }
    }

    fn note(&mut self, metric: &str, reason: String) {
        self.0.push(DegenerateMetric {
            metric: metric.to_string(),
            reason,
        });
    }
}

fn positive(degrees: &[usize]) -> Vec<u64> {
    degrees
        .iter()
        .filter(|&&d| d > 0)
        .map(|&d| d as u64)
        .collect()
}

/// Every metric of the giant component of `net`.
pub fn analyze(net: &DependencyNetwork, config: &AnalysisConfig) -> Result<MetricsReport> {
    analyze_labeled(net, net.matcher().network_label(), config)
}

pub fn analyze_labeled(
    net: &DependencyNetwork,
    label: &str,
    config: &AnalysisConfig,
) -> Result<MetricsReport> {
    let whole = net.graph();
    let decomposition = components(&whole);
    let giant_ids = decomposition
        .giant()
        .ok_or_else(|| Error::EmptyNetwork.in_metric("giant component"))?;
    let g = whole.induced(giant_ids);
    let (nodes, links) = (g.node_count(), g.link_count());
    let mut deg = Degeneracies(Vec::new());

    let network = NetworkContext {
        nodes: whole.node_count(),
        links: whole.link_count(),
        isolated_nodes: (0..whole.node_count())
            .filter(|&u| whole.undirected_degree(u) == 0)
            .count(),
        self_loop_count: net.self_loop_count(),
        components: decomposition.len(),
        giant_node_fraction: nodes as f64 / whole.node_count() as f64,
        giant_link_fraction: if whole.link_count() == 0 {
            0.0
        } else {
            links as f64 / whole.link_count() as f64
        },
    };

    let directed = distances(&g, DistanceMode::Directed).map_err(|e| e.in_metric("distance"))?;
    let undirected =
        distances(&g, DistanceMode::Undirected).map_err(|e| e.in_metric("distance"))?;
    if directed.average.is_none() {
        deg.note(
            "avg_distance_directed",
            "no ordered pair is connected".into(),
        );
    }
    if undirected.average.is_none() {
        deg.note(
            "avg_distance_undirected",
            "component has a single node".into(),
        );
    }

    if connected_triples(&g) == 0 {
        deg.note("transitivity", "no connected triples".into());
    }
    let degree_correlation = deg.take(
        "degree_correlation",
        degree_correlation(&g, CorrelationMode::Undirected),
    )?;
    let stats = degree_stats(&g);

    let er = deg.take(
        "er_baseline",
        er_baseline(nodes, links, config.er_samples, config.seed),
    )?;

    let mut fit = |metric, degrees: &[usize], offset| {
        deg.take(
            metric,
            fit_power_law(
                &positive(degrees),
                config.bootstrap_n,
                config.seed.wrapping_add(offset),
            ),
        )
    };
    let power_law = PowerLawSet {
        in_degree: fit("power_law.in", &stats.in_degrees, 1)?,
        out_degree: fit("power_law.out", &stats.out_degrees, 2)?,
        all: fit("power_law.all", &stats.total_degrees, 3)?,
    };

    let partition = deg
        .take("communities", walktrap(&g, config.walktrap_t))?
        .map(|(p, _)| p);

    Ok(MetricsReport {
        label: label.to_string(),
        nodes,
        links,
        avg_distance_directed: directed.average,
        avg_distance_undirected: undirected.average,
        diameter_directed: directed.diameter,
        diameter_undirected: undirected.diameter,
        transitivity: transitivity(&g),
        degree_correlation,
        avg_in_degree: stats.avg_in,
        avg_out_degree: stats.avg_out,
        avg_total_degree: stats.avg_total,
        max_total_degree: stats.max_total,
        er_avg_distance: er.as_ref().and_then(|b| b.avg_distance_mean),
        er_transitivity: er.as_ref().map(|b| b.transitivity_mean),
        power_law,
        communities: partition.as_ref().map(|p| p.community_count),
        modularity: partition.as_ref().map(|p| p.modularity),
        er_baseline: er,
        network,
        config: *config,
        degenerate: deg.0,
    })
}

impl MetricsReport {
    /// Numeric rows in table order, for rendering and comparison.
    pub fn rows(&self) -> Vec<(&'static str, Option<f64>)> {
        let fit = |f: &Option<PowerLawFit>| (f.map(|f| f.alpha), f.map(|f| f.p_value));
        let (in_a, in_p) = fit(&self.power_law.in_degree);
        let (out_a, out_p) = fit(&self.power_law.out_degree);
        let (all_a, all_p) = fit(&self.power_law.all);
        vec![
            ("nodes", Some(self.nodes as f64)),
            ("links", Some(self.links as f64)),
            (
                "giant_node_fraction",
                Some(self.network.giant_node_fraction),
            ),
            (
                "giant_link_fraction",
                Some(self.network.giant_link_fraction),
            ),
            ("avg_distance_directed", self.avg_distance_directed),
            ("avg_distance_undirected", self.avg_distance_undirected),
            ("diameter_directed", Some(self.diameter_directed as f64)),
            ("diameter_undirected", Some(self.diameter_undirected as f64)),
            ("transitivity", Some(self.transitivity)),
            ("degree_correlation", self.degree_correlation),
            ("avg_in_degree", Some(self.avg_in_degree)),
            ("avg_out_degree", Some(self.avg_out_degree)),
            ("avg_total_degree", Some(self.avg_total_degree)),
            ("max_total_degree", Some(self.max_total_degree as f64)),
            ("er_avg_distance", self.er_avg_distance),
            ("er_transitivity", self.er_transitivity),
            ("power_law.in.alpha", in_a),
            ("power_law.in.p_value", in_p),
            ("power_law.out.alpha", out_a),
            ("power_law.out.p_value", out_p),
            ("power_law.all.alpha", all_a),
            ("power_law.all.p_value", all_p),
            ("communities", self.communities.map(|c| c as f64)),
            ("modularity", self.modularity),
        ]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are always serializable")
    }
}

/// Rows holding integer counts, printed without decimals in text form.
pub(crate) fn is_count(metric: &str) -> bool {
    matches!(
        metric,
        "nodes"
            | "links"
            | "diameter_directed"
            | "diameter_undirected"
            | "max_total_degree"
            | "communities"
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> AnalysisConfig {
        AnalysisConfig {
            er_samples: 5,
            bootstrap_n: 100,
            walktrap_t: 4,
            seed: 3,
        }
    }

    #[test]
    fn k2_network() {
        let n = DependencyNetwork::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let r = analyze(&n, &quick()).unwrap();
        assert_eq!((r.nodes, r.links), (4, 4));
        assert_eq!(r.diameter_directed, 1);
        assert_eq!(r.diameter_undirected, 2);
        assert_eq!(r.avg_distance_directed, Some(1.0));
        assert_eq!(r.avg_in_degree, 1.0);
        assert_eq!(r.avg_total_degree, 2.0);
        assert_eq!(r.network.components, 1);
    }

    #[test]
    fn single_link_is_flagged() {
        let n = DependencyNetwork::from_edges(2, &[(0, 1)]).unwrap();
        let r = analyze(&n, &quick()).unwrap();
        assert_eq!(r.degree_correlation, None);
        assert_eq!(r.transitivity, 0.0);
        let flagged: Vec<&str> = r.degenerate.iter().map(|d| d.metric.as_str()).collect();
        assert!(flagged.contains(&"degree_correlation"));
        assert!(flagged.contains(&"transitivity"));
        assert!(r.power_law.all.is_none());
    }

    #[test]
    fn empty_network_names_metric() {
        let n = DependencyNetwork::from_edges(0, &[]).unwrap();
        let e = analyze(&n, &quick()).unwrap_err();
        assert!(e.is_degenerate());
        assert!(e.to_string().contains("giant component"));
    }

    #[test]
    fn giant_only() {
        let n = DependencyNetwork::from_edges(7, &[(0, 1), (1, 2), (2, 0), (4, 5)]).unwrap();
        let r = analyze(&n, &quick()).unwrap();
        assert_eq!((r.nodes, r.links), (3, 3));
        assert_eq!(r.network.components, 4);
        assert_eq!(r.network.isolated_nodes, 2);
        assert!((r.network.giant_node_fraction - 3.0 / 7.0).abs() < 1e-15);
        assert!((r.network.giant_link_fraction - 0.75).abs() < 1e-15);
    }

    #[test]
    fn invariants_hold() {
        let edges: Vec<(usize, usize)> = (0..30)
            .map(|i| (i, (i * 7 + 3) % 30))
            .filter(|(a, b)| a != b)
            .collect();
        let n = DependencyNetwork::from_edges(30, &edges).unwrap();
        let r = analyze(&n, &quick()).unwrap();
        let per_node = r.links as f64 / r.nodes as f64;
        assert!((r.avg_in_degree - per_node).abs() < 1e-12);
        assert!((r.avg_out_degree - per_node).abs() < 1e-12);
        assert!((r.avg_total_degree - 2.0 * per_node).abs() < 1e-12);
        if let Some(d) = r.avg_distance_directed {
            assert!(r.diameter_directed as f64 >= d.ceil());
        }
        let round_trip: MetricsReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(round_trip, r);
    }
}
