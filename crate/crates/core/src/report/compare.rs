use serde::{Deserialize, Serialize};

use super::MetricsReport;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricDelta {
    pub metric: String,
    pub left: Option<f64>,
    pub right: Option<f64>,
    /// `right - left`, absent when either side is.
    pub delta: Option<f64>,
}

/// Direction of the headline differences, reading `right` as the semantic
/// network and `left` as the syntactic one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NarrativeFlags {
    pub smaller_semantic_diameter: bool,
    pub larger_semantic_giant_fraction: bool,
    pub fewer_semantic_nodes: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub left: MetricsReport,
    pub right: MetricsReport,
    pub deltas: Vec<MetricDelta>,
    pub narrative_flags: NarrativeFlags,
}

pub fn compare(left: &MetricsReport, right: &MetricsReport) -> ComparisonReport {
    let deltas = left
        .rows()
        .into_iter()
        .zip(right.rows())
        .map(|((metric, l), (_, r))| MetricDelta {
            metric: metric.to_string(),
            left: l,
            right: r,
            delta: l.zip(r).map(|(l, r)| r - l),
        })
        .collect();
    let narrative_flags = NarrativeFlags {
        smaller_semantic_diameter: right.diameter_directed < left.diameter_directed,
        larger_semantic_giant_fraction: right.network.giant_node_fraction
            > left.network.giant_node_fraction,
        fewer_semantic_nodes: right.nodes < left.nodes,
    };
    ComparisonReport {
        left: left.clone(),
        right: right.clone(),
        deltas,
        narrative_flags,
    }
}

impl ComparisonReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are always serializable")
    }
}
