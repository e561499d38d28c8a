use std::fmt::Write;

use super::{is_count, ComparisonReport, MetricsReport};

fn cell(metric: &str, v: Option<f64>) -> String {
    match v {
        None => "n/a".to_string(),
        Some(x) if is_count(metric) => format!("{x:.0}"),
        Some(x) => format!("{x:.2}"),
    }
}

fn signed(metric: &str, v: Option<f64>) -> String {
    match v {
        Some(x) if x > 0.0 => format!("+{}", cell(metric, Some(x))),
        _ => cell(metric, v),
    }
}

/// Two-decimal table of a report's metrics.
pub fn render_report(r: &MetricsReport) -> String {
    let rows = r.rows();
    let width = rows.iter().map(|(m, _)| m.len()).max().unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(out, "{:width$}  {}", "metric", r.label);
    for (m, v) in rows {
        let _ = writeln!(out, "{m:width$}  {}", cell(m, v));
    }
    for d in &r.degenerate {
        let _ = writeln!(out, "note: {}: {}", d.metric, d.reason);
    }
    out
}

pub fn render_comparison(c: &ComparisonReport) -> String {
    let width = c.deltas.iter().map(|d| d.metric.len()).max().unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:width$}  {:>10}  {:>10}  {:>10}",
        "metric", c.left.label, c.right.label, "delta"
    );
    for d in &c.deltas {
        let m = d.metric.as_str();
        let _ = writeln!(
            out,
            "{m:width$}  {:>10}  {:>10}  {:>10}",
            cell(m, d.left),
            cell(m, d.right),
            signed(m, d.delta)
        );
    }
    let f = &c.narrative_flags;
    let _ = writeln!(
        out,
        "smaller_semantic_diameter: {}",
        f.smaller_semantic_diameter
    );
    let _ = writeln!(
        out,
        "larger_semantic_giant_fraction: {}",
        f.larger_semantic_giant_fraction
    );
    let _ = writeln!(out, "fewer_semantic_nodes: {}", f.fewer_semantic_nodes);
    out
}
