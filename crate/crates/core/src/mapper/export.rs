use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::error::Result;
use crate::scalar::Scalar;

use super::nerve::MapperNerve;

/// Node statistic mapped onto the DOT fill colour.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum ColorBy {
    /// Member count, scaled between the smallest and largest node.
    #[default]
    Size,
    /// Mean of one feature, scaled between the extreme node means.
    Mean(usize),
    /// Fraction of members carrying this label (0 on unlabeled clouds).
    LabelRatio(String),
}

#[derive(Serialize)]
struct JsonNerve<'a> {
    nodes: Vec<JsonNode<'a>>,
    simplices: BTreeMap<String, &'a [Vec<usize>]>,
}

#[derive(Serialize)]
struct JsonNode<'a> {
    id: usize,
    cover_index: usize,
    cluster_index: usize,
    size: usize,
    members: &'a [usize],
    stats: JsonStats<'a>,
}

#[derive(Serialize)]
struct JsonStats<'a> {
    mean: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    label_counts: Option<&'a BTreeMap<String, usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    majority_label: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    majority_ratio: Option<f64>,
}

/// Writes `{"nodes": [...], "simplices": {"1": [[a, b], ...], ...}}`, pretty-printed.
pub fn write_json<T: Scalar, W: Write>(nerve: &MapperNerve<T>, mut out: W) -> Result<()> {
    let nodes = nerve
        .nodes
        .iter()
        .map(|n| {
            let majority = n.stats.majority();
            JsonNode {
                id: n.id,
                cover_index: n.cover_index,
                cluster_index: n.cluster_index,
                size: n.members.len(),
                members: &n.members,
                stats: JsonStats {
                    mean: n.stats.mean.iter().map(|m| m.as_f64()).collect(),
                    label_counts: n.stats.label_counts.as_ref(),
                    majority_label: majority.map(|(l, _)| l),
                    majority_ratio: majority.map(|(_, r)| r),
                },
            }
        })
        .collect();
    let simplices = nerve
        .simplices
        .iter()
        .enumerate()
        .skip(1)
        .map(|(d, s)| (d.to_string(), s.as_slice()))
        .collect();
    serde_json::to_writer_pretty(&mut out, &JsonNerve { nodes, simplices })?;
    writeln!(out)?;
    Ok(())
}

/// Writes the graph (1-skeleton) in DOT. Node `width` grows with member count and the
/// fill runs from yellow (low) to blue (high) on the chosen statistic.
pub fn write_dot<T: Scalar, W: Write>(nerve: &MapperNerve<T>, color_by: &ColorBy, mut out: W) -> Result<()> {
    let raw: Vec<f64> = nerve
        .nodes
        .iter()
        .map(|n| match color_by {
            ColorBy::Size => n.members.len() as f64,
            ColorBy::Mean(axis) => n.stats.mean.get(*axis).map_or(0.0, |m| m.as_f64()),
            ColorBy::LabelRatio(label) => n.stats.ratio(label).unwrap_or(0.0),
        })
        .collect();
    let (lo, hi) = match color_by {
        ColorBy::LabelRatio(_) => (0.0, 1.0),
        _ => raw
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x))),
    };
    let max_size = nerve.nodes.iter().map(|n| n.members.len()).max().unwrap_or(1) as f64;

    writeln!(out, "graph mapper {{")?;
    writeln!(out, "  node [shape=circle, style=filled, fontsize=10];")?;
    for (n, &v) in nerve.nodes.iter().zip(&raw) {
        let t = if hi > lo { (v - lo) / (hi - lo) } else { 0.0 };
        let size = n.members.len();
        let width = 0.3 + 0.7 * (size as f64 / max_size).sqrt();
        writeln!(
            out,
            "  n{} [label=\"{}\", size={}, width={:.3}, fillcolor=\"{}\"];",
            n.id,
            size,
            size,
            width,
            ramp(t)
        )?;
    }
    for e in nerve.edges() {
        writeln!(out, "  n{} -- n{};", e[0], e[1])?;
    }
    writeln!(out, "}}")?;
    Ok(())
}

fn ramp(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let c = |a: f64, b: f64| (a + (b - a) * t).round() as u8;
    format!("#{:02x}{:02x}{:02x}", c(255.0, 0.0), c(255.0, 0.0), c(0.0, 255.0))
}
