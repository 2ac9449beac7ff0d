//! Input detection and output rendering.

use std::path::Path;

use clap::ValueEnum;
use serde_json::{json, Value};
use weightsys_core::deltamatroids::{dm_from_graph, dm_from_ribbon, DeltaMatroid, DmJson};
use weightsys_core::diagrams::DiagramJson;
use weightsys_core::graphs::GraphJson;
use weightsys_core::{ChordDiagram, FramedGraph, MPoly, Monomial, RibbonGraph, TruncSeries};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// Any of the JSON input schemas.
pub enum Input {
    Diagram(ChordDiagram),
    Graph(FramedGraph),
    DeltaMatroid(DeltaMatroid),
    Ribbon(RibbonGraph),
}

pub fn read_input(path: &Path) -> Result<Input, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)?;
    if v.get("word").is_some() {
        let j: DiagramJson = serde_json::from_value(v)?;
        Ok(Input::Diagram(ChordDiagram::from_json(&j)?))
    } else if v.get("adj").is_some() {
        let j: GraphJson = serde_json::from_value(v)?;
        Ok(Input::Graph(FramedGraph::from_json(&j)?))
    } else if v.get("feasible").is_some() {
        let j: DmJson = serde_json::from_value(v)?;
        Ok(Input::DeltaMatroid(DeltaMatroid::from_json(&j)?))
    } else if v.get("vertices").is_some() {
        Ok(Input::Ribbon(serde_json::from_value(v)?))
    } else {
        Err(CliError::Usage(
            "input is not a diagram, graph, delta-matroid or ribbon graph".into(),
        ))
    }
}

impl Input {
    pub fn diagram(self) -> Result<ChordDiagram, CliError> {
        match self {
            Input::Diagram(d) => Ok(d),
            _ => Err(CliError::Usage("expected a chord diagram".into())),
        }
    }

    /// Graphs as given; diagrams through their intersection graph.
    pub fn graph(self) -> Result<FramedGraph, CliError> {
        match self {
            Input::Graph(g) => Ok(g),
            Input::Diagram(d) => Ok(d.intersection_graph()),
            _ => Err(CliError::Usage("expected a graph or chord diagram".into())),
        }
    }

    pub fn delta_matroid(self) -> Result<DeltaMatroid, CliError> {
        match self {
            Input::DeltaMatroid(d) => Ok(d),
            Input::Graph(g) => Ok(dm_from_graph(&g)),
            Input::Diagram(d) => Ok(dm_from_graph(&d.intersection_graph())),
            Input::Ribbon(r) => Ok(dm_from_ribbon(&r)?),
        }
    }
}

fn monomial_key(m: &Monomial) -> String {
    MPoly::monomial(m.clone(), weightsys_core::poly::rat(1)).to_string()
}

pub fn render_poly(p: &MPoly, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(p).expect("polynomial serializes"),
        Format::Pretty => p.to_string(),
        Format::Csv => {
            let keys: Vec<String> = p.terms().map(|(m, _)| monomial_key(m)).collect();
            let vals: Vec<String> = p.terms().map(|(_, c)| c.to_string()).collect();
            format!("{}\n{}", keys.join(","), vals.join(","))
        }
    }
}

/// Series as JSON, as a CSV table with one row per order and one column per
/// monomial, or as `n: coefficient` lines.
pub fn render_series(s: &TruncSeries, format: Format) -> String {
    match format {
        Format::Json => json!({
            "var": s.var.name(),
            "order": s.order(),
            "coeffs": s.coeffs.iter().map(|c| c.to_json_value()).collect::<Vec<_>>(),
        })
        .to_string(),
        Format::Pretty => s
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| format!("{n}: {c}"))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Csv => {
            let mut keys: Vec<Monomial> = s
                .coeffs
                .iter()
                .flat_map(|c| c.terms().map(|(m, _)| m.clone()).collect::<Vec<_>>())
                .collect();
            keys.sort();
            keys.dedup();
            let mut out = String::from("n");
            for k in &keys {
                out.push(',');
                out.push_str(&monomial_key(k));
            }
            for (n, c) in s.coeffs.iter().enumerate() {
                out.push('\n');
                out.push_str(&n.to_string());
                for k in &keys {
                    out.push(',');
                    out.push_str(&c.coeff(k).to_string());
                }
            }
            out
        }
    }
}

/// Objects render as JSON in every format except CSV of key/value pairs.
pub fn render_record(v: &Value, format: Format) -> String {
    match (format, v.as_object()) {
        (Format::Csv, Some(obj)) => {
            let keys: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
            let vals: Vec<String> = obj
                .values()
                .map(|x| match x {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect();
            format!("{}\n{}", keys.join(","), vals.join(","))
        }
        (Format::Pretty, _) => serde_json::to_string_pretty(v).expect("value serializes"),
        _ => v.to_string(),
    }
}
