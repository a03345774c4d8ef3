//! JSON documents for graph reports and density grids.
//!
//! Keys are written in a fixed order and every float uses 17 significant
//! digits, so a parsed document re-serializes byte for byte.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Write};

use serde_json::Value;

use crate::density::DensityGrid;
use crate::error::ParseError;
use crate::metrics::{Diameter, DiameterMode, GraphReport};

#[derive(Clone, Debug, PartialEq)]
pub enum Report {
    Graph(GraphReport),
    Density(DensityGrid),
}

impl From<GraphReport> for Report {
    fn from(r: GraphReport) -> Self {
        Report::Graph(r)
    }
}

impl From<DensityGrid> for Report {
    fn from(g: DensityGrid) -> Self {
        Report::Density(g)
    }
}

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn list<T>(items: impl IntoIterator<Item = T>, f: impl Fn(T) -> String) -> String {
    let parts: Vec<String> = items.into_iter().map(f).collect();
    format!("[{}]", parts.join(", "))
}

pub fn render_report(report: &Report) -> String {
    let mut out = String::from("{\n");
    let mut field = |key: &str, value: String, last: bool| {
        let _ = writeln!(out, "  \"{key}\": {value}{}", if last { "" } else { "," });
    };
    match report {
        Report::Graph(r) => {
            field("type", "\"graph_report\"".into(), false);
            field("node_count", r.node_count.to_string(), false);
            field("edge_count", r.edge_count.to_string(), false);
            field("component_count", r.component_count.to_string(), false);
            field("diameter_mode", format!("\"{}\"", r.diameter_mode), false);
            let d = match r.hop_diameter {
                Diameter::Hops(h) => h.to_string(),
                Diameter::Unreachable => "\"unreachable\"".into(),
            };
            field("hop_diameter", d, false);
            field(
                "degree_histogram",
                list(&r.degree_histogram, |(d, c)| format!("[{d}, {c}]")),
                false,
            );
            field("isolated_nodes", list(&r.isolated_nodes, ToString::to_string), false);
            field("component_id", list(&r.component_id, ToString::to_string), true);
        }
        Report::Density(g) => {
            field("type", "\"density_grid\"".into(), false);
            field("dim", g.dim().to_string(), false);
            field("lower", list(g.lower.iter().copied(), float), false);
            field("upper", list(g.upper.iter().copied(), float), false);
            field("resolution", list(&g.resolution, ToString::to_string), false);
            field("bandwidth", list(g.bandwidth.iter().copied(), float), false);
            field("values", list(g.values.iter().copied(), float), true);
        }
    }
    out.push_str("}\n");
    out
}

pub fn write_report<W: Write>(report: &Report, mut sink: W) -> io::Result<usize> {
    let text = render_report(report);
    sink.write_all(text.as_bytes())?;
    Ok(text.len())
}

fn bad(msg: impl Into<String>) -> ParseError {
    ParseError::Report(msg.into())
}

fn get<'a>(doc: &'a Value, key: &str) -> Result<&'a Value, ParseError> {
    doc.get(key).ok_or_else(|| bad(format!("missing key {key:?}")))
}

fn uint(v: &Value, key: &str) -> Result<usize, ParseError> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("{key:?} must be a non-negative integer")))
}

fn array<'a>(doc: &'a Value, key: &str) -> Result<&'a Vec<Value>, ParseError> {
    get(doc, key)?.as_array().ok_or_else(|| bad(format!("{key:?} must be an array")))
}

fn uints(doc: &Value, key: &str) -> Result<Vec<usize>, ParseError> {
    array(doc, key)?.iter().map(|v| uint(v, key)).collect()
}

fn floats(doc: &Value, key: &str) -> Result<Vec<f64>, ParseError> {
    array(doc, key)?
        .iter()
        .map(|v| v.as_f64().ok_or_else(|| bad(format!("{key:?} must hold numbers"))))
        .collect()
}

pub fn parse_report(text: &str) -> Result<Report, ParseError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    match get(&doc, "type")?.as_str() {
        Some("graph_report") => {
            let hop_diameter = match get(&doc, "hop_diameter")? {
                Value::String(s) if s == "unreachable" => Diameter::Unreachable,
                v => Diameter::Hops(uint(v, "hop_diameter")? as u32),
            };
            let diameter_mode = get(&doc, "diameter_mode")?
                .as_str()
                .ok_or_else(|| bad("\"diameter_mode\" must be a string"))?
                .parse::<DiameterMode>()
                .map_err(bad)?;
            let degree_histogram = array(&doc, "degree_histogram")?
                .iter()
                .map(|pair| match pair.as_array().map(Vec::as_slice) {
                    Some([d, c]) => Ok((uint(d, "degree")?, uint(c, "count")?)),
                    _ => Err(bad("degree_histogram entries must be [degree, count]")),
                })
                .collect::<Result<BTreeMap<_, _>, _>>()?;
            Ok(Report::Graph(GraphReport {
                node_count: uint(get(&doc, "node_count")?, "node_count")?,
                edge_count: uint(get(&doc, "edge_count")?, "edge_count")?,
                component_count: uint(get(&doc, "component_count")?, "component_count")?,
                component_id: uints(&doc, "component_id")?,
                diameter_mode,
                hop_diameter,
                degree_histogram,
                isolated_nodes: uints(&doc, "isolated_nodes")?,
            }))
        }
        Some("density_grid") => {
            let grid = DensityGrid {
                lower: floats(&doc, "lower")?,
                upper: floats(&doc, "upper")?,
                resolution: uints(&doc, "resolution")?,
                bandwidth: floats(&doc, "bandwidth")?,
                values: floats(&doc, "values")?,
            };
            let cells: usize = grid.resolution.iter().product();
            if grid.values.len() != cells {
                return Err(bad(format!("expected {cells} values, found {}", grid.values.len())));
            }
            Ok(Report::Density(grid))
        }
        _ => Err(bad("unknown document type")),
    }
}
