//! Connectivity, hop diameter and degree diagnostics.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::graph::Graph;
use crate::par;

/// Component id per node (numbered by lowest member index) and component count.
pub fn connected_components(graph: &Graph) -> (Vec<usize>, usize) {
    let n = graph.node_count();
    let mut id = vec![usize::MAX; n];
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..n {
        if id[s] != usize::MAX {
            continue;
        }
        id[s] = count;
        stack.push(s);
        while let Some(u) = stack.pop() {
            for &w in graph.neighbors(u) {
                if id[w] == usize::MAX {
                    id[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    (id, count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiameterMode {
    Exact,
    /// BFS from this many evenly strided sources; a lower bound on the diameter.
    Sampled(usize),
}

impl fmt::Display for DiameterMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiameterMode::Exact => f.write_str("exact"),
            DiameterMode::Sampled(n) => write!(f, "sampled:{n}"),
        }
    }
}

impl FromStr for DiameterMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "exact" {
            return Ok(DiameterMode::Exact);
        }
        match s.strip_prefix("sampled:").map(str::parse::<usize>) {
            Some(Ok(n)) if n >= 1 => Ok(DiameterMode::Sampled(n)),
            _ => Err(format!("expected \"exact\" or \"sampled:N\" with N >= 1, got {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Diameter {
    Hops(u32),
    Unreachable,
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Hops(h) => write!(f, "{h}"),
            Diameter::Unreachable => f.write_str("unreachable"),
        }
    }
}

/// Sources used by sampled mode: `count` node indices evenly strided over `0..n`.
pub fn sample_sources(n: usize, count: usize) -> Vec<usize> {
    let count = count.min(n);
    (0..count).map(|i| i * n / count).collect()
}

/// Largest shortest-path hop count, via BFS from every node (or from the
/// sampled sources). Disconnected graphs are [`Diameter::Unreachable`].
pub fn hop_diameter(graph: &Graph, mode: DiameterMode) -> Diameter {
    let n = graph.node_count();
    if n == 0 {
        return Diameter::Hops(0);
    }
    let (_, components) = connected_components(graph);
    if components > 1 {
        return Diameter::Unreachable;
    }
    let sources = match mode {
        DiameterMode::Exact => (0..n).collect(),
        DiameterMode::Sampled(count) => sample_sources(n, count),
    };
    Diameter::Hops(max_eccentricity(graph, &sources))
}

fn max_eccentricity(graph: &Graph, sources: &[usize]) -> u32 {
    let n = graph.node_count();
    // Sources are processed in blocks so each task reuses one scratch buffer.
    const BLOCK: usize = 64;
    let blocks = sources.len().div_ceil(BLOCK);
    par::max_range(blocks, |b| {
        let mut dist = vec![u32::MAX; n];
        let mut queue = Vec::with_capacity(n);
        sources[b * BLOCK..((b + 1) * BLOCK).min(sources.len())]
            .iter()
            .map(|&s| graph.eccentricity(s, &mut dist, &mut queue).0)
            .max()
            .unwrap_or(0)
    })
    .unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub degrees: Vec<usize>,
    /// degree -> number of nodes with that degree
    pub histogram: BTreeMap<usize, usize>,
    pub isolated: Vec<usize>,
}

pub fn degree_report(graph: &Graph) -> DegreeReport {
    let degrees: Vec<usize> = (0..graph.node_count()).map(|v| graph.degree(v)).collect();
    let mut histogram = BTreeMap::new();
    for &d in &degrees {
        *histogram.entry(d).or_insert(0) += 1;
    }
    let isolated = degrees.iter().enumerate().filter(|(_, &d)| d == 0).map(|(v, _)| v).collect();
    DegreeReport { degrees, histogram, isolated }
}

/// Diagnostics bundle for one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphReport {
    pub node_count: usize,
    pub edge_count: usize,
    pub component_count: usize,
    pub component_id: Vec<usize>,
    pub diameter_mode: DiameterMode,
    pub hop_diameter: Diameter,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub isolated_nodes: Vec<usize>,
}

impl GraphReport {
    pub fn new(graph: &Graph, mode: DiameterMode) -> Self {
        let (component_id, component_count) = connected_components(graph);
        let degrees = degree_report(graph);
        GraphReport {
            node_count: graph.node_count(),
            edge_count: graph.edge_count(),
            component_count,
            component_id,
            diameter_mode: mode,
            hop_diameter: hop_diameter(graph, mode),
            degree_histogram: degrees.histogram,
            isolated_nodes: degrees.isolated,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::Edge;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| Edge::new(i - 1, i)))
    }

    #[test]
    fn component_counts() {
        assert_eq!(connected_components(&Graph::from_edges(3, [])).1, 3);
        assert_eq!(connected_components(&path(5)).1, 1);
        let tris = Graph::from_edges(
            6,
            [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)].map(Edge::from),
        );
        assert_eq!(connected_components(&tris), (vec![0, 0, 0, 1, 1, 1], 2));
    }

    #[test]
    fn diameters() {
        assert_eq!(hop_diameter(&path(7), DiameterMode::Exact), Diameter::Hops(6));
        let k5 = Graph::from_edges(5, (0..5).flat_map(|u| (u + 1..5).map(move |v| Edge::new(u, v))));
        assert_eq!(hop_diameter(&k5, DiameterMode::Exact), Diameter::Hops(1));
        assert_eq!(hop_diameter(&Graph::from_edges(1, []), DiameterMode::Exact), Diameter::Hops(0));
        assert_eq!(hop_diameter(&Graph::from_edges(2, []), DiameterMode::Exact), Diameter::Unreachable);
    }

    #[test]
    fn sampled_sources_are_strided() {
        assert_eq!(sample_sources(10, 4), vec![0, 2, 5, 7]);
        assert_eq!(sample_sources(3, 32), vec![0, 1, 2]);
        // source 0 of a path is an endpoint, so sampling still finds the diameter
        assert_eq!(hop_diameter(&path(9), DiameterMode::Sampled(1)), Diameter::Hops(8));
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("exact".parse(), Ok(DiameterMode::Exact));
        assert_eq!("sampled:32".parse(), Ok(DiameterMode::Sampled(32)));
        assert!("sampled:0".parse::<DiameterMode>().is_err());
        assert!("fast".parse::<DiameterMode>().is_err());
        assert_eq!(DiameterMode::Sampled(8).to_string(), "sampled:8");
    }

    #[test]
    fn degrees() {
        let r = degree_report(&path(3));
        assert_eq!(r.degrees, vec![1, 2, 1]);
        assert!(r.isolated.is_empty());
        let r = degree_report(&Graph::from_edges(2, []));
        assert_eq!(r.isolated, vec![0, 1]);
        let star = degree_report(&Graph::from_edges(5, (1..5).map(|l| Edge::new(0, l))));
        assert_eq!(star.degrees, vec![4, 1, 1, 1, 1]);
        assert_eq!(star.histogram, BTreeMap::from([(1, 4), (4, 1)]));
    }

    #[test]
    fn report_unreachable_iff_disconnected() {
        let r = GraphReport::new(&Graph::from_edges(3, [Edge::new(0, 1)]), DiameterMode::Exact);
        assert_eq!(r.component_count, 2);
        assert_eq!(r.hop_diameter, Diameter::Unreachable);
        assert_eq!(r.isolated_nodes, vec![2]);
        let r = GraphReport::new(&path(3), DiameterMode::Exact);
        assert_eq!((r.component_count, r.hop_diameter), (1, Diameter::Hops(2)));
    }
}
