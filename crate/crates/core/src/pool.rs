//! Bi-stride pooling: BFS fronts, 2-hop adjacency enhancement and
//! every-second-front coarsening, stacked into a pyramid.

use crate::error::PoolError;
use crate::graph::Graph;
use crate::mesh::{Edge, PointSet};
use crate::metrics::connected_components;
use crate::par;
use crate::rewire::center_node;

/// Hop distance from every node to its nearest seed.
pub fn bfs_fronts(graph: &Graph, seeds: &[usize]) -> Result<Vec<u32>, PoolError> {
    if seeds.is_empty() {
        return Err(PoolError::NoSeeds);
    }
    let n = graph.node_count();
    if let Some(&seed) = seeds.iter().find(|&&s| s >= n) {
        return Err(PoolError::SeedOutOfRange { seed, nodes: n });
    }
    let fronts = graph.bfs(seeds);
    if let Some(node) = fronts.iter().position(|&f| f == u32::MAX) {
        return Err(PoolError::UncoveredComponent { node });
    }
    Ok(fronts)
}

/// Adds an edge between every pair of distinct nodes that share a neighbor,
/// i.e. the support of `A + A²` without the diagonal.
pub fn enhance_adjacency(graph: &Graph) -> Graph {
    let lists = par::map_range(graph.node_count(), |u| {
        let mut reach: Vec<usize> = graph.neighbors(u).to_vec();
        for &v in graph.neighbors(u) {
            reach.extend(graph.neighbors(v).iter().copied().filter(|&w| w != u));
        }
        reach.sort_unstable();
        reach.dedup();
        reach
    });
    Graph::from_adjacency(lists)
}

/// One level of the pooling pyramid.
#[derive(Clone, Debug, PartialEq)]
pub struct PoolStage {
    /// Fine node ids that survive, ascending. Coarse id `i` is `kept_nodes[i]`.
    pub kept_nodes: Vec<usize>,
    /// Edges between coarse ids, canonical order.
    pub coarse_edges: Vec<Edge>,
    /// Coarse id of the nearest kept node for every fine node.
    pub fine_to_coarse: Vec<usize>,
    /// BFS front index of every fine node.
    pub fronts: Vec<u32>,
}

impl PoolStage {
    pub fn fine_count(&self) -> usize {
        self.fine_to_coarse.len()
    }

    pub fn coarse_count(&self) -> usize {
        self.kept_nodes.len()
    }

    /// `true` for even fronts (kept nodes).
    pub fn front_parity(&self, v: usize) -> bool {
        self.fronts[v] % 2 == 0
    }

    pub fn coarse_graph(&self) -> Graph {
        Graph::from_edges(self.coarse_count(), self.coarse_edges.iter().copied())
    }
}

/// Pools one level: nodes on even BFS fronts of `graph` are kept, and two kept
/// nodes are joined when they are adjacent in the enhanced graph.
///
/// Every dropped node sits on an odd front and so has a kept neighbor one
/// front closer to the seeds; it maps to the lowest-indexed such neighbor.
pub fn pool_stage(graph: &Graph, seeds: &[usize]) -> Result<PoolStage, PoolError> {
    let fronts = bfs_fronts(graph, seeds)?;
    let enhanced = enhance_adjacency(graph);

    let n = graph.node_count();
    let mut coarse_id = vec![usize::MAX; n];
    let mut kept_nodes = Vec::new();
    for v in 0..n {
        if fronts[v] % 2 == 0 {
            coarse_id[v] = kept_nodes.len();
            kept_nodes.push(v);
        }
    }

    let mut coarse_edges = Vec::new();
    for (a, &u) in kept_nodes.iter().enumerate() {
        for &w in enhanced.neighbors(u) {
            let b = coarse_id[w];
            if w > u && b != usize::MAX {
                coarse_edges.push(Edge { u: a, v: b });
            }
        }
    }
    coarse_edges.sort_unstable();

    let fine_to_coarse = (0..n)
        .map(|v| {
            if coarse_id[v] != usize::MAX {
                return coarse_id[v];
            }
            graph
                .neighbors(v)
                .iter()
                .map(|&w| coarse_id[w])
                .filter(|&c| c != usize::MAX)
                .min()
                .expect("odd-front node has a kept neighbor")
        })
        .collect();

    Ok(PoolStage { kept_nodes, coarse_edges, fine_to_coarse, fronts })
}

/// One seed per connected component: the component's center node.
pub fn component_seeds(graph: &Graph, points: &PointSet) -> Result<Vec<usize>, PoolError> {
    if points.len() != graph.node_count() {
        return Err(PoolError::PositionCount { positions: points.len(), nodes: graph.node_count() });
    }
    let (ids, count) = connected_components(graph);
    let mut members = vec![Vec::new(); count];
    for (v, &c) in ids.iter().enumerate() {
        members[c].push(v);
    }
    let seeds = members
        .iter()
        .map(|m| center_node(m, points).expect("components are non-empty"))
        .collect();
    Ok(seeds)
}

/// Stages of a pooling pyramid, finest first.
#[derive(Clone, Debug, PartialEq)]
pub struct Pyramid {
    pub stages: Vec<PoolStage>,
}

impl Pyramid {
    /// Node count at each level, starting with the input graph.
    pub fn node_counts(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.stages.first().map(|s| s.fine_count()).into_iter().collect();
        out.extend(self.stages.iter().map(PoolStage::coarse_count));
        out
    }
}

/// Pools up to `stages` times. Building stops early after a stage that leaves a
/// single node or fails to shrink the graph (e.g. an edgeless graph, where every
/// node seeds its own component).
pub fn build_pyramid(graph: &Graph, points: &PointSet, stages: usize) -> Result<Pyramid, PoolError> {
    if stages == 0 {
        return Err(PoolError::ZeroStages);
    }
    let mut out = Vec::with_capacity(stages);
    let mut graph = graph.clone();
    let mut points = points.clone();
    for _ in 0..stages {
        let seeds = component_seeds(&graph, &points)?;
        let stage = pool_stage(&graph, &seeds)?;
        let shrunk = stage.coarse_count() < stage.fine_count();
        let done = stage.coarse_count() <= 1 || !shrunk;
        let next_graph = stage.coarse_graph();
        let next_points = points.subset(&stage.kept_nodes);
        out.push(stage);
        if done {
            break;
        }
        graph = next_graph;
        points = next_points;
    }
    Ok(Pyramid { stages: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| Edge::new(i - 1, i)))
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| Edge::new(u, v))))
    }

    #[test]
    fn fronts_on_path() {
        assert_eq!(bfs_fronts(&path(4), &[0]).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn all_seeds_means_all_zero() {
        let g = complete(5);
        assert_eq!(bfs_fronts(&g, &[0, 1, 2, 3, 4]).unwrap(), vec![0; 5]);
    }

    #[test]
    fn uncovered_component_is_an_error() {
        let g = Graph::from_edges(3, [Edge::new(0, 1)]);
        assert_eq!(bfs_fronts(&g, &[0]), Err(PoolError::UncoveredComponent { node: 2 }));
        assert_eq!(bfs_fronts(&g, &[]), Err(PoolError::NoSeeds));
    }

    #[test]
    fn enhancement_closes_two_hop_pairs() {
        let e = enhance_adjacency(&path(3));
        assert_eq!(e.edges().collect::<Vec<_>>(), vec![Edge::new(0, 1), Edge::new(0, 2), Edge::new(1, 2)]);
        assert_eq!(enhance_adjacency(&complete(3)), complete(3));
    }

    #[test]
    fn star_enhancement_adds_all_leaf_pairs() {
        let star = Graph::from_edges(6, (1..6).map(|l| Edge::new(0, l)));
        let e = enhance_adjacency(&star);
        assert_eq!(e.edge_count(), 5 + 10);
        assert_eq!(e, complete(6));
    }

    #[test]
    fn path_five_pools_to_path_three() {
        let s = pool_stage(&path(5), &[0]).unwrap();
        assert_eq!(s.kept_nodes, vec![0, 2, 4]);
        assert_eq!(s.coarse_edges, vec![Edge::new(0, 1), Edge::new(1, 2)]);
        assert_eq!(s.fine_to_coarse, vec![0, 0, 1, 1, 2]);
        assert!(s.front_parity(2) && !s.front_parity(3));
    }

    #[test]
    fn single_node_stage() {
        let g = Graph::from_edges(1, []);
        let s = pool_stage(&g, &[0]).unwrap();
        assert_eq!(s.kept_nodes, vec![0]);
        assert!(s.coarse_edges.is_empty());
    }

    #[test]
    fn complete_graph_collapses_to_seed() {
        let g = complete(4);
        let s = pool_stage(&g, &[0]).unwrap();
        assert_eq!(s.fronts, vec![0, 1, 1, 1]);
        assert_eq!(s.kept_nodes, vec![0]);
        let p = PointSet::new(1, vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        // center of 0..3 is node 1 (tie with 2), still a single survivor
        let pyr = build_pyramid(&g, &p, 5).unwrap();
        assert_eq!(pyr.stages.len(), 1);
        assert_eq!(pyr.node_counts(), vec![4, 1]);
    }

    #[test]
    fn one_stage_pyramid_equals_pool_stage() {
        let g = path(7);
        let p = PointSet::new(1, (0..7).map(f64::from).collect()).unwrap();
        let seeds = component_seeds(&g, &p).unwrap();
        assert_eq!(seeds, vec![3]);
        let pyr = build_pyramid(&g, &p, 1).unwrap();
        assert_eq!(pyr.stages, vec![pool_stage(&g, &seeds).unwrap()]);
    }

    #[test]
    fn single_node_pyramid() {
        let g = Graph::from_edges(1, []);
        let p = PointSet::new(2, vec![0.0, 0.0]).unwrap();
        let pyr = build_pyramid(&g, &p, 5).unwrap();
        assert_eq!(pyr.stages.len(), 1);
        assert_eq!(pyr.node_counts(), vec![1, 1]);
    }

    #[test]
    fn edgeless_graph_stops_after_one_stage() {
        let g = Graph::from_edges(3, []);
        let p = PointSet::new(1, vec![0.0, 1.0, 2.0]).unwrap();
        let pyr = build_pyramid(&g, &p, 4).unwrap();
        assert_eq!(pyr.node_counts(), vec![3, 3]);
    }

    #[test]
    fn zero_stages_rejected() {
        let g = path(2);
        let p = PointSet::new(1, vec![0.0, 1.0]).unwrap();
        assert_eq!(build_pyramid(&g, &p, 0), Err(PoolError::ZeroStages));
    }
}
