//! Hierarchical tree-edge rewiring.
//!
//! Nodes are partitioned by recursive median splits ([`PartitionTree`]). Each
//! bin is represented by its *center node*, the member closest to the bin's
//! mean position. Three kinds of edges are then added:
//!
//! * leaf stars: every node of a leaf bin is joined to the leaf's center;
//! * hierarchy: for every bin at a depth that is a multiple of the merge
//!   exponent `m`, its center is joined to the centers of its descendants
//!   `m` levels further down (or fewer, for the last step and for branches
//!   that stopped splitting early), so each step merges up to `2^m` bins;
//! * the union with the original mesh edges, keeping the mesh copy of any
//!   pair that is both.
//!
//! Every node reaches its leaf center in one hop and the root center in
//! `⌈k/m⌉` more, so the tree edges alone connect the graph with hop diameter at
//! most `2(⌈k/m⌉ + 1)`.

mod partition;

pub use partition::{split_bin, NodeKind, PartitionTree, Split, TreeNode};

use std::collections::HashSet;

use crate::error::RewireError;
use crate::mesh::{validate_mesh, EdgeAttributes, EdgeTag, Mesh, PointSet, TaggedEdge, TaggedEdgeSet, Validation};
use crate::error::MeshError;
use crate::par;

/// Depth of the split hierarchy and how many levels each hierarchy edge spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RewireParams {
    pub levels: usize,
    pub merge_exponent: usize,
}

impl RewireParams {
    /// 10 splits, 8 bins merged per step.
    pub const MOTOR: RewireParams = RewireParams { levels: 10, merge_exponent: 3 };
    /// 4 splits, every level connected.
    pub const MAGNETOSTATICS: RewireParams = RewireParams { levels: 4, merge_exponent: 1 };

    pub fn new(levels: usize, merge_exponent: usize) -> Result<Self, RewireError> {
        let p = RewireParams { levels, merge_exponent };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<(), RewireError> {
        if self.levels == 0 {
            return Err(RewireError::ZeroLevels);
        }
        if self.merge_exponent == 0 {
            return Err(RewireError::ZeroMergeExponent);
        }
        Ok(())
    }

    /// Number of hierarchy steps between a leaf and the root, `⌈k/m⌉`.
    pub fn hierarchy_steps(&self) -> usize {
        self.levels.div_ceil(self.merge_exponent)
    }

    /// Upper bound on the hop diameter of the tree edges alone.
    pub fn diameter_bound(&self) -> usize {
        2 * (self.hierarchy_steps() + 1)
    }
}

/// Member of `bin` closest to the bin's mean position, lowest index on ties.
pub fn center_node(bin: &[usize], points: &PointSet) -> Result<usize, RewireError> {
    if bin.is_empty() {
        return Err(RewireError::EmptyBin);
    }
    let mut members = bin.to_vec();
    members.sort_unstable();
    Ok(center_of_sorted(&members, points))
}

fn center_of_sorted(members: &[usize], points: &PointSet) -> usize {
    let dim = points.dim();
    let origin = points.point(members[0]);
    // Offsets from the first member keep the result exact under exact translations.
    let mut mean = vec![0.0; dim];
    for &i in members {
        for (m, (c, o)) in mean.iter_mut().zip(points.point(i).iter().zip(origin)) {
            *m += c - o;
        }
    }
    let n = members.len() as f64;
    mean.iter_mut().for_each(|m| *m /= n);

    let mut best = (f64::INFINITY, usize::MAX);
    for &i in members {
        let d2: f64 = points
            .point(i)
            .iter()
            .zip(origin)
            .zip(&mean)
            .map(|((c, o), m)| {
                let d = c - o - m;
                d * d
            })
            .sum();
        if d2 < best.0 {
            best = (d2, i);
        }
    }
    best.1
}

/// Tree edges for a partition tree built from `points`. All edges are tagged
/// [`EdgeTag::Tree`] and returned in canonical order.
pub fn emit_tree_edges(
    tree: &PartitionTree,
    points: &PointSet,
    params: RewireParams,
) -> Result<TaggedEdgeSet, RewireError> {
    params.check()?;
    let m = params.merge_exponent;
    let k = params.levels;

    let centers = par::map_range(tree.nodes().len(), |id| {
        let mut members = tree.bin(id).to_vec();
        members.sort_unstable();
        center_of_sorted(&members, points)
    });

    let mut edges = Vec::with_capacity(points.len() + tree.nodes().len());
    for (id, node) in tree.nodes().iter().enumerate() {
        let c = centers[id];
        if node.is_leaf() {
            edges.extend(tree.bin(id).iter().filter(|&&v| v != c).map(|&v| tree_edge(c, v)));
            continue;
        }
        if node.depth % m != 0 {
            continue;
        }
        let target = (node.depth + m).min(k);
        let mut stack: Vec<usize> = node.children().into_iter().flatten().collect();
        while let Some(d) = stack.pop() {
            let dn = tree.node(d);
            if dn.depth >= target || dn.is_leaf() {
                if centers[d] != c {
                    edges.push(tree_edge(c, centers[d]));
                }
            } else {
                stack.extend(dn.children().into_iter().flatten());
            }
        }
    }
    Ok(TaggedEdgeSet::new(edges))
}

fn tree_edge(a: usize, b: usize) -> TaggedEdge {
    TaggedEdge { u: a, v: b, tag: EdgeTag::Tree }
}

/// Fills per-edge attributes with `position[v] - position[u]` for the stored
/// orientation (`u < v`).
pub fn edge_attributes(mut set: TaggedEdgeSet, points: &PointSet) -> TaggedEdgeSet {
    let dim = points.dim();
    let mut values = Vec::with_capacity(set.len() * dim);
    for e in set.edges() {
        let (pu, pv) = (points.point(e.u), points.point(e.v));
        values.extend(pu.iter().zip(pv).map(|(a, b)| b - a));
    }
    set.set_attributes(EdgeAttributes { dim, values });
    set
}

/// Mesh edges plus hierarchical tree edges, with displacement attributes.
pub fn rewire(mesh: &Mesh, params: RewireParams) -> Result<TaggedEdgeSet, RewireError> {
    params.check()?;
    if let Validation::Violations(v) = validate_mesh(mesh) {
        return Err(MeshError::Invalid(v).into());
    }
    let points = mesh.points();
    let tree = PartitionTree::build(points, params.levels);
    let tree_edges = emit_tree_edges(&tree, points, params)?;

    let mesh_pairs: HashSet<_> = mesh.edges().iter().copied().collect();
    let merged = mesh
        .edges()
        .iter()
        .map(|e| TaggedEdge { u: e.u, v: e.v, tag: EdgeTag::Mesh })
        .chain(tree_edges.edges().iter().copied().filter(|e| {
            !mesh_pairs.contains(&crate::mesh::Edge { u: e.u, v: e.v })
        }));
    Ok(edge_attributes(TaggedEdgeSet::new(merged), points))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(rows: &[[f64; 2]]) -> PointSet {
        PointSet::from_rows(rows).unwrap()
    }

    fn pairs(set: &TaggedEdgeSet) -> Vec<(usize, usize)> {
        set.pairs().map(|e| (e.u, e.v)).collect()
    }

    #[test]
    fn center_is_middle_of_collinear_triple() {
        let p = pts(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]);
        assert_eq!(center_node(&[0, 1, 2], &p), Ok(1));
    }

    #[test]
    fn center_tie_goes_to_lowest_index() {
        let p = pts(&[[2.0, 0.0], [0.0, 0.0]]);
        assert_eq!(center_node(&[1, 0], &p), Ok(0));
    }

    #[test]
    fn center_of_right_triangle() {
        // mean (1, 4/3); squared distances 25/9, 73/9, 52/9
        let p = pts(&[[0.0, 0.0], [0.0, 4.0], [3.0, 0.0]]);
        assert_eq!(center_node(&[0, 1, 2], &p), Ok(0));
    }

    #[test]
    fn empty_bin_has_no_center() {
        assert_eq!(center_node(&[], &pts(&[[0.0, 0.0]])), Err(RewireError::EmptyBin));
    }

    #[test]
    fn two_nodes_give_one_tree_edge() {
        let p = pts(&[[0.0, 0.0], [1.0, 0.0]]);
        let tree = PartitionTree::build(&p, 1);
        let set = emit_tree_edges(&tree, &p, RewireParams::new(1, 1).unwrap()).unwrap();
        assert_eq!(pairs(&set), vec![(0, 1)]);
        assert!(set.edges().iter().all(|e| e.tag == EdgeTag::Tree));
    }

    #[test]
    fn single_node_rewire_is_identity() {
        let mesh = Mesh::new(pts(&[[3.0, 1.0]]), vec![]).unwrap();
        let out = rewire(&mesh, RewireParams::new(3, 1).unwrap()).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn mesh_tag_wins_on_collision() {
        let p = pts(&[[0.0, 0.0], [1.0, 0.0]]);
        let mesh = Mesh::new(p, vec![(1, 0)]).unwrap();
        let out = rewire(&mesh, RewireParams::new(1, 1).unwrap()).unwrap();
        assert_eq!(out.edges(), &[TaggedEdge { u: 0, v: 1, tag: EdgeTag::Mesh }]);
        assert_eq!(out.attribute(0), Some(&[1.0, 0.0][..]));
    }

    #[test]
    fn attributes_are_displacements() {
        let p = pts(&[[0.0, 0.0], [3.0, 4.0]]);
        let set = TaggedEdgeSet::new([TaggedEdge { u: 1, v: 0, tag: EdgeTag::Mesh }]);
        let set = edge_attributes(set, &p);
        assert_eq!(set.attribute(0), Some(&[3.0, 4.0][..]));
    }

    #[test]
    fn coincident_nodes_have_zero_attribute() {
        let p = pts(&[[1.0, 1.0], [1.0, 1.0]]);
        let set = edge_attributes(TaggedEdgeSet::new([tree_edge(0, 1)]), &p);
        assert_eq!(set.attribute(0), Some(&[0.0, 0.0][..]));
    }

    #[test]
    fn invalid_params_rejected() {
        assert_eq!(RewireParams::new(0, 1), Err(RewireError::ZeroLevels));
        assert_eq!(RewireParams::new(3, 0), Err(RewireError::ZeroMergeExponent));
    }

    #[test]
    fn named_presets() {
        assert_eq!(RewireParams::MOTOR, RewireParams::new(10, 3).unwrap());
        assert_eq!(RewireParams::MOTOR.hierarchy_steps(), 4);
        assert_eq!(RewireParams::MAGNETOSTATICS, RewireParams::new(4, 1).unwrap());
    }

    #[test]
    fn remainder_step_merges_leftover_levels() {
        // 8 collinear nodes, k = 3, m = 2: root reaches depth 2 (4 bins), then
        // each depth-2 bin reaches its 2 leaves at depth 3.
        let p = PointSet::new(1, (0..8).map(f64::from).collect()).unwrap();
        let tree = PartitionTree::build(&p, 3);
        let set = emit_tree_edges(&tree, &p, RewireParams::new(3, 2).unwrap()).unwrap();
        // depth-2 bins {0,1},{2,3},{4,5},{6,7} have centers 0,2,4,6; root center 3
        // (mean 3.5, tie between 3 and 4 resolved to 3).
        let expected = vec![(0, 1), (0, 3), (2, 3), (3, 4), (3, 6), (4, 5), (6, 7)];
        assert_eq!(pairs(&set), expected);
    }
}
