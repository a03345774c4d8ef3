//! Core data model: point sets, undirected meshes and tagged edge sets.

use std::collections::HashSet;
use std::fmt;

use crate::error::MeshError;

/// `N` points with `D` coordinates each, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    /// Wraps a flat row-major coordinate buffer. Only the shape is checked here;
    /// finiteness is reported by [`validate_mesh`].
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self, MeshError> {
        if dim == 0 {
            return Err(MeshError::ZeroDimension);
        }
        if coords.len() % dim != 0 {
            return Err(MeshError::RaggedCoordinates { len: coords.len(), dim });
        }
        Ok(Self { dim, coords })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, MeshError> {
        let dim = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut coords = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(MeshError::RowLength { row: i, expected: dim, found: row.len() });
            }
            coords.extend_from_slice(row);
        }
        Self::new(dim, coords)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    #[inline]
    pub fn coord(&self, i: usize, axis: usize) -> f64 {
        self.coords[i * self.dim + axis]
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    /// Coordinates of the selected points, in the order given.
    pub fn subset(&self, nodes: &[usize]) -> PointSet {
        let mut coords = Vec::with_capacity(nodes.len() * self.dim);
        for &i in nodes {
            coords.extend_from_slice(self.point(i));
        }
        PointSet { dim: self.dim, coords }
    }

    /// Returns a copy with `offset` added to every point.
    pub fn translated(&self, offset: &[f64]) -> PointSet {
        assert_eq!(offset.len(), self.dim);
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(k, c)| c + offset[k % self.dim])
            .collect();
        PointSet { dim: self.dim, coords }
    }
}

/// Unordered node pair, stored with `u < v` once canonicalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Orders the endpoints so that `u <= v`.
    #[inline]
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }
}

impl From<(usize, usize)> for Edge {
    fn from((a, b): (usize, usize)) -> Self {
        Edge::new(a, b)
    }
}

/// Node positions plus an undirected edge list.
#[derive(Clone, Debug, PartialEq)]
pub struct Mesh {
    points: PointSet,
    edges: Vec<Edge>,
}

impl Mesh {
    /// Builds a mesh and rejects it if any invariant is violated.
    pub fn new(points: PointSet, edges: Vec<(usize, usize)>) -> Result<Self, MeshError> {
        let mesh = Self::new_unchecked(points, edges);
        match validate_mesh(&mesh) {
            Validation::Ok => Ok(mesh),
            Validation::Violations(v) => Err(MeshError::Invalid(v)),
        }
    }

    /// Builds a mesh without validation. Endpoints are canonicalized (`u <= v`)
    /// but duplicates and out-of-range indices are kept for [`validate_mesh`] to report.
    pub fn new_unchecked(points: PointSet, edges: Vec<(usize, usize)>) -> Self {
        let edges = edges.into_iter().map(Edge::from).collect();
        Mesh { points, edges }
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.points.len()
    }

    pub fn dim(&self) -> usize {
        self.points.dim()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    NoNodes,
    NonFiniteCoordinate { node: usize, axis: usize },
    IndexOutOfRange { edge: usize, index: usize },
    SelfLoop { edge: usize },
    DuplicatePair { edge: usize, first: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoNodes => write!(f, "mesh has no nodes"),
            Violation::NonFiniteCoordinate { node, axis } => {
                write!(f, "non-finite coordinate at node {node}, axis {axis}")
            }
            Violation::IndexOutOfRange { edge, index } => {
                write!(f, "edge index out of range at edge {edge} (node {index})")
            }
            Violation::SelfLoop { edge } => write!(f, "self-loop at edge {edge}"),
            Violation::DuplicatePair { edge, first } => {
                write!(f, "duplicate unordered pair at edge {edge} (first seen at edge {first})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Validation {
    Ok,
    Violations(Vec<Violation>),
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        matches!(self, Validation::Ok)
    }
}

/// Checks every mesh invariant and reports all violations found, in node order
/// then edge order.
pub fn validate_mesh(mesh: &Mesh) -> Validation {
    let mut out = Vec::new();
    let n = mesh.node_count();
    if n == 0 {
        out.push(Violation::NoNodes);
    }
    for (node, p) in mesh.points.iter().enumerate() {
        for (axis, c) in p.iter().enumerate() {
            if !c.is_finite() {
                out.push(Violation::NonFiniteCoordinate { node, axis });
            }
        }
    }
    let mut seen = std::collections::HashMap::with_capacity(mesh.edges.len());
    for (i, e) in mesh.edges.iter().enumerate() {
        if e.v >= n {
            out.push(Violation::IndexOutOfRange { edge: i, index: e.v });
            continue;
        }
        if e.u == e.v {
            out.push(Violation::SelfLoop { edge: i });
            continue;
        }
        if let Some(&first) = seen.get(e) {
            out.push(Violation::DuplicatePair { edge: i, first });
        } else {
            seen.insert(*e, i);
        }
    }
    if out.is_empty() {
        Validation::Ok
    } else {
        Validation::Violations(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeTag {
    Mesh,
    Tree,
}

impl EdgeTag {
    pub fn symbol(self) -> char {
        match self {
            EdgeTag::Mesh => 'M',
            EdgeTag::Tree => 'T',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaggedEdge {
    pub u: usize,
    pub v: usize,
    pub tag: EdgeTag,
}

/// Edge list where each edge records whether it came from the mesh or was added
/// by rewiring, with optional relative-displacement attributes.
#[derive(Clone, Debug, PartialEq)]
pub struct TaggedEdgeSet {
    edges: Vec<TaggedEdge>,
    attributes: Option<EdgeAttributes>,
}

/// Flat `E x D` displacement buffer, one row per edge.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeAttributes {
    pub dim: usize,
    pub values: Vec<f64>,
}

impl TaggedEdgeSet {
    /// Canonicalizes endpoints, sorts by `(u, v, tag)` and drops repeated
    /// `(pair, tag)` entries.
    pub fn new(edges: impl IntoIterator<Item = TaggedEdge>) -> Self {
        let mut edges: Vec<TaggedEdge> = edges
            .into_iter()
            .map(|e| {
                let c = Edge::new(e.u, e.v);
                TaggedEdge { u: c.u, v: c.v, tag: e.tag }
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        TaggedEdgeSet { edges, attributes: None }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = Edge>, tag: EdgeTag) -> Self {
        Self::new(pairs.into_iter().map(|e| TaggedEdge { u: e.u, v: e.v, tag }))
    }

    pub fn edges(&self) -> &[TaggedEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn count(&self, tag: EdgeTag) -> usize {
        self.edges.iter().filter(|e| e.tag == tag).count()
    }

    pub fn pairs(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(|e| Edge { u: e.u, v: e.v })
    }

    pub fn pairs_with(&self, tag: EdgeTag) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().filter(move |e| e.tag == tag).map(|e| Edge { u: e.u, v: e.v })
    }

    pub fn attributes(&self) -> Option<&EdgeAttributes> {
        self.attributes.as_ref()
    }

    /// Displacement `position[v] - position[u]` of edge `i`, if attributes were filled.
    pub fn attribute(&self, i: usize) -> Option<&[f64]> {
        self.attributes.as_ref().map(|a| &a.values[i * a.dim..(i + 1) * a.dim])
    }

    pub(crate) fn set_attributes(&mut self, attributes: EdgeAttributes) {
        debug_assert_eq!(attributes.values.len(), attributes.dim * self.edges.len());
        self.attributes = Some(attributes);
    }

    /// Distinct unordered pairs regardless of tag.
    pub fn pair_set(&self) -> HashSet<Edge> {
        self.pairs().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(rows: &[[f64; 2]]) -> PointSet {
        PointSet::from_rows(rows).unwrap()
    }

    #[test]
    fn single_node_without_edges_is_valid() {
        let mesh = Mesh::new_unchecked(pts(&[[0.0, 0.0]]), vec![]);
        assert_eq!(validate_mesh(&mesh), Validation::Ok);
    }

    #[test]
    fn self_loop_reported() {
        let mesh = Mesh::new_unchecked(pts(&[[0.0, 0.0], [1.0, 0.0]]), vec![(0, 0)]);
        match validate_mesh(&mesh) {
            Validation::Violations(v) => {
                assert_eq!(v, vec![Violation::SelfLoop { edge: 0 }]);
                assert_eq!(v[0].to_string(), "self-loop at edge 0");
            }
            Validation::Ok => panic!("expected violation"),
        }
    }

    #[test]
    fn reversed_pair_is_a_duplicate() {
        let mesh = Mesh::new_unchecked(pts(&[[0.0, 0.0], [1.0, 0.0]]), vec![(0, 1), (1, 0)]);
        let Validation::Violations(v) = validate_mesh(&mesh) else {
            panic!("expected violation")
        };
        assert_eq!(v, vec![Violation::DuplicatePair { edge: 1, first: 0 }]);
        assert!(v[0].to_string().starts_with("duplicate unordered pair"));
    }

    #[test]
    fn collects_every_violation() {
        let points = PointSet::new(2, vec![0.0, f64::NAN, 1.0, 1.0]).unwrap();
        let mesh = Mesh::new_unchecked(points, vec![(0, 7), (1, 1), (0, 1), (1, 0)]);
        let Validation::Violations(v) = validate_mesh(&mesh) else {
            panic!("expected violations")
        };
        assert_eq!(v.len(), 4);
        assert_eq!(v[0], Violation::NonFiniteCoordinate { node: 0, axis: 1 });
        assert_eq!(v[1], Violation::IndexOutOfRange { edge: 0, index: 7 });
    }

    #[test]
    fn validation_is_idempotent() {
        let mesh = Mesh::new_unchecked(pts(&[[0.0, 0.0], [1.0, 0.0]]), vec![(0, 1), (1, 0)]);
        let before = mesh.clone();
        assert_eq!(validate_mesh(&mesh), validate_mesh(&mesh));
        assert_eq!(mesh, before);
    }

    #[test]
    fn empty_point_set_rejected() {
        let mesh = Mesh::new_unchecked(PointSet::new(2, vec![]).unwrap(), vec![]);
        assert!(!validate_mesh(&mesh).is_ok());
    }

    #[test]
    fn tagged_set_is_canonical() {
        let set = TaggedEdgeSet::new([
            TaggedEdge { u: 2, v: 0, tag: EdgeTag::Tree },
            TaggedEdge { u: 0, v: 2, tag: EdgeTag::Tree },
            TaggedEdge { u: 1, v: 0, tag: EdgeTag::Mesh },
        ]);
        assert_eq!(
            set.edges(),
            &[
                TaggedEdge { u: 0, v: 1, tag: EdgeTag::Mesh },
                TaggedEdge { u: 0, v: 2, tag: EdgeTag::Tree },
            ]
        );
    }
}
