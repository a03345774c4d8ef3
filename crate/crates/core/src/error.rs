use thiserror::Error;

use crate::mesh::Violation;

#[derive(Debug, Error, PartialEq)]
pub enum MeshError {
    #[error("point dimension must be at least 1")]
    ZeroDimension,
    #[error("coordinate buffer of length {len} is not a multiple of dimension {dim}")]
    RaggedCoordinates { len: usize, dim: usize },
    #[error("row {row} has {found} coordinates, expected {expected}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("invalid mesh: {}", join(.0))]
    Invalid(Vec<Violation>),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Error, PartialEq)]
pub enum RewireError {
    #[error("unsplittable bin: need at least 2 nodes, got {0}")]
    UnsplittableBin(usize),
    #[error("empty bin has no center node")]
    EmptyBin,
    #[error("levels must be at least 1")]
    ZeroLevels,
    #[error("merge exponent must be at least 1")]
    ZeroMergeExponent,
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

#[derive(Debug, Error, PartialEq)]
pub enum PoolError {
    #[error("seed set is empty")]
    NoSeeds,
    #[error("seed {seed} out of range for {nodes} nodes")]
    SeedOutOfRange { seed: usize, nodes: usize },
    #[error("uncovered component: node {node} is unreachable from every seed")]
    UncoveredComponent { node: usize },
    #[error("stage count must be at least 1")]
    ZeroStages,
    #[error("positions cover {positions} nodes but the graph has {nodes}")]
    PositionCount { positions: usize, nodes: usize },
}

#[derive(Debug, Error, PartialEq)]
pub enum DensityError {
    #[error("bandwidth undefined: axis {axis} has zero variance, supply an explicit bandwidth")]
    BandwidthUndefined { axis: usize },
    #[error("bandwidth must be positive and finite, got {0}")]
    InvalidBandwidth(f64),
    #[error("bandwidth has {found} components, expected 1 or {dim}")]
    BandwidthDimension { found: usize, dim: usize },
    #[error("grid resolution must be at least 2 per axis, got {0}")]
    Resolution(usize),
    #[error("resolution has {found} components, expected {dim}")]
    ResolutionDimension { found: usize, dim: usize },
    #[error("density estimate needs at least one point")]
    NoPoints,
}

#[derive(Debug, Error, PartialEq)]
pub enum TriangulationError {
    #[error("no triangulation: Delaunay triangulation requires 2D points, got {0}D")]
    Dimension(usize),
    #[error("no triangulation: need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("no triangulation: all points are collinear")]
    Collinear,
    #[error("duplicate points at indices {}", fmt_groups(.0))]
    DuplicatePoints(Vec<Vec<usize>>),
    #[error("non-finite coordinate at point {0}")]
    NonFinite(usize),
}

fn fmt_groups(groups: &[Vec<usize>]) -> String {
    groups
        .iter()
        .map(|g| g.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Text-format read failure. `line` is 1-based; 0 means the input as a whole.
#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("empty file")]
    Empty,
    #[error("line {line}: expected {expected} coordinates, found {found}")]
    ColumnCount { line: usize, expected: usize, found: usize },
    #[error("line {line}: invalid number {token:?}")]
    BadNumber { line: usize, token: String },
    #[error("line {line}: non-finite coordinate {token:?}")]
    NonFinite { line: usize, token: String },
    #[error("line {line}: expected \"u v [tag]\"")]
    EdgeFormat { line: usize },
    #[error("line {line}: invalid node index {token:?}")]
    BadIndex { line: usize, token: String },
    #[error("line {line}: unknown edge tag {token:?}")]
    BadTag { line: usize, token: String },
    #[error("line {line}: edge index out of range ({index} >= {nodes})")]
    IndexOutOfRange { line: usize, index: usize, nodes: usize },
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: usize },
    #[error("line {line}: duplicate unordered pair ({u}, {v})")]
    Duplicate { line: usize, u: usize, v: usize },
    #[error("invalid report: {0}")]
    Report(String),
}

/// Anything the pipeline can fail with, for callers that do not care which stage.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Rewire(#[from] RewireError),
    #[error(transparent)]
    Pool(#[from] PoolError),
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
