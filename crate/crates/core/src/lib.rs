//! Hierarchical tree-edge rewiring for irregular mesh graphs.
//!
//! The crate augments a mesh graph with edges derived from a recursive median
//! partition of its node positions, so that every node is a bounded number of
//! hops from every other. Alongside the rewiring it provides bi-stride pooling,
//! Delaunay meshing of point clouds, and diagnostics (connectivity, hop
//! diameter, degrees, kernel density) to check what the rewiring achieves.
//!
//! ```
//! use treewire::{rewire, Mesh, PointSet, RewireParams, EdgeTag};
//!
//! let points = PointSet::from_rows(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]]).unwrap();
//! let mesh = Mesh::new(points, vec![(0, 1), (2, 3)]).unwrap();
//! let edges = rewire(&mesh, RewireParams::new(2, 1).unwrap()).unwrap();
//! assert_eq!(edges.count(EdgeTag::Mesh), 2);
//! assert!(edges.count(EdgeTag::Tree) > 0);
//! ```
//!
//! With the default `parallel` feature, independent work (sibling bins,
//! BFS sources, density rows) runs on the current rayon thread pool. Results are
//! identical with and without the feature.

pub mod cli;
pub mod delaunay;
pub mod density;
pub mod error;
pub mod graph;
pub mod io;
pub mod mesh;
pub mod metrics;
mod par;
pub mod pool;
pub mod report;
pub mod rewire;

pub use delaunay::{delaunay_triangulate, Triangulation};
pub use density::{density_kde, Bandwidth, DensityGrid};
pub use error::Error;
pub use graph::Graph;
pub use mesh::{validate_mesh, Edge, EdgeTag, Mesh, PointSet, TaggedEdge, TaggedEdgeSet, Validation};
pub use metrics::{connected_components, degree_report, hop_diameter, Diameter, DiameterMode, GraphReport};
pub use pool::{bfs_fronts, build_pyramid, enhance_adjacency, pool_stage, PoolStage, Pyramid};
pub use report::{parse_report, write_report, Report};
pub use rewire::{center_node, edge_attributes, emit_tree_edges, rewire, split_bin, PartitionTree, RewireParams};

pub use par::enabled as parallel_enabled;
