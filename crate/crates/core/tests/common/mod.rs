//! Independent reference implementations used to check the library.
//! Nothing here calls into the code paths under test except for data types.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treewire::{Edge, Graph, PointSet};

pub const INF: u32 = u32::MAX;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_points(rng: &mut impl Rng, n: usize, dim: usize) -> PointSet {
    PointSet::new(dim, (0..n * dim).map(|_| rng.gen::<f64>()).collect()).unwrap()
}

/// Random simple graph with edge probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Vec<Edge> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push(Edge::new(u, v));
            }
        }
    }
    edges
}

/// `rows x cols` 4-neighbor grid; node `r * cols + c` sits at `(c, r)`.
pub fn grid(rows: usize, cols: usize) -> (PointSet, Vec<Edge>) {
    let mut coords = Vec::with_capacity(rows * cols * 2);
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            coords.extend([c as f64, r as f64]);
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push(Edge::new(v, v + 1));
            }
            if r + 1 < rows {
                edges.push(Edge::new(v, v + cols));
            }
        }
    }
    (PointSet::new(2, coords).unwrap(), edges)
}

pub fn adjacency_matrix(n: usize, edges: &[Edge]) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n]; n];
    for e in edges {
        if e.u != e.v {
            a[e.u][e.v] = true;
            a[e.v][e.u] = true;
        }
    }
    a
}

/// Support of `A + A²` with the diagonal cleared, by dense boolean products.
pub fn square_plus_adjacency(a: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    let mut out = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            out[i][j] = a[i][j] || (0..n).any(|k| a[i][k] && a[k][j]);
        }
    }
    out
}

pub fn graph_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut m = vec![vec![false; n]; n];
    for u in 0..n {
        for &v in g.neighbors(u) {
            m[u][v] = true;
        }
    }
    m
}

/// All-pairs hop distances, `INF` for unreachable pairs.
pub fn floyd_warshall(n: usize, edges: &[Edge]) -> Vec<Vec<u32>> {
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for e in edges {
        if e.u != e.v {
            d[e.u][e.v] = 1;
            d[e.v][e.u] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..n {
                if d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// `None` when some pair is unreachable.
pub fn oracle_diameter(n: usize, edges: &[Edge]) -> Option<u32> {
    let d = floyd_warshall(n, edges);
    let mut best = 0;
    for row in &d {
        for &x in row {
            if x == INF {
                return None;
            }
            best = best.max(x);
        }
    }
    Some(best)
}

/// Union-find component count.
pub fn oracle_components(n: usize, edges: impl IntoIterator<Item = Edge>) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut count = n;
    for e in edges {
        let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

/// Circumcenter and squared radius of a non-degenerate triangle.
pub fn circumcircle(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> ([f64; 2], f64) {
    let d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
    let (a2, b2, c2) = (
        a[0] * a[0] + a[1] * a[1],
        b[0] * b[0] + b[1] * b[1],
        c[0] * c[0] + c[1] * c[1],
    );
    let ux = (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d;
    let uy = (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d;
    let r2 = (a[0] - ux).powi(2) + (a[1] - uy).powi(2);
    ([ux, uy], r2)
}

/// Points strictly inside some triangle's circumcircle, beyond a relative
/// tolerance `rel` on the squared radius. Empty means Delaunay.
pub fn circumcircle_violations(points: &PointSet, triangles: &[[usize; 3]], rel: f64) -> Vec<(usize, usize)> {
    let p = |i: usize| [points.coord(i, 0), points.coord(i, 1)];
    let mut bad = Vec::new();
    for (t, tri) in triangles.iter().enumerate() {
        let (center, r2) = circumcircle(p(tri[0]), p(tri[1]), p(tri[2]));
        for i in 0..points.len() {
            if tri.contains(&i) {
                continue;
            }
            let q = p(i);
            let d2 = (q[0] - center[0]).powi(2) + (q[1] - center[1]).powi(2);
            if d2 < r2 * (1.0 - rel) {
                bad.push((t, i));
            }
        }
    }
    bad
}

/// Convex hull area by Andrew's monotone chain and the shoelace formula.
pub fn convex_hull_area(points: &PointSet) -> f64 {
    let mut pts: Vec<[f64; 2]> = (0..points.len()).map(|i| [points.coord(i, 0), points.coord(i, 1)]).collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut hull: Vec<[f64; 2]> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &q in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0.0 {
                hull.pop();
            }
            hull.push(q);
        }
        hull.pop();
    }
    let n = hull.len();
    (0..n)
        .map(|i| {
            let (a, b) = (hull[i], hull[(i + 1) % n]);
            a[0] * b[1] - b[0] * a[1]
        })
        .sum::<f64>()
        * 0.5
}

/// Variance of each axis over `bin`, computed directly from the definition.
pub fn axis_variances(points: &PointSet, bin: &[usize]) -> Vec<f64> {
    let n = bin.len() as f64;
    (0..points.dim())
        .map(|a| {
            let mean = bin.iter().map(|&i| points.coord(i, a)).sum::<f64>() / n;
            bin.iter().map(|&i| (points.coord(i, a) - mean).powi(2)).sum::<f64>() / n
        })
        .collect()
}
