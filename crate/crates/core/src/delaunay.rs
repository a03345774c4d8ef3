//! Incremental Bowyer-Watson Delaunay triangulation of planar point sets.
//!
//! The unbounded exterior is covered by *ghost* triangles `(a, b, GHOST)`, one
//! per convex-hull edge `b -> a`. A ghost triangle's circumcircle is the open
//! half-plane left of `a -> b` plus the open segment `ab`, which lets points
//! outside the current hull be inserted by the same cavity search as interior
//! points. All geometric decisions go through adaptive exact predicates.
//!
//! Points are inserted in a fixed pseudo-random order. Exactly cocircular
//! configurations are finally normalized so that each ambiguous quadrilateral
//! uses the diagonal with the smaller minimum node index.

use std::collections::HashMap;

use robust::Coord;

use crate::error::TriangulationError;
use crate::mesh::{Edge, PointSet};

const GHOST: usize = usize::MAX;
const NONE: usize = usize::MAX;

/// Triangles over the input points, each counter-clockwise with its smallest
/// index first, sorted.
#[derive(Clone, Debug, PartialEq)]
pub struct Triangulation {
    pub points: PointSet,
    pub triangles: Vec<[usize; 3]>,
}

impl Triangulation {
    /// Triangle sides, deduplicated, canonical order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .triangles
            .iter()
            .flat_map(|t| [Edge::new(t[0], t[1]), Edge::new(t[1], t[2]), Edge::new(t[2], t[0])])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn area(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| {
                let [a, b, c] = t.map(|i| xy(&self.points, i));
                0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x))
            })
            .sum()
    }
}

#[inline]
fn xy(points: &PointSet, i: usize) -> Coord<f64> {
    let p = points.point(i);
    Coord { x: p[0], y: p[1] }
}

/// SplitMix64 finalizer, used to derive the insertion order.
fn mix(index: u64) -> u64 {
    let mut z = index.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug)]
struct Tri {
    v: [usize; 3],
    /// `nbr[i]` is across the edge opposite `v[i]`.
    nbr: [usize; 3],
    alive: bool,
}

impl Tri {
    fn is_ghost(&self) -> bool {
        self.v.contains(&GHOST)
    }
}

struct Builder<'a> {
    points: &'a PointSet,
    tris: Vec<Tri>,
    last: usize,
    mark: Vec<u32>,
    epoch: u32,
}

impl<'a> Builder<'a> {
    fn p(&self, i: usize) -> Coord<f64> {
        xy(self.points, i)
    }

    fn orient(&self, a: usize, b: usize, c: usize) -> f64 {
        robust::orient2d(self.p(a), self.p(b), self.p(c))
    }

    /// Whether `p` lies strictly inside the circumcircle of triangle `t`.
    fn conflicts(&self, t: usize, p: usize) -> bool {
        let v = self.tris[t].v;
        if let Some(g) = v.iter().position(|&x| x == GHOST) {
            let a = v[(g + 1) % 3];
            let b = v[(g + 2) % 3];
            let o = self.orient(a, b, p);
            if o != 0.0 {
                return o > 0.0;
            }
            let (pa, pb, pp) = (self.p(a), self.p(b), self.p(p));
            let dot = (pp.x - pa.x) * (pb.x - pa.x) + (pp.y - pa.y) * (pb.y - pa.y);
            let len2 = (pb.x - pa.x).powi(2) + (pb.y - pa.y).powi(2);
            return dot > 0.0 && dot < len2;
        }
        robust::incircle(self.p(v[0]), self.p(v[1]), self.p(v[2]), self.p(p)) > 0.0
    }

    /// Links neighbor pointers among `ids` and any already-linked triangles
    /// listed in `outer` as `(a, b) -> triangle` for directed edge `a -> b`.
    fn link(&mut self, ids: &[usize], outer: &HashMap<(usize, usize), usize>) {
        let mut edges: HashMap<(usize, usize), (usize, usize)> = HashMap::with_capacity(ids.len() * 3);
        for &t in ids {
            let v = self.tris[t].v;
            for i in 0..3 {
                edges.insert((v[(i + 1) % 3], v[(i + 2) % 3]), (t, i));
            }
        }
        for &t in ids {
            let v = self.tris[t].v;
            for i in 0..3 {
                let (a, b) = (v[(i + 1) % 3], v[(i + 2) % 3]);
                if let Some(&(s, _)) = edges.get(&(b, a)) {
                    self.tris[t].nbr[i] = s;
                } else if let Some(&s) = outer.get(&(b, a)) {
                    self.tris[t].nbr[i] = s;
                    let sv = self.tris[s].v;
                    let j = (0..3).find(|&j| sv[(j + 1) % 3] == b && sv[(j + 2) % 3] == a).unwrap();
                    self.tris[s].nbr[j] = t;
                }
            }
        }
    }

    fn push(&mut self, v: [usize; 3]) -> usize {
        self.tris.push(Tri { v, nbr: [NONE; 3], alive: true });
        self.mark.push(0);
        self.tris.len() - 1
    }

    fn init(&mut self, a: usize, b: usize, c: usize) {
        let (a, b, c) = if self.orient(a, b, c) > 0.0 { (a, b, c) } else { (a, c, b) };
        let ids = [
            self.push([a, b, c]),
            self.push([b, a, GHOST]),
            self.push([c, b, GHOST]),
            self.push([a, c, GHOST]),
        ];
        self.link(&ids, &HashMap::new());
        self.last = ids[0];
    }

    /// A triangle (possibly ghost) whose circumcircle contains `p`.
    fn locate(&self, p: usize) -> usize {
        let mut t = self.last;
        let mut rot = p % 3;
        loop {
            let tri = &self.tris[t];
            if tri.is_ghost() {
                return t;
            }
            let mut moved = false;
            for k in 0..3 {
                let i = (rot + k) % 3;
                let (a, b) = (tri.v[(i + 1) % 3], tri.v[(i + 2) % 3]);
                if self.orient(a, b, p) < 0.0 {
                    t = tri.nbr[i];
                    moved = true;
                    break;
                }
            }
            if !moved {
                return t;
            }
            rot = (rot + 1) % 3;
        }
    }

    fn insert(&mut self, p: usize) {
        let start = self.locate(p);
        self.epoch += 1;
        let epoch = self.epoch;

        let mut cavity = vec![start];
        self.mark[start] = epoch;
        let mut head = 0;
        // boundary edges (a, b) with the triangle outside them, or NONE
        let mut boundary: Vec<(usize, usize, usize)> = Vec::new();
        while head < cavity.len() {
            let t = cavity[head];
            head += 1;
            let tri = self.tris[t];
            for i in 0..3 {
                let (a, b) = (tri.v[(i + 1) % 3], tri.v[(i + 2) % 3]);
                let s = tri.nbr[i];
                if self.mark[s] == epoch {
                    continue;
                }
                if self.conflicts(s, p) {
                    self.mark[s] = epoch;
                    cavity.push(s);
                } else {
                    boundary.push((a, b, s));
                }
            }
        }
        // A neighbor rejected earlier may have been added through another path.
        boundary.retain(|&(_, _, s)| self.mark[s] != epoch);

        for &t in &cavity {
            self.tris[t].alive = false;
        }
        let mut outer = HashMap::with_capacity(boundary.len());
        let mut created = Vec::with_capacity(boundary.len());
        for &(a, b, s) in &boundary {
            outer.insert((b, a), s);
            created.push(self.push([a, b, p]));
        }
        self.link(&created, &outer);
        self.last = created
            .iter()
            .copied()
            .find(|&t| !self.tris[t].is_ghost())
            .expect("insertion creates at least one finite triangle");
    }

    fn finite_triangles(&self) -> Vec<[usize; 3]> {
        self.tris.iter().filter(|t| t.alive && !t.is_ghost()).map(|t| t.v).collect()
    }
}

/// Delaunay triangulation of 2-D points covering their convex hull.
pub fn delaunay_triangulate(points: &PointSet) -> Result<Triangulation, TriangulationError> {
    if points.dim() != 2 {
        return Err(TriangulationError::Dimension(points.dim()));
    }
    let n = points.len();
    if let Some(i) = (0..n).find(|&i| !points.point(i).iter().all(|c| c.is_finite())) {
        return Err(TriangulationError::NonFinite(i));
    }
    if n < 3 {
        return Err(TriangulationError::TooFewPoints(n));
    }
    check_duplicates(points)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (mix(i as u64), i));

    let mut b = Builder { points, tris: Vec::with_capacity(4 * n), last: 0, mark: Vec::new(), epoch: 0 };
    let (a0, a1) = (order[0], order[1]);
    let third = order[2..]
        .iter()
        .position(|&c| b.orient(a0, a1, c) != 0.0)
        .ok_or(TriangulationError::Collinear)?
        + 2;
    b.init(a0, a1, order[third]);
    for (k, &p) in order.iter().enumerate().skip(2) {
        if k != third {
            b.insert(p);
        }
    }

    let mut triangles = b.finite_triangles();
    flip_cocircular(points, &mut triangles);
    for t in triangles.iter_mut() {
        let r = (0..3).min_by_key(|&i| t[i]).unwrap();
        t.rotate_left(r);
    }
    triangles.sort_unstable();
    Ok(Triangulation { points: points.clone(), triangles })
}

fn check_duplicates(points: &PointSet) -> Result<(), TriangulationError> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    let key = |i: usize| (points.coord(i, 0), points.coord(i, 1));
    idx.sort_by(|&a, &b| {
        let (ka, kb) = (key(a), key(b));
        ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1)).then(a.cmp(&b))
    });
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for w in idx.windows(2) {
        // -0.0 and 0.0 are the same location
        if key(w[0]) == key(w[1]) {
            match groups.last_mut() {
                Some(g) if g.last() == Some(&w[0]) => g.push(w[1]),
                _ => groups.push(vec![w[0], w[1]]),
            }
        }
    }
    if groups.is_empty() {
        return Ok(());
    }
    for g in groups.iter_mut() {
        g.sort_unstable();
    }
    groups.sort();
    Err(TriangulationError::DuplicatePoints(groups))
}

/// For every interior edge whose quadrilateral is exactly cocircular, switch to
/// the diagonal with the smaller minimum endpoint. Each flip replaces one
/// diagonal by a lexicographically smaller one, so this terminates.
fn flip_cocircular(points: &PointSet, triangles: &mut [[usize; 3]]) {
    let p = |i: usize| xy(points, i);
    loop {
        let mut owner: HashMap<(usize, usize), (usize, usize)> = HashMap::with_capacity(triangles.len() * 3);
        for (t, tri) in triangles.iter().enumerate() {
            for i in 0..3 {
                owner.insert((tri[(i + 1) % 3], tri[(i + 2) % 3]), (t, i));
            }
        }
        let mut flipped = false;
        let mut touched = vec![false; triangles.len()];
        for t in 0..triangles.len() {
            for i in 0..3 {
                if touched[t] {
                    break;
                }
                let tri = triangles[t];
                let (a, b, c) = (tri[(i + 1) % 3], tri[(i + 2) % 3], tri[i]);
                if a > b {
                    continue;
                }
                let Some(&(s, j)) = owner.get(&(b, a)) else { continue };
                if touched[s] {
                    continue;
                }
                let d = triangles[s][j];
                if robust::incircle(p(a), p(b), p(c), p(d)) != 0.0 || c.min(d) >= a.min(b) {
                    continue;
                }
                // triangles (c, a, b) and (d, b, a) become (c, a, d) and (d, b, c)
                triangles[t] = [c, a, d];
                triangles[s] = [d, b, c];
                touched[t] = true;
                touched[s] = true;
                flipped = true;
            }
        }
        if !flipped {
            break;
        }
    }
}
