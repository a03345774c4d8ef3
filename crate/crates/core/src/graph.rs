//! Compressed undirected adjacency used by the traversal-based modules.

use std::collections::VecDeque;

use crate::mesh::{Edge, Mesh, TaggedEdgeSet};

/// Undirected graph in CSR form. Neighbor lists are sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Graph {
    /// Builds adjacency for `n` nodes. Self-loops and repeated pairs are dropped;
    /// indices must be `< n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut pairs: Vec<Edge> = edges.into_iter().filter(|e| e.u != e.v).collect();
        pairs.sort_unstable();
        pairs.dedup();

        let mut degree = vec![0usize; n];
        for e in &pairs {
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0usize; offsets[n]];
        for e in &pairs {
            targets[cursor[e.u]] = e.v;
            cursor[e.u] += 1;
            targets[cursor[e.v]] = e.u;
            cursor[e.v] += 1;
        }
        for i in 0..n {
            targets[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        Graph { offsets, targets }
    }

    pub fn from_mesh(mesh: &Mesh) -> Self {
        Self::from_edges(mesh.node_count(), mesh.edges().iter().copied())
    }

    pub fn from_tagged(n: usize, set: &TaggedEdgeSet) -> Self {
        Self::from_edges(n, set.pairs())
    }

    /// Builds directly from already-sorted neighbor lists.
    pub(crate) fn from_adjacency(lists: Vec<Vec<usize>>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let mut targets = Vec::with_capacity(lists.iter().map(Vec::len).sum());
        for l in lists {
            targets.extend_from_slice(&l);
            offsets.push(targets.len());
        }
        Graph { offsets, targets }
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Each undirected edge once, with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| Edge { u, v })
        })
    }

    /// Hop distances from `sources` (multi-source BFS); `u32::MAX` marks unreachable nodes.
    pub fn bfs(&self, sources: &[usize]) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.node_count()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let next = dist[u] + 1;
            for &w in self.neighbors(u) {
                if dist[w] == u32::MAX {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Eccentricity of `source`: largest finite hop distance from it, plus
    /// the number of nodes reached.
    pub(crate) fn eccentricity(&self, source: usize, dist: &mut [u32], queue: &mut Vec<usize>) -> (u32, usize) {
        dist.fill(u32::MAX);
        queue.clear();
        dist[source] = 0;
        queue.push(source);
        let mut head = 0;
        let mut far = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            let next = dist[u] + 1;
            for &w in self.neighbors(u) {
                if dist[w] == u32::MAX {
                    dist[w] = next;
                    far = next;
                    queue.push(w);
                }
            }
        }
        (far, queue.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csr_is_symmetric_and_deduplicated() {
        let g = Graph::from_edges(4, [Edge::new(0, 1), Edge::new(1, 0), Edge::new(2, 2), Edge::new(3, 1)]);
        assert_eq!(g.neighbors(1), &[0, 3]);
        assert_eq!(g.neighbors(2), &[] as &[usize]);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![Edge::new(0, 1), Edge::new(1, 3)]);
    }

    #[test]
    fn bfs_on_path() {
        let g = Graph::from_edges(4, (0..3).map(|i| Edge::new(i, i + 1)));
        assert_eq!(g.bfs(&[0]), vec![0, 1, 2, 3]);
        assert_eq!(g.bfs(&[0, 3]), vec![0, 1, 1, 0]);
    }
}
