//! Recursive median partitioning of node positions into a binary tree of bins.

use std::cmp::Ordering;

use crate::error::RewireError;
use crate::mesh::PointSet;
use crate::par;

/// Result of splitting one bin at the median of its highest-variance axis.
#[derive(Clone, Debug, PartialEq)]
pub struct Split {
    pub dimension: usize,
    pub value: f64,
    /// Nodes ranked below the cut, ascending by index.
    pub lo: Vec<usize>,
    /// Nodes ranked at or above the cut, ascending by index.
    pub hi: Vec<usize>,
}

/// Splits `bin` into two halves along the axis of largest coordinate variance.
///
/// Nodes are ranked by `(coordinate, node index)` and the lowest `⌊n/2⌋` ranks
/// form `lo`, so `hi` holds the median and everything above it. Ties in variance go
/// to the lowest axis.
pub fn split_bin(bin: &[usize], points: &PointSet) -> Result<Split, RewireError> {
    if bin.len() < 2 {
        return Err(RewireError::UnsplittableBin(bin.len()));
    }
    let mut work = bin.to_vec();
    let (dimension, value, cut) = split_in_place(&mut work, points);
    let mut lo = work[..cut].to_vec();
    let mut hi = work[cut..].to_vec();
    lo.sort_unstable();
    hi.sort_unstable();
    Ok(Split { dimension, value, lo, hi })
}

/// Axis with the largest population variance over `members`; lowest axis on ties.
/// Coordinates are taken relative to the first member so the choice is unaffected
/// by exact translations.
pub(crate) fn widest_axis(members: &[usize], points: &PointSet) -> usize {
    let n = members.len() as f64;
    let origin = members[0];
    let mut best = (0, f64::NEG_INFINITY);
    for axis in 0..points.dim() {
        let base = points.coord(origin, axis);
        let mean = members.iter().map(|&i| points.coord(i, axis) - base).sum::<f64>() / n;
        let var = members
            .iter()
            .map(|&i| {
                let d = points.coord(i, axis) - base - mean;
                d * d
            })
            .sum::<f64>()
            / n;
        if var > best.1 {
            best = (axis, var);
        }
    }
    best.0
}

#[inline]
fn rank_order(points: &PointSet, axis: usize, a: usize, b: usize) -> Ordering {
    points.coord(a, axis).total_cmp(&points.coord(b, axis)).then(a.cmp(&b))
}

/// Partitions `members` in place so that `members[..cut]` are the lower-ranked
/// half. Returns `(axis, median value, cut)`.
pub(crate) fn split_in_place(members: &mut [usize], points: &PointSet) -> (usize, f64, usize) {
    debug_assert!(members.len() >= 2);
    // Sorting first keeps the variance sums independent of the incoming order.
    members.sort_unstable();
    let axis = widest_axis(members, points);
    let n = members.len();
    let cut = n / 2;
    members.select_nth_unstable_by(cut, |&a, &b| rank_order(points, axis, a, b));
    let upper = points.coord(members[cut], axis);
    let value = if n % 2 == 1 {
        upper
    } else {
        let lower = members[..cut]
            .iter()
            .map(|&i| points.coord(i, axis))
            .fold(f64::NEG_INFINITY, f64::max);
        0.5 * (lower + upper)
    };
    (axis, value, cut)
}

#[derive(Clone, Debug, PartialEq)]
pub enum NodeKind {
    Leaf,
    Split {
        dimension: usize,
        value: f64,
        /// `[lo, hi]` child node ids.
        children: [usize; 2],
    },
}

/// One bin of the partition tree. Its members are `tree.bin(id)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeNode {
    pub depth: usize,
    pub kind: NodeKind,
    start: usize,
    end: usize,
}

impl TreeNode {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.kind, NodeKind::Leaf)
    }

    pub fn children(&self) -> Option<[usize; 2]> {
        match self.kind {
            NodeKind::Split { children, .. } => Some(children),
            NodeKind::Leaf => None,
        }
    }
}

/// Binary tree of median splits. Node 0 is the root; nodes are stored level by
/// level, and every bin is a contiguous range of one shared node permutation.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionTree {
    order: Vec<usize>,
    nodes: Vec<TreeNode>,
    levels: usize,
}

impl PartitionTree {
    /// Splits recursively `levels` times. Bins of one node stop early, so the
    /// tree is ragged when `N < 2^levels`. Bins of one level are split in parallel.
    pub fn build(points: &PointSet, levels: usize) -> Self {
        let n = points.len();
        let mut order: Vec<usize> = (0..n).collect();
        let mut nodes = vec![TreeNode { depth: 0, kind: NodeKind::Leaf, start: 0, end: n }];
        let mut frontier: Vec<usize> = if n >= 2 && levels >= 1 { vec![0] } else { vec![] };

        for depth in 0..levels {
            if frontier.is_empty() {
                break;
            }
            let pieces = disjoint_ranges(&mut order, frontier.iter().map(|&id| (nodes[id].start, nodes[id].end)));
            let splits = par::map_vec(pieces, |members| split_in_place(members, points));

            let mut next = Vec::with_capacity(frontier.len() * 2);
            for (&id, (dimension, value, cut)) in frontier.iter().zip(splits) {
                let (start, end) = (nodes[id].start, nodes[id].end);
                let lo = nodes.len();
                let hi = lo + 1;
                nodes.push(TreeNode { depth: depth + 1, kind: NodeKind::Leaf, start, end: start + cut });
                nodes.push(TreeNode { depth: depth + 1, kind: NodeKind::Leaf, start: start + cut, end });
                nodes[id].kind = NodeKind::Split { dimension, value, children: [lo, hi] };
                if depth + 1 < levels {
                    next.extend([lo, hi].into_iter().filter(|&c| nodes[c].len() >= 2));
                }
            }
            frontier = next;
        }

        PartitionTree { order, nodes, levels }
    }

    /// Requested number of split levels.
    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Deepest level actually reached.
    pub fn depth(&self) -> usize {
        self.nodes.iter().map(|t| t.depth).max().unwrap_or(0)
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn root(&self) -> usize {
        0
    }

    /// Members of bin `id` in internal order.
    pub fn bin(&self, id: usize) -> &[usize] {
        let t = &self.nodes[id];
        &self.order[t.start..t.end]
    }

    /// Members of bin `id`, ascending by node index.
    pub fn bin_sorted(&self, id: usize) -> Vec<usize> {
        let mut b = self.bin(id).to_vec();
        b.sort_unstable();
        b
    }

    /// Leaf ids, left (lower-ranked) to right.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![0];
        while let Some(id) = stack.pop() {
            match self.nodes[id].children() {
                Some([lo, hi]) => {
                    stack.push(hi);
                    stack.push(lo);
                }
                None => out.push(id),
            }
        }
        out
    }
}

/// Carves `order` into the given sorted, non-overlapping `[start, end)` ranges.
fn disjoint_ranges(
    order: &mut [usize],
    ranges: impl Iterator<Item = (usize, usize)>,
) -> Vec<&mut [usize]> {
    let mut pieces = Vec::new();
    let mut rest = order;
    let mut pos = 0;
    for (start, end) in ranges {
        let tail = std::mem::take(&mut rest);
        let (_, tail) = tail.split_at_mut(start - pos);
        let (piece, tail) = tail.split_at_mut(end - start);
        pieces.push(piece);
        rest = tail;
        pos = end;
    }
    pieces
}
