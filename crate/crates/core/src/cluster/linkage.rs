//! Single-linkage agglomeration and flat cuts of the resulting dendrogram.

use crate::dataset::DistanceMatrix;
use crate::error::{invalid, Error, Result};
use crate::scalar::{cmp, Scalar};
use crate::union_find::UnionFind;

use super::ClusterAssignment;

/// One agglomeration step. Leaves are clusters `0..n_leaves`; the cluster created by
/// merge `i` has id `n_leaves + i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Merge<T> {
    pub left: usize,
    pub right: usize,
    pub height: T,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram<T> {
    pub merges: Vec<Merge<T>>,
    pub n_leaves: usize,
}

impl<T: Scalar> Dendrogram<T> {
    pub fn heights(&self) -> Vec<T> {
        self.merges.iter().map(|m| m.height).collect()
    }

    /// Flat assignment after applying the first `count` merges.
    fn flatten(&self, count: usize) -> ClusterAssignment {
        let n = self.n_leaves;
        let mut uf = UnionFind::new(n);
        let mut rep: Vec<usize> = (0..n).collect();
        for m in &self.merges[..count] {
            uf.union(rep[m.left], rep[m.right]);
            rep.push(rep[m.left]);
        }
        let (labels, _) = uf.labels();
        ClusterAssignment::from_raw(&labels.into_iter().map(Some).collect::<Vec<_>>())
    }
}

/// Single-linkage hierarchy from a distance matrix.
///
/// Built from a Prim minimum spanning tree: sorting the tree edges by length and merging
/// their endpoint clusters reproduces agglomeration under the minimum pairwise distance.
pub fn single_linkage<T: Scalar>(dist: &DistanceMatrix<T>) -> Dendrogram<T> {
    let n = dist.len();
    let mut edges: Vec<(T, usize, usize)> = Vec::with_capacity(n.saturating_sub(1));
    if n > 1 {
        let mut in_tree = vec![false; n];
        let mut best = vec![T::infinity(); n];
        let mut parent = vec![0usize; n];
        let mut current = 0;
        in_tree[0] = true;
        for _ in 1..n {
            let mut next = usize::MAX;
            for v in 0..n {
                if in_tree[v] {
                    continue;
                }
                let d = dist.get(current, v);
                if d < best[v] {
                    best[v] = d;
                    parent[v] = current;
                }
                if next == usize::MAX || best[v] < best[next] {
                    next = v;
                }
            }
            in_tree[next] = true;
            edges.push((best[next], parent[next], next));
            current = next;
        }
    }
    edges.sort_by(|a, b| cmp(&a.0, &b.0));

    let mut uf = UnionFind::new(n);
    let mut cluster_of_root: Vec<usize> = (0..n).collect();
    let mut sizes = vec![1usize; n];
    let mut merges = Vec::with_capacity(edges.len());
    for (height, a, b) in edges {
        let (ra, rb) = (uf.find(a), uf.find(b));
        let (ca, cb) = (cluster_of_root[ra], cluster_of_root[rb]);
        uf.union(ra, rb);
        let root = uf.find(ra);
        let id = n + merges.len();
        let size = sizes[ca] + sizes[cb];
        sizes.push(size);
        cluster_of_root[root] = id;
        merges.push(Merge {
            left: ca.min(cb),
            right: ca.max(cb),
            height,
            size,
        });
    }
    Dendrogram { merges, n_leaves: n }
}

/// How to turn a dendrogram into a flat clustering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CutStrategy<T> {
    /// Exactly `k` clusters: the last `k - 1` merges are undone.
    FixedCount(usize),
    /// Undo every merge higher than `h`.
    Height(T),
    /// Bin merge heights into `bins` equal bins over `[0, range]` (`range` defaults to the
    /// largest merge height), find the first empty bin above the lowest occupied one, and
    /// cut at its lower edge. No such bin keeps every merge.
    HistogramGap { bins: usize, range: Option<T> },
}

pub fn cut_dendrogram<T: Scalar>(dendrogram: &Dendrogram<T>, strategy: CutStrategy<T>) -> Result<ClusterAssignment> {
    let n = dendrogram.n_leaves;
    let merges = &dendrogram.merges;
    let keep = match strategy {
        CutStrategy::FixedCount(k) => {
            if k == 0 || k > n {
                return Err(Error::InvalidK { k, n });
            }
            n - k
        }
        CutStrategy::Height(h) => {
            if !(h >= T::zero()) {
                return Err(invalid("height", "must be a nonnegative number"));
            }
            merges.iter().take_while(|m| m.height <= h).count()
        }
        CutStrategy::HistogramGap { bins, range } => {
            if bins == 0 {
                return Err(invalid("bins", "must be >= 1"));
            }
            let top = range.unwrap_or_else(|| merges.iter().map(|m| m.height).fold(T::zero(), T::max));
            match histogram_gap(merges.iter().map(|m| m.height), bins, top) {
                Some(edge) => merges.iter().take_while(|m| m.height < edge).count(),
                None => merges.len(),
            }
        }
    };
    Ok(dendrogram.flatten(keep))
}

fn histogram_gap<T: Scalar>(heights: impl Iterator<Item = T>, bins: usize, top: T) -> Option<T> {
    if !(top > T::zero()) {
        return None;
    }
    let width = top / T::from_count(bins);
    let mut counts = vec![0usize; bins];
    for h in heights {
        let b = (h / width).floor().to_usize().unwrap_or(0).min(bins - 1);
        counts[b] += 1;
    }
    let first = counts.iter().position(|&c| c > 0)?;
    let gap = (first + 1..bins).find(|&b| counts[b] == 0)?;
    Some(width * T::from_count(gap))
}
