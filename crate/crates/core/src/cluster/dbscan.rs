use std::collections::VecDeque;

use crate::dataset::DistanceMatrix;
use crate::error::{invalid, Result};
use crate::scalar::Scalar;

use super::ClusterAssignment;

/// Density-based clustering over a precomputed distance matrix.
///
/// A point is core when at least `min_pts` points (itself included) lie within `eps`.
/// Clusters are the connected components of core points under the `<= eps` relation,
/// numbered by their lowest-index core point. A non-core point within `eps` of a core
/// point joins the cluster of its nearest such core point (ties to the lower cluster);
/// everything else is noise.
pub fn dbscan<T: Scalar>(dist: &DistanceMatrix<T>, eps: T, min_pts: usize) -> Result<ClusterAssignment> {
    if !(eps > T::zero() && eps.is_finite()) {
        return Err(invalid("eps", "must be a positive finite radius"));
    }
    if min_pts == 0 {
        return Err(invalid("min_pts", "must be >= 1"));
    }
    let n = dist.len();
    let neighbors: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| dist.get(i, j) <= eps).collect())
        .collect();
    let core: Vec<bool> = neighbors.iter().map(|nb| nb.len() >= min_pts).collect();

    let mut labels: Vec<Option<usize>> = vec![None; n];
    let mut k = 0;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if !core[start] || labels[start].is_some() {
            continue;
        }
        labels[start] = Some(k);
        queue.push_back(start);
        while let Some(p) = queue.pop_front() {
            for &q in &neighbors[p] {
                if core[q] && labels[q].is_none() {
                    labels[q] = Some(k);
                    queue.push_back(q);
                }
            }
        }
        k += 1;
    }

    for p in (0..n).filter(|&p| !core[p]) {
        let mut best: Option<(T, usize)> = None;
        for &q in neighbors[p].iter().filter(|&&q| core[q]) {
            let cand = (dist.get(p, q), labels[q].expect("core points are labeled"));
            best = match best {
                Some(b) if b.0 < cand.0 || (b.0 == cand.0 && b.1 <= cand.1) => Some(b),
                _ => Some(cand),
            };
        }
        labels[p] = best.map(|b| b.1);
    }
    ClusterAssignment::new(labels)
}
