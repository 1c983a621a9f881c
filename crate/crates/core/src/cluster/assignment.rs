use std::collections::HashMap;
use std::io::Write;

use crate::dataset::PointCloud;
use crate::error::{Error, Result};
use crate::scalar::{squared_euclidean, Scalar};

/// A partition of points into clusters `0..k`, with `None` marking noise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterAssignment {
    labels: Vec<Option<usize>>,
    k: usize,
}

impl ClusterAssignment {
    /// Wraps labels that already use every index in `0..k` for some `k`.
    pub fn new(labels: Vec<Option<usize>>) -> Result<Self> {
        let k = labels.iter().flatten().max().map_or(0, |m| m + 1);
        let mut used = vec![false; k];
        labels.iter().flatten().for_each(|&l| used[l] = true);
        if let Some(missing) = used.iter().position(|u| !u) {
            return Err(Error::EmptyCluster(missing));
        }
        Ok(Self { labels, k })
    }

    /// Renumbers arbitrary cluster ids by order of first appearance.
    pub fn from_raw(raw: &[Option<usize>]) -> Self {
        let mut map = HashMap::new();
        let labels = raw
            .iter()
            .map(|l| {
                l.map(|id| {
                    let next = map.len();
                    *map.entry(id).or_insert(next)
                })
            })
            .collect();
        Self { labels, k: map.len() }
    }

    pub fn labels(&self) -> &[Option<usize>] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> Option<usize> {
        self.labels[i]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn noise_count(&self) -> usize {
        self.labels.iter().filter(|l| l.is_none()).count()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        self.labels.iter().flatten().for_each(|&l| sizes[l] += 1);
        sizes
    }

    /// Member indices of every cluster, ascending.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (i, l) in self.labels.iter().enumerate() {
            if let Some(l) = l {
                out[*l].push(i);
            }
        }
        out
    }
}

/// Sum over clusters of squared distances to each cluster's barycenter.
pub fn inertia<T: Scalar>(cloud: &PointCloud<T>, assignment: &ClusterAssignment) -> Result<T> {
    if assignment.len() != cloud.len() {
        return Err(Error::AssignmentLength {
            expected: cloud.len(),
            got: assignment.len(),
        });
    }
    if let Some(i) = assignment.labels().iter().position(Option::is_none) {
        return Err(Error::NoiseInPartition(i));
    }
    let mut total = T::zero();
    for (c, members) in assignment.clusters().into_iter().enumerate() {
        if members.is_empty() {
            return Err(Error::EmptyCluster(c));
        }
        let center = barycenter(cloud, &members);
        total = total
            + members
                .iter()
                .map(|&i| squared_euclidean(cloud.point(i), &center))
                .fold(T::zero(), |a, b| a + b);
    }
    Ok(total)
}

pub(crate) fn barycenter<T: Scalar>(cloud: &PointCloud<T>, members: &[usize]) -> Vec<T> {
    let mut c = vec![T::zero(); cloud.dim()];
    for &i in members {
        for (s, &x) in c.iter_mut().zip(cloud.point(i)) {
            *s = *s + x;
        }
    }
    let m = T::from_count(members.len());
    c.iter_mut().for_each(|s| *s = *s / m);
    c
}

/// Fraction of non-noise points whose ground-truth label is the majority label of their
/// cluster. Returns 1 for an assignment with no clustered points.
pub fn purity<S: AsRef<str>>(assignment: &ClusterAssignment, truth: &[S]) -> f64 {
    let mut total = 0usize;
    let mut agree = 0usize;
    for members in assignment.clusters() {
        let mut counts: HashMap<&str, usize> = HashMap::new();
        for &i in &members {
            *counts.entry(truth[i].as_ref()).or_default() += 1;
        }
        agree += counts.values().max().copied().unwrap_or(0);
        total += members.len();
    }
    if total == 0 {
        1.0
    } else {
        agree as f64 / total as f64
    }
}

/// Writes `point_index,label` rows with noise rendered as `-1`.
pub fn write_assignment_csv<W: Write>(assignment: &ClusterAssignment, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["point_index", "label"])?;
    for (i, l) in assignment.labels().iter().enumerate() {
        let label = l.map_or_else(|| "-1".to_string(), |l| l.to_string());
        w.write_record([i.to_string(), label])?;
    }
    w.flush()?;
    Ok(())
}
