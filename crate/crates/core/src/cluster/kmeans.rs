//! Lloyd's k-means with random or k-means++ seeding and restarts.

use rand::seq::index;
use rand::Rng;

use crate::dataset::generate::rng;
use crate::dataset::{split_seed, PointCloud};
use crate::error::{invalid, Error, Result};
use crate::scalar::{squared_euclidean, Scalar};

use super::assignment::ClusterAssignment;

/// How the initial centers are chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum KMeansInit<T> {
    /// `k` distinct input points chosen uniformly.
    RandomPoints,
    /// D²-weighted seeding.
    PlusPlus,
    /// Caller-supplied centers (`k` rows of the cloud's dimension).
    Explicit(Vec<Vec<T>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansParams<T> {
    pub k: usize,
    pub init: KMeansInit<T>,
    pub seed: u64,
    pub max_iter: usize,
    /// Stop once no center moves farther than this (Euclidean).
    pub tol: T,
    /// Independent seeded runs; the lowest-inertia one is returned. Ignored for
    /// explicit centers.
    pub n_init: usize,
}

impl<T: Scalar> KMeansParams<T> {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            init: KMeansInit::PlusPlus,
            seed: 0,
            max_iter: 300,
            tol: T::lit(1e-6),
            n_init: 10,
        }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn init(mut self, init: KMeansInit<T>) -> Self {
        self.init = init;
        self
    }

    pub fn n_init(mut self, n_init: usize) -> Self {
        self.n_init = n_init;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansResult<T> {
    pub assignment: ClusterAssignment,
    pub centers: Vec<Vec<T>>,
    pub inertia: T,
    pub iterations: usize,
    pub converged: bool,
    /// Objective after each assign/update round of the returned run.
    pub objective_trace: Vec<T>,
}

/// Clusters `cloud` into `params.k` groups.
///
/// Each round assigns every point to its nearest center (ties to the lowest index) and
/// moves each center to its cluster's barycenter. A cluster left empty takes over the
/// point farthest from its current center among clusters with at least two members,
/// which keeps `k` fixed and the objective non-increasing.
pub fn kmeans<T: Scalar>(cloud: &PointCloud<T>, params: &KMeansParams<T>) -> Result<KMeansResult<T>> {
    let n = cloud.len();
    if params.k == 0 || params.k > n {
        return Err(Error::InvalidK { k: params.k, n });
    }
    if params.max_iter == 0 {
        return Err(invalid("max_iter", "must be >= 1"));
    }
    if !(params.tol >= T::zero()) {
        return Err(invalid("tol", "must be a nonnegative number"));
    }
    if let KMeansInit::Explicit(centers) = &params.init {
        if centers.len() != params.k || centers.iter().any(|c| c.len() != cloud.dim()) {
            return Err(invalid(
                "init",
                format!("expected {} centers of dimension {}", params.k, cloud.dim()),
            ));
        }
        return Ok(lloyd(cloud, centers.clone(), params));
    }
    let runs = params.n_init.max(1);
    let mut best: Option<KMeansResult<T>> = None;
    for run in 0..runs {
        let seed = if runs == 1 {
            params.seed
        } else {
            split_seed(params.seed, run as u64)
        };
        let centers = match params.init {
            KMeansInit::PlusPlus => kmeans_pp_init(cloud, params.k, seed)?,
            _ => index::sample(&mut rng(seed), n, params.k)
                .into_iter()
                .map(|i| cloud.point(i).to_vec())
                .collect(),
        };
        let result = lloyd(cloud, centers, params);
        if best.as_ref().is_none_or(|b| result.inertia < b.inertia) {
            best = Some(result);
        }
    }
    Ok(best.expect("at least one run"))
}

fn nearest<T: Scalar>(p: &[T], centers: &[Vec<T>]) -> (usize, T) {
    let mut best = (0, squared_euclidean(p, &centers[0]));
    for (c, center) in centers.iter().enumerate().skip(1) {
        let d = squared_euclidean(p, center);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

fn lloyd<T: Scalar>(cloud: &PointCloud<T>, mut centers: Vec<Vec<T>>, params: &KMeansParams<T>) -> KMeansResult<T> {
    let (n, k, dim) = (cloud.len(), params.k, cloud.dim());
    let mut labels = vec![0usize; n];
    let mut trace = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    while iterations < params.max_iter {
        iterations += 1;
        let mut cost = vec![T::zero(); n];
        for (i, p) in cloud.points().enumerate() {
            let (c, d) = nearest(p, &centers);
            labels[i] = c;
            cost[i] = d;
        }
        let mut sizes = vec![0usize; k];
        labels.iter().for_each(|&l| sizes[l] += 1);
        for empty in 0..k {
            if sizes[empty] > 0 {
                continue;
            }
            let donor = (0..n)
                .filter(|&i| sizes[labels[i]] >= 2)
                .fold(None, |best: Option<usize>, i| match best {
                    Some(b) if cost[b] >= cost[i] => Some(b),
                    _ => Some(i),
                })
                .expect("k <= n leaves a cluster with two members");
            sizes[labels[donor]] -= 1;
            sizes[empty] = 1;
            labels[donor] = empty;
            cost[donor] = T::zero();
        }

        let mut sums = vec![vec![T::zero(); dim]; k];
        for (i, p) in cloud.points().enumerate() {
            for (s, &x) in sums[labels[i]].iter_mut().zip(p) {
                *s = *s + x;
            }
        }
        let mut shift = T::zero();
        for (c, sum) in sums.iter_mut().enumerate() {
            let m = T::from_count(sizes[c]);
            sum.iter_mut().for_each(|s| *s = *s / m);
            shift = shift.max(squared_euclidean(sum, &centers[c]).sqrt());
        }
        centers = sums;
        let objective = cloud
            .points()
            .enumerate()
            .map(|(i, p)| squared_euclidean(p, &centers[labels[i]]))
            .fold(T::zero(), |a, b| a + b);
        trace.push(objective);
        if shift <= params.tol {
            converged = true;
            break;
        }
    }
    let assignment =
        ClusterAssignment::new(labels.into_iter().map(Some).collect()).expect("every cluster keeps a member");
    KMeansResult {
        assignment,
        centers,
        inertia: *trace.last().expect("at least one round"),
        iterations,
        converged,
        objective_trace: trace,
    }
}

/// k-means++ seeding: the first center is a uniform point, each later one a point drawn
/// with probability proportional to its squared distance to the nearest chosen center.
/// Always returns `k` distinct input points.
pub fn kmeans_pp_init<T: Scalar>(cloud: &PointCloud<T>, k: usize, seed: u64) -> Result<Vec<Vec<T>>> {
    let n = cloud.len();
    if k == 0 || k > n {
        return Err(Error::InvalidK { k, n });
    }
    let mut rng = rng(seed);
    let mut chosen = vec![false; n];
    let mut picks = Vec::with_capacity(k);
    let first = rng.gen_range(0..n);
    chosen[first] = true;
    picks.push(first);
    let mut d2: Vec<f64> = cloud
        .points()
        .map(|p| squared_euclidean(p, cloud.point(first)).as_f64())
        .collect();
    while picks.len() < k {
        let total: f64 = (0..n).filter(|&i| !chosen[i]).map(|i| d2[i]).sum();
        let next = if total > 0.0 {
            let target = rng.gen::<f64>() * total;
            let mut acc = 0.0;
            let mut pick = None;
            for i in (0..n).filter(|&i| !chosen[i] && d2[i] > 0.0) {
                acc += d2[i];
                pick = Some(i);
                if acc > target {
                    break;
                }
            }
            pick.expect("positive total has a positive weight")
        } else {
            let free: Vec<usize> = (0..n).filter(|&i| !chosen[i]).collect();
            free[rng.gen_range(0..free.len())]
        };
        chosen[next] = true;
        picks.push(next);
        for (i, p) in cloud.points().enumerate() {
            d2[i] = d2[i].min(squared_euclidean(p, cloud.point(next)).as_f64());
        }
    }
    Ok(picks.into_iter().map(|i| cloud.point(i).to_vec()).collect())
}
