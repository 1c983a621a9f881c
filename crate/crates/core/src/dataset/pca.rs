//! Principal component projection via a cyclic Jacobi eigensolver on the covariance
//! matrix.

use crate::error::{invalid, Error, Result};
use crate::scalar::{cmp, Scalar};

use super::PointCloud;

/// A fitted principal-component basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Pca<T> {
    pub mean: Vec<T>,
    /// Column standard deviations used for z-scoring, when fitted with `standardize`.
    pub scale: Option<Vec<T>>,
    /// All `d` eigenvalues of the covariance, descending.
    pub eigenvalues: Vec<T>,
    /// Unit eigenvectors, one per row, matching `eigenvalues`.
    pub components: Vec<Vec<T>>,
}

impl<T: Scalar> Pca<T> {
    /// Fits on mean-centered data (and z-scored columns when `standardize`). Zero-variance
    /// columns keep scale 1 so standardizing never divides by zero.
    pub fn fit(cloud: &PointCloud<T>, standardize: bool) -> Result<Self> {
        let (n, d) = (cloud.len(), cloud.dim());
        if n < 2 {
            return Err(invalid("cloud", format!("PCA needs at least 2 points, got {n}")));
        }
        let mean = cloud.mean();
        let denom = T::from_count(n - 1);
        let mut cov = vec![vec![T::zero(); d]; d];
        for p in cloud.points() {
            for i in 0..d {
                let xi = p[i] - mean[i];
                for j in i..d {
                    cov[i][j] = cov[i][j] + xi * (p[j] - mean[j]);
                }
            }
        }
        for i in 0..d {
            for j in i..d {
                cov[i][j] = cov[i][j] / denom;
                cov[j][i] = cov[i][j];
            }
        }
        let scale = standardize.then(|| {
            let s: Vec<T> = (0..d)
                .map(|i| {
                    let sd = cov[i][i].sqrt();
                    if sd > T::zero() {
                        sd
                    } else {
                        T::one()
                    }
                })
                .collect();
            for i in 0..d {
                for j in 0..d {
                    cov[i][j] = cov[i][j] / (s[i] * s[j]);
                }
            }
            s
        });

        let (values, vectors) = symmetric_eigen(cov);
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| cmp(&values[b], &values[a]));
        let eigenvalues = order.iter().map(|&i| values[i].max(T::zero())).collect();
        let components = order
            .iter()
            .map(|&i| {
                let mut v: Vec<T> = (0..d).map(|r| vectors[r][i]).collect();
                let lead = v
                    .iter()
                    .enumerate()
                    .fold(0, |best, (j, x)| if x.abs() > v[best].abs() { j } else { best });
                if v[lead] < T::zero() {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
                v
            })
            .collect();
        Ok(Self {
            mean,
            scale,
            eigenvalues,
            components,
        })
    }

    /// Scores of every point on the first `k` components.
    pub fn transform(&self, cloud: &PointCloud<T>, k: usize) -> Result<PointCloud<T>> {
        let d = self.mean.len();
        if k == 0 || k > d {
            return Err(Error::InvalidK { k, n: d });
        }
        let mut coords = Vec::with_capacity(cloud.len() * k);
        let mut centered = vec![T::zero(); d];
        for p in cloud.points() {
            for j in 0..d {
                centered[j] = p[j] - self.mean[j];
                if let Some(s) = &self.scale {
                    centered[j] = centered[j] / s[j];
                }
            }
            for comp in &self.components[..k] {
                coords.push(comp.iter().zip(&centered).map(|(&a, &b)| a * b).sum());
            }
        }
        let out = if coords.is_empty() {
            PointCloud::empty(k)
        } else {
            PointCloud::from_flat(coords, k)?
        };
        match cloud.labels() {
            Some(l) => out.with_labels(l.to_vec()),
            None => Ok(out),
        }
    }
}

/// Projects `cloud` onto its top-`k` principal components (no variance scaling).
pub fn pca_project<T: Scalar>(cloud: &PointCloud<T>, k: usize) -> Result<PointCloud<T>> {
    if k == 0 || k > cloud.dim() {
        return Err(Error::InvalidK { k, n: cloud.dim() });
    }
    Pca::fit(cloud, false)?.transform(cloud, k)
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns eigenvalues and the matrix whose columns are the eigenvectors.
fn symmetric_eigen<T: Scalar>(mut a: Vec<Vec<T>>) -> (Vec<T>, Vec<Vec<T>>) {
    let d = a.len();
    let mut v: Vec<Vec<T>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let two = T::lit(2.0);
    for _sweep in 0..100 {
        let off: T = (0..d)
            .flat_map(|i| ((i + 1)..d).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let total: T = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off <= T::epsilon() * T::epsilon() * total || off == T::zero() {
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a[p][q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..d {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..d {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    ((0..d).map(|i| a[i][i]).collect(), v)
}
