use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::scalar::{squared_euclidean, Scalar};

use super::PointCloud;

/// Point-to-point metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Metric {
    #[default]
    Euclidean,
    Manhattan,
}

impl Metric {
    pub fn distance<T: Scalar>(self, a: &[T], b: &[T]) -> T {
        match self {
            Metric::Euclidean => squared_euclidean(a, b).sqrt(),
            Metric::Manhattan => a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + (x - y).abs()),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Euclidean => "euclidean",
            Metric::Manhattan => "manhattan",
        })
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "euclidean" | "l2" => Ok(Metric::Euclidean),
            "manhattan" | "l1" | "cityblock" => Ok(Metric::Manhattan),
            other => Err(crate::error::invalid(
                "metric",
                format!("unknown metric `{other}` (expected euclidean or manhattan)"),
            )),
        }
    }
}

/// Dense symmetric matrix of pairwise distances with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix<T> {
    n: usize,
    entries: Vec<T>,
    metric: Metric,
}

impl<T: Scalar> DistanceMatrix<T> {
    /// Wraps a full row-major `n × n` matrix after checking symmetry, the zero diagonal and
    /// that entries are finite and nonnegative.
    pub fn from_full(n: usize, entries: Vec<T>, metric: Metric) -> crate::Result<Self> {
        if entries.len() != n * n {
            return Err(crate::error::invalid("entries", "expected n*n entries"));
        }
        for i in 0..n {
            if entries[i * n + i] != T::zero() {
                return Err(crate::error::invalid("entries", "diagonal must be zero"));
            }
            for j in 0..n {
                let v = entries[i * n + j];
                if !v.is_finite() || v < T::zero() {
                    return Err(crate::error::invalid("entries", "must be finite and >= 0"));
                }
                if v != entries[j * n + i] {
                    return Err(crate::error::invalid("entries", "matrix is not symmetric"));
                }
            }
        }
        Ok(Self { n, entries, metric })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Largest entry (the diameter of the point set); zero when `n <= 1`.
    pub fn max(&self) -> T {
        self.entries
            .iter()
            .copied()
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    /// Smallest off-diagonal entry, if any.
    pub fn min_off_diagonal(&self) -> Option<T> {
        let mut best: Option<T> = None;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let v = self.get(i, j);
                if best.is_none_or(|b| v < b) {
                    best = Some(v);
                }
            }
        }
        best
    }

    /// Restriction to a subset of points, in the given order.
    pub fn submatrix(&self, indices: &[usize]) -> Self {
        let m = indices.len();
        let mut entries = Vec::with_capacity(m * m);
        for &i in indices {
            for &j in indices {
                entries.push(self.get(i, j));
            }
        }
        Self {
            n: m,
            entries,
            metric: self.metric,
        }
    }
}

/// All pairwise distances of `cloud` under `metric`.
///
/// Each unordered pair is computed once and mirrored, so the result is exactly symmetric.
pub fn distance_matrix<T: Scalar>(cloud: &PointCloud<T>, metric: Metric) -> DistanceMatrix<T> {
    let n = cloud.len();
    let mut entries = vec![T::zero(); n * n];
    for i in 0..n {
        let pi = cloud.point(i);
        for j in (i + 1)..n {
            let d = metric.distance(pi, cloud.point(j));
            entries[i * n + j] = d;
            entries[j * n + i] = d;
        }
    }
    DistanceMatrix { n, entries, metric }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit_square() -> PointCloud<f64> {
        PointCloud::from_rows(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap()
    }

    #[test]
    fn unit_square_distances() {
        let d = distance_matrix(&unit_square(), Metric::Euclidean);
        let mut off: Vec<f64> = (0..4)
            .flat_map(|i| ((i + 1)..4).map(move |j| (i, j)))
            .map(|(i, j)| d.get(i, j))
            .collect();
        off.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(&off[..4], &[1.0; 4]);
        assert_eq!(off[4], 2f64.sqrt());
        assert_eq!(off[5], 2f64.sqrt());
    }

    #[test]
    fn single_point_and_manhattan() {
        let one = PointCloud::from_rows(&[[3.0f64, 4.0]]).unwrap();
        let d = distance_matrix(&one, Metric::Euclidean);
        assert_eq!(d.len(), 1);
        assert_eq!(d.get(0, 0), 0.0);

        let line = PointCloud::from_rows(&[[0.0f64], [3.0]]).unwrap();
        assert_eq!(distance_matrix(&line, Metric::Manhattan).get(0, 1), 3.0);
    }

    #[test]
    fn metric_parsing() {
        assert_eq!("Euclidean".parse::<Metric>().unwrap(), Metric::Euclidean);
        assert_eq!("manhattan".parse::<Metric>().unwrap(), Metric::Manhattan);
        assert!("cosine".parse::<Metric>().is_err());
    }

    proptest! {
        #[test]
        fn triangle_inequality(
            pts in prop::collection::vec(prop::collection::vec(-100.0f64..100.0, 3), 3..12),
            manhattan in any::<bool>(),
        ) {
            let cloud = PointCloud::from_rows(&pts).unwrap();
            let metric = if manhattan { Metric::Manhattan } else { Metric::Euclidean };
            let d = distance_matrix(&cloud, metric);
            let n = d.len();
            for i in 0..n {
                prop_assert_eq!(d.get(i, i), 0.0);
                for j in 0..n {
                    prop_assert_eq!(d.get(i, j), d.get(j, i));
                    for k in 0..n {
                        let lhs = d.get(i, k);
                        let rhs = d.get(i, j) + d.get(j, k);
                        prop_assert!(lhs <= rhs + 1e-12 * rhs.max(1.0));
                    }
                }
            }
        }
    }
}
