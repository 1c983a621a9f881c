use crate::dataset::PointCloud;
use crate::error::{invalid, Error, Result};
use crate::scalar::Scalar;

/// Uniform overlapping cover of the lens image: closed intervals per lens dimension,
/// combined as a cartesian product.
#[derive(Debug, Clone, PartialEq)]
pub struct Cover<T> {
    /// `intervals[d]` lists the `(lo, hi)` intervals along lens dimension `d`.
    pub intervals: Vec<Vec<(T, T)>>,
    pub n_intervals: usize,
    pub overlap_frac: T,
}

impl<T: Scalar> Cover<T> {
    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    /// Number of product elements.
    pub fn len(&self) -> usize {
        self.intervals.iter().map(Vec::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Per-dimension interval indices of element `alpha`, last dimension varying fastest.
    pub fn element(&self, alpha: usize) -> Vec<usize> {
        let mut rest = alpha;
        let mut idx = vec![0; self.dim()];
        for d in (0..self.dim()).rev() {
            let m = self.intervals[d].len();
            idx[d] = rest % m;
            rest /= m;
        }
        idx
    }

    pub fn contains(&self, alpha: usize, value: &[T]) -> bool {
        self.element(alpha).iter().enumerate().all(|(d, &i)| {
            let (lo, hi) = self.intervals[d][i];
            lo <= value[d] && value[d] <= hi
        })
    }

    /// Preimage of every element (possibly empty), point indices ascending.
    pub fn preimages(&self, values: &PointCloud<T>) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.len()];
        let strides: Vec<usize> = (0..self.dim())
            .map(|d| self.intervals[d + 1..].iter().map(Vec::len).product())
            .collect();
        for (p, v) in values.points().enumerate() {
            let hits: Vec<Vec<usize>> = (0..self.dim())
                .map(|d| {
                    self.intervals[d]
                        .iter()
                        .enumerate()
                        .filter(|(_, &(lo, hi))| lo <= v[d] && v[d] <= hi)
                        .map(|(i, _)| i)
                        .collect()
                })
                .collect();
            let mut alphas = vec![0usize];
            for (d, h) in hits.iter().enumerate() {
                alphas = alphas
                    .iter()
                    .flat_map(|&a| {
                        let stride = strides[d];
                        h.iter().map(move |&i| a + i * stride)
                    })
                    .collect();
            }
            for a in alphas {
                out[a].push(p);
            }
        }
        out
    }
}

/// Splits `[min, max]` of each lens column into `n_intervals` intervals of length
/// `L * (1 + overlap_frac)` with `L = (max - min) / n_intervals`, stepped by `L` and
/// clipped at `max`. A constant column gets the single interval `[min, min]`.
pub fn build_cover<T: Scalar>(values: &PointCloud<T>, n_intervals: usize, overlap_frac: T) -> Result<Cover<T>> {
    if n_intervals == 0 {
        return Err(invalid("intervals", "must be >= 1"));
    }
    if !(overlap_frac >= T::zero() && overlap_frac < T::one()) {
        return Err(invalid("overlap", format!("must lie in [0, 1), got {overlap_frac}")));
    }
    if values.is_empty() {
        return Err(invalid("values", "lens table is empty"));
    }
    let mut intervals = Vec::with_capacity(values.dim());
    for d in 0..values.dim() {
        let col = values.column(d);
        if let Some(row) = col.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row, col: d });
        }
        let min = col.iter().copied().fold(T::infinity(), T::min);
        let max = col.iter().copied().fold(T::neg_infinity(), T::max);
        if max == min {
            intervals.push(vec![(min, max)]);
            continue;
        }
        let step = (max - min) / T::from_count(n_intervals);
        let length = step * (T::one() + overlap_frac);
        let los: Vec<T> = (0..n_intervals).map(|i| min + step * T::from_count(i)).collect();
        let ivs = (0..n_intervals)
            .map(|i| {
                let hi = if i + 1 == n_intervals {
                    max
                } else {
                    // never leave a rounding gap before the next interval
                    (los[i] + length).max(los[i + 1]).min(max)
                };
                (los[i], hi)
            })
            .collect();
        intervals.push(ivs);
    }
    Ok(Cover {
        intervals,
        n_intervals,
        overlap_frac,
    })
}
