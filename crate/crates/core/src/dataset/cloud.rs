use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A finite set of `n` points in `d`-dimensional space, stored row-major.
///
/// Labels are carried along for coloring and validation only; no algorithm reads them.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud<T> {
    coords: Vec<T>,
    n: usize,
    dim: usize,
    labels: Option<Vec<String>>,
}

impl<T: Scalar> PointCloud<T> {
    /// Builds a cloud from rows, checking that every row has the same length and all
    /// coordinates are finite.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.first().map_or(0, |r| r.as_ref().len());
        if !rows.is_empty() && dim == 0 {
            return Err(crate::error::invalid("points", "points need at least one coordinate"));
        }
        let mut coords = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::RaggedRow {
                    row: i,
                    expected: dim,
                    got: row.len(),
                });
            }
            coords.extend_from_slice(row);
        }
        Self::from_flat(coords, dim)
    }

    /// Builds a cloud from a row-major buffer of `n * dim` coordinates.
    pub fn from_flat(coords: Vec<T>, dim: usize) -> Result<Self> {
        if dim == 0 {
            if coords.is_empty() {
                return Ok(Self::empty(0));
            }
            return Err(crate::error::invalid("dim", "must be >= 1 for a nonempty cloud"));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(crate::error::invalid(
                "coords",
                format!("length {} is not a multiple of dim {dim}", coords.len()),
            ));
        }
        if let Some(pos) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / dim,
                col: pos % dim,
            });
        }
        let n = coords.len() / dim;
        Ok(Self {
            coords,
            n,
            dim,
            labels: None,
        })
    }

    /// An empty cloud that nominally lives in `dim` dimensions.
    pub fn empty(dim: usize) -> Self {
        Self {
            coords: Vec::new(),
            n: 0,
            dim,
            labels: None,
        }
    }

    /// Attaches per-point labels.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::RowCountMismatch {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[T]> + '_ {
        (0..self.n).map(move |i| self.point(i))
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Copy of column `axis`.
    pub fn column(&self, axis: usize) -> Vec<T> {
        self.points().map(|p| p[axis]).collect()
    }

    /// Sub-cloud made of the given rows, in the given order; labels follow.
    pub fn select(&self, indices: &[usize]) -> Self {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            coords.extend_from_slice(self.point(i));
        }
        Self {
            coords,
            n: indices.len(),
            dim: self.dim,
            labels: self
                .labels
                .as_ref()
                .map(|l| indices.iter().map(|&i| l[i].clone()).collect()),
        }
    }

    /// Stacks two clouds of the same dimension. Labels survive only when both sides have them.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        if self.dim != other.dim {
            return Err(crate::error::invalid(
                "dim",
                format!("cannot stack {}-d and {}-d clouds", self.dim, other.dim),
            ));
        }
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        let labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Ok(Self {
            coords,
            n: self.n + other.n,
            dim: self.dim,
            labels,
        })
    }

    /// Converts every coordinate to another scalar type.
    pub fn cast<U: Scalar>(&self) -> PointCloud<U> {
        PointCloud {
            coords: self.coords.iter().map(|c| U::lit(c.as_f64())).collect(),
            n: self.n,
            dim: self.dim,
            labels: self.labels.clone(),
        }
    }

    /// Per-column means; empty for an empty cloud.
    pub fn mean(&self) -> Vec<T> {
        if self.n == 0 {
            return Vec::new();
        }
        let mut mean = vec![T::zero(); self.dim];
        for p in self.points() {
            for (m, &x) in mean.iter_mut().zip(p) {
                *m = *m + x;
            }
        }
        let n = T::from_count(self.n);
        mean.iter_mut().for_each(|m| *m = *m / n);
        mean
    }
}
