use std::fmt;
use std::str::FromStr;

use crate::dataset::{pca_project, PointCloud};
use crate::error::{invalid, Error, Result};
use crate::scalar::Scalar;

/// The filter function `f : X -> Z` with `Z` the line or the plane.
#[derive(Debug, Clone, PartialEq)]
pub enum Lens<T> {
    /// Projection onto one coordinate axis.
    Coordinate(usize),
    /// Scores on the top one or two principal components.
    Pca(usize),
    /// Precomputed values, one row per point, one or two columns.
    External(PointCloud<T>),
}

impl<T: Scalar> Lens<T> {
    pub fn output_dim(&self) -> usize {
        match self {
            Lens::Coordinate(_) => 1,
            Lens::Pca(k) => *k,
            Lens::External(table) => table.dim(),
        }
    }
}

impl<T: Scalar> fmt::Display for Lens<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lens::Coordinate(axis) => write!(f, "coordinate:{axis}"),
            Lens::Pca(k) => write!(f, "pca:{k}"),
            Lens::External(table) => write!(f, "external({}x{})", table.len(), table.dim()),
        }
    }
}

/// Parses `coordinate:<axis>` (or `coord:<axis>`) and `pca:<k>`. External lenses are
/// built from a table, not a string.
impl<T> FromStr for Lens<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| invalid("lens", format!("expected coordinate:<axis> or pca:<k>, got `{s}`")))?;
        let arg: usize = arg
            .trim()
            .parse()
            .map_err(|_| invalid("lens", format!("`{arg}` is not a nonnegative integer")))?;
        match kind.trim().to_ascii_lowercase().as_str() {
            "coordinate" | "coord" => Ok(Lens::Coordinate(arg)),
            "pca" => Ok(Lens::Pca(arg)),
            other => Err(invalid("lens", format!("unknown lens kind `{other}`"))),
        }
    }
}

/// Lens values as an `n x output_dim` table.
pub fn evaluate_lens<T: Scalar>(cloud: &PointCloud<T>, lens: &Lens<T>) -> Result<PointCloud<T>> {
    let out_dim = lens.output_dim();
    if !(1..=2).contains(&out_dim) {
        return Err(invalid(
            "lens",
            format!("output dimension must be 1 or 2, got {out_dim}"),
        ));
    }
    let values = match lens {
        Lens::Coordinate(axis) => {
            if *axis >= cloud.dim() {
                return Err(Error::AxisOutOfRange {
                    axis: *axis,
                    dim: cloud.dim(),
                });
            }
            let col = cloud.column(*axis);
            if col.is_empty() {
                PointCloud::empty(1)
            } else {
                PointCloud::from_flat(col, 1)?
            }
        }
        Lens::Pca(k) => {
            if *k > cloud.dim() {
                return Err(Error::AxisOutOfRange {
                    axis: *k - 1,
                    dim: cloud.dim(),
                });
            }
            pca_project(cloud, *k)?.without_labels()
        }
        Lens::External(table) => {
            if table.len() != cloud.len() {
                return Err(Error::RowCountMismatch {
                    expected: cloud.len(),
                    got: table.len(),
                });
            }
            table.clone().without_labels()
        }
    };
    Ok(values)
}
