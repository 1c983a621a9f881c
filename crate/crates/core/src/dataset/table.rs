//! Header-keyed delimited tables turned into point clouds through a declarative
//! per-column encoding.
//!
//! The encoding is a TOML document:
//!
//! ```toml
//! delimiter = ";"                      # optional, default ","
//! null_tokens = ["", "NA", "unknown"]  # optional, default ["", "NA", "NaN", "null"]
//! label_column = "y"                   # optional, carried as labels
//!
//! [[columns]]
//! name = "age"
//! kind = "numeric"
//!
//! [[columns]]
//! name = "education"
//! kind = "ordinal"
//! levels = ["primary", "secondary", "tertiary"]
//!
//! [[columns]]
//! name = "marital"
//! kind = "one-hot"
//! levels = ["married", "single", "divorced"]
//!
//! [[columns]]
//! name = "housing"
//! kind = "binary"
//! positive = "yes"
//! ```
//!
//! Output coordinates follow the order of `columns`; a one-hot column expands to one
//! coordinate per level. Rows holding a null token in any encoded column (or the label
//! column) are dropped; surviving rows keep their relative order.

use std::collections::HashSet;
use std::fs::File;
use std::io::Read;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::PointCloud;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ColumnEncoding {
    Numeric,
    /// Index of the value in `levels`.
    Ordinal {
        levels: Vec<String>,
    },
    /// One 0/1 coordinate per level.
    OneHot {
        levels: Vec<String>,
    },
    /// 1 for `positive`, 0 for anything else.
    Binary {
        positive: String,
    },
}

impl ColumnEncoding {
    fn width(&self) -> usize {
        match self {
            ColumnEncoding::OneHot { levels } => levels.len(),
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ColumnSpec {
    pub name: String,
    #[serde(flatten)]
    pub encoding: ColumnEncoding,
}

fn default_nulls() -> Vec<String> {
    ["", "NA", "NaN", "null"].map(String::from).to_vec()
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EncodingSpec {
    #[serde(default)]
    pub delimiter: Option<char>,
    #[serde(default = "default_nulls")]
    pub null_tokens: Vec<String>,
    #[serde(default)]
    pub label_column: Option<String>,
    pub columns: Vec<ColumnSpec>,
}

impl EncodingSpec {
    /// Every column passed through as a number.
    pub fn numeric<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Self {
            delimiter: None,
            null_tokens: default_nulls(),
            label_column: None,
            columns: names
                .into_iter()
                .map(|n| ColumnSpec {
                    name: n.into(),
                    encoding: ColumnEncoding::Numeric,
                })
                .collect(),
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let spec: Self = toml::from_str(text).map_err(|e| Error::EncodingSpec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.columns.is_empty() {
            return Err(Error::EncodingSpec("no columns declared".into()));
        }
        if let Some(d) = self.delimiter {
            if !d.is_ascii() {
                return Err(Error::EncodingSpec(format!("delimiter `{d}` is not ASCII")));
            }
        }
        for col in &self.columns {
            if let ColumnEncoding::Ordinal { levels } | ColumnEncoding::OneHot { levels } = &col.encoding {
                if levels.is_empty() {
                    return Err(Error::EncodingSpec(format!("column `{}` has no levels", col.name)));
                }
                let mut seen = HashSet::new();
                if let Some(dup) = levels.iter().find(|l| !seen.insert(*l)) {
                    return Err(Error::EncodingSpec(format!(
                        "column `{}` repeats level `{dup}`",
                        col.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Number of output coordinates per row.
    pub fn output_dim(&self) -> usize {
        self.columns.iter().map(|c| c.encoding.width()).sum()
    }
}

/// Loads and encodes the table at `path`.
pub fn load_table<T: Scalar>(path: impl AsRef<Path>, spec: &EncodingSpec) -> Result<PointCloud<T>> {
    load_table_from_reader(File::open(path)?, spec)
}

/// [`load_table`] over any reader. Row numbers in errors are 1-based file lines,
/// the header being line 1.
pub fn load_table_from_reader<T: Scalar, R: Read>(input: R, spec: &EncodingSpec) -> Result<PointCloud<T>> {
    spec.validate()?;
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .delimiter(spec.delimiter.map_or(b',', |c| c as u8))
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = rdr.headers()?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };
    let positions = spec.columns.iter().map(|c| find(&c.name)).collect::<Result<Vec<_>>>()?;
    let label_pos = spec.label_column.as_deref().map(find).transpose()?;
    let is_null = |v: &str| spec.null_tokens.iter().any(|t| t == v);

    let dim = spec.output_dim();
    let mut coords = Vec::new();
    let mut labels = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec?;
        let field = |pos: usize| rec.get(pos).unwrap_or("");
        if positions.iter().chain(&label_pos).any(|&p| is_null(field(p))) {
            continue;
        }
        for (col, &pos) in spec.columns.iter().zip(&positions) {
            let value = field(pos);
            let unknown = || Error::UnknownLevel {
                row: line,
                column: col.name.clone(),
                value: value.to_string(),
            };
            match &col.encoding {
                ColumnEncoding::Numeric => {
                    let v: T = value.parse().map_err(|_| Error::Parse {
                        row: line,
                        message: format!("column `{}`: `{value}` is not a number", col.name),
                    })?;
                    if !v.is_finite() {
                        return Err(Error::Parse {
                            row: line,
                            message: format!("column `{}`: non-finite value", col.name),
                        });
                    }
                    coords.push(v);
                }
                ColumnEncoding::Ordinal { levels } => {
                    let idx = levels.iter().position(|l| l == value).ok_or_else(unknown)?;
                    coords.push(T::from_count(idx));
                }
                ColumnEncoding::OneHot { levels } => {
                    let idx = levels.iter().position(|l| l == value).ok_or_else(unknown)?;
                    coords.extend((0..levels.len()).map(|j| if j == idx { T::one() } else { T::zero() }));
                }
                ColumnEncoding::Binary { positive } => {
                    coords.push(if value == positive { T::one() } else { T::zero() });
                }
            }
        }
        if let Some(p) = label_pos {
            labels.push(field(p).to_string());
        }
    }
    let cloud = if coords.is_empty() {
        PointCloud::empty(dim)
    } else {
        PointCloud::from_flat(coords, dim)?
    };
    if label_pos.is_some() {
        cloud.with_labels(labels)
    } else {
        Ok(cloud)
    }
}
