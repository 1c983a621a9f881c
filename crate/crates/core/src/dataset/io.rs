//! Plain CSV import/export of point clouds and labels.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::PointCloud;

/// Writes one headerless row per point. Coordinates use the shortest decimal that
/// parses back to the identical value.
pub fn write_points_csv<T: Scalar, W: Write>(cloud: &PointCloud<T>, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    for p in cloud.points() {
        w.write_record(p.iter().map(|x| x.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a numeric CSV. A first row that does not parse as numbers is taken as a header.
/// When `label_column` is given the file must have a header and that column becomes
/// the labels; every other column must be numeric.
pub fn read_points_csv<T: Scalar, R: Read>(
    input: R,
    delimiter: u8,
    label_column: Option<&str>,
) -> Result<PointCloud<T>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .delimiter(delimiter)
        .trim(csv::Trim::All)
        .from_reader(input);
    let mut records = rdr.records();
    let first = match records.next() {
        None => return Ok(PointCloud::empty(0)),
        Some(r) => r?,
    };
    let is_numeric = |rec: &csv::StringRecord| rec.iter().all(|f| f.parse::<T>().is_ok());
    let (header, mut pending) = if is_numeric(&first) && label_column.is_none() {
        (None, Some(first))
    } else {
        (Some(first), None)
    };
    let label_idx = match label_column {
        None => None,
        Some(name) => {
            let h = header.as_ref().expect("label column implies header");
            Some(
                h.iter()
                    .position(|c| c == name)
                    .ok_or_else(|| Error::MissingColumn(name.to_string()))?,
            )
        }
    };

    let mut coords = Vec::new();
    let mut labels = Vec::new();
    let mut dim = None;
    let mut row = usize::from(header.is_some());
    loop {
        let rec = match pending.take() {
            Some(r) => r,
            None => match records.next() {
                None => break,
                Some(r) => r?,
            },
        };
        row += 1;
        let mut count = 0;
        for (j, field) in rec.iter().enumerate() {
            if Some(j) == label_idx {
                labels.push(field.to_string());
                continue;
            }
            let v: T = field.parse().map_err(|_| Error::Parse {
                row,
                message: format!("column {}: `{field}` is not a number", j + 1),
            })?;
            coords.push(v);
            count += 1;
        }
        match dim {
            None => dim = Some(count),
            Some(d) if d != count => {
                return Err(Error::Parse {
                    row,
                    message: format!("expected {d} numeric fields, found {count}"),
                })
            }
            _ => {}
        }
    }
    let cloud = PointCloud::from_flat(coords, dim.unwrap_or(0))?;
    if label_idx.is_some() {
        cloud.with_labels(labels)
    } else {
        Ok(cloud)
    }
}

/// Writes `point_index,label` rows with a header.
pub fn write_labels_csv<W: Write>(labels: &[String], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["point_index", "label"])?;
    for (i, l) in labels.iter().enumerate() {
        w.write_record([i.to_string(), l.clone()])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads labels written by [`write_labels_csv`]; rows must be in point order.
pub fn read_labels_csv<R: Read>(input: R) -> Result<Vec<String>> {
    let mut rdr = csv::Reader::from_reader(input);
    let mut labels = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let idx: usize = rec
            .get(0)
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Parse {
                row: i + 2,
                message: "bad point_index".into(),
            })?;
        if idx != i {
            return Err(Error::Parse {
                row: i + 2,
                message: format!("expected point_index {i}, found {idx}"),
            });
        }
        labels.push(rec.get(1).unwrap_or_default().to_string());
    }
    Ok(labels)
}
