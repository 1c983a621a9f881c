use crate::error::{Error, Result};
use crate::rips::Filtration;
use crate::scalar::Scalar;

/// Sparse boundary matrix with implicit unit coefficients, stored in compressed columns:
/// column `j` lists, ascending, the filtration positions of the facets of simplex `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    offsets: Vec<usize>,
    rows: Vec<u32>,
    dims: Vec<u8>,
}

impl BoundaryMatrix {
    /// Builds a matrix from explicit columns. Rows must be ascending and below the
    /// column index.
    pub fn from_columns(columns: Vec<Vec<usize>>, dims: Vec<usize>) -> Result<Self> {
        if columns.len() != dims.len() {
            return Err(crate::error::invalid("dims", "one dimension per column is required"));
        }
        let mut m = Self {
            offsets: vec![0],
            rows: Vec::new(),
            dims: Vec::with_capacity(dims.len()),
        };
        for (j, (col, d)) in columns.into_iter().zip(dims).enumerate() {
            if !col.windows(2).all(|w| w[0] < w[1]) || col.last().is_some_and(|&r| r >= j) {
                return Err(Error::MissingFace(j));
            }
            m.rows.extend(col.iter().map(|&r| r as u32));
            m.offsets.push(m.rows.len());
            m.dims.push(d as u8);
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn column(&self, j: usize) -> &[u32] {
        &self.rows[self.offsets[j]..self.offsets[j + 1]]
    }

    pub fn dimension(&self, j: usize) -> usize {
        self.dims[j] as usize
    }

    pub fn columns(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.len()).map(move |j| self.column(j))
    }
}

/// Builds the boundary matrix of `filtration`. Fails when a facet is absent or placed
/// after its coface.
pub fn boundary_matrix<T: Scalar>(filtration: &Filtration<T>) -> Result<BoundaryMatrix> {
    let n = filtration.len();
    let top = (0..n).map(|i| filtration.dimension(i)).max().unwrap_or(0);
    // positions of each dimension, sorted by vertex list, for binary-search lookup
    let mut by_dim: Vec<Vec<u32>> = vec![Vec::new(); top + 1];
    for i in 0..n {
        by_dim[filtration.dimension(i)].push(i as u32);
    }
    for list in by_dim.iter_mut().take(top).skip(1) {
        list.sort_unstable_by(|&a, &b| filtration.vertices(a as usize).cmp(filtration.vertices(b as usize)));
    }
    let mut vertex_position = vec![u32::MAX; filtration.n_points];
    for &i in &by_dim[0] {
        vertex_position[filtration.vertices(i as usize)[0] as usize] = i;
    }

    let total: usize = (0..n)
        .map(|i| filtration.dimension(i))
        .filter(|&d| d > 0)
        .map(|d| d + 1)
        .sum();
    let mut m = BoundaryMatrix {
        offsets: Vec::with_capacity(n + 1),
        rows: Vec::with_capacity(total),
        dims: Vec::with_capacity(n),
    };
    m.offsets.push(0);
    let mut facet = Vec::new();
    for j in 0..n {
        let vs = filtration.vertices(j);
        let dim = vs.len() - 1;
        m.dims.push(dim as u8);
        if dim > 0 {
            let start = m.rows.len();
            for skip in 0..vs.len() {
                facet.clear();
                facet.extend(vs.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                let row = if dim == 1 {
                    Some(vertex_position[facet[0] as usize]).filter(|&p| p != u32::MAX)
                } else {
                    by_dim[dim - 1]
                        .binary_search_by(|&p| filtration.vertices(p as usize).cmp(&facet[..]))
                        .ok()
                        .map(|k| by_dim[dim - 1][k])
                };
                match row {
                    Some(r) if (r as usize) < j => m.rows.push(r),
                    _ => return Err(Error::MissingFace(j)),
                }
            }
            m.rows[start..].sort_unstable();
        }
        m.offsets.push(m.rows.len());
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{distance_matrix, Metric, PointCloud};
    use crate::rips::build_rips;

    fn square_filtration() -> Filtration<f64> {
        let c = PointCloud::from_rows(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        build_rips(&distance_matrix(&c, Metric::Euclidean), 2, 2.0).unwrap()
    }

    /// Dense product of two boundary blocks over Z/2.
    fn compose(m: &BoundaryMatrix, outer: usize, inner: usize) -> Vec<Vec<u8>> {
        let n = m.len();
        let dense = |j: usize| {
            let mut v = vec![0u8; n];
            m.column(j).iter().for_each(|&r| v[r as usize] = 1);
            v
        };
        (0..n)
            .filter(|&j| m.dimension(j) == inner)
            .map(|j| {
                let col = dense(j);
                let mut out = vec![0u8; n];
                for (k, &bit) in col.iter().enumerate() {
                    if bit == 1 && m.dimension(k) == outer {
                        for (o, &b) in out.iter_mut().zip(&dense(k)) {
                            *o ^= b;
                        }
                    }
                }
                out
            })
            .collect()
    }

    #[test]
    fn edge_column() {
        let c = PointCloud::from_rows(&[[0.0f64], [1.0]]).unwrap();
        let f = build_rips(&distance_matrix(&c, Metric::Euclidean), 1, 2.0).unwrap();
        let m = boundary_matrix(&f).unwrap();
        let cols: Vec<&[u32]> = m.columns().collect();
        assert_eq!(cols, vec![&[][..], &[], &[0, 1]]);
    }

    #[test]
    fn square_boundary_squares_to_zero() {
        let m = boundary_matrix(&square_filtration()).unwrap();
        for (j, col) in m.columns().enumerate() {
            let d = m.dimension(j);
            assert_eq!(col.len(), if d == 0 { 0 } else { d + 1 });
            assert!(col.iter().all(|&r| (r as usize) < j));
        }
        for col in compose(&m, 1, 2) {
            assert!(col.iter().all(|&b| b == 0));
        }
    }

    #[test]
    fn vertices_only_and_missing_face() {
        let c = PointCloud::from_rows(&[[0.0f64], [5.0]]).unwrap();
        let f = build_rips(&distance_matrix(&c, Metric::Euclidean), 1, 1.0).unwrap();
        assert!(boundary_matrix(&f).unwrap().columns().all(|c| c.is_empty()));

        // vertex 1 is born after the edge that needs it
        let broken =
            Filtration::from_simplices([(vec![0], 0.0), (vec![0, 1], 1.0), (vec![1], 2.0)], 1, 2.0, 2).unwrap();
        assert!(matches!(boundary_matrix(&broken), Err(Error::MissingFace(1))));
        let absent = Filtration::from_simplices([(vec![0], 0.0), (vec![0, 1], 1.0)], 1, 2.0, 2).unwrap();
        assert!(matches!(boundary_matrix(&absent), Err(Error::MissingFace(1))));
    }
}
