//! Vietoris-Rips filtrations: every vertex subset of diameter at most a threshold, up to
//! a dimension cap, ordered for boundary-matrix reduction.

use std::cmp::Ordering;
use std::io::Write;

use crate::dataset::DistanceMatrix;
use crate::error::{invalid, Error, Result};
use crate::scalar::{cmp, Scalar};

/// Default cap on the number of simplices a filtration may hold.
pub const DEFAULT_SIMPLEX_BUDGET: usize = 50_000_000;

/// Point count above which an explicit threshold is required.
pub const MAX_POINTS_WITHOUT_THRESHOLD: usize = 64;

/// A simplex of a [`Filtration`], borrowed from its storage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Simplex<'a, T> {
    /// Strictly increasing point indices.
    pub vertices: &'a [u32],
    /// Smallest threshold at which the simplex is present: its diameter, 0 for vertices.
    pub birth: T,
}

impl<T: Scalar> Simplex<'_, T> {
    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Filtration order: birth, then dimension, then vertices lexicographically.
    pub fn filtration_cmp(&self, other: &Self) -> Ordering {
        cmp(&self.birth, &other.birth)
            .then(self.vertices.len().cmp(&other.vertices.len()))
            .then_with(|| self.vertices.cmp(other.vertices))
    }
}

/// Simplices in filtration order, stored column-wise: births, dimensions, and vertex
/// lists padded to a fixed stride.
#[derive(Debug, Clone, PartialEq)]
pub struct Filtration<T> {
    births: Vec<T>,
    dims: Vec<u8>,
    vertices: Vec<u32>,
    stride: usize,
    pub max_dim: usize,
    pub max_eps: T,
    pub n_points: usize,
}

impl<T: Scalar> Filtration<T> {
    /// Builds a filtration from arbitrary `(vertices, birth)` pairs, sorting them into
    /// filtration order. Vertex lists must be strictly increasing, nonempty, of at most
    /// `max_dim + 1` entries, and below `n_points`. Face closure is not checked here.
    pub fn from_simplices<V: AsRef<[usize]>>(
        simplices: impl IntoIterator<Item = (V, T)>,
        max_dim: usize,
        max_eps: T,
        n_points: usize,
    ) -> Result<Self> {
        let mut f = Self::with_stride(max_dim, max_eps, n_points);
        let mut buf = Vec::new();
        for (vertices, birth) in simplices {
            let v = vertices.as_ref();
            if v.is_empty() || v.len() > f.stride || !v.windows(2).all(|w| w[0] < w[1]) {
                return Err(invalid("simplices", format!("bad vertex list {v:?}")));
            }
            if v.iter().any(|&x| x >= n_points) {
                return Err(invalid("simplices", format!("vertex out of range in {v:?}")));
            }
            if !birth.is_finite() {
                return Err(invalid("simplices", "births must be finite"));
            }
            buf.clear();
            buf.extend(v.iter().map(|&x| x as u32));
            f.push(&buf, birth);
        }
        f.sort();
        Ok(f)
    }

    fn with_stride(max_dim: usize, max_eps: T, n_points: usize) -> Self {
        Self {
            births: Vec::new(),
            dims: Vec::new(),
            vertices: Vec::new(),
            stride: max_dim.min(n_points.saturating_sub(1)) + 1,
            max_dim,
            max_eps,
            n_points,
        }
    }

    fn push(&mut self, vertices: &[u32], birth: T) {
        self.births.push(birth);
        self.dims.push((vertices.len() - 1) as u8);
        self.vertices.extend_from_slice(vertices);
        self.vertices
            .extend(std::iter::repeat_n(u32::MAX, self.stride - vertices.len()));
    }

    /// Reorders the stored simplices into filtration order.
    fn sort(&mut self) {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_unstable_by(|&a, &b| self.get(a).filtration_cmp(&self.get(b)));
        let births = order.iter().map(|&i| self.births[i]).collect();
        let dims = order.iter().map(|&i| self.dims[i]).collect();
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for &i in &order {
            vertices.extend_from_slice(&self.vertices[i * self.stride..(i + 1) * self.stride]);
        }
        self.births = births;
        self.dims = dims;
        self.vertices = vertices;
    }

    pub fn len(&self) -> usize {
        self.births.len()
    }

    pub fn is_empty(&self) -> bool {
        self.births.is_empty()
    }

    pub fn get(&self, i: usize) -> Simplex<'_, T> {
        Simplex {
            vertices: self.vertices(i),
            birth: self.births[i],
        }
    }

    pub fn birth(&self, i: usize) -> T {
        self.births[i]
    }

    pub fn dimension(&self, i: usize) -> usize {
        self.dims[i] as usize
    }

    pub fn vertices(&self, i: usize) -> &[u32] {
        let start = i * self.stride;
        &self.vertices[start..start + self.dims[i] as usize + 1]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = Simplex<'_, T>> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// Simplex counts per dimension `0..=max_dim`.
    pub fn counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.max_dim + 1];
        self.dims.iter().for_each(|&d| c[d as usize] += 1);
        c
    }

    /// Debug dump: one `birth dim v0 v1 ...` line per simplex in filtration order.
    pub fn write_text<W: Write>(&self, mut out: W) -> Result<()> {
        for s in self.iter() {
            write!(out, "{} {}", s.birth, s.dimension())?;
            for v in s.vertices {
                write!(out, " {v}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Threshold to use when the caller gives none: the diameter of the point set, allowed
/// only for small inputs so the full simplex lattice stays tractable.
pub fn default_max_eps<T: Scalar>(dist: &DistanceMatrix<T>) -> Result<T> {
    if dist.len() > MAX_POINTS_WITHOUT_THRESHOLD {
        return Err(invalid(
            "max_eps",
            format!(
                "required for more than {MAX_POINTS_WITHOUT_THRESHOLD} points (got {})",
                dist.len()
            ),
        ));
    }
    let diam = dist.max();
    Ok(if diam > T::zero() { diam } else { T::one() })
}

/// Rips filtration with the default simplex budget.
pub fn build_rips<T: Scalar>(dist: &DistanceMatrix<T>, max_dim: usize, max_eps: T) -> Result<Filtration<T>> {
    build_rips_with_budget(dist, max_dim, max_eps, DEFAULT_SIMPLEX_BUDGET)
}

/// Every simplex of dimension `<= max_dim` whose diameter is `<= max_eps`, born at its
/// diameter. Enumeration extends each simplex by common neighbors of higher index, so
/// each vertex set is produced exactly once and already sorted.
pub fn build_rips_with_budget<T: Scalar>(
    dist: &DistanceMatrix<T>,
    max_dim: usize,
    max_eps: T,
    budget: usize,
) -> Result<Filtration<T>> {
    if !(max_eps > T::zero()) {
        return Err(invalid("max_eps", "must be > 0"));
    }
    let n = dist.len();
    if n > u32::MAX as usize {
        return Err(invalid("points", "at most 2^32 - 1 points are supported"));
    }
    let upper: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            ((i + 1)..n)
                .filter(|&j| dist.get(i, j) <= max_eps)
                .map(|j| j as u32)
                .collect()
        })
        .collect();

    let mut out = Filtration::with_stride(max_dim, max_eps, n);
    let mut expansion = Expansion {
        dist,
        upper: &upper,
        max_dim,
        budget,
        current: Vec::with_capacity(max_dim + 1),
        levels: vec![Vec::new(); max_dim + 1],
    };
    for (v, neighbors) in upper.iter().enumerate() {
        expansion.current.clear();
        expansion.current.push(v as u32);
        expansion.levels[0].clone_from(neighbors);
        expansion.run(0, T::zero(), &mut out)?;
    }
    out.sort();
    Ok(out)
}

struct Expansion<'a, T> {
    dist: &'a DistanceMatrix<T>,
    upper: &'a [Vec<u32>],
    max_dim: usize,
    budget: usize,
    current: Vec<u32>,
    /// `levels[d]` holds the extension candidates of the simplex with `d + 1` vertices.
    levels: Vec<Vec<u32>>,
}

impl<T: Scalar> Expansion<'_, T> {
    fn run(&mut self, depth: usize, birth: T, out: &mut Filtration<T>) -> Result<()> {
        if out.len() >= self.budget {
            return Err(Error::BudgetExceeded {
                count: out.len() + 1,
                cap: self.budget,
            });
        }
        out.push(&self.current, birth);
        if depth == self.max_dim {
            return Ok(());
        }
        let candidates = std::mem::take(&mut self.levels[depth]);
        for (idx, &u) in candidates.iter().enumerate() {
            let reach = self
                .current
                .iter()
                .map(|&w| self.dist.get(w as usize, u as usize))
                .fold(birth, T::max);
            // common higher neighbors of the extended simplex: both lists are sorted
            let mut next = std::mem::take(&mut self.levels[depth + 1]);
            intersect_sorted(&candidates[idx + 1..], &self.upper[u as usize], &mut next);
            self.levels[depth + 1] = next;
            self.current.push(u);
            self.run(depth + 1, reach, out)?;
            self.current.pop();
        }
        self.levels[depth] = candidates;
        Ok(())
    }
}

fn intersect_sorted(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{distance_matrix, Metric, PointCloud};
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn square() -> DistanceMatrix<f64> {
        let c = PointCloud::from_rows(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        distance_matrix(&c, Metric::Euclidean)
    }

    /// Every vertex subset of size <= max_dim + 1 with diameter <= eps, with its birth.
    fn powerset_filter(d: &DistanceMatrix<f64>, max_dim: usize, eps: f64) -> HashMap<Vec<usize>, f64> {
        let n = d.len();
        let mut out = HashMap::new();
        for mask in 1u32..(1 << n) {
            let vs: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if vs.len() > max_dim + 1 {
                continue;
            }
            let mut diam = 0.0f64;
            for a in 0..vs.len() {
                for b in (a + 1)..vs.len() {
                    diam = diam.max(d.get(vs[a], vs[b]));
                }
            }
            if diam <= eps {
                out.insert(vs, diam);
            }
        }
        out
    }

    #[test]
    fn unit_square_counts() {
        let f = build_rips(&square(), 2, 2.0).unwrap();
        assert_eq!(f.len(), 14);
        assert_eq!(f.counts(), vec![4, 6, 4]);
        let births: Vec<(usize, f64)> = f.iter().map(|s| (s.dimension(), s.birth)).collect();
        let r2 = 2f64.sqrt();
        let expected: Vec<(usize, f64)> = [(0, 0.0); 4]
            .into_iter()
            .chain([(1, 1.0); 4])
            .chain([(1, r2); 2])
            .chain([(2, r2); 4])
            .collect();
        assert_eq!(births, expected);

        let f3 = build_rips(&square(), 3, 2.0).unwrap();
        assert_eq!(f3.len(), 15);
        assert_eq!(powerset_filter(&square(), 3, 2.0).len(), 15);
        let top = f3.get(f3.len() - 1);
        assert_eq!(top.vertices, &[0, 1, 2, 3]);
        assert_eq!(top.birth, r2);
    }

    #[test]
    fn from_simplices_sorts_and_validates() {
        let f = Filtration::from_simplices([(vec![0, 1], 1.0), (vec![1], 0.0), (vec![0], 0.0)], 1, 1.0, 2).unwrap();
        let order: Vec<&[u32]> = f.iter().map(|s| s.vertices).collect();
        assert_eq!(order, vec![&[0][..], &[1], &[0, 1]]);
        assert!(Filtration::from_simplices([(vec![1, 0], 1.0)], 1, 1.0, 2).is_err());
        assert!(Filtration::from_simplices([(vec![0, 1, 2], 1.0)], 1, 1.0, 3).is_err());
        assert!(Filtration::from_simplices([(vec![4], 0.0)], 1, 1.0, 3).is_err());
    }

    #[test]
    fn small_threshold_gives_vertices_only() {
        let f = build_rips(&square(), 2, 0.5).unwrap();
        assert_eq!(f.counts(), vec![4, 0, 0]);
    }

    #[test]
    fn budget_and_threshold_errors() {
        let err = build_rips_with_budget(&square(), 2, 2.0, 10).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { count: 11, cap: 10 }), "{err}");
        assert!(build_rips(&square(), 2, 0.0).is_err());
    }

    #[test]
    fn default_threshold() {
        assert_eq!(default_max_eps(&square()).unwrap(), 2f64.sqrt());
        let big = PointCloud::from_rows(&vec![[0.0f64]; 65]).unwrap();
        assert!(default_max_eps(&distance_matrix(&big, Metric::Euclidean)).is_err());
    }

    #[test]
    fn text_export() {
        let c = PointCloud::from_rows(&[[0.0f64], [2.0]]).unwrap();
        let f = build_rips(&distance_matrix(&c, Metric::Euclidean), 1, 3.0).unwrap();
        let mut buf = Vec::new();
        f.write_text(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0 0 0\n0 0 1\n2 1 0 1\n");
    }

    proptest! {
        #[test]
        fn matches_powerset_and_is_face_closed(
            rows in prop::collection::vec(prop::collection::vec(0.0f64..4.0, 2), 1..=12),
            max_dim in 0usize..4,
            eps in 0.1f64..4.0,
        ) {
            let d = distance_matrix(&PointCloud::from_rows(&rows).unwrap(), Metric::Euclidean);
            let f = build_rips(&d, max_dim, eps).unwrap();
            let expected = powerset_filter(&d, max_dim, eps);
            prop_assert_eq!(f.len(), expected.len());
            let mut position = HashMap::new();
            for (i, s) in f.iter().enumerate() {
                let vs: Vec<usize> = s.vertices.iter().map(|&v| v as usize).collect();
                prop_assert!(vs.windows(2).all(|w| w[0] < w[1]));
                prop_assert_eq!(expected.get(&vs).copied(), Some(s.birth));
                prop_assert!(s.birth <= eps);
                position.insert(vs, i);
            }
            for (i, s) in f.iter().enumerate() {
                if s.vertices.len() < 2 {
                    continue;
                }
                for skip in 0..s.vertices.len() {
                    let mut facet: Vec<usize> = s.vertices.iter().map(|&v| v as usize).collect();
                    facet.remove(skip);
                    let j = position[&facet];
                    prop_assert!(j < i);
                    prop_assert!(f.birth(j) <= s.birth);
                }
            }
        }

        #[test]
        fn thresholds_nest(
            rows in prop::collection::vec(prop::collection::vec(0.0f64..4.0, 2), 2..10),
            a in 0.1f64..4.0,
            b in 0.1f64..4.0,
        ) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let d = distance_matrix(&PointCloud::from_rows(&rows).unwrap(), Metric::Euclidean);
            let small = build_rips(&d, 2, lo).unwrap();
            let large = build_rips(&d, 2, hi).unwrap();
            let large_set: std::collections::HashSet<&[u32]> = large.iter().map(|s| s.vertices).collect();
            prop_assert!(small.iter().all(|s| large_set.contains(s.vertices)));
        }
    }
}
