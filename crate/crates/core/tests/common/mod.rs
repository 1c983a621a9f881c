//! Independent reference implementations shared by the integration tests. None of them
//! call into the library beyond reading distances.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ripsmap::{DistanceMatrix, PointCloud};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` points uniform in the unit cube of dimension `dim`.
pub fn random_cloud(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> PointCloud<f64> {
    let coords: Vec<f64> = (0..n * dim).map(|_| rng.gen::<f64>()).collect();
    if n == 0 {
        PointCloud::empty(dim)
    } else {
        PointCloud::from_flat(coords, dim).unwrap()
    }
}

/// Largest pairwise distance among `vertices` (0 for a vertex).
pub fn diameter(dist: &DistanceMatrix<f64>, vertices: &[usize]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            d = d.max(dist.get(a, b));
        }
    }
    d
}

/// Every vertex subset of size 1..=max_dim+1 with diameter <= eps, by exhaustive
/// enumeration, paired with its diameter.
pub fn brute_rips(dist: &DistanceMatrix<f64>, max_dim: usize, eps: f64) -> BTreeSet<(Vec<usize>, u64)> {
    let n = dist.len();
    let mut out = BTreeSet::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((cur, next)) = stack.pop() {
        if !cur.is_empty() {
            let d = diameter(dist, &cur);
            if d > eps {
                continue;
            }
            out.insert((cur.clone(), d.to_bits()));
        }
        if cur.len() == max_dim + 1 {
            continue;
        }
        for v in next..n {
            let mut c = cur.clone();
            c.push(v);
            stack.push((c, v + 1));
        }
    }
    out
}

/// Rank of a 0/1 matrix over the two-element field by Gaussian elimination on bit rows.
pub fn rank_gf2(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, |r| r.len() * 64);
    for col in 0..width {
        let (word, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][word] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[word] & bit != 0 {
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers 0..=max_dim of the Rips complex at `eps` (simplices up to dimension
/// max_dim) by rank-nullity: beta_k = |C_k| - rank d_k - rank d_{k+1}.
pub fn brute_betti(dist: &DistanceMatrix<f64>, max_dim: usize, eps: f64) -> Vec<usize> {
    let simplices = brute_rips(dist, max_dim, eps);
    let by_dim: Vec<Vec<Vec<usize>>> = (0..=max_dim)
        .map(|k| {
            simplices
                .iter()
                .filter(|(v, _)| v.len() == k + 1)
                .map(|(v, _)| v.clone())
                .collect()
        })
        .collect();
    // rank of d_k : C_k -> C_{k-1}, one bit row per k-simplex
    let boundary_rank = |k: usize| -> usize {
        if k == 0 || k > max_dim || by_dim[k].is_empty() {
            return 0;
        }
        let faces = &by_dim[k - 1];
        let words = faces.len().div_ceil(64);
        let rows = by_dim[k]
            .iter()
            .map(|s| {
                let mut row = vec![0u64; words];
                for skip in 0..s.len() {
                    let face: Vec<usize> = s
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    let idx = faces.iter().position(|f| *f == face).expect("face present");
                    row[idx / 64] ^= 1 << (idx % 64);
                }
                row
            })
            .collect();
        rank_gf2(rows)
    };
    (0..=max_dim)
        .map(|k| by_dim[k].len() - boundary_rank(k) - boundary_rank(k + 1))
        .collect()
}

/// Minimum spanning tree edge weights by Kruskal over all pairs, ascending.
pub fn kruskal_heights(dist: &DistanceMatrix<f64>) -> Vec<f64> {
    let n = dist.len();
    let mut edges: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((dist.get(i, j), i, j));
        }
    }
    edges.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    let mut out = Vec::new();
    for (w, a, b) in edges {
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            out.push(w);
        }
    }
    out
}

/// Smallest k-means objective over every labeling of the points into `k` nonempty
/// groups (exhaustive, only for tiny inputs).
pub fn brute_kmeans_minimum(cloud: &PointCloud<f64>, k: usize) -> f64 {
    let n = cloud.len();
    let mut best = f64::INFINITY;
    let mut labels = vec![0usize; n];
    loop {
        let mut used = vec![false; k];
        labels.iter().for_each(|&l| used[l] = true);
        if used.iter().all(|&u| u) {
            let mut total = 0.0;
            for c in 0..k {
                let members: Vec<&[f64]> = (0..n).filter(|&i| labels[i] == c).map(|i| cloud.point(i)).collect();
                let dim = cloud.dim();
                let centroid: Vec<f64> = (0..dim)
                    .map(|j| members.iter().map(|p| p[j]).sum::<f64>() / members.len() as f64)
                    .collect();
                total += members
                    .iter()
                    .map(|p| p.iter().zip(&centroid).map(|(a, b)| (a - b).powi(2)).sum::<f64>())
                    .sum::<f64>();
            }
            best = best.min(total);
        }
        let mut i = 0;
        while i < n && labels[i] == k - 1 {
            labels[i] = 0;
            i += 1;
        }
        if i == n {
            return best;
        }
        labels[i] += 1;
    }
}

/// Connected components of a graph on `n` vertices, as sorted vertex lists.
pub fn graph_components(n: usize, edges: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut comp: Vec<Option<usize>> = vec![None; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s].is_some() {
            continue;
        }
        let c = out.len();
        let mut members = vec![];
        let mut stack = vec![s];
        comp[s] = Some(c);
        while let Some(v) = stack.pop() {
            members.push(v);
            for e in edges.iter().filter(|e| e.contains(&v)) {
                for &w in e {
                    if comp[w].is_none() {
                        comp[w] = Some(c);
                        stack.push(w);
                    }
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}
