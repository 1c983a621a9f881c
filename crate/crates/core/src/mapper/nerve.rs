use std::collections::{BTreeMap, BTreeSet};

use crate::cluster::{cut_dendrogram, dbscan, kmeans, single_linkage, ClusterAssignment, CutStrategy, KMeansParams};
use crate::dataset::{distance_matrix, split_seed, Metric, PointCloud};
use crate::error::{invalid, Error, Result};
use crate::scalar::Scalar;
use crate::union_find::UnionFind;

use super::cover::{build_cover, Cover};
use super::lens::{evaluate_lens, Lens};

/// Clusterer applied to each preimage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Clusterer<T> {
    /// Single linkage cut by the histogram-gap rule over the preimage's diameter.
    SingleLinkage { bins: usize },
    /// DBSCAN; noise points join no node.
    Dbscan { eps: T, min_pts: usize },
    /// k-means with `k` clamped to the preimage size. Each cover element gets its own
    /// stream derived from `seed`.
    KMeans { k: usize, seed: u64 },
}

impl<T> Default for Clusterer<T> {
    fn default() -> Self {
        Clusterer::SingleLinkage { bins: 10 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapperParams<T> {
    pub lens: Lens<T>,
    pub n_intervals: usize,
    pub overlap_frac: T,
    pub clusterer: Clusterer<T>,
    /// Highest nerve dimension built; 1 gives the graph.
    pub nerve_dim: usize,
    /// Metric of the original space, used for clustering.
    pub metric: Metric,
}

impl<T: Scalar> MapperParams<T> {
    pub fn new(lens: Lens<T>) -> Self {
        Self {
            lens,
            n_intervals: 10,
            overlap_frac: T::lit(0.3),
            clusterer: Clusterer::default(),
            nerve_dim: 1,
            metric: Metric::Euclidean,
        }
    }

    pub fn intervals(mut self, n: usize) -> Self {
        self.n_intervals = n;
        self
    }

    pub fn overlap(mut self, frac: T) -> Self {
        self.overlap_frac = frac;
        self
    }

    pub fn clusterer(mut self, clusterer: Clusterer<T>) -> Self {
        self.clusterer = clusterer;
        self
    }

    pub fn nerve_dim(mut self, dim: usize) -> Self {
        self.nerve_dim = dim;
        self
    }

    pub fn metric(mut self, metric: Metric) -> Self {
        self.metric = metric;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeStats<T> {
    pub size: usize,
    /// Per-feature mean of the members.
    pub mean: Vec<T>,
    /// Member count per label, present when the cloud is labeled.
    pub label_counts: Option<BTreeMap<String, usize>>,
}

impl<T> NodeStats<T> {
    /// Fraction of members carrying `label`; `None` for unlabeled clouds.
    pub fn ratio(&self, label: &str) -> Option<f64> {
        let counts = self.label_counts.as_ref()?;
        Some(counts.get(label).copied().unwrap_or(0) as f64 / self.size as f64)
    }

    /// Most frequent label and its ratio, ties to the lexicographically smallest.
    pub fn majority(&self) -> Option<(&str, f64)> {
        let counts = self.label_counts.as_ref()?;
        let (label, &count) = counts
            .iter()
            .fold(None, |best: Option<(&String, &usize)>, (l, c)| match best {
                Some((_, bc)) if bc >= c => best,
                _ => Some((l, c)),
            })?;
        Some((label.as_str(), count as f64 / self.size as f64))
    }
}

/// A partial cluster: cluster `cluster_index` of the preimage of cover element `cover_index`.
#[derive(Debug, Clone, PartialEq)]
pub struct MapperNode<T> {
    pub id: usize,
    pub cover_index: usize,
    pub cluster_index: usize,
    /// Point indices, ascending.
    pub members: Vec<usize>,
    pub stats: NodeStats<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapperNerve<T> {
    pub nodes: Vec<MapperNode<T>>,
    /// `simplices[d]` holds the `d`-simplices as sorted node-id lists, lexicographically
    /// ordered; `simplices[0]` are the nodes and `simplices[1]` the graph edges.
    pub simplices: Vec<Vec<Vec<usize>>>,
    pub cover: Cover<T>,
}

impl<T: Scalar> MapperNerve<T> {
    pub fn nerve_dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        self.simplices.get(1).map_or(&[], Vec::as_slice)
    }

    /// Connected components of the graph, each a sorted node-id list, ordered by smallest id.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.nodes.len());
        for e in self.edges() {
            uf.union(e[0], e[1]);
        }
        let (labels, count) = uf.labels();
        let mut comps = vec![Vec::new(); count];
        for (node, &c) in labels.iter().enumerate() {
            comps[c].push(node);
        }
        comps
    }

    /// Distinct points covered by the given nodes, ascending.
    pub fn points_of(&self, nodes: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> = nodes
            .iter()
            .flat_map(|&n| self.nodes[n].members.iter().copied())
            .collect();
        set.into_iter().collect()
    }
}

/// Runs the full pipeline: lens, cover, per-preimage clustering, nerve.
pub fn run_mapper<T: Scalar>(cloud: &PointCloud<T>, params: &MapperParams<T>) -> Result<MapperNerve<T>> {
    if params.nerve_dim == 0 {
        return Err(invalid("nerve_dim", "must be >= 1"));
    }
    validate_clusterer(&params.clusterer)?;
    let values = evaluate_lens(cloud, &params.lens)?;
    let cover = build_cover(&values, params.n_intervals, params.overlap_frac)?;

    let mut nodes = Vec::new();
    for (alpha, preimage) in cover.preimages(&values).into_iter().enumerate() {
        if preimage.is_empty() {
            continue;
        }
        let assignment = cluster_preimage(cloud, &preimage, params, alpha).map_err(|e| Error::CoverElement {
            index: alpha,
            source: Box::new(e),
        })?;
        for (j, local) in assignment.clusters().into_iter().enumerate() {
            let members: Vec<usize> = local.into_iter().map(|i| preimage[i]).collect();
            nodes.push(MapperNode {
                id: nodes.len(),
                cover_index: alpha,
                cluster_index: j,
                stats: stats_of(cloud, &members),
                members,
            });
        }
    }
    let simplices = nerve_simplices(cloud.len(), &nodes, params.nerve_dim);
    Ok(MapperNerve {
        nodes,
        simplices,
        cover,
    })
}

/// Recomputes per-node statistics of `nerve` against `cloud`.
pub fn node_stats<T: Scalar>(nerve: &MapperNerve<T>, cloud: &PointCloud<T>) -> Vec<NodeStats<T>> {
    nerve.nodes.iter().map(|n| stats_of(cloud, &n.members)).collect()
}

fn validate_clusterer<T: Scalar>(c: &Clusterer<T>) -> Result<()> {
    match *c {
        Clusterer::SingleLinkage { bins: 0 } => Err(invalid("bins", "must be >= 1")),
        Clusterer::Dbscan { eps, .. } if !(eps > T::zero() && eps.is_finite()) => {
            Err(invalid("eps", "must be a positive finite radius"))
        }
        Clusterer::Dbscan { min_pts: 0, .. } => Err(invalid("min_pts", "must be >= 1")),
        Clusterer::KMeans { k: 0, .. } => Err(invalid("k", "must be >= 1")),
        _ => Ok(()),
    }
}

fn cluster_preimage<T: Scalar>(
    cloud: &PointCloud<T>,
    preimage: &[usize],
    params: &MapperParams<T>,
    alpha: usize,
) -> Result<ClusterAssignment> {
    let subset = cloud.select(preimage);
    match params.clusterer {
        Clusterer::SingleLinkage { bins } => {
            let dist = distance_matrix(&subset, params.metric);
            let range = Some(dist.max());
            cut_dendrogram(&single_linkage(&dist), CutStrategy::HistogramGap { bins, range })
        }
        Clusterer::Dbscan { eps, min_pts } => dbscan(&distance_matrix(&subset, params.metric), eps, min_pts),
        Clusterer::KMeans { k, seed } => {
            let k = k.min(subset.len());
            let run = kmeans(&subset, &KMeansParams::new(k).seed(split_seed(seed, alpha as u64)))?;
            Ok(run.assignment)
        }
    }
}

fn stats_of<T: Scalar>(cloud: &PointCloud<T>, members: &[usize]) -> NodeStats<T> {
    let mut mean = vec![T::zero(); cloud.dim()];
    for &m in members {
        for (acc, &x) in mean.iter_mut().zip(cloud.point(m)) {
            *acc = *acc + x;
        }
    }
    let size = T::from_count(members.len().max(1));
    for acc in &mut mean {
        *acc = *acc / size;
    }
    let label_counts = cloud.labels().map(|labels| {
        let mut counts = BTreeMap::new();
        for &m in members {
            *counts.entry(labels[m].clone()).or_insert(0) += 1;
        }
        counts
    });
    NodeStats {
        size: members.len(),
        mean,
        label_counts,
    }
}

/// A node set is a simplex iff some point lies in every member set, so the simplices are
/// exactly the subsets of the per-point node lists.
fn nerve_simplices<T>(n_points: usize, nodes: &[MapperNode<T>], nerve_dim: usize) -> Vec<Vec<Vec<usize>>> {
    let mut per_point: Vec<Vec<usize>> = vec![Vec::new(); n_points];
    for node in nodes {
        for &m in &node.members {
            per_point[m].push(node.id);
        }
    }
    let mut sets: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); nerve_dim + 1];
    sets[0] = nodes.iter().map(|n| vec![n.id]).collect();
    let mut scratch = Vec::new();
    for ids in per_point.iter().filter(|ids| ids.len() >= 2) {
        subsets(ids, 0, nerve_dim + 1, &mut scratch, &mut sets);
    }
    sets.into_iter().map(|s| s.into_iter().collect()).collect()
}

fn subsets(ids: &[usize], start: usize, max_len: usize, cur: &mut Vec<usize>, out: &mut [BTreeSet<Vec<usize>>]) {
    for i in start..ids.len() {
        cur.push(ids[i]);
        if cur.len() >= 2 {
            out[cur.len() - 1].insert(cur.clone());
        }
        if cur.len() < max_len {
            subsets(ids, i + 1, max_len, cur, out);
        }
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::two_squares;

    fn line(n: usize) -> PointCloud<f64> {
        let flat: Vec<f64> = (0..n).flat_map(|i| [i as f64, 0.0]).collect();
        PointCloud::from_flat(flat, 2).unwrap()
    }

    /// Exhaustive check: every node set of size 2..=nerve_dim+1 is a simplex iff the
    /// members share a point.
    fn assert_nerve_exact(nerve: &MapperNerve<f64>) {
        let n = nerve.nodes.len();
        let sets: Vec<BTreeSet<usize>> = nerve
            .nodes
            .iter()
            .map(|x| x.members.iter().copied().collect())
            .collect();
        for d in 1..=nerve.nerve_dim() {
            let listed: BTreeSet<Vec<usize>> = nerve.simplices[d].iter().cloned().collect();
            let mut expected = BTreeSet::new();
            let mut stack = vec![(Vec::<usize>::new(), 0usize)];
            while let Some((cur, next)) = stack.pop() {
                if cur.len() == d + 1 {
                    let mut common = sets[cur[0]].clone();
                    for &c in &cur[1..] {
                        common = common.intersection(&sets[c]).copied().collect();
                    }
                    if !common.is_empty() {
                        expected.insert(cur);
                    }
                    continue;
                }
                for v in next..n {
                    let mut c = cur.clone();
                    c.push(v);
                    stack.push((c, v + 1));
                }
            }
            assert_eq!(listed, expected, "dimension {d}");
        }
    }

    #[test]
    fn single_element_kmeans_one() {
        let cloud = line(6);
        let p = MapperParams::new(Lens::Coordinate(0))
            .intervals(1)
            .clusterer(Clusterer::KMeans { k: 1, seed: 0 });
        let nerve = run_mapper(&cloud, &p).unwrap();
        assert_eq!(nerve.nodes.len(), 1);
        assert_eq!(nerve.nodes[0].members, (0..6).collect::<Vec<_>>());
        assert!(nerve.edges().is_empty());
    }

    #[test]
    fn line_gives_a_path() {
        let cloud = line(40);
        let p = MapperParams::new(Lens::Coordinate(0)).intervals(5).nerve_dim(2);
        let nerve = run_mapper(&cloud, &p).unwrap();
        assert_eq!(nerve.nodes.len(), 5);
        assert_eq!(nerve.edges(), &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4]]);
        assert!(nerve.simplices[2].is_empty());
        assert_eq!(nerve.components().len(), 1);
        assert_nerve_exact(&nerve);
    }

    #[test]
    fn two_squares_nerve_is_exact_and_pure() {
        let cloud = two_squares::<f64>(5).unwrap();
        let p = MapperParams::new(Lens::Coordinate(0)).intervals(4).nerve_dim(2);
        let nerve = run_mapper(&cloud, &p).unwrap();
        assert_nerve_exact(&nerve);
        assert_eq!(nerve.components().len(), 2);
        for node in &nerve.nodes {
            let (_, ratio) = node.stats.majority().unwrap();
            assert_eq!(ratio, 1.0);
            // generator ground truth: means sit inside one of the unit squares
            let m = &node.stats.mean;
            let inside = |c: f64| (c..=c + 1.0).contains(&m[0]) && (c..=c + 1.0).contains(&m[1]);
            assert!(inside(0.0) || inside(5.0), "{m:?}");
        }
    }

    #[test]
    fn nodes_partition_each_preimage() {
        let cloud = two_squares::<f64>(2).unwrap();
        for clusterer in [
            Clusterer::SingleLinkage { bins: 10 },
            Clusterer::Dbscan { eps: 0.3, min_pts: 4 },
            Clusterer::KMeans { k: 3, seed: 1 },
        ] {
            let p = MapperParams::new(Lens::Pca(1)).intervals(6).clusterer(clusterer);
            let nerve = run_mapper(&cloud, &p).unwrap();
            let values = evaluate_lens(&cloud, &p.lens).unwrap();
            let pre = nerve.cover.preimages(&values);
            let mut by_alpha: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for node in &nerve.nodes {
                assert!(!node.members.is_empty());
                by_alpha.entry(node.cover_index).or_default().extend(&node.members);
            }
            for (alpha, mut all) in by_alpha {
                let n = all.len();
                all.sort_unstable();
                all.dedup();
                assert_eq!(all.len(), n, "overlapping nodes in element {alpha}");
                assert!(all.iter().all(|p| pre[alpha].binary_search(p).is_ok()));
                if !matches!(clusterer, Clusterer::Dbscan { .. }) {
                    assert_eq!(all, pre[alpha]);
                }
            }
        }
    }

    #[test]
    fn deterministic() {
        let cloud = two_squares::<f64>(9).unwrap();
        let p = MapperParams::new(Lens::Pca(2))
            .intervals(4)
            .clusterer(Clusterer::KMeans { k: 2, seed: 4 });
        assert_eq!(run_mapper(&cloud, &p).unwrap(), run_mapper(&cloud, &p).unwrap());
    }

    #[test]
    fn refinement_never_loses_nodes() {
        let cloud = two_squares::<f64>(3).unwrap();
        let mut last = 0;
        for n in [1, 2, 4, 8, 16] {
            let nerve = run_mapper(&cloud, &MapperParams::new(Lens::Coordinate(1)).intervals(n)).unwrap();
            assert!(nerve.nodes.len() >= last);
            last = nerve.nodes.len();
        }
    }

    #[test]
    fn invalid_params_are_rejected() {
        let cloud = line(4);
        let p = MapperParams::new(Lens::Coordinate(0)).clusterer(Clusterer::Dbscan { eps: -1.0, min_pts: 2 });
        assert!(matches!(
            run_mapper(&cloud, &p),
            Err(Error::InvalidParam { name: "eps", .. })
        ));
        assert!(run_mapper(&cloud, &MapperParams::new(Lens::Coordinate(0)).nerve_dim(0)).is_err());
        assert!(matches!(
            run_mapper(&cloud, &MapperParams::new(Lens::Coordinate(5))),
            Err(Error::AxisOutOfRange { .. })
        ));
    }

    #[test]
    fn label_ratios() {
        let cloud = PointCloud::from_rows(&[[0.0], [0.1], [0.2], [0.3]])
            .unwrap()
            .with_labels(["outer", "outer", "inner", "outer"].map(String::from).to_vec())
            .unwrap();
        let nerve = run_mapper(&cloud, &MapperParams::new(Lens::Coordinate(0)).intervals(1)).unwrap();
        let stats = node_stats(&nerve, &cloud);
        assert_eq!(stats[0].ratio("outer"), Some(0.75));
        assert_eq!(stats[0].majority(), Some(("outer", 0.75)));
        assert_eq!(stats[0], nerve.nodes[0].stats);
    }
}
