//! Flat and hierarchical clusterers: k-means (Lloyd), single-linkage with dendrogram
//! cuts, and DBSCAN.

mod assignment;
mod dbscan;
mod kmeans;
mod linkage;

pub use assignment::{inertia, purity, write_assignment_csv, ClusterAssignment};
pub use dbscan::dbscan;
pub use kmeans::{kmeans, kmeans_pp_init, KMeansInit, KMeansParams, KMeansResult};
pub use linkage::{cut_dendrogram, single_linkage, CutStrategy, Dendrogram, Merge};
