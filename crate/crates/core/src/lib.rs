//! Topological data analysis over point clouds: Vietoris-Rips persistent homology,
//! Mapper graphs, and the k-means, single-linkage and DBSCAN clusterers they lean on.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the `*F64`/`*F32`
//! aliases below fix the scalar for callers that do not care.

pub mod cluster;
pub mod dataset;
pub mod error;
pub mod mapper;
pub mod persistence;
pub mod rips;
pub mod scalar;
mod union_find;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use cluster::{ClusterAssignment, Dendrogram, KMeansResult};
pub use dataset::{DistanceMatrix, EncodingSpec, Metric, PointCloud};
pub use mapper::{Cover, Lens, MapperNerve};
pub use persistence::{BoundaryMatrix, PersistenceDiagram, PersistencePair};
pub use rips::{Filtration, Simplex};

pub type PointCloudF64 = PointCloud<f64>;
pub type PointCloudF32 = PointCloud<f32>;
pub type DistanceMatrixF64 = DistanceMatrix<f64>;
pub type DistanceMatrixF32 = DistanceMatrix<f32>;
pub type FiltrationF64 = Filtration<f64>;
pub type FiltrationF32 = Filtration<f32>;
pub type PersistenceDiagramF64 = PersistenceDiagram<f64>;
pub type PersistenceDiagramF32 = PersistenceDiagram<f32>;
pub type KMeansResultF64 = KMeansResult<f64>;
pub type KMeansResultF32 = KMeansResult<f32>;
pub type DendrogramF64 = Dendrogram<f64>;
pub type MapperNerveF64 = MapperNerve<f64>;
pub type MapperNerveF32 = MapperNerve<f32>;
