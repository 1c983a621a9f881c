//! Point clouds, distance matrices, synthetic generators, table ingestion and PCA.

mod cloud;
mod distance;
pub(crate) mod generate;
mod io;
mod pca;
mod table;

pub use cloud::PointCloud;
pub use distance::{distance_matrix, DistanceMatrix, Metric};
pub use generate::{
    generate_annulus, generate_square, iris_like, iris_like_sized, sample_rows, split_seed, two_circles, two_squares,
    Preset,
};
pub use io::{read_labels_csv, read_points_csv, write_labels_csv, write_points_csv};
pub use pca::{pca_project, Pca};
pub use table::{load_table, ColumnEncoding, EncodingSpec};
