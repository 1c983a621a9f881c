//! Mapper: a lens maps the cloud to the line or the plane, an overlapping cover of the
//! lens image pulls back to overlapping subsets of the cloud, each subset is clustered in
//! the original space, and the nerve of the resulting clusters is the output complex.

mod cover;
mod export;
mod lens;
mod nerve;

pub use cover::{build_cover, Cover};
pub use export::{write_dot, write_json, ColorBy};
pub use lens::{evaluate_lens, Lens};
pub use nerve::{node_stats, run_mapper, Clusterer, MapperNerve, MapperNode, MapperParams, NodeStats};
