//! Persistent homology over the two-element field: boundary matrices, column reduction,
//! and the diagrams, barcodes and Betti numbers read off the reduction.

mod boundary;
mod diagram;
mod reduce;

pub use boundary::{boundary_matrix, BoundaryMatrix};
pub use diagram::{
    barcode, betti_numbers, compute_persistence, persistence_diagram, write_barcode_csv, write_betti_csv,
    write_diagram_csv, Bar, Barcode, PersistenceDiagram, PersistencePair, ReportOptions,
};
pub use reduce::{reduce, reduce_with, Reduction, ReductionStrategy};
