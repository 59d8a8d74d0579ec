//! Regions, ends and finite-subgraph extraction for locally finite
//! infinite graphs given by neighbor oracles.

pub mod ends;
pub mod error;
pub mod extract2;
pub mod family;
pub mod generators;
pub mod graph;
pub mod nested;
pub mod regions;
pub mod report;
pub mod verify;
pub mod window;

pub use error::{Error, Result};
pub use family::{FamilyKind, FamilySpec};
pub use graph::{GraphHandle, Rational, VertexId, VertexSet};
pub use regions::{Budget, Goodness, Region, Tri};
pub use report::{ExtractionReport, Mode};
