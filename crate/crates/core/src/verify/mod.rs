//! Independent checks of extracted subgraphs and windows.

mod brute;
mod certificate;
mod densest;
mod highest;
mod kcore;

pub use brute::{brute_densest, brute_min_degree, BRUTE_DENSEST_LIMIT, BRUTE_LIMIT};
pub use certificate::{check_certificate, CertificateCheck};
pub use densest::{densest_subgraph, Densest, DENSEST_LIMIT};
pub use highest::{highest_vertex_check, highest_vertex_ok, HighestCheck};
pub use kcore::{k_core, k_core_trace, CoreTrace};
