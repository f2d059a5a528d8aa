//! Exact counting of induced `k`-vertex subgraphs with a graph property,
//! through the property's homomorphism basis, plus the f-vector / h-vector
//! diagnostics that certify which dense patterns survive in that basis.

pub mod canon;
pub mod catalog;
pub mod count;
pub mod error;
pub mod graph;
pub mod hardness;
pub mod hereditary;
pub mod hombasis;
pub mod homcount;
pub mod io;
pub mod json;
pub mod par;
pub mod partition;
pub mod properties;
pub mod spectrum;

pub use error::{Error, Result};
pub use graph::{HostGraph, SmallGraph};
