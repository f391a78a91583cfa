pub mod basis_graph;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod pipeline;
pub mod root_system;
pub mod type_a;
pub mod vector;
pub mod weight_complex;

pub use error::{Error, Result};
pub use vector::ExactVector;
