//! Tight neighborly triangulations of 4-manifolds on 15 vertices with a
//! `Z₃` symmetry: complexes, dual graphs, topology checks, the graph
//! families behind the case analysis, and the enumeration of class 𝒞.

pub mod catalog;
pub mod complex;
pub mod dual;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod par;
pub mod topology;

pub use complex::{FVector, Facet, SimplicialComplex, VertexId};
pub use error::{Error, Result};
pub use par::Exec;
