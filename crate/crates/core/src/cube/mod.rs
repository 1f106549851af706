//! Geometry of the n-cube: vertices, slicings (linear threshold functions),
//! their enumeration, and the facets of the associated zonotope.

pub mod enumerate;
pub mod slicing;
pub mod symmetry;
pub mod vertex;

pub use enumerate::{
    combinations, count_slicings, count_zonotope_facets, enumerate_slicings, slicings,
    EnumerationStrategy,
};
pub use slicing::{is_slicing, Slicing, SlicingError};
pub use vertex::{parse_vertex, vertex_string, CubeVertex, VertexSet};
