//! Exact tracing, enumeration and symmetry verification of vertex-to-vertex
//! geodesics on the surfaces of the platonic solids.

pub mod cli;
pub mod developing;
pub mod enumeration;
pub mod point;
pub mod report;
pub mod scalar;
pub mod surface;
pub mod svg;
pub mod symmetry;
