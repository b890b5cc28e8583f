//! Relative projectivity, vertices and sources.

mod descent;
mod higman;
mod natural;

pub use higman::{is_rel_projective, rel_trace, trace_many, HigmanMethod, HigmanRecord};
pub use descent::{vertex_source_pgroup, DescentStep, VertexSource};
pub use natural::{
    alternating_candidates, natural_simple, natural_simple_sym, sandwich, vertex_of_natural_simple,
    vertex_of_natural_simple_sym, Check, Status, SummandVertex, VertexConfig, VertexReport,
};
