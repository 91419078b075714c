//! The forward computation: from `y^n = f(x)` to its Berkovich skeleton.

mod config;
mod cover;
mod fiber;
mod pipeline;

pub use config::{branch_points, rh_genus, BranchConfiguration, Root};
pub use cover::{assemble_covering, CoverEdge, CoverLeaf, CoverVertex, CoveringGraph};
pub use fiber::{fiber_data, vertex_fibers, vertex_weight, Fiber, FiberData, VertexFiber};
pub use pipeline::{compute_skeleton, Check, SkeletonReport};
