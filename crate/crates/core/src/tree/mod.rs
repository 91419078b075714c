//! Marked metric trees: the tropicalization of `P^1` with the branch points
//! as infinite leaves.
//!
//! Two independent constructions are provided. [`separating_tree`] follows
//! the recursive grouping of points by common reduction, and
//! [`neighbor_joining`] rebuilds a tree from the distance matrix of
//! [`distance_matrix`]. They are used to cross-check each other.

mod distance;
mod metric;
mod nj;
mod separating;

pub use distance::{distance_matrix, DistanceMatrix};
pub use metric::{MetricTree, TreeEdge};
pub use nj::neighbor_joining;
pub use separating::separating_tree;
