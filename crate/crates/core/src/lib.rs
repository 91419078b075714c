//! Exact Berkovich skeleta of superelliptic curves `y^n = f(x)` over a
//! discretely valued field.

pub mod canon;
pub mod covering;
pub mod divisor;
pub mod error;
pub mod graph;
pub mod moduli;
pub mod rational;
pub mod realize;
pub mod tree;
pub mod valuation;

pub use covering::{compute_skeleton, rh_genus, BranchConfiguration, Root, SkeletonReport};
pub use error::{Error, Result};
pub use graph::{GraphFile, GraphKey, Skeleton, WeightedGraph};
pub use rational::Rational;
pub use valuation::{pairwise_valuation, series_sub, valuation, PiSeries, Valuation, ValuedPoint};
