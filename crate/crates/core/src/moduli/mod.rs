//! Combinatorial types of tropical superelliptic curves and the maximal
//! cones of their moduli spaces.

mod count;
mod trees;
mod types;

pub(crate) use count::is_prime;
pub use count::{count_s_cones, count_sp_cones, CountReport, Placement};
pub use trees::{enumerate_trivalent_trees, TrivalentTree};
pub use types::{
    covering_from_signature, covering_type, is_admissible, ramification_count, ConstrainedType, DedupMode, Signature,
    TypeKey,
};
