//! Linear combinations of diagrams, their matrix images, and the module
//! spanned by subsets.

mod combination;
mod module;
mod rank;

pub use combination::{linear_compose, parse_rational, phi_linear, LinearCombination};
pub use module::{
    minus_basis, module_action, plus_basis, plus_minus_split, submodule_closure, ModuleClosure,
    ModuleVector, MAX_CLOSURE_SIZE,
};
pub use rank::{independence_rank, independence_rank_with_limit, integer_rank, RationalSubspace};
