//! Subset-indexed matrices and the representations of the diagram categories.

mod labels;
mod maps;
mod matrix;
mod relation;

pub use labels::{
    even_gap_subsets, is_even_gap, subset_elements, subset_string, Labels, SubsetOrdering,
    MAX_GROUND,
};
pub use maps::{
    brauer_h, brauer_h_positional, image, is_block_union, mu, phi, phi_on, phi_ordered, preimage,
    reduced, rho, rho_d, Parity,
};
pub use matrix::IndexedMatrix;
pub use relation::Relation;
