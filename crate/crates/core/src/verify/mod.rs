//! Brute-force oracles and suite runners.

mod combinatorics;
mod homomorphism;
mod linear_checks;
mod oracles;
mod registry;
mod report;
mod sample;

pub use combinatorics::{
    check_count_formula, check_generators, check_h_resolution, check_ones_lemma, check_orbits,
    check_order_correspondence, check_twisting_identity, count_case, orbits,
};
pub use homomorphism::{
    check_faithful, check_homomorphism, check_kernel, predicted_kernel, HomomorphismSpec,
    Hypothesis, RepSelector, Sample,
};
pub use linear_checks::{
    canonical_seed, check_cap_identity, check_closures, check_decomposition_witnesses,
    check_independence, check_linear_morphism, check_submodule_invariance, decomposition_witnesses,
};
pub use oracles::{
    floating_components, intertwining_sets, middle_classes, ones_conditions, z_zero,
    IntertwineQuery, MAX_MIDDLE_ROW,
};
pub use registry::{
    check_phi_converse, merge, run_suite, suite_names, SuiteInfo, SuiteOptions, SUITES,
};
pub use report::{run_batches, Batch, Failure, Status, VerificationReport, MAX_RECORDED_FAILURES};
pub use sample::{
    hom_sets, random_brauer, random_composable_shape, random_diagram, random_partition,
};
