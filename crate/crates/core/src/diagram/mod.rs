//! Partition, Brauer and Temperley–Lieb diagrams and their twisted variants.

mod compose;
mod enumerate;
mod format;
mod generators;
mod partition;
mod twisted;

pub use compose::{compose, CompositionOutcome, UnionFind};
pub use enumerate::{
    classify, enumerate, enumerate_with_limit, Family, SetPartitions, DEFAULT_MAX_SIZE,
};
pub use format::format_blocks;
pub(crate) use format::Cursor;
pub use generators::{
    cap_element, evaluate_word, factorize_temperley_lieb, generator, Generator, GeneratorKind,
};
pub(crate) use partition::shape_mismatch;
pub use partition::{BlockKind, DiagramStatistics, Partition, Vertex};
pub use twisted::{twisted_compose, TwistedElement};
