//! Products by hook classes in the quantum K-theory ring of a Grassmannian.

pub mod closed_forms;
pub mod error;
pub mod integer;
pub mod poset;
pub mod report;
pub mod ring;
pub mod tableaux;
pub mod verify;

pub use closed_forms::{
    c_direct, c_double_sum, c_positive, c_reduced, c_single_sum, f_aux, g_aux, ReductionState,
};
pub use error::{QkError, Result};
pub use integer::{binom, binomial, Integer};
pub use poset::{GrassContext, HookParams, Partition, QuantumShape, SkewShape};
pub use report::{ProductDocument, VerificationReport};
pub use ring::{multiply_by_hook, pieri_col, pieri_row, GradedTerm, QLinearCombination};
pub use tableaux::{
    lr_coefficient, marked_pair_count, star_shape, ReadingWord, SetValuedTableau, SkewDiagram,
};
pub use verify::{Suite, SweepParams};
