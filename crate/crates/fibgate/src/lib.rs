//! Exact-arithmetic toolkit for braiding gates of Fibonacci anyons.
//!
//! The crate models the two- and three-qubit encodings of Fibonacci anyons
//! (three and six strands), evaluates braid words to unitaries over the
//! exact number field Q(e^{i pi/5}, sqrt(1/phi)), classifies the resulting
//! gates (leakage, entangling power, fixed states), exhaustively searches
//! short braid words, and compiles approximate leakage-free entangling
//! gates by a contracting matrix iteration.

pub mod braid;
pub mod field;
pub mod gate;
pub mod iterate;
pub mod matrix;
pub mod rep;
pub mod search;
pub mod verify;

pub use braid::{BraidError, BraidWord, NamedBraid};
pub use field::{CycloElement, FieldElement, FieldError};
pub use gate::{GateError, GateReport, Tolerances};
pub use iterate::{
    CompiledEntangler, CompiledWord, DensityReport, DiagonalGate, IterError, IterationState,
};
pub use matrix::{ExactMatrix, FloatMatrix};
pub use rep::{B3Rep, B6Rep, FibData, RepError};
pub use search::{SearchConfig, SearchError, SearchPolicy, SearchRecord, SearchSummary};
pub use verify::{identity_suite, suite_passes, IdentityCheck};
