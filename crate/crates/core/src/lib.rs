//! Local search for Boolean constraint satisfaction.
//!
//! Given a formula over explicit Boolean relations, a satisfying assignment
//! `f` and a budget `k`, decide whether some satisfying assignment of
//! strictly smaller Hamming weight lies within Hamming distance `k` of `f`.
//!
//! * [`classify`] decides the relation classes (Horn, affine, width-2
//!   affine, IHS-B−, flip separable, ...) and the complexity verdict for a
//!   whole language.
//! * [`solve`] dispatches to the matching algorithm: forced propagation for
//!   IHS-B−, component flipping for width-2 affine, bounded search trees for
//!   Horn and flip-separable languages, and exhaustive search otherwise.
//! * [`oracle`] is the exhaustive reference procedure.
//! * [`gadgets`] builds the hardness reductions as concrete instances.
//! * [`io`] reads and writes the JSON instance format.

pub mod classify;
pub mod decision;
pub mod error;
pub mod families;
pub mod formula;
pub mod gadgets;
pub mod io;
pub mod oracle;
pub mod relation;
pub mod solve;

pub use classify::{classify_language, classify_relation, LanguageVerdict, LsClass, MinOnesClass, RelationClass};
pub use decision::{Algorithm, Answer, Decision, SearchStats};
pub use error::{Error, Result};
pub use formula::{validate_instance, Assignment, Constraint, Formula, LsInstance, RelId, VarId, Violation};
pub use oracle::{brute_force_ls, DEFAULT_ORACLE_BUDGET};
pub use relation::{Relation, Tuple, ARITY_MAX};
pub use solve::{solve, SolveConfig};
