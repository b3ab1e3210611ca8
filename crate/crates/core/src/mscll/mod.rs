//! The MSCLL logic layer: formulas with the sharing modalities, involutive
//! linear negation, sequents as multisets, a local sequent-derivation
//! checker, the MELL embedding, the type-to-formula translation, and
//! compilation of sharing typing derivations to sequent derivations.

mod check;
mod compile;
mod formula;

pub use check::{check_derivation, Derivation, RuleTag, Sequent};
pub use compile::{compile_typing, sequent_of, CompileError};
pub use formula::{embed_mell, neg, type_to_formula, Formula};
