//! Workbench for a family of λ-calculi with explicit substitutions:
//!
//! * the linear substitution calculus (LSC) and its call-by-name,
//!   call-by-value, call-by-sharing and call-by-need notions of reduction,
//! * the sharing linear λ-calculus with grant (`~`), request (`open`) and
//!   promotion (`!`) modalities,
//! * the Bang calculus (full and simplified),
//! * the MSCLL one-sided sequent calculus with the sharing modalities,
//!
//! together with the forward and inverse translations between them, their
//! weak-evaluation strategies, type systems, and an exhaustive enumeration
//! oracle that checks the simulation/preservation/confluence properties on
//! all small terms.
//!
//! All values are immutable and every operation is a pure function, so the
//! API is safe to drive from parallel test workers.

pub mod syntax;
pub mod lsc;
pub mod sharing;
pub mod translations;
pub mod bang;
pub mod mscll;
pub mod oracle;

pub use syntax::{Sort, VarName};
