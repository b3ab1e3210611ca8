//! Term representations for the three languages, variable hygiene,
//! parsing/printing, substitution, and one-hole contexts.

mod names;
pub mod lsc_term;
pub mod sharing_term;
pub mod bang_term;
mod parse;
mod print;

pub use names::{fresh_like, Sort, VarName};
pub use parse::{
    parse_bang, parse_lsc, parse_sharing, parse_sharing_type, parse_simple_type, ParseError,
};
pub use print::AstLines;

/// Capture behaviour selector for [`lsc_term::LscCtx::plug`] and friends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capture {
    /// Plug literally: context binders may capture free variables of the term.
    With,
    /// Rename context binders on the path to the hole away from the free
    /// variables of the plugged term.
    Avoiding,
}
