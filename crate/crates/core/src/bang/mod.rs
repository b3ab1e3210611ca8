//! The Bang calculus: λ-terms with promotion `!t` and (in the full variant)
//! dereliction `der(t)`, explicit substitutions, reduction at a distance,
//! dereliction unfolding into the simplified fragment, and Bang typing.

use std::fmt;

pub mod rules;
pub mod types;
pub mod unfold;

pub use rules::{bang_is_nf, bang_redexes, BangError};
pub use types::{bang_check, bang_typecheck, infer_bang, BType, BangTypeError};
pub use unfold::{canonical_unfold, der_unfold};

/// Bang rewrite rules. The simplified calculus drops `derB` (and rejects
/// `der` nodes altogether).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BangRule {
    DbB,
    LsB,
    GcB,
    DerB,
}

impl fmt::Display for BangRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BangRule::DbB => "db!",
            BangRule::LsB => "ls!",
            BangRule::GcB => "gc!",
            BangRule::DerB => "d!",
        };
        write!(f, "{s}")
    }
}
