//! The sharing linear λ-calculus: rewrite rules, flattening congruence,
//! typing, normal-form classification, weak evaluation, and the translation
//! to LSC used in the strong-normalization argument.

mod eval;
mod flatten;
mod nf;
mod rules;
mod to_lsc;
mod types;

pub use eval::{iota_bang_holds, sharing_sigma_steps, weak_eval_sharing, weak_step_named_sharing};
pub use flatten::{equiv_flatten, flatten_class};
pub use nf::{classify_nf, NfTag};
pub use rules::{sharing_is_nf, sharing_redexes};
pub use to_lsc::{to_lsc, to_lsc_type};
pub use types::{
    typecheck_sharing, typing_derivation, SharingType, SharingTypeError, TypingDeriv, TypingEnv,
    TypingRule,
};

use crate::syntax::sharing_term::SharingTerm;
use crate::syntax::VarName;
use std::fmt;

/// The four rewrite rules of the calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SharingRule {
    Sdb,
    Sreq,
    Sls,
    Sgc,
}

impl fmt::Display for SharingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SharingRule::Sdb => "!db",
            SharingRule::Sreq => "!req",
            SharingRule::Sls => "!ls",
            SharingRule::Sgc => "!gc",
        };
        write!(f, "{s}")
    }
}

/// Rulenames labelling weak-evaluation steps; `Ssigma`/`Sid` are auxiliary
/// and never appear on a top-level step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SharingRulename {
    Sdb,
    /// ς![u/(∂t)L]: substitute `u` by the recorded grant-answer.
    Ssigma(VarName, SharingTerm),
    /// ι!(u): `u` is in evaluation position.
    Sid(VarName),
    Sls,
    Sgc,
    Sreq,
}

impl SharingRulename {
    pub fn free_vars(&self) -> std::collections::BTreeSet<VarName> {
        match self {
            SharingRulename::Ssigma(u, t) => {
                let mut s = t.free_vars();
                s.insert(u.clone());
                s
            }
            SharingRulename::Sid(u) => [u.clone()].into(),
            _ => Default::default(),
        }
    }
}

impl fmt::Display for SharingRulename {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SharingRulename::Sdb => write!(f, "!db"),
            SharingRulename::Ssigma(u, t) => write!(f, "sigma![{u}/{t}]"),
            SharingRulename::Sid(u) => write!(f, "iota!({u})"),
            SharingRulename::Sls => write!(f, "!ls"),
            SharingRulename::Sgc => write!(f, "!gc"),
            SharingRulename::Sreq => write!(f, "!req"),
        }
    }
}
