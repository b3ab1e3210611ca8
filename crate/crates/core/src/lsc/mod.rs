//! The LSC layer: rewrite rules of the four calculi (CBN, CBV, CBS, CBNd),
//! their weak-evaluation judgments, simple typing, and the fusion relation.

mod eval;
mod fusion;
mod rules;
mod types;

pub use eval::{
    cbs_iota_holds, is_gcvlax_inv_step, sigma_steps, weak_eval_steps, weak_step_named,
};
pub use fusion::{fusion_closure, fusion_steps};
pub use rules::{lsc_is_nf, lsc_redexes};
pub use types::{infer_lsc, lsc_check, lsc_check_at, lsc_synth, Env, SimpleType, TypeError};

use crate::syntax::lsc_term::LscTerm;
use crate::syntax::VarName;
use std::fmt;

/// The four notions of reduction over LSC terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Calculus {
    Cbn,
    Cbv,
    Cbs,
    Cbnd,
}

impl Calculus {
    /// The rule set of the calculus.
    pub fn rules(&self) -> &'static [LscRule] {
        match self {
            Calculus::Cbn => &[LscRule::Db, LscRule::Ls, LscRule::Gc],
            Calculus::Cbv => &[LscRule::Db, LscRule::Lsv, LscRule::GcvLax],
            Calculus::Cbs => &[LscRule::Db, LscRule::Lsw, LscRule::Gc],
            Calculus::Cbnd => &[LscRule::Db, LscRule::Lsv, LscRule::Gc],
        }
    }
}

/// The individual LSC rewrite rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LscRule {
    Db,
    Ls,
    Lsv,
    Lsw,
    Gc,
    GcvLax,
}

impl fmt::Display for LscRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LscRule::Db => "db",
            LscRule::Ls => "ls",
            LscRule::Lsv => "lsv",
            LscRule::Lsw => "lsw",
            LscRule::Gc => "gc",
            LscRule::GcvLax => "gcvlax",
        };
        write!(f, "{s}")
    }
}

/// Value classes gating the CBV/CBS rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueClass {
    /// Abstractions only.
    Strict,
    /// Variables or abstractions.
    Lax,
}

/// True iff `t` is a value of the given class.
pub fn is_value(t: &LscTerm, class: ValueClass) -> bool {
    match (t, class) {
        (LscTerm::Abs(_, _), _) => true,
        (LscTerm::Var(_), ValueClass::Lax) => true,
        _ => false,
    }
}

/// Rulenames labelling weak-evaluation steps. The `Sigma`/`Iota` names are
/// auxiliary: they label sub-derivations and never appear on a top-level
/// step. `GcvLaxInv` is the extra generator of the ▷V-extended CBV relation
/// (inserting a dead lax-value substitution) used by inverse simulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LscRulename {
    Db,
    Ls,
    Gc,
    Lsv,
    GcvLax,
    Lsw,
    Sigma(VarName, LscTerm),
    Iota(VarName),
    GcvLaxInv,
}

impl LscRulename {
    /// Free variables of a rulename (side conditions on congruence rules).
    pub fn free_vars(&self) -> std::collections::BTreeSet<VarName> {
        match self {
            LscRulename::Sigma(x, t) => {
                let mut s = t.free_vars();
                s.insert(x.clone());
                s
            }
            LscRulename::Iota(x) => [x.clone()].into(),
            _ => Default::default(),
        }
    }
}

impl fmt::Display for LscRulename {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LscRulename::Db => write!(f, "db"),
            LscRulename::Ls => write!(f, "ls"),
            LscRulename::Gc => write!(f, "gc"),
            LscRulename::Lsv => write!(f, "lsv"),
            LscRulename::GcvLax => write!(f, "gcvlax"),
            LscRulename::Lsw => write!(f, "lsw"),
            LscRulename::Sigma(x, t) => write!(f, "sigma[{x}/{t}]"),
            LscRulename::Iota(x) => write!(f, "iota({x})"),
            LscRulename::GcvLaxInv => write!(f, "gcvlax-inv"),
        }
    }
}
