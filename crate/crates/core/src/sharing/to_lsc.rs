//! The strong-normalization translation ⟦·⟧ into the LSC: grants become
//! thunks over a fixed inhabited type 1 := i -> i, requests apply the fixed
//! closed inhabitant ★ := \w. w, and promotions are transparent.

use crate::lsc::SimpleType;
use crate::syntax::lsc_term::{abs, app, sub, var, LscTerm};
use crate::syntax::sharing_term::SharingTerm;
use crate::syntax::{fresh_like, Sort, VarName};

/// The fixed closed inhabitant ★ of 1.
fn star() -> LscTerm {
    let w = VarName::new(Sort::Plain, "w");
    abs(w.clone(), var(w))
}

/// Unrestricted variables are relabelled to the plain sort (they print
/// identically and the LSC has a single sort); linear variables keep their
/// sort so source binders stay recognizable.
fn relabel(x: &VarName) -> VarName {
    if x.sort == Sort::Unrestricted {
        x.with_sort(Sort::Plain)
    } else {
        x.clone()
    }
}

/// ⟦t⟧: the LSC image of a sharing term.
pub fn to_lsc(t: &SharingTerm) -> LscTerm {
    match t {
        SharingTerm::LVar(x) | SharingTerm::UVar(x) => var(relabel(x)),
        SharingTerm::Abs(a, b) => abs(a.clone(), to_lsc(b)),
        SharingTerm::App(f, s) => app(to_lsc(f), to_lsc(s)),
        SharingTerm::Grant(b) => {
            let body = to_lsc(b);
            let z = VarName::new(Sort::Plain, "z");
            let z = if body.free_vars().contains(&z) {
                fresh_like(&z, &body.free_vars())
            } else {
                z
            };
            abs(z, body)
        }
        SharingTerm::Request(b) => app(to_lsc(b), star()),
        SharingTerm::Prom(b) => to_lsc(b),
        SharingTerm::Sub(b, u, s) => sub(to_lsc(b), relabel(u), to_lsc(s)),
    }
}

/// ⟦A⟧: the simple-type image, with 1 := i -> i.
pub fn to_lsc_type(a: &super::SharingType) -> SimpleType {
    use super::SharingType::*;
    match a {
        Atom(x) => SimpleType::Atom(x.clone()),
        Lolli(l, r) => SimpleType::arrow(to_lsc_type(l), to_lsc_type(r)),
        Grant(x) => SimpleType::arrow(
            SimpleType::arrow(SimpleType::Atom("i".into()), SimpleType::Atom("i".into())),
            to_lsc_type(x),
        ),
        Bang(x) => to_lsc_type(x),
    }
}
