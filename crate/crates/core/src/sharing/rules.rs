//! Redex enumeration for the sharing calculus. The four rules act at a
//! distance and are closed under arbitrary contexts; listing order is
//! leftmost-outermost with !ls occurrences ordered by position.

use std::collections::BTreeSet;

use super::SharingRule;
use crate::syntax::sharing_term::{
    abs, app, grant, prom, rename_chain_avoiding, request, sub, wrap_subs, SharingTerm,
};

/// All redex occurrences of `t`, paired with their reducts.
pub fn sharing_redexes(t: &SharingTerm) -> Vec<(SharingRule, SharingTerm)> {
    let mut out = root_redexes(t);
    match t {
        SharingTerm::LVar(_) | SharingTerm::UVar(_) => {}
        SharingTerm::Abs(x, b) => {
            for (r, b2) in sharing_redexes(b) {
                out.push((r, abs(x.clone(), b2)));
            }
        }
        SharingTerm::App(f, a) => {
            for (r, f2) in sharing_redexes(f) {
                out.push((r, app(f2, (**a).clone())));
            }
            for (r, a2) in sharing_redexes(a) {
                out.push((r, app((**f).clone(), a2)));
            }
        }
        SharingTerm::Grant(x) => {
            for (r, x2) in sharing_redexes(x) {
                out.push((r, grant(x2)));
            }
        }
        SharingTerm::Request(x) => {
            for (r, x2) in sharing_redexes(x) {
                out.push((r, request(x2)));
            }
        }
        SharingTerm::Prom(x) => {
            for (r, x2) in sharing_redexes(x) {
                out.push((r, prom(x2)));
            }
        }
        SharingTerm::Sub(b, u, a) => {
            for (r, b2) in sharing_redexes(b) {
                out.push((r, sub(b2, u.clone(), (**a).clone())));
            }
            for (r, a2) in sharing_redexes(a) {
                out.push((r, sub((**b).clone(), u.clone(), a2)));
            }
        }
    }
    out
}

/// True iff `t` has no redex.
pub fn sharing_is_nf(t: &SharingTerm) -> bool {
    sharing_redexes(t).is_empty()
}

/// If `arg` has the shape `(!(∂s)L₁)L₂`, return the payload `(∂s)L₁` and the
/// outer (maximal) chain `L₂`.
pub(crate) fn split_sharable_accessible(
    arg: &SharingTerm,
) -> Option<(SharingTerm, Vec<(crate::syntax::VarName, SharingTerm)>)> {
    let (core, l2) = arg.peel_subs();
    if let SharingTerm::Prom(inner) = core {
        let (icore, _) = inner.peel_subs();
        if matches!(icore, SharingTerm::Grant(_)) {
            return Some(((*inner).clone(), l2));
        }
    }
    None
}

fn root_redexes(t: &SharingTerm) -> Vec<(SharingRule, SharingTerm)> {
    let mut out = Vec::new();
    match t {
        // !db: (λa.b)L s → b{a := s}L
        SharingTerm::App(f, s) => {
            let (core, chain) = f.peel_subs();
            if let SharingTerm::Abs(_, _) = core {
                let (core2, chain2) = rename_chain_avoiding(core, chain, &s.free_vars());
                if let SharingTerm::Abs(a, b) = core2 {
                    out.push((SharingRule::Sdb, wrap_subs(b.subst(&a, s), chain2)));
                }
            }
        }
        // !req: open((∂s)L) → sL
        SharingTerm::Request(inner) => {
            let (core, chain) = inner.peel_subs();
            if let SharingTerm::Grant(s) = core {
                out.push((SharingRule::Sreq, wrap_subs((*s).clone(), chain)));
            }
        }
        SharingTerm::Sub(b, u, arg) => {
            // !ls: C⟪u⟫[u := (!(∂s)L₁)L₂] → C⟪(∂s)L₁⟫[u := !(∂s)L₁]L₂
            if let Some((payload, l2)) = split_sharable_accessible(arg) {
                let mut avoid: BTreeSet<_> = b.free_vars();
                avoid.insert(u.clone());
                let (payload2, l22) = rename_chain_avoiding(payload, l2, &avoid);
                for b2 in b.replace_one(u, &payload2) {
                    out.push((
                        SharingRule::Sls,
                        wrap_subs(sub(b2, u.clone(), prom(payload2.clone())), l22.clone()),
                    ));
                }
            }
            // !gc: t[u := (!s)L] → tL when u ∉ fv(t)
            let (core, chain) = arg.peel_subs();
            if matches!(core, SharingTerm::Prom(_)) && !b.free_vars().contains(u) {
                let (_, chain2) = rename_chain_avoiding(core, chain, &b.free_vars());
                out.push((SharingRule::Sgc, wrap_subs((**b).clone(), chain2)));
            }
        }
        _ => {}
    }
    out
}
