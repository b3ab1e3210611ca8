//! Weak evaluation for the sharing calculus: no reduction under
//! λ-abstractions, grants, or promotions, except immediately below a
//! promotion via the !ς rule and inside needed promoted arguments via the
//! es! rule.

use std::collections::BTreeSet;

use super::rules::split_sharable_accessible;
use super::SharingRulename;
use crate::syntax::sharing_term::{
    app, prom, rename_chain_avoiding, request, sub, uvar, wrap_subs, SharingTerm,
};
use crate::syntax::{fresh_like, VarName};

/// Top-level weak-evaluation steps of `t` (rulenames !db, !ls, !gc, !req;
/// the auxiliary ς!/ι! derivations are internal).
pub fn weak_eval_sharing(t: &SharingTerm) -> Vec<(SharingRulename, SharingTerm)> {
    let mut out = Vec::new();
    match t {
        SharingTerm::App(f, s) => {
            // E!-db
            let (core, chain) = f.peel_subs();
            if let SharingTerm::Abs(_, _) = core {
                let (core2, chain2) = rename_chain_avoiding(core, chain, &s.free_vars());
                if let SharingTerm::Abs(a, b) = core2 {
                    out.push((SharingRulename::Sdb, wrap_subs(b.subst(&a, s), chain2)));
                }
            }
            // E!-app
            for (n, f2) in weak_eval_sharing(f) {
                out.push((n, app(f2, (**s).clone())));
            }
        }
        SharingTerm::Request(inner) => {
            // E!-req•
            let (core, chain) = inner.peel_subs();
            if let SharingTerm::Grant(s) = core {
                out.push((SharingRulename::Sreq, wrap_subs((*s).clone(), chain)));
            }
            // E!-req congruence
            for (n, i2) in weak_eval_sharing(inner) {
                out.push((n, request(i2)));
            }
        }
        SharingTerm::Sub(b, u, arg) => {
            // E!-ls from an internal ς!-derivation
            if let Some((payload, l2)) = split_sharable_accessible(arg) {
                let mut avoid: BTreeSet<_> = b.free_vars();
                avoid.insert(u.clone());
                let (payload2, l22) = rename_chain_avoiding(payload, l2, &avoid);
                for b2 in sharing_sigma_steps(b, u, &payload2) {
                    out.push((
                        SharingRulename::Sls,
                        wrap_subs(sub(b2, u.clone(), prom(payload2.clone())), l22.clone()),
                    ));
                }
            }
            // E!-gc
            let (core, chain) = arg.peel_subs();
            if matches!(core, SharingTerm::Prom(_)) && !b.free_vars().contains(u) {
                let (_, chain2) = rename_chain_avoiding(core, chain, &b.free_vars());
                out.push((SharingRulename::Sgc, wrap_subs((**b).clone(), chain2)));
            }
            // E!-esL: top-level rulenames have no free variables
            for (n, b2) in weak_eval_sharing(b) {
                out.push((n, sub(b2, u.clone(), (**arg).clone())));
            }
            // E!-esR
            for (n, a2) in weak_eval_sharing(arg) {
                out.push((n, sub((**b).clone(), u.clone(), a2)));
            }
            // E!-es!: evaluation below ! when the substitution is needed
            if let SharingTerm::Prom(s) = &**arg {
                if iota_bang_holds(b, u) {
                    for (n, s2) in weak_eval_sharing(s) {
                        out.push((n, sub((**b).clone(), u.clone(), prom(s2))));
                    }
                }
            }
        }
        _ => {}
    }
    out
}

/// The ς!-judgment: all `t'` with `t ⟶[ς![u/payload]] t'` (payload of shape
/// `(∂s)L`).
pub fn sharing_sigma_steps(
    t: &SharingTerm,
    u: &VarName,
    payload: &SharingTerm,
) -> Vec<SharingTerm> {
    match t {
        // E!-ς
        SharingTerm::UVar(y) if y == u => vec![payload.clone()],
        // E!-!ς
        SharingTerm::Prom(inner) => {
            if matches!(&**inner, SharingTerm::UVar(y) if y == u) {
                vec![prom(payload.clone())]
            } else {
                vec![]
            }
        }
        SharingTerm::App(f, a) => sharing_sigma_steps(f, u, payload)
            .into_iter()
            .map(|f2| app(f2, (**a).clone()))
            .collect(),
        SharingTerm::Request(inner) => sharing_sigma_steps(inner, u, payload)
            .into_iter()
            .map(request)
            .collect(),
        SharingTerm::Sub(b, y, r) => {
            let mut out = Vec::new();
            // E!-esL with y ∉ fv(ς![u/payload]): rename the binder if needed
            let mut name_fv = payload.free_vars();
            name_fv.insert(u.clone());
            let (y2, b2) = if name_fv.contains(y) {
                let mut avoid = name_fv.clone();
                avoid.extend(b.free_vars());
                avoid.extend(r.free_vars());
                let y2 = fresh_like(y, &avoid);
                (y2.clone(), b.subst(y, &uvar(y2)))
            } else {
                (y.clone(), (**b).clone())
            };
            out.extend(
                sharing_sigma_steps(&b2, u, payload)
                    .into_iter()
                    .map(|b3| sub(b3, y2.clone(), (**r).clone())),
            );
            // E!-esR
            out.extend(
                sharing_sigma_steps(r, u, payload)
                    .into_iter()
                    .map(|r2| sub((**b).clone(), y.clone(), r2)),
            );
            // E!-es!
            if let SharingTerm::Prom(s) = &**r {
                if iota_bang_holds(b, y) {
                    out.extend(
                        sharing_sigma_steps(s, u, payload)
                            .into_iter()
                            .map(|s2| sub((**b).clone(), y.clone(), prom(s2))),
                    );
                }
            }
            out
        }
        _ => vec![],
    }
}

/// The ι!-judgment: `u` is in evaluation position of `t`.
pub fn iota_bang_holds(t: &SharingTerm, u: &VarName) -> bool {
    match t {
        SharingTerm::UVar(y) => y == u,
        SharingTerm::App(f, _) => iota_bang_holds(f, u),
        SharingTerm::Request(inner) => iota_bang_holds(inner, u),
        SharingTerm::Sub(b, y, r) => {
            (y != u && iota_bang_holds(b, u))
                || iota_bang_holds(r, u)
                || match &**r {
                    SharingTerm::Prom(s) => iota_bang_holds(b, y) && iota_bang_holds(s, u),
                    _ => false,
                }
        }
        _ => false,
    }
}

/// All `t'` such that `t ⟶[name] t'` is derivable (including auxiliary
/// names).
pub fn weak_step_named_sharing(t: &SharingTerm, name: &SharingRulename) -> Vec<SharingTerm> {
    match name {
        SharingRulename::Ssigma(u, payload) => sharing_sigma_steps(t, u, payload),
        SharingRulename::Sid(u) => {
            if iota_bang_holds(t, u) {
                vec![t.clone()]
            } else {
                vec![]
            }
        }
        _ => weak_eval_sharing(t)
            .into_iter()
            .filter(|(n, _)| n == name)
            .map(|(_, t2)| t2)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sharing;

    fn p(s: &str) -> SharingTerm {
        parse_sharing(s).unwrap()
    }

    #[test]
    fn substitution_below_promotion() {
        let t = p("(!u)[u := !~v]");
        let steps = weak_eval_sharing(&t);
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].0, SharingRulename::Sls);
        assert!(steps[0].1.alpha_eq(&p("(!~v)[u := !~v]")));
    }

    #[test]
    fn evaluation_inside_needed_promoted_argument() {
        let t = p("(u v)[u := !((\\'a. 'a) (~w))]");
        let steps = weak_eval_sharing(&t);
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].0, SharingRulename::Sdb);
        assert!(steps[0].1.alpha_eq(&p("(u v)[u := !~w]")));
    }

    #[test]
    fn no_evaluation_under_lambda_or_boxes() {
        assert!(weak_eval_sharing(&p("\\'a. (\\'b. 'b) 'a")).is_empty());
        assert!(weak_eval_sharing(&p("~(open(~u))")).is_empty());
        assert!(weak_eval_sharing(&p("!(open(~u))")).is_empty());
    }

    #[test]
    fn req_congruence_passes_through() {
        let t = p("open(open(~(~u)))");
        let steps = weak_eval_sharing(&t);
        assert_eq!(steps.len(), 1);
        assert!(steps[0].1.alpha_eq(&p("open(~u)")));
    }
}
