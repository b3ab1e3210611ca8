//! Weak-evaluation judgments for CBN, CBV and CBS. Top-level steps carry the
//! calculus rulenames (db/ls/gc, db/lsv/gcvlax, db/lsw/gc); the auxiliary
//! ς/ι sub-derivations are exposed through [`sigma_steps`] and
//! [`cbs_iota_holds`] and through [`weak_step_named`].

use std::collections::BTreeSet;

use super::{is_value, Calculus, LscRulename, ValueClass};
use crate::syntax::lsc_term::{app, rename_chain_avoiding, sub, var, wrap_subs, LscTerm};
use crate::syntax::{fresh_like, VarName};

/// Top-level weak-evaluation steps of `t` in the given calculus. CBNd has no
/// weak-evaluation system; it returns no steps.
pub fn weak_eval_steps(t: &LscTerm, calc: Calculus) -> Vec<(LscRulename, LscTerm)> {
    match calc {
        Calculus::Cbn => cbn_steps(t),
        Calculus::Cbv => cbv_steps(t),
        Calculus::Cbs => cbs_steps(t),
        Calculus::Cbnd => Vec::new(),
    }
}

/// All `t'` such that `t ⟶[name] t'` is derivable in the calculus's weak
/// judgment (including auxiliary ς/ι names).
pub fn weak_step_named(t: &LscTerm, calc: Calculus, name: &LscRulename) -> Vec<LscTerm> {
    match name {
        LscRulename::Sigma(x, payload) => sigma_steps(t, calc, x, payload),
        LscRulename::Iota(x) => {
            if calc == Calculus::Cbs && cbs_iota_holds(t, x) {
                vec![t.clone()]
            } else {
                vec![]
            }
        }
        _ => weak_eval_steps(t, calc)
            .into_iter()
            .filter(|(n, _)| n == name)
            .map(|(_, t2)| t2)
            .collect(),
    }
}

/// Auxiliary ς-derivations: all `t'` with `t ⟶[ς[x/payload]] t'`.
pub fn sigma_steps(
    t: &LscTerm,
    calc: Calculus,
    x: &VarName,
    payload: &LscTerm,
) -> Vec<LscTerm> {
    match calc {
        Calculus::Cbn => cbn_sigma(t, x, payload),
        Calculus::Cbv => cbv_sigma(t, x, payload),
        Calculus::Cbs => cbs_sigma(t, x, payload),
        Calculus::Cbnd => Vec::new(),
    }
}

/// Rename the binder of an ES whose body we are about to thread a ς/ι name
/// through, so the side condition `binder ∉ fv(name)` holds.
fn unshadow_for_name(
    y: &VarName,
    b: &LscTerm,
    r: &LscTerm,
    name_fv: &BTreeSet<VarName>,
) -> (VarName, LscTerm) {
    if name_fv.contains(y) {
        let mut avoid: BTreeSet<VarName> = name_fv.clone();
        avoid.extend(b.free_vars());
        avoid.extend(r.free_vars());
        let y2 = fresh_like(y, &avoid);
        (y2.clone(), b.subst(y, &var(y2)))
    } else {
        (y.clone(), b.clone())
    }
}

// ---------------------------------------------------------------------------
// CBN

fn cbn_steps(t: &LscTerm) -> Vec<(LscRulename, LscTerm)> {
    let mut out = Vec::new();
    match t {
        LscTerm::App(f, s) => {
            // E-db: (λx.b)L s → b[x := s]L
            let (core, chain) = f.peel_subs();
            if let LscTerm::Abs(_, _) = core {
                let (core2, chain2) = rename_chain_avoiding(core, chain, &s.free_vars());
                if let LscTerm::Abs(x, b) = core2 {
                    out.push((
                        LscRulename::Db,
                        wrap_subs(sub((*b).clone(), x, (**s).clone()), chain2),
                    ));
                }
            }
            // E-app: left congruence
            for (n, f2) in cbn_steps(f) {
                out.push((n, app(f2, (**s).clone())));
            }
        }
        LscTerm::Sub(b, x, s) => {
            // E-ls from an internal ς-derivation
            for b2 in cbn_sigma(b, x, s) {
                out.push((LscRulename::Ls, sub(b2, x.clone(), (**s).clone())));
            }
            // E-gc
            if !b.free_vars().contains(x) {
                out.push((LscRulename::Gc, (**b).clone()));
            }
            // E-subL: the top-level names have no free variables
            for (n, b2) in cbn_steps(b) {
                out.push((n, sub(b2, x.clone(), (**s).clone())));
            }
        }
        _ => {}
    }
    out
}

fn cbn_sigma(t: &LscTerm, x: &VarName, s: &LscTerm) -> Vec<LscTerm> {
    match t {
        LscTerm::Var(y) if y == x => vec![s.clone()],
        LscTerm::App(f, a) => cbn_sigma(f, x, s)
            .into_iter()
            .map(|f2| app(f2, (**a).clone()))
            .collect(),
        LscTerm::Sub(b, y, r) => {
            if y == x {
                return vec![];
            }
            let mut name_fv = s.free_vars();
            name_fv.insert(x.clone());
            let (y2, b2) = unshadow_for_name(y, b, r, &name_fv);
            cbn_sigma(&b2, x, s)
                .into_iter()
                .map(|b3| sub(b3, y2.clone(), (**r).clone()))
                .collect()
        }
        _ => vec![],
    }
}

// ---------------------------------------------------------------------------
// CBV

fn cbv_steps(t: &LscTerm) -> Vec<(LscRulename, LscTerm)> {
    let mut out = Vec::new();
    match t {
        LscTerm::App(f, s) => {
            let (core, chain) = f.peel_subs();
            if let LscTerm::Abs(_, _) = core {
                let (core2, chain2) = rename_chain_avoiding(core, chain, &s.free_vars());
                if let LscTerm::Abs(x, b) = core2 {
                    out.push((
                        LscRulename::Db,
                        wrap_subs(sub((*b).clone(), x, (**s).clone()), chain2),
                    ));
                }
            }
            for (n, f2) in cbv_steps(f) {
                out.push((n, app(f2, (**s).clone())));
            }
        }
        LscTerm::Sub(b, x, arg) => {
            let (core, chain) = arg.peel_subs();
            // E-lsv: body ς-step with the strict value core
            if is_value(&core, ValueClass::Strict) {
                let mut avoid = b.free_vars();
                avoid.insert(x.clone());
                let (core2, chain2) = rename_chain_avoiding(core.clone(), chain.clone(), &avoid);
                for b2 in cbv_sigma(b, x, &core2) {
                    out.push((
                        LscRulename::Lsv,
                        wrap_subs(sub(b2, x.clone(), core2.clone()), chain2.clone()),
                    ));
                }
            }
            // E-gcvlax
            if is_value(&core, ValueClass::Lax) && !b.free_vars().contains(x) {
                let (_, chain2) = rename_chain_avoiding(core, chain, &b.free_vars());
                out.push((LscRulename::GcvLax, wrap_subs((**b).clone(), chain2)));
            }
            // E-subL then E-subR (the documented nondeterminism)
            for (n, b2) in cbv_steps(b) {
                out.push((n, sub(b2, x.clone(), (**arg).clone())));
            }
            for (n, a2) in cbv_steps(arg) {
                out.push((n, sub((**b).clone(), x.clone(), a2)));
            }
        }
        _ => {}
    }
    out
}

fn cbv_sigma(t: &LscTerm, x: &VarName, v: &LscTerm) -> Vec<LscTerm> {
    match t {
        LscTerm::Var(y) if y == x => vec![v.clone()],
        LscTerm::App(f, a) => cbv_sigma(f, x, v)
            .into_iter()
            .map(|f2| app(f2, (**a).clone()))
            .collect(),
        LscTerm::Sub(b, y, r) => {
            let mut out = Vec::new();
            if y != x {
                let mut name_fv = v.free_vars();
                name_fv.insert(x.clone());
                let (y2, b2) = unshadow_for_name(y, b, r, &name_fv);
                out.extend(
                    cbv_sigma(&b2, x, v)
                        .into_iter()
                        .map(|b3| sub(b3, y2.clone(), (**r).clone())),
                );
            }
            // E-subR congruence also threads ς-steps through the argument.
            out.extend(
                cbv_sigma(r, x, v)
                    .into_iter()
                    .map(|r2| sub((**b).clone(), y.clone(), r2)),
            );
            out
        }
        _ => vec![],
    }
}

// ---------------------------------------------------------------------------
// CBS

fn cbs_steps(t: &LscTerm) -> Vec<(LscRulename, LscTerm)> {
    let mut out = Vec::new();
    match t {
        LscTerm::App(f, s) => {
            let (core, chain) = f.peel_subs();
            if let LscTerm::Abs(_, _) = core {
                let (core2, chain2) = rename_chain_avoiding(core, chain, &s.free_vars());
                if let LscTerm::Abs(x, b) = core2 {
                    out.push((
                        LscRulename::Db,
                        wrap_subs(sub((*b).clone(), x, (**s).clone()), chain2),
                    ));
                }
            }
            for (n, f2) in cbs_steps(f) {
                out.push((n, app(f2, (**s).clone())));
            }
        }
        LscTerm::Sub(b, x, arg) => {
            let (core, _) = arg.peel_subs();
            // E-lsw: copy the whole answer vL
            if is_value(&core, ValueClass::Strict) {
                for b2 in cbs_sigma(b, x, arg) {
                    out.push((LscRulename::Lsw, sub(b2, x.clone(), (**arg).clone())));
                }
            }
            // E-gc (no value restriction)
            if !b.free_vars().contains(x) {
                out.push((LscRulename::Gc, (**b).clone()));
            }
            // E-subL
            for (n, b2) in cbs_steps(b) {
                out.push((n, sub(b2, x.clone(), (**arg).clone())));
            }
            // E-subR requires the binder to be needed (ι-premise)
            if cbs_iota_holds(b, x) {
                for (n, a2) in cbs_steps(arg) {
                    out.push((n, sub((**b).clone(), x.clone(), a2)));
                }
            }
        }
        _ => {}
    }
    out
}

fn cbs_sigma(t: &LscTerm, x: &VarName, answer: &LscTerm) -> Vec<LscTerm> {
    let mut out: Vec<LscTerm> = Vec::new();
    match t {
        LscTerm::Var(y) if y == x => out.push(answer.clone()),
        LscTerm::App(f, a) => out.extend(
            cbs_sigma(f, x, answer)
                .into_iter()
                .map(|f2| app(f2, (**a).clone())),
        ),
        LscTerm::Sub(b, y, r) => {
            // ς₂: t[y := x] ⟶ t[y := vL]
            if **r == LscTerm::Var(x.clone()) {
                out.push(sub((**b).clone(), y.clone(), answer.clone()));
            }
            // subL
            if y != x {
                let mut name_fv = answer.free_vars();
                name_fv.insert(x.clone());
                let (y2, b2) = unshadow_for_name(y, b, r, &name_fv);
                out.extend(
                    cbs_sigma(&b2, x, answer)
                        .into_iter()
                        .map(|b3| sub(b3, y2.clone(), (**r).clone())),
                );
            }
            // subR with the ι-premise on the body
            if cbs_iota_holds(b, y) {
                for r2 in cbs_sigma(r, x, answer) {
                    let cand = sub((**b).clone(), y.clone(), r2);
                    if !out.contains(&cand) {
                        out.push(cand);
                    }
                }
            }
        }
        _ => {}
    }
    out
}

/// The CBS ι-judgment: `x` occurs in evaluation position of `t`.
pub fn cbs_iota_holds(t: &LscTerm, x: &VarName) -> bool {
    match t {
        LscTerm::Var(y) => y == x,
        LscTerm::App(f, _) => cbs_iota_holds(f, x),
        LscTerm::Sub(b, y, r) => {
            (y != x && cbs_iota_holds(b, x))
                || (cbs_iota_holds(b, y) && cbs_iota_holds(r, x))
        }
        _ => false,
    }
}

/// Decide one step of the ▷V extension: `w` is obtained from `u` by
/// inserting a dead `[x := v^lax]` substitution at an evaluation position
/// (the inverse of a gcvlax step, closed under the CBV congruence rules).
pub fn is_gcvlax_inv_step(u: &LscTerm, w: &LscTerm) -> bool {
    // Root insertion: w = u'[x := v^lax L?] with x ∉ fv(u') and u' ≡α u.
    if let LscTerm::Sub(b, x, arg) = w {
        let (core, _) = arg.peel_subs();
        if is_value(&core, ValueClass::Lax) && !b.free_vars().contains(x) && b.alpha_eq(u) {
            return true;
        }
    }
    match (u, w) {
        (LscTerm::App(f1, a1), LscTerm::App(f2, a2)) => {
            a1.alpha_eq(a2) && is_gcvlax_inv_step(f1, f2)
        }
        (LscTerm::Sub(b1, x1, a1), LscTerm::Sub(b2, x2, a2)) => {
            // subL / subR congruences (up to renaming of the shared binder)
            let mut avoid = b1.free_vars();
            avoid.extend(b2.free_vars());
            avoid.extend(a1.free_vars());
            avoid.extend(a2.free_vars());
            let fresh = crate::syntax::fresh_like(x1, &avoid);
            let c1 = b1.subst(x1, &var(fresh.clone()));
            let c2 = b2.subst(x2, &var(fresh));
            (a1.alpha_eq(a2) && is_gcvlax_inv_step(&c1, &c2))
                || (c1.alpha_eq(&c2) && is_gcvlax_inv_step(a1, a2))
        }
        _ => false,
    }
}
