//! The fusion relation ⇛ on LSC terms: one-step extrusion, merging and
//! dropping of explicit substitutions, closed under arbitrary contexts.
//! Side conditions that only express binder hygiene are discharged by
//! α-renaming; genuine scope-escape conditions block the rule.

use std::collections::BTreeSet;

use crate::syntax::lsc_term::{abs, app, sub, var, LscTerm};
use crate::syntax::{fresh_like, VarName};

/// All one-step ⇛¹ successors of `t`.
pub fn fusion_steps(t: &LscTerm) -> Vec<LscTerm> {
    let mut out = root_fusions(t);
    match t {
        LscTerm::Var(_) => {}
        LscTerm::Abs(x, b) => {
            for b2 in fusion_steps(b) {
                out.push(abs(x.clone(), b2));
            }
        }
        LscTerm::App(f, a) => {
            for f2 in fusion_steps(f) {
                out.push(app(f2, (**a).clone()));
            }
            for a2 in fusion_steps(a) {
                out.push(app((**f).clone(), a2));
            }
        }
        LscTerm::Sub(b, x, a) => {
            for b2 in fusion_steps(b) {
                out.push(sub(b2, x.clone(), (**a).clone()));
            }
            for a2 in fusion_steps(a) {
                out.push(sub((**b).clone(), x.clone(), a2));
            }
        }
    }
    out
}

/// Rename the binder of `Sub(b, x, _)` away from `avoid`, returning the new
/// binder and body.
fn rename_off(x: &VarName, b: &LscTerm, avoid: &BTreeSet<VarName>) -> (VarName, LscTerm) {
    if avoid.contains(x) {
        let mut full = avoid.clone();
        full.extend(b.free_vars());
        let x2 = fresh_like(x, &full);
        (x2.clone(), b.subst(x, &var(x2)))
    } else {
        (x.clone(), b.clone())
    }
}

fn root_fusions(t: &LscTerm) -> Vec<LscTerm> {
    let mut out = Vec::new();
    match t {
        // ⇛w and the ES-ES rules
        LscTerm::Sub(body, y, r) => {
            // ⇛w: t[y := r] ⇛ t if y ∉ fv(t)
            if !body.free_vars().contains(y) {
                out.push((**body).clone());
            }
            if let LscTerm::Sub(b, x, s) = &**body {
                // ⇛c: t[x := s][y := s] ⇛ t{x := y}[y := s]
                // (y ∉ fv(s) is genuine: the inner copy sits under y's binder)
                if !s.free_vars().contains(y) && s.alpha_eq(r) {
                    out.push(sub(b.subst(x, &var(y.clone())), y.clone(), (**r).clone()));
                }
                // ⇛esL: t[x := s][y := r] ⇛ t[y := r][x := s]
                // y ∉ fv(s) is genuine; x ∉ fv(r) resolves by renaming x.
                if !s.free_vars().contains(y) {
                    let mut avoid = r.free_vars();
                    avoid.insert(y.clone());
                    let (x2, b2) = rename_off(x, b, &avoid);
                    out.push(sub(
                        sub(b2, y.clone(), (**r).clone()),
                        x2,
                        (**s).clone(),
                    ));
                }
            }
            // ⇛esR: t[y := s[z := q]] ⇛ t[y := s][z := q]
            // z ∉ fv(t) always resolves by renaming z.
            if let LscTerm::Sub(s, z, q) = &**r {
                let mut avoid = body.free_vars();
                avoid.insert(y.clone());
                let (z2, s2) = rename_off(z, s, &avoid);
                out.push(sub(
                    sub((**body).clone(), y.clone(), s2),
                    z2,
                    (**q).clone(),
                ));
            }
        }
        // ⇛abs: λx.(t[y := s]) ⇛ (λx.t)[y := s] if x ∉ fv(s) (genuine)
        LscTerm::Abs(x, body) => {
            if let LscTerm::Sub(b, y, s) = &**body {
                if !s.free_vars().contains(x) {
                    let avoid: BTreeSet<_> = [x.clone()].into();
                    let (y2, b2) = rename_off(y, b, &avoid);
                    out.push(sub(abs(x.clone(), b2), y2, (**s).clone()));
                }
            }
        }
        LscTerm::App(f, a) => {
            // ⇛appL: (t[x := s]) r ⇛ (t r)[x := s]; x ∉ fv(r) resolvable
            if let LscTerm::Sub(b, x, s) = &**f {
                let (x2, b2) = rename_off(x, b, &a.free_vars());
                out.push(sub(app(b2, (**a).clone()), x2, (**s).clone()));
            }
            // ⇛appR: t (r[x := s]) ⇛ (t r)[x := s]; x ∉ fv(t) resolvable
            if let LscTerm::Sub(b, x, s) = &**a {
                let (x2, b2) = rename_off(x, b, &f.free_vars());
                out.push(sub(app((**f).clone(), b2), x2, (**s).clone()));
            }
        }
        _ => {}
    }
    out
}

/// Reflexive-transitive fusion closure of `t` (the set of all ⇛-reachable
/// terms), with membership keyed on α-classes.
pub fn fusion_closure(t: &LscTerm) -> Vec<LscTerm> {
    let mut seen: BTreeSet<LscTerm> = BTreeSet::new();
    let mut out = Vec::new();
    let mut stack = vec![t.clone()];
    while let Some(u) = stack.pop() {
        if !seen.insert(u.canon()) {
            continue;
        }
        for v in fusion_steps(&u) {
            stack.push(v);
        }
        out.push(u);
    }
    out
}
