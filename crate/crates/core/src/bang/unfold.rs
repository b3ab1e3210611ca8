//! Dereliction unfolding ⋉: relates full Bang terms to simplified Bang
//! terms where each `der(t)` has been replaced by a one-shot explicit
//! substitution `x[x := t]`, possibly with extra garbage substitutions on
//! promoted arguments.

use crate::syntax::bang_term::{abs, app, prom, sub, var, BangTerm};
use crate::syntax::{Sort, VarName};

/// Decide `t ⋉ s` (dereliction unfolding). `s` must be simplified.
pub fn der_unfold(t: &BangTerm, s: &BangTerm) -> bool {
    s.is_simplified() && go(t, s, &mut Vec::new())
}

fn var_match(x: &VarName, y: &VarName, map: &[(VarName, VarName)]) -> bool {
    for (a, b) in map.iter().rev() {
        if a == x || b == y {
            return a == x && b == y;
        }
    }
    x == y
}

fn go(t: &BangTerm, s: &BangTerm, map: &mut Vec<(VarName, VarName)>) -> bool {
    use BangTerm::*;
    // garbage clause: t ⋉ s'[x := !r] when x not free in s'
    if let Sub(s1, x, r) = s {
        if matches!(&**r, Prom(_)) && !s1.free_vars().contains(x) && go(t, s1, map) {
            return true;
        }
    }
    // der clause: der(t') ⋉ x[x := s'] with x fresh for s'
    if let (Der(t1), Sub(body, x, s1)) = (t, s) {
        if matches!(&**body, Var(y) if y == x)
            && !s1.free_vars().contains(x)
            && go(t1, s1, map)
        {
            return true;
        }
    }
    // structural clauses
    match (t, s) {
        (Var(x), Var(y)) => var_match(x, y, map),
        (Abs(x, b), Abs(y, c)) => {
            map.push((x.clone(), y.clone()));
            let r = go(b, c, map);
            map.pop();
            r
        }
        (App(f, a), App(g, b)) => go(f, g, map) && go(a, b, map),
        (Prom(a), Prom(b)) => go(a, b, map),
        (Sub(b, x, a), Sub(c, y, d)) => {
            if !go(a, d, map) {
                return false;
            }
            map.push((x.clone(), y.clone()));
            let r = go(b, c, map);
            map.pop();
            r
        }
        _ => false,
    }
}

/// The canonical unfolding of `t`: each `der(r)` becomes `x[x := r']` with a
/// fixed binder name (no garbage clauses are used), so the result is the
/// smallest simplified term related to `t` by ⋉.
pub fn canonical_unfold(t: &BangTerm) -> BangTerm {
    use BangTerm::*;
    match t {
        Var(_) => t.clone(),
        Abs(x, b) => abs(x.clone(), canonical_unfold(b)),
        App(f, a) => app(canonical_unfold(f), canonical_unfold(a)),
        Prom(b) => prom(canonical_unfold(b)),
        Der(b) => {
            let ub = canonical_unfold(b);
            let x = crate::syntax::fresh_like(&VarName::new(Sort::Plain, "x"), &ub.free_vars());
            sub(var(x.clone()), x, ub)
        }
        Sub(b, x, a) => sub(canonical_unfold(b), x.clone(), canonical_unfold(a)),
    }
}
