//! The flattening congruence ≡, generated in every context by
//! `t[u := s[v := r]] ≡ t[u := s][v := r]` provided `v ∉ fv(t)`. The class of
//! a term is finite (the generator only re-associates ES nesting), so it is
//! computed by breadth-first closure under both orientations.

use std::collections::BTreeSet;

use crate::syntax::sharing_term::{
    abs, app, grant, prom, request, sub, SharingTerm,
};

/// One-step flattening neighbours of `t`, in both orientations, at every
/// position. Side conditions are checked on the given representative; the
/// class search canonicalizes first, which realizes the α-invariant reading
/// of the side condition (un-nesting can always rename the extruded binder,
/// nesting is blocked exactly when the substitution binds into the body).
fn flatten_neighbours(t: &SharingTerm) -> Vec<SharingTerm> {
    let mut out = Vec::new();
    if let SharingTerm::Sub(b, u, a) = t {
        // un-nest: t[u := s[v := r]] → t[u := s][v := r] if v ∉ fv(t)
        if let SharingTerm::Sub(s, v, r) = &**a {
            if !b.free_vars().contains(v) {
                out.push(sub(
                    sub((**b).clone(), u.clone(), (**s).clone()),
                    v.clone(),
                    (**r).clone(),
                ));
            }
        }
        // nest: t[u := s][v := r] → t[u := s[v := r]] if v ∉ fv(t)
        if let SharingTerm::Sub(bb, uu, s) = &**b {
            let v = u;
            if !bb.free_vars().contains(v) {
                out.push(sub(
                    (**bb).clone(),
                    uu.clone(),
                    sub((**s).clone(), v.clone(), (**a).clone()),
                ));
            }
        }
    }
    // congruence closure
    match t {
        SharingTerm::LVar(_) | SharingTerm::UVar(_) => {}
        SharingTerm::Abs(x, b) => {
            out.extend(flatten_neighbours(b).into_iter().map(|b2| abs(x.clone(), b2)));
        }
        SharingTerm::App(f, a) => {
            out.extend(
                flatten_neighbours(f)
                    .into_iter()
                    .map(|f2| app(f2, (**a).clone())),
            );
            out.extend(
                flatten_neighbours(a)
                    .into_iter()
                    .map(|a2| app((**f).clone(), a2)),
            );
        }
        SharingTerm::Grant(b) => out.extend(flatten_neighbours(b).into_iter().map(grant)),
        SharingTerm::Request(b) => out.extend(flatten_neighbours(b).into_iter().map(request)),
        SharingTerm::Prom(b) => out.extend(flatten_neighbours(b).into_iter().map(prom)),
        SharingTerm::Sub(b, u, a) => {
            out.extend(
                flatten_neighbours(b)
                    .into_iter()
                    .map(|b2| sub(b2, u.clone(), (**a).clone())),
            );
            out.extend(
                flatten_neighbours(a)
                    .into_iter()
                    .map(|a2| sub((**b).clone(), u.clone(), a2)),
            );
        }
    }
    out
}

/// The full ≡-equivalence class of `t` (deduplicated up to α). The search
/// runs on α-canonical representatives: canonical binder names are pairwise
/// distinct, so no generator instance is blocked by accidental shadowing.
pub fn flatten_class(t: &SharingTerm) -> Vec<SharingTerm> {
    let mut seen: BTreeSet<SharingTerm> = BTreeSet::new();
    let mut out = Vec::new();
    let mut queue = vec![t.canon()];
    while let Some(u) = queue.pop() {
        if !seen.insert(u.clone()) {
            continue;
        }
        queue.extend(flatten_neighbours(&u).into_iter().map(|w| w.canon()));
        out.push(u);
    }
    out
}

/// True iff `s` belongs to the ≡-class of `t`.
pub fn equiv_flatten(t: &SharingTerm, s: &SharingTerm) -> bool {
    let sc = s.canon();
    flatten_class(t).iter().any(|u| u.canon() == sc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sharing;

    fn p(s: &str) -> SharingTerm {
        parse_sharing(s).unwrap()
    }

    #[test]
    fn singleton_without_es() {
        assert_eq!(flatten_class(&p("'a")).len(), 1);
    }

    #[test]
    fn two_element_class() {
        let t = p("u0[v := (!~u1)[w := !u2]]");
        let class = flatten_class(&t);
        assert_eq!(class.len(), 2);
        assert!(equiv_flatten(&t, &p("u0[v := !~u1][w := !u2]")));
    }

    #[test]
    fn side_condition_gates_the_generator() {
        // the outer substitution binds w in the body, so nesting it into
        // the argument would change the binding structure: singleton class
        let t = p("w[v := u1][w := !u2]");
        assert_eq!(flatten_class(&t).len(), 1);
        assert!(!equiv_flatten(&t, &p("w[v := u1[w := !u2]]")));
    }

    #[test]
    fn unnesting_renames_the_extruded_binder() {
        // w is free in the body but the argument's binder w is renameable,
        // so the class still has two elements (terms are α-classes)
        let t = p("w[v := u1[w := !u2]]");
        let class = flatten_class(&t);
        assert_eq!(class.len(), 2);
        assert!(!equiv_flatten(&t, &p("w[v := u1][w := !u2]")));
    }

    #[test]
    fn class_membership_is_symmetric() {
        let a = p("u0[v := (!~u1)[w := !u2]]");
        let b = p("u0[v := !~u1][w := !u2]");
        assert!(equiv_flatten(&a, &b));
        assert!(equiv_flatten(&b, &a));
        assert!(!equiv_flatten(&a, &p("u0")));
    }
}
