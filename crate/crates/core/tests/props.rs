//! Randomized and exhaustive invariant tests for the syntax layer, the
//! reduction engines, and the translations. These complement the
//! acceptance suite with deeper random terms and side invariants.

use std::collections::HashSet;

use proptest::prelude::*;

use sharelam::lsc::{lsc_redexes, weak_eval_steps, Calculus, LscRule};
use sharelam::mscll::{neg, Formula};
use sharelam::oracle::{stream_bang, stream_lsc, stream_sharing};
use sharelam::sharing::{equiv_flatten, flatten_class, sharing_redexes};
use sharelam::syntax::bang_term::{self, BangTerm};
use sharelam::syntax::lsc_term::{self, pv, LscTerm};
use sharelam::syntax::sharing_term::{self, lv, uv, SharingTerm};
use sharelam::syntax::{parse_bang, parse_lsc, parse_sharing};
use sharelam::translations::{
    inverse_lsc_image, tra_cbn, tra_cbs, tra_cbv, TranslationKind,
};
use sharelam::VarName;

// ---------------------------------------------------------------------------
// generators

fn plain_name() -> impl Strategy<Value = VarName> {
    prop_oneof![Just(pv("x")), Just(pv("y")), Just(pv("z"))]
}

fn lsc_term() -> impl Strategy<Value = LscTerm> {
    let leaf = plain_name().prop_map(lsc_term::var);
    leaf.prop_recursive(5, 32, 3, |inner| {
        prop_oneof![
            (plain_name(), inner.clone()).prop_map(|(x, b)| lsc_term::abs(x, b)),
            (inner.clone(), inner.clone()).prop_map(|(f, a)| lsc_term::app(f, a)),
            (inner.clone(), plain_name(), inner.clone())
                .prop_map(|(b, x, a)| lsc_term::sub(b, x, a)),
        ]
    })
}

fn linear_name() -> impl Strategy<Value = VarName> {
    prop_oneof![Just(lv("a")), Just(lv("c"))]
}

fn unrestricted_name() -> impl Strategy<Value = VarName> {
    prop_oneof![Just(uv("u")), Just(uv("v"))]
}

fn sharing_term() -> impl Strategy<Value = SharingTerm> {
    let leaf = prop_oneof![
        linear_name().prop_map(sharing_term::lvar),
        unrestricted_name().prop_map(sharing_term::uvar),
    ];
    leaf.prop_recursive(5, 32, 3, |inner| {
        prop_oneof![
            (linear_name(), inner.clone()).prop_map(|(a, b)| sharing_term::abs(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(f, a)| sharing_term::app(f, a)),
            inner.clone().prop_map(sharing_term::grant),
            inner.clone().prop_map(sharing_term::request),
            inner.clone().prop_map(sharing_term::prom),
            (inner.clone(), unrestricted_name(), inner.clone())
                .prop_map(|(b, u, a)| sharing_term::sub(b, u, a)),
        ]
    })
}

fn bang_term_full() -> impl Strategy<Value = BangTerm> {
    let leaf = plain_name().prop_map(bang_term::var);
    leaf.prop_recursive(5, 32, 3, |inner| {
        prop_oneof![
            (plain_name(), inner.clone()).prop_map(|(x, b)| bang_term::abs(x, b)),
            (inner.clone(), inner.clone()).prop_map(|(f, a)| bang_term::app(f, a)),
            inner.clone().prop_map(bang_term::prom),
            inner.clone().prop_map(bang_term::der),
            (inner.clone(), plain_name(), inner.clone())
                .prop_map(|(b, x, a)| bang_term::sub(b, x, a)),
        ]
    })
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::PosAtom("a".into())),
        Just(Formula::NegAtom("a".into())),
        Just(Formula::PosAtom("b".into())),
        Just(Formula::NegAtom("b".into())),
    ];
    leaf.prop_recursive(6, 48, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::tensor(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::par(l, r)),
            inner.clone().prop_map(Formula::ofcourse),
            inner.clone().prop_map(Formula::whynot),
            inner.clone().prop_map(Formula::grantf),
            inner.clone().prop_map(Formula::demandf),
        ]
    })
}

// ---------------------------------------------------------------------------
// printing and parsing

proptest! {
    #[test]
    fn lsc_print_parse_round_trip(t in lsc_term()) {
        prop_assert_eq!(parse_lsc(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn sharing_print_parse_round_trip(t in sharing_term()) {
        prop_assert_eq!(parse_sharing(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn bang_print_parse_round_trip(t in bang_term_full()) {
        prop_assert_eq!(parse_bang(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn canon_is_alpha_invariant_and_idempotent(t in lsc_term()) {
        prop_assert!(t.canon().alpha_eq(&t));
        prop_assert_eq!(t.canon().canon(), t.canon());
    }

    #[test]
    fn subst_controls_free_vars(t in lsc_term(), s in lsc_term(), x in plain_name()) {
        let r = t.subst(&x, &s);
        let mut allowed = t.free_vars();
        allowed.remove(&x);
        if t.free_vars().contains(&x) {
            allowed.extend(s.free_vars());
        }
        prop_assert!(r.free_vars().is_subset(&allowed));
        if !t.free_vars().contains(&x) {
            prop_assert!(r.alpha_eq(&t));
        }
    }

    #[test]
    fn sharing_reduction_preserves_linear_free_vars(t in sharing_term()) {
        for (_, s) in sharing_redexes(&t) {
            // reduction can only drop unrestricted variables
            prop_assert!(s.free_vars().is_subset(&t.free_vars()));
        }
    }

    #[test]
    fn flatten_class_is_symmetric(t in sharing_term()) {
        for u in flatten_class(&t) {
            prop_assert!(equiv_flatten(&t, &u));
            prop_assert!(equiv_flatten(&u, &t));
            prop_assert!(flatten_class(&u).iter().any(|w| w.alpha_eq(&t)));
        }
    }

    #[test]
    fn negation_is_involutive(f in formula()) {
        prop_assert_eq!(neg(&neg(&f)), f.clone());
        prop_assert_eq!(neg(&Formula::ofcourse(f.clone())), Formula::whynot(neg(&f)));
        prop_assert_eq!(neg(&Formula::grantf(f.clone())), Formula::demandf(neg(&f)));
    }

    #[test]
    fn translations_invert_on_random_terms(t in lsc_term()) {
        for kind in [TranslationKind::Cbn, TranslationKind::Cbv, TranslationKind::Cbs] {
            let image = match kind {
                TranslationKind::Cbn => tra_cbn(&t),
                TranslationKind::Cbv => tra_cbv(&t),
                TranslationKind::Cbs => tra_cbs(&t),
                TranslationKind::Bang => unreachable!(),
            };
            prop_assert!(inverse_lsc_image(&image, kind).unwrap().alpha_eq(&t));
        }
    }
}

// ---------------------------------------------------------------------------
// exhaustive side invariants at desk scale

/// Exhaustive print/parse round trip on small terms of all three languages.
#[test]
fn print_parse_round_trip_exhaustive() {
    let lpool = vec![pv("x"), pv("y")];
    for n in 1..=8 {
        stream_lsc(n, &lpool, &mut |t| {
            assert_eq!(parse_lsc(&t.to_string()).unwrap(), t, "{t}");
        });
        stream_bang(n, &lpool, true, &mut |t| {
            assert_eq!(parse_bang(&t.to_string()).unwrap(), t, "{t}");
        });
    }
    let spool = vec![uv("u"), uv("v"), lv("a"), lv("c")];
    for n in 1..=7 {
        stream_sharing(n, &spool, &mut |t| {
            assert_eq!(parse_sharing(&t.to_string()).unwrap(), t, "{t}");
        });
    }
}

/// Weak evaluation is contained in the full calculus reduction, size ≤ 8.
#[test]
fn weak_eval_contained_in_calculus_reduction() {
    let pool = vec![pv("x"), pv("y")];
    for n in 1..=8 {
        stream_lsc(n, &pool, &mut |t| {
            for calc in [Calculus::Cbn, Calculus::Cbv, Calculus::Cbs] {
                let succ = lsc_redexes(&t, calc);
                for (_, t2) in weak_eval_steps(&t, calc) {
                    assert!(
                        succ.iter().any(|(_, u)| u.alpha_eq(&t2)),
                        "{calc:?}: {t} -> {t2}"
                    );
                }
            }
        });
    }
}

/// The step from `a` to `b` did not happen inside a λ-body: either the terms
/// agree, or the outermost disagreement is reached without crossing an Abs.
fn diff_not_under_lambda(a: &LscTerm, b: &LscTerm) -> bool {
    if a.alpha_eq(b) {
        return true;
    }
    match (a, b) {
        (LscTerm::Abs(_, _), LscTerm::Abs(_, _)) => false,
        (LscTerm::App(f1, a1), LscTerm::App(f2, a2)) => {
            if f1.alpha_eq(f2) {
                diff_not_under_lambda(a1, a2)
            } else if a1.alpha_eq(a2) {
                diff_not_under_lambda(f1, f2)
            } else {
                true // a root rewrite rearranged both children
            }
        }
        (LscTerm::Sub(b1, _, s1), LscTerm::Sub(b2, _, s2)) => {
            if b1.alpha_eq(b2) {
                diff_not_under_lambda(s1, s2)
            } else if s1.alpha_eq(s2) {
                diff_not_under_lambda(b1, b2)
            } else {
                true
            }
        }
        _ => true,
    }
}

/// CBN weak evaluation never contracts a redex under a λ, size ≤ 7.
#[test]
fn cbn_weak_eval_stays_outside_lambdas() {
    let pool = vec![pv("x"), pv("y")];
    for n in 1..=7 {
        stream_lsc(n, &pool, &mut |t| {
            if matches!(t, LscTerm::Abs(_, _)) {
                assert!(weak_eval_steps(&t, Calculus::Cbn).is_empty(), "{t}");
            }
            for (_, t2) in weak_eval_steps(&t, Calculus::Cbn) {
                assert!(diff_not_under_lambda(&t, &t2), "{t} -> {t2}");
            }
        });
    }
}

/// Gc steps postpone in CBN: any gc-then-{db,ls} peak reorders to the other
/// rule first followed by gc steps, size ≤ 7.
#[test]
fn cbn_gc_steps_postpone() {
    fn gc_closure(t: &LscTerm) -> Vec<LscTerm> {
        let mut out = vec![t.canon()];
        let mut seen: HashSet<String> = out.iter().map(|u| u.to_string()).collect();
        let mut i = 0;
        while i < out.len() {
            for (r, u) in lsc_redexes(&out[i], Calculus::Cbn) {
                if r == LscRule::Gc {
                    let c = u.canon();
                    if seen.insert(c.to_string()) {
                        out.push(c);
                    }
                }
            }
            i += 1;
        }
        out
    }
    let pool = vec![pv("x"), pv("y")];
    for n in 1..=7 {
        stream_lsc(n, &pool, &mut |t| {
            let steps = lsc_redexes(&t, Calculus::Cbn);
            for (r1, s) in &steps {
                if *r1 != LscRule::Gc {
                    continue;
                }
                for (r2, target) in lsc_redexes(s, Calculus::Cbn) {
                    if r2 == LscRule::Gc {
                        continue;
                    }
                    let ok = steps.iter().any(|(ra, u)| {
                        *ra == r2 && gc_closure(u).iter().any(|w| w.alpha_eq(&target))
                    });
                    assert!(ok, "{t} --gc--> {s} --{r2}--> {target}");
                }
            }
        });
    }
}
