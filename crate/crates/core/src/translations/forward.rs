//! Forward translations into the sharing calculus. Plain source variables
//! are relabelled as unrestricted sharing variables; every introduced λ
//! binder is the linear variable 'a (always fresh, since source terms have
//! no free linear variables).

use crate::bang::BType;
use crate::lsc::SimpleType;
use crate::sharing::SharingType;
use crate::syntax::bang_term::BangTerm;
use crate::syntax::lsc_term::LscTerm;
use crate::syntax::sharing_term::{
    abs, app, grant, lvar, prom, request, sub, uvar, SharingTerm,
};
use crate::syntax::{fresh_like, Sort, VarName};

use super::TranslationError;

/// Relabel a plain source variable as an unrestricted sharing variable.
pub(crate) fn urel(x: &VarName) -> VarName {
    x.with_sort(Sort::Unrestricted)
}

/// The canonical linear binder introduced by the translations.
pub(crate) fn la() -> VarName {
    VarName::new(Sort::Linear, "a")
}

/// `λa. body[x := a]` — the shared abstraction pattern of all translations.
fn lam_pattern(body: SharingTerm, x: &VarName) -> SharingTerm {
    abs(la(), sub(body, urel(x), lvar(la())))
}

/// The CBN translation: `x ↦ open(x)`, `λx.t ↦ λa. t°[x := a]`,
/// `t s ↦ t° !~s°`, `t[x := s] ↦ t°[x := !~s°]`.
pub fn tra_cbn(t: &LscTerm) -> SharingTerm {
    match t {
        LscTerm::Var(x) => request(uvar(urel(x))),
        LscTerm::Abs(x, b) => lam_pattern(tra_cbn(b), x),
        LscTerm::App(f, s) => app(tra_cbn(f), prom(grant(tra_cbn(s)))),
        LscTerm::Sub(b, x, s) => sub(tra_cbn(b), urel(x), prom(grant(tra_cbn(s)))),
    }
}

/// `A -> B ↦ !~A° ⊸ B°`.
pub fn tra_cbn_type(a: &SimpleType) -> SharingType {
    match a {
        SimpleType::Atom(x) => SharingType::Atom(x.clone()),
        SimpleType::Arrow(d, c) => SharingType::lolli(
            SharingType::bang(SharingType::grant(tra_cbn_type(d))),
            tra_cbn_type(c),
        ),
    }
}

/// The CBV translation: `x ↦ !x`, `λx.t ↦ !~(λa. t*[x := a])`,
/// `t s ↦ open(u)[u := t*] s*` (u fresh), ES homomorphic.
pub fn tra_cbv(t: &LscTerm) -> SharingTerm {
    match t {
        LscTerm::Var(x) => prom(uvar(urel(x))),
        LscTerm::Abs(x, b) => prom(grant(lam_pattern(tra_cbv(b), x))),
        LscTerm::App(f, s) => {
            let tf = tra_cbv(f);
            let ts = tra_cbv(s);
            let mut avoid = tf.free_vars();
            avoid.extend(ts.free_vars());
            let u0 = VarName::new(Sort::Unrestricted, "u");
            let u = if avoid.contains(&u0) {
                fresh_like(&u0, &avoid)
            } else {
                u0
            };
            app(sub(request(uvar(u.clone())), u, tf), ts)
        }
        LscTerm::Sub(b, x, s) => sub(tra_cbv(b), urel(x), tra_cbv(s)),
    }
}

/// `A -> B ↦ !~A* ⊸ !~B*`.
pub fn tra_cbv_type(a: &SimpleType) -> SharingType {
    match a {
        SimpleType::Atom(x) => SharingType::Atom(x.clone()),
        SimpleType::Arrow(d, c) => SharingType::lolli(
            SharingType::bang(SharingType::grant(tra_cbv_type(d))),
            SharingType::bang(SharingType::grant(tra_cbv_type(c))),
        ),
    }
}

/// The CBS translation: `x ↦ x`, `λx.t ↦ ~(λa. t⁺[x := a])`,
/// `t s ↦ open(t⁺) !s⁺`, `t[x := s] ↦ t⁺[x := !s⁺]`.
pub fn tra_cbs(t: &LscTerm) -> SharingTerm {
    match t {
        LscTerm::Var(x) => uvar(urel(x)),
        LscTerm::Abs(x, b) => grant(lam_pattern(tra_cbs(b), x)),
        LscTerm::App(f, s) => app(request(tra_cbs(f)), prom(tra_cbs(s))),
        LscTerm::Sub(b, x, s) => sub(tra_cbs(b), urel(x), prom(tra_cbs(s))),
    }
}

/// `A -> B ↦ !~A⁺ ⊸ ~B⁺`.
pub fn tra_cbs_type(a: &SimpleType) -> SharingType {
    match a {
        SimpleType::Atom(x) => SharingType::Atom(x.clone()),
        SimpleType::Arrow(d, c) => SharingType::lolli(
            SharingType::bang(SharingType::grant(tra_cbs_type(d))),
            SharingType::grant(tra_cbs_type(c)),
        ),
    }
}

/// The Bang translation on simplified terms: `x ↦ open(x)`,
/// `λx.t ↦ λa. tᴮ[x := a]`, app/ES homomorphic, `!t ↦ !~tᴮ`.
pub fn tra_bang(t: &BangTerm) -> Result<SharingTerm, TranslationError> {
    match t {
        BangTerm::Var(x) => Ok(request(uvar(urel(x)))),
        BangTerm::Abs(x, b) => Ok(lam_pattern(tra_bang(b)?, x)),
        BangTerm::App(f, s) => Ok(app(tra_bang(f)?, tra_bang(s)?)),
        BangTerm::Prom(b) => Ok(prom(grant(tra_bang(b)?))),
        BangTerm::Der(_) => Err(TranslationError::DerNotSupported),
        BangTerm::Sub(b, x, s) => Ok(sub(tra_bang(b)?, urel(x), tra_bang(s)?)),
    }
}

/// `α ↦ α`, `!A ↦ !~Aᴮ`, `!A -> B ↦ !~Aᴮ ⊸ Bᴮ`.
pub fn tra_bang_type(a: &BType) -> SharingType {
    match a {
        BType::Atom(x) => SharingType::Atom(x.clone()),
        BType::BangT(inner) => SharingType::bang(SharingType::grant(tra_bang_type(inner))),
        BType::ArrowBang(d, c) => SharingType::lolli(tra_bang_type(d), tra_bang_type(c)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_bang, parse_lsc, parse_sharing};

    fn lsc(s: &str) -> LscTerm {
        parse_lsc(s).unwrap()
    }

    fn sh(s: &str) -> SharingTerm {
        parse_sharing(s).unwrap()
    }

    #[test]
    fn cbn_clauses() {
        assert_eq!(tra_cbn(&lsc("x")), sh("open(x)"));
        assert_eq!(tra_cbn(&lsc("\\x. x")).to_string(), "\\'a. open(x)[x := 'a]");
        assert_eq!(tra_cbn(&lsc("x y")), sh("open(x) (!~(open(y)))"));
    }

    #[test]
    fn cbv_clauses() {
        assert_eq!(tra_cbv(&lsc("x")), sh("!x"));
        assert_eq!(tra_cbv(&lsc("x y")), sh("open(u)[u := !x] (!y)"));
        assert_eq!(
            tra_cbv(&lsc("\\x. x")).to_string(),
            "!~(\\'a. (!x)[x := 'a])"
        );
        // the fresh application variable dodges u when u occurs in the source
        assert_eq!(tra_cbv(&lsc("u y")), sh("open(u0)[u0 := !u] (!y)"));
    }

    #[test]
    fn cbs_clauses() {
        assert_eq!(tra_cbs(&lsc("x")), sh("x"));
        assert_eq!(tra_cbs(&lsc("x y")), sh("open(x) (!y)"));
        assert_eq!(tra_cbs(&lsc("\\x. x")).to_string(), "~(\\'a. x[x := 'a])");
    }

    #[test]
    fn bang_clauses() {
        assert_eq!(tra_bang(&parse_bang("!x").unwrap()), Ok(sh("!~(open(x))")));
        assert_eq!(
            tra_bang(&parse_bang("x y").unwrap()),
            Ok(sh("open(x) open(y)"))
        );
        assert_eq!(
            tra_bang(&parse_bang("der(x)").unwrap()),
            Err(TranslationError::DerNotSupported)
        );
    }

    #[test]
    fn type_clauses() {
        use crate::syntax::{parse_sharing_type, parse_simple_type};
        let arr = parse_simple_type("a -> a").unwrap();
        assert_eq!(tra_cbn_type(&arr), parse_sharing_type("!~a -o a").unwrap());
        assert_eq!(tra_cbv_type(&arr), parse_sharing_type("!~a -o !~a").unwrap());
        assert_eq!(tra_cbs_type(&arr), parse_sharing_type("!~a -o ~a").unwrap());
        let ba = BType::arrow_bang(BType::Atom("a".into()), BType::Atom("b".into()));
        assert_eq!(tra_bang_type(&ba), parse_sharing_type("!~a -o b").unwrap());
    }

    #[test]
    fn free_variables_are_preserved() {
        let t = lsc("(\\x. x y) z");
        for tr in [tra_cbn(&t), tra_cbv(&t), tra_cbs(&t)] {
            let fv: Vec<String> = tr.free_vars().iter().map(|v| v.to_string()).collect();
            assert_eq!(fv, vec!["y", "z"]);
        }
    }
}
