//! Redex enumeration for the four LSC calculi: the rules act "at a
//! distance" through substitution contexts and are closed under arbitrary
//! contexts. Listing order is leftmost-outermost, with ls-family entries
//! ordered by occurrence position.

use std::collections::BTreeSet;

use super::{is_value, Calculus, LscRule, ValueClass};
use crate::syntax::lsc_term::{
    app, rename_chain_avoiding, sub, wrap_subs, LscTerm,
};

/// All redex occurrences of `t` in the given calculus, paired with their
/// reducts.
pub fn lsc_redexes(t: &LscTerm, calc: Calculus) -> Vec<(LscRule, LscTerm)> {
    let mut out = root_redexes(t, calc);
    match t {
        LscTerm::Var(_) => {}
        LscTerm::Abs(x, b) => {
            for (r, b2) in lsc_redexes(b, calc) {
                out.push((r, crate::syntax::lsc_term::abs(x.clone(), b2)));
            }
        }
        LscTerm::App(f, a) => {
            for (r, f2) in lsc_redexes(f, calc) {
                out.push((r, app(f2, (**a).clone())));
            }
            for (r, a2) in lsc_redexes(a, calc) {
                out.push((r, app((**f).clone(), a2)));
            }
        }
        LscTerm::Sub(b, x, a) => {
            for (r, b2) in lsc_redexes(b, calc) {
                out.push((r, sub(b2, x.clone(), (**a).clone())));
            }
            for (r, a2) in lsc_redexes(a, calc) {
                out.push((r, sub((**b).clone(), x.clone(), a2)));
            }
        }
    }
    out
}

/// True iff `t` has no redex in the calculus.
pub fn lsc_is_nf(t: &LscTerm, calc: Calculus) -> bool {
    lsc_redexes(t, calc).is_empty()
}

fn root_redexes(t: &LscTerm, calc: Calculus) -> Vec<(LscRule, LscTerm)> {
    let mut out = Vec::new();
    for rule in calc.rules() {
        match rule {
            LscRule::Db => {
                // (λx.b)L s → b[x := s]L
                if let LscTerm::App(f, s) = t {
                    let (core, chain) = f.peel_subs();
                    if let LscTerm::Abs(x, b) = core {
                        let (core2, chain2) = rename_chain_avoiding(
                            LscTerm::Abs(x, b),
                            chain,
                            &s.free_vars(),
                        );
                        if let LscTerm::Abs(x, b) = core2 {
                            out.push((
                                LscRule::Db,
                                wrap_subs(sub((*b).clone(), x, (**s).clone()), chain2),
                            ));
                        }
                    }
                }
            }
            LscRule::Ls => {
                // C⟪x⟫[x := s] → C⟪s⟫[x := s], one occurrence at a time
                if let LscTerm::Sub(b, x, s) = t {
                    for b2 in b.replace_one(x, s) {
                        out.push((LscRule::Ls, sub(b2, x.clone(), (**s).clone())));
                    }
                }
            }
            LscRule::Lsv => {
                // C⟪x⟫[x := vL] → C⟪v⟫[x := v]L with v strict
                if let LscTerm::Sub(b, x, arg) = t {
                    let (core, chain) = arg.peel_subs();
                    if is_value(&core, ValueClass::Strict) {
                        let mut avoid: BTreeSet<_> = b.free_vars();
                        avoid.insert(x.clone());
                        let (core2, chain2) = rename_chain_avoiding(core, chain, &avoid);
                        for b2 in b.replace_one(x, &core2) {
                            out.push((
                                LscRule::Lsv,
                                wrap_subs(sub(b2, x.clone(), core2.clone()), chain2.clone()),
                            ));
                        }
                    }
                }
            }
            LscRule::Lsw => {
                // C⟪x⟫[x := vL] → C⟪vL⟫[x := vL], copying the whole answer
                if let LscTerm::Sub(b, x, arg) = t {
                    let (core, _) = arg.peel_subs();
                    if is_value(&core, ValueClass::Strict) {
                        for b2 in b.replace_one(x, arg) {
                            out.push((LscRule::Lsw, sub(b2, x.clone(), (**arg).clone())));
                        }
                    }
                }
            }
            LscRule::Gc => {
                // t[x := s] → t when x ∉ fv(t)
                if let LscTerm::Sub(b, x, _) = t {
                    if !b.free_vars().contains(x) {
                        out.push((LscRule::Gc, (**b).clone()));
                    }
                }
            }
            LscRule::GcvLax => {
                // t[x := v^lax L] → tL when x ∉ fv(t)
                if let LscTerm::Sub(b, x, arg) = t {
                    let (core, chain) = arg.peel_subs();
                    if is_value(&core, ValueClass::Lax) && !b.free_vars().contains(x) {
                        let (_, chain2) = rename_chain_avoiding(core, chain, &b.free_vars());
                        out.push((LscRule::GcvLax, wrap_subs((**b).clone(), chain2)));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_lsc;

    fn p(s: &str) -> LscTerm {
        parse_lsc(s).unwrap()
    }

    #[test]
    fn db_at_a_distance() {
        // (\x.x)[y := z] w has a db-redex with reduct x[x := w][y := z]
        let t = p("(\\x. x)[y := z] w");
        let rs = lsc_redexes(&t, Calculus::Cbn);
        let db: Vec<_> = rs.iter().filter(|(r, _)| *r == LscRule::Db).collect();
        assert_eq!(db.len(), 1);
        assert!(db[0].1.alpha_eq(&p("x[x := w][y := z]")));
    }

    #[test]
    fn cbv_var_argument_blocks_everything() {
        // x[x := y]: y is lax but not strict (no lsv) and x ∈ fv (no gcvlax)
        let t = p("x[x := y]");
        assert!(lsc_redexes(&t, Calculus::Cbv).is_empty());
    }

    #[test]
    fn cbs_copies_whole_answer() {
        let t = p("(x x)[x := \\y. y]");
        let rs = lsc_redexes(&t, Calculus::Cbs);
        let lsw: Vec<_> = rs.iter().filter(|(r, _)| *r == LscRule::Lsw).collect();
        assert_eq!(lsw.len(), 2);
        assert!(lsw[0].1.alpha_eq(&p("((\\y. y) x)[x := \\y. y]")));
        assert!(lsw[1].1.alpha_eq(&p("(x (\\y. y))[x := \\y. y]")));
    }

    #[test]
    fn nf_examples() {
        assert!(lsc_is_nf(&p("x"), Calculus::Cbn));
        // gcvlax applies: x[y := \z.z] is not a CBV normal form
        assert!(!lsc_is_nf(&p("x[y := \\z. z]"), Calculus::Cbv));
        // gc has no value restriction in CBS
        assert!(!lsc_is_nf(&p("x[y := z z]"), Calculus::Cbs));
    }

    #[test]
    fn lsv_extrudes_the_chain() {
        // x[x := (\y.y)[z := w]] →lsv (\y.y)[x := \y.y][z := w]
        let t = p("x[x := (\\y. y)[z := w]]");
        let rs = lsc_redexes(&t, Calculus::Cbv);
        let lsv: Vec<_> = rs.iter().filter(|(r, _)| *r == LscRule::Lsv).collect();
        assert_eq!(lsv.len(), 1);
        assert!(lsv[0].1.alpha_eq(&p("(\\y. y)[x := \\y. y][z := w]")));
    }
}
