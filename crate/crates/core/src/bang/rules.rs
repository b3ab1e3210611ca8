//! Bang reduction: `db!`, `ls!`, `gc!` (and `d!` in the full calculus),
//! all at a distance and closed by arbitrary contexts.

use thiserror::Error;

use super::BangRule;
use crate::syntax::bang_term::{
    abs, app, der, prom, rename_chain_avoiding, sub, wrap_subs, BangTerm,
};

/// Errors raised by the Bang engines.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BangError {
    #[error("der node not allowed in the simplified calculus; apply dereliction unfolding first")]
    DerNotAllowed,
}

/// All one-step reducts of `t`, root-first then by subterm position. In
/// simplified mode `der` nodes are rejected and the `d!` rule is excluded.
pub fn bang_redexes(t: &BangTerm, simplified: bool) -> Result<Vec<(BangRule, BangTerm)>, BangError> {
    if simplified && !t.is_simplified() {
        return Err(BangError::DerNotAllowed);
    }
    Ok(redexes(t, simplified))
}

/// True iff `t` has no redex (in the chosen variant).
pub fn bang_is_nf(t: &BangTerm, simplified: bool) -> Result<bool, BangError> {
    Ok(bang_redexes(t, simplified)?.is_empty())
}

fn redexes(t: &BangTerm, simplified: bool) -> Vec<(BangRule, BangTerm)> {
    let mut out = root_redexes(t, simplified);
    match t {
        BangTerm::Var(_) => {}
        BangTerm::Abs(x, b) => {
            out.extend(
                redexes(b, simplified)
                    .into_iter()
                    .map(|(r, b2)| (r, abs(x.clone(), b2))),
            );
        }
        BangTerm::App(f, a) => {
            out.extend(
                redexes(f, simplified)
                    .into_iter()
                    .map(|(r, f2)| (r, app(f2, (**a).clone()))),
            );
            out.extend(
                redexes(a, simplified)
                    .into_iter()
                    .map(|(r, a2)| (r, app((**f).clone(), a2))),
            );
        }
        BangTerm::Prom(b) => {
            out.extend(redexes(b, simplified).into_iter().map(|(r, b2)| (r, prom(b2))));
        }
        BangTerm::Der(b) => {
            out.extend(redexes(b, simplified).into_iter().map(|(r, b2)| (r, der(b2))));
        }
        BangTerm::Sub(b, x, a) => {
            out.extend(
                redexes(b, simplified)
                    .into_iter()
                    .map(|(r, b2)| (r, sub(b2, x.clone(), (**a).clone()))),
            );
            out.extend(
                redexes(a, simplified)
                    .into_iter()
                    .map(|(r, a2)| (r, sub((**b).clone(), x.clone(), a2))),
            );
        }
    }
    out
}

fn root_redexes(t: &BangTerm, simplified: bool) -> Vec<(BangRule, BangTerm)> {
    let mut out = Vec::new();
    match t {
        // db!: (\x. b)L s -> b[x := s]L
        BangTerm::App(f, s) => {
            let (core, chain) = f.peel_subs();
            if matches!(core, BangTerm::Abs(_, _)) {
                let (core2, chain2) = rename_chain_avoiding(core, chain, &s.free_vars());
                if let BangTerm::Abs(x, b) = core2 {
                    out.push((
                        BangRule::DbB,
                        wrap_subs(sub((*b).clone(), x, (**s).clone()), chain2),
                    ));
                }
            }
        }
        BangTerm::Sub(b, x, arg) => {
            let (core, chain) = arg.peel_subs();
            if matches!(core, BangTerm::Prom(_)) {
                // ls!: C<x>[x := (!s)L] -> C<s>[x := !s]L
                let mut avoid = b.free_vars();
                avoid.insert(x.clone());
                let (core2, chain2) = rename_chain_avoiding(core.clone(), chain.clone(), &avoid);
                if let BangTerm::Prom(s) = core2 {
                    for b2 in b.replace_one(x, &s) {
                        out.push((
                            BangRule::LsB,
                            wrap_subs(
                                sub(b2, x.clone(), prom((*s).clone())),
                                chain2.clone(),
                            ),
                        ));
                    }
                }
                // gc!: b[x := (!s)L] -> bL  if x not free in b
                if !b.free_vars().contains(x) {
                    let (_, chain2) = rename_chain_avoiding(core, chain, &b.free_vars());
                    out.push((BangRule::GcB, wrap_subs((**b).clone(), chain2)));
                }
            }
        }
        // d!: der((!s)L) -> sL
        BangTerm::Der(inner) if !simplified => {
            let (core, chain) = inner.peel_subs();
            if let BangTerm::Prom(s) = core {
                out.push((BangRule::DerB, wrap_subs((*s).clone(), chain)));
            }
        }
        _ => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_bang;

    fn p(s: &str) -> BangTerm {
        parse_bang(s).unwrap()
    }

    fn reducts(s: &str, simplified: bool, rule: BangRule) -> Vec<BangTerm> {
        bang_redexes(&p(s), simplified)
            .unwrap()
            .into_iter()
            .filter(|(r, _)| *r == rule)
            .map(|(_, t)| t)
            .collect()
    }

    #[test]
    fn dereliction_reaches_through_chains() {
        let r = reducts("der((!x)[y := !z])", false, BangRule::DerB);
        assert_eq!(r.len(), 1);
        assert!(r[0].alpha_eq(&p("x[y := !z]")));
    }

    #[test]
    fn ls_copies_and_extrudes() {
        let r = reducts("w[w := (!x)[y := !z]]", true, BangRule::LsB);
        assert_eq!(r.len(), 1);
        assert!(r[0].alpha_eq(&p("x[w := !x][y := !z]")));
    }

    #[test]
    fn gc_requires_promoted_argument() {
        let r = reducts("x[y := !z]", true, BangRule::GcB);
        assert_eq!(r.len(), 1);
        assert!(r[0].alpha_eq(&p("x")));
        assert!(reducts("x[y := z]", true, BangRule::GcB).is_empty());
    }

    #[test]
    fn simplified_mode_rejects_der() {
        assert_eq!(
            bang_redexes(&p("der(!x)"), true),
            Err(BangError::DerNotAllowed)
        );
        assert!(reducts("der(!x)", false, BangRule::DerB).len() == 1);
    }

    #[test]
    fn db_at_a_distance() {
        let r = reducts("(\\x. x)[y := !z] w", true, BangRule::DbB);
        assert_eq!(r.len(), 1);
        assert!(r[0].alpha_eq(&p("x[x := w][y := !z]")));
    }
}
