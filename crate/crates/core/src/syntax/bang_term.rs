//! Bang-calculus terms: λ-terms with explicit substitutions, promotion `!t`
//! and (in the full calculus) dereliction `der(t)`.

use std::collections::BTreeSet;
use std::rc::Rc;

use super::{fresh_like, VarName};

pub type P = Rc<BangTerm>;

/// Bang terms: `t ::= x | \x. t | t s | !t | der(t) | t[x := s]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BangTerm {
    Var(VarName),
    Abs(VarName, P),
    App(P, P),
    Prom(P),
    Der(P),
    Sub(P, VarName, P),
}

pub fn var(v: VarName) -> BangTerm {
    BangTerm::Var(v)
}
pub fn abs(x: VarName, body: BangTerm) -> BangTerm {
    BangTerm::Abs(x, Rc::new(body))
}
pub fn app(f: BangTerm, a: BangTerm) -> BangTerm {
    BangTerm::App(Rc::new(f), Rc::new(a))
}
pub fn prom(t: BangTerm) -> BangTerm {
    BangTerm::Prom(Rc::new(t))
}
pub fn der(t: BangTerm) -> BangTerm {
    BangTerm::Der(Rc::new(t))
}
pub fn sub(body: BangTerm, x: VarName, arg: BangTerm) -> BangTerm {
    BangTerm::Sub(Rc::new(body), x, Rc::new(arg))
}

impl BangTerm {
    pub fn size(&self) -> usize {
        match self {
            BangTerm::Var(_) => 1,
            BangTerm::Abs(_, b) => 1 + b.size(),
            BangTerm::Prom(t) | BangTerm::Der(t) => 1 + t.size(),
            BangTerm::App(f, a) | BangTerm::Sub(f, _, a) => 1 + f.size() + a.size(),
        }
    }

    /// True iff the term contains no `der` node.
    pub fn is_simplified(&self) -> bool {
        match self {
            BangTerm::Var(_) => true,
            BangTerm::Der(_) => false,
            BangTerm::Abs(_, b) | BangTerm::Prom(b) => b.is_simplified(),
            BangTerm::App(f, a) | BangTerm::Sub(f, _, a) => {
                f.is_simplified() && a.is_simplified()
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<VarName> {
        match self {
            BangTerm::Var(x) => [x.clone()].into(),
            BangTerm::Abs(x, b) => {
                let mut s = b.free_vars();
                s.remove(x);
                s
            }
            BangTerm::Prom(t) | BangTerm::Der(t) => t.free_vars(),
            BangTerm::App(f, a) => {
                let mut s = f.free_vars();
                s.extend(a.free_vars());
                s
            }
            BangTerm::Sub(b, x, a) => {
                let mut s = b.free_vars();
                s.remove(x);
                s.extend(a.free_vars());
                s
            }
        }
    }

    pub fn alpha_eq(&self, other: &BangTerm) -> bool {
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
            match (t, s) {
                (Var(x), Var(y)) => var_match(x, y, map),
                (Abs(x, b), Abs(y, c)) => {
                    map.push((x.clone(), y.clone()));
                    let r = go(b, c, map);
                    map.pop();
                    r
                }
                (App(f, a), App(g, b)) => go(f, g, map) && go(a, b, map),
                (Prom(a), Prom(b)) | (Der(a), Der(b)) => go(a, b, map),
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
        go(self, other, &mut Vec::new())
    }

    pub fn canon(&self) -> BangTerm {
        fn go(t: &BangTerm, n: &mut u32, env: &Vec<(VarName, VarName)>) -> BangTerm {
            let look = |x: &VarName, env: &Vec<(VarName, VarName)>| {
                env.iter()
                    .rev()
                    .find(|(a, _)| a == x)
                    .map(|(_, b)| b.clone())
                    .unwrap_or_else(|| x.clone())
            };
            use BangTerm::*;
            match t {
                Var(x) => var(look(x, env)),
                Abs(x, b) => {
                    let x2 = VarName::with_index(x.sort, "#", *n);
                    *n += 1;
                    let mut env2 = env.clone();
                    env2.push((x.clone(), x2.clone()));
                    abs(x2, go(b, n, &env2))
                }
                App(f, a) => app(go(f, n, env), go(a, n, env)),
                Prom(x) => prom(go(x, n, env)),
                Der(x) => der(go(x, n, env)),
                Sub(b, x, a) => {
                    let x2 = VarName::with_index(x.sort, "#", *n);
                    *n += 1;
                    let mut env2 = env.clone();
                    env2.push((x.clone(), x2.clone()));
                    let b2 = go(b, n, &env2);
                    sub(b2, x2, go(a, n, env))
                }
            }
        }
        go(self, &mut 0, &Vec::new())
    }

    pub fn subst(&self, x: &VarName, s: &BangTerm) -> BangTerm {
        use BangTerm::*;
        match self {
            Var(y) => {
                if y == x {
                    s.clone()
                } else {
                    self.clone()
                }
            }
            Abs(y, b) => {
                if y == x {
                    self.clone()
                } else {
                    let (y2, b2) = unshadow(y, b, x, s);
                    abs(y2, b2.subst(x, s))
                }
            }
            App(f, a) => app(f.subst(x, s), a.subst(x, s)),
            Prom(t) => prom(t.subst(x, s)),
            Der(t) => der(t.subst(x, s)),
            Sub(b, y, a) => {
                let a2 = a.subst(x, s);
                if y == x {
                    sub((**b).clone(), y.clone(), a2)
                } else {
                    let (y2, b2) = unshadow(y, b, x, s);
                    sub(b2.subst(x, s), y2, a2)
                }
            }
        }
    }

    /// All ways to replace exactly one free occurrence of `x` by `s`.
    pub fn replace_one(&self, x: &VarName, s: &BangTerm) -> Vec<BangTerm> {
        use BangTerm::*;
        match self {
            Var(y) => {
                if y == x {
                    vec![s.clone()]
                } else {
                    vec![]
                }
            }
            Abs(y, b) => {
                if y == x {
                    return vec![];
                }
                let (y2, b2) = unshadow(y, b, x, s);
                b2.replace_one(x, s)
                    .into_iter()
                    .map(|b3| abs(y2.clone(), b3))
                    .collect()
            }
            App(f, a) => {
                let mut out: Vec<BangTerm> = f
                    .replace_one(x, s)
                    .into_iter()
                    .map(|f2| app(f2, (**a).clone()))
                    .collect();
                out.extend(
                    a.replace_one(x, s)
                        .into_iter()
                        .map(|a2| app((**f).clone(), a2)),
                );
                out
            }
            Prom(t) => t.replace_one(x, s).into_iter().map(prom).collect(),
            Der(t) => t.replace_one(x, s).into_iter().map(der).collect(),
            Sub(b, y, a) => {
                let mut out = Vec::new();
                if y != x {
                    let (y2, b2) = unshadow(y, b, x, s);
                    out.extend(
                        b2.replace_one(x, s)
                            .into_iter()
                            .map(|b3| sub(b3, y2.clone(), (**a).clone())),
                    );
                }
                out.extend(
                    a.replace_one(x, s)
                        .into_iter()
                        .map(|a2| sub((**b).clone(), y.clone(), a2)),
                );
                out
            }
        }
    }

    pub fn peel_subs(&self) -> (BangTerm, Vec<(VarName, BangTerm)>) {
        match self {
            BangTerm::Sub(b, x, a) => {
                let (core, mut chain) = b.peel_subs();
                chain.push((x.clone(), (**a).clone()));
                (core, chain)
            }
            _ => (self.clone(), Vec::new()),
        }
    }
}

pub fn wrap_subs(core: BangTerm, chain: Vec<(VarName, BangTerm)>) -> BangTerm {
    chain.into_iter().fold(core, |t, (x, s)| sub(t, x, s))
}

pub fn rename_chain_avoiding(
    core: BangTerm,
    chain: Vec<(VarName, BangTerm)>,
    avoid: &BTreeSet<VarName>,
) -> (BangTerm, Vec<(VarName, BangTerm)>) {
    let mut core = core;
    let mut chain = chain;
    for i in 0..chain.len() {
        let x = chain[i].0.clone();
        if avoid.contains(&x) {
            let mut all: BTreeSet<VarName> = avoid.clone();
            all.extend(core.free_vars());
            for (y, s) in &chain {
                all.insert(y.clone());
                all.extend(s.free_vars());
            }
            let x2 = fresh_like(&x, &all);
            core = core.subst(&x, &var(x2.clone()));
            for entry in chain.iter_mut().take(i) {
                entry.1 = entry.1.subst(&x, &var(x2.clone()));
            }
            chain[i].0 = x2;
        }
    }
    (core, chain)
}

fn unshadow(y: &VarName, b: &BangTerm, x: &VarName, s: &BangTerm) -> (VarName, BangTerm) {
    if s.free_vars().contains(y) && b.free_vars().contains(x) {
        let mut avoid = b.free_vars();
        avoid.extend(s.free_vars());
        avoid.insert(x.clone());
        let y2 = fresh_like(y, &avoid);
        (y2.clone(), b.subst(y, &var(y2)))
    } else {
        (y.clone(), (*b).clone())
    }
}
