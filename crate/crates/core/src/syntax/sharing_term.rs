//! Terms of the sharing linear λ-calculus: two variable sorts, grant (`~`),
//! request (`open`), promotion (`!`) and explicit substitution.

use std::collections::BTreeSet;
use std::rc::Rc;

use super::{fresh_like, Capture, Sort, VarName};

pub type P = Rc<SharingTerm>;

/// Sharing terms: `t ::= 'a | u | \'a. t | t s | ~t | open(t) | !t | t[u := s]`.
/// `Abs` binds a linear variable; `Sub` binds an unrestricted one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SharingTerm {
    LVar(VarName),
    UVar(VarName),
    Abs(VarName, P),
    App(P, P),
    Grant(P),
    Request(P),
    Prom(P),
    Sub(P, VarName, P),
}

pub fn lvar(a: VarName) -> SharingTerm {
    SharingTerm::LVar(a)
}
pub fn uvar(u: VarName) -> SharingTerm {
    SharingTerm::UVar(u)
}
pub fn abs(a: VarName, body: SharingTerm) -> SharingTerm {
    SharingTerm::Abs(a, Rc::new(body))
}
pub fn app(f: SharingTerm, a: SharingTerm) -> SharingTerm {
    SharingTerm::App(Rc::new(f), Rc::new(a))
}
pub fn grant(t: SharingTerm) -> SharingTerm {
    SharingTerm::Grant(Rc::new(t))
}
pub fn request(t: SharingTerm) -> SharingTerm {
    SharingTerm::Request(Rc::new(t))
}
pub fn prom(t: SharingTerm) -> SharingTerm {
    SharingTerm::Prom(Rc::new(t))
}
pub fn sub(body: SharingTerm, u: VarName, arg: SharingTerm) -> SharingTerm {
    SharingTerm::Sub(Rc::new(body), u, Rc::new(arg))
}

/// Convenience constructors for variable names.
pub fn lv(ident: &str) -> VarName {
    VarName::new(Sort::Linear, ident)
}
pub fn uv(ident: &str) -> VarName {
    VarName::new(Sort::Unrestricted, ident)
}

impl SharingTerm {
    pub fn size(&self) -> usize {
        match self {
            SharingTerm::LVar(_) | SharingTerm::UVar(_) => 1,
            SharingTerm::Abs(_, b) => 1 + b.size(),
            SharingTerm::Grant(t) | SharingTerm::Request(t) | SharingTerm::Prom(t) => 1 + t.size(),
            SharingTerm::App(f, a) | SharingTerm::Sub(f, _, a) => 1 + f.size() + a.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<VarName> {
        match self {
            SharingTerm::LVar(v) | SharingTerm::UVar(v) => [v.clone()].into(),
            SharingTerm::Abs(a, b) => {
                let mut s = b.free_vars();
                s.remove(a);
                s
            }
            SharingTerm::App(f, a) => {
                let mut s = f.free_vars();
                s.extend(a.free_vars());
                s
            }
            SharingTerm::Grant(t) | SharingTerm::Request(t) | SharingTerm::Prom(t) => t.free_vars(),
            SharingTerm::Sub(b, u, a) => {
                let mut s = b.free_vars();
                s.remove(u);
                s.extend(a.free_vars());
                s
            }
        }
    }

    pub fn alpha_eq(&self, other: &SharingTerm) -> bool {
        fn var_match(x: &VarName, y: &VarName, map: &[(VarName, VarName)]) -> bool {
            for (a, b) in map.iter().rev() {
                if a == x || b == y {
                    return a == x && b == y;
                }
            }
            x == y
        }
        fn go(t: &SharingTerm, s: &SharingTerm, map: &mut Vec<(VarName, VarName)>) -> bool {
            use SharingTerm::*;
            match (t, s) {
                (LVar(x), LVar(y)) | (UVar(x), UVar(y)) => var_match(x, y, map),
                (Abs(x, b), Abs(y, c)) => {
                    map.push((x.clone(), y.clone()));
                    let r = go(b, c, map);
                    map.pop();
                    r
                }
                (App(f, a), App(g, b)) => go(f, g, map) && go(a, b, map),
                (Grant(a), Grant(b)) | (Request(a), Request(b)) | (Prom(a), Prom(b)) => {
                    go(a, b, map)
                }
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

    /// α-canonical form (deterministic binder renumbering in traversal order).
    pub fn canon(&self) -> SharingTerm {
        fn go(t: &SharingTerm, n: &mut u32, env: &Vec<(VarName, VarName)>) -> SharingTerm {
            let look = |x: &VarName, env: &Vec<(VarName, VarName)>| {
                env.iter()
                    .rev()
                    .find(|(a, _)| a == x)
                    .map(|(_, b)| b.clone())
                    .unwrap_or_else(|| x.clone())
            };
            use SharingTerm::*;
            match t {
                LVar(x) => lvar(look(x, env)),
                UVar(x) => uvar(look(x, env)),
                Abs(x, b) => {
                    let x2 = VarName::with_index(x.sort, "#", *n);
                    *n += 1;
                    let mut env2 = env.clone();
                    env2.push((x.clone(), x2.clone()));
                    abs(x2, go(b, n, &env2))
                }
                App(f, a) => app(go(f, n, env), go(a, n, env)),
                Grant(x) => grant(go(x, n, env)),
                Request(x) => request(go(x, n, env)),
                Prom(x) => prom(go(x, n, env)),
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

    /// Capture-avoiding substitution `self{v := s}` (works for either sort;
    /// the linear-variable instance is ordinary meta-substitution).
    pub fn subst(&self, v: &VarName, s: &SharingTerm) -> SharingTerm {
        use SharingTerm::*;
        match self {
            LVar(y) | UVar(y) => {
                if y == v {
                    s.clone()
                } else {
                    self.clone()
                }
            }
            Abs(y, b) => {
                if y == v {
                    self.clone()
                } else {
                    let (y2, b2) = unshadow(y, b, v, s);
                    abs(y2, b2.subst(v, s))
                }
            }
            App(f, a) => app(f.subst(v, s), a.subst(v, s)),
            Grant(t) => grant(t.subst(v, s)),
            Request(t) => request(t.subst(v, s)),
            Prom(t) => prom(t.subst(v, s)),
            Sub(b, y, a) => {
                let a2 = a.subst(v, s);
                if y == v {
                    sub((**b).clone(), y.clone(), a2)
                } else {
                    let (y2, b2) = unshadow(y, b, v, s);
                    sub(b2.subst(v, s), y2, a2)
                }
            }
        }
    }

    /// All ways to replace exactly one free occurrence of `v` by `s`,
    /// leftmost-outermost first.
    pub fn replace_one(&self, v: &VarName, s: &SharingTerm) -> Vec<SharingTerm> {
        use SharingTerm::*;
        match self {
            LVar(y) | UVar(y) => {
                if y == v {
                    vec![s.clone()]
                } else {
                    vec![]
                }
            }
            Abs(y, b) => {
                if y == v {
                    return vec![];
                }
                let (y2, b2) = unshadow(y, b, v, s);
                b2.replace_one(v, s)
                    .into_iter()
                    .map(|b3| abs(y2.clone(), b3))
                    .collect()
            }
            App(f, a) => {
                let mut out: Vec<SharingTerm> = f
                    .replace_one(v, s)
                    .into_iter()
                    .map(|f2| app(f2, (**a).clone()))
                    .collect();
                out.extend(
                    a.replace_one(v, s)
                        .into_iter()
                        .map(|a2| app((**f).clone(), a2)),
                );
                out
            }
            Grant(t) => t.replace_one(v, s).into_iter().map(grant).collect(),
            Request(t) => t.replace_one(v, s).into_iter().map(request).collect(),
            Prom(t) => t.replace_one(v, s).into_iter().map(prom).collect(),
            Sub(b, y, a) => {
                let mut out = Vec::new();
                if y != v {
                    let (y2, b2) = unshadow(y, b, v, s);
                    out.extend(
                        b2.replace_one(v, s)
                            .into_iter()
                            .map(|b3| sub(b3, y2.clone(), (**a).clone())),
                    );
                }
                out.extend(
                    a.replace_one(v, s)
                        .into_iter()
                        .map(|a2| sub((**b).clone(), y.clone(), a2)),
                );
                out
            }
        }
    }

    /// Peel the outer substitution chain (see the LSC counterpart).
    pub fn peel_subs(&self) -> (SharingTerm, Vec<(VarName, SharingTerm)>) {
        match self {
            SharingTerm::Sub(b, u, a) => {
                let (core, mut chain) = b.peel_subs();
                chain.push((u.clone(), (**a).clone()));
                (core, chain)
            }
            _ => (self.clone(), Vec::new()),
        }
    }
}

/// Rebuild `core[chain]`.
pub fn wrap_subs(core: SharingTerm, chain: Vec<(VarName, SharingTerm)>) -> SharingTerm {
    chain.into_iter().fold(core, |t, (x, s)| sub(t, x, s))
}

/// Rename chain binders away from `avoid` so the chain can be extruded over
/// a term with those free variables.
pub fn rename_chain_avoiding(
    core: SharingTerm,
    chain: Vec<(VarName, SharingTerm)>,
    avoid: &BTreeSet<VarName>,
) -> (SharingTerm, Vec<(VarName, SharingTerm)>) {
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
            core = core.subst(&x, &uvar(x2.clone()));
            for entry in chain.iter_mut().take(i) {
                entry.1 = entry.1.subst(&x, &uvar(x2.clone()));
            }
            chain[i].0 = x2;
        }
    }
    (core, chain)
}

fn unshadow(
    y: &VarName,
    b: &SharingTerm,
    v: &VarName,
    s: &SharingTerm,
) -> (VarName, SharingTerm) {
    if s.free_vars().contains(y) && b.free_vars().contains(v) {
        let mut avoid = b.free_vars();
        avoid.extend(s.free_vars());
        avoid.insert(v.clone());
        let y2 = fresh_like(y, &avoid);
        let fresh_var = if y.sort == Sort::Linear {
            lvar(y2.clone())
        } else {
            uvar(y2.clone())
        };
        (y2, b.subst(y, &fresh_var))
    } else {
        (y.clone(), (*b).clone())
    }
}

/// One-hole contexts over sharing terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SharingCtx {
    Hole,
    Abs(VarName, Box<SharingCtx>),
    AppL(Box<SharingCtx>, P),
    AppR(P, Box<SharingCtx>),
    Grant(Box<SharingCtx>),
    Request(Box<SharingCtx>),
    Prom(Box<SharingCtx>),
    SubBody(Box<SharingCtx>, VarName, P),
    SubArg(P, VarName, Box<SharingCtx>),
}

impl SharingCtx {
    pub fn free_vars(&self) -> BTreeSet<VarName> {
        use SharingCtx::*;
        match self {
            Hole => BTreeSet::new(),
            Abs(x, c) => {
                let mut s = c.free_vars();
                s.remove(x);
                s
            }
            AppL(c, t) => {
                let mut s = c.free_vars();
                s.extend(t.free_vars());
                s
            }
            AppR(t, c) => {
                let mut s = t.free_vars();
                s.extend(c.free_vars());
                s
            }
            Grant(c) | Request(c) | Prom(c) => c.free_vars(),
            SubBody(c, x, a) => {
                let mut s = c.free_vars();
                s.remove(x);
                s.extend(a.free_vars());
                s
            }
            SubArg(b, x, c) => {
                let mut s = b.free_vars();
                s.remove(x);
                s.extend(c.free_vars());
                s
            }
        }
    }

    pub fn plug(&self, t: &SharingTerm, capture: Capture) -> SharingTerm {
        use SharingCtx::*;
        match self {
            Hole => t.clone(),
            Abs(x, c) => {
                let (x2, c2) = rename_ctx_binder(x, c, t, capture);
                abs(x2, c2.plug(t, capture))
            }
            AppL(c, s) => app(c.plug(t, capture), (**s).clone()),
            AppR(s, c) => app((**s).clone(), c.plug(t, capture)),
            Grant(c) => grant(c.plug(t, capture)),
            Request(c) => request(c.plug(t, capture)),
            Prom(c) => prom(c.plug(t, capture)),
            SubBody(c, x, a) => {
                let (x2, c2) = rename_ctx_binder(x, c, t, capture);
                sub(c2.plug(t, capture), x2, (**a).clone())
            }
            SubArg(b, x, c) => sub((**b).clone(), x.clone(), c.plug(t, capture)),
        }
    }

    fn rename_free(&self, x: &VarName, x2: &VarName) -> SharingCtx {
        use SharingCtx::*;
        let v = if x.sort == Sort::Linear {
            lvar(x2.clone())
        } else {
            uvar(x2.clone())
        };
        match self {
            Hole => Hole,
            Abs(y, c) => {
                if y == x {
                    self.clone()
                } else {
                    Abs(y.clone(), Box::new(c.rename_free(x, x2)))
                }
            }
            AppL(c, t) => AppL(Box::new(c.rename_free(x, x2)), Rc::new(t.subst(x, &v))),
            AppR(t, c) => AppR(Rc::new(t.subst(x, &v)), Box::new(c.rename_free(x, x2))),
            Grant(c) => Grant(Box::new(c.rename_free(x, x2))),
            Request(c) => Request(Box::new(c.rename_free(x, x2))),
            Prom(c) => Prom(Box::new(c.rename_free(x, x2))),
            SubBody(c, y, a) => {
                let a2 = Rc::new(a.subst(x, &v));
                if y == x {
                    SubBody(c.clone(), y.clone(), a2)
                } else {
                    SubBody(Box::new(c.rename_free(x, x2)), y.clone(), a2)
                }
            }
            SubArg(b, y, c) => {
                let c2 = Box::new(c.rename_free(x, x2));
                if y == x {
                    SubArg(b.clone(), y.clone(), c2)
                } else {
                    SubArg(Rc::new(b.subst(x, &v)), y.clone(), c2)
                }
            }
        }
    }
}

fn rename_ctx_binder(
    x: &VarName,
    c: &SharingCtx,
    t: &SharingTerm,
    capture: Capture,
) -> (VarName, SharingCtx) {
    if capture == Capture::Avoiding && t.free_vars().contains(x) {
        let mut avoid = t.free_vars();
        avoid.extend(c.free_vars());
        let x2 = fresh_like(x, &avoid);
        (x2.clone(), c.rename_free(x, &x2))
    } else {
        (x.clone(), c.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_vars_of_es() {
        // (open(u) open(u))[u := !v] → {v}
        let t = sub(
            app(request(uvar(uv("u"))), request(uvar(uv("u")))),
            uv("u"),
            prom(uvar(uv("v"))),
        );
        assert_eq!(t.free_vars(), [uv("v")].into());
    }

    #[test]
    fn alpha_distinguishes_sorts_and_binders() {
        let a_id = abs(lv("a"), lvar(lv("a")));
        let b_id = abs(lv("b"), lvar(lv("b")));
        assert!(a_id.alpha_eq(&b_id));
        assert!(!a_id.alpha_eq(&abs(lv("a"), lvar(lv("b")))));
    }

    #[test]
    fn subst_linear_basics() {
        // 'a{a := !u} = !u
        let r = lvar(lv("a")).subst(&lv("a"), &prom(uvar(uv("u"))));
        assert_eq!(r, prom(uvar(uv("u"))));
        // (\'b.'a){a := 'b} renames the binder
        let t = abs(lv("b"), lvar(lv("a")));
        let r = t.subst(&lv("a"), &lvar(lv("b")));
        assert!(r.alpha_eq(&abs(lv("c"), lvar(lv("b")))));
        // 'a[u := !v]{a := open(u)} must not capture the argument's u
        let t = sub(lvar(lv("a")), uv("u"), prom(uvar(uv("v"))));
        let r = t.subst(&lv("a"), &request(uvar(uv("u"))));
        assert!(r.free_vars().contains(&uv("u")));
        assert!(r.free_vars().contains(&uv("v")));
    }

    #[test]
    fn subst_identity_when_not_free() {
        let t = abs(lv("b"), lvar(lv("b")));
        assert_eq!(t.subst(&lv("a"), &uvar(uv("u"))), t);
    }
}
