//! LSC terms: λ-terms with explicit substitutions over one (plain) variable
//! sort, plus the hygiene operations shared by all rewrite engines.

use std::collections::BTreeSet;
use std::rc::Rc;

use super::{fresh_like, Capture, Sort, VarName};

pub type P = Rc<LscTerm>;

/// LSC terms: `t ::= x | \x. t | t s | t[x := s]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LscTerm {
    Var(VarName),
    Abs(VarName, P),
    App(P, P),
    /// `Sub(body, x, arg)` is the explicit substitution `body[x := arg]`;
    /// `x` is bound in `body` only.
    Sub(P, VarName, P),
}

pub fn var(v: VarName) -> LscTerm {
    LscTerm::Var(v)
}
pub fn abs(x: VarName, body: LscTerm) -> LscTerm {
    LscTerm::Abs(x, Rc::new(body))
}
pub fn app(f: LscTerm, a: LscTerm) -> LscTerm {
    LscTerm::App(Rc::new(f), Rc::new(a))
}
pub fn sub(body: LscTerm, x: VarName, arg: LscTerm) -> LscTerm {
    LscTerm::Sub(Rc::new(body), x, Rc::new(arg))
}

/// Convenience: a plain variable from an identifier.
pub fn pv(ident: &str) -> VarName {
    VarName::new(Sort::Plain, ident)
}

impl LscTerm {
    /// AST node count (binders and ES nodes count one each).
    pub fn size(&self) -> usize {
        match self {
            LscTerm::Var(_) => 1,
            LscTerm::Abs(_, b) => 1 + b.size(),
            LscTerm::App(f, a) => 1 + f.size() + a.size(),
            LscTerm::Sub(b, _, a) => 1 + b.size() + a.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<VarName> {
        match self {
            LscTerm::Var(x) => [x.clone()].into(),
            LscTerm::Abs(x, b) => {
                let mut s = b.free_vars();
                s.remove(x);
                s
            }
            LscTerm::App(f, a) => {
                let mut s = f.free_vars();
                s.extend(a.free_vars());
                s
            }
            LscTerm::Sub(b, x, a) => {
                let mut s = b.free_vars();
                s.remove(x);
                s.extend(a.free_vars());
                s
            }
        }
    }

    /// α-equality by simultaneous traversal with a binder-correspondence map.
    pub fn alpha_eq(&self, other: &LscTerm) -> bool {
        fn go(t: &LscTerm, s: &LscTerm, map: &mut Vec<(VarName, VarName)>) -> bool {
            // A free occurrence matches if the innermost correspondence for
            // either side pairs the two, or neither side is bound.
            fn var_match(x: &VarName, y: &VarName, map: &[(VarName, VarName)]) -> bool {
                for (a, b) in map.iter().rev() {
                    if a == x || b == y {
                        return a == x && b == y;
                    }
                }
                x == y
            }
            match (t, s) {
                (LscTerm::Var(x), LscTerm::Var(y)) => var_match(x, y, map),
                (LscTerm::Abs(x, b), LscTerm::Abs(y, c)) => {
                    map.push((x.clone(), y.clone()));
                    let r = go(b, c, map);
                    map.pop();
                    r
                }
                (LscTerm::App(f, a), LscTerm::App(g, b)) => go(f, g, map) && go(a, b, map),
                (LscTerm::Sub(b, x, a), LscTerm::Sub(c, y, d)) => {
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

    /// α-canonical form: bound variables renumbered in traversal order with a
    /// reserved base name, so structural equality on canon forms is α-equality.
    pub fn canon(&self) -> LscTerm {
        fn go(t: &LscTerm, n: &mut u32, env: &Vec<(VarName, VarName)>) -> LscTerm {
            let look = |x: &VarName, env: &Vec<(VarName, VarName)>| {
                env.iter()
                    .rev()
                    .find(|(a, _)| a == x)
                    .map(|(_, b)| b.clone())
                    .unwrap_or_else(|| x.clone())
            };
            match t {
                LscTerm::Var(x) => var(look(x, env)),
                LscTerm::Abs(x, b) => {
                    let x2 = VarName::with_index(x.sort, "#", *n);
                    *n += 1;
                    let mut env2 = env.clone();
                    env2.push((x.clone(), x2.clone()));
                    abs(x2, go(b, n, &env2))
                }
                LscTerm::App(f, a) => app(go(f, n, env), go(a, n, env)),
                LscTerm::Sub(b, x, a) => {
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

    /// Capture-avoiding substitution `self{x := s}`.
    pub fn subst(&self, x: &VarName, s: &LscTerm) -> LscTerm {
        match self {
            LscTerm::Var(y) => {
                if y == x {
                    s.clone()
                } else {
                    self.clone()
                }
            }
            LscTerm::Abs(y, b) => {
                if y == x {
                    self.clone()
                } else {
                    let (y2, b2) = unshadow(y, b, x, s);
                    abs(y2, b2.subst(x, s))
                }
            }
            LscTerm::App(f, a) => app(f.subst(x, s), a.subst(x, s)),
            LscTerm::Sub(b, y, a) => {
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

    /// All ways to replace exactly one free occurrence of `x` by `s`,
    /// leftmost-outermost first, renaming binders that would capture `s`.
    pub fn replace_one(&self, x: &VarName, s: &LscTerm) -> Vec<LscTerm> {
        match self {
            LscTerm::Var(y) => {
                if y == x {
                    vec![s.clone()]
                } else {
                    vec![]
                }
            }
            LscTerm::Abs(y, b) => {
                if y == x {
                    return vec![];
                }
                let (y2, b2) = unshadow(y, b, x, s);
                b2.replace_one(x, s)
                    .into_iter()
                    .map(|b3| abs(y2.clone(), b3))
                    .collect()
            }
            LscTerm::App(f, a) => {
                let mut out: Vec<LscTerm> = f
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
            LscTerm::Sub(b, y, a) => {
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

    /// Peel the outer chain of explicit substitutions: returns the core and
    /// the chain `[(x1,s1),..,(xk,sk)]` such that the term is
    /// `core[x1:=s1]..[xk:=sk]` (binder `xi` scopes over the core and the
    /// arguments of entries before it).
    pub fn peel_subs(&self) -> (LscTerm, Vec<(VarName, LscTerm)>) {
        match self {
            LscTerm::Sub(b, x, a) => {
                let (core, mut chain) = b.peel_subs();
                chain.push((x.clone(), (**a).clone()));
                (core, chain)
            }
            _ => (self.clone(), Vec::new()),
        }
    }
}

/// Rebuild `core[chain]` (inverse of [`LscTerm::peel_subs`]).
pub fn wrap_subs(core: LscTerm, chain: Vec<(VarName, LscTerm)>) -> LscTerm {
    chain.into_iter().fold(core, |t, (x, s)| sub(t, x, s))
}

/// Rename the binder of a substitution chain away from `avoid`
/// (α-converting inside the core and the in-scope chain arguments), so the
/// chain can be legally extruded over a term whose free variables are `avoid`.
pub fn rename_chain_avoiding(
    core: LscTerm,
    chain: Vec<(VarName, LscTerm)>,
    avoid: &BTreeSet<VarName>,
) -> (LscTerm, Vec<(VarName, LscTerm)>) {
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
            // Binder `x` at position i scopes over the core and the
            // arguments of earlier entries.
            core = core.subst(&x, &var(x2.clone()));
            for entry in chain.iter_mut().take(i) {
                entry.1 = entry.1.subst(&x, &var(x2.clone()));
            }
            chain[i].0 = x2;
        }
    }
    (core, chain)
}

/// Rename binder `y` of body `b` if it collides with the variables of a
/// substitution `{x := s}` about to go under it.
fn unshadow(y: &VarName, b: &LscTerm, x: &VarName, s: &LscTerm) -> (VarName, LscTerm) {
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

/// One-hole contexts over LSC terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LscCtx {
    Hole,
    Abs(VarName, Box<LscCtx>),
    AppL(Box<LscCtx>, P),
    AppR(P, Box<LscCtx>),
    SubBody(Box<LscCtx>, VarName, P),
    SubArg(P, VarName, Box<LscCtx>),
}

impl LscCtx {
    /// Free variables of the context material itself (the hole contributes
    /// nothing).
    pub fn free_vars(&self) -> BTreeSet<VarName> {
        match self {
            LscCtx::Hole => BTreeSet::new(),
            LscCtx::Abs(x, c) => {
                let mut s = c.free_vars();
                s.remove(x);
                s
            }
            LscCtx::AppL(c, t) => {
                let mut s = c.free_vars();
                s.extend(t.free_vars());
                s
            }
            LscCtx::AppR(t, c) => {
                let mut s = t.free_vars();
                s.extend(c.free_vars());
                s
            }
            LscCtx::SubBody(c, x, a) => {
                let mut s = c.free_vars();
                s.remove(x);
                s.extend(a.free_vars());
                s
            }
            LscCtx::SubArg(b, x, c) => {
                let mut s = b.free_vars();
                s.remove(x);
                s.extend(c.free_vars());
                s
            }
        }
    }

    /// Plug `t` into the hole. `Capture::With` plugs literally;
    /// `Capture::Avoiding` renames binders on the hole path off `fv(t)`.
    pub fn plug(&self, t: &LscTerm, capture: Capture) -> LscTerm {
        match self {
            LscCtx::Hole => t.clone(),
            LscCtx::Abs(x, c) => {
                let (x2, c2) = self.rename_for(x, c, t, capture);
                abs(x2, c2.plug(t, capture))
            }
            LscCtx::AppL(c, s) => app(c.plug(t, capture), (**s).clone()),
            LscCtx::AppR(s, c) => app((**s).clone(), c.plug(t, capture)),
            LscCtx::SubBody(c, x, a) => {
                let (x2, c2) = self.rename_for(x, c, t, capture);
                sub(c2.plug(t, capture), x2, (**a).clone())
            }
            LscCtx::SubArg(b, x, c) => {
                // The binder does not scope over the argument: no renaming.
                sub((**b).clone(), x.clone(), c.plug(t, capture))
            }
        }
    }

    fn rename_for(&self, x: &VarName, c: &LscCtx, t: &LscTerm, capture: Capture) -> (VarName, LscCtx) {
        if capture == Capture::Avoiding && t.free_vars().contains(x) {
            let mut avoid = t.free_vars();
            avoid.extend(c.free_vars());
            let x2 = fresh_like(x, &avoid);
            (x2.clone(), c.rename_free(x, &x2))
        } else {
            (x.clone(), c.clone())
        }
    }

    /// Rename free occurrences of `x` (in term material; the hole is opaque).
    fn rename_free(&self, x: &VarName, x2: &VarName) -> LscCtx {
        let v = var(x2.clone());
        match self {
            LscCtx::Hole => LscCtx::Hole,
            LscCtx::Abs(y, c) => {
                if y == x {
                    self.clone()
                } else {
                    LscCtx::Abs(y.clone(), Box::new(c.rename_free(x, x2)))
                }
            }
            LscCtx::AppL(c, t) => {
                LscCtx::AppL(Box::new(c.rename_free(x, x2)), Rc::new(t.subst(x, &v)))
            }
            LscCtx::AppR(t, c) => {
                LscCtx::AppR(Rc::new(t.subst(x, &v)), Box::new(c.rename_free(x, x2)))
            }
            LscCtx::SubBody(c, y, a) => {
                let a2 = Rc::new(a.subst(x, &v));
                if y == x {
                    LscCtx::SubBody(c.clone(), y.clone(), a2)
                } else {
                    LscCtx::SubBody(Box::new(c.rename_free(x, x2)), y.clone(), a2)
                }
            }
            LscCtx::SubArg(b, y, c) => {
                let c2 = Box::new(c.rename_free(x, x2));
                if y == x {
                    LscCtx::SubArg(b.clone(), y.clone(), c2)
                } else {
                    LscCtx::SubArg(Rc::new(b.subst(x, &v)), y.clone(), c2)
                }
            }
        }
    }
}
