//! Simple types for LSC: a bidirectional checker (binders carry no
//! annotations, so checking mode is primary) and a unification-based
//! inference engine used to decide typability of enumerated terms.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::syntax::lsc_term::LscTerm;
use crate::syntax::VarName;

/// Simple types `A ::= ident | A -> A`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SimpleType {
    Atom(String),
    Arrow(Rc<SimpleType>, Rc<SimpleType>),
}

impl SimpleType {
    pub fn arrow(a: SimpleType, b: SimpleType) -> SimpleType {
        SimpleType::Arrow(Rc::new(a), Rc::new(b))
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::Atom(a) => write!(f, "{a}"),
            SimpleType::Arrow(l, r) => {
                if matches!(**l, SimpleType::Arrow(_, _)) {
                    write!(f, "({l}) -> {r}")
                } else {
                    write!(f, "{l} -> {r}")
                }
            }
        }
    }
}

/// Type errors for the LSC discipline.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TypeError {
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("type mismatch: expected {expected}, found {found}")]
    Mismatch { expected: String, found: String },
    #[error("applying a non-arrow of type {0}")]
    NotAnArrow(String),
    #[error("cannot infer binder type (checking mode required)")]
    CannotInfer,
}

pub type Env = BTreeMap<VarName, SimpleType>;

/// Check `t` against `expected` under `env`.
pub fn lsc_check(env: &Env, t: &LscTerm, expected: &SimpleType) -> Result<(), TypeError> {
    match t {
        LscTerm::Abs(x, b) => match expected {
            SimpleType::Arrow(d, c) => {
                let mut env2 = env.clone();
                env2.insert(x.clone(), (**d).clone());
                lsc_check(&env2, b, c)
            }
            _ => Err(TypeError::Mismatch {
                expected: expected.to_string(),
                found: "an arrow (abstraction)".into(),
            }),
        },
        LscTerm::Sub(b, x, a) => {
            let ta = lsc_synth(env, a)?;
            let mut env2 = env.clone();
            env2.insert(x.clone(), ta);
            lsc_check(&env2, b, expected)
        }
        _ => {
            let found = lsc_synth(env, t)?;
            if &found == expected {
                Ok(())
            } else {
                Err(TypeError::Mismatch {
                    expected: expected.to_string(),
                    found: found.to_string(),
                })
            }
        }
    }
}

/// Synthesize a type for `t` where every binder is forced.
pub fn lsc_synth(env: &Env, t: &LscTerm) -> Result<SimpleType, TypeError> {
    match t {
        LscTerm::Var(x) => env
            .get(x)
            .cloned()
            .ok_or_else(|| TypeError::Unbound(x.to_string())),
        LscTerm::Abs(_, _) => Err(TypeError::CannotInfer),
        LscTerm::App(f, a) => match lsc_synth(env, f)? {
            SimpleType::Arrow(d, c) => {
                lsc_check(env, a, &d)?;
                Ok((*c).clone())
            }
            other => Err(TypeError::NotAnArrow(other.to_string())),
        },
        LscTerm::Sub(b, x, a) => {
            let ta = lsc_synth(env, a)?;
            let mut env2 = env.clone();
            env2.insert(x.clone(), ta);
            lsc_synth(&env2, b)
        }
    }
}

// ---------------------------------------------------------------------------
// Inference (principal typing with unification)

#[derive(Debug, Clone, PartialEq, Eq)]
enum ITy {
    V(usize),
    Atom(String),
    Arrow(Box<ITy>, Box<ITy>),
}

impl ITy {
    fn from_concrete(t: &SimpleType) -> ITy {
        match t {
            SimpleType::Atom(a) => ITy::Atom(a.clone()),
            SimpleType::Arrow(l, r) => {
                ITy::Arrow(Box::new(ITy::from_concrete(l)), Box::new(ITy::from_concrete(r)))
            }
        }
    }
}

struct Unifier {
    subst: Vec<Option<ITy>>,
}

impl Unifier {
    fn fresh(&mut self) -> ITy {
        self.subst.push(None);
        ITy::V(self.subst.len() - 1)
    }

    fn resolve(&self, t: &ITy) -> ITy {
        match t {
            ITy::V(i) => match &self.subst[*i] {
                Some(u) => self.resolve(&u.clone()),
                None => t.clone(),
            },
            _ => t.clone(),
        }
    }

    fn occurs(&self, i: usize, t: &ITy) -> bool {
        match self.resolve(t) {
            ITy::V(j) => i == j,
            ITy::Atom(_) => false,
            ITy::Arrow(a, b) => self.occurs(i, &a) || self.occurs(i, &b),
        }
    }

    fn unify(&mut self, a: &ITy, b: &ITy) -> bool {
        let (a, b) = (self.resolve(a), self.resolve(b));
        match (a, b) {
            (ITy::V(i), ITy::V(j)) if i == j => true,
            (ITy::V(i), t) | (t, ITy::V(i)) => {
                if self.occurs(i, &t) {
                    false
                } else {
                    self.subst[i] = Some(t);
                    true
                }
            }
            (ITy::Atom(a1), ITy::Atom(a2)) => a1 == a2,
            (ITy::Arrow(a1, b1), ITy::Arrow(a2, b2)) => {
                self.unify(&a1, &a2) && self.unify(&b1, &b2)
            }
            _ => false,
        }
    }

    /// Convert to a `SimpleType`, rendering unresolved variables as rigid
    /// atoms with deterministic names.
    fn finalize(&self, t: &ITy, names: &mut BTreeMap<usize, String>) -> SimpleType {
        match self.resolve(t) {
            ITy::V(i) => {
                let n = names.len();
                let name = names.entry(i).or_insert_with(|| format!("a{n}"));
                SimpleType::Atom(name.clone())
            }
            ITy::Atom(a) => SimpleType::Atom(a),
            ITy::Arrow(a, b) => {
                SimpleType::arrow(self.finalize(&a, names), self.finalize(&b, names))
            }
        }
    }
}

fn infer(
    u: &mut Unifier,
    env: &mut BTreeMap<VarName, ITy>,
    t: &LscTerm,
) -> Option<ITy> {
    match t {
        LscTerm::Var(x) => env.get(x).cloned(),
        LscTerm::Abs(x, b) => {
            let d = u.fresh();
            let old = env.insert(x.clone(), d.clone());
            let c = infer(u, env, b);
            restore(env, x, old);
            Some(ITy::Arrow(Box::new(d), Box::new(c?)))
        }
        LscTerm::App(f, a) => {
            let tf = infer(u, env, f)?;
            let ta = infer(u, env, a)?;
            let c = u.fresh();
            if u.unify(&tf, &ITy::Arrow(Box::new(ta), Box::new(c.clone()))) {
                Some(c)
            } else {
                None
            }
        }
        LscTerm::Sub(b, x, a) => {
            let ta = infer(u, env, a)?;
            let old = env.insert(x.clone(), ta);
            let tb = infer(u, env, b);
            restore(env, x, old);
            tb
        }
    }
}

fn restore(env: &mut BTreeMap<VarName, ITy>, x: &VarName, old: Option<ITy>) {
    match old {
        Some(t) => {
            env.insert(x.clone(), t);
        }
        None => {
            env.remove(x);
        }
    }
}

/// Principal typing of `t`: free variables receive inferred types (unsolved
/// type variables are rendered as rigid atoms `a0, a1, …`). Returns `None`
/// when `t` is untypable.
pub fn infer_lsc(t: &LscTerm) -> Option<(Env, SimpleType)> {
    let mut u = Unifier { subst: Vec::new() };
    let mut env: BTreeMap<VarName, ITy> = BTreeMap::new();
    for x in t.free_vars() {
        let v = u.fresh();
        env.insert(x, v);
    }
    let free_itys: BTreeMap<VarName, ITy> = env.clone();
    let ty = infer(&mut u, &mut env, t)?;
    let mut names = BTreeMap::new();
    let out_env = free_itys
        .iter()
        .map(|(x, it)| (x.clone(), u.finalize(it, &mut names)))
        .collect();
    Some((out_env, u.finalize(&ty, &mut names)))
}

/// Decide whether `t` has type `expected` under `env`, with the env types
/// and `expected` treated as rigid. Free variables of `t` must be bound in
/// `env`. Unlike `lsc_check`, this works on terms with abstractions in
/// synthesizing positions (e.g. reducts of typed terms).
pub fn lsc_check_at(env: &Env, t: &LscTerm, expected: &SimpleType) -> bool {
    let mut u = Unifier { subst: Vec::new() };
    let mut ienv: BTreeMap<VarName, ITy> = BTreeMap::new();
    for x in t.free_vars() {
        match env.get(&x) {
            Some(a) => {
                ienv.insert(x, ITy::from_concrete(a));
            }
            None => return false,
        }
    }
    match infer(&mut u, &mut ienv, t) {
        Some(ty) => {
            let want = ITy::from_concrete(expected);
            u.unify(&ty, &want)
        }
        None => false,
    }
}
