//! Bang typing: types `A ::= α | !A | !A -> B`, environments assigning
//! `!`-prefixed types to variables, and a unification-based engine for both
//! checking under a given environment and principal inference.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::syntax::bang_term::BangTerm;
use crate::syntax::VarName;

/// Bang types. Arrow domains are always of shape `!A`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BType {
    Atom(String),
    BangT(Rc<BType>),
    ArrowBang(Rc<BType>, Rc<BType>),
}

impl BType {
    pub fn bang(a: BType) -> BType {
        BType::BangT(Rc::new(a))
    }

    /// `!A -> B` from the domain's payload `A` and codomain `B`.
    pub fn arrow_bang(a: BType, b: BType) -> BType {
        BType::ArrowBang(Rc::new(BType::bang(a)), Rc::new(b))
    }
}

impl fmt::Display for BType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BType::Atom(a) => write!(f, "{a}"),
            BType::BangT(a) => {
                if matches!(**a, BType::ArrowBang(_, _)) {
                    write!(f, "!({a})")
                } else {
                    write!(f, "!{a}")
                }
            }
            BType::ArrowBang(d, c) => write!(f, "{d} -> {c}"),
        }
    }
}

/// Errors for the Bang typing discipline.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BangTypeError {
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("environment entry for {0} is not a !-type")]
    EnvNotBang(String),
    #[error("type mismatch involving {0}")]
    Mismatch(String),
    #[error("der node has no typing rule in the simplified discipline")]
    DerNotTyped,
}

pub type BEnv = BTreeMap<VarName, BType>;

// ---------------------------------------------------------------------------
// Unification

#[derive(Debug, Clone, PartialEq, Eq)]
enum ITy {
    V(usize),
    Atom(String),
    Bang(Box<ITy>),
    Arrow(Box<ITy>, Box<ITy>),
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
            ITy::Bang(a) => self.occurs(i, &a),
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
            (ITy::Atom(x), ITy::Atom(y)) => x == y,
            (ITy::Bang(a), ITy::Bang(b)) => self.unify(&a, &b),
            (ITy::Arrow(a1, b1), ITy::Arrow(a2, b2)) => {
                self.unify(&a1, &a2) && self.unify(&b1, &b2)
            }
            _ => false,
        }
    }

    fn finalize(&self, t: &ITy, names: &mut BTreeMap<usize, String>) -> BType {
        match self.resolve(t) {
            ITy::V(i) => {
                let n = names.len();
                let name = names.entry(i).or_insert_with(|| format!("a{n}"));
                BType::Atom(name.clone())
            }
            ITy::Atom(a) => BType::Atom(a),
            ITy::Bang(a) => BType::bang(self.finalize(&a, names)),
            ITy::Arrow(a, b) => BType::ArrowBang(
                Rc::new(self.finalize(&a, names)),
                Rc::new(self.finalize(&b, names)),
            ),
        }
    }
}

fn from_concrete(t: &BType) -> ITy {
    match t {
        BType::Atom(a) => ITy::Atom(a.clone()),
        BType::BangT(a) => ITy::Bang(Box::new(from_concrete(a))),
        BType::ArrowBang(a, b) => {
            ITy::Arrow(Box::new(from_concrete(a)), Box::new(from_concrete(b)))
        }
    }
}

fn infer(
    u: &mut Unifier,
    env: &mut BTreeMap<VarName, ITy>,
    t: &BangTerm,
) -> Result<ITy, BangTypeError> {
    match t {
        // b-var: Γ, x:!A ⊢ x : A
        BangTerm::Var(x) => {
            let tx = env
                .get(x)
                .cloned()
                .ok_or_else(|| BangTypeError::Unbound(x.to_string()))?;
            let a = u.fresh();
            if u.unify(&tx, &ITy::Bang(Box::new(a.clone()))) {
                Ok(a)
            } else {
                Err(BangTypeError::EnvNotBang(x.to_string()))
            }
        }
        // b-abs: Γ, x:!A ⊢ t : B  ⇒  Γ ⊢ \x.t : !A -> B
        BangTerm::Abs(x, b) => {
            let d = ITy::Bang(Box::new(u.fresh()));
            let old = env.insert(x.clone(), d.clone());
            let c = infer(u, env, b);
            restore(env, x, old);
            Ok(ITy::Arrow(Box::new(d), Box::new(c?)))
        }
        // b-app: t : !A -> B, s : !A
        BangTerm::App(f, a) => {
            let tf = infer(u, env, f)?;
            let ta = infer(u, env, a)?;
            let payload = u.fresh();
            let c = u.fresh();
            let dom = ITy::Bang(Box::new(payload));
            let ok = u.unify(&ta, &dom)
                && u.unify(&tf, &ITy::Arrow(Box::new(dom.clone()), Box::new(c.clone())));
            if ok {
                Ok(c)
            } else {
                Err(BangTypeError::Mismatch(format!("{t}")))
            }
        }
        // b-prom: Γ ⊢ t : A  ⇒  Γ ⊢ !t : !A
        BangTerm::Prom(b) => Ok(ITy::Bang(Box::new(infer(u, env, b)?))),
        BangTerm::Der(_) => Err(BangTypeError::DerNotTyped),
        // b-es: Γ, x:!A ⊢ t : B, Γ ⊢ s : !A
        BangTerm::Sub(b, x, a) => {
            let ta = infer(u, env, a)?;
            let payload = u.fresh();
            if !u.unify(&ta, &ITy::Bang(Box::new(payload))) {
                return Err(BangTypeError::Mismatch(format!("{t}")));
            }
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

/// Synthesize the type of `t` under `env` (entries must be `!`-types;
/// binder types are solved by unification, unsolved variables are rendered
/// as rigid atoms `a0, a1, …`).
pub fn bang_typecheck(env: &BEnv, t: &BangTerm) -> Result<BType, BangTypeError> {
    for (x, a) in env {
        if !matches!(a, BType::BangT(_)) {
            return Err(BangTypeError::EnvNotBang(x.to_string()));
        }
    }
    let mut u = Unifier { subst: Vec::new() };
    let mut ienv: BTreeMap<VarName, ITy> = env
        .iter()
        .map(|(x, a)| (x.clone(), from_concrete(a)))
        .collect();
    let ty = infer(&mut u, &mut ienv, t)?;
    Ok(u.finalize(&ty, &mut BTreeMap::new()))
}

/// True iff `t` has type `expected` under `env`.
pub fn bang_check(env: &BEnv, t: &BangTerm, expected: &BType) -> bool {
    let mut u = Unifier { subst: Vec::new() };
    let mut ienv: BTreeMap<VarName, ITy> = env
        .iter()
        .map(|(x, a)| (x.clone(), from_concrete(a)))
        .collect();
    match infer(&mut u, &mut ienv, t) {
        Ok(ty) => u.unify(&ty, &from_concrete(expected)),
        Err(_) => false,
    }
}

/// Principal typing of `t`: free variables receive inferred `!`-types.
/// Returns `None` when `t` is untypable.
pub fn infer_bang(t: &BangTerm) -> Option<(BEnv, BType)> {
    let mut u = Unifier { subst: Vec::new() };
    let mut env: BTreeMap<VarName, ITy> = BTreeMap::new();
    for x in t.free_vars() {
        let v = ITy::Bang(Box::new(u.fresh()));
        env.insert(x, v);
    }
    let free_itys = env.clone();
    let ty = infer(&mut u, &mut env, t).ok()?;
    let mut names = BTreeMap::new();
    let out_env = free_itys
        .iter()
        .map(|(x, it)| (x.clone(), u.finalize(it, &mut names)))
        .collect();
    Some((out_env, u.finalize(&ty, &mut names)))
}
