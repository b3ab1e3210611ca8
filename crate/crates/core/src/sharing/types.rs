//! Typing for the sharing calculus: judgments Δ;Γ ⊢ t:A with an unrestricted
//! context Δ and a linear context Γ consumed exactly once. Binders carry no
//! annotations, so the checker is a unification-based synthesizer; unsolved
//! type variables are rendered as rigid atoms `A, B, …`.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::syntax::sharing_term::SharingTerm;
use crate::syntax::{Sort, VarName};

/// Types `A ::= ident | A -o B | ~A | !A`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SharingType {
    Atom(String),
    Lolli(Rc<SharingType>, Rc<SharingType>),
    Grant(Rc<SharingType>),
    Bang(Rc<SharingType>),
}

impl SharingType {
    pub fn lolli(a: SharingType, b: SharingType) -> SharingType {
        SharingType::Lolli(Rc::new(a), Rc::new(b))
    }
    pub fn grant(a: SharingType) -> SharingType {
        SharingType::Grant(Rc::new(a))
    }
    pub fn bang(a: SharingType) -> SharingType {
        SharingType::Bang(Rc::new(a))
    }
}

impl fmt::Display for SharingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SharingType::Atom(a) => write!(f, "{a}"),
            SharingType::Lolli(l, r) => {
                if matches!(**l, SharingType::Lolli(_, _)) {
                    write!(f, "({l}) -o {r}")
                } else {
                    write!(f, "{l} -o {r}")
                }
            }
            SharingType::Grant(a) => match **a {
                SharingType::Lolli(_, _) | SharingType::Bang(_) => write!(f, "~({a})"),
                _ => write!(f, "~{a}"),
            },
            SharingType::Bang(a) => match **a {
                SharingType::Lolli(_, _) => write!(f, "!({a})"),
                _ => write!(f, "!{a}"),
            },
        }
    }
}

/// The two typing contexts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TypingEnv {
    /// Unrestricted context Δ.
    pub delta: BTreeMap<VarName, SharingType>,
    /// Linear context Γ.
    pub gamma: BTreeMap<VarName, SharingType>,
}

/// Typing errors, reported for the first failing position.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SharingTypeError {
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("linear variable {0} unused")]
    LinearUnused(String),
    #[error("linear variable {0} used twice")]
    LinearReused(String),
    #[error("non-empty linear consumption under !")]
    LinearUnderBang,
    #[error("operand type mismatch")]
    Mismatch,
    #[error("explicit substitution argument is not of !~ type")]
    EsArgNotSharable,
}

/// The rule applied at a typing-derivation node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypingRule {
    Lvar,
    Uvar,
    Abs,
    App,
    Grant,
    Request,
    Prom,
    Sub,
}

/// A typing derivation with fully resolved types: at each node, `gamma` is
/// exactly the linear context consumed by `term`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypingDeriv {
    pub rule: TypingRule,
    pub term: SharingTerm,
    pub delta: BTreeMap<VarName, SharingType>,
    pub gamma: BTreeMap<VarName, SharingType>,
    pub ty: SharingType,
    pub premises: Vec<TypingDeriv>,
}

// ---------------------------------------------------------------------------
// Inference machinery

#[derive(Debug, Clone, PartialEq, Eq)]
enum ITy {
    V(usize),
    Atom(String),
    Lolli(Box<ITy>, Box<ITy>),
    Grant(Box<ITy>),
    Bang(Box<ITy>),
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
            ITy::Lolli(a, b) => self.occurs(i, &a) || self.occurs(i, &b),
            ITy::Grant(a) | ITy::Bang(a) => self.occurs(i, &a),
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
            (ITy::Lolli(a1, b1), ITy::Lolli(a2, b2)) => {
                self.unify(&a1, &a2) && self.unify(&b1, &b2)
            }
            (ITy::Grant(a1), ITy::Grant(a2)) | (ITy::Bang(a1), ITy::Bang(a2)) => {
                self.unify(&a1, &a2)
            }
            _ => false,
        }
    }

    fn finalize(&self, t: &ITy, names: &mut BTreeMap<usize, String>) -> SharingType {
        match self.resolve(t) {
            ITy::V(i) => {
                let n = names.len();
                let name = names.entry(i).or_insert_with(|| {
                    if n < 26 {
                        ((b'A' + n as u8) as char).to_string()
                    } else {
                        format!("A{n}")
                    }
                });
                SharingType::Atom(name.clone())
            }
            ITy::Atom(a) => SharingType::Atom(a),
            ITy::Lolli(a, b) => {
                SharingType::lolli(self.finalize(&a, names), self.finalize(&b, names))
            }
            ITy::Grant(a) => SharingType::grant(self.finalize(&a, names)),
            ITy::Bang(a) => SharingType::bang(self.finalize(&a, names)),
        }
    }
}

fn from_concrete(t: &SharingType) -> ITy {
    match t {
        SharingType::Atom(a) => ITy::Atom(a.clone()),
        SharingType::Lolli(a, b) => ITy::Lolli(Box::new(from_concrete(a)), Box::new(from_concrete(b))),
        SharingType::Grant(a) => ITy::Grant(Box::new(from_concrete(a))),
        SharingType::Bang(a) => ITy::Bang(Box::new(from_concrete(a))),
    }
}

/// A derivation node over inference types, resolved at the end.
struct INode {
    rule: TypingRule,
    term: SharingTerm,
    delta: BTreeMap<VarName, ITy>,
    gamma: BTreeMap<VarName, ITy>,
    ty: ITy,
    premises: Vec<INode>,
}

fn infer(
    un: &mut Unifier,
    delta: &mut BTreeMap<VarName, ITy>,
    gamma: &BTreeMap<VarName, ITy>,
    t: &SharingTerm,
) -> Result<INode, SharingTypeError> {
    let node = |rule, delta: &BTreeMap<VarName, ITy>, gamma, ty, premises| INode {
        rule,
        term: t.clone(),
        delta: delta.clone(),
        gamma,
        ty,
        premises,
    };
    match t {
        SharingTerm::LVar(a) => {
            let ty = gamma
                .get(a)
                .cloned()
                .ok_or_else(|| SharingTypeError::Unbound(a.to_string()))?;
            let used: BTreeMap<VarName, ITy> = [(a.clone(), ty.clone())].into();
            Ok(node(TypingRule::Lvar, delta, used, ty, vec![]))
        }
        SharingTerm::UVar(u) => {
            let a = delta
                .get(u)
                .cloned()
                .ok_or_else(|| SharingTypeError::Unbound(u.to_string()))?;
            Ok(node(
                TypingRule::Uvar,
                delta,
                BTreeMap::new(),
                ITy::Grant(Box::new(a)),
                vec![],
            ))
        }
        SharingTerm::Abs(a, b) => {
            let dom = un.fresh();
            let mut gamma2 = gamma.clone();
            gamma2.insert(a.clone(), dom.clone());
            let body = infer(un, delta, &gamma2, b)?;
            if !body.gamma.contains_key(a) {
                return Err(SharingTypeError::LinearUnused(a.to_string()));
            }
            let mut used = body.gamma.clone();
            used.remove(a);
            let ty = ITy::Lolli(Box::new(dom), Box::new(body.ty.clone()));
            Ok(node(TypingRule::Abs, delta, used, ty, vec![body]))
        }
        SharingTerm::App(f, s) => {
            let nf = infer(un, delta, gamma, f)?;
            let ns = infer(un, delta, gamma, s)?;
            let mut used = nf.gamma.clone();
            for (x, ty) in &ns.gamma {
                if used.insert(x.clone(), ty.clone()).is_some() {
                    return Err(SharingTypeError::LinearReused(x.to_string()));
                }
            }
            let cod = un.fresh();
            let want = ITy::Lolli(Box::new(ns.ty.clone()), Box::new(cod.clone()));
            if !un.unify(&nf.ty, &want) {
                return Err(SharingTypeError::Mismatch);
            }
            Ok(node(TypingRule::App, delta, used, cod, vec![nf, ns]))
        }
        SharingTerm::Grant(b) => {
            let inner = infer(un, delta, gamma, b)?;
            let ty = ITy::Grant(Box::new(inner.ty.clone()));
            let used = inner.gamma.clone();
            Ok(node(TypingRule::Grant, delta, used, ty, vec![inner]))
        }
        SharingTerm::Request(b) => {
            let inner = infer(un, delta, gamma, b)?;
            let a = un.fresh();
            if !un.unify(&inner.ty, &ITy::Grant(Box::new(a.clone()))) {
                return Err(SharingTypeError::Mismatch);
            }
            let used = inner.gamma.clone();
            Ok(node(TypingRule::Request, delta, used, a, vec![inner]))
        }
        SharingTerm::Prom(b) => {
            let inner = infer(un, delta, gamma, b)?;
            if !inner.gamma.is_empty() {
                return Err(SharingTypeError::LinearUnderBang);
            }
            let ty = ITy::Bang(Box::new(inner.ty.clone()));
            Ok(node(TypingRule::Prom, delta, BTreeMap::new(), ty, vec![inner]))
        }
        SharingTerm::Sub(b, u, s) => {
            let ns = infer(un, delta, gamma, s)?;
            let a = un.fresh();
            let want = ITy::Bang(Box::new(ITy::Grant(Box::new(a.clone()))));
            if !un.unify(&ns.ty, &want) {
                return Err(SharingTypeError::EsArgNotSharable);
            }
            let old = delta.insert(u.clone(), a);
            let nb = infer(un, delta, gamma, b);
            match old {
                Some(x) => {
                    delta.insert(u.clone(), x);
                }
                None => {
                    delta.remove(u);
                }
            }
            let nb = nb?;
            let mut used = nb.gamma.clone();
            for (x, ty) in &ns.gamma {
                if used.insert(x.clone(), ty.clone()).is_some() {
                    return Err(SharingTypeError::LinearReused(x.to_string()));
                }
            }
            let ty = nb.ty.clone();
            Ok(node(TypingRule::Sub, delta, used, ty, vec![nb, ns]))
        }
    }
}

fn finalize_node(un: &Unifier, n: &INode, names: &mut BTreeMap<usize, String>) -> TypingDeriv {
    TypingDeriv {
        rule: n.rule,
        term: n.term.clone(),
        delta: n
            .delta
            .iter()
            .map(|(x, t)| (x.clone(), un.finalize(t, names)))
            .collect(),
        gamma: n
            .gamma
            .iter()
            .map(|(x, t)| (x.clone(), un.finalize(t, names)))
            .collect(),
        ty: un.finalize(&n.ty, names),
        premises: n.premises.iter().map(|p| finalize_node(un, p, names)).collect(),
    }
}

fn run_inference(
    env: &TypingEnv,
    t: &SharingTerm,
) -> Result<(Unifier, INode), SharingTypeError> {
    let mut un = Unifier { subst: Vec::new() };
    let mut delta: BTreeMap<VarName, ITy> = env
        .delta
        .iter()
        .map(|(x, a)| (x.clone(), from_concrete(a)))
        .collect();
    let gamma: BTreeMap<VarName, ITy> = env
        .gamma
        .iter()
        .map(|(x, a)| (x.clone(), from_concrete(a)))
        .collect();
    // Free variables absent from the declared contexts get fresh types, so
    // open terms are checked against their principal typing.
    // Linear free variables must be declared in Γ; undeclared ones surface
    // as unbound-variable errors during inference.
    for x in t.free_vars() {
        if x.sort != Sort::Linear && !delta.contains_key(&x) {
            let v = un.fresh();
            delta.insert(x, v);
        }
    }
    let root = infer(&mut un, &mut delta, &gamma, t)?;
    Ok((un, root))
}

/// Synthesize the (principal) type of `t` under `env` and the set of linear
/// variables it consumes. Unrestricted free variables missing from Δ are
/// assigned fresh principal types; linear free variables must be declared.
pub fn typecheck_sharing(
    env: &TypingEnv,
    t: &SharingTerm,
) -> Result<(SharingType, std::collections::BTreeSet<VarName>), SharingTypeError> {
    let (un, root) = run_inference(env, t)?;
    let mut names = BTreeMap::new();
    let ty = un.finalize(&root.ty, &mut names);
    Ok((ty, root.gamma.keys().cloned().collect()))
}

/// The full typing derivation of `t` under `env`, with all types resolved.
pub fn typing_derivation(
    env: &TypingEnv,
    t: &SharingTerm,
) -> Result<TypingDeriv, SharingTypeError> {
    let (un, root) = run_inference(env, t)?;
    let mut names = BTreeMap::new();
    Ok(finalize_node(&un, &root, &mut names))
}
