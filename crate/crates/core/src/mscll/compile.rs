//! Compilation of sharing typing derivations to sequent derivations: a
//! judgment Δ;Γ ⊢ t:A becomes the one-sided sequent ⊢ ?∂̄⟨Δ⟩⊥, ⟨Γ⟩⊥, ⟨A⟩,
//! and each typing rule expands to a small derivation fragment.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::sharing::{SharingType, TypingDeriv, TypingRule};

use super::check::{Derivation, RuleTag, Sequent};
use super::formula::{neg, type_to_formula, Formula};

/// Errors raised on typing derivations whose shape does not match their
/// rule (never produced by the sharing type checker itself).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CompileError {
    #[error("malformed typing derivation: {0}")]
    Malformed(String),
}

fn malformed(msg: impl Into<String>) -> CompileError {
    CompileError::Malformed(msg.into())
}

/// The sequent of a typing judgment: each Δ entry contributes ?∂̄⟨D⟩⊥, each
/// Γ entry ⟨G⟩⊥, and the subject type contributes ⟨A⟩.
pub fn sequent_of(node: &TypingDeriv) -> Sequent {
    let mut fs = Vec::new();
    for d in node.delta.values() {
        fs.push(Formula::whynot(Formula::demandf(neg(&type_to_formula(d)))));
    }
    for g in node.gamma.values() {
        fs.push(neg(&type_to_formula(g)));
    }
    fs.push(type_to_formula(&node.ty));
    Sequent::new(fs)
}

fn counts(s: &Sequent) -> BTreeMap<Formula, usize> {
    let mut m = BTreeMap::new();
    for f in s.formulas() {
        *m.entry(f.clone()).or_insert(0) += 1;
    }
    m
}

/// Expand the derived rules ?w* and ?c*: turn a derivation of a sequent
/// that differs from `target` only in the multiplicities of ?-formulas
/// into a derivation of `target`.
fn adjust_to(mut d: Derivation, target: &Sequent) -> Result<Derivation, CompileError> {
    loop {
        if &d.conclusion == target {
            return Ok(d);
        }
        let cur = counts(&d.conclusion);
        let tgt = counts(target);
        let mut step = None;
        for (f, &n) in cur.iter() {
            let want = tgt.get(f).copied().unwrap_or(0);
            if n > want {
                if !matches!(f, Formula::WhyNot(_)) || want == 0 {
                    return Err(malformed(format!(
                        "cannot contract {f} towards the target sequent"
                    )));
                }
                step = Some((RuleTag::ContrC, d.conclusion.without(f).unwrap()));
                break;
            }
        }
        if step.is_none() {
            for (f, &want) in tgt.iter() {
                let n = cur.get(f).copied().unwrap_or(0);
                if want > n {
                    if !matches!(f, Formula::WhyNot(_)) {
                        return Err(malformed(format!(
                            "cannot weaken {f} towards the target sequent"
                        )));
                    }
                    step = Some((RuleTag::WeakW, d.conclusion.with(f.clone())));
                    break;
                }
            }
        }
        let (rule, concl) = step.ok_or_else(|| malformed("sequent adjustment is stuck"))?;
        d = Derivation::node(rule, concl, vec![d]);
    }
}

fn ax(a: Formula) -> Derivation {
    let concl = Sequent::new(vec![a.clone(), neg(&a)]);
    Derivation::node(RuleTag::Ax, concl, vec![])
}

fn cut(left: Derivation, right: Derivation, cut_formula: Formula) -> Result<Derivation, CompileError> {
    let g = left
        .conclusion
        .without(&cut_formula)
        .ok_or_else(|| malformed(format!("cut premise lacks {cut_formula}")))?;
    let d = right
        .conclusion
        .without(&neg(&cut_formula))
        .ok_or_else(|| malformed(format!("cut premise lacks {}", neg(&cut_formula))))?;
    Ok(Derivation {
        rule: RuleTag::Cut,
        conclusion: g.union(&d),
        premises: vec![left, right],
        cut_formula: Some(cut_formula),
    })
}

fn unary(rule: RuleTag, premise: Derivation, remove: &Formula, add: Formula) -> Result<Derivation, CompileError> {
    let concl = premise
        .conclusion
        .without(remove)
        .ok_or_else(|| malformed(format!("premise lacks {remove}")))?
        .with(add);
    Ok(Derivation::node(rule, concl, vec![premise]))
}

fn premise_pair<'a>(node: &'a TypingDeriv) -> Result<(&'a TypingDeriv, &'a TypingDeriv), CompileError> {
    match node.premises.as_slice() {
        [a, b] => Ok((a, b)),
        _ => Err(malformed("expected two premises")),
    }
}

fn premise_one<'a>(node: &'a TypingDeriv) -> Result<&'a TypingDeriv, CompileError> {
    match node.premises.as_slice() {
        [a] => Ok(a),
        _ => Err(malformed("expected one premise")),
    }
}

/// Compile a typing derivation into a sequent derivation of its judgment's
/// sequent.
pub fn compile_typing(node: &TypingDeriv) -> Result<Derivation, CompileError> {
    let target = sequent_of(node);
    let body = match node.rule {
        // ax ⊢ ⟨A⟩⊥, ⟨A⟩, weakened with the Δ entries
        TypingRule::Lvar => ax(type_to_formula(&node.ty)),
        // ⊢ ⟨A⟩⊥,⟨A⟩ then ∂̄, then d, then ∂; weakened with Δ ∖ {u}
        TypingRule::Uvar => {
            let a = match &node.ty {
                SharingType::Grant(inner) => type_to_formula(inner),
                other => return Err(malformed(format!("uvar node of type {other}"))),
            };
            let base = ax(a.clone());
            let dem = unary(RuleTag::DemandI, base, &neg(&a), Formula::demandf(neg(&a)))?;
            let der = unary(
                RuleTag::DerD,
                dem,
                &Formula::demandf(neg(&a)),
                Formula::whynot(Formula::demandf(neg(&a))),
            )?;
            unary(RuleTag::GrantI, der, &a, Formula::grantf(a.clone()))?
        }
        // ⅋ on ⟨A⟩⊥ (the binder's Γ entry) and ⟨B⟩
        TypingRule::Abs => {
            let ih = compile_typing(premise_one(node)?)?;
            let (a, b) = match &node.ty {
                SharingType::Lolli(a, b) => (type_to_formula(a), type_to_formula(b)),
                other => return Err(malformed(format!("abs node of type {other}"))),
            };
            let concl = ih
                .conclusion
                .without(&neg(&a))
                .and_then(|s| s.without(&b))
                .ok_or_else(|| malformed("abs premise lacks the domain or codomain"))?
                .with(Formula::par(neg(&a), b));
            Derivation::node(RuleTag::ParR, concl, vec![ih])
        }
        // cut the arrow formula against ⟨A⟩ ⊗ ⟨B⟩⊥ built from the argument
        // and an axiom; contract the duplicated Δ entries
        TypingRule::App => {
            let (pf, ps) = premise_pair(node)?;
            let ihf = compile_typing(pf)?;
            let ihs = compile_typing(ps)?;
            let a = type_to_formula(&ps.ty);
            let b = type_to_formula(&node.ty);
            let arrow = Formula::par(neg(&a), b.clone());
            let axb = ax(b.clone());
            let tensor_concl = ihs
                .conclusion
                .without(&a)
                .ok_or_else(|| malformed("app argument premise lacks its type formula"))?
                .with(b.clone())
                .with(Formula::tensor(a.clone(), neg(&b)));
            let tensor = Derivation::node(RuleTag::TensorR, tensor_concl, vec![ihs, axb]);
            cut(ihf, tensor, arrow)?
        }
        // ∂-introduction on the subject formula
        TypingRule::Grant => {
            let ih = compile_typing(premise_one(node)?)?;
            let a = match &node.ty {
                SharingType::Grant(inner) => type_to_formula(inner),
                other => return Err(malformed(format!("grant node of type {other}"))),
            };
            unary(RuleTag::GrantI, ih, &a, Formula::grantf(a.clone()))?
        }
        // cut ∂⟨A⟩ against ∂̄⟨A⟩⊥ built by ∂̄-introduction over an axiom
        TypingRule::Request => {
            let ih = compile_typing(premise_one(node)?)?;
            let a = type_to_formula(&node.ty);
            let axa = ax(a.clone());
            let dem = unary(RuleTag::DemandI, axa, &neg(&a), Formula::demandf(neg(&a)))?;
            cut(ih, dem, Formula::grantf(a))?
        }
        // promotion; the context is ?-only because Γ is empty
        TypingRule::Prom => {
            let ih = compile_typing(premise_one(node)?)?;
            let a = match &node.ty {
                SharingType::Bang(inner) => type_to_formula(inner),
                other => return Err(malformed(format!("prom node of type {other}"))),
            };
            unary(RuleTag::PromP, ih, &a, Formula::ofcourse(a.clone()))?
        }
        // cut the bound variable's ?∂̄⟨A⟩⊥ against the argument's !∂⟨A⟩;
        // contract the duplicated Δ entries
        TypingRule::Sub => {
            let (pb, ps) = premise_pair(node)?;
            let ihb = compile_typing(pb)?;
            let ihs = compile_typing(ps)?;
            let a = match &ps.ty {
                SharingType::Bang(g) => match &**g {
                    SharingType::Grant(inner) => type_to_formula(inner),
                    other => return Err(malformed(format!("sub argument of type !{other}"))),
                },
                other => return Err(malformed(format!("sub argument of type {other}"))),
            };
            let cut_formula = Formula::whynot(Formula::demandf(neg(&a)));
            cut(ihb, ihs, cut_formula)?
        }
    };
    adjust_to(body, &target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mscll::check::check_derivation;
    use crate::sharing::{typing_derivation, TypingEnv};
    use crate::syntax::parse_sharing;

    fn compiled(src: &str) -> (TypingDeriv, Derivation) {
        let t = parse_sharing(src).unwrap();
        let td = typing_derivation(&TypingEnv::default(), &t).unwrap();
        let d = compile_typing(&td).unwrap();
        (td, d)
    }

    #[test]
    fn uvar_compiles_through_dereliction() {
        let (td, d) = compiled("u");
        assert_eq!(d.conclusion, sequent_of(&td));
        check_derivation(&d).expect("uvar compilation checks");
        // the derivation threads ∂̄-introduction under the dereliction
        fn has_rule(d: &Derivation, r: RuleTag) -> bool {
            d.rule == r || d.premises.iter().any(|p| has_rule(p, r))
        }
        assert!(has_rule(&d, RuleTag::DerD));
        assert!(has_rule(&d, RuleTag::DemandI));
    }

    #[test]
    fn duplicator_compiles_and_checks() {
        let (td, d) = compiled("\\'a. (!~(!u))[u := 'a]");
        assert_eq!(d.conclusion, sequent_of(&td));
        assert_eq!(d.conclusion.len(), 1);
        check_derivation(&d).expect("duplicator compilation checks");
    }

    #[test]
    fn application_contracts_the_shared_context() {
        let (td, d) = compiled("(\\'a. 'a) (open(u))");
        assert_eq!(d.conclusion, sequent_of(&td));
        check_derivation(&d).expect("application compilation checks");
        // both premises mention u, so the compiled derivation contracts
        assert_eq!(d.rule, RuleTag::ContrC);
    }

    #[test]
    fn grant_request_prom_round() {
        for src in ["~(\\'a. 'a)", "open(u)", "!u", "u[u := !~(\\'a. 'a)]"] {
            let (td, d) = compiled(src);
            assert_eq!(d.conclusion, sequent_of(&td), "{src}");
            check_derivation(&d).unwrap_or_else(|e| panic!("{src}: {e:?}"));
        }
    }
}
