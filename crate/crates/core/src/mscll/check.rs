//! Sequents as formula multisets and a local checker for sequent
//! derivations: every node is validated against its rule, with context
//! splits read off the premises' recorded conclusions.

use std::fmt;

use super::formula::{neg, Formula};
use crate::syntax::AstLines;

/// A one-sided sequent ⊢ Γ: a multiset of formulas (kept sorted; order is
/// irrelevant, multiplicity matters).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequent(Vec<Formula>);

impl Sequent {
    pub fn new(mut formulas: Vec<Formula>) -> Sequent {
        formulas.sort();
        Sequent(formulas)
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.0.binary_search(f).is_ok()
    }

    /// The multiset with one occurrence of `f` removed, if present.
    pub fn without(&self, f: &Formula) -> Option<Sequent> {
        match self.0.binary_search(f) {
            Ok(i) => {
                let mut v = self.0.clone();
                v.remove(i);
                Some(Sequent(v))
            }
            Err(_) => None,
        }
    }

    /// The multiset with `f` added.
    pub fn with(&self, f: Formula) -> Sequent {
        let mut v = self.0.clone();
        v.push(f);
        Sequent::new(v)
    }

    /// Multiset union.
    pub fn union(&self, other: &Sequent) -> Sequent {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Sequent::new(v)
    }

    /// The distinct formulas of the sequent.
    pub fn distinct(&self) -> Vec<&Formula> {
        let mut out: Vec<&Formula> = Vec::new();
        for f in &self.0 {
            if out.last() != Some(&f) {
                out.push(f);
            }
        }
        out
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|-")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {a}")?;
        }
        Ok(())
    }
}

/// The ten sequent rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleTag {
    Ax,
    Cut,
    TensorR,
    ParR,
    PromP,
    WeakW,
    ContrC,
    DerD,
    GrantI,
    DemandI,
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RuleTag::Ax => "ax",
            RuleTag::Cut => "cut",
            RuleTag::TensorR => "tensor",
            RuleTag::ParR => "par",
            RuleTag::PromP => "prom",
            RuleTag::WeakW => "weak",
            RuleTag::ContrC => "contr",
            RuleTag::DerD => "der",
            RuleTag::GrantI => "grant",
            RuleTag::DemandI => "demand",
        };
        write!(f, "{s}")
    }
}

/// A sequent derivation. Context splits for `cut` and `⊗` are declared by
/// the premises' conclusions; `cut` additionally records the eliminated
/// formula (the one occurring positively in the first premise).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub rule: RuleTag,
    pub conclusion: Sequent,
    pub premises: Vec<Derivation>,
    pub cut_formula: Option<Formula>,
}

impl Derivation {
    pub fn node(rule: RuleTag, conclusion: Sequent, premises: Vec<Derivation>) -> Derivation {
        Derivation {
            rule,
            conclusion,
            premises,
            cut_formula: None,
        }
    }
}

impl AstLines for Derivation {
    fn ast_lines(&self) -> String {
        fn push(out: &mut String, depth: usize, d: &Derivation) {
            for _ in 0..depth {
                out.push_str("  ");
            }
            match &d.cut_formula {
                Some(f) => out.push_str(&format!("{} [{}] {}\n", d.rule, f, d.conclusion)),
                None => out.push_str(&format!("{} {}\n", d.rule, d.conclusion)),
            }
            for p in &d.premises {
                push(out, depth + 1, p);
            }
        }
        let mut out = String::new();
        push(&mut out, 0, self);
        out
    }
}

/// Validate every node of `d`. Returns the list of node errors (empty for
/// a correct derivation).
pub fn check_derivation(d: &Derivation) -> Result<(), Vec<String>> {
    let mut errors = Vec::new();
    walk(d, &mut errors);
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

fn walk(d: &Derivation, errors: &mut Vec<String>) {
    if let Err(e) = check_node(d) {
        errors.push(format!("{} node ({}): {}", d.rule, d.conclusion, e));
    }
    for p in &d.premises {
        walk(p, errors);
    }
}

fn arity(d: &Derivation, n: usize) -> Result<(), String> {
    if d.premises.len() == n {
        Ok(())
    } else {
        Err(format!("expected {n} premises, found {}", d.premises.len()))
    }
}

fn check_node(d: &Derivation) -> Result<(), String> {
    match d.rule {
        // ax: ⊢ A, A⊥
        RuleTag::Ax => {
            arity(d, 0)?;
            let fs = d.conclusion.formulas();
            if fs.len() == 2 && (neg(&fs[0]) == fs[1] || neg(&fs[1]) == fs[0]) {
                Ok(())
            } else {
                Err("conclusion is not of the form A, A^".into())
            }
        }
        // cut: ⊢ Γ,A and ⊢ Δ,A⊥ give ⊢ Γ,Δ
        RuleTag::Cut => {
            arity(d, 2)?;
            let a = d
                .cut_formula
                .as_ref()
                .ok_or_else(|| "cut node lacks the eliminated formula".to_string())?;
            let g = d.premises[0]
                .conclusion
                .without(a)
                .ok_or_else(|| format!("first premise lacks {a}"))?;
            let dd = d.premises[1]
                .conclusion
                .without(&neg(a))
                .ok_or_else(|| format!("second premise lacks {}", neg(a)))?;
            if g.union(&dd) == d.conclusion {
                Ok(())
            } else {
                Err("conclusion is not the merge of the cut contexts".into())
            }
        }
        // ⊗: ⊢ Γ,A and ⊢ Δ,B give ⊢ Γ,Δ,A⊗B
        RuleTag::TensorR => {
            arity(d, 2)?;
            for f in d.conclusion.distinct() {
                if let Formula::Tensor(a, b) = f {
                    let rest = d.conclusion.without(f).unwrap();
                    if let (Some(g), Some(dd)) = (
                        d.premises[0].conclusion.without(a),
                        d.premises[1].conclusion.without(b),
                    ) {
                        if g.union(&dd) == rest {
                            return Ok(());
                        }
                    }
                }
            }
            Err("no tensor formula matches the premises".into())
        }
        // ⅋: ⊢ Γ,A,B gives ⊢ Γ,A⅋B
        RuleTag::ParR => {
            arity(d, 1)?;
            for f in d.conclusion.distinct() {
                if let Formula::Par(a, b) = f {
                    let want = d.conclusion.without(f).unwrap().with((**a).clone()).with((**b).clone());
                    if want == d.premises[0].conclusion {
                        return Ok(());
                    }
                }
            }
            Err("no par formula matches the premise".into())
        }
        // !p: ⊢ ?Γ,A gives ⊢ ?Γ,!A
        RuleTag::PromP => {
            arity(d, 1)?;
            for f in d.conclusion.distinct() {
                if let Formula::OfCourse(a) = f {
                    let rest = d.conclusion.without(f).unwrap();
                    let all_why = rest.formulas().iter().all(|g| matches!(g, Formula::WhyNot(_)));
                    if all_why && rest.with((**a).clone()) == d.premises[0].conclusion {
                        return Ok(());
                    }
                }
            }
            Err("no !-formula with ?-only context matches the premise".into())
        }
        // ?w: ⊢ Γ gives ⊢ Γ,?A
        RuleTag::WeakW => {
            arity(d, 1)?;
            for f in d.conclusion.distinct() {
                if matches!(f, Formula::WhyNot(_))
                    && d.conclusion.without(f).unwrap() == d.premises[0].conclusion
                {
                    return Ok(());
                }
            }
            Err("no weakened ?-formula matches the premise".into())
        }
        // ?c: ⊢ Γ,?A,?A gives ⊢ Γ,?A
        RuleTag::ContrC => {
            arity(d, 1)?;
            for f in d.conclusion.distinct() {
                if matches!(f, Formula::WhyNot(_))
                    && d.conclusion.with(f.clone()) == d.premises[0].conclusion
                {
                    return Ok(());
                }
            }
            Err("no contracted ?-formula matches the premise".into())
        }
        // ?∂̄d: ⊢ Γ,∂̄A gives ⊢ Γ,?∂̄A (the premise formula must be ∂̄-shaped)
        RuleTag::DerD => {
            arity(d, 1)?;
            for f in d.conclusion.distinct() {
                if let Formula::WhyNot(inner) = f {
                    if matches!(**inner, Formula::DemandF(_)) {
                        let want = d.conclusion.without(f).unwrap().with((**inner).clone());
                        if want == d.premises[0].conclusion {
                            return Ok(());
                        }
                    }
                }
            }
            Err("dereliction requires a ?-formula over a demand formula".into())
        }
        // ∂: ⊢ Γ,A gives ⊢ Γ,∂A
        RuleTag::GrantI => {
            arity(d, 1)?;
            for f in d.conclusion.distinct() {
                if let Formula::GrantF(a) = f {
                    let want = d.conclusion.without(f).unwrap().with((**a).clone());
                    if want == d.premises[0].conclusion {
                        return Ok(());
                    }
                }
            }
            Err("no grant formula matches the premise".into())
        }
        // ∂̄: ⊢ Γ,A gives ⊢ Γ,∂̄A
        RuleTag::DemandI => {
            arity(d, 1)?;
            for f in d.conclusion.distinct() {
                if let Formula::DemandF(a) = f {
                    let want = d.conclusion.without(f).unwrap().with((**a).clone());
                    if want == d.premises[0].conclusion {
                        return Ok(());
                    }
                }
            }
            Err("no demand formula matches the premise".into())
        }
    }
}
