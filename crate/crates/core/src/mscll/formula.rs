//! Formulas `A ::= α | α⊥ | A⊗B | A⅋B | !A | ?A | ∂A | ∂̄A`, involutive
//! negation, the MELL embedding, and the type-to-formula translation.

use std::fmt;
use std::rc::Rc;

use crate::sharing::SharingType;

/// MSCLL formulas. `GrantF` is the sharing modality ∂ ("~" on types) and
/// `DemandF` its dual ∂̄.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    PosAtom(String),
    NegAtom(String),
    Tensor(Rc<Formula>, Rc<Formula>),
    Par(Rc<Formula>, Rc<Formula>),
    OfCourse(Rc<Formula>),
    WhyNot(Rc<Formula>),
    GrantF(Rc<Formula>),
    DemandF(Rc<Formula>),
}

impl Formula {
    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Rc::new(a), Rc::new(b))
    }
    pub fn par(a: Formula, b: Formula) -> Formula {
        Formula::Par(Rc::new(a), Rc::new(b))
    }
    pub fn ofcourse(a: Formula) -> Formula {
        Formula::OfCourse(Rc::new(a))
    }
    pub fn whynot(a: Formula) -> Formula {
        Formula::WhyNot(Rc::new(a))
    }
    pub fn grantf(a: Formula) -> Formula {
        Formula::GrantF(Rc::new(a))
    }
    pub fn demandf(a: Formula) -> Formula {
        Formula::DemandF(Rc::new(a))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn atomic(a: &Formula) -> bool {
            matches!(
                a,
                Formula::PosAtom(_)
                    | Formula::NegAtom(_)
                    | Formula::OfCourse(_)
                    | Formula::WhyNot(_)
                    | Formula::GrantF(_)
                    | Formula::DemandF(_)
            )
        }
        fn prefix(f: &mut fmt::Formatter<'_>, sym: &str, a: &Formula) -> fmt::Result {
            if atomic(a) {
                write!(f, "{sym}{a}")
            } else {
                write!(f, "{sym}({a})")
            }
        }
        fn side(f: &mut fmt::Formatter<'_>, a: &Formula) -> fmt::Result {
            if atomic(a) {
                write!(f, "{a}")
            } else {
                write!(f, "({a})")
            }
        }
        match self {
            Formula::PosAtom(a) => write!(f, "{a}"),
            Formula::NegAtom(a) => write!(f, "{a}^"),
            Formula::Tensor(a, b) => {
                side(f, a)?;
                write!(f, " * ")?;
                side(f, b)
            }
            Formula::Par(a, b) => {
                side(f, a)?;
                write!(f, " @ ")?;
                side(f, b)
            }
            Formula::OfCourse(a) => prefix(f, "!", a),
            Formula::WhyNot(a) => prefix(f, "?", a),
            Formula::GrantF(a) => prefix(f, "~", a),
            Formula::DemandF(a) => prefix(f, "-", a),
        }
    }
}

/// Linear negation: involutive, De Morgan over ⊗/⅋ and !/?, and swapping
/// ∂/∂̄.
pub fn neg(a: &Formula) -> Formula {
    match a {
        Formula::PosAtom(x) => Formula::NegAtom(x.clone()),
        Formula::NegAtom(x) => Formula::PosAtom(x.clone()),
        Formula::Tensor(l, r) => Formula::par(neg(l), neg(r)),
        Formula::Par(l, r) => Formula::tensor(neg(l), neg(r)),
        Formula::OfCourse(x) => Formula::whynot(neg(x)),
        Formula::WhyNot(x) => Formula::ofcourse(neg(x)),
        Formula::GrantF(x) => Formula::demandf(neg(x)),
        Formula::DemandF(x) => Formula::grantf(neg(x)),
    }
}

/// The MELL embedding ⟨·⟩: replaces every `!` by `!∂` and every `?` by
/// `?∂̄`, leaving the other connectives unchanged. Inputs are expected to
/// use only MELL connectives (no ∂/∂̄).
pub fn embed_mell(a: &Formula) -> Formula {
    match a {
        Formula::PosAtom(_) | Formula::NegAtom(_) => a.clone(),
        Formula::Tensor(l, r) => Formula::tensor(embed_mell(l), embed_mell(r)),
        Formula::Par(l, r) => Formula::par(embed_mell(l), embed_mell(r)),
        Formula::OfCourse(x) => Formula::ofcourse(Formula::grantf(embed_mell(x))),
        Formula::WhyNot(x) => Formula::whynot(Formula::demandf(embed_mell(x))),
        Formula::GrantF(x) => Formula::grantf(embed_mell(x)),
        Formula::DemandF(x) => Formula::demandf(embed_mell(x)),
    }
}

/// The type-to-formula translation: `α ↦ α`, `A ⊸ B ↦ ⟨A⟩⊥ ⅋ ⟨B⟩`,
/// `~A ↦ ∂⟨A⟩`, `!A ↦ !⟨A⟩`.
pub fn type_to_formula(a: &SharingType) -> Formula {
    match a {
        SharingType::Atom(x) => Formula::PosAtom(x.clone()),
        SharingType::Lolli(l, r) => {
            Formula::par(neg(&type_to_formula(l)), type_to_formula(r))
        }
        SharingType::Grant(x) => Formula::grantf(type_to_formula(x)),
        SharingType::Bang(x) => Formula::ofcourse(type_to_formula(x)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sharing_type;

    fn atom(s: &str) -> Formula {
        Formula::PosAtom(s.into())
    }

    #[test]
    fn negation_table_and_involution() {
        let t = Formula::tensor(atom("a"), atom("b"));
        assert_eq!(
            neg(&t),
            Formula::par(Formula::NegAtom("a".into()), Formula::NegAtom("b".into()))
        );
        assert_eq!(
            neg(&Formula::grantf(atom("a"))),
            Formula::demandf(Formula::NegAtom("a".into()))
        );
        let deep = Formula::ofcourse(Formula::par(
            Formula::grantf(atom("a")),
            Formula::whynot(Formula::demandf(atom("b"))),
        ));
        assert_eq!(neg(&neg(&deep)), deep);
    }

    #[test]
    fn mell_embedding() {
        assert_eq!(
            embed_mell(&Formula::ofcourse(atom("a"))),
            Formula::ofcourse(Formula::grantf(atom("a")))
        );
        assert_eq!(
            embed_mell(&Formula::whynot(Formula::NegAtom("a".into()))),
            Formula::whynot(Formula::demandf(Formula::NegAtom("a".into())))
        );
        let t = Formula::tensor(atom("a"), atom("b"));
        assert_eq!(embed_mell(&t), t);
    }

    #[test]
    fn types_to_formulas() {
        let lolli = parse_sharing_type("a -o b").unwrap();
        assert_eq!(
            type_to_formula(&lolli),
            Formula::par(Formula::NegAtom("a".into()), atom("b"))
        );
        assert_eq!(
            type_to_formula(&parse_sharing_type("~a").unwrap()),
            Formula::grantf(atom("a"))
        );
        assert_eq!(
            type_to_formula(&parse_sharing_type("!a").unwrap()),
            Formula::ofcourse(atom("a"))
        );
    }

    #[test]
    fn negation_commutes_with_translation_duality() {
        // ⟨A ⊸ B⟩⊥ = ⟨A⟩ ⊗ ⟨B⟩⊥
        let lolli = parse_sharing_type("~a -o !b").unwrap();
        let f = type_to_formula(&lolli);
        assert_eq!(
            neg(&f),
            Formula::tensor(
                Formula::grantf(atom("a")),
                Formula::whynot(Formula::NegAtom("b".into()))
            )
        );
    }
}
