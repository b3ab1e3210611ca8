//! Inductive normal-form classification over the tag set
//! 𝒜 = {var, λ, @, req, ∂, !, !∂}.

use std::fmt;

use crate::syntax::sharing_term::SharingTerm;

/// Normal-form tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NfTag {
    Var,
    Lam,
    App,
    Req,
    Grant,
    Bang,
    BangGrant,
}

impl fmt::Display for NfTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NfTag::Var => "var",
            NfTag::Lam => "lambda",
            NfTag::App => "app",
            NfTag::Req => "req",
            NfTag::Grant => "grant",
            NfTag::Bang => "bang",
            NfTag::BangGrant => "banggrant",
        };
        write!(f, "{s}")
    }
}

/// The unique derivable tag of `t` in the normal-form grammar, or `None`
/// when no rule applies (i.e. `t` is reducible).
pub fn classify_nf(t: &SharingTerm) -> Option<NfTag> {
    match t {
        SharingTerm::LVar(_) | SharingTerm::UVar(_) => Some(NfTag::Var),
        SharingTerm::Abs(_, b) => classify_nf(b).map(|_| NfTag::Lam),
        SharingTerm::Grant(b) => classify_nf(b).map(|_| NfTag::Grant),
        SharingTerm::Prom(b) => match classify_nf(b)? {
            NfTag::Grant => Some(NfTag::BangGrant),
            _ => Some(NfTag::Bang),
        },
        SharingTerm::App(f, a) => {
            let alpha = classify_nf(f)?;
            classify_nf(a)?;
            if alpha != NfTag::Lam {
                Some(NfTag::App)
            } else {
                None
            }
        }
        SharingTerm::Request(b) => {
            let alpha = classify_nf(b)?;
            if alpha != NfTag::Grant {
                Some(NfTag::Req)
            } else {
                None
            }
        }
        SharingTerm::Sub(b, u, a) => {
            let alpha = classify_nf(b)?;
            let beta = classify_nf(a)?;
            let ok = if b.free_vars().contains(u) {
                beta != NfTag::BangGrant
            } else {
                beta != NfTag::BangGrant && beta != NfTag::Bang
            };
            if ok {
                Some(alpha)
            } else {
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sharing;

    fn tag(s: &str) -> Option<NfTag> {
        classify_nf(&parse_sharing(s).unwrap())
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(tag("'a"), Some(NfTag::Var));
        assert_eq!(tag("(open(u) open(u))[u := !v]"), Some(NfTag::App));
        assert_eq!(tag("!~u"), Some(NfTag::BangGrant));
    }

    #[test]
    fn reducible_terms_have_no_tag() {
        assert_eq!(tag("open(~u)"), None);
        assert_eq!(tag("u[u := !~v]"), None);
        assert_eq!(tag("v[u := !w]"), None); // dead sharable ES: gc applies
        assert_eq!(tag("(\\'a. 'a) u"), None);
    }
}
