//! Recognizers for the reduction-closed image grammars of the four
//! translations. Each recognizer returns the (unique) derivation of the
//! term in the grammar, or `None`.

use crate::syntax::sharing_term::SharingTerm;
use crate::syntax::VarName;

use super::TranslationKind;

/// A node of an image-grammar derivation: the production used at this
/// position and the derivations of its grammar-level subterms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageNode {
    pub production: &'static str,
    pub children: Vec<ImageNode>,
}

impl ImageNode {
    fn leaf(production: &'static str) -> ImageNode {
        ImageNode {
            production,
            children: Vec::new(),
        }
    }

    fn node(production: &'static str, children: Vec<ImageNode>) -> ImageNode {
        ImageNode {
            production,
            children,
        }
    }
}

/// A certificate that a term belongs to an image grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageMembership {
    pub kind: TranslationKind,
    pub witness: ImageNode,
}

/// Match the abstraction pattern `λa. ť[x := a]` with `a ∉ fv(ť)`,
/// returning the ES binder `x` and the body `ť`.
pub(crate) fn match_lam_pattern(t: &SharingTerm) -> Option<(&VarName, &SharingTerm)> {
    if let SharingTerm::Abs(a, body) = t {
        if let SharingTerm::Sub(b, x, arg) = &**body {
            let arg_is_a = matches!(
                &**arg,
                SharingTerm::LVar(y) | SharingTerm::UVar(y) if y == a
            );
            if arg_is_a && !b.free_vars().contains(a) {
                return Some((x, b));
            }
        }
    }
    None
}

/// Decide membership of `t` in the image grammar of `kind`.
pub fn in_image(t: &SharingTerm, kind: TranslationKind) -> Option<ImageMembership> {
    let witness = match kind {
        TranslationKind::Cbn => cbn(t),
        TranslationKind::Cbv => cbv(t),
        TranslationKind::Cbs => cbs(t),
        TranslationKind::Bang => bang(t),
    }?;
    Some(ImageMembership { kind, witness })
}

fn cbn(t: &SharingTerm) -> Option<ImageNode> {
    use SharingTerm::*;
    match t {
        Request(inner) => match &**inner {
            UVar(_) => Some(ImageNode::leaf("open-var")),
            Grant(b) => Some(ImageNode::node("open-grant", vec![cbn(b)?])),
            _ => None,
        },
        Abs(_, _) => {
            let (_, body) = match_lam_pattern(t)?;
            Some(ImageNode::node("lam", vec![cbn(body)?]))
        }
        App(f, a) => {
            if let Prom(g) = &**a {
                if let Grant(s) = &**g {
                    return Some(ImageNode::node("app", vec![cbn(f)?, cbn(s)?]));
                }
            }
            None
        }
        Sub(b, _, a) => {
            if let Prom(g) = &**a {
                if let Grant(s) = &**g {
                    return Some(ImageNode::node("es", vec![cbn(b)?, cbn(s)?]));
                }
            }
            None
        }
        _ => None,
    }
}

fn cbv(t: &SharingTerm) -> Option<ImageNode> {
    use SharingTerm::*;
    match t {
        Prom(inner) => match &**inner {
            UVar(_) => Some(ImageNode::leaf("bang-var")),
            Grant(g) => {
                let (_, body) = match_lam_pattern(g)?;
                Some(ImageNode::node("bang-grant-lam", vec![cbv(body)?]))
            }
            _ => None,
        },
        Request(inner) => {
            if let Grant(g) = &**inner {
                let (_, body) = match_lam_pattern(g)?;
                return Some(ImageNode::node("open-grant-lam", vec![cbv(body)?]));
            }
            None
        }
        Abs(_, _) => {
            let (_, body) = match_lam_pattern(t)?;
            Some(ImageNode::node("lam", vec![cbv(body)?]))
        }
        App(f, a) => Some(ImageNode::node("app", vec![cbv(f)?, cbv(a)?])),
        Sub(b, u, a) => {
            // open(u)[u := ť] takes precedence (open(u) alone is not in the image)
            if matches!(&**b, Request(r) if matches!(&**r, UVar(v) if v == u)) {
                return Some(ImageNode::node("open-u-es", vec![cbv(a)?]));
            }
            Some(ImageNode::node("es", vec![cbv(b)?, cbv(a)?]))
        }
        _ => None,
    }
}

fn cbs(t: &SharingTerm) -> Option<ImageNode> {
    use SharingTerm::*;
    match t {
        UVar(_) => Some(ImageNode::leaf("var")),
        Grant(g) => {
            let (_, body) = match_lam_pattern(g)?;
            Some(ImageNode::node("grant-lam", vec![cbs(body)?]))
        }
        Abs(_, _) => {
            let (_, body) = match_lam_pattern(t)?;
            Some(ImageNode::node("lam", vec![cbs(body)?]))
        }
        Request(inner) => Some(ImageNode::node("open", vec![cbs(inner)?])),
        App(f, a) => {
            if let Prom(s) = &**a {
                return Some(ImageNode::node("app", vec![cbs(f)?, cbs(s)?]));
            }
            None
        }
        Sub(b, _, a) => {
            if let Prom(s) = &**a {
                return Some(ImageNode::node("es", vec![cbs(b)?, cbs(s)?]));
            }
            None
        }
        _ => None,
    }
}

fn bang(t: &SharingTerm) -> Option<ImageNode> {
    use SharingTerm::*;
    match t {
        Request(inner) => match &**inner {
            UVar(_) => Some(ImageNode::leaf("open-var")),
            Grant(b) => Some(ImageNode::node("open-grant", vec![bang(b)?])),
            _ => None,
        },
        Abs(_, _) => {
            let (_, body) = match_lam_pattern(t)?;
            Some(ImageNode::node("lam", vec![bang(body)?]))
        }
        App(f, a) => Some(ImageNode::node("app", vec![bang(f)?, bang(a)?])),
        Prom(inner) => {
            if let Grant(b) = &**inner {
                return Some(ImageNode::node("bang-grant", vec![bang(b)?]));
            }
            None
        }
        Sub(b, _, a) => Some(ImageNode::node("es", vec![bang(b)?, bang(a)?])),
        _ => None,
    }
}
