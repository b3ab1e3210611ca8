//! Inverse translations, defined by structural recursion on the image
//! grammars. Unrestricted sharing variables are relabelled back to plain
//! source variables.

use crate::syntax::bang_term::{self, BangTerm};
use crate::syntax::lsc_term::{self, LscTerm};
use crate::syntax::sharing_term::SharingTerm;
use crate::syntax::{Sort, VarName};

use super::image::match_lam_pattern;
use super::{TranslationError, TranslationKind};

/// Relabel an unrestricted sharing variable back to the plain sort.
pub(crate) fn prel(x: &VarName) -> VarName {
    if x.sort == Sort::Unrestricted {
        x.with_sort(Sort::Plain)
    } else {
        x.clone()
    }
}

/// The result of inverting an image term: an LSC term for CBN/CBV/CBS, a
/// (simplified) Bang term for the Bang embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InverseOutput {
    Lsc(LscTerm),
    Bang(BangTerm),
}

/// Invert `t` along the `kind` embedding.
pub fn inverse(t: &SharingTerm, kind: TranslationKind) -> Result<InverseOutput, TranslationError> {
    match kind {
        TranslationKind::Bang => Ok(InverseOutput::Bang(inverse_bang_image(t)?)),
        _ => Ok(InverseOutput::Lsc(inverse_lsc_image(t, kind)?)),
    }
}

/// Invert a CBN/CBV/CBS image term to an LSC term.
pub fn inverse_lsc_image(
    t: &SharingTerm,
    kind: TranslationKind,
) -> Result<LscTerm, TranslationError> {
    match kind {
        TranslationKind::Cbn => inv_cbn(t),
        TranslationKind::Cbv => inv_cbv(t),
        TranslationKind::Cbs => inv_cbs(t),
        TranslationKind::Bang => Err(TranslationError::NotInImage(kind)),
    }
}

fn bad(kind: TranslationKind) -> TranslationError {
    TranslationError::NotInImage(kind)
}

fn inv_cbn(t: &SharingTerm) -> Result<LscTerm, TranslationError> {
    use SharingTerm::*;
    let k = TranslationKind::Cbn;
    match t {
        Request(inner) => match &**inner {
            UVar(u) => Ok(lsc_term::var(prel(u))),
            Grant(b) => inv_cbn(b),
            _ => Err(bad(k)),
        },
        Abs(_, _) => {
            let (x, body) = match_lam_pattern(t).ok_or_else(|| bad(k))?;
            Ok(lsc_term::abs(prel(x), inv_cbn(body)?))
        }
        App(f, a) => match &**a {
            Prom(g) => match &**g {
                Grant(s) => Ok(lsc_term::app(inv_cbn(f)?, inv_cbn(s)?)),
                _ => Err(bad(k)),
            },
            _ => Err(bad(k)),
        },
        Sub(b, x, a) => match &**a {
            Prom(g) => match &**g {
                Grant(s) => Ok(lsc_term::sub(inv_cbn(b)?, prel(x), inv_cbn(s)?)),
                _ => Err(bad(k)),
            },
            _ => Err(bad(k)),
        },
        _ => Err(bad(k)),
    }
}

fn inv_cbv(t: &SharingTerm) -> Result<LscTerm, TranslationError> {
    use SharingTerm::*;
    let k = TranslationKind::Cbv;
    match t {
        Prom(inner) => match &**inner {
            UVar(x) => Ok(lsc_term::var(prel(x))),
            Grant(g) => {
                let (x, body) = match_lam_pattern(g).ok_or_else(|| bad(k))?;
                Ok(lsc_term::abs(prel(x), inv_cbv(body)?))
            }
            _ => Err(bad(k)),
        },
        Request(inner) => match &**inner {
            Grant(g) => {
                let (x, body) = match_lam_pattern(g).ok_or_else(|| bad(k))?;
                Ok(lsc_term::abs(prel(x), inv_cbv(body)?))
            }
            _ => Err(bad(k)),
        },
        Abs(_, _) => {
            let (x, body) = match_lam_pattern(t).ok_or_else(|| bad(k))?;
            Ok(lsc_term::abs(prel(x), inv_cbv(body)?))
        }
        App(f, a) => Ok(lsc_term::app(inv_cbv(f)?, inv_cbv(a)?)),
        Sub(b, u, a) => {
            if matches!(&**b, Request(r) if matches!(&**r, UVar(v) if v == u)) {
                inv_cbv(a)
            } else {
                Ok(lsc_term::sub(inv_cbv(b)?, prel(u), inv_cbv(a)?))
            }
        }
        _ => Err(bad(k)),
    }
}

fn inv_cbs(t: &SharingTerm) -> Result<LscTerm, TranslationError> {
    use SharingTerm::*;
    let k = TranslationKind::Cbs;
    match t {
        UVar(x) => Ok(lsc_term::var(prel(x))),
        Grant(g) => {
            let (x, body) = match_lam_pattern(g).ok_or_else(|| bad(k))?;
            Ok(lsc_term::abs(prel(x), inv_cbs(body)?))
        }
        Abs(_, _) => {
            let (x, body) = match_lam_pattern(t).ok_or_else(|| bad(k))?;
            Ok(lsc_term::abs(prel(x), inv_cbs(body)?))
        }
        Request(inner) => inv_cbs(inner),
        App(f, a) => match &**a {
            Prom(s) => Ok(lsc_term::app(inv_cbs(f)?, inv_cbs(s)?)),
            _ => Err(bad(k)),
        },
        Sub(b, u, a) => match &**a {
            Prom(s) => Ok(lsc_term::sub(inv_cbs(b)?, prel(u), inv_cbs(s)?)),
            _ => Err(bad(k)),
        },
        _ => Err(bad(k)),
    }
}

/// Invert a Bang image term to a simplified Bang term.
pub fn inverse_bang_image(t: &SharingTerm) -> Result<BangTerm, TranslationError> {
    use SharingTerm::*;
    let k = TranslationKind::Bang;
    match t {
        Request(inner) => match &**inner {
            UVar(u) => Ok(bang_term::var(prel(u))),
            Grant(b) => inverse_bang_image(b),
            _ => Err(bad(k)),
        },
        Abs(_, _) => {
            let (x, body) = match_lam_pattern(t).ok_or_else(|| bad(k))?;
            Ok(bang_term::abs(prel(x), inverse_bang_image(body)?))
        }
        App(f, a) => Ok(bang_term::app(
            inverse_bang_image(f)?,
            inverse_bang_image(a)?,
        )),
        Prom(inner) => match &**inner {
            Grant(b) => Ok(bang_term::prom(inverse_bang_image(b)?)),
            _ => Err(bad(k)),
        },
        Sub(b, u, a) => Ok(bang_term::sub(
            inverse_bang_image(b)?,
            prel(u),
            inverse_bang_image(a)?,
        )),
        _ => Err(bad(k)),
    }
}

#[cfg(test)]
mod tests {
    use super::super::forward::{tra_bang, tra_cbn, tra_cbs, tra_cbv};
    use super::*;
    use crate::syntax::{parse_bang, parse_lsc, parse_sharing};

    #[test]
    fn inverse_examples() {
        assert_eq!(
            inv_cbn(&parse_sharing("open(x)").unwrap()),
            Ok(parse_lsc("x").unwrap())
        );
        assert_eq!(
            inv_cbv(&parse_sharing("open(u)[u := !x] (!y)").unwrap()),
            Ok(parse_lsc("x y").unwrap())
        );
        assert_eq!(
            inv_cbs(&parse_sharing("~u").unwrap()),
            Err(TranslationError::NotInImage(TranslationKind::Cbs))
        );
    }

    #[test]
    fn left_inverse_on_samples() {
        for src in ["x", "\\x. x", "x y", "(\\x. x y) z", "x[y := \\z. z w]"] {
            let t = parse_lsc(src).unwrap();
            assert!(inv_cbn(&tra_cbn(&t)).unwrap().alpha_eq(&t), "cbn {src}");
            assert!(inv_cbv(&tra_cbv(&t)).unwrap().alpha_eq(&t), "cbv {src}");
            assert!(inv_cbs(&tra_cbs(&t)).unwrap().alpha_eq(&t), "cbs {src}");
        }
        for src in ["x", "!x", "\\x. x (!y)", "x[y := !z]"] {
            let t = parse_bang(src).unwrap();
            let tr = tra_bang(&t).unwrap();
            assert!(inverse_bang_image(&tr).unwrap().alpha_eq(&t), "bang {src}");
        }
    }
}
