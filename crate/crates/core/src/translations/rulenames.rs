//! Rulename translations for weak evaluation: each source rulename maps to
//! a sequence of sharing rulenames, and each sharing rulename maps back to
//! a set of candidate source-rulename sequences.

use crate::lsc::LscRulename;
use crate::sharing::SharingRulename;
use crate::syntax::lsc_term::LscTerm;
use crate::syntax::sharing_term::{
    abs, grant, lvar, prom, sub, wrap_subs, SharingTerm,
};

use super::forward::{la, tra_cbn, tra_cbs, tra_cbv, urel};
use super::image::match_lam_pattern;
use super::inverse::{inverse_lsc_image, prel};
use super::{TranslationError, TranslationKind};

fn foreign(rho: impl ToString, kind: TranslationKind) -> TranslationError {
    TranslationError::ForeignRulename(rho.to_string(), kind)
}

/// The value translation `λx.t ↦ λa. ⟦t⟧[x := a]` shared by CBV and CBS
/// ς-payloads.
fn value_pattern(x: &crate::syntax::VarName, body: SharingTerm) -> SharingTerm {
    abs(la(), sub(body, urel(x), lvar(la())))
}

/// Translate a source rulename to its sharing rulename sequence.
pub fn translate_rulename(
    rho: &LscRulename,
    kind: TranslationKind,
) -> Result<Vec<SharingRulename>, TranslationError> {
    use LscRulename::*;
    use SharingRulename::*;
    match kind {
        TranslationKind::Cbn => match rho {
            Db => Ok(vec![Sdb]),
            Sigma(x, t) => Ok(vec![
                Ssigma(urel(x), grant(tra_cbn(t))),
                Sreq,
            ]),
            Ls => Ok(vec![Sls, Sreq]),
            Gc => Ok(vec![Sgc]),
            _ => Err(foreign(rho, kind)),
        },
        TranslationKind::Cbv => match rho {
            Db => Ok(vec![Sls, Sreq, Sdb, Sgc]),
            Sigma(x, v) => match v {
                LscTerm::Abs(y, b) => Ok(vec![Ssigma(
                    urel(x),
                    grant(value_pattern(y, tra_cbv(b))),
                )]),
                _ => Err(foreign(rho, kind)),
            },
            Lsv => Ok(vec![Sls]),
            GcvLax => Ok(vec![Sgc]),
            _ => Err(foreign(rho, kind)),
        },
        TranslationKind::Cbs => match rho {
            Db => Ok(vec![Sreq, Sdb]),
            Sigma(x, answer) => {
                // the payload is an answer vL; translate to (∂v⁺ᵛ)L⁺
                let (core, chain) = answer.peel_subs();
                match core {
                    LscTerm::Abs(y, b) => {
                        let tr_chain = chain
                            .into_iter()
                            .map(|(z, s)| (urel(&z), prom(tra_cbs(&s))))
                            .collect();
                        Ok(vec![Ssigma(
                            urel(x),
                            wrap_subs(grant(value_pattern(&y, tra_cbs(&b))), tr_chain),
                        )])
                    }
                    _ => Err(foreign(rho, kind)),
                }
            }
            Lsw => Ok(vec![Sls]),
            Gc => Ok(vec![Sgc]),
            Iota(x) => Ok(vec![Sid(urel(x))]),
            _ => Err(foreign(rho, kind)),
        },
        TranslationKind::Bang => Err(foreign(rho, kind)),
    }
}

/// Translate a sharing rulename back to the set of candidate source
/// rulename sequences for `kind`.
pub fn inverse_rulename(
    rho: &SharingRulename,
    kind: TranslationKind,
) -> Result<Vec<Vec<LscRulename>>, TranslationError> {
    use LscRulename::*;
    use SharingRulename::*;
    match kind {
        TranslationKind::Cbn => match rho {
            Sdb => Ok(vec![vec![Db]]),
            Ssigma(x, payload) => match payload {
                SharingTerm::Grant(b) => Ok(vec![vec![Sigma(
                    prel(x),
                    inverse_lsc_image(b, kind)?,
                )]]),
                _ => Err(foreign(rho, kind)),
            },
            Sls => Ok(vec![vec![Ls]]),
            Sgc => Ok(vec![vec![Gc]]),
            Sreq => Ok(vec![vec![]]),
            Sid(_) => Err(foreign(rho, kind)),
        },
        TranslationKind::Cbv => match rho {
            Sdb => Ok(vec![vec![Db]]),
            Ssigma(x, payload) => match payload {
                SharingTerm::Grant(g) => {
                    let (u, body) = match_lam_pattern(g).ok_or_else(|| foreign(rho, kind))?;
                    let v = crate::syntax::lsc_term::abs(
                        prel(u),
                        inverse_lsc_image(body, kind)?,
                    );
                    Ok(vec![vec![Sigma(prel(x), v)]])
                }
                _ => Err(foreign(rho, kind)),
            },
            Sls => Ok(vec![vec![Lsv], vec![GcvLaxInv]]),
            Sgc => Ok(vec![vec![GcvLax]]),
            Sreq => Ok(vec![vec![]]),
            Sid(_) => Err(foreign(rho, kind)),
        },
        TranslationKind::Cbs => match rho {
            Sdb => Ok(vec![vec![Db]]),
            Ssigma(x, payload) => {
                let (core, chain) = payload.peel_subs();
                match core {
                    SharingTerm::Grant(g) => {
                        let (u, body) =
                            match_lam_pattern(&g).ok_or_else(|| foreign(rho, kind))?;
                        let v = crate::syntax::lsc_term::abs(
                            prel(u),
                            inverse_lsc_image(body, kind)?,
                        );
                        let mut inv_chain = Vec::new();
                        for (z, s) in chain {
                            match s {
                                SharingTerm::Prom(inner) => inv_chain
                                    .push((prel(&z), inverse_lsc_image(&inner, kind)?)),
                                _ => return Err(foreign(rho, kind)),
                            }
                        }
                        Ok(vec![vec![Sigma(
                            prel(x),
                            crate::syntax::lsc_term::wrap_subs(v, inv_chain),
                        )]])
                    }
                    _ => Err(foreign(rho, kind)),
                }
            }
            Sls => Ok(vec![vec![Lsw]]),
            Sgc => Ok(vec![vec![Gc]]),
            Sreq => Ok(vec![vec![]]),
            Sid(x) => Ok(vec![vec![Iota(prel(x))]]),
        },
        TranslationKind::Bang => Err(foreign(rho, kind)),
    }
}
