//! Embeddings of the CBN, CBV, CBS, and Bang calculi into the sharing
//! calculus: forward translations on terms and types, image-grammar
//! recognizers, inverse translations, and rulename translations for weak
//! evaluation.

use std::fmt;

use thiserror::Error;

mod forward;
mod image;
mod inverse;
mod rulenames;

pub use forward::{
    tra_bang, tra_bang_type, tra_cbn, tra_cbn_type, tra_cbs, tra_cbs_type, tra_cbv,
    tra_cbv_type,
};
pub use image::{in_image, ImageMembership, ImageNode};
pub use inverse::{inverse, inverse_bang_image, inverse_lsc_image, InverseOutput};
pub use rulenames::{inverse_rulename, translate_rulename};

/// The four embeddings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranslationKind {
    Cbn,
    Cbv,
    Cbs,
    Bang,
}

impl fmt::Display for TranslationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TranslationKind::Cbn => "cbn",
            TranslationKind::Cbv => "cbv",
            TranslationKind::Cbs => "cbs",
            TranslationKind::Bang => "bang",
        };
        write!(f, "{s}")
    }
}

/// Errors raised by the translation layer.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TranslationError {
    #[error("der nodes are not translated; apply dereliction unfolding first")]
    DerNotSupported,
    #[error("term is not in the {0} image grammar")]
    NotInImage(TranslationKind),
    #[error("rulename {0} does not belong to the {1} rulename set")]
    ForeignRulename(String, TranslationKind),
}
