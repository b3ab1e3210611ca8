//! Variable names: a sort, a base name, and an optional freshness index.

use std::collections::BTreeSet;
use std::fmt;

/// Variable sort. `Plain` appears only in LSC/Bang terms; `Linear` and
/// `Unrestricted` only in sharing terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    Plain,
    Linear,
    Unrestricted,
}

/// A named variable. Two variables are equal iff sort, base name and index
/// all match. The concrete syntax fuses the index into the identifier as a
/// trailing digit string (`x1` is base `x`, index 1), and the constructor
/// normalizes identifiers accordingly so parse∘print is the identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarName {
    pub sort: Sort,
    pub name: String,
    pub index: Option<u32>,
}

impl VarName {
    /// Build a variable from an identifier, splitting a trailing digit run
    /// into the freshness index (so the textual form round-trips).
    pub fn new(sort: Sort, ident: &str) -> VarName {
        let split = ident.rfind(|c: char| !c.is_ascii_digit()).map(|p| p + 1);
        match split {
            Some(p) if p < ident.len() => VarName {
                sort,
                name: ident[..p].to_string(),
                index: ident[p..].parse().ok(),
            },
            _ => VarName {
                sort,
                name: ident.to_string(),
                index: None,
            },
        }
    }

    pub fn with_index(sort: Sort, name: &str, index: u32) -> VarName {
        VarName {
            sort,
            name: name.to_string(),
            index: Some(index),
        }
    }

    /// The identifier without the sort sigil.
    pub fn ident(&self) -> String {
        match self.index {
            Some(i) => format!("{}{}", self.name, i),
            None => self.name.clone(),
        }
    }

    /// Convert to another sort, keeping name and index (used by the
    /// translations, which relabel plain variables as unrestricted ones).
    pub fn with_sort(&self, sort: Sort) -> VarName {
        VarName {
            sort,
            name: self.name.clone(),
            index: self.index,
        }
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sort == Sort::Linear {
            write!(f, "'")?;
        }
        write!(f, "{}", self.ident())
    }
}

/// Deterministically pick a variant of `v` (same sort and base name, fresh
/// index) that avoids every name in `avoid` and differs from `v` itself.
pub fn fresh_like(v: &VarName, avoid: &BTreeSet<VarName>) -> VarName {
    for i in 0.. {
        let cand = VarName::with_index(v.sort, &v.name, i);
        if cand != *v && !avoid.contains(&cand) {
            return cand;
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifier_round_trip() {
        let v = VarName::new(Sort::Plain, "x12");
        assert_eq!(v.name, "x");
        assert_eq!(v.index, Some(12));
        assert_eq!(v.ident(), "x12");
        assert_eq!(VarName::new(Sort::Plain, &v.ident()), v);
    }

    #[test]
    fn fresh_avoids() {
        let v = VarName::new(Sort::Plain, "x");
        let mut avoid = BTreeSet::new();
        avoid.insert(VarName::with_index(Sort::Plain, "x", 0));
        let f = fresh_like(&v, &avoid);
        assert_eq!(f, VarName::with_index(Sort::Plain, "x", 1));
    }

    #[test]
    fn linear_sigil_display() {
        let v = VarName::new(Sort::Linear, "a");
        assert_eq!(v.to_string(), "'a");
    }
}
