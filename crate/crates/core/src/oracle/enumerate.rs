//! Exhaustive enumeration of small terms: every α-distinct term of a given
//! AST size over a variable pool, each exactly once, in a deterministic
//! order, together with an independent counting recurrence.

use std::collections::BTreeMap;

use crate::syntax::bang_term::{self, BangTerm};
use crate::syntax::lsc_term::{self, LscTerm};
use crate::syntax::sharing_term::{self, SharingTerm};
use crate::syntax::{Sort, VarName};

/// The three term languages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Language {
    Lsc,
    Sharing,
    Bang,
}

/// Canonical binder name for nesting depth `d`: binders are named by their
/// depth, so every α-class has exactly one representative. Pools must not
/// contain `b`-named variables.
fn binder(sort: Sort, depth: usize) -> VarName {
    VarName::with_index(sort, "b", depth as u32)
}

// ---------------------------------------------------------------------------
// LSC

fn go_lsc(n: usize, scope: &[VarName], depth: usize, f: &mut dyn FnMut(LscTerm)) {
    if n == 0 {
        return;
    }
    if n == 1 {
        for v in scope {
            f(lsc_term::var(v.clone()));
        }
        return;
    }
    // abstraction
    let b = binder(Sort::Plain, depth);
    let mut ext = scope.to_vec();
    ext.push(b.clone());
    go_lsc(n - 1, &ext, depth + 1, &mut |body| {
        f(lsc_term::abs(b.clone(), body))
    });
    // application
    for i in 1..=n.saturating_sub(2) {
        go_lsc(i, scope, depth, &mut |l| {
            go_lsc(n - 1 - i, scope, depth, &mut |r| {
                f(lsc_term::app(l.clone(), r))
            });
        });
    }
    // explicit substitution (the body binds)
    for i in 1..=n.saturating_sub(2) {
        go_lsc(i, &ext, depth + 1, &mut |body| {
            go_lsc(n - 1 - i, scope, depth, &mut |arg| {
                f(lsc_term::sub(body.clone(), b.clone(), arg))
            });
        });
    }
}

/// Stream every LSC term of size `n` over `pool` through `f`.
pub fn stream_lsc(n: usize, pool: &[VarName], f: &mut dyn FnMut(LscTerm)) {
    go_lsc(n, pool, 0, f);
}

/// All LSC terms of size `n` over `pool`, in enumeration order.
pub fn enumerate_lsc(n: usize, pool: &[VarName]) -> Vec<LscTerm> {
    let mut out = Vec::new();
    stream_lsc(n, pool, &mut |t| out.push(t));
    out
}

/// Independent size recurrence for LSC terms: `k` free variables in scope.
pub fn count_lsc(n: usize, k: u64) -> u64 {
    fn rec(n: usize, k: u64, memo: &mut BTreeMap<(usize, u64), u64>) -> u64 {
        if n == 0 {
            return 0;
        }
        if n == 1 {
            return k;
        }
        if let Some(&c) = memo.get(&(n, k)) {
            return c;
        }
        let mut c = rec(n - 1, k + 1, memo); // abs
        for i in 1..=n - 2 {
            c += rec(i, k, memo) * rec(n - 1 - i, k, memo); // app
            c += rec(i, k + 1, memo) * rec(n - 1 - i, k, memo); // sub
        }
        memo.insert((n, k), c);
        c
    }
    rec(n, k, &mut BTreeMap::new())
}

// ---------------------------------------------------------------------------
// Sharing

fn go_sharing(n: usize, scope: &[VarName], depth: usize, f: &mut dyn FnMut(SharingTerm)) {
    if n == 0 {
        return;
    }
    if n == 1 {
        for v in scope {
            match v.sort {
                Sort::Linear => f(sharing_term::lvar(v.clone())),
                _ => f(sharing_term::uvar(v.clone())),
            }
        }
        return;
    }
    // abstraction binds a linear variable
    let bl = binder(Sort::Linear, depth);
    let mut ext_l = scope.to_vec();
    ext_l.push(bl.clone());
    go_sharing(n - 1, &ext_l, depth + 1, &mut |body| {
        f(sharing_term::abs(bl.clone(), body))
    });
    // grant, request, promotion
    go_sharing(n - 1, scope, depth, &mut |t| {
        f(sharing_term::grant(t.clone()));
        f(sharing_term::request(t.clone()));
        f(sharing_term::prom(t));
    });
    // application
    for i in 1..=n.saturating_sub(2) {
        go_sharing(i, scope, depth, &mut |l| {
            go_sharing(n - 1 - i, scope, depth, &mut |r| {
                f(sharing_term::app(l.clone(), r))
            });
        });
    }
    // explicit substitution binds an unrestricted variable in the body
    let bu = binder(Sort::Unrestricted, depth);
    let mut ext_u = scope.to_vec();
    ext_u.push(bu.clone());
    for i in 1..=n.saturating_sub(2) {
        go_sharing(i, &ext_u, depth + 1, &mut |body| {
            go_sharing(n - 1 - i, scope, depth, &mut |arg| {
                f(sharing_term::sub(body.clone(), bu.clone(), arg))
            });
        });
    }
}

/// Stream every sharing term of size `n` over `pool` through `f`. Pool
/// variables of linear sort enumerate as linear occurrences.
pub fn stream_sharing(n: usize, pool: &[VarName], f: &mut dyn FnMut(SharingTerm)) {
    go_sharing(n, pool, 0, f);
}

/// All sharing terms of size `n` over `pool`, in enumeration order.
pub fn enumerate_sharing(n: usize, pool: &[VarName]) -> Vec<SharingTerm> {
    let mut out = Vec::new();
    stream_sharing(n, pool, &mut |t| out.push(t));
    out
}

/// Independent size recurrence for sharing terms: `l` linear and `u`
/// unrestricted variables in scope.
pub fn count_sharing(n: usize, l: u64, u: u64) -> u64 {
    fn rec(n: usize, l: u64, u: u64, memo: &mut BTreeMap<(usize, u64, u64), u64>) -> u64 {
        if n == 0 {
            return 0;
        }
        if n == 1 {
            return l + u;
        }
        if let Some(&c) = memo.get(&(n, l, u)) {
            return c;
        }
        let mut c = rec(n - 1, l + 1, u, memo); // abs
        c += 3 * rec(n - 1, l, u, memo); // grant, request, prom
        for i in 1..=n - 2 {
            c += rec(i, l, u, memo) * rec(n - 1 - i, l, u, memo); // app
            c += rec(i, l, u + 1, memo) * rec(n - 1 - i, l, u, memo); // sub
        }
        memo.insert((n, l, u), c);
        c
    }
    rec(n, l, u, &mut BTreeMap::new())
}

// ---------------------------------------------------------------------------
// Bang

fn go_bang(n: usize, scope: &[VarName], depth: usize, full: bool, f: &mut dyn FnMut(BangTerm)) {
    if n == 0 {
        return;
    }
    if n == 1 {
        for v in scope {
            f(bang_term::var(v.clone()));
        }
        return;
    }
    let b = binder(Sort::Plain, depth);
    let mut ext = scope.to_vec();
    ext.push(b.clone());
    go_bang(n - 1, &ext, depth + 1, full, &mut |body| {
        f(bang_term::abs(b.clone(), body))
    });
    go_bang(n - 1, scope, depth, full, &mut |t| {
        if full {
            f(bang_term::der(t.clone()));
        }
        f(bang_term::prom(t));
    });
    for i in 1..=n.saturating_sub(2) {
        go_bang(i, scope, depth, full, &mut |l| {
            go_bang(n - 1 - i, scope, depth, full, &mut |r| {
                f(bang_term::app(l.clone(), r))
            });
        });
    }
    for i in 1..=n.saturating_sub(2) {
        go_bang(i, &ext, depth + 1, full, &mut |body| {
            go_bang(n - 1 - i, scope, depth, full, &mut |arg| {
                f(bang_term::sub(body.clone(), b.clone(), arg))
            });
        });
    }
}

/// Stream every Bang term of size `n` over `pool` through `f`; `full`
/// includes dereliction nodes, otherwise only simplified terms appear.
pub fn stream_bang(n: usize, pool: &[VarName], full: bool, f: &mut dyn FnMut(BangTerm)) {
    go_bang(n, pool, 0, full, f);
}

/// All Bang terms of size `n` over `pool`, in enumeration order.
pub fn enumerate_bang(n: usize, pool: &[VarName], full: bool) -> Vec<BangTerm> {
    let mut out = Vec::new();
    stream_bang(n, pool, full, &mut |t| out.push(t));
    out
}

/// Independent size recurrence for Bang terms: `k` variables in scope.
pub fn count_bang(n: usize, k: u64, full: bool) -> u64 {
    fn rec(n: usize, k: u64, full: bool, memo: &mut BTreeMap<(usize, u64), u64>) -> u64 {
        if n == 0 {
            return 0;
        }
        if n == 1 {
            return k;
        }
        if let Some(&c) = memo.get(&(n, k)) {
            return c;
        }
        let unary = if full { 2 } else { 1 };
        let mut c = rec(n - 1, k + 1, full, memo); // abs
        c += unary * rec(n - 1, k, full, memo); // prom (and der when full)
        for i in 1..=n - 2 {
            c += rec(i, k, full, memo) * rec(n - 1 - i, k, full, memo); // app
            c += rec(i, k + 1, full, memo) * rec(n - 1 - i, k, full, memo); // sub
        }
        memo.insert((n, k), c);
        c
    }
    rec(n, k, full, &mut BTreeMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::lsc_term::pv;
    use crate::syntax::sharing_term::uv;

    #[test]
    fn base_cases() {
        let pool = [pv("x")];
        let ts = enumerate_lsc(1, &pool);
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].to_string(), "x");
    }

    #[test]
    fn sharing_size_two_inventory() {
        let pool = [uv("u")];
        let ts: Vec<String> = enumerate_sharing(2, &pool)
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(ts.len(), 5);
        for want in ["~u", "open(u)", "!u", "\\'b0. 'b0", "\\'b0. u"] {
            assert!(ts.iter().any(|s| s == want), "missing {want}");
        }
    }

    #[test]
    fn counts_match_enumeration() {
        let pool = [pv("x")];
        for n in 1..=6 {
            let mut seen = 0u64;
            stream_lsc(n, &pool, &mut |_| seen += 1);
            assert_eq!(seen, count_lsc(n, 1), "lsc size {n}");
        }
        let spool = [uv("u")];
        for n in 1..=5 {
            let mut seen = 0u64;
            stream_sharing(n, &spool, &mut |_| seen += 1);
            assert_eq!(seen, count_sharing(n, 0, 1), "sharing size {n}");
        }
        for n in 1..=5 {
            let mut seen = 0u64;
            stream_bang(n, &pool, true, &mut |_| seen += 1);
            assert_eq!(seen, count_bang(n, 1, true), "bang size {n}");
        }
    }

    #[test]
    fn enumeration_is_alpha_distinct() {
        let pool = [pv("x")];
        let ts = enumerate_lsc(4, &pool);
        for (i, a) in ts.iter().enumerate() {
            for b in &ts[i + 1..] {
                assert!(!a.alpha_eq(b), "{a} duplicates {b}");
            }
        }
    }

    #[test]
    fn sizes_are_exact() {
        let pool = [pv("x")];
        for n in 1..=5 {
            for t in enumerate_lsc(n, &pool) {
                assert_eq!(t.size(), n);
            }
        }
    }
}
