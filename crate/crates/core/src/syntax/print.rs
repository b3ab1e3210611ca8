//! Canonical printing (round-trips with the parser) and the line-delimited
//! structured-text AST form emitted by `--ast`.

use std::fmt;

use super::bang_term::BangTerm;
use super::lsc_term::LscTerm;
use super::sharing_term::SharingTerm;

/// Printing position, from loosest to tightest binding.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Pos {
    /// Top level or parenthesized: anything goes.
    Term,
    /// Left operand of an application: applications stay bare, lambdas don't.
    AppLeft,
    /// Argument of an application or operand of a prefix `!`/`~`.
    Atom,
    /// Body of a postfix `[x := s]`: only primaries (no bare prefix ops).
    EsBody,
}

fn paren(f: &mut fmt::Formatter<'_>, yes: bool, inner: impl FnOnce(&mut fmt::Formatter<'_>) -> fmt::Result) -> fmt::Result {
    if yes {
        write!(f, "(")?;
        inner(f)?;
        write!(f, ")")
    } else {
        inner(f)
    }
}

impl fmt::Display for LscTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_lsc(self, f, Pos::Term)
    }
}

fn fmt_lsc(t: &LscTerm, f: &mut fmt::Formatter<'_>, pos: Pos) -> fmt::Result {
    match t {
        LscTerm::Var(x) => write!(f, "{x}"),
        LscTerm::Abs(x, b) => paren(f, pos > Pos::Term, |f| {
            write!(f, "\\{x}. ")?;
            fmt_lsc(b, f, Pos::Term)
        }),
        LscTerm::App(l, r) => paren(f, pos > Pos::AppLeft, |f| {
            fmt_lsc(l, f, Pos::AppLeft)?;
            write!(f, " ")?;
            fmt_lsc(r, f, Pos::Atom)
        }),
        LscTerm::Sub(b, x, a) => {
            fmt_lsc(b, f, Pos::EsBody)?;
            write!(f, "[{x} := ")?;
            fmt_lsc(a, f, Pos::Term)?;
            write!(f, "]")
        }
    }
}

impl fmt::Display for SharingTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sharing(self, f, Pos::Term)
    }
}

fn fmt_sharing(t: &SharingTerm, f: &mut fmt::Formatter<'_>, pos: Pos) -> fmt::Result {
    match t {
        SharingTerm::LVar(x) | SharingTerm::UVar(x) => write!(f, "{x}"),
        SharingTerm::Abs(x, b) => paren(f, pos > Pos::Term, |f| {
            write!(f, "\\{x}. ")?;
            fmt_sharing(b, f, Pos::Term)
        }),
        SharingTerm::App(l, r) => paren(f, pos > Pos::AppLeft, |f| {
            fmt_sharing(l, f, Pos::AppLeft)?;
            write!(f, " ")?;
            fmt_sharing(r, f, Pos::Atom)
        }),
        SharingTerm::Grant(x) => paren(f, pos > Pos::Atom, |f| {
            write!(f, "~")?;
            fmt_sharing(x, f, Pos::Atom)
        }),
        SharingTerm::Prom(x) => paren(f, pos > Pos::Atom, |f| {
            write!(f, "!")?;
            fmt_sharing(x, f, Pos::Atom)
        }),
        SharingTerm::Request(x) => {
            write!(f, "open(")?;
            fmt_sharing(x, f, Pos::Term)?;
            write!(f, ")")
        }
        SharingTerm::Sub(b, x, a) => {
            fmt_sharing(b, f, Pos::EsBody)?;
            write!(f, "[{x} := ")?;
            fmt_sharing(a, f, Pos::Term)?;
            write!(f, "]")
        }
    }
}

impl fmt::Display for BangTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_bang(self, f, Pos::Term)
    }
}

fn fmt_bang(t: &BangTerm, f: &mut fmt::Formatter<'_>, pos: Pos) -> fmt::Result {
    match t {
        BangTerm::Var(x) => write!(f, "{x}"),
        BangTerm::Abs(x, b) => paren(f, pos > Pos::Term, |f| {
            write!(f, "\\{x}. ")?;
            fmt_bang(b, f, Pos::Term)
        }),
        BangTerm::App(l, r) => paren(f, pos > Pos::AppLeft, |f| {
            fmt_bang(l, f, Pos::AppLeft)?;
            write!(f, " ")?;
            fmt_bang(r, f, Pos::Atom)
        }),
        BangTerm::Prom(x) => paren(f, pos > Pos::Atom, |f| {
            write!(f, "!")?;
            fmt_bang(x, f, Pos::Atom)
        }),
        BangTerm::Der(x) => {
            write!(f, "der(")?;
            fmt_bang(x, f, Pos::Term)?;
            write!(f, ")")
        }
        BangTerm::Sub(b, x, a) => {
            fmt_bang(b, f, Pos::EsBody)?;
            write!(f, "[{x} := ")?;
            fmt_bang(a, f, Pos::Term)?;
            write!(f, "]")
        }
    }
}

/// Line-delimited structured-text AST form (one constructor per line,
/// children indented two spaces).
pub trait AstLines {
    fn ast_lines(&self) -> String;
}

fn push_line(out: &mut String, depth: usize, s: &str) {
    for _ in 0..depth {
        out.push_str("  ");
    }
    out.push_str(s);
    out.push('\n');
}

impl AstLines for LscTerm {
    fn ast_lines(&self) -> String {
        fn go(t: &LscTerm, out: &mut String, d: usize) {
            match t {
                LscTerm::Var(x) => push_line(out, d, &format!("Var {x}")),
                LscTerm::Abs(x, b) => {
                    push_line(out, d, &format!("Abs {x}"));
                    go(b, out, d + 1);
                }
                LscTerm::App(f, a) => {
                    push_line(out, d, "App");
                    go(f, out, d + 1);
                    go(a, out, d + 1);
                }
                LscTerm::Sub(b, x, a) => {
                    push_line(out, d, &format!("Sub {x}"));
                    go(b, out, d + 1);
                    go(a, out, d + 1);
                }
            }
        }
        let mut s = String::new();
        go(self, &mut s, 0);
        s
    }
}

impl AstLines for SharingTerm {
    fn ast_lines(&self) -> String {
        fn go(t: &SharingTerm, out: &mut String, d: usize) {
            match t {
                SharingTerm::LVar(x) => push_line(out, d, &format!("LVar {x}")),
                SharingTerm::UVar(x) => push_line(out, d, &format!("UVar {x}")),
                SharingTerm::Abs(x, b) => {
                    push_line(out, d, &format!("Abs {x}"));
                    go(b, out, d + 1);
                }
                SharingTerm::App(f, a) => {
                    push_line(out, d, "App");
                    go(f, out, d + 1);
                    go(a, out, d + 1);
                }
                SharingTerm::Grant(t) => {
                    push_line(out, d, "Grant");
                    go(t, out, d + 1);
                }
                SharingTerm::Request(t) => {
                    push_line(out, d, "Request");
                    go(t, out, d + 1);
                }
                SharingTerm::Prom(t) => {
                    push_line(out, d, "Prom");
                    go(t, out, d + 1);
                }
                SharingTerm::Sub(b, x, a) => {
                    push_line(out, d, &format!("Sub {x}"));
                    go(b, out, d + 1);
                    go(a, out, d + 1);
                }
            }
        }
        let mut s = String::new();
        go(self, &mut s, 0);
        s
    }
}

impl AstLines for BangTerm {
    fn ast_lines(&self) -> String {
        fn go(t: &BangTerm, out: &mut String, d: usize) {
            match t {
                BangTerm::Var(x) => push_line(out, d, &format!("Var {x}")),
                BangTerm::Abs(x, b) => {
                    push_line(out, d, &format!("Abs {x}"));
                    go(b, out, d + 1);
                }
                BangTerm::App(f, a) => {
                    push_line(out, d, "App");
                    go(f, out, d + 1);
                    go(a, out, d + 1);
                }
                BangTerm::Prom(t) => {
                    push_line(out, d, "Prom");
                    go(t, out, d + 1);
                }
                BangTerm::Der(t) => {
                    push_line(out, d, "Der");
                    go(t, out, d + 1);
                }
                BangTerm::Sub(b, x, a) => {
                    push_line(out, d, &format!("Sub {x}"));
                    go(b, out, d + 1);
                    go(a, out, d + 1);
                }
            }
        }
        let mut s = String::new();
        go(self, &mut s, 0);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse::{parse_bang, parse_lsc, parse_sharing};

    fn round_trip_sharing(s: &str) {
        let t = parse_sharing(s).unwrap();
        assert_eq!(t.to_string(), s);
        assert_eq!(parse_sharing(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn canonical_sharing_forms() {
        round_trip_sharing("open(u)");
        round_trip_sharing("'a[u := !v]");
        round_trip_sharing("!~v");
        round_trip_sharing("(!u)[x := v]");
        round_trip_sharing("!u[x := v]");
        round_trip_sharing("\\'a. open(x)[x := 'a]");
        round_trip_sharing("open(u) open(u)");
        round_trip_sharing("~(\\'a. 'a) !u");
    }

    #[test]
    fn canonical_lsc_forms() {
        for s in ["x y z", "\\x. x x", "x[y := z w]", "(x y)[z := w]", "(\\x. x) y"] {
            let t = parse_lsc(s).unwrap();
            assert_eq!(t.to_string(), s);
        }
    }

    #[test]
    fn canonical_bang_forms() {
        for s in ["der(!x)", "x[y := !z]", "der((!x)[y := !z])"] {
            let t = parse_bang(s).unwrap();
            assert_eq!(t.to_string(), s);
        }
    }
}
