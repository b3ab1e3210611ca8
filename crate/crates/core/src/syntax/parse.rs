//! Recursive-descent parser for the three term grammars and the two type
//! grammars. Precedence: application is left-associative; the prefix
//! operators `!` and `~` bind to the next atom (`!t s` is `(!t) s`);
//! `[x := s]` is a postfix on the preceding atom (`!t[x := s]` is
//! `!(t[x := s])`); `\` extends maximally to the right.

use thiserror::Error;

use super::bang_term::{self, BangTerm};
use super::lsc_term::{self, LscTerm};
use super::sharing_term::{self, SharingTerm};
use super::{Sort, VarName};
use crate::lsc::SimpleType;
use crate::sharing::SharingType;

/// Syntax or sort error with source position.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LinIdent(String),
    Backslash,
    Dot,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Assign,
    Bang,
    Tilde,
    Lolli,
    Arrow,
    Eof,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    let err = |line, col, msg: String| ParseError { line, col, msg };
    while let Some(&c) = chars.peek() {
        let (l, co) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                bump(&mut chars);
            }
            '\\' => {
                bump(&mut chars);
                toks.push((Tok::Backslash, l, co));
            }
            '.' => {
                bump(&mut chars);
                toks.push((Tok::Dot, l, co));
            }
            '(' => {
                bump(&mut chars);
                toks.push((Tok::LParen, l, co));
            }
            ')' => {
                bump(&mut chars);
                toks.push((Tok::RParen, l, co));
            }
            '[' => {
                bump(&mut chars);
                toks.push((Tok::LBracket, l, co));
            }
            ']' => {
                bump(&mut chars);
                toks.push((Tok::RBracket, l, co));
            }
            '!' => {
                bump(&mut chars);
                toks.push((Tok::Bang, l, co));
            }
            '~' => {
                bump(&mut chars);
                toks.push((Tok::Tilde, l, co));
            }
            ':' => {
                bump(&mut chars);
                if chars.peek() == Some(&'=') {
                    bump(&mut chars);
                    toks.push((Tok::Assign, l, co));
                } else {
                    return Err(err(l, co, "expected ':='".into()));
                }
            }
            '-' => {
                bump(&mut chars);
                match chars.peek() {
                    Some('o') => {
                        bump(&mut chars);
                        toks.push((Tok::Lolli, l, co));
                    }
                    Some('>') => {
                        bump(&mut chars);
                        toks.push((Tok::Arrow, l, co));
                    }
                    _ => return Err(err(l, co, "expected '-o' or '->'".into())),
                }
            }
            '\'' => {
                bump(&mut chars);
                let mut s = String::new();
                while let Some(&c2) = chars.peek() {
                    if c2.is_ascii_alphanumeric() || c2 == '_' {
                        s.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                if s.is_empty() || s.chars().next().unwrap().is_ascii_digit() {
                    return Err(err(l, co, "expected identifier after '".into()));
                }
                toks.push((Tok::LinIdent(s), l, co));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c2) = chars.peek() {
                    if c2.is_ascii_alphanumeric() || c2 == '_' {
                        s.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(s), l, co));
            }
            c => return Err(err(l, co, format!("unexpected character '{c}'"))),
        }
    }
    toks.push((Tok::Eof, line, col));
    Ok(Lexer { toks, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }
    fn loc(&self) -> (usize, usize) {
        let (_, l, c) = &self.toks[self.pos];
        (*l, *c)
    }
    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }
    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.loc();
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }
    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == &t {
            self.next();
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }
    fn expect_ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }
    fn at_end(&self) -> Result<(), ParseError> {
        if self.peek() == &Tok::Eof {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Lang {
    Lsc,
    Sharing,
    Bang,
}

impl Lang {
    fn keywords(&self) -> &'static [&'static str] {
        match self {
            Lang::Lsc => &[],
            Lang::Sharing => &["open"],
            Lang::Bang => &["der"],
        }
    }
}

/// A language-indexed term, used internally so the parser is written once.
enum AnyTerm {
    L(LscTerm),
    S(SharingTerm),
    B(BangTerm),
}

fn starts_atom(t: &Tok) -> bool {
    matches!(
        t,
        Tok::Ident(_) | Tok::LinIdent(_) | Tok::LParen | Tok::Bang | Tok::Tilde
    )
}

fn parse_any(lx: &mut Lexer, lang: Lang) -> Result<AnyTerm, ParseError> {
    let t = term(lx, lang)?;
    Ok(t)
}

fn term(lx: &mut Lexer, lang: Lang) -> Result<AnyTerm, ParseError> {
    if lx.peek() == &Tok::Backslash {
        return lambda(lx, lang);
    }
    app_chain(lx, lang)
}

fn lambda(lx: &mut Lexer, lang: Lang) -> Result<AnyTerm, ParseError> {
    lx.expect(Tok::Backslash, "'\\'")?;
    match lang {
        Lang::Sharing => {
            let x = match lx.peek().clone() {
                Tok::LinIdent(s) => {
                    lx.next();
                    VarName::new(Sort::Linear, &s)
                }
                Tok::Ident(_) => {
                    return Err(lx.err("abstraction binder must be a linear variable ('ident)"))
                }
                _ => return Err(lx.err("expected linear binder")),
            };
            lx.expect(Tok::Dot, "'.'")?;
            let body = term(lx, lang)?;
            match body {
                AnyTerm::S(b) => Ok(AnyTerm::S(sharing_term::abs(x, b))),
                _ => unreachable!(),
            }
        }
        _ => {
            let name = lx.expect_ident("binder")?;
            if lang.keywords().contains(&name.as_str()) {
                return Err(lx.err(format!("'{name}' is a keyword")));
            }
            let x = VarName::new(Sort::Plain, &name);
            lx.expect(Tok::Dot, "'.'")?;
            let body = term(lx, lang)?;
            match (lang, body) {
                (Lang::Lsc, AnyTerm::L(b)) => Ok(AnyTerm::L(lsc_term::abs(x, b))),
                (Lang::Bang, AnyTerm::B(b)) => Ok(AnyTerm::B(bang_term::abs(x, b))),
                _ => unreachable!(),
            }
        }
    }
}

fn app_chain(lx: &mut Lexer, lang: Lang) -> Result<AnyTerm, ParseError> {
    let mut acc = prefixed(lx, lang)?;
    while starts_atom(lx.peek()) {
        let next = prefixed(lx, lang)?;
        acc = match (acc, next) {
            (AnyTerm::L(f), AnyTerm::L(a)) => AnyTerm::L(lsc_term::app(f, a)),
            (AnyTerm::S(f), AnyTerm::S(a)) => AnyTerm::S(sharing_term::app(f, a)),
            (AnyTerm::B(f), AnyTerm::B(a)) => AnyTerm::B(bang_term::app(f, a)),
            _ => unreachable!(),
        };
    }
    Ok(acc)
}

fn prefixed(lx: &mut Lexer, lang: Lang) -> Result<AnyTerm, ParseError> {
    match lx.peek() {
        Tok::Bang => {
            if lang == Lang::Lsc {
                return Err(lx.err("'!' is not LSC syntax"));
            }
            lx.next();
            let inner = prefixed_or_lambda(lx, lang)?;
            Ok(match inner {
                AnyTerm::S(t) => AnyTerm::S(sharing_term::prom(t)),
                AnyTerm::B(t) => AnyTerm::B(bang_term::prom(t)),
                AnyTerm::L(_) => unreachable!(),
            })
        }
        Tok::Tilde => {
            if lang != Lang::Sharing {
                return Err(lx.err("'~' is sharing-term syntax"));
            }
            lx.next();
            let inner = prefixed_or_lambda(lx, lang)?;
            match inner {
                AnyTerm::S(t) => Ok(AnyTerm::S(sharing_term::grant(t))),
                _ => unreachable!(),
            }
        }
        _ => postfixed(lx, lang),
    }
}

fn prefixed_or_lambda(lx: &mut Lexer, lang: Lang) -> Result<AnyTerm, ParseError> {
    if lx.peek() == &Tok::Backslash {
        lambda(lx, lang)
    } else {
        prefixed(lx, lang)
    }
}

fn postfixed(lx: &mut Lexer, lang: Lang) -> Result<AnyTerm, ParseError> {
    let mut acc = primary(lx, lang)?;
    while lx.peek() == &Tok::LBracket {
        lx.next();
        let name = lx.expect_ident("substitution binder")?;
        lx.expect(Tok::Assign, "':='")?;
        let arg = term(lx, lang)?;
        lx.expect(Tok::RBracket, "']'")?;
        acc = match (acc, arg) {
            (AnyTerm::L(b), AnyTerm::L(a)) => {
                AnyTerm::L(lsc_term::sub(b, VarName::new(Sort::Plain, &name), a))
            }
            (AnyTerm::S(b), AnyTerm::S(a)) => AnyTerm::S(sharing_term::sub(
                b,
                VarName::new(Sort::Unrestricted, &name),
                a,
            )),
            (AnyTerm::B(b), AnyTerm::B(a)) => {
                AnyTerm::B(bang_term::sub(b, VarName::new(Sort::Plain, &name), a))
            }
            _ => unreachable!(),
        };
    }
    Ok(acc)
}

fn primary(lx: &mut Lexer, lang: Lang) -> Result<AnyTerm, ParseError> {
    match lx.peek().clone() {
        Tok::Ident(name) => {
            if lang == Lang::Sharing && name == "open" {
                lx.next();
                lx.expect(Tok::LParen, "'(' after open")?;
                let t = term(lx, lang)?;
                lx.expect(Tok::RParen, "')'")?;
                match t {
                    AnyTerm::S(t) => Ok(AnyTerm::S(sharing_term::request(t))),
                    _ => unreachable!(),
                }
            } else if lang == Lang::Bang && name == "der" {
                lx.next();
                lx.expect(Tok::LParen, "'(' after der")?;
                let t = term(lx, lang)?;
                lx.expect(Tok::RParen, "')'")?;
                match t {
                    AnyTerm::B(t) => Ok(AnyTerm::B(bang_term::der(t))),
                    _ => unreachable!(),
                }
            } else {
                lx.next();
                Ok(match lang {
                    Lang::Lsc => AnyTerm::L(lsc_term::var(VarName::new(Sort::Plain, &name))),
                    Lang::Sharing => {
                        AnyTerm::S(sharing_term::uvar(VarName::new(Sort::Unrestricted, &name)))
                    }
                    Lang::Bang => AnyTerm::B(bang_term::var(VarName::new(Sort::Plain, &name))),
                })
            }
        }
        Tok::LinIdent(name) => {
            if lang != Lang::Sharing {
                return Err(lx.err("sort error: linear variables ('ident) only occur in sharing terms"));
            }
            lx.next();
            Ok(AnyTerm::S(sharing_term::lvar(VarName::new(
                Sort::Linear,
                &name,
            ))))
        }
        Tok::LParen => {
            lx.next();
            let t = term(lx, lang)?;
            lx.expect(Tok::RParen, "')'")?;
            Ok(t)
        }
        _ => Err(lx.err("expected a term")),
    }
}

/// Parse an LSC term.
pub fn parse_lsc(text: &str) -> Result<LscTerm, ParseError> {
    let mut lx = lex(text)?;
    let t = parse_any(&mut lx, Lang::Lsc)?;
    lx.at_end()?;
    match t {
        AnyTerm::L(t) => Ok(t),
        _ => unreachable!(),
    }
}

/// Parse a sharing term.
pub fn parse_sharing(text: &str) -> Result<SharingTerm, ParseError> {
    let mut lx = lex(text)?;
    let t = parse_any(&mut lx, Lang::Sharing)?;
    lx.at_end()?;
    match t {
        AnyTerm::S(t) => Ok(t),
        _ => unreachable!(),
    }
}

/// Parse a Bang term.
pub fn parse_bang(text: &str) -> Result<BangTerm, ParseError> {
    let mut lx = lex(text)?;
    let t = parse_any(&mut lx, Lang::Bang)?;
    lx.at_end()?;
    match t {
        AnyTerm::B(t) => Ok(t),
        _ => unreachable!(),
    }
}

/// Parse a sharing type: `A ::= ident | A -o A | !A | ~A | (A)`.
pub fn parse_sharing_type(text: &str) -> Result<SharingType, ParseError> {
    let mut lx = lex(text)?;
    let t = sharing_type(&mut lx)?;
    lx.at_end()?;
    Ok(t)
}

fn sharing_type(lx: &mut Lexer) -> Result<SharingType, ParseError> {
    let left = sharing_type_prefixed(lx)?;
    if lx.peek() == &Tok::Lolli {
        lx.next();
        let right = sharing_type(lx)?;
        Ok(SharingType::lolli(left, right))
    } else {
        Ok(left)
    }
}

fn sharing_type_prefixed(lx: &mut Lexer) -> Result<SharingType, ParseError> {
    match lx.peek().clone() {
        Tok::Bang => {
            lx.next();
            Ok(SharingType::bang(sharing_type_prefixed(lx)?))
        }
        Tok::Tilde => {
            lx.next();
            Ok(SharingType::grant(sharing_type_prefixed(lx)?))
        }
        Tok::Ident(name) => {
            lx.next();
            Ok(SharingType::Atom(name))
        }
        Tok::LParen => {
            lx.next();
            let t = sharing_type(lx)?;
            lx.expect(Tok::RParen, "')'")?;
            Ok(t)
        }
        _ => Err(lx.err("expected a type")),
    }
}

/// Parse a simple type: `A ::= ident | A -> A | (A)`.
pub fn parse_simple_type(text: &str) -> Result<SimpleType, ParseError> {
    let mut lx = lex(text)?;
    let t = simple_type(&mut lx)?;
    lx.at_end()?;
    Ok(t)
}

fn simple_type(lx: &mut Lexer) -> Result<SimpleType, ParseError> {
    let left = simple_type_atom(lx)?;
    if lx.peek() == &Tok::Arrow {
        lx.next();
        let right = simple_type(lx)?;
        Ok(SimpleType::arrow(left, right))
    } else {
        Ok(left)
    }
}

fn simple_type_atom(lx: &mut Lexer) -> Result<SimpleType, ParseError> {
    match lx.peek().clone() {
        Tok::Ident(name) => {
            lx.next();
            Ok(SimpleType::Atom(name))
        }
        Tok::LParen => {
            lx.next();
            let t = simple_type(lx)?;
            lx.expect(Tok::RParen, "')'")?;
            Ok(t)
        }
        _ => Err(lx.err("expected a type")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::bang_term as bt;
    use crate::syntax::lsc_term as lt;
    use crate::syntax::lsc_term::pv;
    use crate::syntax::sharing_term as st;
    use crate::syntax::sharing_term::{lv, uv};

    #[test]
    fn parses_lsc_self_application() {
        let t = parse_lsc("\\x. x x").unwrap();
        assert_eq!(
            t,
            lt::abs(pv("x"), lt::app(lt::var(pv("x")), lt::var(pv("x"))))
        );
    }

    #[test]
    fn parses_sharing_example() {
        let t = parse_sharing("open(u)[u := !~v]").unwrap();
        assert_eq!(
            t,
            st::sub(
                st::request(st::uvar(uv("u"))),
                uv("u"),
                st::prom(st::grant(st::uvar(uv("v"))))
            )
        );
    }

    #[test]
    fn parses_bang_der() {
        let t = parse_bang("der(!x)").unwrap();
        assert_eq!(t, bt::der(bt::prom(bt::var(pv("x")))));
    }

    #[test]
    fn prefix_binds_next_atom() {
        // !t s = (!t) s ; !t[x := s] = !(t[x := s])
        let t = parse_sharing("!u v").unwrap();
        assert_eq!(
            t,
            st::app(st::prom(st::uvar(uv("u"))), st::uvar(uv("v")))
        );
        let t = parse_sharing("!u[x := v]").unwrap();
        assert_eq!(
            t,
            st::prom(st::sub(st::uvar(uv("u")), uv("x"), st::uvar(uv("v"))))
        );
        let t = parse_sharing("(!u)[x := v]").unwrap();
        assert_eq!(
            t,
            st::sub(st::prom(st::uvar(uv("u"))), uv("x"), st::uvar(uv("v")))
        );
    }

    #[test]
    fn sort_error_in_lsc() {
        assert!(parse_lsc("'a").is_err());
    }

    #[test]
    fn linear_binder_example() {
        let t = parse_sharing("\\'a. 'a").unwrap();
        assert_eq!(t, st::abs(lv("a"), st::lvar(lv("a"))));
    }

    #[test]
    fn types_parse() {
        let t = parse_sharing_type("!~a -o !~(!~a)").unwrap();
        assert_eq!(
            t,
            SharingType::lolli(
                SharingType::bang(SharingType::grant(SharingType::Atom("a".into()))),
                SharingType::bang(SharingType::grant(SharingType::bang(SharingType::grant(
                    SharingType::Atom("a".into())
                ))))
            )
        );
        let t = parse_simple_type("(i -> i) -> a").unwrap();
        assert_eq!(
            t,
            SimpleType::arrow(
                SimpleType::arrow(SimpleType::Atom("i".into()), SimpleType::Atom("i".into())),
                SimpleType::Atom("a".into())
            )
        );
    }
}
