//! Recursive-descent parser for the textual formula grammar.
//!
//! ```text
//! formula := impl ('<->' impl)?
//! impl    := or ('->' impl)?            right-associative
//! or      := and ('\/' and)*            left-associative
//! and     := unary ('/\' unary)*        left-associative
//! unary   := '~' unary | ('forall'|'exists') var '.' formula | atom | '(' formula ')'
//! atom    := 'bot' | X^n_i | X^n_i(t,...) | Apn(t0,t1,...,tn)
//! term    := x<i> | ident | ident(t,...)
//! ```

use super::{Binder, Formula, Term, Var1, Var2};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at byte {position}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Comma,
    Dot,
    Arrow,
    Iff,
    And,
    Or,
    Tilde,
    Ident(String),
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '^' || c == '\''
}

impl Lexer {
    fn run(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut lx = Lexer { toks: Vec::new() };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let rest = &src[i..];
            let (tok, len) = if rest.starts_with("<->") {
                (Tok::Iff, 3)
            } else if rest.starts_with("->") {
                (Tok::Arrow, 2)
            } else if rest.starts_with("/\\") {
                (Tok::And, 2)
            } else if rest.starts_with("\\/") {
                (Tok::Or, 2)
            } else {
                match c {
                    '(' => (Tok::LParen, 1),
                    ')' => (Tok::RParen, 1),
                    ',' => (Tok::Comma, 1),
                    '.' => (Tok::Dot, 1),
                    '~' => (Tok::Tilde, 1),
                    c if is_ident_char(c) => {
                        let len = rest.find(|c: char| !is_ident_char(c)).unwrap_or(rest.len());
                        (Tok::Ident(rest[..len].to_string()), len)
                    }
                    _ => {
                        return Err(ParseError {
                            position: i,
                            message: format!("unexpected character {:?}", rest.chars().next().unwrap()),
                        })
                    }
                }
            };
            lx.toks.push((i, tok));
            i += len;
        }
        Ok(lx.toks)
    }
}

enum Ident {
    Var1(Var1),
    Var2(Var2),
    Ap(usize),
    Bot,
    Forall,
    Exists,
    Symbol(String),
}

fn digits(s: &str) -> Option<u32> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn classify(s: &str) -> Ident {
    match s {
        "bot" => return Ident::Bot,
        "forall" => return Ident::Forall,
        "exists" => return Ident::Exists,
        _ => {}
    }
    if let Some(i) = s.strip_prefix('x').and_then(digits) {
        return Ident::Var1(Var1(i));
    }
    if let Some(rest) = s.strip_prefix("X^") {
        if let Some((n, i)) = rest.split_once('_') {
            if let (Some(n), Some(i)) = (digits(n), digits(i)) {
                return Ident::Var2(Var2::new(n as usize, i));
            }
        }
    }
    if let Some(n) = s.strip_prefix("Ap").and_then(digits) {
        return Ident::Ap(n as usize);
    }
    Ident::Symbol(s.to_string())
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: Lexer::run(src)?,
            pos: 0,
            end: src.len(),
        })
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            self.err("unexpected trailing input")
        } else {
            Ok(())
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implication()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.implication()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Or) {
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            Some(Tok::Ident(s)) => {
                let at = self.offset();
                self.pos += 1;
                match classify(&s) {
                    Ident::Bot => Ok(Formula::Bottom),
                    Ident::Forall | Ident::Exists => {
                        let v = self.binder()?;
                        self.expect(Tok::Dot, "'.' after quantified variable")?;
                        let body = self.formula()?;
                        Ok(if matches!(classify(&s), Ident::Forall) {
                            Formula::forall(v, body)
                        } else {
                            Formula::exists(v, body)
                        })
                    }
                    Ident::Var2(x) => {
                        let args = if self.peek() == Some(&Tok::LParen) {
                            self.args()?
                        } else {
                            Vec::new()
                        };
                        if args.len() != x.arity {
                            return Err(ParseError {
                                position: at,
                                message: format!(
                                    "arity mismatch: {x} expects {} argument(s), found {}",
                                    x.arity,
                                    args.len()
                                ),
                            });
                        }
                        Ok(Formula::Pred(x, args))
                    }
                    Ident::Ap(n) => {
                        let mut args = self.args()?;
                        if args.len() != n + 1 {
                            return Err(ParseError {
                                position: at,
                                message: format!(
                                    "arity mismatch: Ap{n} expects {} argument(s), found {}",
                                    n + 1,
                                    args.len()
                                ),
                            });
                        }
                        let head = args.remove(0);
                        Ok(Formula::Ap(head, args))
                    }
                    Ident::Var1(_) | Ident::Symbol(_) => Err(ParseError {
                        position: at,
                        message: format!("expected a formula, found term {s:?}"),
                    }),
                }
            }
            Some(_) => self.err("expected a formula"),
            None => self.err("unexpected end of input"),
        }
    }

    fn binder(&mut self) -> Result<Binder, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => match classify(&s) {
                Ident::Var1(x) => {
                    self.pos += 1;
                    Ok(Binder::First(x))
                }
                Ident::Var2(x) => {
                    self.pos += 1;
                    Ok(Binder::Second(x))
                }
                _ => self.err(format!("expected a variable, found {s:?}")),
            },
            _ => self.err("expected a variable"),
        }
    }

    fn args(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen, "'('")?;
        let mut out = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok(out);
        }
        loop {
            out.push(self.term()?);
            if self.eat(&Tok::RParen) {
                return Ok(out);
            }
            self.expect(Tok::Comma, "',' or ')'")?;
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                match classify(&s) {
                    Ident::Var1(x) => Ok(Term::Var(x)),
                    Ident::Symbol(f) => {
                        let args = if self.peek() == Some(&Tok::LParen) {
                            self.args()?
                        } else {
                            Vec::new()
                        };
                        Ok(Term::App(f, args))
                    }
                    _ => {
                        self.pos -= 1;
                        self.err(format!("expected a term, found {s:?}"))
                    }
                }
            }
            _ => self.err("expected a term"),
        }
    }
}

pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(src)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses a single variable name, `x<i>` or `X^<n>_<i>`.
pub fn parse_binder(src: &str) -> Result<Binder, ParseError> {
    let mut p = Parser::new(src)?;
    let b = p.binder()?;
    p.finish()?;
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ap_atom() {
        let f = parse_formula("Ap1(x2, x0)").unwrap();
        assert_eq!(f, Formula::Ap(Term::var(2), vec![Term::var(0)]));
    }

    #[test]
    fn parses_quantified_example() {
        let f = parse_formula("forall X^1_0. (X^1_0(x0) -> X^1_0(x1))").unwrap();
        let x = Var2::new(1, 0);
        let expected = Formula::forall(
            Binder::Second(x),
            Formula::implies(
                Formula::Pred(x, vec![Term::var(0)]),
                Formula::Pred(x, vec![Term::var(1)]),
            ),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn precedence_and_associativity() {
        let a = |i| Formula::Pred(Var2::new(0, i), vec![]);
        assert_eq!(
            parse_formula("X^0_0 /\\ X^0_1 \\/ X^0_2 -> X^0_3 -> X^0_4").unwrap(),
            Formula::implies(
                Formula::or(Formula::and(a(0), a(1)), a(2)),
                Formula::implies(a(3), a(4))
            )
        );
        assert_eq!(
            parse_formula("X^0_0 \\/ X^0_1 \\/ X^0_2").unwrap(),
            Formula::or(Formula::or(a(0), a(1)), a(2))
        );
        assert_eq!(parse_formula("~X^0_0").unwrap(), Formula::not(a(0)));
        assert_eq!(parse_formula("X^0_0 <-> X^0_1").unwrap(), Formula::iff(a(0), a(1)));
        assert_eq!(parse_formula("X^0_0()").unwrap(), a(0));
    }

    #[test]
    fn quantifier_scope_extends_right() {
        let f = parse_formula("forall x0. Ap0(x0) -> bot").unwrap();
        assert!(matches!(f, Formula::Forall(_, ref b) if matches!(**b, Formula::Impl(..))));
    }

    #[test]
    fn function_terms() {
        let t = parse_term("f(a, g(x1))").unwrap();
        assert_eq!(t, Term::app("f", vec![Term::constant("a"), Term::app("g", vec![Term::var(1)])]));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula("X^1_0(x0, x1)").unwrap_err();
        assert_eq!(e.position, 0);
        assert!(e.message.contains("arity mismatch"));
        let e = parse_formula("Ap2(x0, x1)").unwrap_err();
        assert!(e.message.contains("arity mismatch"));
        let e = parse_formula("(bot -> bot").unwrap_err();
        assert_eq!(e.position, 11);
        let e = parse_formula("bot $").unwrap_err();
        assert_eq!(e.position, 4);
        assert!(parse_formula("x0").is_err());
        assert!(parse_formula("forall a. bot").is_err());
    }
}
