//! S-expressions used by the model, interpretation and proof file formats.
//!
//! Atoms are runs of characters other than whitespace, parentheses, `"` and
//! `;`. Strings are double-quoted with `\"` and `\\` escapes. `;` starts a
//! comment running to the end of the line.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom(String),
    Str(String),
    List(Vec<Sexp>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at byte {position}")]
pub struct SexpError {
    pub position: usize,
    pub message: String,
}

impl Sexp {
    pub fn atom(s: impl Into<String>) -> Sexp {
        Sexp::Atom(s.into())
    }

    pub fn string(s: impl Into<String>) -> Sexp {
        Sexp::Str(s.into())
    }

    pub fn list(items: impl IntoIterator<Item = Sexp>) -> Sexp {
        Sexp::List(items.into_iter().collect())
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Sexp::Str(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items) => Some(items),
            _ => None,
        }
    }

    /// For a list whose first item is an atom, that atom.
    pub fn head(&self) -> Option<&str> {
        self.as_list()?.first()?.as_atom()
    }

    /// Renders on one line if it fits in `width`, otherwise breaks after the
    /// head with children indented.
    pub fn pretty(&self, width: usize) -> String {
        let mut out = String::new();
        self.pretty_into(&mut out, 0, width);
        out
    }

    fn pretty_into(&self, out: &mut String, indent: usize, width: usize) {
        let flat = self.to_string();
        let items = match self {
            Sexp::List(items) if indent + flat.len() > width && items.len() > 1 => items,
            _ => {
                out.push_str(&flat);
                return;
            }
        };
        out.push('(');
        let mut rest = &items[..];
        // keep leading atoms on the opening line
        let mut first = true;
        while let Some((x, tail)) = rest.split_first() {
            if !matches!(x, Sexp::List(_)) {
                if !first {
                    out.push(' ');
                }
                out.push_str(&x.to_string());
                first = false;
                rest = tail;
            } else {
                break;
            }
        }
        for x in rest {
            out.push('\n');
            out.push_str(&" ".repeat(indent + 2));
            x.pretty_into(out, indent + 2, width);
        }
        out.push(')');
    }
}

fn write_quoted(f: &mut fmt::Formatter<'_>, s: &str) -> fmt::Result {
    f.write_str("\"")?;
    for c in s.chars() {
        match c {
            '"' => f.write_str("\\\"")?,
            '\\' => f.write_str("\\\\")?,
            c => write!(f, "{c}")?,
        }
    }
    f.write_str("\"")
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(a) => f.write_str(a),
            Sexp::Str(s) => write_quoted(f, s),
            Sexp::List(items) => {
                f.write_str("(")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    x.fmt(f)?;
                }
                f.write_str(")")
            }
        }
    }
}

fn is_atom_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '(' | ')' | '"' | ';')
}

/// Parses every top-level expression in `src`.
pub fn parse_all(src: &str) -> Result<Vec<Sexp>, SexpError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    let mut stack: Vec<(usize, Vec<Sexp>)> = Vec::new();
    let mut top = Vec::new();
    let err = |position: usize, message: &str| SexpError {
        position,
        message: message.to_string(),
    };
    while i < chars.len() {
        let (pos, c) = chars[i];
        let item = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            ';' => {
                while i < chars.len() && chars[i].1 != '\n' {
                    i += 1;
                }
                continue;
            }
            '(' => {
                stack.push((pos, Vec::new()));
                i += 1;
                continue;
            }
            ')' => {
                let (_, items) = stack.pop().ok_or_else(|| err(pos, "unbalanced ')'"))?;
                i += 1;
                Sexp::List(items)
            }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    let Some(&(_, c)) = chars.get(i) else {
                        return Err(err(pos, "unterminated string"));
                    };
                    i += 1;
                    match c {
                        '"' => break,
                        '\\' => {
                            let Some(&(p, e)) = chars.get(i) else {
                                return Err(err(pos, "unterminated string"));
                            };
                            i += 1;
                            match e {
                                '"' | '\\' => s.push(e),
                                _ => return Err(err(p, "unknown escape")),
                            }
                        }
                        c => s.push(c),
                    }
                }
                Sexp::Str(s)
            }
            _ => {
                let start = i;
                while i < chars.len() && is_atom_char(chars[i].1) {
                    i += 1;
                }
                Sexp::Atom(chars[start..i].iter().map(|(_, c)| c).collect())
            }
        };
        match stack.last_mut() {
            Some((_, items)) => items.push(item),
            None => top.push(item),
        }
    }
    if let Some((pos, _)) = stack.last() {
        return Err(err(*pos, "unbalanced '('"));
    }
    Ok(top)
}

/// Parses exactly one expression.
pub fn parse(src: &str) -> Result<Sexp, SexpError> {
    let mut all = parse_all(src)?;
    match all.len() {
        1 => Ok(all.pop().expect("one")),
        0 => Err(SexpError {
            position: src.len(),
            message: "empty input".into(),
        }),
        _ => Err(SexpError {
            position: 0,
            message: "more than one expression".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let src = r#"(ax () (seq (hyps "X^0_0") "X^0_0 \"q\" \\" intuitionistic second))"#;
        let s = parse(src).unwrap();
        assert_eq!(s.to_string(), src);
        assert_eq!(parse(&s.pretty(20)).unwrap(), s);
    }

    #[test]
    fn comments_and_errors() {
        let s = parse("; header\n(a b) ; trailing\n").unwrap();
        assert_eq!(s, Sexp::list([Sexp::atom("a"), Sexp::atom("b")]));
        assert_eq!(parse("(a").unwrap_err().position, 0);
        assert_eq!(parse("a)").unwrap_err().position, 1);
        assert!(parse("\"abc").is_err());
        assert!(parse("").is_err());
    }
}
