//! Canonical printing. Binary connectives are always parenthesised; a
//! quantifier is parenthesised when it is the left operand of a connective.

use std::fmt::{self, Display};

use super::{Formula, Term};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => v.fmt(f),
            Term::App(name, args) => {
                f.write_str(name)?;
                if !args.is_empty() {
                    write_args(f, args)?;
                }
                Ok(())
            }
        }
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        a.fmt(f)?;
    }
    f.write_str(")")
}

fn write_operand(f: &mut fmt::Formatter<'_>, g: &Formula, left: bool) -> fmt::Result {
    if left && matches!(g, Formula::Forall(..) | Formula::Exists(..)) {
        write!(f, "({g})")
    } else {
        g.fmt(f)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Bottom => f.write_str("bot"),
            Formula::Pred(x, args) => {
                x.fmt(f)?;
                if !args.is_empty() {
                    write_args(f, args)?;
                }
                Ok(())
            }
            Formula::Ap(head, args) => {
                write!(f, "Ap{}(", args.len())?;
                head.fmt(f)?;
                for a in args {
                    f.write_str(", ")?;
                    a.fmt(f)?;
                }
                f.write_str(")")
            }
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                let op = match self {
                    Formula::Impl(..) => "->",
                    Formula::And(..) => "/\\",
                    _ => "\\/",
                };
                f.write_str("(")?;
                write_operand(f, a, true)?;
                write!(f, " {op} ")?;
                write_operand(f, b, false)?;
                f.write_str(")")
            }
            Formula::Forall(v, body) => write!(f, "forall {v}. {body}"),
            Formula::Exists(v, body) => write!(f, "exists {v}. {body}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::parse_formula;

    #[test]
    fn round_trips_normalized_text() {
        for s in [
            "(X^1_0(x0) -> X^1_0(x1))",
            "forall x0. (Ap1(x0, x1) -> Ap1(x0, x2))",
            "((forall x0. Ap0(x0)) -> bot)",
            "(bot -> forall x0. Ap0(x0))",
            "((X^0_0 /\\ X^0_1) \\/ X^2_3(f(a, x1), c))",
            "exists X^0_0. forall x3. Ap0(g(x3))",
        ] {
            assert_eq!(parse_formula(s).unwrap().to_string(), s);
        }
    }
}
