//! Proof files: one s-expression per node.
//!
//! ```text
//! (forall2-i (eigen X^0_0)
//!   (seq (hyps) "forall X^0_0. (X^0_0 -> X^0_0)" intuitionistic second)
//!   (impl-i ()
//!     (seq (hyps) "X^0_0 -> X^0_0" intuitionistic second)
//!     (ax () (seq (hyps "X^0_0") "X^0_0" intuitionistic second))))
//! ```
//!
//! Payloads are `()`, `(eigen v)`, `(term "t")` and `(lambda (x0 ...) "F")`.

use crate::sexpr::{self, Sexp, SexpError};
use crate::syntax::{parse_binder, parse_formula, parse_term, Abstraction, Formula, Var1};
use crate::syntax::Binder;

use super::{Logic, Order, Payload, Proof, Rule, Sequent};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProofFileError {
    #[error("syntax error: {0}")]
    Syntax(#[from] SexpError),
    #[error("malformed proof: {0}")]
    Format(String),
}

fn bad<T>(msg: impl Into<String>) -> Result<T, ProofFileError> {
    Err(ProofFileError::Format(msg.into()))
}

fn formula(s: &Sexp) -> Result<Formula, ProofFileError> {
    let Some(src) = s.as_str() else {
        return bad(format!("expected a quoted formula, found {s}"));
    };
    parse_formula(src).or_else(|e| bad(format!("formula \"{src}\": {e}")))
}

fn binder(s: &Sexp) -> Result<Binder, ProofFileError> {
    let Some(a) = s.as_atom() else {
        return bad(format!("expected a variable, found {s}"));
    };
    parse_binder(a).or_else(|e| bad(format!("variable {a}: {e}")))
}

fn payload(s: &Sexp) -> Result<Payload, ProofFileError> {
    let Some(items) = s.as_list() else {
        return bad(format!("expected a payload list, found {s}"));
    };
    match (s.head(), items.len()) {
        (None, 0) => Ok(Payload::None),
        (Some("eigen"), 2) => Ok(Payload::Eigen(binder(&items[1])?)),
        (Some("term"), 2) => {
            let Some(src) = items[1].as_str() else {
                return bad(format!("expected a quoted term, found {}", items[1]));
            };
            Ok(Payload::Term(parse_term(src).or_else(|e| bad(format!("term \"{src}\": {e}")))?))
        }
        (Some("lambda"), 3) => {
            let Some(ps) = items[1].as_list() else {
                return bad(format!("expected lambda parameters, found {}", items[1]));
            };
            let mut params = Vec::new();
            for p in ps {
                match binder(p)? {
                    Binder::First(x) => params.push(x),
                    Binder::Second(x) => return bad(format!("lambda parameter {x} is not first-order")),
                }
            }
            let body = formula(&items[2])?;
            Ok(Payload::Lambda(Abstraction::new(params, body).or_else(|e| bad(e.to_string()))?))
        }
        _ => bad(format!("unknown payload {s}")),
    }
}

fn sequent(s: &Sexp) -> Result<Sequent, ProofFileError> {
    let items = match s.as_list() {
        Some(items) if s.head() == Some("seq") && items.len() == 5 => items,
        _ => return bad(format!("expected (seq (hyps ...) \"C\" logic order), found {s}")),
    };
    let hyps = match items[1].as_list() {
        Some(hs) if items[1].head() == Some("hyps") => hs[1..].iter().map(formula).collect::<Result<_, _>>()?,
        _ => return bad(format!("expected (hyps ...), found {}", items[1])),
    };
    let concl = formula(&items[2])?;
    let logic = match items[3].as_atom() {
        Some("intuitionistic") => Logic::Intuitionistic,
        Some("classical") => Logic::Classical,
        _ => return bad(format!("unknown logic {}", items[3])),
    };
    let order = match items[4].as_atom() {
        Some("first") => Order::First,
        Some("second") => Order::Second,
        _ => return bad(format!("unknown order {}", items[4])),
    };
    Ok(Sequent {
        hyps,
        concl,
        logic,
        order,
    })
}

fn node(s: &Sexp) -> Result<Proof, ProofFileError> {
    let items = match s.as_list() {
        Some(items) if items.len() >= 3 => items,
        _ => return bad(format!("expected (rule payload sequent premise...), found {s}")),
    };
    let Some(id) = items[0].as_atom() else {
        return bad(format!("expected a rule name, found {}", items[0]));
    };
    let Some(rule) = Rule::from_id(id) else {
        return bad(format!("unknown rule {id}"));
    };
    Ok(Proof {
        rule,
        payload: payload(&items[1])?,
        seq: sequent(&items[2])?,
        premises: items[3..].iter().map(node).collect::<Result<_, _>>()?,
    })
}

pub fn parse_proof(src: &str) -> Result<Proof, ProofFileError> {
    node(&sexpr::parse(src)?)
}

fn write_payload(p: &Payload) -> Sexp {
    match p {
        Payload::None => Sexp::list([]),
        Payload::Eigen(b) => Sexp::list([Sexp::atom("eigen"), Sexp::atom(b.to_string())]),
        Payload::Term(t) => Sexp::list([Sexp::atom("term"), Sexp::string(t.to_string())]),
        Payload::Lambda(a) => Sexp::list([
            Sexp::atom("lambda"),
            Sexp::list(a.params.iter().map(|x: &Var1| Sexp::atom(x.to_string()))),
            Sexp::string(a.body.to_string()),
        ]),
    }
}

fn write_sequent(s: &Sequent) -> Sexp {
    Sexp::list([
        Sexp::atom("seq"),
        Sexp::list(std::iter::once(Sexp::atom("hyps")).chain(s.hyps.iter().map(|h| Sexp::string(h.to_string())))),
        Sexp::string(s.concl.to_string()),
        Sexp::atom(match s.logic {
            Logic::Intuitionistic => "intuitionistic",
            Logic::Classical => "classical",
        }),
        Sexp::atom(match s.order {
            Order::First => "first",
            Order::Second => "second",
        }),
    ])
}

fn write_node(p: &Proof) -> Sexp {
    let mut items = vec![Sexp::atom(p.rule.id()), write_payload(&p.payload), write_sequent(&p.seq)];
    items.extend(p.premises.iter().map(write_node));
    Sexp::List(items)
}

pub fn write_proof(p: &Proof) -> String {
    write_node(p).pretty(100) + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deduction::{check, Ctx};
    use crate::syntax::{Term, Var2};

    #[test]
    fn round_trip() {
        let ctx = Ctx::new(Logic::Intuitionistic, Order::Second);
        let x = parse_formula("X^0_0").unwrap();
        let imp = ctx.impl_i(&x, ctx.with(&x).ax(&x));
        let all = parse_formula("forall X^0_0. (X^0_0 -> X^0_0)").unwrap();
        let p = ctx.forall_i(all.clone(), Binder::Second(Var2::new(0, 0)), imp);
        let k = ctx.with(&all);
        let lam = Abstraction::new(vec![], parse_formula("forall x0. X^1_0(f(x0))").unwrap()).unwrap();
        let q = k.forall_e_abs(k.ax(&all), lam);
        for p in [p, q] {
            let text = write_proof(&p);
            assert_eq!(parse_proof(&text).unwrap(), p, "{text}");
            check(&p).unwrap();
        }
        let t = Payload::Term(Term::app("f", vec![Term::var(2)]));
        assert_eq!(payload(&write_payload(&t)).unwrap(), t);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_proof("(ax ()"), Err(ProofFileError::Syntax(_))));
        assert!(matches!(
            parse_proof("(nope () (seq (hyps) \"bot\" classical first))"),
            Err(ProofFileError::Format(_))
        ));
        assert!(matches!(
            parse_proof("(ax () (seq (hyps) \"bot ->\" classical first))"),
            Err(ProofFileError::Format(_))
        ));
    }
}
