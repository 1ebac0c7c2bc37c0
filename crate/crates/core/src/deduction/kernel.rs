use std::fmt;

use crate::syntax::{alpha_eq, Binder, Formula, Term};

use super::{Logic, Order, Payload, Proof, Rule};

/// Why a proof was rejected, and where: `path` lists premise indices from
/// the root to the offending node.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct Rejection {
    pub path: Vec<usize>,
    pub rule: Rule,
    pub reason: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("node /")?;
        for (i, p) in self.path.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, " ({}): {}", self.rule, self.reason)
    }
}

/// Checks every node of `p` against its rule.
pub fn check(p: &Proof) -> Result<(), Rejection> {
    let mut path = Vec::new();
    go(p, &mut path)
}

fn go(p: &Proof, path: &mut Vec<usize>) -> Result<(), Rejection> {
    node(p).map_err(|reason| Rejection {
        path: path.clone(),
        rule: p.rule,
        reason,
    })?;
    for (i, q) in p.premises.iter().enumerate() {
        path.push(i);
        go(q, path)?;
        path.pop();
    }
    Ok(())
}

type R = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> R {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn member(f: &Formula, set: &[Formula]) -> bool {
    set.iter().any(|g| alpha_eq(f, g))
}

/// Every hypothesis of premise `i` is among the node's, or is `discharged`.
fn within(p: &Proof, i: usize, discharged: Option<&Formula>) -> R {
    for h in p.premises[i].hyps() {
        let ok = member(h, p.hyps()) || discharged.is_some_and(|d| alpha_eq(h, d));
        ensure(ok, || format!("hypothesis {h} of premise {i} is not available"))?;
    }
    Ok(())
}

fn same(expected: &Formula, found: &Formula, what: &str) -> R {
    ensure(alpha_eq(expected, found), || format!("{what}: expected {expected}, found {found}"))
}

fn pure(f: &Formula, order: Order) -> R {
    match order {
        Order::First => ensure(f.is_l1_pure(), || format!("{f} is not a first-order formula")),
        Order::Second => ensure(f.is_l2_pure(), || format!("{f} is not a second-order formula")),
    }
}

fn quant(f: &Formula, forall: bool) -> Option<(Binder, &Formula)> {
    match (f, forall) {
        (Formula::Forall(v, b), true) | (Formula::Exists(v, b), false) => Some((*v, b)),
        _ => None,
    }
}

fn instantiate(v: Binder, body: &Formula, payload: &Payload) -> Result<Formula, String> {
    match (v, payload) {
        (Binder::First(x), Payload::Term(t)) => Ok(body.subst_term(x, t)),
        (Binder::First(x), Payload::Eigen(Binder::First(y))) => Ok(body.subst_term(x, &Term::Var(*y))),
        (Binder::Second(x), Payload::Lambda(a)) => body.subst_formula2(x, a).map_err(|e| e.to_string()),
        (Binder::Second(x), Payload::Eigen(Binder::Second(y))) => body.subst_var2(x, *y).map_err(|e| e.to_string()),
        _ => Err(format!("payload does not match the bound variable {v}")),
    }
}

fn eigen_free_in(y: Binder, fs: &[&Formula]) -> R {
    for f in fs {
        ensure(!f.is_free(y), || format!("eigenvariable condition: {y} is free in {f}"))?;
    }
    Ok(())
}

fn node(p: &Proof) -> R {
    let seq = &p.seq;
    let arity = match p.rule {
        Rule::Ax => 0,
        Rule::ImplE | Rule::AndI | Rule::Exists1E | Rule::Exists2E => 2,
        Rule::OrE => 3,
        _ => 1,
    };
    ensure(p.premises.len() == arity, || {
        format!("expected {arity} premise(s), found {}", p.premises.len())
    })?;
    for (i, q) in p.premises.iter().enumerate() {
        ensure(q.seq.logic == seq.logic && q.seq.order == seq.order, || {
            format!("premise {i} is stated in a different logic or language")
        })?;
    }
    for f in seq.hyps.iter().chain([&seq.concl]) {
        pure(f, seq.order)?;
    }
    if p.rule.is_second_order() {
        ensure(seq.order == Order::Second, || "second-order rule in a first-order proof".into())?;
    }
    let payload_ok = match (&p.payload, p.rule) {
        (Payload::Eigen(Binder::First(_)), Rule::Forall1I | Rule::Exists1E) => true,
        (Payload::Eigen(Binder::Second(_)), Rule::Forall2I | Rule::Exists2E) => true,
        (Payload::Term(_), Rule::Forall1E | Rule::Exists1I) => true,
        (Payload::Lambda(a), Rule::Forall2E | Rule::Exists2I) => {
            pure(&a.body, Order::Second)?;
            true
        }
        (Payload::None, r) => !matches!(
            r,
            Rule::Forall1I
                | Rule::Exists1E
                | Rule::Forall2I
                | Rule::Exists2E
                | Rule::Forall1E
                | Rule::Exists1I
                | Rule::Forall2E
                | Rule::Exists2I
        ),
        _ => false,
    };
    ensure(payload_ok, || format!("payload {:?} does not fit the rule", p.payload))?;
    let c = &seq.concl;
    let prem = |i: usize| p.premises[i].concl();
    match p.rule {
        Rule::Ax => ensure(member(c, &seq.hyps), || format!("{c} is not a hypothesis")),
        Rule::BotE => {
            within(p, 0, None)?;
            same(&Formula::Bottom, prem(0), "premise")
        }
        Rule::Raa => {
            ensure(seq.logic == Logic::Classical, || "reductio ad absurdum in an intuitionistic proof".into())?;
            within(p, 0, Some(&Formula::not(c.clone())))?;
            same(&Formula::Bottom, prem(0), "premise")
        }
        Rule::ImplI => {
            let Formula::Impl(a, b) = c else {
                return Err(format!("{c} is not an implication"));
            };
            within(p, 0, Some(a))?;
            same(b, prem(0), "premise")
        }
        Rule::ImplE => {
            within(p, 0, None)?;
            within(p, 1, None)?;
            let Formula::Impl(a, b) = prem(0) else {
                return Err(format!("major premise {} is not an implication", prem(0)));
            };
            same(b, c, "conclusion")?;
            same(a, prem(1), "minor premise")
        }
        Rule::AndI => {
            let Formula::And(a, b) = c else {
                return Err(format!("{c} is not a conjunction"));
            };
            within(p, 0, None)?;
            within(p, 1, None)?;
            same(a, prem(0), "left premise")?;
            same(b, prem(1), "right premise")
        }
        Rule::AndE1 | Rule::AndE2 => {
            within(p, 0, None)?;
            let Formula::And(a, b) = prem(0) else {
                return Err(format!("premise {} is not a conjunction", prem(0)));
            };
            same(if p.rule == Rule::AndE1 { a } else { b }, c, "conclusion")
        }
        Rule::OrI1 | Rule::OrI2 => {
            within(p, 0, None)?;
            let Formula::Or(a, b) = c else {
                return Err(format!("{c} is not a disjunction"));
            };
            same(if p.rule == Rule::OrI1 { a } else { b }, prem(0), "premise")
        }
        Rule::OrE => {
            within(p, 0, None)?;
            let Formula::Or(a, b) = prem(0) else {
                return Err(format!("major premise {} is not a disjunction", prem(0)));
            };
            within(p, 1, Some(a))?;
            within(p, 2, Some(b))?;
            same(c, prem(1), "left case")?;
            same(c, prem(2), "right case")
        }
        Rule::Forall1I | Rule::Forall2I => {
            let Some((v, body)) = quant(c, true) else {
                return Err(format!("{c} is not a universal formula"));
            };
            check_sort(p.rule, v)?;
            let Payload::Eigen(y) = &p.payload else { unreachable!() };
            within(p, 0, None)?;
            same(&instantiate(v, body, &p.payload)?, prem(0), "premise")?;
            let hyps: Vec<&Formula> = p.premises[0].hyps().iter().collect();
            eigen_free_in(*y, &hyps)?;
            eigen_free_in(*y, &[c])
        }
        Rule::Forall1E | Rule::Forall2E => {
            within(p, 0, None)?;
            let Some((v, body)) = quant(prem(0), true) else {
                return Err(format!("premise {} is not a universal formula", prem(0)));
            };
            check_sort(p.rule, v)?;
            same(&instantiate(v, body, &p.payload)?, c, "conclusion")
        }
        Rule::Exists1I | Rule::Exists2I => {
            within(p, 0, None)?;
            let Some((v, body)) = quant(c, false) else {
                return Err(format!("{c} is not an existential formula"));
            };
            check_sort(p.rule, v)?;
            same(&instantiate(v, body, &p.payload)?, prem(0), "premise")
        }
        Rule::Exists1E | Rule::Exists2E => {
            within(p, 0, None)?;
            let ex = prem(0);
            let Some((v, body)) = quant(ex, false) else {
                return Err(format!("major premise {ex} is not an existential formula"));
            };
            check_sort(p.rule, v)?;
            let Payload::Eigen(y) = &p.payload else { unreachable!() };
            let opened = instantiate(v, body, &p.payload)?;
            within(p, 1, Some(&opened))?;
            same(c, prem(1), "minor premise")?;
            let rest: Vec<&Formula> = p.premises[1]
                .hyps()
                .iter()
                .filter(|h| !alpha_eq(h, &opened))
                .collect();
            eigen_free_in(*y, &rest)?;
            eigen_free_in(*y, &[c, ex])
        }
    }
}

fn check_sort(rule: Rule, v: Binder) -> R {
    let second = matches!(v, Binder::Second(_));
    ensure(second == rule.is_second_order(), || {
        format!("rule {rule} cannot bind the variable {v}")
    })
}
