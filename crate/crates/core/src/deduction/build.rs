use crate::syntax::{alpha_eq, Abstraction, Binder, Formula, Term};

use super::{Logic, Order, Payload, Proof, Rule, Sequent};

/// A hypothesis context together with the logic and language, used to build
/// proof nodes whose conclusions are computed from their premises.
///
/// Premises built in a smaller context may be used in a larger one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ctx {
    pub hyps: Vec<Formula>,
    pub logic: Logic,
    pub order: Order,
}

fn mk(rule: Rule, payload: Payload, seq: Sequent, premises: Vec<Proof>) -> Proof {
    Proof {
        rule,
        payload,
        seq,
        premises,
    }
}

impl Ctx {
    pub fn new(logic: Logic, order: Order) -> Self {
        Ctx {
            hyps: Vec::new(),
            logic,
            order,
        }
    }

    pub fn with_hyps(logic: Logic, order: Order, hyps: Vec<Formula>) -> Self {
        let mut c = Ctx::new(logic, order);
        for h in hyps {
            c = c.with(&h);
        }
        c
    }

    /// The context extended by `a` (unless already present up to renaming).
    pub fn with(&self, a: &Formula) -> Ctx {
        let mut c = self.clone();
        if !c.hyps.iter().any(|h| alpha_eq(h, a)) {
            c.hyps.push(a.clone());
        }
        c
    }

    pub fn seq(&self, concl: Formula) -> Sequent {
        Sequent {
            hyps: self.hyps.clone(),
            concl,
            logic: self.logic,
            order: self.order,
        }
    }

    pub fn ax(&self, a: &Formula) -> Proof {
        mk(Rule::Ax, Payload::None, self.seq(a.clone()), vec![])
    }

    pub fn bot_e(&self, p: Proof, c: Formula) -> Proof {
        mk(Rule::BotE, Payload::None, self.seq(c), vec![p])
    }

    /// From a proof of `⊥` under `c → ⊥`, concludes `c`.
    pub fn raa(&self, c: Formula, p: Proof) -> Proof {
        mk(Rule::Raa, Payload::None, self.seq(c), vec![p])
    }

    pub fn impl_i(&self, a: &Formula, p: Proof) -> Proof {
        let c = Formula::implies(a.clone(), p.concl().clone());
        mk(Rule::ImplI, Payload::None, self.seq(c), vec![p])
    }

    pub fn impl_e(&self, f: Proof, a: Proof) -> Proof {
        let c = match f.concl() {
            Formula::Impl(_, b) => (**b).clone(),
            other => panic!("impl_e on {other}"),
        };
        mk(Rule::ImplE, Payload::None, self.seq(c), vec![f, a])
    }

    pub fn and_i(&self, a: Proof, b: Proof) -> Proof {
        let c = Formula::and(a.concl().clone(), b.concl().clone());
        mk(Rule::AndI, Payload::None, self.seq(c), vec![a, b])
    }

    pub fn and_e1(&self, p: Proof) -> Proof {
        let c = match p.concl() {
            Formula::And(a, _) => (**a).clone(),
            other => panic!("and_e1 on {other}"),
        };
        mk(Rule::AndE1, Payload::None, self.seq(c), vec![p])
    }

    pub fn and_e2(&self, p: Proof) -> Proof {
        let c = match p.concl() {
            Formula::And(_, b) => (**b).clone(),
            other => panic!("and_e2 on {other}"),
        };
        mk(Rule::AndE2, Payload::None, self.seq(c), vec![p])
    }

    pub fn or_i1(&self, p: Proof, b: &Formula) -> Proof {
        let c = Formula::or(p.concl().clone(), b.clone());
        mk(Rule::OrI1, Payload::None, self.seq(c), vec![p])
    }

    pub fn or_i2(&self, a: &Formula, p: Proof) -> Proof {
        let c = Formula::or(a.clone(), p.concl().clone());
        mk(Rule::OrI2, Payload::None, self.seq(c), vec![p])
    }

    pub fn or_e(&self, p: Proof, left: Proof, right: Proof) -> Proof {
        let c = left.concl().clone();
        mk(Rule::OrE, Payload::None, self.seq(c), vec![p, left, right])
    }

    /// `∀I` concluding `concl` from a proof of its body at `eigen`.
    pub fn forall_i(&self, concl: Formula, eigen: Binder, p: Proof) -> Proof {
        let rule = match eigen {
            Binder::First(_) => Rule::Forall1I,
            Binder::Second(_) => Rule::Forall2I,
        };
        mk(rule, Payload::Eigen(eigen), self.seq(concl), vec![p])
    }

    /// `∀E` at a term (first-order binder) or abstraction (second-order).
    pub fn forall_e(&self, p: Proof, w: Payload) -> Proof {
        let (v, body) = match p.concl() {
            Formula::Forall(v, b) => (*v, (**b).clone()),
            other => panic!("forall_e on {other}"),
        };
        let (rule, c) = open(v, &body, &w);
        let rule = if rule { Rule::Forall2E } else { Rule::Forall1E };
        mk(rule, w, self.seq(c), vec![p])
    }

    pub fn forall_e_term(&self, p: Proof, t: Term) -> Proof {
        self.forall_e(p, Payload::Term(t))
    }

    pub fn forall_e_abs(&self, p: Proof, a: Abstraction) -> Proof {
        self.forall_e(p, Payload::Lambda(a))
    }

    /// `∃I` concluding `concl` from a proof of its body at `w`.
    pub fn exists_i(&self, concl: Formula, w: Payload, p: Proof) -> Proof {
        let rule = match &w {
            Payload::Lambda(_) => Rule::Exists2I,
            _ => Rule::Exists1I,
        };
        mk(rule, w, self.seq(concl), vec![p])
    }

    /// `∃E` with the eigenvariable `eigen`; `body` is proved in a context
    /// containing the opened hypothesis (see [`Ctx::opened`]).
    pub fn exists_e(&self, ex: Proof, eigen: Binder, body: Proof) -> Proof {
        let rule = match eigen {
            Binder::First(_) => Rule::Exists1E,
            Binder::Second(_) => Rule::Exists2E,
        };
        let c = body.concl().clone();
        mk(rule, Payload::Eigen(eigen), self.seq(c), vec![ex, body])
    }

    /// The body of a quantified formula instantiated at an eigenvariable.
    pub fn opened(q: &Formula, eigen: Binder) -> Formula {
        let (v, body) = match q {
            Formula::Forall(v, b) | Formula::Exists(v, b) => (*v, b),
            other => panic!("opened on {other}"),
        };
        instantiate_binder(v, body, eigen)
    }

    /// The body of a quantified formula instantiated at `w`.
    pub fn instantiated(q: &Formula, w: &Payload) -> Formula {
        let (v, body) = match q {
            Formula::Forall(v, b) | Formula::Exists(v, b) => (*v, b),
            other => panic!("instantiated on {other}"),
        };
        open(v, body, w).1
    }

    /// Modus ponens on a proved equivalence: from `A ≡ B` and `A`, `B`.
    pub fn iff_mp(&self, iff: Proof, a: Proof) -> Proof {
        let f = self.and_e1(iff);
        self.impl_e(f, a)
    }

    /// From `A ≡ B` and `B`, `A`.
    pub fn iff_mpr(&self, iff: Proof, b: Proof) -> Proof {
        let f = self.and_e2(iff);
        self.impl_e(f, b)
    }
}

pub(crate) fn instantiate_binder(v: Binder, body: &Formula, with: Binder) -> Formula {
    match (v, with) {
        (Binder::First(x), Binder::First(y)) => body.subst_term(x, &Term::Var(y)),
        (Binder::Second(x), Binder::Second(y)) => body.subst_var2(x, y).expect("same arity"),
        _ => panic!("binder sorts differ"),
    }
}

/// Instantiates `body` of a quantifier over `v` with `w`; the flag is true
/// for second-order instantiation.
fn open(v: Binder, body: &Formula, w: &Payload) -> (bool, Formula) {
    match (v, w) {
        (Binder::First(x), Payload::Term(t)) => (false, body.subst_term(x, t)),
        (Binder::Second(x), Payload::Lambda(a)) => (true, body.subst_formula2(x, a).expect("same arity")),
        (_, Payload::Eigen(y)) => (matches!(v, Binder::Second(_)), instantiate_binder(v, body, *y)),
        _ => panic!("instantiation payload does not match {v}"),
    }
}
