use crate::coding::SchemaInstance;
use crate::deduction::{prove_idempotent, prove_sc2, translate_down, Ctx, Logic, Order, Payload, Proof};
use crate::syntax::{parse_formula, parse_term, Abstraction, Binder, Formula, Term, Var1, Var2};

#[derive(Clone, Debug)]
pub struct NamedProof {
    pub name: String,
    pub proof: Proof,
}

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap_or_else(|e| panic!("stock formula {s}: {e}"))
}

fn lam(params: &[u32], body: &str) -> Abstraction {
    Abstraction::new(params.iter().map(|i| Var1(*i)).collect(), f(body)).expect("distinct parameters")
}

fn x2(arity: usize, i: u32) -> Binder {
    Binder::Second(Var2::new(arity, i))
}

fn x1(i: u32) -> Binder {
    Binder::First(Var1(i))
}

/// Closes `p` under `∀` over `vars`, outermost first.
fn generalize(ctx: &Ctx, mut p: Proof, vars: &[Binder]) -> Proof {
    for v in vars.iter().rev() {
        let concl = Formula::forall(*v, p.concl().clone());
        p = ctx.forall_i(concl, *v, p);
    }
    p
}

fn identity(ctx: &Ctx, a: &Formula) -> Proof {
    ctx.impl_i(a, ctx.with(a).ax(a))
}

/// `((A → B) → A) → A` by reductio.
fn peirce(ctx: &Ctx, a: &Formula, b: &Formula) -> Proof {
    let h = Formula::implies(Formula::implies(a.clone(), b.clone()), a.clone());
    let not_a = Formula::not(a.clone());
    let c = ctx.with(&h).with(&not_a);
    let ca = c.with(a);
    let a_to_b = c.impl_i(a, ca.bot_e(ca.impl_e(ca.ax(&not_a), ca.ax(a)), b.clone()));
    let got_a = c.impl_e(c.ax(&h), a_to_b);
    let bot = c.impl_e(c.ax(&not_a), got_a);
    ctx.impl_i(&h, ctx.with(&h).raa(a.clone(), bot))
}

/// `A ∨ ¬A` by reductio.
fn excluded_middle(ctx: &Ctx, a: &Formula) -> Proof {
    let not_a = Formula::not(a.clone());
    let goal = Formula::or(a.clone(), not_a.clone());
    let n = Formula::not(goal.clone());
    let c = ctx.with(&n);
    let ca = c.with(a);
    let refute_a = c.impl_i(a, ca.impl_e(ca.ax(&n), ca.or_i1(ca.ax(a), &not_a)));
    let bot = c.impl_e(c.ax(&n), c.or_i2(a, refute_a));
    ctx.raa(goal, bot)
}

fn and_swap(ctx: &Ctx, a: &Formula, b: &Formula) -> Proof {
    let ab = Formula::and(a.clone(), b.clone());
    let c = ctx.with(&ab);
    ctx.impl_i(&ab, c.and_i(c.and_e2(c.ax(&ab)), c.and_e1(c.ax(&ab))))
}

fn or_swap(ctx: &Ctx, a: &Formula, b: &Formula) -> Proof {
    let ab = Formula::or(a.clone(), b.clone());
    let c = ctx.with(&ab);
    let left = c.with(a).or_i2(b, c.with(a).ax(a));
    let right = c.with(b).or_i1(c.with(b).ax(b), a);
    ctx.impl_i(&ab, c.or_e(c.ax(&ab), left, right))
}

fn named(name: &str, proof: Proof) -> NamedProof {
    NamedProof {
        name: name.to_string(),
        proof,
    }
}

/// Checked second-order proofs covering every rule, both logics and
/// instantiation by variables, compound abstractions and `λx⃗.⊥`.
pub fn second_order_proofs() -> Vec<NamedProof> {
    let int = Ctx::new(Logic::Intuitionistic, Order::Second);
    let cls = Ctx::new(Logic::Classical, Order::Second);
    let p0 = f("X^0_0");
    let q0 = f("X^0_1");
    let mut out = Vec::new();

    out.push(named("identity-prop", generalize(&int, identity(&int, &p0), &[x2(0, 0)])));
    out.push(named(
        "identity-unary",
        generalize(&int, identity(&int, &f("X^1_0(x1)")), &[x2(1, 0)]),
    ));
    let sc = SchemaInstance::with_free_params(f("X^1_1(x0) -> X^0_2"), vec![Var1(0)]).expect("schema");
    out.push(named("comprehension", prove_sc2(&sc, Logic::Intuitionistic)));
    let sc = SchemaInstance::with_free_params(f("forall x1. X^2_0(x0, x1)"), vec![Var1(0)]).expect("schema");
    out.push(named("comprehension-quantified", prove_sc2(&sc, Logic::Intuitionistic)));
    let sc = SchemaInstance::with_free_params(f("X^0_0 \\/ (X^0_0 -> bot)"), vec![]).expect("schema");
    out.push(named("comprehension-classical", prove_sc2(&sc, Logic::Classical)));

    let all = f("forall X^1_0. X^1_0(x0)");
    let c = int.with(&all);
    out.push(named("instantiate-bottom", c.forall_e_abs(c.ax(&all), lam(&[1], "bot"))));
    let all0 = f("forall X^0_0. X^0_0");
    let c = int.with(&all0);
    out.push(named(
        "prop-bottom",
        int.impl_i(&all0, c.forall_e_abs(c.ax(&all0), lam(&[], "bot"))),
    ));
    let c = int.with(&all);
    let left = c.forall_e_abs(c.ax(&all), Abstraction::of_var(Var2::new(1, 1)));
    let right = c.forall_e_abs(c.ax(&all), lam(&[0], "bot"));
    out.push(named("instantiate-twice", c.and_i(left, right)));

    let goal = f("exists X^1_2. forall x1. X^1_2(x1) -> X^1_2(x1)");
    let w = lam(&[0], "exists x2. X^2_0(x0, x2)");
    let body = Ctx::instantiated(&goal, &Payload::Lambda(w.clone()));
    let a = f("exists x2. X^2_0(x1, x2)");
    let refl = int.forall_i(body, x1(1), identity(&int, &a));
    out.push(named("exists-abstraction", int.exists_i(goal, Payload::Lambda(w), refl)));

    out.push(named(
        "weakening",
        generalize(
            &int,
            int.impl_i(&p0, int.with(&p0).impl_i(&q0, int.with(&p0).with(&q0).ax(&p0))),
            &[x2(0, 0), x2(0, 1)],
        ),
    ));
    out.push(named(
        "and-swap",
        generalize(&int, and_swap(&int, &p0, &f("X^1_0(x0)")), &[x2(0, 0), x2(1, 0)]),
    ));
    out.push(named("or-swap", generalize(&int, or_swap(&int, &p0, &q0), &[x2(0, 0), x2(0, 1)])));
    let bot = Formula::Bottom;
    let target = f("X^1_0(x0)");
    let efq = int.impl_i(&bot, int.with(&bot).bot_e(int.with(&bot).ax(&bot), target));
    out.push(named("ex-falso", generalize(&int, efq, &[x2(1, 0), x1(0)])));
    out.push(named("peirce", generalize(&cls, peirce(&cls, &p0, &q0), &[x2(0, 0), x2(0, 1)])));
    out.push(named("excluded-middle", generalize(&cls, excluded_middle(&cls, &p0), &[x2(0, 0)])));

    let a = f("X^1_0(x0)");
    let c = int.with(&a);
    let ex = f("exists X^1_1. X^1_1(x0)");
    out.push(named(
        "exists-from-variable",
        c.exists_i(ex, Payload::Lambda(Abstraction::of_var(Var2::new(1, 0))), c.ax(&a)),
    ));

    let ex = f("exists X^1_0. X^1_0(x0)");
    let all = f("forall X^1_0. X^1_0(x0) -> X^0_0");
    let c = int.with(&ex).with(&all);
    let z = Var2::new(1, 3);
    let opened = Ctx::opened(&ex, Binder::Second(z));
    let inner = c.with(&opened);
    let step = inner.impl_e(
        inner.forall_e_abs(inner.ax(&all), Abstraction::of_var(z)),
        inner.ax(&opened),
    );
    out.push(named("exists-elim", c.exists_e(c.ax(&ex), Binder::Second(z), step)));

    let all = f("forall x0. X^1_0(x0)");
    let c = int.with(&all);
    let inst = c.forall_e_term(c.ax(&all), parse_term("f(x2)").expect("term"));
    out.push(named(
        "first-order-inside",
        c.forall_i(f("forall x1. X^1_0(f(x1))"), x1(2), inst),
    ));

    let all = f("forall x0. X^1_0(x0)");
    let ex = f("exists x0. X^1_0(x0)");
    let c = int.with(&all);
    let some = c.exists_i(ex, Payload::Term(Term::var(0)), c.forall_e_term(c.ax(&all), Term::var(0)));
    out.push(named(
        "universal-to-existential",
        generalize(&int, int.impl_i(&all, some), &[x2(1, 0)]),
    ));

    let all = f("forall X^1_0. X^1_0(x0) -> X^1_0(x0)");
    let c = int.with(&all);
    out.push(named(
        "impredicative-instance",
        c.forall_e_abs(c.ax(&all), lam(&[1], "exists x2. X^2_0(x1, x2)")),
    ));
    let all = f("forall X^1_0. exists x1. X^1_0(x1)");
    let c = int.with(&all);
    out.push(named(
        "capture-avoiding-instance",
        c.forall_e_abs(c.ax(&all), lam(&[0], "X^2_0(x0, x1)")),
    ));

    for (i, src) in [
        "forall X^1_0. X^1_0(x0) -> bot",
        "exists X^2_1. forall x1. X^2_1(x1, x0)",
        "forall x0. exists X^0_0. X^0_0 \\/ X^1_0(x0)",
        "exists x1. X^1_1(x1) /\\ X^0_1",
    ]
    .iter()
    .enumerate()
    {
        out.push(named(&format!("idempotent-{}", i + 1), prove_idempotent(&f(src), Logic::Intuitionistic)));
    }
    out
}

/// Checked first-order proofs: hand-built ones over `Ap_n` atoms followed
/// by the translations of the second-order stock.
pub fn first_order_proofs() -> Vec<NamedProof> {
    let int = Ctx::new(Logic::Intuitionistic, Order::First);
    let cls = Ctx::new(Logic::Classical, Order::First);
    let mut out = Vec::new();
    let a = f("Ap0(x0)");
    out.push(named("ap-identity", identity(&int, &a)));

    let all = f("forall x0. Ap1(x0, x1)");
    let c = int.with(&all);
    out.push(named("forall-instance", c.forall_e_term(c.ax(&all), Term::var(2))));

    let t = parse_term("f(a)").expect("term");
    let at = Formula::Ap(t.clone(), vec![Term::var(1)]);
    let c = int.with(&at);
    out.push(named(
        "exists-from-application",
        c.exists_i(f("exists x0. Ap1(x0, x1)"), Payload::Term(t), c.ax(&at)),
    ));

    let ex = f("exists x0. Ap1(x0, x1)");
    let c = int.with(&ex);
    let z = Var1(5);
    let opened = Ctx::opened(&ex, Binder::First(z));
    let inner = c.with(&opened);
    let intro = inner.exists_i(ex.clone(), Payload::Term(Term::Var(z)), inner.ax(&opened));
    out.push(named("exists-elim", c.exists_e(c.ax(&ex), Binder::First(z), intro)));

    let c = int.with(&all);
    let inst = c.forall_e_term(c.ax(&all), Term::Var(z));
    out.push(named("forall-intro", c.forall_i(all.clone(), Binder::First(z), inst)));

    let e = f("exists x0. forall x1. Ap1(x0, x1)");
    let goal = f("forall x1. exists x0. Ap1(x0, x1)");
    let c = int.with(&e);
    let opened = Ctx::opened(&e, x1(4));
    let inner = c.with(&opened);
    let inst = inner.forall_e_term(inner.ax(&opened), Term::var(3));
    let some = inner.exists_i(f("exists x0. Ap1(x0, x3)"), Payload::Term(Term::var(4)), inst);
    let body = c.exists_e(c.ax(&e), x1(4), some);
    out.push(named("swap-quantifiers", int.impl_i(&e, c.forall_i(goal, x1(3), body))));

    out.push(named(
        "and-swap",
        generalize(&int, and_swap(&int, &a, &f("Ap0(x1)")), &[x1(0)]),
    ));
    out.push(named("or-swap", or_swap(&int, &f("Ap1(x0, x1)"), &f("Ap0(f(a))"))));
    out.push(named("excluded-middle", excluded_middle(&cls, &a)));
    out.push(named("peirce", peirce(&cls, &a, &f("Ap0(x1)"))));

    let all = f("forall x0. Ap0(f(x0))");
    let c = int.with(&all);
    out.push(named(
        "function-instance",
        c.forall_e_term(c.ax(&all), parse_term("f(a)").expect("term")),
    ));

    let bot = Formula::Bottom;
    let c = int.with(&bot);
    out.push(named("ex-falso", c.bot_e(c.ax(&bot), f("Ap2(a, x0, x1)"))));

    let or = f("Ap0(x0) \\/ Ap0(x1)");
    let all = f("forall x2. Ap0(x2) -> Ap1(x2, a)");
    let goal = f("exists x3. Ap1(x3, a)");
    let c = int.with(&or).with(&all);
    let branch = |i: u32| {
        let h = Formula::Ap(Term::var(i), vec![]);
        let k = c.with(&h);
        let step = k.impl_e(k.forall_e_term(k.ax(&all), Term::var(i)), k.ax(&h));
        k.exists_i(goal.clone(), Payload::Term(Term::var(i)), step)
    };
    out.push(named("or-elim", c.or_e(c.ax(&or), branch(0), branch(1))));

    for p in second_order_proofs() {
        let d = translate_down(&p.proof).expect("second-order stock proofs translate");
        out.push(named(&format!("down/{}", p.name), d));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deduction::{check, derive_transprooftrois, translate_up};
    use crate::syntax::alpha_eq;

    #[test]
    fn stocks_check() {
        let so = second_order_proofs();
        assert!(so.len() >= 20);
        for p in &so {
            check(&p.proof).unwrap_or_else(|e| panic!("{}: {e}", p.name));
            assert_eq!(p.proof.seq.order, Order::Second);
            let d = translate_down(&p.proof).unwrap();
            check(&d).unwrap_or_else(|e| panic!("down/{}: {e}", p.name));
            let back = derive_transprooftrois(&d, p.proof.hyps(), p.proof.concl())
                .unwrap_or_else(|e| panic!("back/{}: {e}", p.name));
            check(&back).unwrap_or_else(|e| panic!("back/{}: {e}", p.name));
            assert!(alpha_eq(back.concl(), p.proof.concl()), "{}", p.name);
        }
        let fo = first_order_proofs();
        assert!(fo.len() >= 20);
        for p in &fo {
            check(&p.proof).unwrap_or_else(|e| panic!("{}: {e}", p.name));
            let u = translate_up(&p.proof).unwrap_or_else(|e| panic!("{}: {e}", p.name));
            check(&u).unwrap_or_else(|e| panic!("up/{}: {e}", p.name));
        }
    }
}
