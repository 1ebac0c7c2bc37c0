use crate::coding::{rev_inserted, rev_pure, sc2_instance, star_binder, star_pure, SchemaInstance};
use crate::syntax::{Abstraction, Binder, Connective, Formula, Quantifier, Term, UsedVars, Var1, Var2};

use super::build::Ctx;
use super::{Logic, Order, Payload, Proof};

/// The atoms a congruence proof rewrites: a predicate variable, or the
/// `Ap_n` atoms with a given variable as head.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hole {
    Pred(Var2),
    Ap(Var1, usize),
}

impl Hole {
    fn binder(self) -> Binder {
        match self {
            Hole::Pred(x) => Binder::Second(x),
            Hole::Ap(w, _) => Binder::First(w),
        }
    }

    fn args_of(self, f: &Formula) -> Option<&[Term]> {
        match (self, f) {
            (Hole::Pred(x), Formula::Pred(y, args)) if x == *y => Some(args),
            (Hole::Ap(w, n), Formula::Ap(Term::Var(h), args)) if w == *h && args.len() == n => Some(args),
            _ => None,
        }
    }
}

/// `F` with every free hole atom `h(t⃗)` replaced by `a(t⃗)`.
pub fn fill(f: &Formula, hole: Hole, a: &Abstraction) -> Formula {
    match hole {
        Hole::Pred(x) => f.subst_formula2(x, a).expect("hole and abstraction arities agree"),
        Hole::Ap(w, n) => {
            let mut used = UsedVars::of(f);
            used.add_abstraction(a);
            let y = used.fresh2(n);
            ap_to_pred(f, w, n, y)
                .subst_formula2(y, a)
                .expect("hole and abstraction arities agree")
        }
    }
}

fn ap_to_pred(f: &Formula, w: Var1, n: usize, y: Var2) -> Formula {
    match f {
        Formula::Ap(Term::Var(h), args) if *h == w && args.len() == n => Formula::Pred(y, args.clone()),
        Formula::Bottom | Formula::Pred(..) | Formula::Ap(..) => f.clone(),
        Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
            let (c, _, _) = f.as_binary().unwrap();
            Formula::binary(c, ap_to_pred(a, w, n, y), ap_to_pred(b, w, n, y))
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            if *v == Binder::First(w) {
                return f.clone();
            }
            let (q, _, _) = f.as_quant().unwrap();
            Formula::quant(q, *v, ap_to_pred(body, w, n, y))
        }
    }
}

/// `A ≡ A`.
pub fn prove_iff_refl(ctx: &Ctx, a: &Formula) -> Proof {
    let inner = ctx.with(a);
    let i = ctx.impl_i(a, inner.ax(a));
    ctx.and_i(i.clone(), i)
}

/// Builds `A ≡ B` from a proof of `B` under `A` and a proof of `A` under `B`.
fn iff_from(
    ctx: &Ctx,
    a: &Formula,
    b: &Formula,
    fwd: impl FnOnce(&Ctx, Proof) -> Proof,
    bwd: impl FnOnce(&Ctx, Proof) -> Proof,
) -> Proof {
    let ca = ctx.with(a);
    let pa = ca.ax(a);
    let l = ctx.impl_i(a, fwd(&ca, pa));
    let cb = ctx.with(b);
    let pb = cb.ax(b);
    let r = ctx.impl_i(b, bwd(&cb, pb));
    ctx.and_i(l, r)
}

fn iff_sides(p: &Proof) -> (Formula, Formula) {
    match p.concl().as_iff() {
        Some((a, b)) => (a.clone(), b.clone()),
        None => panic!("{} is not an equivalence", p.concl()),
    }
}

/// From `A1 ≡ B1` and `A2 ≡ B2`, `(A1 c A2) ≡ (B1 c B2)`.
fn combine(ctx: &Ctx, c: Connective, l: Proof, r: Proof) -> Proof {
    let (a1, b1) = iff_sides(&l);
    let (a2, b2) = iff_sides(&r);
    let a = Formula::binary(c, a1.clone(), a2.clone());
    let b = Formula::binary(c, b1.clone(), b2.clone());
    let dir = |fwd: bool| {
        let (l, r) = (l.clone(), r.clone());
        let (x1, x2, y1, y2) = if fwd {
            (a1.clone(), a2.clone(), b1.clone(), b2.clone())
        } else {
            (b1.clone(), b2.clone(), a1.clone(), a2.clone())
        };
        let go = move |k: &Ctx, p: Proof, side: &Proof| -> Proof {
            if fwd {
                k.iff_mp(side.clone(), p)
            } else {
                k.iff_mpr(side.clone(), p)
            }
        };
        let back = move |k: &Ctx, p: Proof, side: &Proof| -> Proof {
            if fwd {
                k.iff_mpr(side.clone(), p)
            } else {
                k.iff_mp(side.clone(), p)
            }
        };
        move |k: &Ctx, h: Proof| -> Proof {
            match c {
                Connective::And => {
                    let p1 = go(k, k.and_e1(h.clone()), &l);
                    let p2 = go(k, k.and_e2(h), &r);
                    k.and_i(p1, p2)
                }
                Connective::Or => {
                    let k1 = k.with(&x1);
                    let left = k1.or_i1(go(&k1, k1.ax(&x1), &l), &y2);
                    let k2 = k.with(&x2);
                    let right = k2.or_i2(&y1, go(&k2, k2.ax(&x2), &r));
                    k.or_e(h, left, right)
                }
                Connective::Impl => {
                    let k1 = k.with(&y1);
                    let arg = back(&k1, k1.ax(&y1), &l);
                    let out = go(&k1, k1.impl_e(h, arg), &r);
                    k.impl_i(&y1, out)
                }
            }
        }
    };
    iff_from(ctx, &a, &b, dir(true), dir(false))
}

fn fresh_eigen(v: Binder, used: &mut UsedVars) -> Binder {
    match v {
        Binder::First(_) => Binder::First(used.fresh1()),
        Binder::Second(x) => Binder::Second(used.fresh2(x.arity)),
    }
}

fn var_payload(z: Binder) -> Payload {
    match z {
        Binder::First(x) => Payload::Term(Term::Var(x)),
        Binder::Second(x) => Payload::Lambda(Abstraction::of_var(x)),
    }
}

/// `fill(F, a) ≡ fill(F, b)` from `eqv`, a proof of `∀y⃗ (a(y⃗) ≡ b(y⃗))`
/// whose bound variables are the parameters of `a` and `b` in order.
pub fn prove_congruence(ctx: &Ctx, f: &Formula, hole: Hole, a: &Abstraction, b: &Abstraction, eqv: &Proof) -> Proof {
    if !f.is_free(hole.binder()) {
        return prove_iff_refl(ctx, &fill(f, hole, a));
    }
    if let Some(args) = hole.args_of(f) {
        let mut p = eqv.clone();
        for t in args {
            p = ctx.forall_e_term(p, t.clone());
        }
        return p;
    }
    if let Some((c, l, r)) = f.as_binary() {
        let pl = prove_congruence(ctx, l, hole, a, b, eqv);
        let pr = prove_congruence(ctx, r, hole, a, b, eqv);
        return combine(ctx, c, pl, pr);
    }
    let Some((q, v, body)) = f.as_quant() else {
        return prove_iff_refl(ctx, &fill(f, hole, a));
    };
    let mut used = UsedVars::of(f);
    for h in &ctx.hyps {
        used.add_formula(h);
    }
    used.add_abstraction(a);
    used.add_abstraction(b);
    used.add_formula(eqv.concl());
    used.add_binder(hole.binder());
    let z = fresh_eigen(v, &mut used);
    let opened = body.rename_binder(v, z);
    let ih = prove_congruence(ctx, &opened, hole, a, b, eqv);
    let fa = fill(f, hole, a);
    let fb = fill(f, hole, b);
    let dir = |fwd: bool| {
        let ih = ih.clone();
        let target = if fwd { fb.clone() } else { fa.clone() };
        move |k: &Ctx, h: Proof| -> Proof {
            let step = |k: &Ctx, p: Proof| if fwd { k.iff_mp(ih.clone(), p) } else { k.iff_mpr(ih.clone(), p) };
            match q {
                Quantifier::Forall => {
                    let inst = k.forall_e(h, var_payload(z));
                    k.forall_i(target, z, step(k, inst))
                }
                Quantifier::Exists => {
                    let src = h.concl().clone();
                    let k1 = k.with(&Ctx::opened(&src, z));
                    let inner = step(&k1, k1.ax(&Ctx::opened(&src, z)));
                    let intro = k1.exists_i(target, var_payload(z), inner);
                    k.exists_e(h, z, intro)
                }
            }
        }
    };
    iff_from(ctx, &fa, &fb, dir(true), dir(false))
}

/// A closed proof of `∀χ⃗ ∃X ∀x⃗ (G ≡ X(x⃗))`, witnessed by `λx⃗. G`.
pub fn prove_sc2(s: &SchemaInstance, logic: Logic) -> Proof {
    let ctx = Ctx::new(logic, Order::Second);
    let mut p = prove_iff_refl(&ctx, &s.body);
    for x in s.fo_params.iter().rev() {
        let concl = Formula::forall(Binder::First(*x), p.concl().clone());
        p = ctx.forall_i(concl, Binder::First(*x), p);
    }
    let lambda = Abstraction::new(s.fo_params.clone(), s.body.clone()).expect("parameters are distinct");
    let goal = sc2_instance(s);
    let mut layers = vec![goal.clone()];
    while let Formula::Forall(_, body) = layers.last().unwrap() {
        let inner = (**body).clone();
        layers.push(inner);
    }
    let ex = layers.pop().unwrap();
    p = ctx.exists_i(ex, Payload::Lambda(lambda), p);
    for (chi, layer) in s.so_params.iter().rev().zip(layers.into_iter().rev()) {
        p = ctx.forall_i(layer, *chi, p);
    }
    p
}

/// A closed second-order proof of `rev(A*) ≡ A` for an L2-pure `A`.
pub fn prove_idempotent(a: &Formula, logic: Logic) -> Proof {
    let ctx = Ctx::new(logic, Order::Second);
    idempotent(&ctx, a)
}

fn idempotent(ctx: &Ctx, a: &Formula) -> Proof {
    if let Some((c, l, r)) = a.as_binary() {
        let pl = idempotent(ctx, l);
        let pr = idempotent(ctx, r);
        return combine(ctx, c, pl, pr);
    }
    let Some((q, v, body)) = a.as_quant() else {
        return prove_iff_refl(ctx, a);
    };
    let (y, renamed) = star_binder(v, body);
    let w = match v {
        Binder::First(_) => Binder::First(y),
        Binder::Second(x) => Binder::Second(Var2::new(x.arity, y.0)),
    };
    let ih = idempotent(ctx, &renamed);
    let p = rev_pure(&star_pure(&renamed));
    let inserted = rev_inserted(y, &p);
    // prefixes[j] quantifies the inserted variables from j on
    let mut prefixes = vec![p.clone()];
    for yy in inserted.iter().rev() {
        let inner = prefixes.last().unwrap().clone();
        prefixes.push(Formula::quant(q, Binder::Second(*yy), inner));
    }
    prefixes.reverse();
    let r = Formula::quant(q, Binder::First(y), prefixes[0].clone());
    let fwd = |k: &Ctx, h: Proof| -> Proof {
        match q {
            Quantifier::Forall => {
                let mut cur = k.forall_e_term(h, Term::Var(y));
                for yy in &inserted {
                    cur = k.forall_e_abs(cur, Abstraction::of_var(*yy));
                }
                let b = k.iff_mp(ih.clone(), cur);
                k.forall_i(a.clone(), w, b)
            }
            Quantifier::Exists => {
                let mut k1 = k.with(&prefixes[0]);
                let mut chain: Vec<(Ctx, Proof, Binder)> = vec![(k.clone(), h, Binder::First(y))];
                let mut src = prefixes[0].clone();
                for (j, yy) in inserted.iter().enumerate() {
                    let ax = k1.ax(&src);
                    chain.push((k1.clone(), ax, Binder::Second(*yy)));
                    src = prefixes[j + 1].clone();
                    k1 = k1.with(&src);
                }
                let inner = k1.iff_mp(ih.clone(), k1.ax(&p));
                let mut out = k1.exists_i(a.clone(), var_payload(w), inner);
                for (kk, major, eigen) in chain.into_iter().rev() {
                    out = kk.exists_e(major, eigen, out);
                }
                out
            }
        }
    };
    let bwd = |k: &Ctx, h: Proof| -> Proof {
        match q {
            Quantifier::Forall => {
                let inst = k.forall_e(h, var_payload(w));
                let mut cur = k.iff_mpr(ih.clone(), inst);
                for (j, yy) in inserted.iter().enumerate().rev() {
                    cur = k.forall_i(prefixes[j].clone(), Binder::Second(*yy), cur);
                }
                k.forall_i(r.clone(), Binder::First(y), cur)
            }
            Quantifier::Exists => {
                let k1 = k.with(&renamed);
                let mut cur = k1.iff_mpr(ih.clone(), k1.ax(&renamed));
                for (j, yy) in inserted.iter().enumerate().rev() {
                    cur = k1.exists_i(prefixes[j].clone(), var_payload(Binder::Second(*yy)), cur);
                }
                cur = k1.exists_i(r.clone(), Payload::Term(Term::Var(y)), cur);
                k.exists_e(h, w, cur)
            }
        }
    };
    iff_from(ctx, &r, a, fwd, bwd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::{bounded_sc2, enumerate_formulas};
    use crate::deduction::check;
    use crate::syntax::{alpha_eq, parse_formula};

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn iff_refl_checks() {
        let ctx = Ctx::new(Logic::Intuitionistic, Order::First);
        let f = p("forall x0. Ap1(x0, x1)");
        let pr = prove_iff_refl(&ctx, &f);
        check(&pr).unwrap();
        assert_eq!(pr.concl(), &Formula::iff(f.clone(), f));
    }

    #[test]
    fn sc2_proofs_check() {
        for s in bounded_sc2(1, 1) {
            let pr = prove_sc2(&s, Logic::Intuitionistic);
            check(&pr).unwrap_or_else(|e| panic!("{}: {e}", sc2_instance(&s)));
            assert!(alpha_eq(pr.concl(), &sc2_instance(&s)));
            assert!(pr.hyps().is_empty());
        }
    }

    #[test]
    fn idempotent_proofs_check() {
        let fo = [Var1(0), Var1(1)];
        let so = [Var2::new(0, 0), Var2::new(1, 1)];
        for a in enumerate_formulas(&fo, &so, 2) {
            let pr = prove_idempotent(&a, Logic::Intuitionistic);
            check(&pr).unwrap_or_else(|e| panic!("{a}: {e}"));
            let r = rev_pure(&star_pure(&a));
            assert!(alpha_eq(pr.concl(), &Formula::iff(r, a.clone())), "{a}");
        }
    }

    #[test]
    fn idempotent_nested() {
        for s in [
            "forall X^1_0. exists x0. (X^1_0(x0) -> forall X^1_1. X^1_1(x1))",
            "exists X^0_0. forall X^0_1. (X^0_0 \\/ X^0_1 -> X^0_2)",
            "forall x0. exists X^2_0. forall x1. X^2_0(x0, x1)",
        ] {
            let a = p(s);
            check(&prove_idempotent(&a, Logic::Intuitionistic)).unwrap_or_else(|e| panic!("{a}: {e}"));
        }
    }

    #[test]
    fn congruence_on_predicate_hole() {
        let x = Var2::new(1, 0);
        let ctx = Ctx::new(Logic::Intuitionistic, Order::Second);
        let a = Abstraction::new(vec![Var1(0)], p("X^1_1(x0) /\\ X^0_0")).unwrap();
        let b = Abstraction::new(vec![Var1(0)], p("X^1_2(x0)")).unwrap();
        let e = p("forall x0. (X^1_1(x0) /\\ X^0_0 <-> X^1_2(x0))");
        let ctx = ctx.with(&e);
        let eqv = ctx.ax(&e);
        for s in [
            "X^1_0(x3)",
            "forall x0. (X^1_0(x0) -> exists x1. X^1_0(x1) \\/ X^1_0(x2))",
            "exists X^0_0. (X^1_0(x0) /\\ X^0_0)",
            "forall X^1_0. X^1_0(x0)",
        ] {
            let f = p(s);
            let pr = prove_congruence(&ctx, &f, Hole::Pred(x), &a, &b, &eqv);
            check(&pr).unwrap_or_else(|err| panic!("{f}: {err}"));
            let want = Formula::iff(fill(&f, Hole::Pred(x), &a), fill(&f, Hole::Pred(x), &b));
            assert!(alpha_eq(pr.concl(), &want), "{f}");
        }
    }

    #[test]
    fn congruence_on_ap_hole() {
        let ctx = Ctx::new(Logic::Intuitionistic, Order::First);
        let a = Abstraction::new(vec![Var1(0)], p("exists x1. Ap1(x1, x0)")).unwrap();
        let b = Abstraction::new(vec![Var1(0)], p("Ap1(x4, x0)")).unwrap();
        let e = p("forall x0. ((exists x1. Ap1(x1, x0)) <-> Ap1(x4, x0))");
        let ctx = ctx.with(&e);
        let eqv = ctx.ax(&e);
        let hole = Hole::Ap(Var1(4), 1);
        let f = p("forall x1. (Ap1(x4, x1) -> Ap0(x4) \\/ exists x0. Ap1(x4, f(x0)))");
        let pr = prove_congruence(&ctx, &f, hole, &a, &b, &eqv);
        check(&pr).unwrap();
        assert!(alpha_eq(&fill(&f, hole, &b), &f));
        let filled = fill(&f, hole, &a);
        assert!(alpha_eq(
            &filled,
            &p("forall x1. ((exists x2. Ap1(x2, x1)) -> Ap0(x4) \\/ exists x0. exists x2. Ap1(x2, f(x0)))")
        ));
    }
}
