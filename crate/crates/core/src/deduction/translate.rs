use crate::coding::{rev_inserted, rev_pure, sc1_instance, star_pure, SchemaInstance};
use crate::syntax::{alpha_eq, Abstraction, Binder, Formula, Term, UsedVars, Var1, Var2};

use super::build::Ctx;
use super::generators::{prove_congruence, prove_idempotent, prove_sc2, Hole};
use super::kernel::{check, Rejection};
use super::subst::{add_proof_vars, freshen_eigenvariables};
use super::{Logic, Order, Payload, Proof, Rule, Sequent};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("input proof rejected: {0}")]
    Rejected(Rejection),
    #[error("expected a {0} proof")]
    WrongOrder(&'static str),
    #[error("{0}")]
    Shape(String),
}

fn precondition(p: &Proof, order: Order) -> Result<(), TranslateError> {
    if p.seq.order != order {
        return Err(TranslateError::WrongOrder(match order {
            Order::First => "first-order",
            Order::Second => "second-order",
        }));
    }
    check(p).map_err(TranslateError::Rejected)
}

fn with_concl(mut p: Proof, c: Formula) -> Proof {
    p.seq.concl = c;
    p
}

fn comprehension(a: &Abstraction) -> SchemaInstance {
    SchemaInstance::with_free_params(a.body.clone(), a.params.clone()).expect("checked abstractions are L2-pure")
}

fn collect_comprehensions(p: &Proof, out: &mut Vec<Formula>) {
    if let (Rule::Forall2E | Rule::Exists2I, Payload::Lambda(a)) = (p.rule, &p.payload) {
        let sc = sc1_instance(&comprehension(a));
        if !out.iter().any(|f| alpha_eq(f, &sc)) {
            out.push(sc);
        }
    }
    for q in &p.premises {
        collect_comprehensions(q, out);
    }
}

/// From a second-order proof of `Γ ⊢ A`, a first-order proof of
/// `Γ*, SC ⊢ A*` where `SC` lists the comprehension instances used by the
/// second-order instantiations of the proof.
pub fn translate_down(p: &Proof) -> Result<Proof, TranslateError> {
    precondition(p, Order::Second)?;
    let p = freshen_eigenvariables(p);
    let mut scs = Vec::new();
    collect_comprehensions(&p, &mut scs);
    let mut used = UsedVars::default();
    add_proof_vars(&p, &mut used);
    for f in &scs {
        used.add_formula(f);
    }
    let mut down = Down { scs, used };
    Ok(down.go(&p))
}

struct Down {
    scs: Vec<Formula>,
    used: UsedVars,
}

impl Down {
    fn ctx(&self, seq: &Sequent) -> Ctx {
        let hyps = seq.hyps.iter().map(star_pure).chain(self.scs.iter().cloned()).collect();
        Ctx::with_hyps(seq.logic, Order::First, hyps)
    }

    fn go(&mut self, p: &Proof) -> Proof {
        let ctx = self.ctx(&p.seq);
        let c = star_pure(p.concl());
        let premises: Vec<Proof> = p.premises.iter().map(|q| self.go(q)).collect();
        match (&p.payload, p.rule) {
            (Payload::Lambda(a), Rule::Forall2E | Rule::Exists2I) => {
                let forall = p.rule == Rule::Forall2E;
                let prem = premises.into_iter().next().unwrap();
                with_concl(self.instantiation(&ctx, a, forall, prem, &c), c)
            }
            _ => {
                let (rule, payload) = match (p.rule, &p.payload) {
                    (Rule::Forall2I, Payload::Eigen(Binder::Second(z))) => {
                        (Rule::Forall1I, Payload::Eigen(Binder::First(Var1(z.index))))
                    }
                    (Rule::Exists2E, Payload::Eigen(Binder::Second(z))) => {
                        (Rule::Exists1E, Payload::Eigen(Binder::First(Var1(z.index))))
                    }
                    (r, w) => (r, w.clone()),
                };
                Proof {
                    rule,
                    payload,
                    seq: ctx.seq(c),
                    premises,
                }
            }
        }
    }

    /// Second-order `∀E`/`∃I` at `a`: opens the comprehension instance for
    /// `a` with a fresh witness `w`, then rewrites between `Ap_n(w, …)` atoms
    /// and the body of `a` by congruence.
    fn instantiation(&mut self, ctx: &Ctx, a: &Abstraction, forall: bool, prem: Proof, c: &Formula) -> Proof {
        let s = comprehension(a);
        let n = a.arity();
        let mut ex = ctx.ax(&sc1_instance(&s));
        for chi in &s.so_params {
            let x = match chi {
                Binder::First(x) => *x,
                Binder::Second(x) => Var1(x.index),
            };
            ex = ctx.forall_e_term(ex, Term::Var(x));
        }
        let w = Var1(self.used.fresh_shared_index());
        let h = Ctx::opened(ex.concl(), Binder::First(w));
        let inner = ctx.with(&h);
        let (params, l, r) = split_matrix(&h, n);
        let fa = Abstraction::new(params.clone(), l).expect("distinct bound variables");
        let fb = Abstraction::new(params, r).expect("distinct bound variables");
        let eqv = inner.ax(&h);
        let hole = Hole::Ap(w, n);
        let body = if forall {
            let f = inner.forall_e_term(prem, Term::Var(w));
            let cong = prove_congruence(&inner, f.concl(), hole, &fa, &fb, &eqv);
            inner.iff_mpr(cong, f)
        } else {
            let f = Ctx::opened(c, Binder::First(w));
            let cong = prove_congruence(&inner, &f, hole, &fa, &fb, &eqv);
            let g = inner.iff_mp(cong, prem);
            inner.exists_i(c.clone(), Payload::Term(Term::Var(w)), g)
        };
        ctx.exists_e(ex, Binder::First(w), body)
    }
}

/// `∀u1…un (L ≡ R)` into `([u1…un], L, R)`.
fn split_matrix(h: &Formula, n: usize) -> (Vec<Var1>, Formula, Formula) {
    let mut params = Vec::with_capacity(n);
    let mut f = h;
    for _ in 0..n {
        match f {
            Formula::Forall(Binder::First(u), body) => {
                params.push(*u);
                f = body;
            }
            other => panic!("comprehension matrix expected, found {other}"),
        }
    }
    let (l, r) = f.as_iff().expect("comprehension matrix is an equivalence");
    (params, l.clone(), r.clone())
}

/// From a first-order proof of `Γ ⊢ A`, a second-order proof of
/// `rev(Γ) ⊢ rev(A)`.
pub fn translate_up(p: &Proof) -> Result<Proof, TranslateError> {
    precondition(p, Order::First)?;
    Ok(up(&freshen_eigenvariables(p)))
}

/// The second-order variables `rev` inserts after the binder of a
/// first-order quantified formula.
fn inserted(f: &Formula) -> (Var1, Vec<Var2>) {
    match f {
        Formula::Forall(Binder::First(v), body) | Formula::Exists(Binder::First(v), body) => {
            (*v, rev_inserted(*v, &rev_pure(body)))
        }
        other => panic!("first-order quantifier expected, found {other}"),
    }
}

/// Instantiations for the inserted variables when the first-order binder
/// is instantiated at `t`.
fn inserted_payloads(ins: &[Var2], t: &Term) -> Vec<Payload> {
    ins.iter()
        .map(|y| match t {
            Term::Var(z) => Payload::Lambda(Abstraction::of_var(Var2::new(y.arity, z.0))),
            Term::App(..) => {
                let params = (0..y.arity as u32).map(Var1).collect();
                Payload::Lambda(Abstraction::new(params, Formula::Bottom).unwrap())
            }
        })
        .collect()
}

/// `L0 = top`, `L(i+1) = Li` instantiated at the i-th payload.
fn layers(top: &Formula, payloads: &[Payload]) -> Vec<Formula> {
    let mut out = vec![top.clone()];
    for w in payloads {
        let next = Ctx::instantiated(out.last().unwrap(), w);
        out.push(next);
    }
    out
}

fn up(p: &Proof) -> Proof {
    let ctx = Ctx::with_hyps(p.seq.logic, Order::Second, p.hyps().iter().map(rev_pure).collect());
    let c = rev_pure(p.concl());
    let premises: Vec<Proof> = p.premises.iter().map(up).collect();
    match (p.rule, &p.payload) {
        (Rule::Forall1I, Payload::Eigen(Binder::First(z))) => {
            let (_, ins) = inserted(p.concl());
            let mut ws = vec![Payload::Term(Term::Var(*z))];
            ws.extend(inserted_payloads(&ins, &Term::Var(*z)));
            let ls = layers(&c, &ws);
            let mut cur = premises.into_iter().next().unwrap();
            for (j, y) in ins.iter().enumerate().rev() {
                cur = ctx.forall_i(ls[j + 1].clone(), Binder::Second(Var2::new(y.arity, z.0)), cur);
            }
            ctx.forall_i(c, Binder::First(*z), cur)
        }
        (Rule::Forall1E, Payload::Term(t)) => {
            let major = premises.into_iter().next().unwrap();
            let (_, ins) = inserted(p.premises[0].concl());
            let mut cur = ctx.forall_e_term(major, t.clone());
            for w in inserted_payloads(&ins, t) {
                cur = ctx.forall_e(cur, w);
            }
            with_concl(cur, c)
        }
        (Rule::Exists1I, Payload::Term(t)) => {
            let (_, ins) = inserted(p.concl());
            let mut ws = vec![Payload::Term(t.clone())];
            let rest = inserted_payloads(&ins, t);
            ws.extend(rest.iter().cloned());
            let ls = layers(&c, &ws);
            let mut cur = premises.into_iter().next().unwrap();
            for (j, w) in rest.into_iter().enumerate().rev() {
                cur = ctx.exists_i(ls[j + 1].clone(), w, cur);
            }
            ctx.exists_i(c, Payload::Term(t.clone()), cur)
        }
        (Rule::Exists1E, Payload::Eigen(Binder::First(z))) => {
            let mut it = premises.into_iter();
            let major = it.next().unwrap();
            let mut cur = it.next().unwrap();
            let ex = rev_pure(p.premises[0].concl());
            let (_, ins) = inserted(p.premises[0].concl());
            let mut ws = vec![Payload::Term(Term::Var(*z))];
            ws.extend(inserted_payloads(&ins, &Term::Var(*z)));
            let ls = layers(&ex, &ws);
            let mut ctxs = vec![ctx.clone()];
            for l in &ls[1..ins.len() + 1] {
                let next = ctxs.last().unwrap().with(l);
                ctxs.push(next);
            }
            for (j, y) in ins.iter().enumerate().rev() {
                let k = &ctxs[j + 1];
                let eigen = Binder::Second(Var2::new(y.arity, z.0));
                cur = k.exists_e(k.ax(&ls[j + 1]), eigen, cur);
            }
            ctx.exists_e(major, Binder::First(*z), cur)
        }
        (rule, payload) => Proof {
            rule,
            payload: payload.clone(),
            seq: ctx.seq(c),
            premises,
        },
    }
}

/// The comprehension shape `∀… ∃w ∃W ∀u⃗ (L ≡ W(u⃗))` with `W = φ⁻¹(w)`:
/// returns the prefix binders, `w`, the matrix layer, `u⃗` and `L`.
struct RevComprehension {
    prefix: Vec<Binder>,
    w: Var1,
    params: Vec<Var1>,
    body: Formula,
}

fn rev_comprehension(f: &Formula) -> Option<RevComprehension> {
    let mut prefix = Vec::new();
    let mut cur = f;
    while let Formula::Forall(v, body) = cur {
        prefix.push(*v);
        cur = body;
    }
    let Formula::Exists(Binder::First(w), body) = cur else {
        return None;
    };
    let Formula::Exists(Binder::Second(ww), body) = &**body else {
        return None;
    };
    if ww.index != w.0 {
        return None;
    }
    let mut params = Vec::new();
    let mut cur = &**body;
    while params.len() < ww.arity {
        match cur {
            Formula::Forall(Binder::First(u), b) => {
                params.push(*u);
                cur = b;
            }
            _ => return None,
        }
    }
    let (l, r) = cur.as_iff()?;
    let atom = Formula::Pred(*ww, params.iter().map(|u| Term::Var(*u)).collect());
    if *r != atom || l.is_free(Binder::Second(*ww)) || !f.is_closed() {
        return None;
    }
    Some(RevComprehension {
        prefix,
        w: *w,
        params,
        body: l.clone(),
    })
}

/// A closed proof of a decoded comprehension instance, from the matching
/// second-order comprehension proof.
fn prove_rev_comprehension(f: &Formula, rc: &RevComprehension, logic: Logic) -> Proof {
    let ctx = Ctx::new(logic, Order::Second);
    let s = SchemaInstance::with_free_params(rc.body.clone(), rc.params.clone()).expect("decoded bodies are L2-pure");
    let mut cur = prove_sc2(&s, logic);
    for chi in &s.so_params {
        let w = match chi {
            Binder::First(x) => Payload::Term(Term::Var(*x)),
            Binder::Second(x) => Payload::Lambda(Abstraction::of_var(*x)),
        };
        cur = ctx.forall_e(cur, w);
    }
    let ws: Vec<Payload> = rc
        .prefix
        .iter()
        .map(|b| match b {
            Binder::First(x) => Payload::Term(Term::Var(*x)),
            Binder::Second(x) => Payload::Lambda(Abstraction::of_var(*x)),
        })
        .collect();
    let ls = layers(f, &ws);
    cur = ctx.exists_i(ls[ws.len()].clone(), Payload::Term(Term::Var(rc.w)), cur);
    for (j, b) in rc.prefix.iter().enumerate().rev() {
        cur = ctx.forall_i(ls[j].clone(), *b, cur);
    }
    cur
}

/// From a first-order proof of `Γ*, SC ⊢ A*`, where every hypothesis is
/// either the coding of a member of `gamma` or a comprehension instance, a
/// second-order proof of `Γ ⊢ A`.
pub fn derive_transprooftrois(p: &Proof, gamma: &[Formula], a: &Formula) -> Result<Proof, TranslateError> {
    precondition(p, Order::First)?;
    for f in gamma.iter().chain([a]) {
        if !f.is_l2_pure() {
            return Err(TranslateError::Shape(format!("{f} is not a second-order formula")));
        }
    }
    if !alpha_eq(p.concl(), &star_pure(a)) {
        return Err(TranslateError::Shape(format!(
            "conclusion {} is not the coding of {a}",
            p.concl()
        )));
    }
    let logic = p.seq.logic;
    enum Source {
        Context(Formula),
        Comprehension(RevComprehension),
    }
    let mut discharge = Vec::new();
    for h in p.hyps() {
        let r = rev_pure(h);
        let src = if let Some(g) = gamma.iter().find(|g| alpha_eq(h, &star_pure(g))) {
            Source::Context(g.clone())
        } else if let Some(rc) = rev_comprehension(&r) {
            Source::Comprehension(rc)
        } else {
            return Err(TranslateError::Shape(format!(
                "hypothesis {h} is neither the coding of a context formula nor a comprehension instance"
            )));
        };
        discharge.push((r, src));
    }
    let mut cur = translate_up(p)?;
    let base = Ctx::with_hyps(logic, Order::Second, gamma.to_vec());
    while let Some((r, src)) = discharge.pop() {
        let mut k = base.clone();
        for (h, _) in &discharge {
            k = k.with(h);
        }
        let proof = match src {
            Source::Context(g) => k.iff_mpr(prove_idempotent(&g, logic), k.ax(&g)),
            Source::Comprehension(rc) => prove_rev_comprehension(&r, &rc, logic),
        };
        cur = k.impl_e(k.impl_i(&r, cur), proof);
    }
    let out = base.iff_mp(prove_idempotent(a, logic), cur);
    Ok(with_concl(out, a.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    /// `⊢ ∀X⁰ (X⁰ → X⁰)`.
    fn identity0() -> Proof {
        let ctx = Ctx::new(Logic::Intuitionistic, Order::Second);
        let x = f("X^0_0");
        let imp = ctx.impl_i(&x, ctx.with(&x).ax(&x));
        ctx.forall_i(f("forall X^0_0. (X^0_0 -> X^0_0)"), Binder::Second(Var2::new(0, 0)), imp)
    }

    /// `∀X¹ X¹(x0) ⊢ X¹_1(x0) ∧ ⊥ → ⊥`, using instantiations with both a
    /// variable and a compound abstraction.
    fn instantiations() -> Proof {
        let all = f("forall X^1_0. X^1_0(x0)");
        let ctx = Ctx::with_hyps(Logic::Intuitionistic, Order::Second, vec![all.clone()]);
        let bot = Abstraction::new(vec![Var1(0)], Formula::Bottom).unwrap();
        let left = ctx.forall_e_abs(ctx.ax(&all), Abstraction::of_var(Var2::new(1, 1)));
        let right = ctx.forall_e_abs(ctx.ax(&all), bot);
        let both = ctx.and_i(left, right);
        let g = f("X^1_1(x0) /\\ bot");
        ctx.impl_i(&g, both).premises[0].clone()
    }

    /// `⊢ ∃X¹ ∀x1 (X¹(x1) → X¹(x1))` witnessed by `λx0. ∃x2 X²(x0, x2)`.
    fn exists_lambda() -> Proof {
        let ctx = Ctx::new(Logic::Intuitionistic, Order::Second);
        let lam = Abstraction::new(vec![Var1(0)], f("exists x2. X^2_0(x0, x2)")).unwrap();
        let goal = f("exists X^1_2. forall x1. X^1_2(x1) -> X^1_2(x1)");
        let body = Ctx::instantiated(&goal, &Payload::Lambda(lam.clone()));
        let a = f("exists x2. X^2_0(x1, x2)");
        let refl = ctx.forall_i(body, Binder::First(Var1(1)), ctx.impl_i(&a, ctx.with(&a).ax(&a)));
        ctx.exists_i(goal, Payload::Lambda(lam), refl)
    }

    #[test]
    fn down_identity() {
        let p = identity0();
        check(&p).unwrap();
        let d = translate_down(&p).unwrap();
        check(&d).unwrap();
        assert!(alpha_eq(d.concl(), &f("forall x0. (Ap0(x0) -> Ap0(x0))")));
        assert_eq!(d.seq.order, Order::First);
    }

    #[test]
    fn down_and_back_with_instantiations() {
        for p in [instantiations(), exists_lambda()] {
            check(&p).unwrap();
            let d = translate_down(&p).unwrap();
            check(&d).unwrap_or_else(|e| panic!("{e}"));
            assert!(alpha_eq(d.concl(), &star_pure(p.concl())));
            let back = derive_transprooftrois(&d, p.hyps(), p.concl()).unwrap();
            check(&back).unwrap_or_else(|e| panic!("{e}"));
            assert!(alpha_eq(back.concl(), p.concl()));
            assert_eq!(back.hyps().len(), p.hyps().len());
        }
    }

    #[test]
    fn up_instantiates_inserted_variables() {
        let all = f("forall x0. Ap1(x0, x1)");
        let ctx = Ctx::with_hyps(Logic::Intuitionistic, Order::First, vec![all.clone()]);
        let p = ctx.forall_e_term(ctx.ax(&all), Term::var(2));
        let u = translate_up(&p).unwrap();
        check(&u).unwrap();
        assert_eq!(u.concl(), &f("X^1_2(x1)"));

        let t = crate::syntax::parse_term("f(a)").unwrap();
        let a = Formula::Ap(t.clone(), vec![Term::var(1)]);
        let ctx = Ctx::with_hyps(Logic::Intuitionistic, Order::First, vec![a.clone()]);
        let ex = f("exists x0. Ap1(x0, x1)");
        let p = ctx.exists_i(ex.clone(), Payload::Term(t), ctx.ax(&a));
        let u = translate_up(&p).unwrap();
        check(&u).unwrap();
        assert_eq!(u.concl(), &rev_pure(&ex));
        assert_eq!(u.hyps(), &[Formula::Bottom]);
    }

    #[test]
    fn up_eigen_blocks() {
        // ∃x Ap1(x, x1) ⊢ ∃x Ap1(x, x1), via ∃E, and ∀x Ap1(x,x1) ⊢ ∀x Ap1(x,x1) via ∀I.
        let ex = f("exists x0. Ap1(x0, x1)");
        let ctx = Ctx::with_hyps(Logic::Intuitionistic, Order::First, vec![ex.clone()]);
        let z = Var1(5);
        let opened = Ctx::opened(&ex, Binder::First(z));
        let inner = ctx.with(&opened);
        let intro = inner.exists_i(ex.clone(), Payload::Term(Term::Var(z)), inner.ax(&opened));
        let p = ctx.exists_e(ctx.ax(&ex), Binder::First(z), intro);
        check(&p).unwrap();
        let u = translate_up(&p).unwrap();
        check(&u).unwrap_or_else(|e| panic!("{e}"));

        let all = f("forall x0. Ap1(x0, x1)");
        let ctx = Ctx::with_hyps(Logic::Intuitionistic, Order::First, vec![all.clone()]);
        let inst = ctx.forall_e_term(ctx.ax(&all), Term::Var(z));
        let p = ctx.forall_i(all.clone(), Binder::First(z), inst);
        check(&p).unwrap();
        let u = translate_up(&p).unwrap();
        check(&u).unwrap_or_else(|e| panic!("{e}"));
        assert_eq!(u.concl(), &rev_pure(&all));
    }

    #[test]
    fn wrong_order_is_reported() {
        assert_eq!(
            translate_up(&identity0()),
            Err(TranslateError::WrongOrder("first-order"))
        );
    }
}
