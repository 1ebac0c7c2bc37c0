use super::{Binder, Formula, Term, Var1, Var2};

/// Equality up to consistent renaming of bound variables.
pub fn alpha_eq(f: &Formula, g: &Formula) -> bool {
    let mut env = Vec::new();
    eq(f, g, &mut env)
}

type Env = Vec<(Binder, Binder)>;

fn lookup1(env: &Env, x: Var1, y: Var1) -> bool {
    for (l, r) in env.iter().rev() {
        let lx = *l == Binder::First(x);
        let ry = *r == Binder::First(y);
        if lx || ry {
            return lx && ry;
        }
    }
    x == y
}

fn lookup2(env: &Env, x: Var2, y: Var2) -> bool {
    for (l, r) in env.iter().rev() {
        let lx = *l == Binder::Second(x);
        let ry = *r == Binder::Second(y);
        if lx || ry {
            return lx && ry;
        }
    }
    x == y
}

fn term_eq(s: &Term, t: &Term, env: &Env) -> bool {
    match (s, t) {
        (Term::Var(x), Term::Var(y)) => lookup1(env, *x, *y),
        (Term::App(f, a), Term::App(g, b)) => {
            f == g && a.len() == b.len() && a.iter().zip(b).all(|(s, t)| term_eq(s, t, env))
        }
        _ => false,
    }
}

fn terms_eq(a: &[Term], b: &[Term], env: &Env) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(s, t)| term_eq(s, t, env))
}

fn eq(f: &Formula, g: &Formula, env: &mut Env) -> bool {
    match (f, g) {
        (Formula::Bottom, Formula::Bottom) => true,
        (Formula::Pred(x, a), Formula::Pred(y, b)) => lookup2(env, *x, *y) && terms_eq(a, b, env),
        (Formula::Ap(h, a), Formula::Ap(k, b)) => term_eq(h, k, env) && terms_eq(a, b, env),
        (Formula::Impl(a, b), Formula::Impl(c, d))
        | (Formula::And(a, b), Formula::And(c, d))
        | (Formula::Or(a, b), Formula::Or(c, d)) => eq(a, c, env) && eq(b, d, env),
        (Formula::Forall(v, a), Formula::Forall(w, b)) | (Formula::Exists(v, a), Formula::Exists(w, b)) => {
            let same_sort = match (v, w) {
                (Binder::First(_), Binder::First(_)) => true,
                (Binder::Second(x), Binder::Second(y)) => x.arity == y.arity,
                _ => false,
            };
            if !same_sort {
                return false;
            }
            env.push((*v, *w));
            let r = eq(a, b, env);
            env.pop();
            r
        }
        _ => false,
    }
}
