//! Translations between the second-order language and the first-order
//! applicative language.
//!
//! The bijection `φ_n` is fixed as `X^n_i ↦ x_i`, so every first-order
//! variable `x_i` stands for one second-order variable at each arity.

use std::collections::BTreeSet;

use crate::syntax::{least_missing, Binder, Formula, FreeVars, SyntaxError, Term, Var1, Var2};

pub fn phi(n: usize, x: Var2) -> Result<Var1, SyntaxError> {
    if x.arity != n {
        return Err(SyntaxError::ArityMismatch {
            expected: n,
            found: x.arity,
        });
    }
    Ok(Var1(x.index))
}

pub fn phi_inv(n: usize, x: Var1) -> Var2 {
    Var2::new(n, x.0)
}

/// `Free(A*)` computed without building `A*`.
pub fn transferred_vars(fv: &FreeVars) -> BTreeSet<u32> {
    fv.first
        .iter()
        .map(|v| v.0)
        .chain(fv.second.iter().map(|v| v.index))
        .collect()
}

/// The star coding `A ↦ A*`.
pub fn star(a: &Formula) -> Result<Formula, SyntaxError> {
    if !a.is_l2_pure() {
        return Err(SyntaxError::NotL2Pure);
    }
    Ok(star_pure(a))
}

pub(crate) fn star_pure(a: &Formula) -> Formula {
    match a {
        Formula::Bottom => Formula::Bottom,
        Formula::Pred(x, args) => Formula::Ap(Term::Var(Var1(x.index)), args.clone()),
        Formula::Ap(..) => unreachable!("star of a non-L2-pure formula"),
        Formula::Impl(l, r) => Formula::implies(star_pure(l), star_pure(r)),
        Formula::And(l, r) => Formula::and(star_pure(l), star_pure(r)),
        Formula::Or(l, r) => Formula::or(star_pure(l), star_pure(r)),
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            let (y, renamed) = star_binder(*v, body);
            let inner = star_pure(&renamed);
            match a {
                Formula::Forall(..) => Formula::forall(Binder::First(y), inner),
                _ => Formula::exists(Binder::First(y), inner),
            }
        }
    }
}

/// The first-order variable chosen by the star coding for the binder `v` of
/// `Q v body`, and the body with `v` renamed accordingly (still
/// second-order).
pub fn star_binder(v: Binder, body: &Formula) -> (Var1, Formula) {
    let mut fv = body.free_vars();
    match v {
        Binder::First(x) => {
            fv.first.remove(&x);
            let y = Var1(least_missing(transferred_vars(&fv).into_iter()));
            let renamed = if y == x {
                body.clone()
            } else {
                body.subst_term(x, &Term::Var(y))
            };
            (y, renamed)
        }
        Binder::Second(x) => {
            fv.second.remove(&x);
            let y = Var1(least_missing(transferred_vars(&fv).into_iter()));
            let yy = phi_inv(x.arity, y);
            let renamed = if yy == x {
                body.clone()
            } else {
                body.subst_var2(x, yy).expect("same arity")
            };
            (y, renamed)
        }
    }
}

/// The reverse coding `A ↦ rev(A)`.
pub fn rev(a: &Formula) -> Result<Formula, SyntaxError> {
    if !a.is_l1_pure() {
        return Err(SyntaxError::NotL1Pure);
    }
    Ok(rev_pure(a))
}

pub(crate) fn rev_pure(a: &Formula) -> Formula {
    match a {
        Formula::Bottom => Formula::Bottom,
        Formula::Ap(Term::Var(x), args) => Formula::Pred(phi_inv(args.len(), *x), args.clone()),
        Formula::Ap(..) => Formula::Bottom,
        Formula::Pred(..) => unreachable!("rev of a non-L1-pure formula"),
        Formula::Impl(l, r) => Formula::implies(rev_pure(l), rev_pure(r)),
        Formula::And(l, r) => Formula::and(rev_pure(l), rev_pure(r)),
        Formula::Or(l, r) => Formula::or(rev_pure(l), rev_pure(r)),
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            let x = match v {
                Binder::First(x) => *x,
                Binder::Second(_) => unreachable!("rev of a non-L1-pure formula"),
            };
            let inner = rev_pure(body);
            let mut out = inner;
            for y in rev_inserted(x, &out).into_iter().rev() {
                out = rebind(a, Binder::Second(y), out);
            }
            rebind(a, *v, out)
        }
    }
}

/// The second-order variables `φ_i⁻¹(x)` free in `body`, by increasing arity.
pub fn rev_inserted(x: Var1, body: &Formula) -> Vec<Var2> {
    body.free_vars()
        .second
        .into_iter()
        .filter(|y| y.index == x.0)
        .collect()
}

fn rebind(like: &Formula, v: Binder, body: Formula) -> Formula {
    match like {
        Formula::Forall(..) => Formula::forall(v, body),
        _ => Formula::exists(v, body),
    }
}

/// `SC_2(G; x1..xn; χ1..χm)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaInstance {
    pub body: Formula,
    pub fo_params: Vec<Var1>,
    pub so_params: Vec<Binder>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemaError {
    #[error("free variable {0} of the body is not a declared parameter")]
    UndeclaredFree(Binder),
    #[error("first-order parameters are not pairwise distinct")]
    DuplicateParams,
    #[error("body is not L2-pure")]
    NotL2Pure,
}

impl SchemaInstance {
    pub fn new(body: Formula, fo_params: Vec<Var1>, so_params: Vec<Binder>) -> Result<Self, SchemaError> {
        if !body.is_l2_pure() {
            return Err(SchemaError::NotL2Pure);
        }
        let distinct: BTreeSet<_> = fo_params.iter().collect();
        if distinct.len() != fo_params.len() {
            return Err(SchemaError::DuplicateParams);
        }
        let fv = body.free_vars();
        for x in &fv.first {
            let b = Binder::First(*x);
            if !fo_params.contains(x) && !so_params.contains(&b) {
                return Err(SchemaError::UndeclaredFree(b));
            }
        }
        for x in &fv.second {
            let b = Binder::Second(*x);
            if !so_params.contains(&b) {
                return Err(SchemaError::UndeclaredFree(b));
            }
        }
        Ok(SchemaInstance {
            body,
            fo_params,
            so_params,
        })
    }

    /// Parameters `χ` default to the free variables of `G` outside `x⃗`,
    /// first-order ones first, each sort in index order.
    pub fn with_free_params(body: Formula, fo_params: Vec<Var1>) -> Result<Self, SchemaError> {
        let fv = body.free_vars();
        let mut so: Vec<Binder> = fv
            .first
            .iter()
            .filter(|x| !fo_params.contains(x))
            .map(|x| Binder::First(*x))
            .collect();
        so.extend(fv.second.iter().map(|x| Binder::Second(*x)));
        Self::new(body, fo_params, so)
    }

    pub fn witness_arity(&self) -> usize {
        self.fo_params.len()
    }

    /// Least-index variable of the witness arity that is neither free in the
    /// body nor a parameter.
    pub fn witness(&self) -> Var2 {
        let n = self.witness_arity();
        let fv = self.body.free_vars();
        let taken: BTreeSet<u32> = fv
            .second
            .iter()
            .copied()
            .chain(self.so_params.iter().filter_map(|b| match b {
                Binder::Second(x) => Some(*x),
                Binder::First(_) => None,
            }))
            .filter(|x| x.arity == n)
            .map(|x| x.index)
            .collect();
        Var2::new(n, least_missing(taken.into_iter()))
    }

    /// `∀x⃗ (G ≡ X(x⃗))` for the witness `X`.
    pub fn matrix(&self) -> Formula {
        let w = self.witness();
        let atom = Formula::Pred(w, self.fo_params.iter().map(|x| Term::Var(*x)).collect());
        let mut f = Formula::iff(self.body.clone(), atom);
        for x in self.fo_params.iter().rev() {
            f = Formula::forall(Binder::First(*x), f);
        }
        f
    }
}

pub fn sc2_instance(s: &SchemaInstance) -> Formula {
    let mut f = Formula::exists(Binder::Second(s.witness()), s.matrix());
    for chi in s.so_params.iter().rev() {
        f = Formula::forall(*chi, f);
    }
    f
}

pub fn sc1_instance(s: &SchemaInstance) -> Formula {
    star_pure(&sc2_instance(s))
}

/// Comprehension instances whose body has depth at most `depth` and whose
/// witness arity and predicate arities are at most `arity`.
///
/// For witness arity `n` the body ranges over formulas built from `⊥`, atoms
/// `X^k_0(t⃗)` with `k ≤ arity` and arguments among `x0 … xn`, the three
/// connectives, and both quantifiers over those same variables. The body's
/// `x0 … x(n-1)` are the comprehension variables; everything else free is a
/// parameter.
pub fn bounded_sc2(depth: usize, arity: usize) -> Vec<SchemaInstance> {
    let mut out = Vec::new();
    for n in 0..=arity {
        let fo: Vec<Var1> = (0..=n as u32).map(Var1).collect();
        let so: Vec<Var2> = (0..=arity).map(|k| Var2::new(k, 0)).collect();
        for body in enumerate_formulas(&fo, &so, depth) {
            let params = (0..n as u32).map(Var1).collect();
            out.push(SchemaInstance::with_free_params(body, params).expect("pool variables are parameters"));
        }
    }
    out
}

/// Every L2-pure formula of depth at most `depth` over the given variable
/// pools, ordered by depth.
pub fn enumerate_formulas(fo: &[Var1], so: &[Var2], depth: usize) -> Vec<Formula> {
    let mut atoms = vec![Formula::Bottom];
    for x in so {
        for args in tuples(fo, x.arity) {
            atoms.push(Formula::Pred(*x, args.into_iter().map(Term::Var).collect()));
        }
    }
    let binders: Vec<Binder> = fo
        .iter()
        .map(|x| Binder::First(*x))
        .chain(so.iter().map(|x| Binder::Second(*x)))
        .collect();
    let mut levels: Vec<Vec<Formula>> = vec![atoms];
    for d in 1..=depth {
        let mut level = Vec::new();
        let below: Vec<&Formula> = levels.iter().flatten().collect();
        let prev = &levels[d - 1];
        for a in &below {
            for b in &below {
                if a.depth() == d - 1 || b.depth() == d - 1 {
                    level.push(Formula::implies((*a).clone(), (*b).clone()));
                    level.push(Formula::and((*a).clone(), (*b).clone()));
                    level.push(Formula::or((*a).clone(), (*b).clone()));
                }
            }
        }
        for body in prev {
            for v in &binders {
                level.push(Formula::forall(*v, body.clone()));
                level.push(Formula::exists(*v, body.clone()));
            }
        }
        levels.push(level);
    }
    levels.into_iter().flatten().collect()
}

pub(crate) fn tuples<T: Copy>(pool: &[T], len: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * pool.len());
        for t in &out {
            for x in pool {
                let mut u = t.clone();
                u.push(*x);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{alpha_eq, parse_formula, parse_term};

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn phi_is_index_preserving() {
        assert_eq!(phi(1, Var2::new(1, 3)).unwrap(), Var1(3));
        assert_eq!(phi_inv(2, Var1(3)), Var2::new(2, 3));
        assert_ne!(phi_inv(1, Var1(4)), phi_inv(2, Var1(4)));
        assert!(phi(2, Var2::new(1, 0)).is_err());
    }

    #[test]
    fn star_examples() {
        assert_eq!(star(&Formula::Bottom).unwrap(), Formula::Bottom);
        let a = p("forall X^1_0. (X^1_0(x1) -> X^1_0(x2))");
        assert_eq!(star(&a).unwrap(), p("forall x0. (Ap1(x0, x1) -> Ap1(x0, x2))"));
        // the bound variable must avoid the free x1, x2
        let a = p("forall X^1_1. (X^1_1(x0) -> X^1_1(x1))");
        assert!(alpha_eq(&star(&a).unwrap(), &p("forall x2. (Ap1(x2, x0) -> Ap1(x2, x1))")));
        assert!(star(&p("Ap0(x0)")).is_err());
    }

    #[test]
    fn rev_examples() {
        assert_eq!(rev(&p("Ap1(f(a), a)")).unwrap(), Formula::Bottom);
        // x = x0, y = x1
        let f = p("forall x0. (Ap1(x0, x1) -> Ap2(x0, x1, x1) \\/ Ap1(x1, x0))");
        assert_eq!(
            rev(&f).unwrap(),
            p("forall x0. forall X^1_0. forall X^2_0. (X^1_0(x1) -> X^2_0(x1, x1) \\/ X^1_1(x0))")
        );
        let f = p("exists x0. (Ap1(x0, x1) -> Ap2(x0, x1, x1) \\/ Ap1(x1, x0))");
        assert_eq!(
            rev(&f).unwrap(),
            p("exists x0. exists X^1_0. exists X^2_0. (X^1_0(x1) -> X^2_0(x1, x1) \\/ X^1_1(x0))")
        );
        assert!(rev(&p("X^0_0")).is_err());
    }

    #[test]
    fn rev_of_star_adds_vacuous_quantifier() {
        let a = p("forall X^0_0. X^0_1");
        let s = star(&a).unwrap();
        assert_eq!(s, p("forall x0. Ap0(x1)"));
        assert_eq!(rev(&s).unwrap(), p("forall x0. X^0_1"));
    }

    #[test]
    fn substitution_exchange_examples() {
        let f = p("Ap1(x0, x1) -> Ap2(x0, x1, x1) \\/ Ap1(x1, x0)");
        let z = Term::var(2);
        assert_eq!(
            rev(&f.subst_term(Var1(0), &z)).unwrap(),
            p("X^1_2(x1) -> X^2_2(x1, x1) \\/ X^1_1(x2)")
        );
        let t = parse_term("f(a)").unwrap();
        assert_eq!(
            rev(&f.subst_term(Var1(0), &t)).unwrap(),
            p("bot -> bot \\/ X^1_1(f(a))")
        );
    }

    #[test]
    fn sc_instances() {
        let s = SchemaInstance::new(p("X^1_0(x0)"), vec![Var1(0)], vec![Binder::Second(Var2::new(1, 0))]).unwrap();
        assert_eq!(
            sc2_instance(&s),
            p("forall X^1_0. exists X^1_1. forall x0. (X^1_0(x0) <-> X^1_1(x0))")
        );
        assert!(alpha_eq(
            &sc1_instance(&s),
            &p("forall x3. exists x4. forall x5. (Ap1(x3, x5) <-> Ap1(x4, x5))")
        ));

        let s = SchemaInstance::new(Formula::Bottom, vec![], vec![]).unwrap();
        assert_eq!(sc2_instance(&s), p("exists X^0_0. (bot <-> X^0_0)"));
        assert_eq!(sc1_instance(&s), p("exists x0. (bot <-> Ap0(x0))"));

        let g = p("X^1_0(x1) /\\ X^1_1(x1)");
        let s = SchemaInstance::with_free_params(g, vec![Var1(1)]).unwrap();
        let f = sc2_instance(&s);
        assert!(f.is_closed());
        assert_eq!(s.witness(), Var2::new(1, 2));

        let g = p("X^1_0(x1) -> bot");
        let s = SchemaInstance::with_free_params(g, vec![Var1(1)]).unwrap();
        assert!(alpha_eq(
            &sc1_instance(&s),
            &p("forall x7. exists x8. forall x9. ((Ap1(x7, x9) -> bot) <-> Ap1(x8, x9))")
        ));

        assert_eq!(
            SchemaInstance::new(p("X^1_0(x1)"), vec![Var1(1)], vec![]),
            Err(SchemaError::UndeclaredFree(Binder::Second(Var2::new(1, 0))))
        );
    }

    #[test]
    fn bounded_sc_instances_are_closed() {
        let stock = bounded_sc2(1, 1);
        assert!(!stock.is_empty());
        for s in &stock {
            assert!(sc2_instance(s).is_closed());
            assert!(!s.body.is_free(Binder::Second(s.witness())));
        }
    }
}
