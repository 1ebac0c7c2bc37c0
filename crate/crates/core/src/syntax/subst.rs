use std::collections::BTreeMap;

use super::{Abstraction, Binder, Formula, FreeVars, Term, UsedVars, Var1, Var2};

/// A simultaneous substitution of terms for first-order variables and
/// abstractions for second-order variables.
///
/// Application is capture-avoiding. When a binder would capture a variable of
/// the substituted range it is renamed to the least index that occurs nowhere
/// in the formula or in the range.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Subst {
    first: BTreeMap<Var1, Term>,
    second: BTreeMap<Var2, Abstraction>,
}

impl Subst {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert_term(&mut self, x: Var1, t: Term) {
        self.first.insert(x, t);
    }

    pub fn insert_abs(&mut self, x: Var2, a: Abstraction) {
        debug_assert_eq!(x.arity, a.arity());
        self.second.insert(x, a);
    }

    pub fn insert_var2(&mut self, x: Var2, y: Var2) {
        self.insert_abs(x, Abstraction::of_var(y));
    }

    pub fn remove(&mut self, b: Binder) {
        match b {
            Binder::First(x) => {
                self.first.remove(&x);
            }
            Binder::Second(x) => {
                self.second.remove(&x);
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_empty() && self.second.is_empty()
    }

    pub fn term(&self, x: Var1) -> Option<&Term> {
        self.first.get(&x)
    }

    pub fn abs(&self, x: Var2) -> Option<&Abstraction> {
        self.second.get(&x)
    }

    pub fn first_entries(&self) -> impl Iterator<Item = (&Var1, &Term)> {
        self.first.iter()
    }

    pub fn second_entries(&self) -> impl Iterator<Item = (&Var2, &Abstraction)> {
        self.second.iter()
    }

    /// Every variable mentioned by the range of the substitution.
    pub fn used_vars(&self) -> UsedVars {
        let mut u = UsedVars::default();
        for (x, t) in &self.first {
            u.first.insert(x.0);
            u.add_term(t);
        }
        for (x, a) in &self.second {
            u.second.insert(*x);
            u.add_abstraction(a);
        }
        u
    }

    /// Free variables of the range entries whose key is free in `f`.
    fn range_free_vars(&self, fv: &FreeVars) -> FreeVars {
        let mut out = FreeVars::default();
        for (x, t) in &self.first {
            if fv.first.contains(x) {
                t.vars_into(&mut out.first);
            }
        }
        for (x, a) in &self.second {
            if fv.second.contains(x) {
                out.extend(a.free_vars());
            }
        }
        out
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        t.subst(&|v| self.first.get(&v).cloned())
    }

    pub fn apply(&self, f: &Formula) -> Formula {
        if self.is_empty() {
            return f.clone();
        }
        let mut used = self.used_vars();
        used.add_formula(f);
        self.go(f, &mut used)
    }

    fn go(&self, f: &Formula, used: &mut UsedVars) -> Formula {
        match f {
            Formula::Bottom => Formula::Bottom,
            Formula::Pred(x, args) => {
                let args: Vec<Term> = args.iter().map(|a| self.apply_term(a)).collect();
                match self.second.get(x) {
                    Some(abs) => abs.instantiate(&args),
                    None => Formula::Pred(*x, args),
                }
            }
            Formula::Ap(h, args) => Formula::Ap(
                self.apply_term(h),
                args.iter().map(|a| self.apply_term(a)).collect(),
            ),
            Formula::Impl(a, b) => Formula::implies(self.go(a, used), self.go(b, used)),
            Formula::And(a, b) => Formula::and(self.go(a, used), self.go(b, used)),
            Formula::Or(a, b) => Formula::or(self.go(a, used), self.go(b, used)),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let mut inner = self.clone();
                match v {
                    Binder::First(x) => {
                        inner.first.remove(x);
                    }
                    Binder::Second(x) => {
                        inner.second.remove(x);
                    }
                }
                let fv = body.free_vars();
                inner.first.retain(|k, _| fv.first.contains(k));
                inner.second.retain(|k, _| fv.second.contains(k));
                if inner.is_empty() {
                    return f.clone();
                }
                let range = inner.range_free_vars(&fv);
                let binder = if range.contains(*v) {
                    match v {
                        Binder::First(x) => {
                            let y = used.fresh1();
                            inner.first.insert(*x, Term::Var(y));
                            Binder::First(y)
                        }
                        Binder::Second(x) => {
                            let y = used.fresh2(x.arity);
                            inner.second.insert(*x, Abstraction::of_var(y));
                            Binder::Second(y)
                        }
                    }
                } else {
                    *v
                };
                let body = inner.go(body, used);
                match f {
                    Formula::Forall(..) => Formula::forall(binder, body),
                    _ => Formula::exists(binder, body),
                }
            }
        }
    }
}
