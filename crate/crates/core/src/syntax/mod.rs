//! Terms and formulas shared by the second-order language and the
//! first-order applicative language (`Ap_n` atoms).
//!
//! One [`Formula`] type covers both languages. A formula is *L1-pure* when it
//! has no predicate atoms and no second-order binders, and *L2-pure* when it
//! has no `Ap_n` atoms.

mod alpha;
mod parse;
mod print;
mod subst;

use std::collections::BTreeSet;
use std::fmt;

pub use alpha::alpha_eq;
pub use parse::{parse_binder, parse_formula, parse_term, ParseError};
pub use subst::Subst;

/// First-order variable `x_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var1(pub u32);

/// Second-order variable `X^n_i`. Ordered by arity first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var2 {
    pub arity: usize,
    pub index: u32,
}

impl Var2 {
    pub fn new(arity: usize, index: u32) -> Self {
        Var2 { arity, index }
    }
}

/// A function or constant symbol together with its arity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FnSym {
    pub name: String,
    pub arity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Var1),
    /// `f(t1, ..., tk)`; constants have no arguments.
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(i: u32) -> Term {
        Term::Var(Var1(i))
    }

    pub fn constant(name: &str) -> Term {
        Term::App(name.to_string(), Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(name.to_string(), args)
    }

    pub fn as_var(&self) -> Option<Var1> {
        match self {
            Term::Var(v) => Some(*v),
            Term::App(..) => None,
        }
    }

    pub fn vars_into(&self, out: &mut BTreeSet<Var1>) {
        match self {
            Term::Var(v) => {
                out.insert(*v);
            }
            Term::App(_, args) => args.iter().for_each(|a| a.vars_into(out)),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var1> {
        let mut out = BTreeSet::new();
        self.vars_into(&mut out);
        out
    }

    pub fn contains_var(&self, x: Var1) -> bool {
        match self {
            Term::Var(v) => *v == x,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(x)),
        }
    }

    pub fn symbols_into(&self, out: &mut BTreeSet<FnSym>) {
        if let Term::App(name, args) = self {
            out.insert(FnSym {
                name: name.clone(),
                arity: args.len(),
            });
            args.iter().for_each(|a| a.symbols_into(out));
        }
    }

    /// Simultaneous replacement of first-order variables.
    pub fn subst(&self, map: &dyn Fn(Var1) -> Option<Term>) -> Term {
        match self {
            Term::Var(v) => map(*v).unwrap_or_else(|| self.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.subst(map)).collect()),
        }
    }
}

/// A variable bound by a quantifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Binder {
    First(Var1),
    Second(Var2),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Connective {
    Impl,
    And,
    Or,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Bottom,
    /// `X^n(t1, ..., tn)`.
    Pred(Var2, Vec<Term>),
    /// `Ap_n(head, t1, ..., tn)` with `n = args.len()`.
    Ap(Term, Vec<Term>),
    Impl(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Forall(Binder, Box<Formula>),
    Exists(Binder, Box<Formula>),
}

/// Free variables of a formula, split by sort.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeVars {
    pub first: BTreeSet<Var1>,
    pub second: BTreeSet<Var2>,
}

impl FreeVars {
    pub fn is_empty(&self) -> bool {
        self.first.is_empty() && self.second.is_empty()
    }

    pub fn contains(&self, b: Binder) -> bool {
        match b {
            Binder::First(x) => self.first.contains(&x),
            Binder::Second(x) => self.second.contains(&x),
        }
    }

    pub fn extend(&mut self, other: FreeVars) {
        self.first.extend(other.first);
        self.second.extend(other.second);
    }
}

/// Every variable index occurring anywhere (free or bound), used by the
/// fresh-variable policy.
#[derive(Clone, Debug, Default)]
pub struct UsedVars {
    pub first: BTreeSet<u32>,
    pub second: BTreeSet<Var2>,
}

impl UsedVars {
    pub fn of(f: &Formula) -> Self {
        let mut u = UsedVars::default();
        u.add_formula(f);
        u
    }

    pub fn add_term(&mut self, t: &Term) {
        match t {
            Term::Var(v) => {
                self.first.insert(v.0);
            }
            Term::App(_, args) => args.iter().for_each(|a| self.add_term(a)),
        }
    }

    pub fn add_formula(&mut self, f: &Formula) {
        match f {
            Formula::Bottom => {}
            Formula::Pred(x, args) => {
                self.second.insert(*x);
                args.iter().for_each(|a| self.add_term(a));
            }
            Formula::Ap(h, args) => {
                self.add_term(h);
                args.iter().for_each(|a| self.add_term(a));
            }
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                self.add_formula(a);
                self.add_formula(b);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                self.add_binder(*v);
                self.add_formula(body);
            }
        }
    }

    pub fn add_binder(&mut self, b: Binder) {
        match b {
            Binder::First(x) => {
                self.first.insert(x.0);
            }
            Binder::Second(x) => {
                self.second.insert(x);
            }
        }
    }

    pub fn add_abstraction(&mut self, a: &Abstraction) {
        a.params.iter().for_each(|p| {
            self.first.insert(p.0);
        });
        self.add_formula(&a.body);
    }

    /// Least first-order index not yet used; marks it used.
    pub fn fresh1(&mut self) -> Var1 {
        let i = least_missing(self.first.iter().copied());
        self.first.insert(i);
        Var1(i)
    }

    /// Least index at `arity` not yet used; marks it used.
    pub fn fresh2(&mut self, arity: usize) -> Var2 {
        let i = least_missing(
            self.second
                .range(Var2::new(arity, 0)..=Var2::new(arity, u32::MAX))
                .map(|v| v.index),
        );
        let v = Var2::new(arity, i);
        self.second.insert(v);
        v
    }

    /// Least index used by no variable of either sort, at any arity.
    pub fn fresh_shared_index(&mut self) -> u32 {
        let mut all: BTreeSet<u32> = self.first.clone();
        all.extend(self.second.iter().map(|v| v.index));
        let i = least_missing(all.into_iter());
        self.first.insert(i);
        i
    }
}

pub(crate) fn least_missing(sorted: impl Iterator<Item = u32>) -> u32 {
    let mut next = 0;
    for i in sorted {
        if i == next {
            next += 1;
        } else if i > next {
            break;
        }
    }
    next
}

/// `λx1…xn. body`, the value substituted for an arity-n predicate variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Abstraction {
    pub params: Vec<Var1>,
    pub body: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("abstraction parameters are not pairwise distinct")]
    DuplicateParams,
    #[error("formula is not L1-pure")]
    NotL1Pure,
    #[error("formula is not L2-pure")]
    NotL2Pure,
}

impl Abstraction {
    pub fn new(params: Vec<Var1>, body: Formula) -> Result<Self, SyntaxError> {
        let distinct: BTreeSet<_> = params.iter().collect();
        if distinct.len() != params.len() {
            return Err(SyntaxError::DuplicateParams);
        }
        Ok(Abstraction { params, body })
    }

    pub fn arity(&self) -> usize {
        self.params.len()
    }

    /// `λx0…x(n-1). Y(x0,…,x(n-1))`, i.e. plain renaming to `Y`.
    pub fn of_var(y: Var2) -> Self {
        let params: Vec<Var1> = (0..y.arity as u32).map(Var1).collect();
        let args = params.iter().map(|p| Term::Var(*p)).collect();
        Abstraction {
            params,
            body: Formula::Pred(y, args),
        }
    }

    /// If this abstraction is `λx⃗. Y(x⃗)`, returns `Y`.
    pub fn as_var(&self) -> Option<Var2> {
        match &self.body {
            Formula::Pred(y, args)
                if y.arity == self.params.len()
                    && args.iter().zip(&self.params).all(|(a, p)| a.as_var() == Some(*p)) =>
            {
                Some(*y)
            }
            _ => None,
        }
    }

    pub fn free_vars(&self) -> FreeVars {
        let mut fv = self.body.free_vars();
        for p in &self.params {
            fv.first.remove(p);
        }
        fv
    }

    /// `body[x1:=t1,…,xn:=tn]`, simultaneously.
    pub fn instantiate(&self, args: &[Term]) -> Formula {
        debug_assert_eq!(args.len(), self.params.len());
        let mut s = Subst::new();
        for (p, t) in self.params.iter().zip(args) {
            s.insert_term(*p, t.clone());
        }
        s.apply(&self.body)
    }

    pub fn subst(&self, s: &Subst) -> Abstraction {
        // Treat the parameters as binders: route through a universal closure.
        let mut f = self.body.clone();
        for p in self.params.iter().rev() {
            f = Formula::Forall(Binder::First(*p), Box::new(f));
        }
        let mut out = s.apply(&f);
        let mut params = Vec::with_capacity(self.params.len());
        for _ in 0..self.params.len() {
            match out {
                Formula::Forall(Binder::First(p), body) => {
                    params.push(p);
                    out = *body;
                }
                _ => unreachable!("substitution preserves the binder prefix"),
            }
        }
        Abstraction { params, body: out }
    }
}

impl Formula {
    pub fn pred(x: Var2, args: Vec<Term>) -> Formula {
        Formula::Pred(x, args)
    }

    pub fn ap(head: Term, args: Vec<Term>) -> Formula {
        Formula::Ap(head, args)
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Impl(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::implies(a, Formula::Bottom)
    }

    /// `(a -> b) /\ (b -> a)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }

    pub fn forall(v: Binder, body: Formula) -> Formula {
        Formula::Forall(v, Box::new(body))
    }

    pub fn exists(v: Binder, body: Formula) -> Formula {
        Formula::Exists(v, Box::new(body))
    }

    pub fn quant(q: Quantifier, v: Binder, body: Formula) -> Formula {
        match q {
            Quantifier::Forall => Formula::forall(v, body),
            Quantifier::Exists => Formula::exists(v, body),
        }
    }

    pub fn binary(c: Connective, a: Formula, b: Formula) -> Formula {
        match c {
            Connective::Impl => Formula::implies(a, b),
            Connective::And => Formula::and(a, b),
            Connective::Or => Formula::or(a, b),
        }
    }

    pub fn as_binary(&self) -> Option<(Connective, &Formula, &Formula)> {
        match self {
            Formula::Impl(a, b) => Some((Connective::Impl, a, b)),
            Formula::And(a, b) => Some((Connective::And, a, b)),
            Formula::Or(a, b) => Some((Connective::Or, a, b)),
            _ => None,
        }
    }

    pub fn as_quant(&self) -> Option<(Quantifier, Binder, &Formula)> {
        match self {
            Formula::Forall(v, b) => Some((Quantifier::Forall, *v, b)),
            Formula::Exists(v, b) => Some((Quantifier::Exists, *v, b)),
            _ => None,
        }
    }

    /// Splits `(a -> b) /\ (b -> a)` into `(a, b)`.
    pub fn as_iff(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(l, r) => match (&**l, &**r) {
                (Formula::Impl(a, b), Formula::Impl(b2, a2)) if a == a2 && b == b2 => Some((a, b)),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn free_vars(&self) -> FreeVars {
        let mut fv = FreeVars::default();
        self.free_vars_into(&mut fv);
        fv
    }

    fn free_vars_into(&self, fv: &mut FreeVars) {
        match self {
            Formula::Bottom => {}
            Formula::Pred(x, args) => {
                fv.second.insert(*x);
                args.iter().for_each(|a| a.vars_into(&mut fv.first));
            }
            Formula::Ap(h, args) => {
                h.vars_into(&mut fv.first);
                args.iter().for_each(|a| a.vars_into(&mut fv.first));
            }
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.free_vars_into(fv);
                b.free_vars_into(fv);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let mut inner = body.free_vars();
                match v {
                    Binder::First(x) => {
                        inner.first.remove(x);
                    }
                    Binder::Second(x) => {
                        inner.second.remove(x);
                    }
                }
                fv.extend(inner);
            }
        }
    }

    pub fn is_free(&self, v: Binder) -> bool {
        match self {
            Formula::Bottom => false,
            Formula::Pred(x, args) => match v {
                Binder::Second(y) => *x == y,
                Binder::First(y) => args.iter().any(|a| a.contains_var(y)),
            },
            Formula::Ap(h, args) => match v {
                Binder::Second(_) => false,
                Binder::First(y) => h.contains_var(y) || args.iter().any(|a| a.contains_var(y)),
            },
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => a.is_free(v) || b.is_free(v),
            Formula::Forall(w, body) | Formula::Exists(w, body) => *w != v && body.is_free(v),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn is_l1_pure(&self) -> bool {
        match self {
            Formula::Bottom | Formula::Ap(..) => true,
            Formula::Pred(..) => false,
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => a.is_l1_pure() && b.is_l1_pure(),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                matches!(v, Binder::First(_)) && body.is_l1_pure()
            }
        }
    }

    pub fn is_l2_pure(&self) -> bool {
        match self {
            Formula::Bottom | Formula::Pred(..) => true,
            Formula::Ap(..) => false,
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => a.is_l2_pure() && b.is_l2_pure(),
            Formula::Forall(_, body) | Formula::Exists(_, body) => body.is_l2_pure(),
        }
    }

    /// Nesting depth of connectives and quantifiers; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Bottom | Formula::Pred(..) | Formula::Ap(..) => 0,
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Forall(_, body) | Formula::Exists(_, body) => 1 + body.depth(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Bottom | Formula::Pred(..) | Formula::Ap(..) => 1,
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
            Formula::Forall(_, body) | Formula::Exists(_, body) => 1 + body.size(),
        }
    }

    /// Arities of predicate variables (free or bound) and of `Ap_n` atoms.
    pub fn arities(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.arities_into(&mut out);
        out
    }

    fn arities_into(&self, out: &mut BTreeSet<usize>) {
        match self {
            Formula::Bottom => {}
            Formula::Pred(x, _) => {
                out.insert(x.arity);
            }
            Formula::Ap(_, args) => {
                out.insert(args.len());
            }
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.arities_into(out);
                b.arities_into(out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                if let Binder::Second(x) = v {
                    out.insert(x.arity);
                }
                body.arities_into(out);
            }
        }
    }

    pub fn symbols(&self) -> BTreeSet<FnSym> {
        let mut out = BTreeSet::new();
        self.symbols_into(&mut out);
        out
    }

    pub fn symbols_into(&self, out: &mut BTreeSet<FnSym>) {
        match self {
            Formula::Bottom => {}
            Formula::Pred(_, args) => args.iter().for_each(|a| a.symbols_into(out)),
            Formula::Ap(h, args) => {
                h.symbols_into(out);
                args.iter().for_each(|a| a.symbols_into(out));
            }
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.symbols_into(out);
                b.symbols_into(out);
            }
            Formula::Forall(_, body) | Formula::Exists(_, body) => body.symbols_into(out),
        }
    }

    /// `F[x:=t]`, capture-avoiding.
    pub fn subst_term(&self, x: Var1, t: &Term) -> Formula {
        let mut s = Subst::new();
        s.insert_term(x, t.clone());
        s.apply(self)
    }

    /// `F[X:=Y]` for same-arity second-order variables.
    pub fn subst_var2(&self, x: Var2, y: Var2) -> Result<Formula, SyntaxError> {
        if x.arity != y.arity {
            return Err(SyntaxError::ArityMismatch {
                expected: x.arity,
                found: y.arity,
            });
        }
        let mut s = Subst::new();
        s.insert_abs(x, Abstraction::of_var(y));
        Ok(s.apply(self))
    }

    /// `F[X:=λx⃗.G]`.
    pub fn subst_formula2(&self, x: Var2, a: &Abstraction) -> Result<Formula, SyntaxError> {
        if x.arity != a.arity() {
            return Err(SyntaxError::ArityMismatch {
                expected: x.arity,
                found: a.arity(),
            });
        }
        let mut s = Subst::new();
        s.insert_abs(x, a.clone());
        Ok(s.apply(self))
    }

    /// Substitutes a binder-sorted variable: a term for a first-order
    /// variable, a variable for a second-order one.
    pub fn rename_binder(&self, from: Binder, to: Binder) -> Formula {
        match (from, to) {
            (Binder::First(x), Binder::First(y)) => self.subst_term(x, &Term::Var(y)),
            (Binder::Second(x), Binder::Second(y)) => self
                .subst_var2(x, y)
                .expect("rename_binder requires equal arities"),
            _ => panic!("rename_binder across sorts"),
        }
    }

    /// Drops every quantifier whose variable has no free occurrence in its body.
    pub fn normalize_vacuous(&self) -> Formula {
        match self {
            Formula::Bottom | Formula::Pred(..) | Formula::Ap(..) => self.clone(),
            Formula::Impl(a, b) => Formula::implies(a.normalize_vacuous(), b.normalize_vacuous()),
            Formula::And(a, b) => Formula::and(a.normalize_vacuous(), b.normalize_vacuous()),
            Formula::Or(a, b) => Formula::or(a.normalize_vacuous(), b.normalize_vacuous()),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let inner = body.normalize_vacuous();
                if inner.is_free(*v) {
                    match self {
                        Formula::Forall(..) => Formula::forall(*v, inner),
                        _ => Formula::exists(*v, inner),
                    }
                } else {
                    inner
                }
            }
        }
    }
}

impl fmt::Display for Var1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

impl fmt::Display for Var2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X^{}_{}", self.arity, self.index)
    }
}

impl fmt::Display for Binder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Binder::First(x) => x.fmt(f),
            Binder::Second(x) => x.fmt(f),
        }
    }
}

impl fmt::Display for Abstraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lambda")?;
        for p in &self.params {
            write!(f, " {p}")?;
        }
        write!(f, ". {}", self.body)
    }
}
