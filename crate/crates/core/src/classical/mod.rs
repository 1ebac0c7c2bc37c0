//! Finite classical models for both languages and their evaluators.

pub(crate) mod io;

use std::collections::BTreeMap;

use crate::coding::{sc2_instance, SchemaInstance};
use crate::relation::{code, tuples_over, Elem, Relation};
use crate::syntax::{Binder, Formula, Term, Var1, Var2};

pub use io::{
    parse_interp, parse_model1, parse_model2, write_interp, write_model1, write_model2, ModelFileError,
};

/// Interpretations of function symbols over a universe `{0, …, N-1}`.
///
/// Tables may be partial over the universe; a Kripke model only needs
/// `f` defined on the tuples of each world's domain.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FnTables {
    universe: usize,
    tables: BTreeMap<String, FnTable>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnTable {
    pub arity: usize,
    values: Vec<Option<Elem>>,
}

impl FnTables {
    pub fn new(universe: usize) -> Self {
        FnTables {
            universe,
            tables: BTreeMap::new(),
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn declare(&mut self, name: &str, arity: usize) {
        self.tables.entry(name.to_string()).or_insert_with(|| FnTable {
            arity,
            values: vec![None; self.universe.pow(arity as u32)],
        });
    }

    pub fn set(&mut self, name: &str, args: &[Elem], value: Elem) {
        self.declare(name, args.len());
        let c = code(args, self.universe);
        self.tables.get_mut(name).expect("declared").values[c] = Some(value);
    }

    pub fn get(&self, name: &str, args: &[Elem]) -> Option<Elem> {
        let t = self.tables.get(name)?;
        if t.arity != args.len() {
            return None;
        }
        t.values[code(args, self.universe)]
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.tables.get(name).map(|t| t.arity)
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&str, usize)> {
        self.tables.iter().map(|(n, t)| (n.as_str(), t.arity))
    }

    /// Defined entries of `name` as `(args, value)` in code order.
    pub fn entries(&self, name: &str) -> Vec<(Vec<Elem>, Elem)> {
        let Some(t) = self.tables.get(name) else {
            return Vec::new();
        };
        let all: Vec<Elem> = (0..self.universe).collect();
        tuples_over(&all, t.arity)
            .into_iter()
            .filter_map(|args| {
                let v = t.values[code(&args, self.universe)]?;
                Some((args, v))
            })
            .collect()
    }

    /// First tuple over `elems` on which `name` is undefined or leaves
    /// `elems`.
    pub fn closure_violation(&self, elems: &[Elem]) -> Option<(String, Vec<Elem>)> {
        for (name, t) in &self.tables {
            for args in tuples_over(elems, t.arity) {
                match t.values[code(&args, self.universe)] {
                    Some(v) if elems.contains(&v) => {}
                    _ => return Some((name.clone(), args)),
                }
            }
        }
        None
    }

    /// Each constant denotes element 0 and each function projects its first
    /// argument.
    pub fn canonical(universe: usize, symbols: impl IntoIterator<Item = (String, usize)>) -> Self {
        let mut t = FnTables::new(universe);
        let all: Vec<Elem> = (0..universe).collect();
        for (name, arity) in symbols {
            t.declare(&name, arity);
            for args in tuples_over(&all, arity) {
                let v = args.first().copied().unwrap_or(0);
                t.set(&name, &args, v);
            }
        }
        t
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("variable {0} is not interpreted")]
    Unbound(Binder),
    #[error("no range for arity {0}")]
    MissingRange(usize),
    #[error("no relation for Ap{0}")]
    MissingRelation(usize),
    #[error("unknown function symbol {0}/{1}")]
    UnknownFunction(String, usize),
    #[error("function {0} is undefined on an argument tuple")]
    Undefined(String),
    #[error("formula is not L1-pure")]
    NotL1Pure,
    #[error("formula is not L2-pure")]
    NotL2Pure,
    #[error("value of {0} is not a member of the range")]
    OutsideRange(Var2),
    #[error("element {0} is not in the domain")]
    BadElement(Elem),
    #[error("point {0} is not in the model")]
    BadPoint(usize),
    #[error("point {0} is below the interpretation's level")]
    BelowLevel(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("domain-nonempty: the domain is empty")]
    EmptyDomain,
    #[error("function-totality: {0} is undefined or leaves the domain on {1:?}")]
    NotTotal(String, Vec<Elem>),
    #[error("relation-arity: relation for arity {0} has the wrong arity")]
    RelationArity(usize),
    #[error("range-nonempty: range for arity {0} is empty")]
    EmptyRange(usize),
    #[error("range-subset: a member of the range for arity {0} leaves the domain")]
    RangeOutsideDomain(usize),
    #[error("boolean-range: the range for arity 0 must be {{0,1}}")]
    BooleanRange,
    #[error("size-guard: {0}")]
    TooLarge(String),
}

/// A first-order model: relations `α_n ⊆ D^(n+1)` interpret `Ap_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalModel1 {
    pub elems: Vec<String>,
    pub fns: FnTables,
    pub relations: BTreeMap<usize, Relation>,
}

/// A second-order model with ranges `P_n` for quantification at arity `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalModel2 {
    pub elems: Vec<String>,
    pub fns: FnTables,
    pub ranges: BTreeMap<usize, Vec<Relation>>,
}

/// Values of variables; second-order values are relations of the variable's
/// arity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Interp {
    pub fo: BTreeMap<Var1, Elem>,
    pub so: BTreeMap<Var2, Relation>,
}

impl Interp {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with1(mut self, x: Var1, a: Elem) -> Self {
        self.fo.insert(x, a);
        self
    }

    pub fn with2(mut self, x: Var2, r: Relation) -> Self {
        self.so.insert(x, r);
        self
    }
}

fn check_fns(elems: &[String], fns: &FnTables) -> Result<(), ModelError> {
    if elems.is_empty() {
        return Err(ModelError::EmptyDomain);
    }
    let all: Vec<Elem> = (0..elems.len()).collect();
    if let Some((f, args)) = fns.closure_violation(&all) {
        return Err(ModelError::NotTotal(f, args));
    }
    Ok(())
}

fn within(r: &Relation, n: usize) -> bool {
    r.codes().all(|c| c < n.pow(r.arity() as u32))
}

fn dedup(mut v: Vec<Relation>) -> Vec<Relation> {
    v.sort();
    v.dedup();
    v
}

/// All subsets of `D^n`.
pub fn powerset(universe: usize, n: usize) -> Vec<Relation> {
    let size = universe.pow(n as u32);
    (0u64..1 << size)
        .map(|mask| Relation::from_codes(n, (0..size).filter(|i| mask >> i & 1 == 1)))
        .collect()
}

impl ClassicalModel1 {
    pub fn new(elems: Vec<String>, fns: FnTables, relations: BTreeMap<usize, Relation>) -> Result<Self, ModelError> {
        check_fns(&elems, &fns)?;
        for (n, r) in &relations {
            if r.arity() != n + 1 {
                return Err(ModelError::RelationArity(*n));
            }
            if !within(r, elems.len()) {
                return Err(ModelError::RangeOutsideDomain(*n));
            }
        }
        Ok(ClassicalModel1 { elems, fns, relations })
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }
}

impl ClassicalModel2 {
    /// Builds a model, setting `P_0 = {0,1}` whatever `ranges` says for
    /// arity 0.
    pub fn new(elems: Vec<String>, fns: FnTables, mut ranges: BTreeMap<usize, Vec<Relation>>) -> Result<Self, ModelError> {
        ranges.insert(0, vec![Relation::empty(0), Relation::truth()]);
        Self::with_ranges(elems, fns, ranges)
    }

    /// Builds a model taking every range as given, arity 0 included.
    pub fn with_ranges(
        elems: Vec<String>,
        fns: FnTables,
        ranges: BTreeMap<usize, Vec<Relation>>,
    ) -> Result<Self, ModelError> {
        check_fns(&elems, &fns)?;
        let mut clean = BTreeMap::new();
        for (n, rs) in ranges {
            if rs.is_empty() {
                return Err(ModelError::EmptyRange(n));
            }
            if rs.iter().any(|r| r.arity() != n) {
                return Err(ModelError::RelationArity(n));
            }
            if rs.iter().any(|r| !within(r, elems.len())) {
                return Err(ModelError::RangeOutsideDomain(n));
            }
            clean.insert(n, dedup(rs));
        }
        Ok(ClassicalModel2 {
            elems,
            fns,
            ranges: clean,
        })
    }

    /// The full model: every `P_n` with `n ≤ max_arity` is the powerset of
    /// `D^n`.
    pub fn full(elems: Vec<String>, fns: FnTables, max_arity: usize) -> Result<Self, ModelError> {
        let n = elems.len();
        let mut ranges = BTreeMap::new();
        for k in 0..=max_arity {
            let size = n.pow(k as u32);
            if size > 20 {
                return Err(ModelError::TooLarge(format!("2^{size} subsets at arity {k}")));
            }
            ranges.insert(k, powerset(n, k));
        }
        Self::with_ranges(elems, fns, ranges)
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn is_full(&self) -> bool {
        self.ranges
            .iter()
            .all(|(k, rs)| rs.len() as u128 == 1u128 << self.size().pow(*k as u32))
    }
}

/// `|a|_n = {(a1..an) : (a, a1..an) ∈ α_n}`.
pub fn extension(m: &ClassicalModel1, n: usize, a: Elem) -> Option<Relation> {
    Some(m.relations.get(&n)?.section(a, m.size()))
}

/// The second-order model `rev(M)`: `P_n = {|a|_n : a ∈ D}` for every
/// arity with a relation, arity 0 included.
pub fn rev_model(m: &ClassicalModel1) -> ClassicalModel2 {
    let mut ranges = BTreeMap::new();
    for n in m.relations.keys() {
        let rs = (0..m.size()).map(|a| extension(m, *n, a).expect("present")).collect();
        ranges.insert(*n, rs);
    }
    ClassicalModel2::with_ranges(m.elems.clone(), m.fns.clone(), ranges).expect("sections of a valid model")
}

/// `rev(M)` with `P_0` fixed to `{0,1}` instead of `{|a|_0 : a ∈ D}`.
///
/// With this choice the translation lemma fails as soon as `α_0` is empty
/// or total: `∃X⁰ X⁰` holds in the translated model while `∃x Ap0(x)` fails.
pub fn rev_model_boolean_p0(m: &ClassicalModel1) -> ClassicalModel2 {
    let mut out = rev_model(m);
    out.ranges.insert(0, vec![Relation::empty(0), Relation::truth()]);
    out
}

/// `rev(σ)`: first-order values unchanged, `X^n_i ↦ |σ(x_i)|_n`.
///
/// Second-order variables are interpreted for every `x_i` bound in `σ` and
/// every arity with a relation.
pub fn rev_interp(m: &ClassicalModel1, sigma: &Interp) -> Interp {
    let mut out = Interp::new();
    out.fo = sigma.fo.clone();
    for (x, a) in &sigma.fo {
        for n in m.relations.keys() {
            out.so.insert(Var2::new(*n, x.0), extension(m, *n, *a).expect("present"));
        }
    }
    out
}

struct Env<'a> {
    fo: Vec<(Var1, Elem)>,
    so: Vec<(Var2, &'a Relation)>,
}

impl<'a> Env<'a> {
    fn lookup1(&self, x: Var1) -> Elem {
        self.fo.iter().rev().find(|(y, _)| *y == x).expect("validated").1
    }

    fn lookup2(&self, x: Var2) -> &'a Relation {
        self.so.iter().rev().find(|(y, _)| *y == x).expect("validated").1
    }
}

struct Evaluator<'a> {
    universe: usize,
    fns: &'a FnTables,
    ranges: Option<&'a BTreeMap<usize, Vec<Relation>>>,
    relations: Option<&'a BTreeMap<usize, Relation>>,
}

pub(crate) fn validate_term(fns: &FnTables, t: &Term, bound: &dyn Fn(Var1) -> bool) -> Result<(), EvalError> {
    match t {
        Term::Var(x) => {
            if bound(*x) {
                Ok(())
            } else {
                Err(EvalError::Unbound(Binder::First(*x)))
            }
        }
        Term::App(f, args) => {
            if fns.arity(f) != Some(args.len()) {
                return Err(EvalError::UnknownFunction(f.clone(), args.len()));
            }
            args.iter().try_for_each(|a| validate_term(fns, a, bound))
        }
    }
}

/// Checks that every variable free in `a` is interpreted, every function
/// symbol is known, and every arity used has a range or relation.
pub(crate) fn validate_formula(
    a: &Formula,
    fns: &FnTables,
    fo: &dyn Fn(Var1) -> bool,
    so: &dyn Fn(Var2) -> bool,
    has_range: &dyn Fn(usize) -> bool,
    has_relation: &dyn Fn(usize) -> bool,
) -> Result<(), EvalError> {
    #[allow(clippy::too_many_arguments)]
    fn go(
        a: &Formula,
        fns: &FnTables,
        b1: &mut Vec<Var1>,
        b2: &mut Vec<Var2>,
        fo: &dyn Fn(Var1) -> bool,
        so: &dyn Fn(Var2) -> bool,
        has_range: &dyn Fn(usize) -> bool,
        has_relation: &dyn Fn(usize) -> bool,
    ) -> Result<(), EvalError> {
        let bound1 = |x: Var1| b1.contains(&x) || fo(x);
        match a {
            Formula::Bottom => Ok(()),
            Formula::Pred(x, args) => {
                if !b2.contains(x) && !so(*x) {
                    return Err(EvalError::Unbound(Binder::Second(*x)));
                }
                args.iter().try_for_each(|t| validate_term(fns, t, &bound1))
            }
            Formula::Ap(h, args) => {
                if !has_relation(args.len()) {
                    return Err(EvalError::MissingRelation(args.len()));
                }
                validate_term(fns, h, &bound1)?;
                args.iter().try_for_each(|t| validate_term(fns, t, &bound1))
            }
            Formula::Impl(l, r) | Formula::And(l, r) | Formula::Or(l, r) => {
                go(l, fns, b1, b2, fo, so, has_range, has_relation)?;
                go(r, fns, b1, b2, fo, so, has_range, has_relation)
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                match v {
                    Binder::First(x) => b1.push(*x),
                    Binder::Second(x) => {
                        if !has_range(x.arity) {
                            return Err(EvalError::MissingRange(x.arity));
                        }
                        b2.push(*x)
                    }
                }
                let r = go(body, fns, b1, b2, fo, so, has_range, has_relation);
                match v {
                    Binder::First(_) => {
                        b1.pop();
                    }
                    Binder::Second(_) => {
                        b2.pop();
                    }
                }
                r
            }
        }
    }
    go(a, fns, &mut Vec::new(), &mut Vec::new(), fo, so, has_range, has_relation)
}

pub(crate) fn eval_term_with(fns: &FnTables, t: &Term, lookup: &dyn Fn(Var1) -> Elem) -> Elem {
    match t {
        Term::Var(x) => lookup(*x),
        Term::App(f, args) => {
            let vals: Vec<Elem> = args.iter().map(|a| eval_term_with(fns, a, lookup)).collect();
            fns.get(f, &vals).expect("validated total table")
        }
    }
}

impl<'a> Evaluator<'a> {
    fn term(&self, t: &Term, env: &Env<'a>) -> Elem {
        match t {
            Term::Var(x) => env.lookup1(*x),
            _ => eval_term_with(self.fns, t, &|x| env.lookup1(x)),
        }
    }

    fn code(&self, ts: &[Term], env: &Env<'a>) -> usize {
        let mut c = 0;
        for t in ts.iter().rev() {
            c = c * self.universe + self.term(t, env);
        }
        c
    }

    fn eval(&self, a: &Formula, env: &mut Env<'a>) -> bool {
        match a {
            Formula::Bottom => false,
            Formula::Pred(x, args) => {
                let c = self.code(args, env);
                env.lookup2(*x).contains_code(c)
            }
            Formula::Ap(h, args) => {
                let head = self.term(h, env);
                let c = self.code(args, env) * self.universe + head;
                self.relations.expect("validated")[&args.len()].contains_code(c)
            }
            Formula::Impl(l, r) => !self.eval(l, env) || self.eval(r, env),
            Formula::And(l, r) => self.eval(l, env) && self.eval(r, env),
            Formula::Or(l, r) => self.eval(l, env) || self.eval(r, env),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let want = matches!(a, Formula::Exists(..));
                match v {
                    Binder::First(x) => {
                        for d in 0..self.universe {
                            env.fo.push((*x, d));
                            let r = self.eval(body, env);
                            env.fo.pop();
                            if r == want {
                                return want;
                            }
                        }
                    }
                    Binder::Second(x) => {
                        for rel in &self.ranges.expect("validated")[&x.arity] {
                            env.so.push((*x, rel));
                            let r = self.eval(body, env);
                            env.so.pop();
                            if r == want {
                                return want;
                            }
                        }
                    }
                }
                !want
            }
        }
    }
}

fn check_elems(sigma: &Interp, n: usize) -> Result<(), EvalError> {
    for a in sigma.fo.values() {
        if *a >= n {
            return Err(EvalError::BadElement(*a));
        }
    }
    Ok(())
}

pub fn eval_term(fns: &FnTables, sigma: &Interp, t: &Term) -> Result<Elem, EvalError> {
    validate_term(fns, t, &|x| sigma.fo.contains_key(&x))?;
    Ok(eval_term_with(fns, t, &|x| sigma.fo[&x]))
}

/// `M, σ ⊨ A` for an L2-pure `A`.
pub fn eval2(m: &ClassicalModel2, sigma: &Interp, a: &Formula) -> Result<bool, EvalError> {
    if !a.is_l2_pure() {
        return Err(EvalError::NotL2Pure);
    }
    check_elems(sigma, m.size())?;
    for (x, r) in &sigma.so {
        if a.is_free(Binder::Second(*x)) && !m.ranges.get(&x.arity).is_some_and(|rs| rs.contains(r)) {
            return Err(EvalError::OutsideRange(*x));
        }
    }
    validate_formula(
        a,
        &m.fns,
        &|x| sigma.fo.contains_key(&x),
        &|x| sigma.so.contains_key(&x),
        &|n| m.ranges.contains_key(&n),
        &|_| false,
    )?;
    Ok(eval2_unchecked(m, sigma, a))
}

pub(crate) fn eval2_unchecked(m: &ClassicalModel2, sigma: &Interp, a: &Formula) -> bool {
    let ev = Evaluator {
        universe: m.size(),
        fns: &m.fns,
        ranges: Some(&m.ranges),
        relations: None,
    };
    let mut env = Env {
        fo: sigma.fo.iter().map(|(k, v)| (*k, *v)).collect(),
        so: sigma.so.iter().map(|(k, v)| (*k, v)).collect(),
    };
    ev.eval(a, &mut env)
}

/// `M, σ ⊨ A` for an L1-pure `A`.
pub fn eval1(m: &ClassicalModel1, sigma: &Interp, a: &Formula) -> Result<bool, EvalError> {
    if !a.is_l1_pure() {
        return Err(EvalError::NotL1Pure);
    }
    check_elems(sigma, m.size())?;
    validate_formula(
        a,
        &m.fns,
        &|x| sigma.fo.contains_key(&x),
        &|_| false,
        &|_| false,
        &|n| m.relations.contains_key(&n),
    )?;
    Ok(eval1_unchecked(m, sigma, a))
}

pub(crate) fn eval1_unchecked(m: &ClassicalModel1, sigma: &Interp, a: &Formula) -> bool {
    let ev = Evaluator {
        universe: m.size(),
        fns: &m.fns,
        ranges: None,
        relations: Some(&m.relations),
    };
    let mut env = Env {
        fo: sigma.fo.iter().map(|(k, v)| (*k, *v)).collect(),
        so: Vec::new(),
    };
    ev.eval(a, &mut env)
}

/// Every interpretation of the free variables of `a` with second-order
/// values drawn from `ranges`.
pub fn interps_for(a: &Formula, size: usize, ranges: &BTreeMap<usize, Vec<Relation>>) -> Vec<Interp> {
    let fv = a.free_vars();
    let mut out = vec![Interp::new()];
    for x in &fv.first {
        out = out
            .into_iter()
            .flat_map(|s| (0..size).map(move |d| s.clone().with1(*x, d)))
            .collect();
    }
    for x in &fv.second {
        let Some(rs) = ranges.get(&x.arity) else {
            return Vec::new();
        };
        out = out
            .into_iter()
            .flat_map(|s| rs.iter().map(move |r| s.clone().with2(*x, r.clone())))
            .collect();
    }
    out
}

/// `M ⊨ A`: true under every interpretation.
pub fn valid2(m: &ClassicalModel2, a: &Formula) -> Result<bool, EvalError> {
    let interps = interps_for(a, m.size(), &m.ranges);
    for s in &interps {
        if !eval2(m, s, a)? {
            return Ok(false);
        }
    }
    if interps.is_empty() {
        let x = a.free_vars().second.into_iter().next().expect("unsatisfiable only for missing ranges");
        return Err(EvalError::MissingRange(x.arity));
    }
    Ok(true)
}

pub fn valid1(m: &ClassicalModel1, a: &Formula) -> Result<bool, EvalError> {
    for s in interps_for(a, m.size(), &BTreeMap::new()) {
        if !eval1(m, &s, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The first comprehension instance among `instances` that fails in `m`.
pub fn first_sc_failure<'s>(
    m: &ClassicalModel2,
    instances: &'s [SchemaInstance],
) -> Result<Option<&'s SchemaInstance>, EvalError> {
    for s in instances {
        if !eval2(m, &Interp::new(), &sc2_instance(s))? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Whether `m` satisfies every comprehension instance with body depth at
/// most `depth` and arities at most `arity`.
pub fn check_sc(m: &ClassicalModel2, depth: usize, arity: usize) -> Result<bool, EvalError> {
    let stock = crate::coding::bounded_sc2(depth, arity);
    Ok(first_sc_failure(m, &stock)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("d{i}")).collect()
    }

    fn m1(n: usize, rels: &[(usize, &[&[Elem]])]) -> ClassicalModel1 {
        let relations = rels
            .iter()
            .map(|(k, ts)| (*k, Relation::from_tuples(k + 1, n, ts.iter().copied())))
            .collect();
        ClassicalModel1::new(names(n), FnTables::new(n), relations).unwrap()
    }

    #[test]
    fn term_evaluation() {
        let mut fns = FnTables::new(2);
        fns.set("a", &[], 0);
        fns.set("f", &[0], 1);
        fns.set("f", &[1], 0);
        let s = Interp::new().with1(Var1(0), 1);
        assert_eq!(eval_term(&fns, &s, &Term::var(0)).unwrap(), 1);
        assert_eq!(eval_term(&fns, &s, &Term::constant("a")).unwrap(), 0);
        let fa = Term::app("f", vec![Term::constant("a")]);
        assert_eq!(eval_term(&fns, &s, &fa).unwrap(), 1);
        assert!(eval_term(&fns, &s, &Term::var(3)).is_err());
    }

    #[test]
    fn second_order_evaluation() {
        let m = ClassicalModel2::full(names(2), FnTables::new(2), 1).unwrap();
        let s = Interp::new();
        assert!(eval2(&m, &s, &p("forall X^0_0. X^0_0 \\/ ~X^0_0")).unwrap());
        assert!(eval2(&m, &s, &p("forall X^0_0. forall X^0_1. (((X^0_0 -> X^0_1) -> X^0_0) -> X^0_0)")).unwrap());
        let s = Interp::new().with1(Var1(0), 0).with2(Var2::new(1, 0), Relation::empty(1));
        assert!(!eval2(&m, &s, &p("X^1_0(x0)")).unwrap());
        assert_eq!(eval2(&m, &s, &p("X^2_0(x0, x0)")), Err(EvalError::Unbound(Binder::Second(Var2::new(2, 0)))));
        assert_eq!(eval2(&m, &s, &p("forall X^2_0. bot")), Err(EvalError::MissingRange(2)));
    }

    #[test]
    fn first_order_evaluation() {
        let m = m1(1, &[(1, &[&[0, 0]])]);
        let s = Interp::new().with1(Var1(0), 0).with1(Var1(1), 0);
        assert!(eval1(&m, &s, &p("Ap1(x0, x1)")).unwrap());
        assert!(eval1(&m, &Interp::new(), &p("forall x0. Ap1(x0, x0)")).unwrap());
        let m = m1(1, &[(0, &[])]);
        assert!(eval1(&m, &Interp::new(), &p("exists x0. (Ap0(x0) -> bot)")).unwrap());
        assert_eq!(eval1(&m, &Interp::new(), &p("exists x0. Ap1(x0, x0)")), Err(EvalError::MissingRelation(1)));
    }

    #[test]
    fn translated_models() {
        let m = m1(1, &[(1, &[])]);
        assert_eq!(rev_model(&m).ranges[&1], vec![Relation::empty(1)]);
        let m = m1(1, &[(1, &[&[0, 0]])]);
        assert_eq!(rev_model(&m).ranges[&1], vec![Relation::from_codes(1, [0])]);

        let m = m1(2, &[(1, &[&[0, 0], &[0, 1]])]);
        let r = rev_model(&m);
        assert_eq!(r.ranges[&1], vec![Relation::empty(1), Relation::from_codes(1, [0, 1])]);
        assert!(!r.is_full());
        let s = Interp::new().with1(Var1(0), 0);
        assert_eq!(rev_interp(&m, &s).so[&Var2::new(1, 0)], Relation::from_codes(1, [0, 1]));
        assert_eq!(rev_interp(&m, &s).fo[&Var1(0)], 0);
        let s = Interp::new().with1(Var1(0), 1);
        assert_eq!(rev_interp(&m, &s).so[&Var2::new(1, 0)], Relation::empty(1));
    }

    #[test]
    fn fullness() {
        let mut ranges = BTreeMap::new();
        ranges.insert(1, vec![Relation::empty(1), Relation::from_codes(1, [0])]);
        assert!(ClassicalModel2::new(names(1), FnTables::new(1), ranges.clone()).unwrap().is_full());
        ranges.insert(1, vec![Relation::empty(1)]);
        assert!(!ClassicalModel2::new(names(1), FnTables::new(1), ranges).unwrap().is_full());
    }

    #[test]
    fn boolean_p0_breaks_the_translation() {
        let m = m1(1, &[(0, &[])]);
        let a = p("exists X^0_0. X^0_0");
        let s = crate::coding::star(&a).unwrap();
        assert!(!eval1(&m, &Interp::new(), &s).unwrap());
        assert!(!eval2(&rev_model(&m), &Interp::new(), &a).unwrap());
        assert!(eval2(&rev_model_boolean_p0(&m), &Interp::new(), &a).unwrap());
    }

    #[test]
    fn bounded_comprehension() {
        let full = ClassicalModel2::full(names(2), FnTables::new(2), 1).unwrap();
        assert!(check_sc(&full, 2, 1).unwrap());
        assert!(check_sc(&full, 0, 0).unwrap());
        let mut ranges = BTreeMap::new();
        ranges.insert(1, vec![Relation::empty(1)]);
        let poor = ClassicalModel2::new(names(2), FnTables::new(2), ranges).unwrap();
        let stock = crate::coding::bounded_sc2(1, 1);
        let bad = first_sc_failure(&poor, &stock).unwrap().unwrap();
        assert_eq!(bad.witness_arity(), 1);
    }
}
