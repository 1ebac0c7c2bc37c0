use std::collections::BTreeMap;

use crate::classical::{eval_term_with, validate_formula, EvalError};
use crate::relation::{Elem, Relation};
use crate::syntax::{Binder, Formula, Term, Var1, Var2};

use super::{Family, Frame, KInterp, KripkeModel1, KripkeModel2};

pub type ForceError = EvalError;

struct Env<'a> {
    fo: Vec<(Var1, Elem)>,
    so: Vec<(Var2, &'a Family)>,
}

impl<'a> Env<'a> {
    fn lookup1(&self, x: Var1) -> Elem {
        self.fo.iter().rev().find(|(y, _)| *y == x).expect("validated").1
    }

    fn lookup2(&self, x: Var2) -> &'a Family {
        self.so.iter().rev().find(|(y, _)| *y == x).expect("validated").1
    }
}

struct Forcer<'a> {
    frame: &'a Frame,
    families: Option<&'a BTreeMap<usize, Vec<Vec<Family>>>>,
    relations: Option<&'a BTreeMap<usize, Vec<Relation>>>,
}

impl<'a> Forcer<'a> {
    fn code(&self, ts: &[Term], env: &Env<'a>) -> usize {
        let u = self.frame.universe();
        let mut c = 0;
        for t in ts.iter().rev() {
            c = c * u + eval_term_with(&self.frame.fns, t, &|x| env.lookup1(x));
        }
        c
    }

    fn force(&self, p: usize, a: &Formula, env: &mut Env<'a>) -> bool {
        let poset = &self.frame.poset;
        match a {
            Formula::Bottom => false,
            Formula::Pred(x, args) => {
                let c = self.code(args, env);
                env.lookup2(*x).at(p).contains_code(c)
            }
            Formula::Ap(h, args) => {
                let u = self.frame.universe();
                let head = eval_term_with(&self.frame.fns, h, &|x| env.lookup1(x));
                let c = self.code(args, env) * u + head;
                self.relations.expect("validated")[&args.len()][p].contains_code(c)
            }
            Formula::Impl(l, r) => poset
                .cone(p)
                .all(|q| !self.force(q, l, env) || self.force(q, r, env)),
            Formula::And(l, r) => self.force(p, l, env) && self.force(p, r, env),
            Formula::Or(l, r) => self.force(p, l, env) || self.force(p, r, env),
            Formula::Forall(v, body) => poset.cone(p).all(|q| self.each(q, *v, body, env, false)),
            Formula::Exists(v, body) => self.each(p, *v, body, env, true),
        }
    }

    /// Some (`want = true`) or every (`want = false`) value of `v` at `q`
    /// forces `body` at `q`.
    fn each(&self, q: usize, v: Binder, body: &Formula, env: &mut Env<'a>, want: bool) -> bool {
        match v {
            Binder::First(x) => {
                for &d in &self.frame.domains[q] {
                    env.fo.push((x, d));
                    let r = self.force(q, body, env);
                    env.fo.pop();
                    if r == want {
                        return want;
                    }
                }
            }
            Binder::Second(x) => {
                for f in &self.families.expect("validated")[&x.arity][q] {
                    env.so.push((x, f));
                    let r = self.force(q, body, env);
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

fn check_interp(frame: &Frame, sigma: &KInterp) -> Result<(), EvalError> {
    if sigma.level >= frame.poset.len() {
        return Err(EvalError::BadPoint(sigma.level));
    }
    for a in sigma.fo.values() {
        if !frame.in_domain(sigma.level, *a) {
            return Err(EvalError::BadElement(*a));
        }
    }
    Ok(())
}

/// `p ⊩ A [σ]` at `p = σ.level` for an L2-pure `A`.
pub fn force2(k: &KripkeModel2, sigma: &KInterp, a: &Formula) -> Result<bool, EvalError> {
    if !a.is_l2_pure() {
        return Err(EvalError::NotL2Pure);
    }
    check_interp(&k.frame, sigma)?;
    for (x, f) in &sigma.so {
        if !a.is_free(Binder::Second(*x)) {
            continue;
        }
        if !k.frame.poset.leq(f.level(), sigma.level) || f.arity() != x.arity {
            return Err(EvalError::OutsideRange(*x));
        }
        if !k.contains(&f.restrict(&k.frame.poset, sigma.level)) {
            return Err(EvalError::OutsideRange(*x));
        }
    }
    validate_formula(
        a,
        &k.frame.fns,
        &|x| sigma.fo.contains_key(&x),
        &|x| sigma.so.contains_key(&x),
        &|n| k.families.contains_key(&n),
        &|_| false,
    )?;
    let ev = Forcer {
        frame: &k.frame,
        families: Some(&k.families),
        relations: None,
    };
    let mut env = Env {
        fo: sigma.fo.iter().map(|(x, d)| (*x, *d)).collect(),
        so: sigma.so.iter().map(|(x, f)| (*x, f)).collect(),
    };
    Ok(ev.force(sigma.level, a, &mut env))
}

/// `p ⊩ A [σ]` at `p = σ.level` for an L1-pure `A`.
pub fn force1(k: &KripkeModel1, sigma: &KInterp, a: &Formula) -> Result<bool, EvalError> {
    if !a.is_l1_pure() {
        return Err(EvalError::NotL1Pure);
    }
    check_interp(&k.frame, sigma)?;
    validate_formula(
        a,
        &k.frame.fns,
        &|x| sigma.fo.contains_key(&x),
        &|_| false,
        &|_| false,
        &|n| k.relations.contains_key(&n),
    )?;
    let ev = Forcer {
        frame: &k.frame,
        families: None,
        relations: Some(&k.relations),
    };
    let mut env = Env {
        fo: sigma.fo.iter().map(|(x, d)| (*x, *d)).collect(),
        so: Vec::new(),
    };
    Ok(ev.force(sigma.level, a, &mut env))
}

/// Whether forcing of `a` under `sigma` persists to every point above the
/// level of `sigma`.
pub fn monotone2(k: &KripkeModel2, sigma: &KInterp, a: &Formula) -> Result<bool, EvalError> {
    if !force2(k, sigma, a)? {
        return Ok(true);
    }
    for q in k.frame.poset.cone(sigma.level) {
        if !force2(k, &sigma.restrict(&k.frame.poset, q), a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn monotone1(k: &KripkeModel1, sigma: &KInterp, a: &Formula) -> Result<bool, EvalError> {
    if !force1(k, sigma, a)? {
        return Ok(true);
    }
    for q in k.frame.poset.cone(sigma.level) {
        if !force1(k, &sigma.restrict(&k.frame.poset, q), a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every interpretation at `p` of the free variables of `a`, second-order
/// values drawn from `families` (empty when an arity is missing).
pub fn interps_at(
    frame: &Frame,
    families: &BTreeMap<usize, Vec<Vec<Family>>>,
    a: &Formula,
    p: usize,
) -> Vec<KInterp> {
    let fv = a.free_vars();
    let mut out = vec![KInterp::at(p)];
    for x in &fv.first {
        out = out
            .into_iter()
            .flat_map(|s| frame.domains[p].iter().map(move |d| s.clone().with1(*x, *d)))
            .collect();
    }
    for x in &fv.second {
        let Some(fs) = families.get(&x.arity) else {
            return Vec::new();
        };
        out = out
            .into_iter()
            .flat_map(|s| fs[p].iter().map(move |f| s.clone().with2(*x, f.clone())))
            .collect();
    }
    out
}

/// `K ⊩ A`: forced at every point under every interpretation there.
pub fn valid2(k: &KripkeModel2, a: &Formula) -> Result<bool, EvalError> {
    for x in &a.free_vars().second {
        if !k.families.contains_key(&x.arity) {
            return Err(EvalError::MissingRange(x.arity));
        }
    }
    for p in 0..k.frame.poset.len() {
        for s in interps_at(&k.frame, &k.families, a, p) {
            if !force2(k, &s, a)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn valid1(k: &KripkeModel1, a: &Formula) -> Result<bool, EvalError> {
    for p in 0..k.frame.poset.len() {
        for s in interps_at(&k.frame, &BTreeMap::new(), a, p) {
            if !force1(k, &s, a)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::{rev_kinterp, rev_kmodel, Poset};
    use crate::syntax::parse_formula;

    fn two_point(rel_at_top: bool) -> KripkeModel1 {
        let frame = Frame::canonical(Poset::chain(2), vec![vec![0], vec![0]], &[]).unwrap();
        let top = if rel_at_top { Relation::from_codes(1, [0]) } else { Relation::empty(1) };
        let mut rels = BTreeMap::new();
        rels.insert(0, vec![Relation::empty(1), top]);
        KripkeModel1::new(frame, rels).unwrap()
    }

    #[test]
    fn excluded_middle_fails_intuitionistically() {
        let k = two_point(true);
        let a = parse_formula("forall x0. (Ap0(x0) \\/ (Ap0(x0) -> bot))").unwrap();
        assert!(!force1(&k, &KInterp::at(0), &a).unwrap());
        assert!(force1(&k, &KInterp::at(1), &a).unwrap());
        assert!(!valid1(&k, &a).unwrap());
        let nn = parse_formula("forall x0. (((Ap0(x0) \\/ (Ap0(x0) -> bot)) -> bot) -> bot)").unwrap();
        assert!(valid1(&k, &nn).unwrap());
    }

    #[test]
    fn translation_preserves_forcing_on_an_example() {
        let k = two_point(true);
        let r = rev_kmodel(&k);
        let a1 = parse_formula("(Ap0(x0) \\/ (Ap0(x0) -> bot))").unwrap();
        let a2 = crate::coding::rev(&a1).unwrap();
        let s = KInterp::at(0).with1(Var1(0), 0);
        assert_eq!(
            force1(&k, &s, &a1).unwrap(),
            force2(&r, &rev_kinterp(&k, &s), &a2).unwrap()
        );
    }

    #[test]
    fn second_order_monotone() {
        let k = rev_kmodel(&two_point(true));
        let a = parse_formula("forall X^0_0. (X^0_0 \\/ (X^0_0 -> bot))").unwrap();
        assert!(!force2(&k, &KInterp::at(0), &a).unwrap());
        assert!(force2(&k, &KInterp::at(1), &a).unwrap());
        let b = parse_formula("exists X^0_0. X^0_0").unwrap();
        assert!(!force2(&k, &KInterp::at(0), &b).unwrap());
    }

    #[test]
    fn rejects_bad_interpretations() {
        let k = two_point(false);
        let a = parse_formula("Ap0(x0)").unwrap();
        assert!(matches!(force1(&k, &KInterp::at(0), &a), Err(EvalError::Unbound(_))));
        assert!(matches!(
            force1(&k, &KInterp::at(0).with1(Var1(0), 3), &a),
            Err(EvalError::BadElement(3))
        ));
        assert!(matches!(force1(&k, &KInterp::at(5), &parse_formula("bot").unwrap()), Err(EvalError::BadPoint(5))));
    }
}
