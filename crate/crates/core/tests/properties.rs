use proptest::prelude::*;

use sologic::classical::{self, eval1, eval2, parse_model1, rev_interp, rev_model, write_model1, Interp};
use sologic::coding::{rev, star};
use sologic::deduction::{check, parse_proof, prove_idempotent, write_proof, Logic, Rule};
use sologic::kripke::{self, force1, force2, monotone1, rev_kinterp, rev_kmodel, KInterp};
use sologic::stock;
use sologic::syntax::{alpha_eq, parse_formula, Binder, Formula, Term, Var1, Var2};
use sologic::workbench::search::{search, SearchBounds, Semantics};

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![(0u32..3).prop_map(Term::var), Just(Term::constant("a"))];
    leaf.prop_recursive(2, 4, 1, |t| t.prop_map(|t| Term::app("f", vec![t])))
}

fn var2() -> impl Strategy<Value = Var2> {
    (0usize..3, 0u32..3).prop_map(|(n, i)| Var2::new(n, i))
}

fn binder() -> impl Strategy<Value = Binder> {
    prop_oneof![(0u32..3).prop_map(|i| Binder::First(Var1(i))), var2().prop_map(Binder::Second)]
}

fn connect(inner: impl Strategy<Value = Formula> + Clone, q: impl Strategy<Value = Binder>) -> impl Strategy<Value = Formula> {
    prop_oneof![
        (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
        (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
        (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
        (q, any::<bool>(), inner).prop_map(|(v, all, a)| if all { Formula::forall(v, a) } else { Formula::exists(v, a) }),
    ]
}

/// L2-pure formulas of depth at most 3 over `x0..x2` and `X^n_i`, `n ≤ 2`.
fn l2() -> impl Strategy<Value = Formula> {
    let atom = prop_oneof![
        Just(Formula::Bottom),
        var2().prop_flat_map(|x| proptest::collection::vec(term(), x.arity).prop_map(move |args| Formula::Pred(x, args))),
    ];
    atom.prop_recursive(3, 24, 2, |inner| connect(inner, binder()))
}

/// L1-pure formulas over `Ap_n`, `n ≤ 2`.
fn l1() -> impl Strategy<Value = Formula> {
    let atom = prop_oneof![
        Just(Formula::Bottom),
        (term(), proptest::collection::vec(term(), 0..3)).prop_map(|(h, args)| Formula::Ap(h, args)),
    ];
    atom.prop_recursive(3, 24, 2, |inner| connect(inner, (0u32..3).prop_map(|i| Binder::First(Var1(i)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printing_then_parsing_is_identity(f in prop_oneof![l2(), l1()]) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn alpha_equivalence_survives_bound_renaming(f in l2()) {
        prop_assert!(alpha_eq(&f, &f));
        if let Formula::Forall(Binder::First(x), body) = &f {
            let fresh = Var1(50);
            let renamed = Formula::forall(Binder::First(fresh), body.subst_term(*x, &Term::Var(fresh)));
            prop_assert!(alpha_eq(&f, &renamed));
        }
    }

    #[test]
    fn star_lands_in_l1_and_rev_in_l2(f in l2(), g in l1()) {
        let s = star(&f).unwrap();
        prop_assert!(s.is_l1_pure());
        if f.is_closed() {
            prop_assert!(s.is_closed());
        }
        let r = rev(&g).unwrap();
        prop_assert!(r.is_l2_pure());
    }

    #[test]
    fn star_keeps_free_first_order_variables(f in l2()) {
        let s = star(&f).unwrap();
        let fv = s.free_vars().first;
        for x in f.free_vars().first {
            prop_assert!(fv.contains(&x));
        }
    }

    #[test]
    fn normalize_vacuous_is_idempotent(f in prop_oneof![l2(), l1()]) {
        let n = f.normalize_vacuous();
        prop_assert_eq!(n.normalize_vacuous(), n.clone());
        prop_assert_eq!(n.free_vars(), f.free_vars());
    }

    #[test]
    fn substituting_an_absent_variable_changes_nothing(f in l2(), t in term()) {
        let x = Var1(40);
        prop_assert!(alpha_eq(&f.subst_term(x, &t), &f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn idempotent_proofs_check_and_round_trip(f in l2()) {
        let p = prove_idempotent(&f, Logic::Intuitionistic);
        prop_assert!(check(&p).is_ok());
        let back = parse_proof(&write_proof(&p)).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn classical_translation_lemma(seed in any::<u64>(), g in l1()) {
        let mut r = stock::rng(seed);
        let m = stock::random_m1(&mut r, 1..=3, 2);
        let a = rev(&g).unwrap();
        let s = star(&a).unwrap();
        let sigma = stock::random_interp(&mut r, &s, m.size());
        let m2 = rev_model(&m);
        prop_assert_eq!(eval1(&m, &sigma, &s), eval2(&m2, &rev_interp(&m, &sigma), &a));
        prop_assert_eq!(parse_model1(&write_model1(&m)).unwrap(), m);
    }

    #[test]
    fn kripke_translation_lemma_and_monotonicity(seed in any::<u64>(), g in l1()) {
        let mut r = stock::rng(seed);
        let frames = stock::frames(&kripke::rooted_posets(3), 2);
        let frame = &frames[(seed % frames.len() as u64) as usize];
        let k = stock::random_km1(&mut r, frame, 2);
        let a = rev(&g).unwrap();
        let s = star(&a).unwrap();
        let k2 = rev_kmodel(&k);
        for p in 0..frame.poset.len() {
            let mut sigma = KInterp::at(p);
            let dom = &frame.domains[p];
            for (i, x) in s.free_vars().first.into_iter().enumerate() {
                sigma = sigma.with1(x, dom[(seed as usize + i) % dom.len()]);
            }
            prop_assert_eq!(force1(&k, &sigma, &s), force2(&k2, &rev_kinterp(&k, &sigma), &a));
            prop_assert_eq!(monotone1(&k, &sigma, &s), Ok(true));
        }
    }
}

#[test]
fn stock_proofs_round_trip_and_mutations_are_rejected() {
    let bot = Formula::Bottom;
    for n in stock::second_order_proofs().into_iter().chain(stock::first_order_proofs()) {
        let text = write_proof(&n.proof);
        assert_eq!(parse_proof(&text).unwrap(), n.proof, "{}", n.name);
        let mut wrong = n.proof.clone();
        if alpha_eq(&wrong.seq.concl, &bot) || wrong.rule == Rule::BotE {
            continue;
        }
        wrong.seq.concl = bot.clone();
        assert!(check(&wrong).is_err(), "{} accepted with conclusion bot", n.name);
    }
}

#[test]
fn search_is_deterministic() {
    let f = parse_formula("forall X^0_0. (X^0_0 \\/ (X^0_0 -> bot))").unwrap();
    let b: SearchBounds = "points=3,domain=1,arity=0".parse().unwrap();
    let first = search(&f, &b, Semantics::Kripke, false).unwrap();
    assert_eq!(search(&f, &b, Semantics::Kripke, false).unwrap(), first);
}

#[test]
fn classical_countermodels_reproduce() {
    let f = parse_formula("exists X^1_0. forall x0. (X^1_0(x0) <-> (X^1_1(x0) -> bot))").unwrap();
    let b: SearchBounds = "domain=2,arity=1,families=1".parse().unwrap();
    let c = search(&f, &b, Semantics::Classical, false).unwrap().countermodel.unwrap();
    let m = classical::parse_model2(&c.model).unwrap();
    let s: Interp = classical::parse_interp(&m.elems, &c.interp).unwrap();
    assert_eq!(eval2(&m, &s, &f), Ok(false));
}
