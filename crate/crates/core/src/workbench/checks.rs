//! Bounded checks of the translation lemmas over explicit stocks.
//!
//! Each check returns a [`Tally`] of the cases examined and the failures
//! found; Kripke checks also record, in a separate tally, that forcing
//! persists upward for every formula and interpretation they exercise.

use std::collections::BTreeMap;

use rand::Rng;

use crate::classical::{self, eval1, eval2, interps_for, rev_interp, rev_model, ClassicalModel1, ClassicalModel2};
use crate::coding::{rev, sc1_instance, sc2_instance, star, SchemaInstance};
use crate::deduction::{check, prove_idempotent, Logic, Proof, Sequent};
use crate::kripke::{
    self, encode_and, encode_exists, encode_or, force1, force2, interps_at, monotone1, monotone2, rev_kinterp,
    rev_kmodel, KripkeModel1, KripkeModel2,
};
use crate::stock::{self, FormulaShape};
use crate::syntax::{alpha_eq, Abstraction, Binder, Formula, Subst, Term, Var1, Var2};

/// Cases examined and failures found by a check. Only the first few
/// failures are kept verbatim.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub cases: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

const KEPT: usize = 5;

impl Tally {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEPT {
                self.failures.push(describe());
            }
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < KEPT {
                self.failures.push(f);
            }
        }
    }

    pub fn summary(&self) -> String {
        if self.ok() {
            format!("{} cases, 0 failures", self.cases)
        } else {
            format!("{} cases, {} failures; first: {}", self.cases, self.failed, self.failures[0])
        }
    }
}

fn same(a: Result<bool, classical::EvalError>, b: Result<bool, classical::EvalError>) -> Result<bool, String> {
    match (a, b) {
        (Ok(x), Ok(y)) => Ok(x == y),
        (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
    }
}

fn record_same(
    t: &mut Tally,
    a: Result<bool, classical::EvalError>,
    b: Result<bool, classical::EvalError>,
    describe: impl Fn() -> String,
) {
    match same(a, b) {
        Ok(ok) => t.record(ok, describe),
        Err(e) => t.record(false, || format!("{}: {e}", describe())),
    }
}

/// `prove_idempotent(A)` passes the kernel and concludes `rev(A*) ≡ A`.
pub fn idempotent_proofs(formulas: &[Formula]) -> Tally {
    let mut t = Tally::default();
    for a in formulas {
        let p = prove_idempotent(a, Logic::Intuitionistic);
        let expected = Formula::iff(rev(&star(a).expect("pure")).expect("pure"), a.clone());
        let verdict = check(&p);
        t.record(verdict.is_ok() && alpha_eq(p.concl(), &expected), || match verdict {
            Err(e) => format!("{a}: {e}"),
            Ok(()) => format!("{a}: concluded {}", p.concl()),
        });
    }
    t
}

/// `rev(A*)` and `A` take the same value under every interpretation of
/// every model.
pub fn idempotent_classical(formulas: &[Formula], models: &[ClassicalModel2]) -> Tally {
    let mut t = Tally::default();
    for a in formulas {
        let r = rev(&star(a).expect("pure")).expect("pure");
        let both = Formula::and(a.clone(), r.clone());
        for (i, m) in models.iter().enumerate() {
            for s in interps_for(&both, m.size(), &m.ranges) {
                record_same(&mut t, eval2(m, &s, a), eval2(m, &s, &r), || format!("{a} in model {i}"));
            }
        }
    }
    t
}

/// Forcing of `a` and `b` agrees at every point under every
/// interpretation; both are checked for monotonicity.
fn agree_forcing2(t: &mut Tally, mono: &mut Tally, k: &KripkeModel2, a: &Formula, b: &Formula, label: &dyn Fn() -> String) {
    let both = Formula::and(a.clone(), b.clone());
    for p in 0..k.frame.poset.len() {
        for s in interps_at(&k.frame, &k.families, &both, p) {
            record_same(t, force2(k, &s, a), force2(k, &s, b), || format!("{} at {p}", label()));
            for f in [a, b] {
                let m = monotone2(k, &s, f);
                mono.record(m == Ok(true), || format!("{f} at {p}: {m:?}"));
            }
        }
    }
}

pub fn idempotent_kripke(formulas: &[Formula], models: &[KripkeModel2], mono: &mut Tally) -> Tally {
    let mut t = Tally::default();
    for a in formulas {
        let r = rev(&star(a).expect("pure")).expect("pure");
        for (i, k) in models.iter().enumerate() {
            agree_forcing2(&mut t, mono, k, a, &r, &|| format!("{a} in model {i}"));
        }
    }
    t
}

/// A uniformly drawn interpretation of the free variables of `a`, or `None`
/// when the model lacks a range for one of its arities.
fn sample_interp(r: &mut rand_chacha::ChaCha8Rng, m: &ClassicalModel2, a: &Formula) -> Option<classical::Interp> {
    let fv = a.free_vars();
    let mut s = classical::Interp::new();
    for x in fv.first {
        s = s.with1(x, r.gen_range(0..m.size()));
    }
    for x in fv.second {
        let rs = m.ranges.get(&x.arity)?;
        s = s.with2(x, rs[r.gen_range(0..rs.len())].clone());
    }
    Some(s)
}

fn sample_kinterp(r: &mut rand_chacha::ChaCha8Rng, k: &KripkeModel2, a: &Formula) -> Option<kripke::KInterp> {
    let p = r.gen_range(0..k.frame.poset.len());
    let fv = a.free_vars();
    let mut s = kripke::KInterp::at(p);
    let dom = &k.frame.domains[p];
    for x in fv.first {
        s = s.with1(x, *dom.get(r.gen_range(0..dom.len().max(1)))?);
    }
    for x in fv.second {
        let fs = &k.families.get(&x.arity)?[p];
        s = s.with2(x, fs.get(r.gen_range(0..fs.len().max(1)))?.clone());
    }
    Some(s)
}

/// As [`idempotent_classical`], with `per_model` seeded interpretations per
/// formula and model instead of all of them.
pub fn idempotent_classical_sampled(formulas: &[Formula], models: &[ClassicalModel2], seed: u64, per_model: usize) -> Tally {
    let mut t = Tally::default();
    let mut rng = stock::rng(seed);
    for a in formulas {
        let r = rev(&star(a).expect("pure")).expect("pure");
        for (i, m) in models.iter().enumerate() {
            for _ in 0..per_model {
                match sample_interp(&mut rng, m, a) {
                    Some(s) => record_same(&mut t, eval2(m, &s, a), eval2(m, &s, &r), || format!("{a} in model {i}")),
                    None => t.record(false, || format!("{a}: model {i} lacks an arity")),
                }
            }
        }
    }
    t
}

/// As [`idempotent_kripke`], with `per_model` seeded interpretations at
/// random points.
pub fn idempotent_kripke_sampled(
    formulas: &[Formula],
    models: &[KripkeModel2],
    seed: u64,
    per_model: usize,
    mono: &mut Tally,
) -> Tally {
    let mut t = Tally::default();
    let mut rng = stock::rng(seed);
    for a in formulas {
        let r = rev(&star(a).expect("pure")).expect("pure");
        for (i, k) in models.iter().enumerate() {
            for _ in 0..per_model {
                let Some(s) = sample_kinterp(&mut rng, k, a) else {
                    t.record(false, || format!("{a}: model {i} lacks an arity"));
                    continue;
                };
                record_same(&mut t, force2(k, &s, a), force2(k, &s, &r), || format!("{a} in model {i} at {}", s.level));
                for f in [a, &r] {
                    let m = monotone2(k, &s, f);
                    mono.record(m == Ok(true), || format!("{f} in model {i} at {}: {m:?}", s.level));
                }
            }
        }
    }
    t
}

fn covers(relations: &BTreeMap<usize, impl Sized>, a: &Formula) -> bool {
    a.arities().iter().all(|n| relations.contains_key(n))
}

/// `M, σ ⊨ A*` iff `rev(M), rev(σ) ⊨ A`, for every `σ`.
pub fn csemone(models: &[ClassicalModel1], formulas: &[Formula]) -> Tally {
    let mut t = Tally::default();
    for (i, m) in models.iter().enumerate() {
        let m2 = rev_model(m);
        for a in formulas {
            csemone_case(&mut t, m, &m2, a, None, i);
        }
    }
    t
}

fn csemone_case(t: &mut Tally, m: &ClassicalModel1, m2: &ClassicalModel2, a: &Formula, only: Option<&classical::Interp>, i: usize) {
    if !covers(&m.relations, a) {
        t.record(false, || format!("{a}: model {i} lacks an arity"));
        return;
    }
    let s = star(a).expect("pure");
    let interps = match only {
        Some(s) => vec![s.clone()],
        None => interps_for(&s, m.size(), &BTreeMap::new()),
    };
    for sigma in interps {
        record_same(t, eval1(m, &sigma, &s), eval2(m2, &rev_interp(m, &sigma), a), || {
            format!("{a} in model {i} under {:?}", sigma.fo)
        });
    }
}

/// `count` random cases: a model with `3 ≤ |D| ≤ 4`, random tables and
/// relations up to arity 2, a random formula of depth at most 3 and a
/// random interpretation.
pub fn csemone_random(seed: u64, count: usize) -> Tally {
    let mut r = stock::rng(seed);
    let shape = FormulaShape::default();
    let mut t = Tally::default();
    for i in 0..count {
        let m = stock::random_m1(&mut r, 3..=4, 2);
        let a = stock::random_formula(&mut r, &shape);
        let sigma = stock::random_interp(&mut r, &star(&a).expect("pure"), m.size());
        csemone_case(&mut t, &m, &rev_model(&m), &a, Some(&sigma), i);
    }
    t
}

/// `K, σ, p ⊩ A*` iff `rev(K), rev(σ), p ⊩ A`, at every point and for
/// every `σ` there.
pub fn isemone(models: &[KripkeModel1], formulas: &[Formula], mono: &mut Tally) -> Tally {
    let mut t = Tally::default();
    for (i, k) in models.iter().enumerate() {
        let k2 = rev_kmodel(k);
        for a in formulas {
            isemone_case(&mut t, mono, k, &k2, a, None, i);
        }
    }
    t
}

fn isemone_case(
    t: &mut Tally,
    mono: &mut Tally,
    k: &KripkeModel1,
    k2: &KripkeModel2,
    a: &Formula,
    only: Option<&kripke::KInterp>,
    i: usize,
) {
    if !covers(&k.relations, a) {
        t.record(false, || format!("{a}: model {i} lacks an arity"));
        return;
    }
    let s = star(a).expect("pure");
    let interps = match only {
        Some(s) => vec![s.clone()],
        None => (0..k.frame.poset.len())
            .flat_map(|p| interps_at(&k.frame, &BTreeMap::new(), &s, p))
            .collect(),
    };
    for sigma in interps {
        let rs = rev_kinterp(k, &sigma);
        record_same(t, force1(k, &sigma, &s), force2(k2, &rs, a), || {
            format!("{a} in model {i} at {} under {:?}", sigma.level, sigma.fo)
        });
        let m1 = monotone1(k, &sigma, &s);
        mono.record(m1 == Ok(true), || format!("{s} in model {i} at {}: {m1:?}", sigma.level));
        let m2 = monotone2(k2, &rs, a);
        mono.record(m2 == Ok(true), || format!("{a} in rev of model {i} at {}: {m2:?}", sigma.level));
    }
}

/// `count` random cases over frames with at most four points and domains
/// of size at most two, relations up to arity 2.
pub fn isemone_random(seed: u64, count: usize, mono: &mut Tally) -> Tally {
    let mut r = stock::rng(seed);
    let frames = stock::frames(&kripke::rooted_posets(4), 2);
    let shape = FormulaShape::default();
    let mut t = Tally::default();
    for i in 0..count {
        let frame = &frames[r.gen_range(0..frames.len())];
        let k = stock::random_km1(&mut r, frame, 2);
        let a = stock::random_formula(&mut r, &shape);
        let s = star(&a).expect("pure");
        let p = r.gen_range(0..frame.poset.len());
        let mut sigma = kripke::KInterp::at(p);
        for x in s.free_vars().first {
            let d = &frame.domains[p];
            sigma = sigma.with1(x, d[r.gen_range(0..d.len())]);
        }
        isemone_case(&mut t, mono, &k, &rev_kmodel(&k), &a, Some(&sigma), i);
    }
    t
}

/// Per instance: `M ⊨ SC1-instance` iff `rev(M) ⊨ SC2-instance`; and
/// per model, satisfaction of the whole bounded schema agrees.
pub fn csemtwo(models: &[ClassicalModel1], instances: &[SchemaInstance]) -> Tally {
    let mut t = Tally::default();
    let pairs: Vec<(Formula, Formula)> = instances.iter().map(|s| (sc1_instance(s), sc2_instance(s))).collect();
    let empty = classical::Interp::new();
    for (i, m) in models.iter().enumerate() {
        let m2 = rev_model(m);
        let (mut all1, mut all2) = (true, true);
        for (one, two) in &pairs {
            let (a, b) = (eval1(m, &empty, one), eval2(&m2, &empty, two));
            all1 &= a == Ok(true);
            all2 &= b == Ok(true);
            record_same(&mut t, a, b, || format!("{two} in model {i}"));
        }
        t.record(all1 == all2, || format!("model {i}: bounded SC1 {all1}, bounded SC2 {all2}"));
    }
    t
}

pub fn isemtwo(models: &[KripkeModel1], instances: &[SchemaInstance], mono: &mut Tally) -> Tally {
    let mut t = Tally::default();
    let pairs: Vec<(Formula, Formula)> = instances.iter().map(|s| (sc1_instance(s), sc2_instance(s))).collect();
    for (i, k) in models.iter().enumerate() {
        let k2 = rev_kmodel(k);
        let (mut all1, mut all2) = (true, true);
        for (one, two) in &pairs {
            for p in 0..k.frame.poset.len() {
                let s = kripke::KInterp::at(p);
                let (a, b) = (force1(k, &s, one), force2(&k2, &s, two));
                all1 &= a == Ok(true);
                all2 &= b == Ok(true);
                record_same(&mut t, a, b, || format!("{two} in model {i} at {p}"));
                let m = monotone2(&k2, &s, two);
                mono.record(m == Ok(true), || format!("{two} in model {i} at {p}: {m:?}"));
            }
        }
        t.record(all1 == all2, || format!("model {i}: bounded SC1 {all1}, bounded SC2 {all2}"));
    }
    t
}

/// Arguments for the encoding check: `⊥`, two propositional variables and
/// a unary atom.
pub fn encoding_atoms() -> Vec<Formula> {
    vec![
        Formula::Bottom,
        Formula::Pred(Var2::new(0, 0), vec![]),
        Formula::Pred(Var2::new(0, 1), vec![]),
        Formula::Pred(Var2::new(1, 0), vec![Term::var(0)]),
    ]
}

/// The encodings of `∧`, `∨` and `∃` force exactly like the native
/// connectives, for every pair of atoms and every binder `x0`, `X^0_0`,
/// `X^1_0`.
pub fn encodings(models: &[KripkeModel2], mono: &mut Tally) -> Tally {
    let mut t = Tally::default();
    let atoms = encoding_atoms();
    let binders = [
        Binder::First(Var1(0)),
        Binder::Second(Var2::new(0, 0)),
        Binder::Second(Var2::new(1, 0)),
    ];
    for (i, k) in models.iter().enumerate() {
        for a in &atoms {
            for b in &atoms {
                let and = Formula::and(a.clone(), b.clone());
                agree_forcing2(&mut t, mono, k, &encode_and(a, b), &and, &|| format!("{and} in model {i}"));
                let or = Formula::or(a.clone(), b.clone());
                agree_forcing2(&mut t, mono, k, &encode_or(a, b), &or, &|| format!("{or} in model {i}"));
            }
            for v in binders {
                let ex = Formula::exists(v, a.clone());
                agree_forcing2(&mut t, mono, k, &encode_exists(v, a), &ex, &|| format!("{ex} in model {i}"));
            }
        }
    }
    t
}

/// A random L1-pure formula whose atom heads are mostly variables.
pub fn random_l1_formula(r: &mut rand_chacha::ChaCha8Rng, depth: usize) -> Formula {
    let var = |r: &mut rand_chacha::ChaCha8Rng| Term::var(r.gen_range(0..3));
    if depth == 0 || r.gen_bool(0.2) {
        let n = r.gen_range(0..=2);
        let head = match r.gen_range(0..6) {
            0 => Term::constant("a"),
            1 => Term::app("f", vec![var(r)]),
            _ => var(r),
        };
        let args = (0..n).map(|_| var(r)).collect();
        return Formula::Ap(head, args);
    }
    let l = random_l1_formula(r, depth - 1);
    match r.gen_range(0..5) {
        0 => Formula::implies(l, random_l1_formula(r, depth - 1)),
        1 => Formula::and(l, random_l1_formula(r, depth - 1)),
        2 => Formula::or(l, random_l1_formula(r, depth - 1)),
        3 => Formula::forall(Binder::First(Var1(r.gen_range(0..3))), l),
        _ => Formula::exists(Binder::First(Var1(r.gen_range(0..3))), l),
    }
}

/// The right-hand side of the substitution exchange law: `rev(F)` with
/// every `φ_n⁻¹(x)` replaced by `φ_n⁻¹(z)` (when `t` is a variable `z`) or
/// by `λx⃗.⊥` (otherwise), simultaneously with `x := t`.
pub fn exchanged(f: &Formula, x: Var1, t: &Term) -> Formula {
    let r = rev(f).expect("L1-pure");
    let mut s = Subst::new();
    for y in r.free_vars().second.into_iter().filter(|y| y.index == x.0) {
        match t.as_var() {
            Some(z) => s.insert_var2(y, Var2::new(y.arity, z.0)),
            None => {
                let params = (1..=y.arity as u32).map(Var1).collect();
                s.insert_abs(y, Abstraction::new(params, Formula::Bottom).expect("distinct parameters"));
            }
        }
    }
    s.insert_term(x, t.clone());
    s.apply(&r)
}

/// `rev(F[x:=t])` is alpha-equal to [`exchanged`] for random `F`, `x` and
/// `t` (a variable or an application, half the time each).
pub fn substitution_exchange(seed: u64, count: usize) -> Tally {
    let mut r = stock::rng(seed);
    let mut t = Tally::default();
    for _ in 0..count {
        let f = random_l1_formula(&mut r, 3);
        let x = Var1(r.gen_range(0..3));
        let term = if r.gen_bool(0.5) {
            Term::var(r.gen_range(0..4))
        } else {
            Term::app("f", vec![Term::var(r.gen_range(0..4))])
        };
        let lhs = rev(&f.subst_term(x, &term)).expect("L1-pure");
        let rhs = exchanged(&f, x, &term);
        t.record(alpha_eq(&lhs, &rhs), || format!("{f} [{x} := {term}]: {lhs} vs {rhs}"));
    }
    t
}

/// `Γ ⊢ C` read as the formula `(γ1 ∧ … ∧ γn) → C`.
pub fn sequent_formula(s: &Sequent) -> Formula {
    match s.hyps.iter().cloned().reduce(Formula::and) {
        None => s.concl.clone(),
        Some(h) => Formula::implies(h, s.concl.clone()),
    }
}

/// Semantic stocks against which proofs are checked: full second-order
/// models of both kinds and first-order models of both kinds.
#[derive(Clone, Debug, Default)]
pub struct SoundnessModels {
    pub classical2: Vec<ClassicalModel2>,
    pub kripke2: Vec<KripkeModel2>,
    pub classical1: Vec<ClassicalModel1>,
    pub kripke1: Vec<KripkeModel1>,
}

impl SoundnessModels {
    /// Full classical models with `|D| ≤ 2` and arities up to 2; full
    /// Kripke models on posets with at most three points and domains of
    /// size at most two, keeping those whose families stay under
    /// `family_cap` per point; random first-order models of both kinds.
    pub fn standard(seed: u64, family_cap: usize) -> Self {
        let mut kripke2 = Vec::new();
        for frame in stock::frames(&kripke::rooted_posets(3), 2) {
            if let Ok(k) = kripke::full_kmodel(frame, 2, family_cap) {
                kripke2.push(k);
            }
        }
        let mut r = stock::rng(seed);
        let classical1 = (0..24).map(|_| stock::random_m1(&mut r, 1..=3, 2)).collect();
        let frames = stock::frames(&kripke::rooted_posets(3), 2);
        let kripke1 = frames.iter().map(|f| stock::random_km1(&mut r, f, 2)).collect();
        SoundnessModels {
            classical2: stock::full_classical_stock(2, 2),
            kripke2,
            classical1,
            kripke1,
        }
    }
}

/// Which interpretations a second-order check visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    All,
    /// `per_model` seeded interpretations for each formula and model.
    Sampled { seed: u64, per_model: usize },
}

/// The sequent of every proof holds in every model of the matching
/// semantics: classical models always, Kripke models for intuitionistic
/// proofs. First-order models are always checked under every
/// interpretation.
pub fn soundness(proofs: &[Proof], models: &SoundnessModels, coverage: Coverage, mono: &mut Tally) -> Tally {
    use crate::deduction::Order;
    let mut t = Tally::default();
    let mut rng = stock::rng(match coverage {
        Coverage::All => 0,
        Coverage::Sampled { seed, .. } => seed,
    });
    for p in proofs {
        let f = sequent_formula(&p.seq);
        let describe = |what: &str, e: String| format!("{} in {what}: {e}", p.seq);
        match (p.seq.order, coverage) {
            (Order::Second, Coverage::All) => {
                for m in &models.classical2 {
                    let v = classical::valid2(m, &f);
                    t.record(v == Ok(true), || describe("a full classical model", format!("{v:?}")));
                }
                if p.seq.logic == Logic::Intuitionistic {
                    for k in &models.kripke2 {
                        for q in 0..k.frame.poset.len() {
                            for s in interps_at(&k.frame, &k.families, &f, q) {
                                let v = force2(k, &s, &f);
                                t.record(v == Ok(true), || describe("a full Kripke model", format!("{v:?}")));
                                let m = monotone2(k, &s, &f);
                                mono.record(m == Ok(true), || describe("a full Kripke model", format!("{m:?}")));
                            }
                        }
                    }
                }
            }
            (Order::Second, Coverage::Sampled { per_model, .. }) => {
                for m in &models.classical2 {
                    for _ in 0..per_model {
                        let v = sample_interp(&mut rng, m, &f).map(|s| eval2(m, &s, &f));
                        t.record(matches!(v, Some(Ok(true))), || describe("a full classical model", format!("{v:?}")));
                    }
                }
                if p.seq.logic == Logic::Intuitionistic {
                    for k in &models.kripke2 {
                        for _ in 0..per_model {
                            let Some(s) = sample_kinterp(&mut rng, k, &f) else {
                                t.record(false, || describe("a full Kripke model", "missing arity".into()));
                                continue;
                            };
                            let v = force2(k, &s, &f);
                            t.record(v == Ok(true), || describe("a full Kripke model", format!("{v:?}")));
                            let m = monotone2(k, &s, &f);
                            mono.record(m == Ok(true), || describe("a full Kripke model", format!("{m:?}")));
                        }
                    }
                }
            }
            (Order::First, _) => {
                for m in &models.classical1 {
                    let v = classical::valid1(m, &f);
                    t.record(v == Ok(true), || describe("a classical model", format!("{v:?}")));
                }
                if p.seq.logic == Logic::Intuitionistic {
                    for k in &models.kripke1 {
                        let v = kripke::valid1(k, &f);
                        t.record(v == Ok(true), || describe("a Kripke model", format!("{v:?}")));
                    }
                }
            }
        }
    }
    t
}

/// The universally quantified Peirce law holds in every model.
pub fn peirce_classical(models: &[ClassicalModel2]) -> Tally {
    let p = crate::syntax::parse_formula("forall X^0_0. forall X^0_1. (((X^0_0 -> X^0_1) -> X^0_0) -> X^0_0)")
        .expect("formula");
    let mut t = Tally::default();
    for (i, m) in models.iter().enumerate() {
        let v = classical::valid2(m, &p);
        t.record(v == Ok(true), || format!("model {i}: {v:?}"));
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn exchange_examples() {
        let f = parse_formula("Ap1(x0, x1) -> Ap2(x0, x1, x1) \\/ Ap1(x1, x0)").unwrap();
        let z = Term::var(2);
        assert!(alpha_eq(
            &exchanged(&f, Var1(0), &z),
            &parse_formula("X^1_2(x1) -> X^2_2(x1, x1) \\/ X^1_1(x2)").unwrap()
        ));
        let t = crate::syntax::parse_term("f(a)").unwrap();
        assert!(alpha_eq(
            &exchanged(&f, Var1(0), &t),
            &parse_formula("bot -> bot \\/ X^1_1(f(a))").unwrap()
        ));
        assert!(substitution_exchange(1, 300).ok());
    }

    #[test]
    fn small_checks_pass() {
        let mut mono = Tally::default();
        let formulas = stock::enumerated(&[0, 1]);
        let some: Vec<Formula> = formulas.iter().step_by(97).cloned().collect();
        let t = csemone(&stock::classical_m1_stock(1, 1)[..20], &some);
        assert!(t.ok(), "{}", t.summary());
        let t = csemone_random(2, 50);
        assert!(t.ok(), "{}", t.summary());
        let t = isemone_random(3, 50, &mut mono);
        assert!(t.ok(), "{}", t.summary());
        assert!(mono.ok());
        let sequent = Sequent {
            hyps: vec![parse_formula("X^0_0").unwrap(), parse_formula("X^0_1").unwrap()],
            concl: parse_formula("X^0_0").unwrap(),
            logic: Logic::Intuitionistic,
            order: crate::deduction::Order::Second,
        };
        assert_eq!(sequent_formula(&sequent).to_string(), "((X^0_0 /\\ X^0_1) -> X^0_0)");
    }
}
