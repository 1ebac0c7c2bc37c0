//! Built-in stocks of formulas, models and proofs exercised by the bounded
//! checks and by `sologic paper-examples`.
//!
//! Everything random is drawn from a ChaCha generator seeded explicitly, so
//! a stock is a pure function of its parameters.

mod proofs;

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classical::{ClassicalModel1, ClassicalModel2, FnTables, Interp};
use crate::coding::enumerate_formulas;
use crate::kripke::{domain_configs, full_kmodel, monotone_families, Frame, KripkeModel1, KripkeModel2, Poset};
use crate::relation::{tuples_over, Elem, Relation};
use crate::syntax::{Binder, Formula, Term, Var1, Var2};

pub use proofs::{first_order_proofs, second_order_proofs, NamedProof};

pub const DEFAULT_SEED: u64 = 20_240_917;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The function symbols used by random formulas: a constant and a unary
/// function.
pub fn symbols() -> Vec<(String, usize)> {
    vec![("a".to_string(), 0), ("f".to_string(), 1)]
}

/// Every formula of depth at most 2 over `x0` and one predicate variable
/// `X^n_0` for each listed arity.
pub fn enumerated(arities: &[usize]) -> Vec<Formula> {
    let so: Vec<Var2> = arities.iter().map(|n| Var2::new(*n, 0)).collect();
    enumerate_formulas(&[Var1(0)], &so, 2)
}

/// Shape of random formulas.
#[derive(Clone, Copy, Debug)]
pub struct FormulaShape {
    pub max_depth: usize,
    pub max_arity: usize,
    /// Variables are drawn from indices `0..vars` at every sort and arity.
    pub vars: u32,
    /// Whether arguments may be `a` and `f(t)` besides variables.
    pub terms: bool,
}

impl Default for FormulaShape {
    fn default() -> Self {
        FormulaShape {
            max_depth: 3,
            max_arity: 2,
            vars: 3,
            terms: true,
        }
    }
}

fn random_term(rng: &mut ChaCha8Rng, shape: &FormulaShape, nest: usize) -> Term {
    if shape.terms && rng.gen_bool(0.2) {
        if nest == 0 || rng.gen_bool(0.5) {
            Term::constant("a")
        } else {
            Term::app("f", vec![random_term(rng, shape, nest - 1)])
        }
    } else {
        Term::var(rng.gen_range(0..shape.vars))
    }
}

fn random_binder(rng: &mut ChaCha8Rng, shape: &FormulaShape) -> Binder {
    let i = rng.gen_range(0..shape.vars);
    if rng.gen_bool(0.5) {
        Binder::First(Var1(i))
    } else {
        Binder::Second(Var2::new(rng.gen_range(0..=shape.max_arity), i))
    }
}

fn random_at(rng: &mut ChaCha8Rng, shape: &FormulaShape, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.15) {
        if rng.gen_bool(0.1) {
            return Formula::Bottom;
        }
        let x = Var2::new(rng.gen_range(0..=shape.max_arity), rng.gen_range(0..shape.vars));
        let args = (0..x.arity).map(|_| random_term(rng, shape, 1)).collect();
        return Formula::Pred(x, args);
    }
    match rng.gen_range(0..5) {
        0 => Formula::implies(random_at(rng, shape, depth - 1), random_at(rng, shape, depth - 1)),
        1 => Formula::and(random_at(rng, shape, depth - 1), random_at(rng, shape, depth - 1)),
        2 => Formula::or(random_at(rng, shape, depth - 1), random_at(rng, shape, depth - 1)),
        3 => Formula::forall(random_binder(rng, shape), random_at(rng, shape, depth - 1)),
        _ => Formula::exists(random_binder(rng, shape), random_at(rng, shape, depth - 1)),
    }
}

/// A random L2-pure formula of depth at most `shape.max_depth`.
pub fn random_formula(rng: &mut ChaCha8Rng, shape: &FormulaShape) -> Formula {
    random_at(rng, shape, shape.max_depth)
}

pub fn random_formulas(seed: u64, count: usize, shape: &FormulaShape) -> Vec<Formula> {
    let mut r = rng(seed);
    (0..count).map(|_| random_formula(&mut r, shape)).collect()
}

pub fn elem_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

/// All subsets of `D^(n+1)` for `|D| = size`, as `α_n` candidates.
fn all_relations(size: usize, n: usize) -> Vec<Relation> {
    crate::classical::powerset(size, n + 1)
}

/// First-order models with `|D| ≤ 2` and every choice of `α_0` and `α_1`,
/// followed by models with `|D| = 3`, every `α_0` and `alpha1_samples`
/// seeded choices of `α_1`. Function tables are the canonical ones.
pub fn classical_m1_stock(seed: u64, alpha1_samples: usize) -> Vec<ClassicalModel1> {
    let mut out = Vec::new();
    for size in 1..=2 {
        for a0 in all_relations(size, 0) {
            for a1 in all_relations(size, 1) {
                out.push(m1(size, [(0, a0.clone()), (1, a1)]));
            }
        }
    }
    let mut r = rng(seed);
    let all1 = all_relations(3, 1);
    for a0 in all_relations(3, 0) {
        for a1 in all1.choose_multiple(&mut r, alpha1_samples) {
            out.push(m1(3, [(0, a0.clone()), (1, a1.clone())]));
        }
    }
    out
}

fn m1(size: usize, rels: impl IntoIterator<Item = (usize, Relation)>) -> ClassicalModel1 {
    ClassicalModel1::new(
        elem_names(size),
        FnTables::canonical(size, symbols()),
        rels.into_iter().collect(),
    )
    .expect("stock models are valid")
}

pub fn random_relation(rng: &mut ChaCha8Rng, size: usize, arity: usize) -> Relation {
    let total = size.pow(arity as u32);
    Relation::from_codes(arity, (0..total).filter(|_| rng.gen_bool(0.5)))
}

pub fn random_tables(rng: &mut ChaCha8Rng, size: usize) -> FnTables {
    let mut t = FnTables::new(size);
    let all: Vec<Elem> = (0..size).collect();
    for (name, arity) in symbols() {
        t.declare(&name, arity);
        for args in tuples_over(&all, arity) {
            t.set(&name, &args, rng.gen_range(0..size));
        }
    }
    t
}

/// A first-order model with `|D|` drawn from `sizes`, random tables and
/// random `α_n` for every `n ≤ max_arity`.
pub fn random_m1(rng: &mut ChaCha8Rng, sizes: std::ops::RangeInclusive<usize>, max_arity: usize) -> ClassicalModel1 {
    let size = rng.gen_range(sizes);
    let fns = random_tables(rng, size);
    let relations = (0..=max_arity).map(|n| (n, random_relation(rng, size, n + 1))).collect();
    ClassicalModel1::new(elem_names(size), fns, relations).expect("random models are valid")
}

/// A random interpretation of the free variables of `a` in `m`.
pub fn random_interp(rng: &mut ChaCha8Rng, a: &Formula, size: usize) -> Interp {
    let mut s = Interp::new();
    for x in a.free_vars().first {
        s = s.with1(x, rng.gen_range(0..size));
    }
    s
}

/// Full second-order models with `1 ≤ |D| ≤ max_size`, ranges up to
/// `max_arity` and canonical tables.
pub fn full_classical_stock(max_size: usize, max_arity: usize) -> Vec<ClassicalModel2> {
    (1..=max_size)
        .map(|n| {
            ClassicalModel2::full(elem_names(n), FnTables::canonical(n, symbols()), max_arity)
                .expect("small full models fit the size guard")
        })
        .collect()
}

/// The two-point chain and the V-shaped three-point poset.
pub fn small_posets() -> Vec<Poset> {
    vec![
        Poset::chain(2),
        Poset::numbered(3, &[(0, 1), (0, 2)]).expect("the V is a rooted poset"),
    ]
}

/// Frames over `posets` with every domain configuration of size at most
/// `max_domain` and canonical tables.
pub fn frames(posets: &[Poset], max_domain: usize) -> Vec<Frame> {
    posets
        .iter()
        .flat_map(|p| {
            domain_configs(p, max_domain)
                .into_iter()
                .map(move |d| Frame::canonical(p.clone(), d, &symbols()).expect("configurations are valid"))
        })
        .collect()
}

/// Every first-order Kripke model on `frame` whose relations are exactly
/// `α_n` for `n` in `arities`, each an arbitrary increasing choice.
pub fn kripke_m1_models(frame: &Frame, arities: &[usize]) -> Vec<KripkeModel1> {
    let poset = &frame.poset;
    let mut choices: Vec<BTreeMap<usize, Vec<Relation>>> = vec![BTreeMap::new()];
    for &n in arities {
        let fams = monotone_families(poset, 0, &frame.domains, n + 1);
        choices = choices
            .into_iter()
            .flat_map(|c| {
                fams.iter().map(move |f| {
                    let mut c = c.clone();
                    c.insert(n, (0..poset.len()).map(|q| f.at(q).clone()).collect());
                    c
                })
            })
            .collect();
    }
    choices
        .into_iter()
        .map(|rels| KripkeModel1::new(frame.clone(), rels).expect("monotone choices are valid"))
        .collect()
}

/// A random increasing first-order Kripke model on `frame` with `α_n` for
/// every `n ≤ max_arity`.
pub fn random_km1(rng: &mut ChaCha8Rng, frame: &Frame, max_arity: usize) -> KripkeModel1 {
    let poset = &frame.poset;
    let u = frame.universe();
    let order = poset.linear_extension();
    let mut rels = BTreeMap::new();
    for n in 0..=max_arity {
        let mut at: Vec<Relation> = vec![Relation::empty(n + 1); poset.len()];
        for &q in &order {
            let mut r = Relation::empty(n + 1);
            for (p, below) in at.iter().enumerate() {
                if p != q && poset.leq(p, q) {
                    for c in below.codes() {
                        r.insert_code(c);
                    }
                }
            }
            for t in tuples_over(&frame.domains[q], n + 1) {
                if rng.gen_bool(0.3) {
                    r.insert_code(crate::relation::code(&t, u));
                }
            }
            at[q] = r;
        }
        rels.insert(n, at);
    }
    KripkeModel1::new(frame.clone(), rels).expect("random increasing relations are valid")
}

/// Full second-order Kripke models over every rooted poset with at most
/// `max_points` points and domains of size at most `max_domain`.
pub fn full_kripke_stock(max_points: usize, max_domain: usize, max_arity: usize) -> Vec<KripkeModel2> {
    frames(&crate::kripke::rooted_posets(max_points), max_domain)
        .into_iter()
        .map(|f| full_kmodel(f, max_arity, crate::kripke::DEFAULT_FAMILY_CAP).expect("small frames fit the cap"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_formulas_are_bounded_and_reproducible() {
        let shape = FormulaShape::default();
        let a = random_formulas(7, 200, &shape);
        assert_eq!(a, random_formulas(7, 200, &shape));
        for f in &a {
            assert!(f.depth() <= 3 && f.is_l2_pure());
            assert!(f.arities().iter().all(|n| *n <= 2));
        }
    }

    #[test]
    fn stock_sizes() {
        assert_eq!(classical_m1_stock(1, 2).len(), 2 * 2 + 4 * 16 + 8 * 2);
        let fs = frames(&small_posets(), 2);
        assert_eq!(fs.len(), 3 + 5);
        let chain_const = fs.iter().find(|f| f.domains == vec![vec![0, 1], vec![0, 1]]).unwrap();
        // each tuple independently: absent, from p, from 0
        assert_eq!(kripke_m1_models(chain_const, &[0]).len(), 9);
        assert_eq!(kripke_m1_models(chain_const, &[1]).len(), 81);
        let mut r = rng(3);
        for f in &fs {
            random_km1(&mut r, f, 2);
        }
        assert_eq!(full_classical_stock(2, 2).len(), 2);
    }
}
