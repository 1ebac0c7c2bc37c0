//! The worked examples and bounded lemma checks behind
//! `sologic paper-examples`.

use std::str::FromStr;

use crate::coding::{bounded_sc2, rev, sc1_instance, sc2_instance, star, SchemaInstance};
use crate::kripke::{self, force2, is_full_k, KInterp, KripkeModel2};
use crate::stock::{self, FormulaShape};
use crate::syntax::{alpha_eq, parse_formula, parse_term, Binder, Formula, Var1, Var2};
use crate::workbench::checks::{self, Tally};
use crate::workbench::report::{Item, Report, Status};
use crate::workbench::search::{search, SearchBounds, SearchStatus, Semantics};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StockLevel {
    /// No items at all.
    Empty,
    /// Worked examples and sampled lemma checks; seconds.
    Default,
    /// The exhaustive stocks; minutes.
    Full,
}

impl FromStr for StockLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "empty" => Ok(StockLevel::Empty),
            "default" => Ok(StockLevel::Default),
            "full" => Ok(StockLevel::Full),
            other => Err(format!("unknown stock {other}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExamplesConfig {
    pub level: StockLevel,
    pub seed: u64,
    /// Replaces the built-in two-point Peirce model; its labels `pi1` and
    /// `pi2` give the interpretation.
    pub peirce_model: Option<KripkeModel2>,
}

impl Default for ExamplesConfig {
    fn default() -> Self {
        ExamplesConfig {
            level: StockLevel::Default,
            seed: stock::DEFAULT_SEED,
            peirce_model: None,
        }
    }
}

fn p(s: &str) -> Formula {
    parse_formula(s).expect("built-in formula")
}

pub const PEIRCE_BODY: &str = "(((X^0_0 -> X^0_1) -> X^0_0) -> X^0_0)";
pub const PEIRCE: &str = "forall X^0_0. forall X^0_1. (((X^0_0 -> X^0_1) -> X^0_0) -> X^0_0)";
pub const EXCLUDED_MIDDLE: &str = "forall X^0_0. (X^0_0 \\/ (X^0_0 -> bot))";

pub fn paper_examples(cfg: &ExamplesConfig) -> Report {
    let mut r = Report::default();
    if cfg.level == StockLevel::Empty {
        return r;
    }
    coding_examples(&mut r);
    peirce_examples(&mut r, cfg);
    search_examples(&mut r);
    let mut mono = Tally::default();
    r.push(tally_item("encodings", encodings_check(cfg.level, &mut mono)));
    r.push(tally_item("idempotent", idempotent_check(cfg.level, cfg.seed, &mut mono)));
    r.push(tally_item("csemone", csemone_check(cfg.level, cfg.seed)));
    r.push(tally_item("isemone", isemone_check(cfg.level, cfg.seed, &mut mono)));
    r.push(tally_item("csemtwo", csemtwo_check(cfg.level, cfg.seed)));
    r.push(tally_item("isemtwo", isemtwo_check(cfg.level, cfg.seed, &mut mono)));
    r.push(tally_item("substitution-exchange", checks::substitution_exchange(cfg.seed, 1000)));
    r.push(tally_item("monotonicity", mono));
    r
}

fn verdict(v: &Result<bool, crate::classical::EvalError>) -> String {
    match v {
        Ok(true) => "forced".to_string(),
        Ok(false) => "not forced".to_string(),
        Err(e) => e.to_string(),
    }
}

fn status_name(s: SearchStatus) -> &'static str {
    match s {
        SearchStatus::CountermodelFound => "countermodel found",
        SearchStatus::Exhausted => "exhausted",
        SearchStatus::Timeout => "timeout",
    }
}

pub fn tally_item(name: &str, t: Tally) -> Item {
    Item::check(name, t.ok(), t.summary())
}

fn equal_item(name: &str, got: Result<Formula, String>, want: &Formula, alpha: bool) -> Item {
    match got {
        Ok(g) => {
            let ok = if alpha { alpha_eq(&g, want) } else { g == *want };
            let evidence = if ok { format!("{g}") } else { format!("{g}, expected {want}") };
            Item::check(name, ok, evidence)
        }
        Err(e) => Item::check(name, false, e),
    }
}

fn coding_examples(r: &mut Report) {
    let a = p("forall X^1_0. (X^1_0(x1) -> X^1_0(x2))");
    r.push(equal_item(
        "star-universal-unary",
        star(&a).map_err(|e| e.to_string()),
        &p("forall x0. (Ap1(x0, x1) -> Ap1(x0, x2))"),
        false,
    ));
    r.push(equal_item(
        "rev-non-variable-head",
        rev(&p("Ap1(f(a), a)")).map_err(|e| e.to_string()),
        &Formula::Bottom,
        false,
    ));
    let vacuous = p("forall X^0_0. X^0_1");
    let got = star(&vacuous).and_then(|s| rev(&s)).map_err(|e| e.to_string());
    let ok_normal = got
        .as_ref()
        .map(|g| g.normalize_vacuous() == vacuous.normalize_vacuous())
        .unwrap_or(false);
    let mut item = equal_item("rev-star-vacuous", got, &p("forall x0. X^0_1"), false);
    if item.status == Status::Verified && !ok_normal {
        item = Item::check("rev-star-vacuous", false, "differs from the input beyond vacuous quantifiers");
    }
    r.push(item);

    let x = Binder::Second(Var2::new(1, 0));
    let sc = SchemaInstance::new(p("X^1_0(x0)"), vec![Var1(0)], vec![x]).expect("schema instance");
    let want2 = p("forall X^1_0. exists X^1_1. forall x0. (X^1_0(x0) <-> X^1_1(x0))");
    let want1 = p("forall x1. exists x2. forall x0. (Ap1(x1, x0) <-> Ap1(x2, x0))");
    let two = sc2_instance(&sc);
    let one = sc1_instance(&sc);
    let starred = star(&two);
    let ok = two == want2 && alpha_eq(&one, &want1) && starred.as_ref().map(|s| alpha_eq(s, &want1)).unwrap_or(false);
    r.push(Item::check("comprehension-instance-shape", ok, format!("{two} codes to {one}")));

    let f = p("(Ap1(x0, x1) -> (Ap2(x0, x1, x1) \\/ Ap1(x1, x0)))");
    let body = p("(X^1_0(x1) -> (X^2_0(x1, x1) \\/ X^1_1(x0)))");
    let forall = Formula::forall(Binder::First(Var1(0)), f.clone());
    let exists = Formula::exists(Binder::First(Var1(0)), f.clone());
    let wrap = |q: fn(Binder, Formula) -> Formula| {
        q(Binder::First(Var1(0)), q(Binder::Second(Var2::new(1, 0)), q(Binder::Second(Var2::new(2, 0)), body.clone())))
    };
    r.push(equal_item("rev-universal", rev(&forall).map_err(|e| e.to_string()), &wrap(Formula::forall), false));
    r.push(equal_item("rev-existential", rev(&exists).map_err(|e| e.to_string()), &wrap(Formula::exists), false));
    let z = crate::syntax::Term::var(2);
    r.push(equal_item(
        "rev-instance-variable",
        rev(&f.subst_term(Var1(0), &z)).map_err(|e| e.to_string()),
        &p("(X^1_2(x1) -> (X^2_2(x1, x1) \\/ X^1_1(x2)))"),
        false,
    ));
    let t = parse_term("f(a)").expect("term");
    r.push(equal_item(
        "rev-instance-term",
        rev(&f.subst_term(Var1(0), &t)).map_err(|e| e.to_string()),
        &p("(bot -> (bot \\/ X^1_1(f(a))))"),
        false,
    ));
    let ex_z = checks::exchanged(&f, Var1(0), &z);
    let ex_t = checks::exchanged(&f, Var1(0), &t);
    let ok = rev(&f.subst_term(Var1(0), &z)).map(|g| alpha_eq(&g, &ex_z)).unwrap_or(false)
        && rev(&f.subst_term(Var1(0), &t)).map(|g| alpha_eq(&g, &ex_t)).unwrap_or(false);
    r.push(Item::check("rev-substitution-exchange", ok, format!("{ex_z}; {ex_t}")));
}

fn peirce_examples(r: &mut Report, cfg: &ExamplesConfig) {
    let (k, sigma) = match &cfg.peirce_model {
        None => kripke::peirce_countermodel(),
        Some(k) => match (k.labels.get("pi1"), k.labels.get("pi2")) {
            (Some(a), Some(b)) => {
                let root = 0;
                let s = KInterp::at(root).with2(Var2::new(0, 0), a.clone()).with2(Var2::new(0, 1), b.clone());
                (k.clone(), s)
            }
            _ => {
                r.push(Item::check("peirce-model", false, "the model lacks the labels pi1 and pi2"));
                return;
            }
        },
    };
    let name = |q: usize| k.frame.poset.name(q).to_string();
    let body = force2(&k, &sigma, &p(PEIRCE_BODY));
    r.push(Item::check(
        "peirce-body-not-forced",
        body == Ok(false),
        format!("at {} under X^0_0 := pi1, X^0_1 := pi2: {}", name(sigma.level), verdict(&body)),
    ));
    let whole = force2(&k, &KInterp::at(0), &p(PEIRCE));
    r.push(Item::check(
        "peirce-not-forced",
        whole == Ok(false),
        format!("universal closure at {}: {}", name(0), verdict(&whole)),
    ));
    let full = is_full_k(&k);
    r.push(Item::check(
        "peirce-model-not-full",
        !full,
        if full {
            "the model contains every monotone family".to_string()
        } else {
            let missing = kripke::monotone_families(&k.frame.poset, 0, &k.frame.domains, 0)
                .into_iter()
                .filter(|f| !k.families[&0][0].contains(f))
                .map(|f| {
                    let b = kripke::family_to_bar(&f, &k.frame.poset);
                    let pts: Vec<String> = b.points().iter().map(|q| name(*q)).collect();
                    format!("(bar {})", pts.join(" ")).replace(" )", ")")
                })
                .collect::<Vec<_>>();
            format!("missing at {}: {}", name(0), missing.join(", "))
        },
    ));
    let t = checks::peirce_classical(&stock::full_classical_stock(3, 0));
    r.push(tally_item("peirce-classically-valid", t));
}

fn search_examples(r: &mut Report) {
    let small: SearchBounds = "points=2,domain=1,arity=0,time=60".parse().expect("bounds");
    for (name, src) in [("search-peirce", PEIRCE), ("search-excluded-middle", EXCLUDED_MIDDLE)] {
        let res = search(&p(src), &small, Semantics::Kripke, false).expect("closed L2 formula");
        let ok = res.status == SearchStatus::CountermodelFound;
        let evidence = match &res.countermodel {
            Some(c) => format!("{} after {} models, fails at {}", c.description, res.models_examined, c.point.as_deref().unwrap_or("?")),
            None => format!("{} after {} models", status_name(res.status), res.models_examined),
        };
        r.push(Item::check(name, ok, evidence));
    }
    let res = search(&p(EXCLUDED_MIDDLE), &SearchBounds::default(), Semantics::Classical, true).expect("closed L2 formula");
    r.push(Item::check(
        "search-excluded-middle-classical",
        res.status == SearchStatus::Exhausted,
        format!("{} after {} full models", status_name(res.status), res.models_examined),
    ));
    let res = search(&p("(X^0_0 -> X^0_0)"), &SearchBounds::default(), Semantics::Kripke, false).expect("L2 formula");
    r.push(Item::check(
        "search-identity",
        res.status == SearchStatus::Exhausted,
        format!("{} after {} models", status_name(res.status), res.models_examined),
    ));
}

/// Encodings of the connectives against the native ones on full Kripke
/// models with at most three points, `|D_p| ≤ 2` and arity 1.
pub fn encodings_check(level: StockLevel, mono: &mut Tally) -> Tally {
    match level {
        StockLevel::Empty => Tally::default(),
        _ => checks::encodings(&stock::full_kripke_stock(3, 2, 1), mono),
    }
}

pub fn idempotent_check(level: StockLevel, seed: u64, mono: &mut Tally) -> Tally {
    let mut t = Tally::default();
    match level {
        StockLevel::Empty => {}
        StockLevel::Default => {
            let mut fs = stock::enumerated(&[0]);
            fs.extend(stock::random_formulas(seed, 200, &FormulaShape::default()));
            t.merge(checks::idempotent_proofs(&fs));
            let small: Vec<Formula> = stock::enumerated(&[0, 1]).into_iter().step_by(5).collect();
            t.merge(checks::idempotent_classical(&small, &stock::full_classical_stock(2, 2)));
            let kf: Vec<Formula> = stock::enumerated(&[0]).into_iter().step_by(3).collect();
            t.merge(checks::idempotent_kripke(&kf, &stock::full_kripke_stock(3, 2, 1), mono));
        }
        StockLevel::Full => {
            let enumerated = stock::enumerated(&[0, 1, 2]);
            let random = stock::random_formulas(seed, 1000, &FormulaShape::default());
            t.merge(checks::idempotent_proofs(&enumerated));
            t.merge(checks::idempotent_proofs(&random));
            let classical = stock::full_classical_stock(2, 2);
            t.merge(checks::idempotent_classical(&enumerated, &classical));
            t.merge(checks::idempotent_classical_sampled(&random, &classical, seed, 64));
            let kripke1 = stock::full_kripke_stock(3, 2, 1);
            t.merge(checks::idempotent_kripke(&stock::enumerated(&[0]), &kripke1, mono));
            t.merge(checks::idempotent_kripke(&stock::enumerated(&[1]), &kripke1, mono));
            let kripke2 = checks::SoundnessModels::standard(seed, kripke::DEFAULT_FAMILY_CAP).kripke2;
            t.merge(checks::idempotent_kripke_sampled(&random, &kripke2, seed, 16, mono));
        }
    }
    t
}

pub fn csemone_check(level: StockLevel, seed: u64) -> Tally {
    let mut t = Tally::default();
    match level {
        StockLevel::Empty => {}
        StockLevel::Default => {
            let fs: Vec<Formula> = stock::enumerated(&[0, 1]).into_iter().step_by(7).collect();
            t.merge(checks::csemone(&stock::classical_m1_stock(seed, 2), &fs));
            t.merge(checks::csemone_random(seed, 1000));
        }
        StockLevel::Full => {
            t.merge(checks::csemone(&stock::classical_m1_stock(seed, 8), &stock::enumerated(&[0, 1])));
            t.merge(checks::csemone_random(seed, 1000));
        }
    }
    t
}

/// First-order Kripke models on the two-chain and the V with `|D_p| ≤ 2`:
/// every `α_1` against formulas over `X^1`, every `α_0` against formulas
/// over `X^0`, and models with both, exhaustive for one-element domains.
fn kripke_m1_stock(level: StockLevel, seed: u64) -> Vec<(Vec<kripke::KripkeModel1>, Vec<Formula>)> {
    let frames = stock::frames(&stock::small_posets(), 2);
    let step = if level == StockLevel::Full { 1 } else { 10 };
    let unary: Vec<_> = frames
        .iter()
        .flat_map(|f| stock::kripke_m1_models(f, &[1]))
        .step_by(step)
        .collect();
    let nullary: Vec<_> = frames.iter().flat_map(|f| stock::kripke_m1_models(f, &[0])).collect();
    let singletons = stock::frames(&stock::small_posets(), 1);
    let mut mixed: Vec<_> = singletons.iter().flat_map(|f| stock::kripke_m1_models(f, &[0, 1])).collect();
    let mut r = stock::rng(seed);
    for f in &frames {
        mixed.push(stock::random_km1(&mut r, f, 1));
    }
    let mut f1 = stock::enumerated(&[1]);
    let mut f0 = stock::enumerated(&[0]);
    let mut f01 = stock::enumerated(&[0, 1]);
    if level != StockLevel::Full {
        f1 = f1.into_iter().step_by(5).collect();
        f0 = f0.into_iter().step_by(5).collect();
        f01 = f01.into_iter().step_by(20).collect();
    } else {
        f01 = f01.into_iter().step_by(3).collect();
    }
    vec![(unary, f1), (nullary, f0), (mixed, f01)]
}

pub fn isemone_check(level: StockLevel, seed: u64, mono: &mut Tally) -> Tally {
    let mut t = Tally::default();
    if level == StockLevel::Empty {
        return t;
    }
    for (models, formulas) in kripke_m1_stock(level, seed) {
        t.merge(checks::isemone(&models, &formulas, mono));
    }
    t.merge(checks::isemone_random(seed, 1000, mono));
    t
}

pub fn csemtwo_check(level: StockLevel, seed: u64) -> Tally {
    match level {
        StockLevel::Empty => Tally::default(),
        StockLevel::Default => {
            let inst: Vec<SchemaInstance> = bounded_sc2(2, 1).into_iter().step_by(29).collect();
            let models: Vec<_> = stock::classical_m1_stock(seed, 1).into_iter().step_by(7).collect();
            checks::csemtwo(&models, &inst)
        }
        StockLevel::Full => {
            let models: Vec<_> = stock::classical_m1_stock(seed, 1).into_iter().step_by(4).collect();
            checks::csemtwo(&models, &bounded_sc2(2, 1))
        }
    }
}

pub fn isemtwo_check(level: StockLevel, seed: u64, mono: &mut Tally) -> Tally {
    match level {
        StockLevel::Empty => Tally::default(),
        StockLevel::Default => {
            let inst: Vec<SchemaInstance> = bounded_sc2(2, 1).into_iter().step_by(97).collect();
            let models = kripke_m1_stock(level, seed).pop().expect("mixed models").0;
            let models: Vec<_> = models.into_iter().step_by(5).collect();
            checks::isemtwo(&models, &inst, mono)
        }
        StockLevel::Full => {
            let inst: Vec<SchemaInstance> = bounded_sc2(2, 1).into_iter().step_by(7).collect();
            let models = kripke_m1_stock(level, seed).pop().expect("mixed models").0;
            checks::isemtwo(&models, &inst, mono)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_stock_has_no_items() {
        let cfg = ExamplesConfig {
            level: StockLevel::Empty,
            ..ExamplesConfig::default()
        };
        assert!(paper_examples(&cfg).items.is_empty());
    }

    #[test]
    fn worked_examples_verify() {
        let mut r = Report::default();
        coding_examples(&mut r);
        peirce_examples(&mut r, &ExamplesConfig::default());
        search_examples(&mut r);
        for i in &r.items {
            assert_eq!(i.status, Status::Verified, "{}: {}", i.name, i.evidence);
        }
    }
}
