//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use sologic::coding::{rev, sc1_instance, star, SchemaInstance};
use sologic::deduction::{check, derive_transprooftrois, prove_idempotent, translate_down, translate_up, Logic, Proof};
use sologic::kripke::{
    self, force2, interps_at, is_full_k, monotone2, parse_kmodel2, peirce_countermodel, write_kmodel2, KInterp,
};
use sologic::stock::{self, first_order_proofs, second_order_proofs, FormulaShape, DEFAULT_SEED};
use sologic::syntax::{alpha_eq, parse_formula, parse_term, Binder, Formula, Var1, Var2};
use sologic::workbench::checks::{self, Coverage, SoundnessModels, Tally};
use sologic::workbench::examples::{self as ex, StockLevel, EXCLUDED_MIDDLE, PEIRCE, PEIRCE_BODY};
use sologic::workbench::report::Report;

struct Outcome {
    ok: bool,
    detail: String,
}

fn p(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn within(limit: Option<Duration>, elapsed: Duration, mut o: Outcome) -> Outcome {
    if let Some(limit) = limit {
        if elapsed > limit {
            o.ok = false;
            o.detail = format!("{}; took {:.1?}, limit {:.0?}", o.detail, elapsed, limit);
        }
    }
    o
}

fn tally(t: &Tally) -> Outcome {
    Outcome {
        ok: t.ok(),
        detail: t.summary(),
    }
}

fn coding() -> Outcome {
    let mut bad = Vec::new();
    let mut expect = |name: &str, got: Formula, want: &str, alpha: bool| {
        let want = p(want);
        let ok = if alpha { alpha_eq(&got, &want) } else { got == want };
        if !ok {
            bad.push(format!("{name}: {got}"));
        }
    };
    expect(
        "star",
        star(&p("forall X^1_0. (X^1_0(x1) -> X^1_0(x2))")).unwrap(),
        "forall x0. (Ap1(x0, x1) -> Ap1(x0, x2))",
        false,
    );
    expect("rev head", rev(&p("Ap1(f(a), a)")).unwrap(), "bot", false);
    expect(
        "rev star",
        rev(&star(&p("forall X^0_0. X^0_1")).unwrap()).unwrap(),
        "forall x0. X^0_1",
        false,
    );
    let f = p("Ap1(x0, x1) -> Ap2(x0, x1, x1) \\/ Ap1(x1, x0)");
    let x = Binder::First(Var1(0));
    expect(
        "rev forall",
        rev(&Formula::forall(x, f.clone())).unwrap(),
        "forall x0. forall X^1_0. forall X^2_0. (X^1_0(x1) -> X^2_0(x1, x1) \\/ X^1_1(x0))",
        false,
    );
    expect(
        "rev exists",
        rev(&Formula::exists(x, f.clone())).unwrap(),
        "exists x0. exists X^1_0. exists X^2_0. (X^1_0(x1) -> X^2_0(x1, x1) \\/ X^1_1(x0))",
        false,
    );
    let z = sologic::syntax::Term::var(2);
    expect(
        "rev variable instance",
        rev(&f.subst_term(Var1(0), &z)).unwrap(),
        "X^1_2(x1) -> X^2_2(x1, x1) \\/ X^1_1(x2)",
        false,
    );
    let t = parse_term("f(a)").unwrap();
    expect(
        "rev term instance",
        rev(&f.subst_term(Var1(0), &t)).unwrap(),
        "bot -> bot \\/ X^1_1(f(a))",
        false,
    );
    let sc = SchemaInstance::new(p("X^1_0(x0)"), vec![Var1(0)], vec![Binder::Second(Var2::new(1, 0))]).unwrap();
    expect(
        "comprehension",
        sc1_instance(&sc),
        "forall x7. exists x8. forall x9. (Ap1(x7, x9) <-> Ap1(x8, x9))",
        true,
    );
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() { "9 identities".into() } else { bad.join("; ") },
    }
}

fn proof_pipeline(accepted: &mut Vec<Proof>) -> Outcome {
    let mut problems = Vec::new();
    let second = second_order_proofs();
    let first = first_order_proofs();
    for name in ["identity-prop", "identity-unary", "comprehension", "instantiate-bottom"] {
        if !second.iter().any(|n| n.name == name) {
            problems.push(format!("missing {name}"));
        }
    }
    for n in &second {
        if let Err(r) = check(&n.proof) {
            problems.push(format!("{}: {r}", n.name));
            continue;
        }
        accepted.push(n.proof.clone());
        match translate_down(&n.proof) {
            Ok(d) => {
                if let Err(r) = check(&d) {
                    problems.push(format!("down/{}: {r}", n.name));
                    continue;
                }
                match derive_transprooftrois(&d, &n.proof.seq.hyps, &n.proof.seq.concl) {
                    Ok(b) if check(&b).is_ok() && alpha_eq(&b.seq.concl, &n.proof.seq.concl) => {
                        accepted.push(b);
                    }
                    Ok(b) => problems.push(format!("back/{}: {}", n.name, b.seq.concl)),
                    Err(e) => problems.push(format!("back/{}: {e}", n.name)),
                }
                accepted.push(d);
            }
            Err(e) => problems.push(format!("down/{}: {e}", n.name)),
        }
    }
    for n in &first {
        if let Err(r) = check(&n.proof) {
            problems.push(format!("{}: {r}", n.name));
            continue;
        }
        accepted.push(n.proof.clone());
        match translate_up(&n.proof) {
            Ok(u) if check(&u).is_ok() => accepted.push(u),
            Ok(_) => problems.push(format!("up/{}: rejected", n.name)),
            Err(e) => problems.push(format!("up/{}: {e}", n.name)),
        }
    }
    if second.len() < 20 || first.len() < 20 {
        problems.push(format!("stocks too small: {} and {}", second.len(), first.len()));
    }
    Outcome {
        ok: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("{} second-order and {} first-order proofs", second.len(), first.len())
        } else {
            problems.join("; ")
        },
    }
}

fn peirce(mono: &mut Tally) -> Outcome {
    let (k, sigma) = peirce_countermodel();
    let reread = parse_kmodel2(&write_kmodel2(&k)).unwrap();
    let mut bad = Vec::new();
    if reread != k {
        bad.push("model file round trip".to_string());
    }
    let pi = |l: &str| k.labels[l].clone();
    let mut root = k.families[&0][0].clone();
    let mut want = vec![pi("pi1"), pi("pi2")];
    root.sort();
    want.sort();
    if root != want {
        bad.push("Π at the root is not {π1, π2}".into());
    }
    if force2(&k, &sigma, &p(PEIRCE_BODY)) != Ok(false) {
        bad.push("the body is forced at 0".into());
    }
    if force2(&k, &KInterp::at(0), &p(PEIRCE)) != Ok(false) {
        bad.push("P is forced at 0".into());
    }
    if is_full_k(&k) {
        bad.push("the model is full".into());
    }
    let body = p(PEIRCE_BODY);
    for q in 0..2 {
        for s in interps_at(&k.frame, &k.families, &body, q) {
            mono.record(monotone2(&k, &s, &body) == Ok(true), || format!("Peirce body at {q}"));
        }
    }
    let t = checks::peirce_classical(&stock::full_classical_stock(3, 0));
    if !t.ok() {
        bad.push(t.summary());
    }
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("0 does not force the body or P; not full; P valid in {} full classical models", t.cases)
        } else {
            bad.join("; ")
        },
    }
}

fn soundness(accepted: &[Proof], seed: u64, mono: &mut Tally) -> Outcome {
    let models = SoundnessModels::standard(seed, kripke::DEFAULT_FAMILY_CAP);
    let mut t = checks::soundness(accepted, &models, Coverage::All, mono);
    let mut formulas = stock::enumerated(&[0, 1, 2]);
    formulas.extend(stock::random_formulas(seed, 1000, &FormulaShape::default()));
    let idempotent: Vec<Proof> = formulas
        .iter()
        .map(|f| prove_idempotent(f, Logic::Intuitionistic))
        .filter(|p| check(p).is_ok())
        .collect();
    let sampled = Coverage::Sampled { seed, per_model: 4 };
    t.merge(checks::soundness(&idempotent, &models, sampled, mono));
    Outcome {
        ok: t.ok(),
        detail: format!(
            "{} proofs under every interpretation, {} idempotent proofs under sampled ones, {} + {} full models: {}",
            accepted.len(),
            idempotent.len(),
            models.classical2.len(),
            models.kripke2.len(),
            t.summary()
        ),
    }
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sologic")).args(args).output().expect("run sologic");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn countermodel_reproduces(formula: &str) -> Result<String, String> {
    let (code, out) = run_cli(&["countermodel", formula, "--bounds", "points=2,domain=1,arity=0", "--format", "lines"]);
    if code != 0 {
        return Err(format!("exit {code}"));
    }
    let v: serde_json::Value = serde_json::from_str(out.trim()).map_err(|e| e.to_string())?;
    if v["status"] != "countermodel-found" {
        return Err(format!("status {}", v["status"]));
    }
    let c = &v["countermodel"];
    let model = c["model"].as_str().unwrap_or_default();
    let k = parse_kmodel2(model).map_err(|e| e.to_string())?;
    if k.frame.poset.len() > 2 {
        return Err(format!("{} points", k.frame.poset.len()));
    }
    let dir = std::env::temp_dir().join(format!("sologic-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let file: PathBuf = dir.join("countermodel.kmodel");
    std::fs::write(&file, model).map_err(|e| e.to_string())?;
    let point = c["point"].as_str().unwrap_or("0");
    let interp = c["interp"].as_str().unwrap_or("(interp)");
    let (code, out) = run_cli(&["force", file.to_str().unwrap(), point, formula, interp]);
    if code != 0 || out.trim() != "false" {
        return Err(format!("force printed {} (exit {code})", out.trim()));
    }
    Ok(format!("{} points", k.frame.poset.len()))
}

fn cli() -> Outcome {
    let mut bad = Vec::new();
    let (code, out) = run_cli(&["paper-examples", "--format", "lines"]);
    let report = Report::from_lines(&out);
    match report {
        Ok(r) if code == 0 && !r.items.is_empty() && r.items.iter().all(|i| i.status.as_str() == "verified") => {}
        Ok(r) => bad.push(format!("paper-examples exit {code}, {} items not verified", r.items.iter().filter(|i| i.status.as_str() != "verified").count())),
        Err(e) => bad.push(format!("paper-examples output: {e}")),
    }
    let mut found = Vec::new();
    for (name, f) in [("Peirce", PEIRCE), ("excluded middle", EXCLUDED_MIDDLE)] {
        match countermodel_reproduces(f) {
            Ok(d) => found.push(format!("{name}: {d}")),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    let (code, out) = run_cli(&["countermodel", "X^0_0 -> X^0_0", "--format", "lines"]);
    if code != 0 || !out.contains("\"status\":\"exhausted\"") {
        bad.push(format!("A -> A: exit {code}, {}", out.trim()));
    }
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("all items verified; {}; A -> A exhausted", found.join(", "))
        } else {
            bad.join("; ")
        },
    }
}

fn main() {
    let seed = DEFAULT_SEED;
    let mut mono = Tally::default();
    let mut accepted = Vec::new();
    let mut results: Vec<(usize, &str, Outcome, Duration)> = Vec::new();
    let mut run = |n: usize, name: &'static str, limit: Option<Duration>, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        let elapsed = start.elapsed();
        let o = within(limit, elapsed, o);
        eprintln!("criterion {n} done in {elapsed:.1?}");
        results.push((n, name, o, elapsed));
    };
    let sec = Duration::from_secs;
    run(1, "coding examples", Some(sec(1)), &mut coding);
    run(2, "idempotent equivalence", None, &mut || {
        tally(&ex::idempotent_check(StockLevel::Full, seed, &mut mono))
    });
    run(3, "classical translation lemma", None, &mut || tally(&ex::csemone_check(StockLevel::Full, seed)));
    run(4, "Kripke translation lemma", None, &mut || {
        tally(&ex::isemone_check(StockLevel::Full, seed, &mut mono))
    });
    run(5, "comprehension transfer", None, &mut || {
        let mut t = ex::csemtwo_check(StockLevel::Full, seed);
        t.merge(ex::isemtwo_check(StockLevel::Full, seed, &mut mono));
        tally(&t)
    });
    run(6, "proof pipeline", Some(sec(60)), &mut || proof_pipeline(&mut accepted));
    run(7, "Peirce countermodel", Some(sec(1)), &mut || peirce(&mut mono));
    run(8, "connective encodings", None, &mut || {
        tally(&ex::encodings_check(StockLevel::Full, &mut mono))
    });
    run(10, "kernel soundness", None, &mut || soundness(&accepted, seed, &mut mono));
    run(9, "monotonicity", None, &mut || {
        let mut o = tally(&mono);
        o.detail.push_str(", checked alongside criteria 2, 4, 5, 7, 8 and 10");
        o
    });
    run(11, "command line", Some(sec(300)), &mut cli);
    results.sort_by_key(|r| r.0);
    for (n, name, o, elapsed) in &results {
        println!(
            "criterion {n:>2} {:<4} {name} ({:.1?}): {}",
            if o.ok { "PASS" } else { "FAIL" },
            elapsed,
            o.detail
        );
    }
    let failed: Vec<String> = results.iter().filter(|r| !r.2.ok).map(|r| format!("{} ({})", r.0, r.1)).collect();
    let total: Duration = results.iter().map(|r| r.3).sum();
    println!("acceptance: {} of {} criteria passed in {:.1?}", results.len() - failed.len(), results.len(), total);
    if !failed.is_empty() {
        println!("failed: {}", failed.join(", "));
        std::process::exit(1);
    }
}
