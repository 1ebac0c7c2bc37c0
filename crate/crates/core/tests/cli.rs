use std::path::{Path, PathBuf};
use std::process::Command;

use sologic::deduction::{write_proof, Payload};
use sologic::kripke::{encode_and, full_kmodel, peirce_countermodel, write_kmodel2, Family, Frame, Poset};
use sologic::relation::Relation;
use sologic::stock::{self, second_order_proofs};
use sologic::syntax::{parse_formula, Term};
use sologic::workbench::report::Report;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn sologic(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_sologic")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sologic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn proof_file(name: &str) -> PathBuf {
    let p = second_order_proofs().into_iter().find(|n| n.name == name).unwrap().proof;
    scratch(&format!("{name}.proof"), &write_proof(&p))
}

#[test]
fn encode_and_decode() {
    let r = sologic(&["encode", "forall X^1_0. (X^1_0(x1) -> X^1_0(x2))"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "forall x0. (Ap1(x0, x1) -> Ap1(x0, x2))\n"));
    assert_eq!(sologic(&["decode", "Ap1(f(a), a)"]).stdout, "bot\n");
    assert_eq!(sologic(&["encode", "bot"]).stdout, "bot\n");
    let r = sologic(&["encode", "forall X^1_0. ("]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("cannot parse"));
    assert_eq!(sologic(&["encode", "Ap1(x0, x1)"]).code, 3);
    assert_eq!(sologic(&["decode", "X^1_0(x1)"]).code, 3);
}

#[test]
fn proofs_check_and_translate() {
    let id = proof_file("identity-prop");
    let r = sologic(&["check-proof", s(&id)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("accepted"));

    let r = sologic(&["translate-proof", s(&id), "--direction", "down"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let down = scratch("identity-down.proof", &r.stdout);
    assert_eq!(sologic(&["check-proof", s(&down)]).code, 0);
    assert!(r.stdout.contains(" first)"));

    let r = sologic(&["translate-proof", s(&id), "--direction", "roundtrip"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let back = sologic::deduction::parse_proof(&r.stdout).unwrap();
    assert_eq!(back.seq.concl, parse_formula("forall X^0_0. (X^0_0 -> X^0_0)").unwrap());

    let r = sologic(&["translate-proof", s(&down), "--direction", "up"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(sologic(&["translate-proof", s(&down), "--direction", "down"]).code, 3);
    assert_eq!(sologic(&["translate-proof", s(&id), "--direction", "up"]).code, 3);
}

#[test]
fn malformed_payload_is_rejected_with_its_node() {
    let mut p = second_order_proofs().into_iter().find(|n| n.name == "instantiate-bottom").unwrap().proof;
    p.payload = Payload::Term(Term::constant("a"));
    let file = scratch("bad.proof", &write_proof(&p));
    let r = sologic(&["check-proof", s(&file)]);
    assert_eq!(r.code, 4);
    assert!(r.stderr.contains("node /") && r.stderr.contains("forall2-e"), "{}", r.stderr);
    assert_eq!(sologic(&["translate-proof", s(&file)]).code, 4);
    let garbled = scratch("garbled.proof", "(ax () (seq (hyps) \"bot\"");
    assert_eq!(sologic(&["check-proof", s(&garbled)]).code, 2);
}

#[test]
fn peirce_model_is_evaluated() {
    let (k, _) = peirce_countermodel();
    let file = scratch("peirce.kmodel", &write_kmodel2(&k));
    let body = "((X^0_0 -> X^0_1) -> X^0_0) -> X^0_0";
    let r = sologic(&["force", s(&file), "0", body, "(interp (X^0_0 pi1) (X^0_1 pi2))"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "false\n"), "{}", r.stderr);
    let r = sologic(&["force", s(&file), "p", body, "(interp (X^0_0 pi1) (X^0_1 pi2))"]);
    assert_eq!(r.stdout, "true\n");
    assert_eq!(sologic(&["force", s(&file), "0", "bot -> bot"]).stdout, "true\n");
    assert_eq!(sologic(&["force", s(&file), "0", "X^0_0"]).code, 3);
    assert_eq!(sologic(&["force", s(&file), "q", "bot"]).code, 3);
}

#[test]
fn classical_models_are_evaluated() {
    let m = scratch("two.model", "(model2 (domain a b) (fn (c () -> a)) (range 0 (() (()))) (range 1 (((a)) ((a) (b)))))");
    assert_eq!(sologic(&["eval", s(&m), "bot -> bot"]).stdout, "true\n");
    let r = sologic(&["eval", s(&m), "X^1_0(c)", "(interp (X^1_0 ((b))))"]);
    assert_eq!(r.code, 3, "{}", r.stdout);
    assert_eq!(sologic(&["eval", s(&m), "exists X^1_0. forall x0. X^1_0(x0)"]).stdout, "true\n");
    let m1 = scratch("one.model", "(model1 (domain a b) (fn (c () -> a)) (ap 1 ((a a) (b a))))");
    assert_eq!(sologic(&["eval", s(&m1), "Ap1(x0, c)", "(interp (x0 b))"]).stdout, "true\n");
    let partial = scratch("partial.model", "(model1 (domain a b) (fn (f (a) -> b)) (ap 0 ((a))))");
    let r = sologic(&["eval", s(&partial), "bot -> bot"]);
    assert_eq!(r.code, 5);
    assert!(r.stderr.contains("function-totality"), "{}", r.stderr);
    let bad = scratch("bad.model", "(model2 (domain a) (range 0 (())))");
    assert_eq!(sologic(&["eval", s(&bad), "bot"]).code, 5);
}

#[test]
fn encodings_agree_with_connectives_on_the_full_two_chain() {
    let frame = Frame::canonical(Poset::chain(2), vec![vec![0], vec![0, 1]], &stock::symbols()).unwrap();
    let k = full_kmodel(frame, 1, 1000).unwrap();
    let file = scratch("chain.kmodel", &write_kmodel2(&k));
    let a = parse_formula("X^0_0").unwrap();
    let b = parse_formula("X^1_0(x0)").unwrap();
    let native = format!("{}", parse_formula("X^0_0 /\\ X^1_0(x0)").unwrap());
    let encoded = format!("{}", encode_and(&a, &b));
    for interp in [
        "(interp (x0 e0) (X^0_0 (bar 1)) (X^1_0 (family ((0 ()) (1 ((e0)))))))",
        "(interp (x0 e0) (X^0_0 (bar 0)) (X^1_0 (family ((0 ((e0))) (1 ((e0)))))))",
        "(interp (level 1) (x0 e1) (X^0_0 (bar 1)) (X^1_0 (family ((1 ((e1)))))))",
    ] {
        let points: &[&str] = if interp.contains("level 1") { &["1"] } else { &["0", "1"] };
        for point in points {
            let n = sologic(&["force", s(&file), point, &native, interp]);
            let e = sologic(&["force", s(&file), point, &encoded, interp]);
            assert_eq!(n.code, 0, "{}", n.stderr);
            assert_eq!(n.stdout, e.stdout, "{interp} at {point}");
        }
    }
}

#[test]
fn countermodels_reproduce_under_force() {
    let peirce = "forall X^0_0. forall X^0_1. (((X^0_0 -> X^0_1) -> X^0_0) -> X^0_0)";
    let r = sologic(&["countermodel", peirce, "--bounds", "points=2,domain=1,arity=0", "--format", "lines"]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(r.stdout.trim()).unwrap();
    assert_eq!(v["status"], "countermodel-found");
    let model = scratch("found.kmodel", v["countermodel"]["model"].as_str().unwrap());
    let point = v["countermodel"]["point"].as_str().unwrap();
    let interp = v["countermodel"]["interp"].as_str().unwrap();
    assert_eq!(sologic(&["force", s(&model), point, peirce, interp]).stdout, "false\n");

    let r = sologic(&["countermodel", peirce, "--semantics", "classical", "--full-only"]);
    assert!(r.stdout.starts_with("exhausted"), "{}", r.stdout);
    let r = sologic(&["countermodel", "X^0_0 -> X^0_0", "--bounds", "time=0"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("timeout"));
    assert_eq!(sologic(&["countermodel", "Ap0(x0)"]).code, 3);
    assert_eq!(sologic(&["countermodel", "bot", "--bounds", "depth=1"]).code, 2);
    assert_eq!(sologic(&["countermodel", "X^2_0(x0, x0)", "--bounds", "arity=1"]).code, 3);
}

#[test]
fn paper_examples_report() {
    let r = sologic(&["paper-examples", "--stock", "empty", "--format", "lines"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, ""));

    let r = sologic(&["paper-examples", "--format", "lines"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report = Report::from_lines(&r.stdout).unwrap();
    let mut names: Vec<&str> = report.items.iter().map(|i| i.name.as_str()).collect();
    let total = names.len();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), total);
    let text = sologic(&["paper-examples"]).stdout;
    for item in &report.items {
        assert!(text.contains(&format!("{}: {}", item.name, item.evidence)), "{}", item.name);
    }
}

#[test]
fn adding_the_missing_bar_makes_the_peirce_model_full() {
    let (mut k, _) = peirce_countermodel();
    let poset = k.frame.poset.clone();
    k.families.get_mut(&0).unwrap()[0].push(Family::constant(&poset, 0, Relation::from_bool(true)));
    let file = scratch("peirce-full.kmodel", &write_kmodel2(&k));
    let r = sologic(&["paper-examples", "--peirce-model", s(&file), "--format", "lines"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("peirce-model-not-full"), "{}", r.stderr);
    let report = Report::from_lines(&r.stdout).unwrap();
    let failed: Vec<&str> = report.failures().map(|i| i.name.as_str()).collect();
    assert_eq!(failed, ["peirce-model-not-full"]);
}
