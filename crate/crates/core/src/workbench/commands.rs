//! The `sologic` subcommands as functions from arguments to an exit code and
//! output text.

use std::path::Path;

use serde::Serialize;

use crate::classical::{self, parse_interp, parse_model1, parse_model2, EvalError, ModelFileError};
use crate::coding::{rev, star};
use crate::deduction::{check, derive_transprooftrois, parse_proof, translate_down, translate_up, write_proof, Proof, ProofFileError, TranslateError};
use crate::kripke::{self, parse_kinterp, parse_kmodel1, parse_kmodel2, KInterp};
use crate::syntax::{alpha_eq, parse_formula, Formula, ParseError};
use crate::workbench::examples::{paper_examples, ExamplesConfig};
use crate::workbench::report::{Format, Item, Status};
use crate::workbench::search::{search, Countermodel, SearchBounds, SearchError, SearchStatus, Semantics};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_REJECTED: i32 = 4;
pub const EXIT_INVARIANT: i32 = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout: stdout.into(),
            stderr: String::new(),
        }
    }

    fn err(code: i32, msg: impl Into<String>) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

type Res<T> = Result<T, Outcome>;

fn formula(src: &str) -> Res<Formula> {
    parse_formula(src).map_err(|e: ParseError| Outcome::err(EXIT_PARSE, format!("cannot parse formula: {e}\n")))
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Outcome::err(EXIT_FAILURE, format!("cannot read {}: {e}\n", path.display())))
}

fn model_error(e: ModelFileError) -> Outcome {
    let code = match e {
        ModelFileError::Invariant(_) => EXIT_INVARIANT,
        ModelFileError::Syntax(_) | ModelFileError::Format(_) => EXIT_PARSE,
    };
    Outcome::err(code, format!("{e}\n"))
}

fn proof_error(e: ProofFileError) -> Outcome {
    Outcome::err(EXIT_PARSE, format!("{e}\n"))
}

fn eval_error(e: EvalError) -> Outcome {
    Outcome::err(EXIT_PRECONDITION, format!("{e}\n"))
}

fn truth(b: bool) -> Outcome {
    Outcome::ok(format!("{b}\n"))
}

fn collapse(r: Res<Outcome>) -> Outcome {
    r.unwrap_or_else(|e| e)
}

pub fn encode(src: &str) -> Outcome {
    collapse((|| {
        let a = formula(src)?;
        if !a.is_l2_pure() {
            return Err(Outcome::err(EXIT_PRECONDITION, "encode needs an L2-pure formula\n"));
        }
        let s = star(&a).map_err(|e| Outcome::err(EXIT_PRECONDITION, format!("{e}\n")))?;
        Ok(Outcome::ok(format!("{s}\n")))
    })())
}

pub fn decode(src: &str) -> Outcome {
    collapse((|| {
        let a = formula(src)?;
        if !a.is_l1_pure() {
            return Err(Outcome::err(EXIT_PRECONDITION, "decode needs an L1-pure formula\n"));
        }
        let s = rev(&a).map_err(|e| Outcome::err(EXIT_PRECONDITION, format!("{e}\n")))?;
        Ok(Outcome::ok(format!("{s}\n")))
    })())
}

fn load_proof(path: &Path) -> Res<Proof> {
    parse_proof(&read(path)?).map_err(proof_error)
}

pub fn check_proof(path: &Path) -> Outcome {
    collapse((|| {
        let p = load_proof(path)?;
        match check(&p) {
            Ok(()) => Ok(Outcome::ok(format!("accepted: {}\n", p.seq))),
            Err(r) => Err(Outcome::err(EXIT_REJECTED, format!("rejected at {r}\n"))),
        }
    })())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Down,
    Up,
    Roundtrip,
}

impl std::str::FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "down" => Ok(Direction::Down),
            "up" => Ok(Direction::Up),
            "roundtrip" => Ok(Direction::Roundtrip),
            other => Err(format!("unknown direction {other}")),
        }
    }
}

fn translate_error(e: TranslateError) -> Outcome {
    let code = match e {
        TranslateError::Rejected(_) => EXIT_REJECTED,
        TranslateError::WrongOrder(_) => EXIT_PRECONDITION,
        TranslateError::Shape(_) => EXIT_FAILURE,
    };
    Outcome::err(code, format!("{e}\n"))
}

/// Translates the proof and prints the result after checking it again.
pub fn translate_proof(path: &Path, direction: Direction) -> Outcome {
    collapse((|| {
        let p = load_proof(path)?;
        let out = match direction {
            Direction::Down => translate_down(&p).map_err(translate_error)?,
            Direction::Up => translate_up(&p).map_err(translate_error)?,
            Direction::Roundtrip => {
                let down = translate_down(&p).map_err(translate_error)?;
                let back = derive_transprooftrois(&down, &p.seq.hyps, &p.seq.concl).map_err(translate_error)?;
                if !alpha_eq(&back.seq.concl, &p.seq.concl) {
                    return Err(Outcome::err(
                        EXIT_FAILURE,
                        format!("round trip concluded {}, expected {}\n", back.seq.concl, p.seq.concl),
                    ));
                }
                back
            }
        };
        if let Err(r) = check(&out) {
            return Err(Outcome::err(EXIT_REJECTED, format!("translated proof rejected at {r}\n")));
        }
        Ok(Outcome::ok(write_proof(&out)))
    })())
}

/// Evaluates in a classical model file, first- or second-order according
/// to its head.
pub fn eval(model: &Path, src: &str, interp: Option<&str>) -> Outcome {
    collapse((|| {
        let text = read(model)?;
        let a = formula(src)?;
        let interp = interp.unwrap_or("(interp)");
        if text.trim_start().starts_with("(model1") {
            let m = parse_model1(&text).map_err(model_error)?;
            let s = parse_interp(&m.elems, interp).map_err(model_error)?;
            Ok(truth(classical::eval1(&m, &s, &a).map_err(eval_error)?))
        } else {
            let m = parse_model2(&text).map_err(model_error)?;
            let s = parse_interp(&m.elems, interp).map_err(model_error)?;
            Ok(truth(classical::eval2(&m, &s, &a).map_err(eval_error)?))
        }
    })())
}

fn at_point(poset: &kripke::Poset, s: KInterp, point: &str) -> Res<KInterp> {
    let q = poset
        .point(point)
        .ok_or_else(|| Outcome::err(EXIT_PRECONDITION, format!("unknown point {point}\n")))?;
    if !poset.leq(s.level, q) {
        return Err(Outcome::err(
            EXIT_PRECONDITION,
            format!("point {point} is not above the interpretation's level\n"),
        ));
    }
    Ok(s.restrict(poset, q))
}

/// Forces at `point` in a Kripke model file; the interpretation is
/// restricted from its level to the point.
pub fn force(model: &Path, point: &str, src: &str, interp: Option<&str>) -> Outcome {
    collapse((|| {
        let text = read(model)?;
        let a = formula(src)?;
        let interp = interp.unwrap_or("(interp)");
        if text.trim_start().starts_with("(kmodel1") {
            let k = parse_kmodel1(&text).map_err(model_error)?;
            let s = parse_kinterp(&k.frame, &Default::default(), interp).map_err(model_error)?;
            let s = at_point(&k.frame.poset, s, point)?;
            Ok(truth(kripke::force1(&k, &s, &a).map_err(eval_error)?))
        } else {
            let k = parse_kmodel2(&text).map_err(model_error)?;
            let s = parse_kinterp(&k.frame, &k.labels, interp).map_err(model_error)?;
            let s = at_point(&k.frame.poset, s, point)?;
            Ok(truth(kripke::force2(&k, &s, &a).map_err(eval_error)?))
        }
    })())
}

#[derive(Serialize)]
struct CountermodelLine<'a> {
    #[serde(flatten)]
    item: &'a Item,
    models_examined: usize,
    countermodel: Option<&'a Countermodel>,
}

pub fn countermodel(src: &str, bounds: &SearchBounds, semantics: Semantics, full_only: bool, format: Format) -> Outcome {
    collapse((|| {
        let a = formula(src)?;
        let res = search(&a, bounds, semantics, full_only).map_err(|e| {
            let code = match e {
                SearchError::Bounds(_) => EXIT_PARSE,
                _ => EXIT_PRECONDITION,
            };
            Outcome::err(code, format!("{e}\n"))
        })?;
        let status = match res.status {
            SearchStatus::CountermodelFound => Status::CountermodelFound,
            SearchStatus::Exhausted => Status::Exhausted,
            SearchStatus::Timeout => Status::Timeout,
        };
        let evidence = match &res.countermodel {
            Some(c) => format!("{}, {} candidates examined", c.description, res.models_examined),
            None => format!("{} candidates examined within {bounds}", res.models_examined),
        };
        let item = Item::new(a.to_string(), status, evidence);
        let out = match format {
            Format::Lines => {
                let line = CountermodelLine {
                    item: &item,
                    models_examined: res.models_examined,
                    countermodel: res.countermodel.as_ref(),
                };
                serde_json::to_string(&line).expect("serializable") + "\n"
            }
            Format::Text => {
                let mut s = format!("{}  {}: {}\n", item.status, item.name, item.evidence);
                if let Some(c) = &res.countermodel {
                    if let Some(p) = &c.point {
                        s.push_str(&format!("point: {p}\n"));
                    }
                    s.push_str(&format!("model:\n{}\ninterp:\n{}\n", c.model.trim_end(), c.interp.trim_end()));
                }
                s
            }
        };
        Ok(Outcome::ok(out))
    })())
}

pub fn examples(cfg: &ExamplesConfig, format: Format) -> Outcome {
    let report = paper_examples(cfg);
    let stdout = report.render(format);
    if report.all_passed() {
        Outcome::ok(stdout)
    } else {
        let names: Vec<&str> = report.failures().map(|i| i.name.as_str()).collect();
        Outcome {
            code: EXIT_FAILURE,
            stdout,
            stderr: format!("failed: {}\n", names.join(", ")),
        }
    }
}

/// Loads a replacement Peirce model for `paper-examples`.
pub fn load_peirce_model(path: &Path) -> Result<kripke::KripkeModel2, Outcome> {
    parse_kmodel2(&read(path)?).map_err(model_error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_and_decode() {
        assert_eq!(encode("forall X^1_0. (X^1_0(x1) -> X^1_0(x2))").stdout, "forall x0. (Ap1(x0, x1) -> Ap1(x0, x2))\n");
        assert_eq!(decode("Ap1(f(a), a)").stdout, "bot\n");
        assert_eq!(encode("bot").stdout, "bot\n");
        assert_eq!(encode("forall x0. (").code, EXIT_PARSE);
        assert_eq!(encode("Ap0(x0)").code, EXIT_PRECONDITION);
        assert_eq!(decode("X^0_0").code, EXIT_PRECONDITION);
    }
}
