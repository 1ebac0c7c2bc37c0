//! Text formats for classical models and interpretations.
//!
//! ```text
//! (model1 (domain a b)
//!         (fn (f (a) -> b) (f (b) -> a) (c () -> a))
//!         (ap 1 ((a a) (a b))))
//! (model2 (domain a b) (fn ...) (range 1 (((a)) ((a) (b)) ())))
//! (interp (x0 a) (X^1_0 ((a) (b))) (X^0_0 (())))
//! ```

use std::collections::BTreeMap;

use super::{ClassicalModel1, ClassicalModel2, FnTables, Interp, ModelError};
use crate::relation::{Elem, Relation};
use crate::sexpr::{self, Sexp, SexpError};
use crate::syntax::{parse_binder, Binder};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelFileError {
    #[error("syntax error: {0}")]
    Syntax(#[from] SexpError),
    #[error("malformed file: {0}")]
    Format(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl From<ModelError> for ModelFileError {
    fn from(e: ModelError) -> Self {
        ModelFileError::Invariant(e.to_string())
    }
}

pub(crate) fn bad<T>(msg: impl Into<String>) -> Result<T, ModelFileError> {
    Err(ModelFileError::Format(msg.into()))
}

pub(crate) fn atom(s: &Sexp) -> Result<&str, ModelFileError> {
    match s.as_atom() {
        Some(a) => Ok(a),
        None => bad(format!("expected an atom, found {s}")),
    }
}

pub(crate) fn list(s: &Sexp) -> Result<&[Sexp], ModelFileError> {
    match s.as_list() {
        Some(a) => Ok(a),
        None => bad(format!("expected a list, found {s}")),
    }
}

pub(crate) fn natural(s: &Sexp) -> Result<usize, ModelFileError> {
    atom(s)?
        .parse()
        .or_else(|_| bad(format!("expected a natural number, found {s}")))
}

pub(crate) fn element(names: &[String], s: &Sexp) -> Result<Elem, ModelFileError> {
    let a = atom(s)?;
    match names.iter().position(|n| n == a) {
        Some(i) => Ok(i),
        None => bad(format!("unknown element {a}")),
    }
}

pub(crate) fn tuple(names: &[String], s: &Sexp, arity: usize) -> Result<Vec<Elem>, ModelFileError> {
    let items = list(s)?;
    if items.len() != arity {
        return bad(format!("tuple {s} should have {arity} component(s)"));
    }
    items.iter().map(|x| element(names, x)).collect()
}

pub(crate) fn relation(names: &[String], s: &Sexp, arity: usize) -> Result<Relation, ModelFileError> {
    let mut r = Relation::empty(arity);
    for t in list(s)? {
        r.insert_code(crate::relation::code(&tuple(names, t, arity)?, names.len()));
    }
    Ok(r)
}

pub(crate) fn write_tuple(names: &[String], t: &[Elem]) -> Sexp {
    Sexp::list(t.iter().map(|a| Sexp::atom(names[*a].clone())))
}

pub(crate) fn write_relation(names: &[String], r: &Relation) -> Sexp {
    Sexp::list(r.tuples(names.len()).iter().map(|t| write_tuple(names, t)))
}

pub(crate) fn fields<'a>(s: &'a Sexp, head: &str) -> Result<&'a [Sexp], ModelFileError> {
    match s.as_list() {
        Some(items) if items.first().and_then(Sexp::as_atom) == Some(head) => Ok(&items[1..]),
        _ => bad(format!("expected a ({head} ...) form")),
    }
}

pub(crate) fn domain_names(items: &[Sexp]) -> Result<Vec<String>, ModelFileError> {
    let mut names: Vec<String> = Vec::new();
    for x in items {
        let a = atom(x)?.to_string();
        if names.contains(&a) {
            return bad(format!("element {a} declared twice"));
        }
        names.push(a);
    }
    Ok(names)
}

/// Reads `(f (args...) -> r)` entries into `fns`.
pub(crate) fn fn_entries(names: &[String], items: &[Sexp], fns: &mut FnTables) -> Result<(), ModelFileError> {
    for e in items {
        let parts = list(e)?;
        if parts.len() != 4 || parts[2].as_atom() != Some("->") {
            return bad(format!("function entry {e} should read (f (args...) -> r)"));
        }
        let f = atom(&parts[0])?;
        let args = list(&parts[1])?
            .iter()
            .map(|x| element(names, x))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(k) = fns.arity(f) {
            if k != args.len() {
                return bad(format!("function {f} used with two arities"));
            }
        }
        if fns.get(f, &args).is_some() {
            return bad(format!("function entry {e} given twice"));
        }
        let r = element(names, &parts[3])?;
        fns.set(f, &args, r);
    }
    Ok(())
}

pub(crate) fn write_fns(names: &[String], fns: &FnTables) -> Sexp {
    let mut items = vec![Sexp::atom("fn")];
    for (f, _) in fns.symbols() {
        for (args, v) in fns.entries(f) {
            items.push(Sexp::list([
                Sexp::atom(f),
                write_tuple(names, &args),
                Sexp::atom("->"),
                Sexp::atom(names[v].clone()),
            ]));
        }
    }
    Sexp::List(items)
}

struct Common {
    names: Vec<String>,
    fns: FnTables,
    rest: Vec<Sexp>,
}

fn read_common(s: &Sexp, head: &str) -> Result<Common, ModelFileError> {
    let items = fields(s, head)?;
    let mut names = None;
    let mut fn_forms = Vec::new();
    let mut rest = Vec::new();
    for it in items {
        match it.head() {
            Some("domain") => {
                if names.is_some() {
                    return bad("domain declared twice");
                }
                names = Some(domain_names(&list(it)?[1..])?);
            }
            Some("fn") => fn_forms.push(it),
            _ => rest.push(it.clone()),
        }
    }
    let Some(names) = names else {
        return bad("missing (domain ...)");
    };
    let mut fns = FnTables::new(names.len());
    for f in fn_forms {
        fn_entries(&names, &list(f)?[1..], &mut fns)?;
    }
    Ok(Common { names, fns, rest })
}

pub fn parse_model1(src: &str) -> Result<ClassicalModel1, ModelFileError> {
    let s = sexpr::parse(src)?;
    let c = read_common(&s, "model1")?;
    let mut relations = BTreeMap::new();
    for it in &c.rest {
        let parts = fields(it, "ap")?;
        if parts.len() != 2 {
            return bad("an (ap n (tuples...)) form needs exactly two fields");
        }
        let n = natural(&parts[0])?;
        let r = relation(&c.names, &parts[1], n + 1)?;
        if relations.insert(n, r).is_some() {
            return bad(format!("relation Ap{n} given twice"));
        }
    }
    Ok(ClassicalModel1::new(c.names, c.fns, relations)?)
}

pub fn parse_model2(src: &str) -> Result<ClassicalModel2, ModelFileError> {
    let s = sexpr::parse(src)?;
    let c = read_common(&s, "model2")?;
    let mut ranges = BTreeMap::new();
    for it in &c.rest {
        let parts = fields(it, "range")?;
        if parts.len() != 2 {
            return bad("a (range n (members...)) form needs exactly two fields");
        }
        let n = natural(&parts[0])?;
        let rs = list(&parts[1])?
            .iter()
            .map(|m| relation(&c.names, m, n))
            .collect::<Result<Vec<_>, _>>()?;
        if ranges.insert(n, rs).is_some() {
            return bad(format!("range {n} given twice"));
        }
    }
    if let Some(r0) = ranges.get(&0) {
        let mut r0 = r0.clone();
        r0.sort();
        r0.dedup();
        if r0 != vec![Relation::empty(0), Relation::truth()] {
            return Err(ModelError::BooleanRange.into());
        }
    }
    Ok(ClassicalModel2::new(c.names, c.fns, ranges)?)
}

pub fn write_model1(m: &ClassicalModel1) -> String {
    let mut items = vec![Sexp::atom("model1"), domain_form(&m.elems)];
    if m.fns.symbols().next().is_some() {
        items.push(write_fns(&m.elems, &m.fns));
    }
    for (n, r) in &m.relations {
        items.push(Sexp::list([Sexp::atom("ap"), Sexp::atom(n.to_string()), write_relation(&m.elems, r)]));
    }
    Sexp::List(items).pretty(78) + "\n"
}

pub fn write_model2(m: &ClassicalModel2) -> String {
    let mut items = vec![Sexp::atom("model2"), domain_form(&m.elems)];
    if m.fns.symbols().next().is_some() {
        items.push(write_fns(&m.elems, &m.fns));
    }
    for (n, rs) in &m.ranges {
        items.push(Sexp::list([
            Sexp::atom("range"),
            Sexp::atom(n.to_string()),
            Sexp::list(rs.iter().map(|r| write_relation(&m.elems, r))),
        ]));
    }
    Sexp::List(items).pretty(78) + "\n"
}

pub(crate) fn domain_form(names: &[String]) -> Sexp {
    Sexp::list(std::iter::once(Sexp::atom("domain")).chain(names.iter().map(|n| Sexp::atom(n.clone()))))
}

pub(crate) fn binder(s: &Sexp) -> Result<Binder, ModelFileError> {
    let a = atom(s)?;
    parse_binder(a).or_else(|e| bad(format!("bad variable {a}: {e}")))
}

/// Parses `(interp (x0 a) (X^1_0 ((a) (b))) ...)` against a classical
/// model's element names.
pub fn parse_interp(names: &[String], src: &str) -> Result<Interp, ModelFileError> {
    let s = sexpr::parse(src)?;
    let mut out = Interp::new();
    for it in fields(&s, "interp")? {
        let parts = list(it)?;
        if parts.len() != 2 {
            return bad(format!("binding {it} should read (variable value)"));
        }
        match binder(&parts[0])? {
            Binder::First(x) => {
                out.fo.insert(x, element(names, &parts[1])?);
            }
            Binder::Second(x) => {
                out.so.insert(x, relation(names, &parts[1], x.arity)?);
            }
        }
    }
    Ok(out)
}

pub fn write_interp(names: &[String], s: &Interp) -> String {
    let mut items = vec![Sexp::atom("interp")];
    for (x, a) in &s.fo {
        items.push(Sexp::list([Sexp::atom(x.to_string()), Sexp::atom(names[*a].clone())]));
    }
    for (x, r) in &s.so {
        items.push(Sexp::list([Sexp::atom(x.to_string()), write_relation(names, r)]));
    }
    Sexp::List(items).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Var1, Var2};

    #[test]
    fn model1_round_trip() {
        let src = "(model1 (domain a b) (fn (f (a) -> b) (f (b) -> a) (c () -> a)) (ap 1 ((a a) (a b))) (ap 0 ((b))))";
        let m = parse_model1(src).unwrap();
        assert_eq!(m.fns.get("f", &[0]), Some(1));
        assert_eq!(m.relations[&1].len(), 2);
        assert_eq!(parse_model1(&write_model1(&m)).unwrap(), m);
    }

    #[test]
    fn model2_round_trip() {
        let src = "(model2 (domain a b) (range 1 (((a)) ((a) (b)) ())))";
        let m = parse_model2(src).unwrap();
        assert_eq!(m.ranges[&1].len(), 3);
        assert_eq!(m.ranges[&0].len(), 2);
        assert_eq!(parse_model2(&write_model2(&m)).unwrap(), m);
        let bad0 = "(model2 (domain a) (range 0 (())))";
        assert!(matches!(parse_model2(bad0), Err(ModelFileError::Invariant(e)) if e.starts_with("boolean-range")));
    }

    #[test]
    fn rejects_partial_tables() {
        let src = "(model1 (domain a b) (fn (f (a) -> b)))";
        match parse_model1(src) {
            Err(ModelFileError::Invariant(e)) => assert!(e.starts_with("function-totality")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_model1("(model1 (domain a) (ap 1 ((a))))"), Err(ModelFileError::Format(_))));
        assert!(matches!(parse_model1("(model1 (domain a"), Err(ModelFileError::Syntax(_))));
    }

    #[test]
    fn interp_round_trip() {
        let names = vec!["a".to_string(), "b".to_string()];
        let s = parse_interp(&names, "(interp (x0 a) (X^1_0 ((a) (b))) (X^0_0 (())))").unwrap();
        assert_eq!(s.fo[&Var1(0)], 0);
        assert_eq!(s.so[&Var2::new(1, 0)].len(), 2);
        assert!(s.so[&Var2::new(0, 0)].as_bool());
        assert_eq!(parse_interp(&names, &write_interp(&names, &s)).unwrap(), s);
    }
}
