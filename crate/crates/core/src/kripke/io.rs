//! Text formats for Kripke models and interpretations.
//!
//! ```text
//! (kmodel2 (poset (points 0 p) (leq (0 p)))
//!          (domain 0 (elems a)) (domain p (elems a))
//!          (fn (c () -> a))
//!          (family 0 0 pi1 ((0 ()) (p (()))))
//!          (family 0 0 pi2 (bar))
//!          (family 0 p ((p (()))))
//!          (family 0 p (bar)))
//! (kmodel1 (poset ...) (domain ...) (ap 0 p ((a))))
//! (interp (level 0) (x0 a) (X^0_0 (bar p)) (X^0_1 pi1)
//!         (X^1_0 (family ((0 ()) (p ((a)))))))
//! ```
//!
//! A family lists its value at every point above its level; arity-0
//! families may be given as `(bar q ...)`. In `(ap n p ...)` forms,
//! points left out get the empty relation.

use std::collections::BTreeMap;

use super::{bar_to_family, family_to_bar, Bar, Family, Frame, KInterp, KripkeError, KripkeModel1, KripkeModel2, Poset};
use crate::classical::io::{atom, bad, binder, element, fields, fn_entries, list, natural, relation, write_fns, write_relation};
use crate::classical::{FnTables, ModelFileError};
use crate::relation::Relation;
use crate::sexpr::{self, Sexp};
use crate::syntax::Binder;

impl From<KripkeError> for ModelFileError {
    fn from(e: KripkeError) -> Self {
        ModelFileError::Invariant(e.to_string())
    }
}

struct Common {
    frame: Frame,
    rest: Vec<Sexp>,
}

fn point(poset: &Poset, s: &Sexp) -> Result<usize, ModelFileError> {
    let a = atom(s)?;
    match poset.point(a) {
        Some(p) => Ok(p),
        None => bad(format!("unknown point {a}")),
    }
}

fn read_poset(s: &Sexp) -> Result<Poset, ModelFileError> {
    let mut names: Option<Vec<String>> = None;
    let mut pairs = Vec::new();
    for it in fields(s, "poset")? {
        match it.head() {
            Some("points") => {
                let mut ns: Vec<String> = Vec::new();
                for x in &list(it)?[1..] {
                    let a = atom(x)?.to_string();
                    if ns.contains(&a) {
                        return bad(format!("point {a} declared twice"));
                    }
                    ns.push(a);
                }
                names = Some(ns);
            }
            Some("leq") => pairs.extend(list(it)?[1..].iter().cloned()),
            _ => return bad(format!("unexpected {it} in poset")),
        }
    }
    let Some(names) = names else {
        return bad("missing (points ...)");
    };
    let find = |s: &Sexp| -> Result<usize, ModelFileError> {
        let a = atom(s)?;
        match names.iter().position(|n| n == a) {
            Some(p) => Ok(p),
            None => bad(format!("unknown point {a}")),
        }
    };
    let mut idx = Vec::new();
    for pr in &pairs {
        let parts = list(pr)?;
        if parts.len() != 2 {
            return bad(format!("order pair {pr} should read (p q)"));
        }
        idx.push((find(&parts[0])?, find(&parts[1])?));
    }
    Poset::new(names, &idx).map_err(|e| KripkeError::from(e).into())
}

fn read_common(s: &Sexp, head: &str) -> Result<Common, ModelFileError> {
    let items = fields(s, head)?;
    let mut poset = None;
    let mut domain_forms = Vec::new();
    let mut fn_forms = Vec::new();
    let mut rest = Vec::new();
    for it in items {
        match it.head() {
            Some("poset") => {
                if poset.is_some() {
                    return bad("poset declared twice");
                }
                poset = Some(read_poset(it)?);
            }
            Some("domain") => domain_forms.push(it),
            Some("fn") => fn_forms.push(it),
            _ => rest.push(it.clone()),
        }
    }
    let Some(poset) = poset else {
        return bad("missing (poset ...)");
    };
    let mut names: Vec<String> = Vec::new();
    let mut per_point: Vec<Option<Vec<String>>> = vec![None; poset.len()];
    for d in domain_forms {
        let parts = list(d)?;
        if parts.len() != 3 {
            return bad("a (domain p (elems ...)) form needs exactly two fields");
        }
        let p = point(&poset, &parts[1])?;
        let elems = fields(&parts[2], "elems")?;
        let mut here = Vec::new();
        for e in elems {
            let a = atom(e)?.to_string();
            if !names.contains(&a) {
                names.push(a.clone());
            }
            here.push(a);
        }
        if per_point[p].replace(here).is_some() {
            return bad(format!("domain of {} given twice", poset.name(p)));
        }
    }
    let mut domains = Vec::new();
    for (p, d) in per_point.into_iter().enumerate() {
        let Some(d) = d else {
            return bad(format!("missing domain for point {}", poset.name(p)));
        };
        domains.push(d.iter().map(|a| names.iter().position(|n| n == a).expect("collected")).collect());
    }
    let mut fns = FnTables::new(names.len());
    for f in fn_forms {
        fn_entries(&names, &list(f)?[1..], &mut fns)?;
    }
    let frame = Frame::new(poset, names, domains, fns)?;
    Ok(Common { frame, rest })
}

/// A family body: `(bar q ...)` or `((q tuples) ...)`.
fn family_body(frame: &Frame, level: usize, arity: usize, s: &Sexp) -> Result<Family, ModelFileError> {
    let poset = &frame.poset;
    if s.head() == Some("bar") {
        if arity != 0 {
            return bad("only arity-0 families can be given as bars");
        }
        let pts = list(s)?[1..].iter().map(|x| point(poset, x)).collect::<Result<Vec<_>, _>>()?;
        let b = Bar::new(poset, level, pts).map_err(|e| ModelFileError::Invariant(e.to_string()))?;
        return Ok(bar_to_family(&b, poset));
    }
    let mut values: Vec<Option<Relation>> = vec![None; poset.len()];
    for e in list(s)? {
        let parts = list(e)?;
        if parts.len() != 2 {
            return bad(format!("family entry {e} should read (point (tuples...))"));
        }
        let q = point(poset, &parts[0])?;
        if values[q].replace(relation(&frame.elems, &parts[1], arity)?).is_some() {
            return bad(format!("family value at {} given twice", poset.name(q)));
        }
    }
    Ok(Family::new(poset, level, values)?)
}

fn family_form(frame: &Frame, f: &Family) -> Sexp {
    let poset = &frame.poset;
    Sexp::list(poset.cone(f.level()).map(|q| {
        Sexp::list([Sexp::atom(poset.name(q)), write_relation(&frame.elems, f.at(q))])
    }))
}

fn bar_form(frame: &Frame, f: &Family) -> Sexp {
    let poset = &frame.poset;
    let b = family_to_bar(f, poset);
    Sexp::list(std::iter::once(Sexp::atom("bar")).chain(b.points().iter().map(|q| Sexp::atom(poset.name(*q)))))
}

fn frame_forms(frame: &Frame, head: &str) -> Vec<Sexp> {
    let poset = &frame.poset;
    let mut items = vec![Sexp::atom(head)];
    let points = Sexp::list(std::iter::once(Sexp::atom("points")).chain(poset.names().iter().map(|n| Sexp::atom(n.clone()))));
    let leq = Sexp::list(std::iter::once(Sexp::atom("leq")).chain(
        poset
            .covers()
            .into_iter()
            .map(|(p, q)| Sexp::list([Sexp::atom(poset.name(p)), Sexp::atom(poset.name(q))])),
    ));
    items.push(Sexp::list([Sexp::atom("poset"), points, leq]));
    for (p, d) in frame.domains.iter().enumerate() {
        let elems = Sexp::list(std::iter::once(Sexp::atom("elems")).chain(d.iter().map(|a| Sexp::atom(frame.elems[*a].clone()))));
        items.push(Sexp::list([Sexp::atom("domain"), Sexp::atom(poset.name(p)), elems]));
    }
    if frame.fns.symbols().next().is_some() {
        items.push(write_fns(&frame.elems, &frame.fns));
    }
    items
}

pub fn parse_kmodel1(src: &str) -> Result<KripkeModel1, ModelFileError> {
    let s = sexpr::parse(src)?;
    let c = read_common(&s, "kmodel1")?;
    let n_points = c.frame.poset.len();
    let mut relations: BTreeMap<usize, Vec<Option<Relation>>> = BTreeMap::new();
    for it in &c.rest {
        let parts = fields(it, "ap")?;
        if parts.len() != 3 {
            return bad("an (ap n p (tuples...)) form needs exactly three fields");
        }
        let n = natural(&parts[0])?;
        let p = point(&c.frame.poset, &parts[1])?;
        let r = relation(&c.frame.elems, &parts[2], n + 1)?;
        let slot = relations.entry(n).or_insert_with(|| vec![None; n_points]);
        if slot[p].replace(r).is_some() {
            return bad(format!("Ap{n} at {} given twice", c.frame.poset.name(p)));
        }
    }
    let relations = relations
        .into_iter()
        .map(|(n, rs)| (n, rs.into_iter().map(|r| r.unwrap_or_else(|| Relation::empty(n + 1))).collect()))
        .collect();
    Ok(KripkeModel1::new(c.frame, relations)?)
}

pub fn parse_kmodel2(src: &str) -> Result<KripkeModel2, ModelFileError> {
    let s = sexpr::parse(src)?;
    let c = read_common(&s, "kmodel2")?;
    let n_points = c.frame.poset.len();
    let mut families: BTreeMap<usize, Vec<Vec<Family>>> = BTreeMap::new();
    let mut labels = BTreeMap::new();
    for it in &c.rest {
        let parts = fields(it, "family")?;
        let (label, body) = match parts.len() {
            3 => (None, &parts[2]),
            4 => (Some(atom(&parts[2])?.to_string()), &parts[3]),
            _ => return bad("a (family n p [name] body) form needs three or four fields"),
        };
        let n = natural(&parts[0])?;
        let p = point(&c.frame.poset, &parts[1])?;
        let f = family_body(&c.frame, p, n, body)?;
        if let Some(l) = label {
            if labels.insert(l.clone(), f.clone()).is_some() {
                return bad(format!("family name {l} used twice"));
            }
        }
        families.entry(n).or_insert_with(|| vec![Vec::new(); n_points])[p].push(f);
    }
    Ok(KripkeModel2::with_labels(c.frame, families, labels)?)
}

pub fn write_kmodel1(k: &KripkeModel1) -> String {
    let frame = &k.frame;
    let mut items = frame_forms(frame, "kmodel1");
    for (n, rs) in &k.relations {
        for (p, r) in rs.iter().enumerate() {
            if !r.is_empty() {
                items.push(Sexp::list([
                    Sexp::atom("ap"),
                    Sexp::atom(n.to_string()),
                    Sexp::atom(frame.poset.name(p)),
                    write_relation(&frame.elems, r),
                ]));
            }
        }
    }
    Sexp::List(items).pretty(78) + "\n"
}

pub fn write_kmodel2(k: &KripkeModel2) -> String {
    let frame = &k.frame;
    let mut items = frame_forms(frame, "kmodel2");
    for (n, per_point) in &k.families {
        for (p, pi) in per_point.iter().enumerate() {
            for f in pi {
                let mut form = vec![Sexp::atom("family"), Sexp::atom(n.to_string()), Sexp::atom(frame.poset.name(p))];
                if let Some((l, _)) = k.labels.iter().find(|(_, g)| *g == f) {
                    form.push(Sexp::atom(l.clone()));
                }
                form.push(if *n == 0 { bar_form(frame, f) } else { family_form(frame, f) });
                items.push(Sexp::List(form));
            }
        }
    }
    Sexp::List(items).pretty(78) + "\n"
}

/// Parses an interpretation. Second-order values are a label of `k`, a
/// `(bar ...)`, or `(family ((q tuples) ...))`; the level defaults to the
/// root.
pub fn parse_kinterp(frame: &Frame, labels: &BTreeMap<String, Family>, src: &str) -> Result<KInterp, ModelFileError> {
    let s = sexpr::parse(src)?;
    let items = fields(&s, "interp")?;
    let mut level = 0;
    for it in items {
        if it.head() == Some("level") {
            let parts = list(it)?;
            if parts.len() != 2 {
                return bad("(level p) takes one point");
            }
            level = point(&frame.poset, &parts[1])?;
        }
    }
    let mut out = KInterp::at(level);
    for it in items {
        if it.head() == Some("level") {
            continue;
        }
        let parts = list(it)?;
        if parts.len() != 2 {
            return bad(format!("binding {it} should read (variable value)"));
        }
        match binder(&parts[0])? {
            Binder::First(x) => {
                out.fo.insert(x, element(&frame.elems, &parts[1])?);
            }
            Binder::Second(x) => {
                let v = &parts[1];
                let f = if let Some(name) = v.as_atom() {
                    match labels.get(name) {
                        Some(f) => f.restrict(&frame.poset, level),
                        None => return bad(format!("unknown family {name}")),
                    }
                } else if v.head() == Some("family") {
                    let body = list(v)?;
                    if body.len() != 2 {
                        return bad("(family ((q tuples) ...)) takes one field");
                    }
                    family_body(frame, level, x.arity, &body[1])?
                } else {
                    family_body(frame, level, x.arity, v)?
                };
                if f.arity() != x.arity {
                    return bad(format!("family for {x} has arity {}", f.arity()));
                }
                out.so.insert(x, f);
            }
        }
    }
    Ok(out)
}

pub fn write_kinterp(frame: &Frame, s: &KInterp) -> String {
    let mut items = vec![
        Sexp::atom("interp"),
        Sexp::list([Sexp::atom("level"), Sexp::atom(frame.poset.name(s.level))]),
    ];
    for (x, a) in &s.fo {
        items.push(Sexp::list([Sexp::atom(x.to_string()), Sexp::atom(frame.elems[*a].clone())]));
    }
    for (x, f) in &s.so {
        let v = if x.arity == 0 {
            bar_form(frame, f)
        } else {
            Sexp::list([Sexp::atom("family"), family_form(frame, f)])
        };
        items.push(Sexp::list([Sexp::atom(x.to_string()), v]));
    }
    Sexp::List(items).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::{force2, peirce_countermodel};
    use crate::syntax::parse_formula;

    const PEIRCE: &str = "(kmodel2 (poset (points 0 p) (leq (0 p)))
        (domain 0 (elems a)) (domain p (elems a))
        (family 0 0 pi1 (bar p)) (family 0 0 pi2 (bar))
        (family 0 p (bar p)) (family 0 p (bar)))";

    #[test]
    fn peirce_file() {
        let k = parse_kmodel2(PEIRCE).unwrap();
        let (expected, sigma) = peirce_countermodel();
        assert_eq!(k, expected);
        assert_eq!(parse_kmodel2(&write_kmodel2(&k)).unwrap(), k);
        let s = parse_kinterp(&k.frame, &k.labels, "(interp (level 0) (X^0_0 pi1) (X^0_1 (bar)))").unwrap();
        assert_eq!(s, sigma);
        assert_eq!(parse_kinterp(&k.frame, &k.labels, &write_kinterp(&k.frame, &s)).unwrap(), s);
        let a = parse_formula("(((X^0_0 -> X^0_1) -> X^0_0) -> X^0_0)").unwrap();
        assert!(!force2(&k, &s, &a).unwrap());
    }

    #[test]
    fn invariant_names() {
        let missing = PEIRCE.replace("(family 0 p (bar p))", "");
        let e = parse_kmodel2(&missing).unwrap_err().to_string();
        assert!(e.contains("restriction-closure"), "{e}");
        let shrinking = "(kmodel2 (poset (points 0 p) (leq (0 p)))
            (domain 0 (elems a)) (domain p (elems a))
            (family 0 0 ((0 (())) (p ()))) (family 0 p ((p ()))))";
        let e = parse_kmodel2(shrinking).unwrap_err().to_string();
        assert!(e.contains("family-monotone"), "{e}");
        let dom = "(kmodel1 (poset (points 0 p) (leq (0 p))) (domain 0 (elems a b)) (domain p (elems a)))";
        let e = parse_kmodel1(dom).unwrap_err().to_string();
        assert!(e.contains("domain-increasing"), "{e}");
        let rel = "(kmodel1 (poset (points 0 p) (leq (0 p))) (domain 0 (elems a)) (domain p (elems a)) (ap 0 0 ((a))))";
        let e = parse_kmodel1(rel).unwrap_err().to_string();
        assert!(e.contains("relation-increasing"), "{e}");
        let tot = "(kmodel1 (poset (points 0 p) (leq (0 p))) (domain 0 (elems a)) (domain p (elems a b)) (fn (f (a) -> a)))";
        let e = parse_kmodel1(tot).unwrap_err().to_string();
        assert!(e.contains("function-totality"), "{e}");
    }

    #[test]
    fn kmodel1_round_trip() {
        let src = "(kmodel1 (poset (points 0 p q) (leq (0 p) (0 q)))
            (domain 0 (elems a)) (domain p (elems a b)) (domain q (elems a))
            (fn (f (a) -> a) (f (b) -> b))
            (ap 1 p ((a b))) (ap 0 q ((a))))";
        let k = parse_kmodel1(src).unwrap();
        assert_eq!(parse_kmodel1(&write_kmodel1(&k)).unwrap(), k);
        let s = parse_kinterp(&k.frame, &BTreeMap::new(), "(interp (level p) (x0 b))").unwrap();
        assert_eq!(s.level, 1);
        assert_eq!(s.fo[&crate::syntax::Var1(0)], 1);
    }
}
