use crate::syntax::{Binder, Formula, Var2};

fn fresh_prop(parts: &[&Formula], avoid: Option<Binder>) -> Var2 {
    (0..)
        .map(|i| Var2::new(0, i))
        .find(|x| parts.iter().all(|a| !a.is_free(Binder::Second(*x))) && avoid != Some(Binder::Second(*x)))
        .expect("some index is free")
}

fn atom(x: Var2) -> Formula {
    Formula::Pred(x, Vec::new())
}

fn imp(a: Formula, b: Formula) -> Formula {
    Formula::Impl(Box::new(a), Box::new(b))
}

/// `∀X((A → (B → X)) → X)`.
pub fn encode_and(a: &Formula, b: &Formula) -> Formula {
    let x = fresh_prop(&[a, b], None);
    let body = imp(imp(a.clone(), imp(b.clone(), atom(x))), atom(x));
    Formula::Forall(Binder::Second(x), Box::new(body))
}

/// `∀X((A → X) → ((B → X) → X))`.
pub fn encode_or(a: &Formula, b: &Formula) -> Formula {
    let x = fresh_prop(&[a, b], None);
    let body = imp(imp(a.clone(), atom(x)), imp(imp(b.clone(), atom(x)), atom(x)));
    Formula::Forall(Binder::Second(x), Box::new(body))
}

/// `∀X(∀χ(A → X) → X)`.
pub fn encode_exists(v: Binder, a: &Formula) -> Formula {
    let x = fresh_prop(&[a], Some(v));
    let inner = Formula::Forall(v, Box::new(imp(a.clone(), atom(x))));
    Formula::Forall(Binder::Second(x), Box::new(imp(inner, atom(x))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{alpha_eq, parse_binder, parse_formula};

    #[test]
    fn shapes() {
        let a = parse_formula("X^0_0").unwrap();
        let b = parse_formula("X^1_0(x0)").unwrap();
        let and = encode_and(&a, &b);
        assert_eq!(and, parse_formula("forall X^0_1. ((X^0_0 -> (X^1_0(x0) -> X^0_1)) -> X^0_1)").unwrap());
        let or = encode_or(&a, &b);
        assert_eq!(or, parse_formula("forall X^0_1. ((X^0_0 -> X^0_1) -> ((X^1_0(x0) -> X^0_1) -> X^0_1))").unwrap());
        let ex = encode_exists(parse_binder("X^0_0").unwrap(), &a);
        assert_eq!(ex.to_string(), "forall X^0_1. ((forall X^0_0. (X^0_0 -> X^0_1)) -> X^0_1)");
        assert!(alpha_eq(&ex, &parse_formula("forall X^0_5. ((forall X^0_0. (X^0_0 -> X^0_5)) -> X^0_5)").unwrap()));
    }
}
