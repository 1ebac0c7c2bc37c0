use crate::syntax::{Binder, FreeVars, Subst, SyntaxError, Term, UsedVars, Var1, Var2};

use super::{Payload, Proof, Rule, Sequent};

pub(crate) fn add_proof_vars(p: &Proof, used: &mut UsedVars) {
    for h in &p.seq.hyps {
        used.add_formula(h);
    }
    used.add_formula(&p.seq.concl);
    match &p.payload {
        Payload::None => {}
        Payload::Eigen(b) => used.add_binder(*b),
        Payload::Term(t) => used.add_term(t),
        Payload::Lambda(a) => used.add_abstraction(a),
    }
    for q in &p.premises {
        add_proof_vars(q, used);
    }
}

/// Index of the premise in which the eigenvariable of `rule` is local.
fn eigen_scope(rule: Rule) -> usize {
    match rule {
        Rule::Exists1E | Rule::Exists2E => 1,
        _ => 0,
    }
}

fn range_vars(s: &Subst) -> FreeVars {
    let mut out = FreeVars::default();
    for (_, t) in s.first_entries() {
        t.vars_into(&mut out.first);
    }
    for (_, a) in s.second_entries() {
        out.extend(a.free_vars());
    }
    out
}

fn touches(s: &Subst, y: Binder) -> bool {
    let in_domain = match y {
        Binder::First(x) => s.term(x).is_some(),
        Binder::Second(x) => s.abs(x).is_some(),
    };
    in_domain || range_vars(s).contains(y)
}

fn bind(s: &mut Subst, y: Binder, to: Binder) {
    s.remove(y);
    if y == to {
        return;
    }
    match (y, to) {
        (Binder::First(x), Binder::First(z)) => s.insert_term(x, Term::Var(z)),
        (Binder::Second(x), Binder::Second(z)) => s.insert_var2(x, z),
        _ => unreachable!("eigenvariables keep their sort"),
    }
}

fn fresh_like(y: Binder, used: &mut UsedVars) -> Binder {
    match y {
        Binder::First(_) => Binder::First(used.fresh1()),
        Binder::Second(x) => Binder::Second(used.fresh2(x.arity)),
    }
}

fn go(p: &Proof, s: &Subst, used: &mut UsedVars) -> Proof {
    let seq = Sequent {
        hyps: p.seq.hyps.iter().map(|h| s.apply(h)).collect(),
        concl: s.apply(&p.seq.concl),
        logic: p.seq.logic,
        order: p.seq.order,
    };
    let (payload, premises) = match &p.payload {
        Payload::Eigen(y) => {
            let to = if touches(s, *y) { fresh_like(*y, used) } else { *y };
            let mut inner = s.clone();
            bind(&mut inner, *y, to);
            let scope = eigen_scope(p.rule);
            let premises = p
                .premises
                .iter()
                .enumerate()
                .map(|(i, q)| if i == scope { go(q, &inner, used) } else { go(q, s, used) })
                .collect();
            (Payload::Eigen(to), premises)
        }
        other => {
            let payload = match other {
                Payload::Term(t) => Payload::Term(s.apply_term(t)),
                Payload::Lambda(a) => Payload::Lambda(a.subst(s)),
                x => x.clone(),
            };
            (payload, p.premises.iter().map(|q| go(q, s, used)).collect())
        }
    };
    Proof {
        rule: p.rule,
        payload,
        seq,
        premises,
    }
}

/// Applies `s` to every sequent and payload of `p`, renaming eigenvariables
/// that `s` would capture or overwrite.
pub fn subst_proof(p: &Proof, s: &Subst) -> Result<Proof, SyntaxError> {
    for (x, a) in s.second_entries() {
        if x.arity != a.arity() {
            return Err(SyntaxError::ArityMismatch {
                expected: x.arity,
                found: a.arity(),
            });
        }
    }
    let mut used = s.used_vars();
    add_proof_vars(p, &mut used);
    Ok(go(p, s, &mut used))
}

/// Renames every eigenvariable to its own index, used by no other variable
/// of the proof at any sort or arity.
pub fn freshen_eigenvariables(p: &Proof) -> Proof {
    let mut used = UsedVars::default();
    add_proof_vars(p, &mut used);
    freshen(p, &mut used)
}

fn freshen(p: &Proof, used: &mut UsedVars) -> Proof {
    let mut premises: Vec<Proof> = p.premises.iter().map(|q| freshen(q, used)).collect();
    let Payload::Eigen(y) = p.payload else {
        return Proof {
            premises,
            ..p.clone()
        };
    };
    let k = used.fresh_shared_index();
    let to = match y {
        Binder::First(_) => Binder::First(Var1(k)),
        Binder::Second(x) => {
            let v = Var2::new(x.arity, k);
            used.second.insert(v);
            Binder::Second(v)
        }
    };
    let mut s = Subst::new();
    bind(&mut s, y, to);
    let scope = eigen_scope(p.rule);
    premises[scope] = go(&premises[scope], &s, used);
    Proof {
        rule: p.rule,
        payload: Payload::Eigen(to),
        seq: p.seq.clone(),
        premises,
    }
}
