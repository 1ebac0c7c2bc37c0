use std::collections::BTreeMap;

use crate::relation::{tuples_over, Elem, Relation};

use super::{Family, Frame, KInterp, KripkeError, KripkeModel2, Poset};
use crate::syntax::Var2;

/// Default bound on the number of monotone families a full model may hold.
pub const DEFAULT_FAMILY_CAP: usize = 1_000_000;

/// Enumerates the monotone families of arity `n` on the cone above `level`,
/// stopping (and returning `None`) once more than `cap` have been found.
fn enumerate(
    poset: &Poset,
    level: usize,
    domains: &[Vec<Elem>],
    universe: usize,
    n: usize,
    cap: usize,
) -> Option<Vec<Family>> {
    let order: Vec<usize> = poset
        .linear_extension()
        .into_iter()
        .filter(|&q| poset.leq(level, q))
        .collect();
    let candidates: Vec<Vec<usize>> = order
        .iter()
        .map(|&q| {
            tuples_over(&domains[q], n)
                .iter()
                .map(|t| crate::relation::code(t, universe))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut values: Vec<Option<Relation>> = vec![None; poset.len()];
    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        poset: &Poset,
        level: usize,
        n: usize,
        order: &[usize],
        candidates: &[Vec<usize>],
        values: &mut Vec<Option<Relation>>,
        out: &mut Vec<Family>,
        cap: usize,
    ) -> bool {
        if i == order.len() {
            out.push(Family {
                level,
                values: values.clone(),
            });
            return out.len() <= cap;
        }
        let q = order[i];
        let mut floor = Relation::empty(n);
        for &r in &order[..i] {
            if poset.leq(r, q) {
                for c in values[r].as_ref().expect("set").codes() {
                    floor.insert_code(c);
                }
            }
        }
        let free: Vec<usize> = candidates[i].iter().copied().filter(|c| !floor.contains_code(*c)).collect();
        if free.len() >= 32 {
            return false;
        }
        for mask in 0u64..1 << free.len() {
            let mut r = floor.clone();
            for (j, c) in free.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    r.insert_code(*c);
                }
            }
            values[q] = Some(r);
            if !go(i + 1, poset, level, n, order, candidates, values, out, cap) {
                return false;
            }
        }
        values[q] = None;
        true
    }
    go(0, poset, level, n, &order, &candidates, &mut values, &mut out, cap).then_some(out)
}

/// All monotone families of arity `n` above `level`, over the universe
/// `0..=max` of the given domains.
pub fn monotone_families(poset: &Poset, level: usize, domains: &[Vec<Elem>], n: usize) -> Vec<Family> {
    let universe = domains.iter().flatten().max().map_or(1, |m| m + 1);
    enumerate(poset, level, domains, universe, n, usize::MAX).expect("uncapped")
}

/// The full model over `frame`: every monotone family for each arity up to
/// `max_arity`. Fails with a size-guard error past `cap` families in total.
pub fn full_kmodel(frame: Frame, max_arity: usize, cap: usize) -> Result<KripkeModel2, KripkeError> {
    let mut families = BTreeMap::new();
    let mut total = 0usize;
    for n in 0..=max_arity {
        let mut per_point = Vec::new();
        for p in 0..frame.poset.len() {
            let fs = enumerate(&frame.poset, p, &frame.domains, frame.universe(), n, cap.saturating_sub(total)).ok_or_else(|| {
                KripkeError::TooLarge(format!("more than {cap} monotone families"))
            })?;
            total += fs.len();
            per_point.push(fs);
        }
        families.insert(n, per_point);
    }
    KripkeModel2::new(frame, families)
}

/// Whether every `Π_{n,p}` holds all monotone families of its arity.
pub fn is_full_k(k: &KripkeModel2) -> bool {
    let poset = &k.frame.poset;
    k.families.iter().all(|(n, per_point)| {
        per_point.iter().enumerate().all(|(p, pi)| {
            // members are already known to be monotone families, so count suffices
            enumerate(poset, p, &k.frame.domains, k.frame.universe(), *n, pi.len()).is_some_and(|all| all.len() == pi.len())
        })
    })
}

/// Domain assignments with at most `max_size` elements per point, up to
/// renaming: each point gets the union of the domains below it plus
/// possibly one fresh element.
pub fn domain_configs(poset: &Poset, max_size: usize) -> Vec<Vec<Vec<Elem>>> {
    let order = poset.linear_extension();
    let mut out = Vec::new();
    fn go(
        i: usize,
        poset: &Poset,
        order: &[usize],
        max_size: usize,
        next: Elem,
        doms: &mut Vec<Vec<Elem>>,
        out: &mut Vec<Vec<Vec<Elem>>>,
    ) {
        if i == order.len() {
            out.push(doms.clone());
            return;
        }
        let q = order[i];
        let mut base: Vec<Elem> = Vec::new();
        for &r in &order[..i] {
            if poset.leq(r, q) {
                base.extend(doms[r].iter().copied());
            }
        }
        base.sort();
        base.dedup();
        if i == 0 {
            for size in 1..=max_size {
                doms[q] = (0..size).collect();
                go(1, poset, order, max_size, size, doms, out);
            }
            return;
        }
        doms[q] = base.clone();
        go(i + 1, poset, order, max_size, next, doms, out);
        if base.len() < max_size {
            let mut d = base;
            d.push(next);
            doms[q] = d;
            go(i + 1, poset, order, max_size, next + 1, doms, out);
        }
    }
    let mut doms = vec![Vec::new(); poset.len()];
    go(0, poset, &order, max_size, 0, &mut doms, &mut out);
    out
}

/// The two-point model `0 < p` with one element whose arity-0 families are
/// `π1` (false at 0, true at p) and `π2` (false everywhere), together with
/// the interpretation `X^0_0 := π1, X^0_1 := π2` at 0.
pub fn peirce_countermodel() -> (KripkeModel2, KInterp) {
    let poset = Poset::new(vec!["0".into(), "p".into()], &[(0, 1)]).expect("chain");
    let frame = Frame::new(poset.clone(), vec!["a".into()], vec![vec![0], vec![0]], crate::classical::FnTables::new(1))
        .expect("valid frame");
    let pi1 = Family {
        level: 0,
        values: vec![Some(Relation::from_bool(false)), Some(Relation::from_bool(true))],
    };
    let pi2 = Family::constant(&poset, 0, Relation::from_bool(false));
    let at_p = vec![pi1.restrict(&poset, 1), pi2.restrict(&poset, 1)];
    let mut families = BTreeMap::new();
    families.insert(0, vec![vec![pi1.clone(), pi2.clone()], at_p]);
    let mut labels = BTreeMap::new();
    labels.insert("pi1".to_string(), pi1.clone());
    labels.insert("pi2".to_string(), pi2.clone());
    let k = KripkeModel2::with_labels(frame, families, labels).expect("valid model");
    let sigma = KInterp::at(0).with2(Var2::new(0, 0), pi1).with2(Var2::new(0, 1), pi2);
    (k, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::{force2, valid2};
    use crate::syntax::parse_formula;

    #[test]
    fn counts() {
        let one = Poset::chain(1);
        assert_eq!(monotone_families(&one, 0, &[vec![0]], 0).len(), 2);
        let two = Poset::chain(2);
        assert_eq!(monotone_families(&two, 0, &[vec![0], vec![0]], 0).len(), 3);
        assert_eq!(monotone_families(&two, 1, &[vec![0], vec![0]], 0).len(), 2);
        // pairs S0 ⊆ S1 over a two-element set: 3^2
        assert_eq!(monotone_families(&two, 0, &[vec![0, 1], vec![0, 1]], 1).len(), 9);
        // S0 ⊆ {a}, S1 ⊆ {a,b}, S0 ⊆ S1: 4 + 2
        assert_eq!(monotone_families(&two, 0, &[vec![0], vec![0, 1]], 1).len(), 6);
    }

    #[test]
    fn fullness() {
        let frame = Frame::canonical(Poset::chain(2), vec![vec![0], vec![0]], &[]).unwrap();
        let k = full_kmodel(frame.clone(), 1, DEFAULT_FAMILY_CAP).unwrap();
        assert!(is_full_k(&k));
        let (peirce, _) = peirce_countermodel();
        assert!(!is_full_k(&peirce));
        assert!(matches!(full_kmodel(frame, 1, 3), Err(KripkeError::TooLarge(_))));
    }

    #[test]
    fn peirce() {
        let (k, sigma) = peirce_countermodel();
        let body = parse_formula("(((X^0_0 -> X^0_1) -> X^0_0) -> X^0_0)").unwrap();
        assert!(!force2(&k, &sigma, &body).unwrap());
        let up = sigma.restrict(k.poset(), 1);
        assert!(force2(&k, &up, &parse_formula("X^0_0").unwrap()).unwrap());
        let p = parse_formula("forall X^0_0. forall X^0_1. (((X^0_0 -> X^0_1) -> X^0_0) -> X^0_0)").unwrap();
        assert!(!valid2(&k, &p).unwrap());
        // the full model on the same frame still refutes it
        assert!(!valid2(&full_kmodel(k.frame.clone(), 0, 100).unwrap(), &p).unwrap());
    }

    #[test]
    fn configs() {
        assert_eq!(domain_configs(&Poset::chain(2), 2).len(), 3);
        let v = Poset::numbered(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(domain_configs(&v, 2).len(), 5);
        for d in domain_configs(&v, 2) {
            assert!(Frame::canonical(v.clone(), d, &[]).is_ok());
        }
    }
}
