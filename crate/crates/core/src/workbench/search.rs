//! Bounded countermodel search.
//!
//! Candidates are enumerated in a fixed order: poset size, then poset, then
//! domain size or configuration, then predicate ranges (smaller sets
//! first, lexicographically within a size). Without `full_only`, a
//! classical candidate takes any nonempty set of at most
//! `max_family_count` subsets of `Dⁿ` as `P_n` (with `P_0 = {0,1}`), and a
//! Kripke candidate takes any nonempty set of at most `max_family_count`
//! monotone families at the root and closes it under restriction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use itertools::Itertools;
use serde::Serialize;

use crate::classical::{eval2, interps_for, powerset, write_interp, write_model2, ClassicalModel2, FnTables};
use crate::kripke::{
    domain_configs, force2, interps_at, monotone_families, rooted_posets, write_kinterp, write_kmodel2, Family, Frame,
    KripkeModel2,
};
use crate::relation::Relation;
use crate::stock::elem_names;
use crate::syntax::Formula;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub max_poset_points: usize,
    pub max_domain_size: usize,
    pub max_arity: usize,
    pub max_family_count: usize,
    pub time_budget_seconds: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_poset_points: 3,
            max_domain_size: 2,
            max_arity: 1,
            max_family_count: 3,
            time_budget_seconds: 60,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("bad bounds: {0}")]
    Bounds(String),
    #[error("the formula is not L2-pure")]
    NotL2Pure,
    #[error("the formula uses arity {0}, above the bound {1}")]
    ArityAboveBound(usize, usize),
    #[error("posets with more than 4 points are not enumerated")]
    TooManyPoints,
}

/// Parses `points=2,domain=1,arity=0,families=4,time=60`; omitted keys keep
/// their defaults.
impl FromStr for SearchBounds {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, SearchError> {
        let mut b = SearchBounds::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let Some((k, v)) = part.split_once('=') else {
                return Err(SearchError::Bounds(format!("expected key=value, found {part}")));
            };
            let n: u64 = v
                .trim()
                .parse()
                .map_err(|_| SearchError::Bounds(format!("{k} needs a natural number, found {v}")))?;
            match k.trim() {
                "points" => b.max_poset_points = n as usize,
                "domain" => b.max_domain_size = n as usize,
                "arity" => b.max_arity = n as usize,
                "families" => b.max_family_count = n as usize,
                "time" => b.time_budget_seconds = n,
                other => return Err(SearchError::Bounds(format!("unknown key {other}"))),
            }
        }
        Ok(b)
    }
}

impl fmt::Display for SearchBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "points={},domain={},arity={},families={},time={}",
            self.max_poset_points, self.max_domain_size, self.max_arity, self.max_family_count, self.time_budget_seconds
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Classical,
    Kripke,
}

impl FromStr for Semantics {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, SearchError> {
        match s {
            "classical" => Ok(Semantics::Classical),
            "kripke" => Ok(Semantics::Kripke),
            other => Err(SearchError::Bounds(format!("unknown semantics {other}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    CountermodelFound,
    Exhausted,
    Timeout,
}

/// A model file and an interpretation under which the formula fails; for
/// Kripke models the interpretation's level is the failing point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Countermodel {
    pub model: String,
    pub interp: String,
    pub point: Option<String>,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub status: SearchStatus,
    pub models_examined: usize,
    pub countermodel: Option<Countermodel>,
}

struct Clock {
    deadline: Instant,
}

impl Clock {
    fn expired(&self) -> bool {
        Instant::now() >= self.deadline
    }
}

/// Nonempty sets of at most `max` members of `pool`, smaller sets first.
fn subsets<T: Clone>(pool: &[T], max: usize) -> impl Iterator<Item = Vec<T>> + Clone + '_ {
    (1..=max.min(pool.len())).flat_map(move |k| pool.iter().cloned().combinations(k))
}

fn product<T: Clone>(choices: Vec<Vec<T>>) -> impl Iterator<Item = Vec<T>> {
    choices.into_iter().multi_cartesian_product()
}

pub fn search(a: &Formula, bounds: &SearchBounds, semantics: Semantics, full_only: bool) -> Result<SearchResult, SearchError> {
    if !a.is_l2_pure() {
        return Err(SearchError::NotL2Pure);
    }
    let arities = a.arities();
    if let Some(n) = arities.iter().find(|n| **n > bounds.max_arity) {
        return Err(SearchError::ArityAboveBound(*n, bounds.max_arity));
    }
    if semantics == Semantics::Kripke && bounds.max_poset_points > 4 {
        return Err(SearchError::TooManyPoints);
    }
    let clock = Clock {
        deadline: Instant::now() + Duration::from_secs(bounds.time_budget_seconds),
    };
    let symbols: Vec<(String, usize)> = a.symbols().into_iter().map(|s| (s.name, s.arity)).collect();
    Ok(match semantics {
        Semantics::Classical => classical(a, &arities, &symbols, bounds, full_only, &clock),
        Semantics::Kripke => kripke(a, &arities, &symbols, bounds, full_only, &clock),
    })
}

fn classical(
    a: &Formula,
    arities: &BTreeSet<usize>,
    symbols: &[(String, usize)],
    bounds: &SearchBounds,
    full_only: bool,
    clock: &Clock,
) -> SearchResult {
    let mut examined = 0;
    for size in 1..=bounds.max_domain_size {
        let elems = elem_names(size);
        let fns = FnTables::canonical(size, symbols.iter().cloned());
        let per_arity: Vec<(usize, Vec<Vec<Relation>>)> = arities
            .iter()
            .map(|&n| {
                let all = powerset(size, n);
                let choices = if n == 0 || full_only {
                    vec![all]
                } else {
                    subsets(&all, bounds.max_family_count).collect()
                };
                (n, choices)
            })
            .collect();
        let keys: Vec<usize> = per_arity.iter().map(|(n, _)| *n).collect();
        let candidates = product(per_arity.into_iter().map(|(_, c)| c).collect());
        for ranges in candidates {
            if clock.expired() {
                return timeout(examined);
            }
            examined += 1;
            let ranges: BTreeMap<usize, Vec<Relation>> = keys.iter().copied().zip(ranges).collect();
            let m = ClassicalModel2::with_ranges(elems.clone(), fns.clone(), ranges).expect("candidates are valid");
            for s in interps_for(a, size, &m.ranges) {
                if eval2(&m, &s, a) == Ok(false) {
                    let full = m.is_full();
                    return found(
                        examined,
                        Countermodel {
                            model: write_model2(&m),
                            interp: write_interp(&m.elems, &s),
                            point: None,
                            description: format!("|D| = {size}{}", if full { ", full" } else { "" }),
                        },
                    );
                }
            }
        }
    }
    exhausted(examined)
}

fn kripke(
    a: &Formula,
    arities: &BTreeSet<usize>,
    symbols: &[(String, usize)],
    bounds: &SearchBounds,
    full_only: bool,
    clock: &Clock,
) -> SearchResult {
    let mut examined = 0;
    for poset in rooted_posets(bounds.max_poset_points) {
        for domains in domain_configs(&poset, bounds.max_domain_size) {
            let frame = Frame::canonical(poset.clone(), domains, symbols).expect("configurations are valid");
            let n_points = poset.len();
            let per_arity: Vec<(usize, Vec<Vec<Vec<Family>>>)> = arities
                .iter()
                .map(|&n| {
                    let choices = if full_only {
                        vec![(0..n_points)
                            .map(|p| monotone_families(&poset, p, &frame.domains, n))
                            .collect()]
                    } else {
                        let roots = monotone_families(&poset, 0, &frame.domains, n);
                        subsets(&roots, bounds.max_family_count)
                            .map(|s| generated(&frame, &s))
                            .collect()
                    };
                    (n, choices)
                })
                .collect();
            let keys: Vec<usize> = per_arity.iter().map(|(n, _)| *n).collect();
            for fams in product(per_arity.into_iter().map(|(_, c)| c).collect()) {
                if clock.expired() {
                    return timeout(examined);
                }
                examined += 1;
                let families: BTreeMap<usize, Vec<Vec<Family>>> = keys.iter().copied().zip(fams).collect();
                let k = KripkeModel2::new(frame.clone(), families).expect("candidates are valid");
                for p in 0..n_points {
                    for s in interps_at(&k.frame, &k.families, a, p) {
                        if force2(&k, &s, a) == Ok(false) {
                            let full = crate::kripke::is_full_k(&k);
                            return found(
                                examined,
                                Countermodel {
                                    model: write_kmodel2(&k),
                                    interp: write_kinterp(&k.frame, &s),
                                    point: Some(poset.name(p).to_string()),
                                    description: format!(
                                        "{} points, domains of sizes {:?}{}",
                                        n_points,
                                        k.frame.domains.iter().map(Vec::len).collect::<Vec<_>>(),
                                        if full { ", full" } else { "" }
                                    ),
                                },
                            );
                        }
                    }
                }
            }
        }
    }
    exhausted(examined)
}

/// `Π_{n,p} = {π restricted to p : π ∈ roots}` at every point.
fn generated(frame: &Frame, roots: &[Family]) -> Vec<Vec<Family>> {
    (0..frame.poset.len())
        .map(|p| {
            let mut out: Vec<Family> = roots.iter().map(|f| f.restrict(&frame.poset, p)).collect();
            out.sort();
            out.dedup();
            out
        })
        .collect()
}

fn found(examined: usize, c: Countermodel) -> SearchResult {
    SearchResult {
        status: SearchStatus::CountermodelFound,
        models_examined: examined,
        countermodel: Some(c),
    }
}

fn exhausted(examined: usize) -> SearchResult {
    SearchResult {
        status: SearchStatus::Exhausted,
        models_examined: examined,
        countermodel: None,
    }
}

fn timeout(examined: usize) -> SearchResult {
    SearchResult {
        status: SearchStatus::Timeout,
        models_examined: examined,
        countermodel: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::{parse_kinterp, parse_kmodel2};
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn bounds_parse() {
        let b: SearchBounds = "points=2, domain=1,arity=0".parse().unwrap();
        assert_eq!((b.max_poset_points, b.max_domain_size, b.max_arity), (2, 1, 0));
        assert_eq!(b.to_string().parse::<SearchBounds>().unwrap(), b);
        assert!("points".parse::<SearchBounds>().is_err());
        assert!("depth=3".parse::<SearchBounds>().is_err());
    }

    #[test]
    fn peirce_and_excluded_middle() {
        let b: SearchBounds = "points=2,domain=1,arity=0".parse().unwrap();
        let peirce = f("forall X^0_0. forall X^0_1. (((X^0_0 -> X^0_1) -> X^0_0) -> X^0_0)");
        let r = search(&peirce, &b, Semantics::Kripke, false).unwrap();
        assert_eq!(r.status, SearchStatus::CountermodelFound);
        let c = r.countermodel.unwrap();
        let k = parse_kmodel2(&c.model).unwrap();
        assert_eq!(k.frame.poset.len(), 2);
        let s = parse_kinterp(&k.frame, &k.labels, &c.interp).unwrap();
        assert_eq!(force2(&k, &s, &peirce), Ok(false));

        let em = f("forall X^0_0. (X^0_0 \\/ (X^0_0 -> bot))");
        for full in [false, true] {
            let r = search(&em, &b, Semantics::Kripke, full).unwrap();
            assert_eq!(r.status, SearchStatus::CountermodelFound);
        }
        let r = search(&em, &SearchBounds::default(), Semantics::Classical, true).unwrap();
        assert_eq!(r.status, SearchStatus::Exhausted);
        let r = search(&peirce, &SearchBounds::default(), Semantics::Classical, false).unwrap();
        assert_eq!(r.status, SearchStatus::Exhausted);
    }

    #[test]
    fn identity_is_exhausted() {
        let id = f("X^0_0 -> X^0_0");
        let r = search(&id, &SearchBounds::default(), Semantics::Kripke, false).unwrap();
        assert_eq!(r.status, SearchStatus::Exhausted);
        assert!(r.models_examined > 0);
        let r = search(&f("X^1_0(x0) -> X^1_0(x0)"), &SearchBounds::default(), Semantics::Classical, false).unwrap();
        assert_eq!(r.status, SearchStatus::Exhausted);
    }

    #[test]
    fn comprehension_fails_in_thin_ranges() {
        let sc = f("exists X^1_0. forall x0. (X^1_0(x0) <-> (X^1_1(x0) -> bot))");
        let r = search(&sc, &"domain=2,arity=1,families=1".parse().unwrap(), Semantics::Classical, false).unwrap();
        assert_eq!(r.status, SearchStatus::CountermodelFound);
        assert!(search(&sc, &"arity=0".parse().unwrap(), Semantics::Classical, false).is_err());
    }

    #[test]
    fn zero_budget_times_out() {
        let id = f("X^0_0 -> X^0_0");
        let b: SearchBounds = "time=0".parse().unwrap();
        assert_eq!(search(&id, &b, Semantics::Kripke, false).unwrap().status, SearchStatus::Timeout);
    }
}
