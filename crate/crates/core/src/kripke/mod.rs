//! Finite Kripke models for both languages, forcing, and the translation of
//! first-order Kripke models into second-order ones.
//!
//! Elements of all worlds are drawn from one universe `{0, …, N-1}`; the
//! domain of a world is a subset. Function symbols are interpreted by one
//! table over the universe, so tables agree on shared elements by
//! construction and only closure of each domain needs checking.

mod bar;
mod encode;
mod force;
mod full;
mod io;
mod poset;

use std::collections::BTreeMap;

use crate::classical::FnTables;
use crate::relation::{tuples_over, Elem, Relation};
use crate::syntax::{Var1, Var2};

pub use bar::{bar_to_family, family_to_bar, Bar, BarError};
pub use encode::{encode_and, encode_exists, encode_or};
pub use force::{force1, force2, interps_at, monotone1, monotone2, valid1, valid2, ForceError};
pub use full::{domain_configs, full_kmodel, is_full_k, monotone_families, peirce_countermodel, DEFAULT_FAMILY_CAP};
pub use io::{parse_kinterp, parse_kmodel1, parse_kmodel2, write_kinterp, write_kmodel1, write_kmodel2};
pub use poset::{rooted_posets, Poset, PosetError};

/// A monotone map `q ↦ P_q ⊆ D_q^n` on the cone above `level`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Family {
    level: usize,
    values: Vec<Option<Relation>>,
}

impl Family {
    /// `values[q]` must be present exactly for `q ≥ level`.
    pub fn new(poset: &Poset, level: usize, values: Vec<Option<Relation>>) -> Result<Self, KripkeError> {
        if values.len() != poset.len() {
            return Err(KripkeError::FamilyLevel(format!("family has {} entries", values.len())));
        }
        for (q, v) in values.iter().enumerate() {
            if v.is_some() != poset.leq(level, q) {
                return Err(KripkeError::FamilyLevel(format!(
                    "family at {} must be defined exactly on the points above it",
                    poset.name(level)
                )));
            }
        }
        Ok(Family { level, values })
    }

    /// The family with value `r` at every point above `level`.
    pub fn constant(poset: &Poset, level: usize, r: Relation) -> Self {
        let values = (0..poset.len())
            .map(|q| poset.leq(level, q).then(|| r.clone()))
            .collect();
        Family { level, values }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn at(&self, q: usize) -> &Relation {
        self.values[q].as_ref().expect("point in the family's cone")
    }

    pub fn get(&self, q: usize) -> Option<&Relation> {
        self.values.get(q)?.as_ref()
    }

    pub fn arity(&self) -> usize {
        self.at(self.level).arity()
    }

    pub fn restrict(&self, poset: &Poset, q: usize) -> Family {
        debug_assert!(poset.leq(self.level, q));
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(r, v)| if poset.leq(q, r) { v.clone() } else { None })
            .collect();
        Family { level: q, values }
    }

    pub fn is_monotone(&self, poset: &Poset) -> bool {
        for p in poset.cone(self.level) {
            for q in poset.cone(p) {
                if !self.at(p).is_subset(self.at(q)) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KripkeError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("domain-nonempty: world {0} has an empty domain")]
    EmptyDomain(String),
    #[error("domain-increasing: the domain of {0} is not contained in that of {1}")]
    DomainNotIncreasing(String, String),
    #[error("domain-universe: world {0} mentions an unknown element")]
    DomainUniverse(String),
    #[error("function-totality: {0} is undefined or leaves the domain of {1} on {2:?}")]
    NotTotal(String, String, Vec<Elem>),
    #[error("relation-domain: Ap{0} at {1} mentions an element outside the domain")]
    RelationDomain(usize, String),
    #[error("relation-increasing: Ap{0} at {1} is not contained in Ap{0} at {2}")]
    RelationNotIncreasing(usize, String, String),
    #[error("relation-arity: {0}")]
    RelationArity(String),
    #[error("family-level: {0}")]
    FamilyLevel(String),
    #[error("family-domain: a family of arity {0} at {1} mentions an element outside the domain")]
    FamilyDomain(usize, String),
    #[error("family-monotone: a family of arity {0} at {1} is not increasing")]
    FamilyNotMonotone(usize, String),
    #[error("family-nonempty: no family of arity {0} at {1}")]
    FamilyEmpty(usize, String),
    #[error("restriction-closure: a family of arity {0} at {1} restricted to {2} is missing there")]
    RestrictionClosure(usize, String, String),
    #[error("size-guard: {0}")]
    TooLarge(String),
}

/// Shared frame of both kinds of Kripke model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub poset: Poset,
    pub elems: Vec<String>,
    pub domains: Vec<Vec<Elem>>,
    pub fns: FnTables,
}

impl Frame {
    pub fn new(poset: Poset, elems: Vec<String>, domains: Vec<Vec<Elem>>, fns: FnTables) -> Result<Self, KripkeError> {
        let mut domains = domains;
        for d in &mut domains {
            d.sort();
            d.dedup();
        }
        let f = Frame {
            poset,
            elems,
            domains,
            fns,
        };
        f.validate()?;
        Ok(f)
    }

    /// A frame whose function tables are the canonical ones for `symbols`
    /// (constants ↦ the least element of the root domain, functions ↦
    /// first projection).
    pub fn canonical(poset: Poset, domains: Vec<Vec<Elem>>, symbols: &[(String, usize)]) -> Result<Self, KripkeError> {
        let n = domains.iter().flatten().max().map_or(1, |m| m + 1);
        let elems = (0..n).map(|i| format!("e{i}")).collect();
        let root_min = domains.first().and_then(|d| d.iter().min().copied()).unwrap_or(0);
        let mut fns = FnTables::new(n);
        let all: Vec<Elem> = (0..n).collect();
        for (name, arity) in symbols {
            for args in tuples_over(&all, *arity) {
                fns.set(name, &args, args.first().copied().unwrap_or(root_min));
            }
        }
        Self::new(poset, elems, domains, fns)
    }

    fn validate(&self) -> Result<(), KripkeError> {
        let n = self.poset.len();
        if self.domains.len() != n {
            return Err(KripkeError::RelationArity(format!(
                "{} domains for {} points",
                self.domains.len(),
                n
            )));
        }
        for p in 0..n {
            let name = self.poset.name(p).to_string();
            if self.domains[p].is_empty() {
                return Err(KripkeError::EmptyDomain(name));
            }
            if self.domains[p].iter().any(|a| *a >= self.elems.len()) {
                return Err(KripkeError::DomainUniverse(name));
            }
            for q in self.poset.cone(p) {
                if !self.domains[p].iter().all(|a| self.domains[q].contains(a)) {
                    return Err(KripkeError::DomainNotIncreasing(name, self.poset.name(q).into()));
                }
            }
            if let Some((f, args)) = self.fns.closure_violation(&self.domains[p]) {
                return Err(KripkeError::NotTotal(f, name, args));
            }
        }
        Ok(())
    }

    pub fn universe(&self) -> usize {
        self.elems.len()
    }

    pub fn in_domain(&self, p: usize, a: Elem) -> bool {
        self.domains[p].contains(&a)
    }

    fn relation_within(&self, r: &Relation, p: usize) -> bool {
        let n = self.universe();
        r.codes()
            .all(|c| crate::relation::decode(c, r.arity(), n).iter().all(|a| self.in_domain(p, *a)))
    }
}

/// First-order Kripke model: `relations[n][p] = α_{n,p} ⊆ D_p^(n+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel1 {
    pub frame: Frame,
    pub relations: BTreeMap<usize, Vec<Relation>>,
}

/// Second-order Kripke model: `families[n][p] = Π_{n,p}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel2 {
    pub frame: Frame,
    pub families: BTreeMap<usize, Vec<Vec<Family>>>,
    /// Names given to particular families, for interpretations in files.
    pub labels: BTreeMap<String, Family>,
}

impl KripkeModel1 {
    pub fn new(frame: Frame, relations: BTreeMap<usize, Vec<Relation>>) -> Result<Self, KripkeError> {
        let poset = &frame.poset;
        for (n, rs) in &relations {
            if rs.len() != poset.len() {
                return Err(KripkeError::RelationArity(format!("Ap{n} needs one relation per point")));
            }
            for (p, r) in rs.iter().enumerate() {
                if r.arity() != n + 1 {
                    return Err(KripkeError::RelationArity(format!("Ap{n} needs arity {}", n + 1)));
                }
                if !frame.relation_within(r, p) {
                    return Err(KripkeError::RelationDomain(*n, poset.name(p).into()));
                }
                for q in poset.cone(p) {
                    if !r.is_subset(&rs[q]) {
                        return Err(KripkeError::RelationNotIncreasing(
                            *n,
                            poset.name(p).into(),
                            poset.name(q).into(),
                        ));
                    }
                }
            }
        }
        Ok(KripkeModel1 { frame, relations })
    }

    pub fn poset(&self) -> &Poset {
        &self.frame.poset
    }
}

impl KripkeModel2 {
    pub fn new(frame: Frame, families: BTreeMap<usize, Vec<Vec<Family>>>) -> Result<Self, KripkeError> {
        Self::with_labels(frame, families, BTreeMap::new())
    }

    pub fn with_labels(
        frame: Frame,
        families: BTreeMap<usize, Vec<Vec<Family>>>,
        labels: BTreeMap<String, Family>,
    ) -> Result<Self, KripkeError> {
        let mut families = families;
        for per_point in families.values_mut() {
            for pi in per_point.iter_mut() {
                pi.sort();
                pi.dedup();
            }
        }
        let m = KripkeModel2 {
            frame,
            families,
            labels,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn poset(&self) -> &Poset {
        &self.frame.poset
    }

    fn validate(&self) -> Result<(), KripkeError> {
        let poset = &self.frame.poset;
        for (n, per_point) in &self.families {
            if per_point.len() != poset.len() {
                return Err(KripkeError::FamilyLevel(format!("arity {n} needs a family set at every point")));
            }
            for (p, pi) in per_point.iter().enumerate() {
                let pname = poset.name(p).to_string();
                if pi.is_empty() {
                    return Err(KripkeError::FamilyEmpty(*n, pname));
                }
                for f in pi {
                    if f.level != p {
                        return Err(KripkeError::FamilyLevel(format!(
                            "a family listed at {pname} lives at {}",
                            poset.name(f.level)
                        )));
                    }
                    Family::new(poset, p, f.values.clone())?;
                    for q in poset.cone(p) {
                        if f.at(q).arity() != *n {
                            return Err(KripkeError::FamilyLevel(format!("a family at {pname} has the wrong arity")));
                        }
                        if !self.frame.relation_within(f.at(q), q) {
                            return Err(KripkeError::FamilyDomain(*n, pname));
                        }
                    }
                    if !f.is_monotone(poset) {
                        return Err(KripkeError::FamilyNotMonotone(*n, pname));
                    }
                    for q in poset.cone(p) {
                        if !per_point[q].contains(&f.restrict(poset, q)) {
                            return Err(KripkeError::RestrictionClosure(*n, pname, poset.name(q).into()));
                        }
                    }
                }
            }
        }
        for (name, f) in &self.labels {
            let n = f.arity();
            let ok = self
                .families
                .get(&n)
                .is_some_and(|pp| pp[f.level].contains(f));
            if !ok {
                return Err(KripkeError::FamilyLevel(format!("labelled family {name} is not a member")));
            }
        }
        Ok(())
    }

    pub fn contains(&self, f: &Family) -> bool {
        self.families
            .get(&f.arity())
            .is_some_and(|pp| pp.get(f.level).is_some_and(|pi| pi.contains(f)))
    }
}

/// Interpretation at a level: elements of `D_level` and members of
/// `Π_{n,level}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KInterp {
    pub level: usize,
    pub fo: BTreeMap<Var1, Elem>,
    pub so: BTreeMap<Var2, Family>,
}

impl KInterp {
    pub fn at(level: usize) -> Self {
        KInterp {
            level,
            ..Default::default()
        }
    }

    pub fn with1(mut self, x: Var1, a: Elem) -> Self {
        self.fo.insert(x, a);
        self
    }

    pub fn with2(mut self, x: Var2, f: Family) -> Self {
        self.so.insert(x, f);
        self
    }

    /// The same interpretation seen at `q ≥ level`.
    pub fn restrict(&self, poset: &Poset, q: usize) -> KInterp {
        KInterp {
            level: q,
            fo: self.fo.clone(),
            so: self.so.iter().map(|(k, f)| (*k, f.restrict(poset, q))).collect(),
        }
    }
}

/// `|a|_n`, the family `q ↦ {(a1..an) ∈ D_q^n : (a, a1..an) ∈ α_{n,q}}`
/// on the cone above `level`.
pub fn kextension(k: &KripkeModel1, n: usize, a: Elem, level: usize) -> Option<Family> {
    let rs = k.relations.get(&n)?;
    let poset = k.poset();
    let u = k.frame.universe();
    let values = (0..poset.len())
        .map(|q| poset.leq(level, q).then(|| rs[q].section(a, u)))
        .collect();
    Some(Family { level, values })
}

/// `rev(K)`: `Π_{n,p} = {|a|_n : a ∈ D_p}` for every arity with relations.
pub fn rev_kmodel(k: &KripkeModel1) -> KripkeModel2 {
    let poset = k.poset();
    let mut families = BTreeMap::new();
    for n in k.relations.keys() {
        let per_point = (0..poset.len())
            .map(|p| {
                k.frame.domains[p]
                    .iter()
                    .map(|a| kextension(k, *n, *a, p).expect("present"))
                    .collect()
            })
            .collect();
        families.insert(*n, per_point);
    }
    KripkeModel2::new(k.frame.clone(), families).expect("translated models satisfy the invariants")
}

/// `rev(σ)`: first-order values unchanged, `X^n_i ↦ |σ(x_i)|_n`.
pub fn rev_kinterp(k: &KripkeModel1, sigma: &KInterp) -> KInterp {
    let mut out = KInterp::at(sigma.level);
    out.fo = sigma.fo.clone();
    for (x, a) in &sigma.fo {
        for n in k.relations.keys() {
            out.so
                .insert(Var2::new(*n, x.0), kextension(k, *n, *a, sigma.level).expect("present"));
        }
    }
    out
}
