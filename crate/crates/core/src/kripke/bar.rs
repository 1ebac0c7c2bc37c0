use crate::relation::Relation;

use super::{Family, Poset};

/// An antichain of points above `level`, standing for the arity-0 family
/// true exactly above some member.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Bar {
    level: usize,
    points: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BarError {
    #[error("bar-level: point {0} is not above the bar's level")]
    NotAbove(usize),
    #[error("bar-antichain: points {0} and {1} are comparable")]
    Comparable(usize, usize),
    #[error("unknown point {0}")]
    UnknownPoint(usize),
}

impl Bar {
    pub fn new(poset: &Poset, level: usize, points: Vec<usize>) -> Result<Self, BarError> {
        let mut points = points;
        points.sort();
        points.dedup();
        for &q in points.iter().chain([&level]) {
            if q >= poset.len() {
                return Err(BarError::UnknownPoint(q));
            }
        }
        for &q in &points {
            if !poset.leq(level, q) {
                return Err(BarError::NotAbove(q));
            }
        }
        for (i, &q) in points.iter().enumerate() {
            for &r in &points[i + 1..] {
                if poset.leq(q, r) || poset.leq(r, q) {
                    return Err(BarError::Comparable(q, r));
                }
            }
        }
        Ok(Bar { level, points })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }
}

/// `π(q) = 1` iff some member of the bar lies below `q`.
pub fn bar_to_family(b: &Bar, poset: &Poset) -> Family {
    let values = (0..poset.len())
        .map(|q| {
            poset
                .leq(b.level, q)
                .then(|| Relation::from_bool(b.points.iter().any(|&r| poset.leq(r, q))))
        })
        .collect();
    Family { level: b.level, values }
}

/// The minimal points at which an arity-0 family is true.
pub fn family_to_bar(f: &Family, poset: &Poset) -> Bar {
    let level = f.level();
    let truth: Vec<usize> = poset.cone(level).filter(|&q| f.at(q).as_bool()).collect();
    let points = truth
        .iter()
        .copied()
        .filter(|&q| !truth.iter().any(|&r| r != q && poset.leq(r, q)))
        .collect();
    Bar { level, points }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::monotone_families;

    #[test]
    fn examples() {
        let p = Poset::chain(2);
        let empty = bar_to_family(&Bar::new(&p, 0, vec![]).unwrap(), &p);
        assert!(!empty.at(0).as_bool() && !empty.at(1).as_bool());
        let top = bar_to_family(&Bar::new(&p, 0, vec![1]).unwrap(), &p);
        assert!(!top.at(0).as_bool() && top.at(1).as_bool());
        let all = bar_to_family(&Bar::new(&p, 0, vec![0]).unwrap(), &p);
        assert!(all.at(0).as_bool() && all.at(1).as_bool());
        assert!(matches!(Bar::new(&p, 0, vec![0, 1]), Err(BarError::Comparable(0, 1))));
        assert!(matches!(Bar::new(&p, 1, vec![0]), Err(BarError::NotAbove(0))));
    }

    #[test]
    fn inverse_on_stock() {
        for poset in crate::kripke::rooted_posets(4) {
            for level in 0..poset.len() {
                let doms = vec![vec![0]; poset.len()];
                let fams = monotone_families(&poset, level, &doms, 0);
                let bars: Vec<Bar> = fams.iter().map(|f| family_to_bar(f, &poset)).collect();
                for (f, b) in fams.iter().zip(&bars) {
                    assert_eq!(&bar_to_family(b, &poset), f);
                    assert_eq!(Bar::new(&poset, level, b.points.clone()).as_ref(), Ok(b));
                }
                let mut sorted = bars.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), bars.len());
            }
        }
    }
}
