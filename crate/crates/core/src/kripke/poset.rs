use std::fmt;

/// A finite partial order on points `0..n` with `0` as bottom.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    names: Vec<String>,
    /// `up[p]` has bit `q` set iff `p ≤ q`.
    up: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("poset-nonempty: no points")]
    Empty,
    #[error("poset-size: at most 64 points are supported")]
    TooMany,
    #[error("poset-antisymmetry: {0} and {1} are distinct but mutually below each other")]
    NotAntisymmetric(String, String),
    #[error("poset-bottom: {0} is not above the first point")]
    NoBottom(String),
    #[error("unknown point {0}")]
    UnknownPoint(usize),
}

impl Poset {
    /// Closes `pairs` (read as `p ≤ q`) reflexively and transitively.
    pub fn new(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let n = names.len();
        if n == 0 {
            return Err(PosetError::Empty);
        }
        if n > 64 {
            return Err(PosetError::TooMany);
        }
        let mut up: Vec<u64> = (0..n).map(|p| 1 << p).collect();
        for &(p, q) in pairs {
            if p >= n {
                return Err(PosetError::UnknownPoint(p));
            }
            if q >= n {
                return Err(PosetError::UnknownPoint(q));
            }
            up[p] |= 1 << q;
        }
        loop {
            let mut changed = false;
            for p in 0..n {
                let mut acc = up[p];
                for q in 0..n {
                    if up[p] >> q & 1 == 1 {
                        acc |= up[q];
                    }
                }
                if acc != up[p] {
                    up[p] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for p in 0..n {
            for q in p + 1..n {
                if up[p] >> q & 1 == 1 && up[q] >> p & 1 == 1 {
                    return Err(PosetError::NotAntisymmetric(names[p].clone(), names[q].clone()));
                }
            }
        }
        for (q, name) in names.iter().enumerate() {
            if up[0] >> q & 1 == 0 {
                return Err(PosetError::NoBottom(name.clone()));
            }
        }
        Ok(Poset { names, up })
    }

    /// Points named `0, 1, …`.
    pub fn numbered(n: usize, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        Self::new((0..n).map(|i| i.to_string()).collect(), pairs)
    }

    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::numbered(n, &pairs).expect("a chain is a poset")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, p: usize) -> &str {
        &self.names[p]
    }

    pub fn point(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.up[p] >> q & 1 == 1
    }

    pub fn up_mask(&self, p: usize) -> u64 {
        self.up[p]
    }

    /// Points `q ≥ p` in index order.
    pub fn cone(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        let m = self.up[p];
        (0..self.len()).filter(move |q| m >> q & 1 == 1)
    }

    /// Points ordered so that every point comes after all points below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut pts: Vec<usize> = (0..self.len()).collect();
        pts.sort_by_key(|&p| (0..self.len()).filter(|&q| self.leq(q, p)).count());
        pts
    }

    /// Non-reflexive pairs of the order, for printing.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..self.len() {
            for q in self.cone(p) {
                if p != q {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Covering pairs `p < q` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.pairs()
            .into_iter()
            .filter(|&(p, q)| !(0..self.len()).any(|r| r != p && r != q && self.leq(p, r) && self.leq(r, q)))
            .collect()
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset{:?}", self.covers())
    }
}

/// Every rooted poset with at most `max_points` points (at most 4), one per
/// isomorphism class, ordered by size.
///
/// 1 point: the singleton. 2: the chain. 3: the chain, the V (two maximal
/// points over the root). 4: the chain, the claw (three maximal points over
/// the root), the fork `0<1<2, 0<3`, the Y `0<1<2, 0<1<3`, the diamond
/// `0<1<3, 0<2<3`.
pub fn rooted_posets(max_points: usize) -> Vec<Poset> {
    let all: Vec<(usize, Vec<(usize, usize)>)> = vec![
        (1, vec![]),
        (2, vec![(0, 1)]),
        (3, vec![(0, 1), (1, 2)]),
        (3, vec![(0, 1), (0, 2)]),
        (4, vec![(0, 1), (1, 2), (2, 3)]),
        (4, vec![(0, 1), (0, 2), (0, 3)]),
        (4, vec![(0, 1), (1, 2), (0, 3)]),
        (4, vec![(0, 1), (1, 2), (1, 3)]),
        (4, vec![(0, 1), (0, 2), (1, 3), (2, 3)]),
    ];
    all.into_iter()
        .filter(|(n, _)| *n <= max_points)
        .map(|(n, ps)| Poset::numbered(n, &ps).expect("listed posets are valid"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_checks() {
        let p = Poset::numbered(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
        assert_eq!(p.cone(1).collect::<Vec<_>>(), vec![1, 2]);
        assert!(matches!(
            Poset::numbered(2, &[(0, 1), (1, 0)]),
            Err(PosetError::NotAntisymmetric(..))
        ));
        assert!(matches!(Poset::numbered(2, &[]), Err(PosetError::NoBottom(_))));
    }

    #[test]
    fn stock_is_complete_and_distinct() {
        let ps = rooted_posets(4);
        assert_eq!(ps.len(), 9);
        // distinct by a crude invariant: sorted cone sizes plus comparable pair count
        let mut keys: Vec<_> = ps
            .iter()
            .map(|p| {
                let mut cones: Vec<usize> = (0..p.len()).map(|q| p.cone(q).count()).collect();
                cones.sort();
                (cones, p.pairs().len(), p.covers().len())
            })
            .collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 9);
        assert_eq!(rooted_posets(2).len(), 2);
    }
}
