//! Finite relations over a universe `{0, …, N-1}` stored as bitsets.
//!
//! A tuple `(a1, …, an)` is coded as `Σ a_i · N^(i-1)`.

use std::fmt;

pub type Elem = usize;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    arity: usize,
    bits: Vec<u64>,
}

pub fn code(tuple: &[Elem], universe: usize) -> usize {
    let mut c = 0;
    for &a in tuple.iter().rev() {
        c = c * universe + a;
    }
    c
}

pub fn decode(mut c: usize, arity: usize, universe: usize) -> Vec<Elem> {
    let mut out = Vec::with_capacity(arity);
    for _ in 0..arity {
        out.push(c % universe.max(1));
        c /= universe.max(1);
    }
    out
}

/// All tuples of length `arity` over `elems`, in code order when `elems` is
/// sorted.
pub fn tuples_over(elems: &[Elem], arity: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        let mut next = Vec::with_capacity(out.len() * elems.len());
        for t in &out {
            for &a in elems {
                let mut u: Vec<Elem> = t.clone();
                u.push(a);
                next.push(u);
            }
        }
        out = next;
    }
    let n = elems.iter().max().map_or(1, |m| m + 1);
    out.sort_by_key(|t| code(t, n));
    out
}

impl Relation {
    pub fn empty(arity: usize) -> Self {
        Relation { arity, bits: Vec::new() }
    }

    /// The arity-0 relation `{()}`.
    pub fn truth() -> Self {
        Relation { arity: 0, bits: vec![1] }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Self::truth()
        } else {
            Self::empty(0)
        }
    }

    pub fn from_codes(arity: usize, codes: impl IntoIterator<Item = usize>) -> Self {
        let mut r = Self::empty(arity);
        for c in codes {
            r.insert_code(c);
        }
        r
    }

    pub fn from_tuples<'a>(arity: usize, universe: usize, tuples: impl IntoIterator<Item = &'a [Elem]>) -> Self {
        Self::from_codes(
            arity,
            tuples.into_iter().map(|t| {
                debug_assert_eq!(t.len(), arity);
                code(t, universe)
            }),
        )
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn insert_code(&mut self, c: usize) {
        let (w, b) = (c / 64, c % 64);
        if self.bits.len() <= w {
            self.bits.resize(w + 1, 0);
        }
        self.bits[w] |= 1 << b;
    }

    pub fn contains_code(&self, c: usize) -> bool {
        let (w, b) = (c / 64, c % 64);
        self.bits.get(w).is_some_and(|x| x >> b & 1 == 1)
    }

    pub fn contains(&self, tuple: &[Elem], universe: usize) -> bool {
        self.contains_code(code(tuple, universe))
    }

    /// Truth value of an arity-0 relation.
    pub fn as_bool(&self) -> bool {
        self.contains_code(0)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.bits
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.bits.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn codes(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b)
        })
    }

    pub fn tuples(&self, universe: usize) -> Vec<Vec<Elem>> {
        self.codes().map(|c| decode(c, self.arity, universe)).collect()
    }

    /// Keeps only tuples all of whose components satisfy `keep`.
    pub fn restrict(&self, universe: usize, keep: impl Fn(Elem) -> bool) -> Relation {
        Relation::from_codes(
            self.arity,
            self.codes()
                .filter(|&c| decode(c, self.arity, universe).into_iter().all(&keep)),
        )
    }

    /// `{(a1..an) : (a, a1..an) ∈ self}` for a relation of arity `n+1`.
    pub fn section(&self, a: Elem, universe: usize) -> Relation {
        debug_assert!(self.arity >= 1);
        Relation::from_codes(
            self.arity - 1,
            self.codes().filter(|c| c % universe == a).map(|c| c / universe),
        )
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation/{}{:?}", self.arity, self.codes().collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_round_trip() {
        for c in 0..27 {
            assert_eq!(code(&decode(c, 3, 3), 3), c);
        }
        let ts = tuples_over(&[0, 2], 2);
        assert_eq!(ts, vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2]]);
    }

    #[test]
    fn set_operations() {
        let r = Relation::from_tuples(2, 3, [&[0, 1][..], &[2, 2]]);
        assert!(r.contains(&[0, 1], 3));
        assert!(!r.contains(&[1, 0], 3));
        assert_eq!(r.len(), 2);
        let s = Relation::from_tuples(2, 3, [&[0, 1][..]]);
        assert!(s.is_subset(&r));
        assert!(!r.is_subset(&s));
        assert_eq!(r.restrict(3, |a| a < 2), s);
        assert_eq!(r.section(0, 3), Relation::from_tuples(1, 3, [&[1][..]]));
        assert_eq!(r.section(1, 3), Relation::empty(1));
        assert!(Relation::truth().as_bool());
        assert!(!Relation::empty(0).as_bool());
        assert_eq!(Relation::from_codes(1, []), Relation::empty(1));
    }
}
