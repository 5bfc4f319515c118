//! Full additive subcategories of `rep A_n`, described by their sets of
//! indecomposables, and the vectors `a` indexing the quotient-closed ones.
//!
//! `C_a` has indecomposables `F_a = {(i, j) : i <= j < i + a_i}`. Closure
//! under quotients and extensions is computed directly from the interval
//! rules, giving a brute-force torsion predicate that does not know about
//! bracket vectors.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::interval::{ext_classify, quotients_of, Interval};
use crate::parallel::map_ranges;

/// `(a_1, ..., a_n)` with `0 <= a_i <= n + 1 - i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AVector {
    a: Vec<usize>,
}

impl AVector {
    pub fn new(a: Vec<usize>) -> Result<Self> {
        let n = a.len();
        if n == 0 {
            return Err(Error::InvalidRank(0));
        }
        for (k, &v) in a.iter().enumerate() {
            let bound = n - k;
            if v > bound {
                return Err(Error::InvalidAVector {
                    vector: a.clone(),
                    index: k + 1,
                    bound,
                });
            }
        }
        Ok(AVector { a })
    }

    pub fn zeros(n: usize) -> Self {
        AVector { a: vec![0; n] }
    }

    /// `(n, n-1, ..., 1)`: every interval.
    pub fn full(n: usize) -> Self {
        AVector {
            a: (1..=n).rev().collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.a
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.a
    }

    /// `a_i` for 1-based `i`, and 0 past the end.
    pub fn get(&self, i: usize) -> usize {
        self.a.get(i - 1).copied().unwrap_or(0)
    }

    /// Componentwise order.
    pub fn leq(&self, other: &AVector) -> Result<bool> {
        check_rank(self.rank(), other.rank())?;
        Ok(self.a.iter().zip(&other.a).all(|(x, y)| x <= y))
    }

    /// `|M| = (n+1)!`.
    pub fn count(n: usize) -> usize {
        (2..=n + 1).product()
    }

    /// The `index`-th element of `M` in lexicographic order.
    pub fn from_index(n: usize, mut index: usize) -> Self {
        let mut a = vec![0; n];
        for k in (0..n).rev() {
            let radix = n - k + 1;
            a[k] = index % radix;
            index /= radix;
        }
        AVector { a }
    }

    /// All of `M` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = AVector> {
        (0..Self::count(n)).map(move |k| Self::from_index(n, k))
    }
}

impl fmt::Display for AVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.a.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for AVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for AVector {
    type Err = Error;

    /// Parses `"2,1"`; the rank is the number of entries.
    fn from_str(s: &str) -> Result<Self> {
        let a = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad vector entry {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        AVector::new(a)
    }
}

fn check_rank(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::RankMismatch { left, right })
    }
}

/// The indecomposables of a full additive subcategory.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalSet {
    n: usize,
    members: BTreeSet<Interval>,
}

impl IntervalSet {
    pub fn empty(n: usize) -> Self {
        IntervalSet {
            n,
            members: BTreeSet::new(),
        }
    }

    pub fn new<I: IntoIterator<Item = Interval>>(n: usize, members: I) -> Result<Self> {
        let mut s = IntervalSet::empty(n);
        for x in members {
            s.insert(x)?;
        }
        Ok(s)
    }

    pub fn insert(&mut self, x: Interval) -> Result<bool> {
        check_rank(self.n, x.rank())?;
        Ok(self.members.insert(x))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn contains(&self, x: Interval) -> bool {
        self.members.contains(&x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Interval> + '_ {
        self.members.iter().copied()
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &IntervalSet) -> Result<IntervalSet> {
        check_rank(self.n, other.n)?;
        Ok(IntervalSet {
            n: self.n,
            members: self.members.union(&other.members).copied().collect(),
        })
    }

    pub fn intersection(&self, other: &IntervalSet) -> Result<IntervalSet> {
        check_rank(self.n, other.n)?;
        Ok(IntervalSet {
            n: self.n,
            members: self.members.intersection(&other.members).copied().collect(),
        })
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

/// `F_a = {(i, j) : i <= j <= i + a_i - 1}`.
pub fn f_set(a: &AVector) -> IntervalSet {
    let n = a.rank();
    let members = (1..=n)
        .flat_map(|i| (i..i + a.get(i)).map(move |j| Interval::new(n, i, j).expect("a_i <= n+1-i")))
        .collect();
    IntervalSet { n, members }
}

/// The `a` with `f_set(a) == s`, if `s` is of that form.
pub fn avector_of(s: &IntervalSet) -> Option<AVector> {
    let n = s.n;
    let mut a = vec![0; n];
    for (k, slot) in a.iter_mut().enumerate() {
        let i = k + 1;
        *slot = s.iter().filter(|x| x.start() == i).count();
    }
    let a = AVector::new(a).expect("counts are bounded by n+1-i");
    (f_set(&a) == *s).then_some(a)
}

pub fn is_quotient_closed(s: &IntervalSet) -> bool {
    s.iter()
        .all(|x| quotients_of(x).into_iter().all(|q| s.contains(q)))
}

/// Smallest quotient-closed superset.
pub fn quotient_closure(s: &IntervalSet) -> IntervalSet {
    IntervalSet {
        n: s.n,
        members: s.iter().flat_map(quotients_of).collect(),
    }
}

/// `s` plus every summand of every nontrivial middle term built from two
/// members of `s`.
pub fn extension_step(s: &IntervalSet) -> IntervalSet {
    let mut out = s.clone();
    for z in s.iter() {
        for x in s.iter() {
            if let Some(middle) = ext_classify(z, x).expect("same rank") {
                out.members.extend(middle.counts().map(|(m, _)| m));
            }
        }
    }
    out
}

/// Least superset closed under quotients and extensions.
pub fn torsion_closure(s: &IntervalSet) -> IntervalSet {
    let mut current = s.clone();
    loop {
        let next = extension_step(&quotient_closure(&current));
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Same fixpoint as [`torsion_closure`], applying the two steps in the
/// opposite order.
pub fn torsion_closure_reversed(s: &IntervalSet) -> IntervalSet {
    let mut current = s.clone();
    loop {
        let next = quotient_closure(&extension_step(&current));
        if next == current {
            return current;
        }
        current = next;
    }
}

pub fn is_torsion(s: &IntervalSet) -> bool {
    quotient_closure(s) == *s && extension_step(s) == *s
}

/// Every `a` in `M` whose `C_a` is a torsion class, checked one by one with
/// [`is_torsion`], in lexicographic order. Work is split over `jobs` threads.
pub fn enumerate_torsion_brute(n: usize, jobs: usize) -> Vec<AVector> {
    map_ranges(jobs, AVector::count(n), |range| {
        range
            .map(|k| AVector::from_index(n, k))
            .filter(|a| is_torsion(&f_set(a)))
            .collect()
    })
}

/// Number of quotient-closed subcategories, found by testing every subset of
/// indecomposables. Exponential in `n(n+1)/2`; only for small `n`.
pub fn count_quotient_closed_subsets(n: usize) -> usize {
    let all = crate::interval::all_intervals(n);
    assert!(all.len() < 32, "too many intervals for subset enumeration");
    (0u32..1 << all.len())
        .filter(|mask| {
            let s = IntervalSet {
                n,
                members: all
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << k) != 0)
                    .map(|(_, &x)| x)
                    .collect(),
            };
            is_quotient_closed(&s)
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize, j: usize) -> Interval {
        Interval::new(n, i, j).unwrap()
    }

    fn set(n: usize, xs: &[(usize, usize)]) -> IntervalSet {
        IntervalSet::new(n, xs.iter().map(|&(i, j)| e(n, i, j))).unwrap()
    }

    fn av(s: &str) -> AVector {
        s.parse().unwrap()
    }

    #[test]
    fn avector_validation() {
        assert!(AVector::new(vec![3, 2, 1]).is_ok());
        assert_eq!(
            AVector::new(vec![0, 3, 0]),
            Err(Error::InvalidAVector {
                vector: vec![0, 3, 0],
                index: 2,
                bound: 2
            })
        );
        assert!(AVector::new(vec![]).is_err());
        assert!("1,x".parse::<AVector>().is_err());
        assert_eq!(av("2,1").to_string(), "2,1");
    }

    #[test]
    fn index_enumeration_is_lexicographic_and_complete() {
        let all: Vec<AVector> = AVector::all(3).collect();
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], AVector::zeros(3));
        assert_eq!(all[23], AVector::full(3));
    }

    #[test]
    fn f_set_examples() {
        assert_eq!(f_set(&av("2,1")), set(2, &[(1, 1), (1, 2), (2, 2)]));
        assert!(f_set(&AVector::zeros(4)).is_empty());
        assert_eq!(f_set(&av("1,0,1")), set(3, &[(1, 1), (3, 3)]));
    }

    #[test]
    fn avector_of_examples() {
        assert_eq!(
            avector_of(&set(2, &[(1, 1), (1, 2), (2, 2)])),
            Some(av("2,1"))
        );
        assert_eq!(avector_of(&IntervalSet::empty(3)), Some(AVector::zeros(3)));
        assert_eq!(avector_of(&set(2, &[(1, 2)])), None);
    }

    #[test]
    fn quotient_closed_examples() {
        for a in AVector::all(3) {
            assert!(is_quotient_closed(&f_set(&a)));
        }
        assert!(!is_quotient_closed(&set(2, &[(1, 2)])));
        assert!(is_quotient_closed(&IntervalSet::empty(2)));
    }

    #[test]
    fn quotient_closure_examples() {
        assert_eq!(
            quotient_closure(&set(3, &[(1, 3)])),
            set(3, &[(1, 1), (1, 2), (1, 3)])
        );
        let closed = set(3, &[(1, 1), (2, 2), (2, 3)]);
        assert_eq!(quotient_closure(&closed), closed);
        assert_eq!(quotient_closure(&set(3, &[(2, 3), (1, 1)])), closed);
    }

    #[test]
    fn extension_step_examples() {
        assert_eq!(
            extension_step(&set(2, &[(1, 1), (2, 2)])),
            set(2, &[(1, 1), (2, 2), (1, 2)])
        );
        for x in crate::interval::all_intervals(4) {
            let s = IntervalSet::new(4, [x]).unwrap();
            assert_eq!(extension_step(&s), s);
        }
        assert_eq!(
            extension_step(&set(3, &[(1, 2), (2, 3)])),
            set(3, &[(1, 2), (2, 3), (1, 3), (2, 2)])
        );
    }

    #[test]
    fn torsion_closure_examples() {
        assert_eq!(
            torsion_closure(&set(2, &[(1, 1), (2, 2)])),
            set(2, &[(1, 1), (2, 2), (1, 2)])
        );
        let t = set(2, &[(2, 2)]);
        assert_eq!(torsion_closure(&t), t);
        assert_eq!(avector_of(&t), Some(av("0,1")));
        let full = f_set(&AVector::full(3));
        assert_eq!(torsion_closure(&full), full);
    }

    #[test]
    fn torsion_predicate_examples() {
        assert!(is_torsion(&set(2, &[(1, 1), (2, 2), (1, 2)])));
        assert!(!is_torsion(&set(2, &[(1, 1), (2, 2)])));
        assert!(is_torsion(&IntervalSet::empty(2)));
    }

    #[test]
    fn brute_force_small_ranks() {
        assert_eq!(enumerate_torsion_brute(1, 1), vec![av("0"), av("1")]);
        assert_eq!(
            enumerate_torsion_brute(2, 1),
            vec![av("0,0"), av("0,1"), av("1,0"), av("2,0"), av("2,1")]
        );
        assert_eq!(enumerate_torsion_brute(3, 1).len(), 14);
        assert_eq!(enumerate_torsion_brute(4, 3), enumerate_torsion_brute(4, 1));
    }

    #[test]
    fn quotient_closed_count_matches_m() {
        for n in 1..=4 {
            assert_eq!(count_quotient_closed_subsets(n), AVector::count(n));
        }
    }

    #[test]
    fn rank_mismatch_is_reported() {
        assert!(av("1,0").leq(&av("1")).is_err());
        let mut s = IntervalSet::empty(2);
        assert!(s.insert(e(3, 1, 1)).is_err());
    }
}
