//! Indecomposable representations of the path quiver `1 -> 2 -> ... -> n`
//! as intervals, and the closed-form rules for morphisms, extensions and
//! quotients between them.
//!
//! Indices are 1-based everywhere, including the serialized forms.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The interval representation `E^{ij}`: one-dimensional at vertices
/// `i..=j`, identity maps between them, zero elsewhere.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    n: usize,
    i: usize,
    j: usize,
}

impl Interval {
    pub fn new(n: usize, i: usize, j: usize) -> Result<Self> {
        if 1 <= i && i <= j && j <= n {
            Ok(Interval { n, i, j })
        } else {
            Err(Error::InvalidInterval { n, i, j })
        }
    }

    pub fn rank(self) -> usize {
        self.n
    }

    /// Left endpoint.
    pub fn start(self) -> usize {
        self.i
    }

    /// Right endpoint.
    pub fn end(self) -> usize {
        self.j
    }

    pub fn len(self) -> usize {
        self.j - self.i + 1
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn contains_vertex(self, p: usize) -> bool {
        self.i <= p && p <= self.j
    }

    /// Dimension vector, indexed from vertex 1 at position 0.
    pub fn dim_vector(self) -> Vec<usize> {
        (1..=self.n)
            .map(|p| usize::from(self.contains_vertex(p)))
            .collect()
    }

    /// Parses `"[i,j]"` for the given rank.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [i,j], got {s:?}")))?;
        let (i, j) = body
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected [i,j], got {s:?}")))?;
        let i = parse_index(i)?;
        let j = parse_index(j)?;
        Interval::new(n, i, j)
    }
}

fn parse_index(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad index {s:?}")))
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.i, self.j)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}{}", self.i, self.j)
    }
}

/// All `n(n+1)/2` intervals of rank `n`, in lexicographic order.
pub fn all_intervals(n: usize) -> Vec<Interval> {
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 1..=n {
        for j in i..=n {
            out.push(Interval { n, i, j });
        }
    }
    out
}

/// A direct sum of intervals, kept as a canonical multiset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rep {
    n: usize,
    summands: BTreeMap<Interval, usize>,
}

impl Rep {
    pub fn zero(n: usize) -> Self {
        Rep {
            n,
            summands: BTreeMap::new(),
        }
    }

    pub fn from_intervals<I: IntoIterator<Item = Interval>>(n: usize, it: I) -> Result<Self> {
        let mut rep = Rep::zero(n);
        for x in it {
            rep.push(x)?;
        }
        Ok(rep)
    }

    pub fn push(&mut self, x: Interval) -> Result<()> {
        check_rank(self.n, x.n)?;
        *self.summands.entry(x).or_insert(0) += 1;
        Ok(())
    }

    pub fn direct_sum(&self, other: &Rep) -> Result<Rep> {
        check_rank(self.n, other.n)?;
        let mut out = self.clone();
        for (&x, &m) in &other.summands {
            *out.summands.entry(x).or_insert(0) += m;
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn multiplicity(&self, x: Interval) -> usize {
        self.summands.get(&x).copied().unwrap_or(0)
    }

    /// Total number of summands, counted with multiplicity.
    pub fn len(&self) -> usize {
        self.summands.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Distinct summands with their multiplicities, in canonical order.
    pub fn counts(&self) -> impl Iterator<Item = (Interval, usize)> + '_ {
        self.summands.iter().map(|(&x, &m)| (x, m))
    }

    /// Summands with repetition, in canonical order.
    pub fn summands(&self) -> impl Iterator<Item = Interval> + '_ {
        self.summands
            .iter()
            .flat_map(|(&x, &m)| std::iter::repeat_n(x, m))
    }

    pub fn dim_vector(&self) -> Vec<usize> {
        let mut dims = vec![0; self.n];
        for (x, m) in self.counts() {
            for d in &mut dims[x.i - 1..x.j] {
                *d += m;
            }
        }
        dims
    }

    /// Parses `"[[1,3],[2,2]]"`; repeated intervals encode multiplicity.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected a list of intervals, got {s:?}")))?
            .trim();
        let mut rep = Rep::zero(n);
        if body.is_empty() {
            return Ok(rep);
        }
        for part in body.split("],") {
            let part = part.trim();
            let part = if part.ends_with(']') {
                part.to_string()
            } else {
                format!("{part}]")
            };
            rep.push(Interval::parse(n, &part)?)?;
        }
        Ok(rep)
    }
}

impl fmt::Display for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.summands().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.summands().map(|x| format!("{x:?}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for Interval {
    type Err = Error;

    /// Parses `"[i,j]"` taking the rank to be `j`; use [`Interval::parse`]
    /// when the ambient rank is known.
    fn from_str(s: &str) -> Result<Self> {
        let probe = Interval::parse(usize::MAX, s)?;
        Interval::new(probe.j, probe.i, probe.j)
    }
}

fn check_rank(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::RankMismatch { left, right })
    }
}

/// `dim Hom(E^{ij}, E^{kl})`: 1 when `k <= i <= l <= j`, else 0.
pub fn hom_dim(src: Interval, dst: Interval) -> Result<usize> {
    check_rank(src.n, dst.n)?;
    let (i, j, k, l) = (src.i, src.j, dst.i, dst.j);
    Ok(usize::from(k <= i && i <= l && l <= j))
}

/// Classifies extensions of `quotient = E^{ij}` by `sub = E^{kl}`.
///
/// Returns the middle term `E^{il} + E^{kj}` of the non-split extension when
/// `i+1 <= k <= j+1 <= l` (dropping `E^{kj}` when `k = j+1`), and `None` when
/// every extension splits.
pub fn ext_classify(quotient: Interval, sub: Interval) -> Result<Option<Rep>> {
    check_rank(quotient.n, sub.n)?;
    let n = quotient.n;
    let (i, j, k, l) = (quotient.i, quotient.j, sub.i, sub.j);
    if !(i < k && k <= j + 1 && j < l) {
        return Ok(None);
    }
    let mut middle = Rep::zero(n);
    middle.push(Interval { n, i, j: l })?;
    if k <= j {
        middle.push(Interval { n, i: k, j })?;
    }
    Ok(Some(middle))
}

/// The nonzero indecomposable quotients of `E^{ij}`: `E^{ip}` for `i <= p <= j`.
pub fn quotients_of(x: Interval) -> Vec<Interval> {
    (x.i..=x.j)
        .map(|p| Interval {
            n: x.n,
            i: x.i,
            j: p,
        })
        .collect()
}

/// Whether `x` surjects onto `target = E^{kl}`, i.e. some summand `E^{kj}`
/// of `x` has `j >= l`.
pub fn surjects_onto(x: &Rep, target: Interval) -> Result<bool> {
    check_rank(x.n, target.n)?;
    Ok(x.counts().any(|(s, _)| s.i == target.i && s.j >= target.j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize, j: usize) -> Interval {
        Interval::new(n, i, j).unwrap()
    }

    #[test]
    fn interval_validation() {
        assert!(Interval::new(3, 0, 1).is_err());
        assert!(Interval::new(3, 2, 1).is_err());
        assert!(Interval::new(3, 2, 4).is_err());
        assert_eq!(e(3, 2, 3).dim_vector(), vec![0, 1, 1]);
    }

    #[test]
    fn hom_examples() {
        assert_eq!(hom_dim(e(3, 1, 3), e(3, 1, 2)).unwrap(), 1);
        assert_eq!(hom_dim(e(3, 1, 1), e(3, 1, 1)).unwrap(), 1);
        assert_eq!(hom_dim(e(3, 1, 1), e(3, 2, 2)).unwrap(), 0);
        assert_eq!(
            hom_dim(e(3, 1, 1), e(2, 1, 1)),
            Err(Error::RankMismatch { left: 3, right: 2 })
        );
    }

    #[test]
    fn ext_examples() {
        let m = ext_classify(e(2, 1, 1), e(2, 2, 2)).unwrap().unwrap();
        assert_eq!(m, Rep::from_intervals(2, [e(2, 1, 2)]).unwrap());

        let m = ext_classify(e(3, 1, 2), e(3, 2, 3)).unwrap().unwrap();
        assert_eq!(m, Rep::from_intervals(3, [e(3, 1, 3), e(3, 2, 2)]).unwrap());

        assert_eq!(ext_classify(e(3, 2, 2), e(3, 1, 1)).unwrap(), None);
        assert!(ext_classify(e(3, 1, 1), e(2, 2, 2)).is_err());
    }

    #[test]
    fn no_self_extensions() {
        for x in all_intervals(6) {
            assert_eq!(ext_classify(x, x).unwrap(), None);
        }
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(
            quotients_of(e(3, 1, 3)),
            vec![e(3, 1, 1), e(3, 1, 2), e(3, 1, 3)]
        );
        assert_eq!(quotients_of(e(3, 2, 2)), vec![e(3, 2, 2)]);
        assert_eq!(
            quotients_of(e(4, 2, 4)),
            vec![e(4, 2, 2), e(4, 2, 3), e(4, 2, 4)]
        );
    }

    #[test]
    fn surjection_examples() {
        let r = |xs: &[Interval]| Rep::from_intervals(3, xs.iter().copied()).unwrap();
        assert!(surjects_onto(&r(&[e(3, 1, 3)]), e(3, 1, 2)).unwrap());
        assert!(surjects_onto(&r(&[e(3, 1, 2)]), e(3, 1, 2)).unwrap());
        assert!(!surjects_onto(&r(&[e(3, 2, 3)]), e(3, 1, 3)).unwrap());
        assert!(!surjects_onto(&Rep::zero(3), e(3, 1, 1)).unwrap());
    }

    #[test]
    fn rep_is_canonical_and_serializes() {
        let a = Rep::from_intervals(3, [e(3, 2, 2), e(3, 1, 3), e(3, 2, 2)]).unwrap();
        let b = Rep::from_intervals(3, [e(3, 2, 2), e(3, 2, 2), e(3, 1, 3)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "[[1,3],[2,2],[2,2]]");
        assert_eq!(Rep::parse(3, "[[1,3],[2,2],[2,2]]").unwrap(), a);
        assert_eq!(Rep::parse(3, "[]").unwrap(), Rep::zero(3));
        assert_eq!(a.dim_vector(), vec![1, 3, 1]);
        assert_eq!(a.len(), 3);
        assert!(Rep::parse(3, "[[1,4]]").is_err());
        assert_eq!(Rep::zero(3).direct_sum(&a).unwrap(), a);
    }

    #[test]
    fn interval_parse() {
        assert_eq!(Interval::parse(4, " [2, 3] ").unwrap(), e(4, 2, 3));
        assert!(Interval::parse(4, "2,3").is_err());
        assert_eq!("[1,2]".parse::<Interval>().unwrap(), e(2, 1, 2));
    }
}
