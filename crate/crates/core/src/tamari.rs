//! Bracket vectors: the vectors `a` for which `C_a` is a torsion class.
//!
//! `a` is a bracket vector when `j + a_{i+j} <= a_i` for every `i` and every
//! `1 <= j <= a_i`, reading `a_k = 0` past the end. They are in bijection
//! with balanced strings of `n + 1` bracket pairs, and under the
//! componentwise order they form the Tamari lattice, with bottom `(0,...,0)`
//! and top `(n, n-1, ..., 1)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::subcat::{f_set, AVector, IntervalSet};

/// First `(i, j)` (1-based, in lexicographic order) with `j + a_{i+j} > a_i`.
pub fn bracket_violation(a: &AVector) -> Option<(usize, usize)> {
    let n = a.rank();
    (1..=n).find_map(|i| {
        (1..=a.get(i))
            .take_while(|j| i + j <= n)
            .find(|&j| j + a.get(i + j) > a.get(i))
            .map(|j| (i, j))
    })
}

pub fn is_bracket_vector(a: &AVector) -> bool {
    bracket_violation(a).is_none()
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BracketVector(AVector);

impl BracketVector {
    pub fn new(a: AVector) -> Result<Self> {
        match bracket_violation(&a) {
            Some((i, j)) => Err(Error::NotBracketVector { i, j }),
            None => Ok(BracketVector(a)),
        }
    }

    pub fn bottom(n: usize) -> Self {
        BracketVector(AVector::zeros(n))
    }

    pub fn top(n: usize) -> Self {
        BracketVector(AVector::full(n))
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn entries(&self) -> &[usize] {
        self.0.entries()
    }

    pub fn get(&self, i: usize) -> usize {
        self.0.get(i)
    }

    pub fn as_avector(&self) -> &AVector {
        &self.0
    }

    /// The indecomposables of the torsion class `C_a`.
    pub fn torsion_class(&self) -> IntervalSet {
        f_set(&self.0)
    }

    /// Inclusion of torsion classes: componentwise order.
    pub fn leq(&self, other: &BracketVector) -> Result<bool> {
        self.0.leq(&other.0)
    }

    /// Componentwise minimum, which indexes the intersection `C_a ∩ C_b`.
    pub fn meet(&self, other: &BracketVector) -> Result<BracketVector> {
        check_rank(self.rank(), other.rank())?;
        let a = self
            .entries()
            .iter()
            .zip(other.entries())
            .map(|(&x, &y)| x.min(y))
            .collect();
        let a = AVector::new(a).expect("min stays in bounds");
        debug_assert!(is_bracket_vector(&a));
        Ok(BracketVector(a))
    }

    /// Least upper bound: start from the componentwise maximum and raise
    /// `a_i` to `j + a_{i+j}` wherever the bracket condition fails, until it
    /// holds everywhere.
    pub fn join(&self, other: &BracketVector) -> Result<BracketVector> {
        check_rank(self.rank(), other.rank())?;
        let n = self.rank();
        let mut c: Vec<usize> = self
            .entries()
            .iter()
            .zip(other.entries())
            .map(|(&x, &y)| x.max(y))
            .collect();
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..n {
                let mut j = 1;
                while j <= c[i] && i + j < n {
                    let need = j + c[i + j];
                    if need > c[i] {
                        c[i] = need;
                        changed = true;
                    }
                    j += 1;
                }
            }
        }
        Ok(BracketVector(
            AVector::new(c).expect("repair stays in bounds"),
        ))
    }

    /// Drops `a_1`. For `a_1 = n` this is a bijection onto rank `n - 1`.
    pub fn drop_first(&self) -> Result<BracketVector> {
        if self.rank() < 2 {
            return Err(Error::InvalidRank(self.rank() - 1));
        }
        BracketVector::new(AVector::new(self.entries()[1..].to_vec())?)
    }
}

impl fmt::Display for BracketVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for BracketVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl FromStr for BracketVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BracketVector::new(s.parse()?)
    }
}

impl TryFrom<AVector> for BracketVector {
    type Error = Error;
    fn try_from(a: AVector) -> Result<Self> {
        BracketVector::new(a)
    }
}

fn check_rank(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::RankMismatch { left, right })
    }
}

/// A balanced string over `(` and `)` with at least two pairs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BracketString(String);

impl BracketString {
    pub fn new(s: &str) -> Result<Self> {
        let mut depth: i64 = 0;
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                other => {
                    return Err(Error::MalformedBrackets(format!(
                        "unexpected character {other:?} at position {pos}"
                    )))
                }
            }
            if depth < 0 {
                return Err(Error::MalformedBrackets(format!(
                    "unmatched ')' at position {pos}"
                )));
            }
        }
        if depth != 0 {
            return Err(Error::MalformedBrackets(format!("{depth} unclosed '('")));
        }
        if s.len() < 4 {
            return Err(Error::MalformedBrackets(format!(
                "length {} is below the minimum 4 (rank 1)",
                s.len()
            )));
        }
        Ok(BracketString(s.to_string()))
    }

    /// `n`, where the string has length `2n + 2`.
    pub fn rank(&self) -> usize {
        self.0.len() / 2 - 1
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BracketString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for BracketString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl FromStr for BracketString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BracketString::new(s)
    }
}

/// For each `(` in order, the number of `(` strictly inside its pair; the
/// entry for the final `(` is always 0 and is dropped.
pub fn encode(s: &BracketString) -> BracketVector {
    let n = s.rank();
    let mut counts = vec![0; n + 1];
    let mut open = Vec::new();
    let mut opened = 0;
    for ch in s.as_str().chars() {
        if ch == '(' {
            open.push(opened);
            opened += 1;
        } else {
            let k = open.pop().expect("balanced");
            counts[k] = opened - k - 1;
        }
    }
    debug_assert_eq!(counts[n], 0);
    counts.truncate(n);
    BracketVector::new(AVector::new(counts).expect("counts within bounds"))
        .expect("encoding of a balanced string is a bracket vector")
}

/// The balanced string whose encoding is `a`.
///
/// Pair `i` directly encloses the pairs `i+1, i+1+a_{i+1}+1, ...` up to
/// `i + a_i`; at top level the same walk runs over all `n + 1` pairs.
pub fn decode(a: &BracketVector) -> BracketString {
    let n = a.rank();
    let width = |k: usize| if k <= n { a.get(k) } else { 0 };
    let mut out = String::with_capacity(2 * n + 2);
    fn emit(k: usize, width: &dyn Fn(usize) -> usize, out: &mut String) {
        out.push('(');
        let last = k + width(k);
        let mut child = k + 1;
        while child <= last {
            emit(child, width, out);
            child += width(child) + 1;
        }
        out.push(')');
    }
    let mut k = 1;
    while k <= n + 1 {
        emit(k, &width, &mut out);
        k += width(k) + 1;
    }
    BracketString(out)
}

/// All bracket vectors of rank `n`, lexicographically sorted.
///
/// Entries are chosen from the right so each `a_i` is checked against
/// already-fixed later entries; setting `a_i = 0` is always allowed, so no
/// branch dead-ends.
pub fn enumerate_bracket_vectors(n: usize) -> Vec<BracketVector> {
    fn extend(i: usize, n: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == 0 {
            out.push(a.clone());
            return;
        }
        for v in 0..=n + 1 - i {
            let ok = (1..=v)
                .take_while(|j| i + j <= n)
                .all(|j| j + a[i + j - 1] <= v);
            if ok {
                a[i - 1] = v;
                extend(i - 1, n, a, out);
            }
        }
        a[i - 1] = 0;
    }
    let mut raw = Vec::new();
    extend(n, n, &mut vec![0; n], &mut raw);
    raw.sort_unstable();
    raw.into_iter()
        .map(|a| BracketVector(AVector::new(a).expect("in bounds")))
        .collect()
}

/// Catalan number `C_k`.
pub fn catalan(k: usize) -> u64 {
    (0..k).fold(1u64, |c, m| c * 2 * (2 * m as u64 + 1) / (m as u64 + 2))
}

/// The Hasse diagram of bracket vectors under componentwise order.
pub fn hasse(n: usize, jobs: usize) -> Poset<BracketVector> {
    Poset::from_order(
        enumerate_bracket_vectors(n),
        |a, b| a.leq(b).expect("same rank"),
        jobs,
    )
}

/// Bracket vectors with `a_1 = n`: the torsion classes containing every
/// injective `E^{1j}`.
pub fn sincere_interval(n: usize) -> Vec<BracketVector> {
    enumerate_bracket_vectors(n)
        .into_iter()
        .filter(|a| a.get(1) == n)
        .collect()
}

#[derive(Serialize)]
struct PosetJson<'a> {
    n: usize,
    elements: Vec<ElementJson<'a>>,
    covers: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct ElementJson<'a> {
    id: usize,
    a: &'a [usize],
    bracket: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    summands: Option<String>,
}

/// Serializes a poset whose elements are labelled by bracket vectors.
/// `extra` may attach a `summands` string to each element.
pub fn poset_json<T>(
    n: usize,
    poset: &Poset<T>,
    vector: impl Fn(&T) -> &BracketVector,
    extra: impl Fn(&T) -> Option<String>,
) -> String {
    let doc = PosetJson {
        n,
        elements: poset
            .elements()
            .iter()
            .enumerate()
            .map(|(id, e)| ElementJson {
                id,
                a: vector(e).entries(),
                bracket: decode(vector(e)).to_string(),
                summands: extra(e),
            })
            .collect(),
        covers: poset.covers().iter().map(|&(a, b)| [a, b]).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

pub fn hasse_json(n: usize, poset: &Poset<BracketVector>) -> String {
    poset_json(n, poset, |a| a, |_| None)
}

pub fn hasse_dot(poset: &Poset<BracketVector>) -> String {
    poset.to_dot("tamari", |a| decode(a).to_string())
}
