//! Tilting objects of `rep A_n`: `n` distinct intervals with no nontrivial
//! extensions among them, ordered by inclusion of the torsion classes they
//! generate.

use std::fmt;

use crate::error::{Error, Result};
use crate::interval::{all_intervals, ext_classify, Interval};
use crate::poset::Poset;
use crate::subcat::{avector_of, quotient_closure, AVector, IntervalSet};
use crate::tamari::BracketVector;

/// Whether no ordered pair from `xs` (including a summand with itself) has a
/// nontrivial extension.
pub fn is_rigid(xs: &[Interval]) -> bool {
    xs.iter().all(|&z| {
        xs.iter()
            .all(|&x| ext_classify(z, x).expect("same rank").is_none())
    })
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TiltingObject {
    n: usize,
    summands: Vec<Interval>,
}

impl TiltingObject {
    pub fn new(n: usize, mut summands: Vec<Interval>) -> Result<Self> {
        if let Some(x) = summands.iter().find(|x| x.rank() != n) {
            return Err(Error::RankMismatch {
                left: n,
                right: x.rank(),
            });
        }
        summands.sort_unstable();
        summands.dedup();
        if summands.len() != n {
            return Err(Error::Parse(format!(
                "a tilting object of rank {n} needs {n} distinct summands, got {}",
                summands.len()
            )));
        }
        if !is_rigid(&summands) {
            return Err(Error::Parse("summands have a nontrivial extension".into()));
        }
        Ok(TiltingObject { n, summands })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn summands(&self) -> &[Interval] {
        &self.summands
    }

    /// `Gen T`, the quotients of sums of copies of `T`.
    pub fn generated(&self) -> BracketVector {
        BracketVector::new(gen(self.n, &self.summands))
            .expect("Gen of a tilting object is a torsion class")
    }
}

impl fmt::Display for TiltingObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for TiltingObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.summands)
    }
}

/// `Gen X` as a vector: the quotient closure of the summands of `X`.
pub fn gen(n: usize, xs: &[Interval]) -> AVector {
    let s = IntervalSet::new(n, xs.iter().copied()).expect("same rank");
    avector_of(&quotient_closure(&s)).expect("quotient closures are of the form F_a")
}

/// All tilting objects of rank `n`, sorted by summand list.
pub fn enumerate_tilting(n: usize) -> Vec<TiltingObject> {
    let pool = all_intervals(n);
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(n);
    fn extend(
        start: usize,
        n: usize,
        pool: &[Interval],
        chosen: &mut Vec<Interval>,
        out: &mut Vec<TiltingObject>,
    ) {
        if chosen.len() == n {
            out.push(TiltingObject {
                n,
                summands: chosen.clone(),
            });
            return;
        }
        for k in start..pool.len() {
            let x = pool[k];
            let compatible = chosen.iter().all(|&y| {
                ext_classify(x, y).expect("same rank").is_none()
                    && ext_classify(y, x).expect("same rank").is_none()
            });
            if compatible {
                chosen.push(x);
                extend(k + 1, n, pool, chosen, out);
                chosen.pop();
            }
        }
    }
    extend(0, n, &pool, &mut chosen, &mut out);
    out.sort();
    out
}

/// Tilting objects ordered by `T <= V` iff `Gen T ⊆ Gen V`.
pub fn rs_poset(n: usize, jobs: usize) -> Poset<TiltingObject> {
    let objects = enumerate_tilting(n);
    let gens: Vec<(TiltingObject, BracketVector)> = objects
        .into_iter()
        .map(|t| {
            let g = t.generated();
            (t, g)
        })
        .collect();
    let ranked = Poset::from_order(gens, |a, b| a.1.leq(&b.1).expect("same rank"), jobs);
    Poset::from_covers(
        ranked.elements().iter().map(|(t, _)| t.clone()).collect(),
        ranked.covers().to_vec(),
    )
}
