//! Oracle suites comparing independent constructions against each other.
//!
//! Each suite runs every rank from 1 up to its bound and stops at the first
//! disagreement, reporting the witnessing instance.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Gf};
use crate::interval::{all_intervals, ext_classify, hom_dim, Interval, Rep};
use crate::matrix_rep::{
    all_extensions, diagonal_embedding, hom_space_dim, split_exists, Extension, MatrixRep,
};
use crate::rotation::rotation_lattice_oracle;
use crate::subcat::enumerate_torsion_brute;
use crate::tamari::{
    catalan, decode, encode, enumerate_bracket_vectors, hasse, sincere_interval, BracketString,
};
use crate::tilting::{enumerate_tilting, rs_poset};

pub const TORSION_BOUND: usize = 6;
pub const HOM_BOUND: usize = 5;
pub const EXT_BOUND: usize = 4;
pub const ROUNDTRIP_BOUND: usize = 8;
pub const LATTICE_BOUND: usize = 7;
pub const TILTING_BOUND: usize = 6;

/// The rule under test in [`matrix_oracle`]; normally [`ext_classify`].
pub type ExtRule = dyn Fn(Interval, Interval) -> Result<Option<Rep>> + Sync;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub max_n: usize,
    /// `Ok(summary)` or `Err(witness)`.
    pub outcome: std::result::Result<String, String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Ok(s) => write!(f, "PASS {} (n<={}): {s}", self.name, self.max_n),
            Err(w) => write!(f, "FAIL {} (n<={}): {w}", self.name, self.max_n),
        }
    }
}

type Outcome = std::result::Result<String, String>;

/// Brute-force torsion classes over all of `M` equal the bracket vectors.
pub fn torsion_classes(max_n: usize, jobs: usize) -> Outcome {
    let mut total = 0;
    for n in 1..=max_n {
        let brute = enumerate_torsion_brute(n, jobs);
        let bracket: Vec<_> = enumerate_bracket_vectors(n)
            .into_iter()
            .map(|b| b.as_avector().clone())
            .collect();
        if brute != bracket {
            let extra = brute.iter().find(|a| !bracket.contains(a));
            let missing = bracket.iter().find(|a| !brute.contains(a));
            return Err(format!(
                "n={n}: brute force found {} torsion classes, bracket vectors {}; \
                 first extra {extra:?}, first missing {missing:?}",
                brute.len(),
                bracket.len()
            ));
        }
        total += brute.len();
    }
    Ok(format!("{total} torsion classes matched"))
}

/// Hom dimensions of interval pairs up to `hom_max_n`, and split/non-split
/// verdicts of every extension between interval pairs up to `ext_max_n`,
/// computed by linear algebra over `F` and compared with the closed forms.
pub fn matrix_oracle<F: Field>(hom_max_n: usize, ext_max_n: usize, rule: &ExtRule) -> Outcome {
    let mut hom_pairs = 0;
    for n in 1..=hom_max_n {
        for x in all_intervals(n) {
            for y in all_intervals(n) {
                let expected = hom_dim(x, y).map_err(|e| e.to_string())?;
                let got = hom_space_dim(&MatrixRep::<F>::interval(x), &MatrixRep::interval(y))
                    .map_err(|e| e.to_string())?;
                if expected != got {
                    return Err(format!(
                        "GF({}) Hom({x:?}, {y:?}): matrix {got}, rule {expected}",
                        F::CHARACTERISTIC
                    ));
                }
                hom_pairs += 1;
            }
        }
    }
    let mut ext_pairs = 0;
    for n in 1..=ext_max_n {
        for z in all_intervals(n) {
            for x in all_intervals(n) {
                check_ext_pair::<F>(z, x, rule)?;
                ext_pairs += 1;
            }
        }
    }
    Ok(format!(
        "GF({}): {hom_pairs} Hom pairs, {ext_pairs} Ext pairs matched",
        F::CHARACTERISTIC
    ))
}

fn check_ext_pair<F: Field>(
    z: Interval,
    x: Interval,
    rule: &ExtRule,
) -> std::result::Result<(), String> {
    let p = F::CHARACTERISTIC;
    let predicted = rule(z, x).map_err(|e| e.to_string())?;
    let zm = MatrixRep::<F>::interval(z);
    let xm = MatrixRep::<F>::interval(x);
    let extensions = all_extensions(&zm, &xm).map_err(|e| e.to_string())?;
    let nonsplit: Vec<&Extension<F>> = extensions.iter().filter(|e| !e.is_split()).collect();
    match (&predicted, nonsplit.first()) {
        (None, Some(e)) => {
            return Err(format!(
                "GF({p}) Ext({z:?}, {x:?}): rule says trivial, found non-split middle term {:?}",
                e.middle().decompose()
            ))
        }
        (Some(m), None) => {
            return Err(format!(
                "GF({p}) Ext({z:?}, {x:?}): rule predicts {m:?}, every extension splits"
            ))
        }
        _ => {}
    }
    let Some(middle) = predicted else {
        return Ok(());
    };
    for e in &nonsplit {
        let got = e.middle().decompose();
        if got != middle {
            return Err(format!(
                "GF({p}) Ext({z:?}, {x:?}): non-split middle term {got:?}, rule predicts {middle:?}"
            ));
        }
    }
    // The rule's middle term with X embedded diagonally must be a non-split
    // extension of Z by X.
    let inclusion = diagonal_embedding::<F>(x, &middle)
        .map_err(|e| format!("GF({p}) Ext({z:?}, {x:?}): diagonal embedding: {e}"))?;
    let ext = Extension::from_inclusion(inclusion.clone()).map_err(|e| e.to_string())?;
    let quotient = ext.quotient().decompose();
    if quotient != Rep::from_intervals(z.rank(), [z]).expect("same rank") {
        return Err(format!(
            "GF({p}) Ext({z:?}, {x:?}): {middle:?} / {x:?} is {quotient:?}, not {z:?}"
        ));
    }
    if split_exists(&inclusion).map_err(|e| e.to_string())? {
        return Err(format!(
            "GF({p}) Ext({z:?}, {x:?}): inclusion into {middle:?} splits"
        ));
    }
    Ok(())
}

/// [`matrix_oracle`] with the field chosen at run time.
pub fn matrix_oracle_for_prime(
    prime: u32,
    hom_max_n: usize,
    ext_max_n: usize,
    rule: &ExtRule,
) -> Result<Outcome> {
    Ok(match prime {
        2 => matrix_oracle::<Gf<2>>(hom_max_n, ext_max_n, rule),
        3 => matrix_oracle::<Gf<3>>(hom_max_n, ext_max_n, rule),
        5 => matrix_oracle::<Gf<5>>(hom_max_n, ext_max_n, rule),
        7 => matrix_oracle::<Gf<7>>(hom_max_n, ext_max_n, rule),
        other => {
            return Err(Error::FieldMismatch {
                left: 2,
                right: other,
            })
        }
    })
}

/// Balanced strings with `pairs` pairs, generated by prefix extension.
pub fn balanced_strings(pairs: usize) -> Vec<String> {
    fn grow(open: usize, close: usize, pairs: usize, cur: &mut String, out: &mut Vec<String>) {
        if close == pairs {
            out.push(cur.clone());
            return;
        }
        if open < pairs {
            cur.push('(');
            grow(open + 1, close, pairs, cur, out);
            cur.pop();
        }
        if close < open {
            cur.push(')');
            grow(open, close + 1, pairs, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    grow(0, 0, pairs, &mut String::new(), &mut out);
    out
}

/// `encode` and `decode` are mutually inverse bijections.
pub fn roundtrip(max_n: usize) -> Outcome {
    let mut checked = 0;
    for n in 1..=max_n {
        let vectors = enumerate_bracket_vectors(n);
        for a in &vectors {
            let back = encode(&decode(a));
            if &back != a {
                return Err(format!("n={n}: encode(decode({a:?})) = {back:?}"));
            }
        }
        let strings = balanced_strings(n + 1);
        if strings.len() != vectors.len() {
            return Err(format!(
                "n={n}: {} balanced strings but {} bracket vectors",
                strings.len(),
                vectors.len()
            ));
        }
        for s in strings {
            let s = BracketString::new(&s).map_err(|e| e.to_string())?;
            let back = decode(&encode(&s));
            if back != s {
                return Err(format!("n={n}: decode(encode({s})) = {back}"));
            }
        }
        checked += vectors.len();
    }
    Ok(format!("{checked} bracket vectors round-tripped"))
}

/// The componentwise order on bracket vectors is isomorphic to the rotation
/// order on binary trees.
pub fn lattice_isomorphism(max_n: usize, jobs: usize) -> Outcome {
    for n in 1..=max_n {
        let h = hasse(n, jobs);
        let r = rotation_lattice_oracle(n);
        if !h.is_isomorphic(&r) {
            return Err(format!(
                "n={n}: bracket-vector poset ({} elements, {} covers) is not isomorphic \
                 to the rotation lattice ({} elements, {} covers)",
                h.len(),
                h.covers().len(),
                r.len(),
                r.covers().len()
            ));
        }
    }
    Ok(format!("isomorphic for n=1..{max_n}"))
}

/// Tilting counts, sincerity of `Gen T`, and the order on tilting objects
/// against the rank `n-1` lattice.
pub fn tilting(max_n: usize, jobs: usize) -> Outcome {
    for n in 1..=max_n {
        let objects = enumerate_tilting(n);
        if objects.len() as u64 != catalan(n) {
            return Err(format!(
                "n={n}: {} tilting objects, expected {}",
                objects.len(),
                catalan(n)
            ));
        }
        let sincere = sincere_interval(n);
        let mut gens = Vec::with_capacity(objects.len());
        for t in &objects {
            let g = t.generated();
            if g.get(1) != n {
                return Err(format!("n={n}: Gen {t} = {g} is not sincere"));
            }
            if !sincere.contains(&g) {
                return Err(format!("n={n}: Gen {t} = {g} outside the sincere interval"));
            }
            gens.push(g);
        }
        let mut distinct = gens.clone();
        distinct.sort();
        distinct.dedup();
        if distinct != sincere {
            return Err(format!(
                "n={n}: Gen is not a bijection onto the sincere interval"
            ));
        }
        if n >= 2 {
            let mut dropped = sincere
                .iter()
                .map(|a| a.drop_first())
                .collect::<Result<Vec<_>>>()
                .map_err(|e| e.to_string())?;
            dropped.sort();
            if dropped != enumerate_bracket_vectors(n - 1) {
                return Err(format!(
                    "n={n}: dropping a_1 is not a bijection onto rank {}",
                    n - 1
                ));
            }
            if !rs_poset(n, jobs).is_isomorphic(&hasse(n - 1, jobs)) {
                return Err(format!(
                    "n={n}: tilting order is not isomorphic to the rank {} lattice",
                    n - 1
                ));
            }
        }
    }
    Ok(format!("tilting checks passed for n=1..{max_n}"))
}

/// Bounds for [`run_all`]: each suite runs up to `min(n, bound)`, where
/// `bound` is the suite's default raised to `raise_to` if given.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub n: usize,
    pub prime: u32,
    pub jobs: usize,
    pub raise_to: Option<usize>,
}

impl VerifyConfig {
    fn cap(&self, bound: usize) -> usize {
        self.n.min(bound.max(self.raise_to.unwrap_or(0)))
    }
}

/// Runs every suite in order with the real extension rule.
pub fn run_all(config: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    run_all_with_rule(config, &ext_classify)
}

/// Runs every suite in order, checking `rule` in the matrix suite.
pub fn run_all_with_rule(config: &VerifyConfig, rule: &ExtRule) -> Result<Vec<SuiteReport>> {
    let mut reports = Vec::new();
    let cap = config.cap(TORSION_BOUND);
    reports.push(SuiteReport {
        name: "torsion-classes",
        max_n: cap,
        outcome: torsion_classes(cap, config.jobs),
    });
    let hom_cap = config.cap(HOM_BOUND);
    let ext_cap = config.cap(EXT_BOUND);
    reports.push(SuiteReport {
        name: "matrix-oracle",
        max_n: hom_cap,
        outcome: matrix_oracle_for_prime(config.prime, hom_cap, ext_cap, rule)?,
    });
    let cap = config.cap(ROUNDTRIP_BOUND);
    reports.push(SuiteReport {
        name: "roundtrip",
        max_n: cap,
        outcome: roundtrip(cap),
    });
    let cap = config.cap(LATTICE_BOUND);
    reports.push(SuiteReport {
        name: "rotation-isomorphism",
        max_n: cap,
        outcome: lattice_isomorphism(cap, config.jobs),
    });
    let cap = config.cap(TILTING_BOUND);
    reports.push(SuiteReport {
        name: "tilting",
        max_n: cap,
        outcome: tilting(cap, config.jobs),
    });
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_string_counts() {
        for pairs in 0..=8 {
            assert_eq!(balanced_strings(pairs).len() as u64, catalan(pairs));
        }
    }

    #[test]
    fn degenerate_rank_passes() {
        let config = VerifyConfig {
            n: 1,
            prime: 2,
            jobs: 1,
            raise_to: None,
        };
        let reports = run_all(&config).unwrap();
        assert_eq!(reports.len(), 5);
        assert!(reports.iter().all(SuiteReport::passed), "{reports:?}");
    }

    #[test]
    fn corrupted_rule_is_caught_with_witness() {
        // Drops the second summand of every middle term.
        let corrupt = |z: Interval, x: Interval| -> Result<Option<Rep>> {
            Ok(ext_classify(z, x)?
                .map(|m| Rep::from_intervals(m.rank(), m.summands().take(1)).expect("same rank")))
        };
        let outcome = matrix_oracle::<Gf<2>>(3, 3, &corrupt);
        let witness = outcome.unwrap_err();
        assert!(witness.contains("Ext(E12, E23)"), "{witness}");
    }

    #[test]
    fn rule_that_misses_extensions_is_caught() {
        let never = |_: Interval, _: Interval| -> Result<Option<Rep>> { Ok(None) };
        let witness = matrix_oracle::<Gf<3>>(2, 2, &never).unwrap_err();
        assert!(witness.contains("Ext(E11, E22)"), "{witness}");
    }

    #[test]
    fn unknown_prime_is_rejected() {
        assert!(matrix_oracle_for_prime(11, 1, 1, &ext_classify).is_err());
    }

    #[test]
    fn caps_only_raise() {
        let c = VerifyConfig {
            n: 9,
            prime: 2,
            jobs: 1,
            raise_to: Some(7),
        };
        assert_eq!(c.cap(TORSION_BOUND), 7);
        assert_eq!(c.cap(ROUNDTRIP_BOUND), 8);
        let c = VerifyConfig {
            raise_to: Some(2),
            ..c
        };
        assert_eq!(c.cap(TORSION_BOUND), 6);
    }
}
