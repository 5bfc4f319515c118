use std::fmt::Write as _;
use std::path::Path;

use tamari_core::interval::{all_intervals, hom_dim};
use tamari_core::matrix_rep::hom_space_dim;
use tamari_core::tamari::{self, catalan, enumerate_bracket_vectors};
use tamari_core::tilting::{enumerate_tilting, rs_poset};
use tamari_core::verify::{self, VerifyConfig};
use tamari_core::{BracketString, BracketVector, Field, Gf, MatrixRep, MatrixRepData};

use crate::{Config, Format};

pub const ENUMERATE_BOUND: usize = 12;
pub const HASSE_BOUND: usize = 9;
pub const TILTING_BOUND: usize = 6;

pub enum CliError {
    /// Bad invocation; exit code 2.
    Usage(String),
    /// Well-formed invocation with invalid input; exit code 1.
    Domain(String),
}

impl From<tamari_core::Error> for CliError {
    fn from(e: tamari_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

pub struct Output {
    pub text: String,
    /// Set when the command ran but reported a failure.
    pub failed: bool,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Output {
            text,
            failed: false,
        }
    }
}

type CmdResult = Result<Output, CliError>;

fn bounded_n(config: &Config, bound: usize, what: &str) -> Result<usize, CliError> {
    let n = config.require_n()?;
    let bound = bound.max(config.unsafe_n.unwrap_or(0));
    if n > bound {
        return Err(CliError::Domain(format!(
            "n={n} exceeds the {what} bound {bound}; pass --unsafe-n {n} to raise it"
        )));
    }
    Ok(n)
}

fn unsupported(format: Format, command: &str) -> CliError {
    CliError::Usage(format!("{command} does not support --format {format:?}").to_lowercase())
}

fn check_rank(config: &Config, rank: usize) -> Result<(), CliError> {
    match config.n {
        Some(n) if n != rank => Err(CliError::Domain(format!(
            "input has rank {rank} but -n is {n}"
        ))),
        _ => Ok(()),
    }
}

pub fn enumerate(config: &Config) -> CmdResult {
    let n = bounded_n(config, ENUMERATE_BOUND, "enumeration")?;
    let vectors = enumerate_bracket_vectors(n);
    let text = match config.format.unwrap_or(Format::Plain) {
        Format::Plain => {
            let mut out = String::new();
            for a in &vectors {
                writeln!(out, "{a} {}", tamari::decode(a)).unwrap();
            }
            writeln!(out, "count={}", vectors.len()).unwrap();
            out
        }
        Format::Json => {
            let poset = tamari_core::Poset::from_covers(vectors, Vec::new());
            tamari::poset_json(n, &poset, |a| a, |_| None)
        }
        f @ Format::Dot => return Err(unsupported(f, "enumerate")),
    };
    Ok(text.into())
}

pub fn hasse(config: &Config) -> CmdResult {
    let n = bounded_n(config, HASSE_BOUND, "lattice")?;
    let poset = tamari::hasse(n, config.jobs);
    let text = match config.format.unwrap_or(Format::Json) {
        Format::Json => tamari::hasse_json(n, &poset),
        Format::Dot => tamari::hasse_dot(&poset),
        Format::Plain => {
            let mut out = String::new();
            for (id, a) in poset.elements().iter().enumerate() {
                writeln!(out, "{id} {a} {}", tamari::decode(a)).unwrap();
            }
            for (lo, hi) in poset.covers() {
                writeln!(out, "{lo} -> {hi}").unwrap();
            }
            out
        }
    };
    Ok(text.into())
}

pub fn encode(config: &Config, input: &str) -> CmdResult {
    let s: BracketString = input.parse()?;
    check_rank(config, s.rank())?;
    Ok(format!("{}\n", tamari::encode(&s)).into())
}

pub fn decode(config: &Config, input: &str) -> CmdResult {
    let a: BracketVector = input.parse()?;
    check_rank(config, a.rank())?;
    Ok(format!("{}\n", tamari::decode(&a)).into())
}

fn pair(config: &Config, a: &str, b: &str) -> Result<(BracketVector, BracketVector), CliError> {
    let a: BracketVector = a.parse()?;
    let b: BracketVector = b.parse()?;
    check_rank(config, a.rank())?;
    check_rank(config, b.rank())?;
    Ok((a, b))
}

pub fn meet(config: &Config, a: &str, b: &str) -> CmdResult {
    let (a, b) = pair(config, a, b)?;
    Ok(format!("{}\n", a.meet(&b)?).into())
}

pub fn join(config: &Config, a: &str, b: &str) -> CmdResult {
    let (a, b) = pair(config, a, b)?;
    Ok(format!("{}\n", a.join(&b)?).into())
}

pub fn verify(config: &Config, rep: Option<&Path>) -> CmdResult {
    if let Some(path) = rep {
        return verify_rep(path);
    }
    let n = config.require_n()?;
    let reports = verify::run_all(&VerifyConfig {
        n,
        prime: config.prime,
        jobs: config.jobs,
        raise_to: config.unsafe_n,
    })?;
    let mut text = String::new();
    for r in &reports {
        writeln!(text, "{r}").unwrap();
    }
    let failed = reports.iter().any(|r| !r.passed());
    Ok(Output { text, failed })
}

fn verify_rep(path: &Path) -> CmdResult {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))?;
    let data: MatrixRepData = serde_json::from_str(&raw)
        .map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
    match data.prime {
        2 => check_rep::<Gf<2>>(&data),
        3 => check_rep::<Gf<3>>(&data),
        5 => check_rep::<Gf<5>>(&data),
        7 => check_rep::<Gf<7>>(&data),
        p => Err(CliError::Domain(format!(
            "prime must be one of 2, 3, 5, 7, got {p}"
        ))),
    }
}

/// Decomposes the representation and checks that Hom into every interval
/// agrees with the sum over its summands.
fn check_rep<F: Field>(data: &MatrixRepData) -> CmdResult {
    let x = MatrixRep::<F>::from_data(data)?;
    let parts = x.decompose();
    let mut text = format!("summands {parts}\n");
    let mut failed = false;
    if parts.dim_vector() != x.dims() {
        writeln!(
            text,
            "FAIL dimension vector: summands give {:?}, representation has {:?}",
            parts.dim_vector(),
            x.dims()
        )
        .unwrap();
        failed = true;
    }
    for y in all_intervals(x.rank()) {
        let got = hom_space_dim(&x, &MatrixRep::interval(y))?;
        let mut expected = 0;
        for s in parts.summands() {
            expected += hom_dim(s, y)?;
        }
        if got != expected {
            writeln!(
                text,
                "FAIL Hom(X, {y:?}): matrix {got}, summands {expected}"
            )
            .unwrap();
            failed = true;
        }
    }
    if !failed {
        writeln!(
            text,
            "PASS decomposition consistent with Hom into every interval"
        )
        .unwrap();
    }
    Ok(Output { text, failed })
}

pub fn tilting(config: &Config) -> CmdResult {
    let n = bounded_n(config, TILTING_BOUND, "tilting enumeration")?;
    if config.poset {
        let poset = rs_poset(n, config.jobs);
        let gens: Vec<BracketVector> = poset.elements().iter().map(|t| t.generated()).collect();
        let text = match config.format.unwrap_or(Format::Json) {
            Format::Json => {
                let paired = tamari_core::Poset::from_covers(
                    poset
                        .elements()
                        .iter()
                        .cloned()
                        .zip(gens.iter().cloned())
                        .collect(),
                    poset.covers().to_vec(),
                );
                tamari::poset_json(n, &paired, |(_, g)| g, |(t, _)| Some(t.to_string()))
            }
            Format::Dot => poset.to_dot("tilting", |t| t.to_string()),
            Format::Plain => {
                let mut out = String::new();
                for (id, t) in poset.elements().iter().enumerate() {
                    writeln!(out, "{id} {t} gen={}", gens[id]).unwrap();
                }
                for (lo, hi) in poset.covers() {
                    writeln!(out, "{lo} -> {hi}").unwrap();
                }
                out
            }
        };
        return Ok(text.into());
    }
    let objects = enumerate_tilting(n);
    debug_assert_eq!(objects.len() as u64, catalan(n));
    match config.format.unwrap_or(Format::Plain) {
        Format::Plain => {
            let mut out = String::new();
            for t in &objects {
                writeln!(out, "{t} gen={}", t.generated()).unwrap();
            }
            writeln!(out, "count={}", objects.len()).unwrap();
            Ok(out.into())
        }
        f => Err(unsupported(f, "tilting without --poset")),
    }
}
