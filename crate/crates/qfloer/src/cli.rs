//! Batch front door: file-based JSON in, deterministic text/JSON out.
//!
//! Subcommands: `pair`, `twist`, `check`, `table`, `snapshot`. Exit codes:
//! 0 pass, 1 identity failure, 2 schema error, 3 lattice-invariant error,
//! 4 splitting error. Output is byte-identical for identical inputs.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::chainmodel::{
    self, build_tilde_phi1, check_derivation, cohomology, ChainModel, ModelError, ModelLoadError,
    Report,
};
use crate::exactalg::{EigenError, QLaurent};
use crate::lefschetz::{LatticeError, LatticeLoadError, LatticeVector, QLattice, TwistWord};
use crate::qnumbers::{table_from_endomorphism, TableError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_IDENTITY: i32 = 1;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;
pub const EXIT_SPLITTING: i32 = 4;

#[derive(Parser)]
#[command(
    name = "qfloer",
    about = "q-intersection numbers of equivariant Lagrangians"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the pairing of two basis classes and its q=1 specialization.
    Pair {
        lattice: PathBuf,
        i: usize,
        j: usize,
    },
    /// Apply a twist word to a source class and pair with a target class.
    Twist {
        lattice: PathBuf,
        word: PathBuf,
        i: usize,
        j: usize,
    },
    /// Run every applicable identity checker on a chain model.
    Check { model: PathBuf },
    /// Cohomology table of a pair and its q-intersection number.
    Table {
        model: PathBuf,
        l0: String,
        l1: String,
    },
    /// Exhaustive twist-word evaluation table, written to a file.
    Snapshot {
        lattice: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parse and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version as "errors" with exit code 0
            let code = if e.use_stderr() {
                EXIT_SCHEMA
            } else {
                EXIT_PASS
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: not valid JSON: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error(transparent)]
    LatticeLoad(#[from] LatticeLoadError),
    #[error(transparent)]
    ModelLoad(#[from] ModelLoadError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("{0}")]
    Bounds(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. }
            | CliError::Write { .. }
            | CliError::Json { .. }
            | CliError::Bounds(_) => EXIT_SCHEMA,
            CliError::LatticeLoad(e) => match e {
                LatticeLoadError::Schema(_) | LatticeLoadError::SchemaVersion(_) => EXIT_SCHEMA,
                LatticeLoadError::Invariant(_) => EXIT_INVARIANT,
            },
            CliError::ModelLoad(_) => EXIT_SCHEMA,
            CliError::Lattice(e) => match e {
                LatticeError::IndexOutOfRange(_, _) | LatticeError::SizeMismatch(_, _) => {
                    EXIT_SCHEMA
                }
                _ => EXIT_INVARIANT,
            },
            CliError::Model(e) => match e {
                ModelError::NotEquivariant(_) | ModelError::NotChainMap(_) => EXIT_IDENTITY,
                _ => EXIT_SCHEMA,
            },
            CliError::Table(e) => match e {
                TableError::Eigen(EigenError::Splitting) => EXIT_SPLITTING,
                _ => EXIT_SCHEMA,
            },
        }
    }
}

fn load_json(path: &Path) -> Result<serde_json::Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.display().to_string(),
        source,
    })
}

fn load_lattice(path: &Path) -> Result<QLattice, CliError> {
    Ok(QLattice::from_json(&load_json(path)?)?)
}

fn load_model(path: &Path) -> Result<ChainModel, CliError> {
    Ok(ChainModel::from_json(&load_json(path)?)?)
}

fn print_value(value: &QLaurent) {
    println!("pairing: {value}");
    println!("at q=1: {}", value.eval_at_one());
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Pair { lattice, i, j } => {
            let lat = load_lattice(&lattice)?;
            let value = lat.pairing_entry(i, j)?;
            print_value(value);
            Ok(EXIT_PASS)
        }
        Command::Twist {
            lattice,
            word,
            i,
            j,
        } => {
            let lat = load_lattice(&lattice)?;
            let word_path = word;
            let word: TwistWord =
                serde_json::from_value(load_json(&word_path)?).map_err(|source| {
                    CliError::Json {
                        path: word_path.display().to_string(),
                        source,
                    }
                })?;
            check_index(&lat, i)?;
            check_index(&lat, j)?;
            let x = lat.apply_word(&word, &LatticeVector::basis(i, lat.size()))?;
            let value = lat.pair(&x, &LatticeVector::basis(j, lat.size()))?;
            print_value(&value);
            Ok(EXIT_PASS)
        }
        Command::Check { model } => {
            let m = load_model(&model)?;
            let reports = run_all_checks(&m)?;
            let pass = reports.iter().all(Report::passed);
            let doc = CheckDoc {
                schema: 1,
                status: if pass { "pass" } else { "fail" },
                reports,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("report json")
            );
            Ok(if pass { EXIT_PASS } else { EXIT_IDENTITY })
        }
        Command::Table { model, l0, l1 } => {
            let m = load_model(&model)?;
            let phi = build_tilde_phi1(&m, (&l0, &l1))?;
            let pc = m.pair(&l0, &l1)?;
            let coh = cohomology(pc, &phi)?;
            let table = table_from_endomorphism(&coh.induced, m.n())?;
            println!(
                "{}",
                serde_json::to_string_pretty(&table).expect("table json")
            );
            let value = table.q_intersection();
            println!("q-intersection: {value}");
            println!("at q=1: {}", value.eval_at_one());
            Ok(EXIT_PASS)
        }
        Command::Snapshot {
            lattice,
            max_len,
            out,
        } => {
            let lat = load_lattice(&lattice)?;
            if max_len > 6 {
                return Err(CliError::Bounds(format!(
                    "--max-len {max_len} exceeds the supported bound 6"
                )));
            }
            if lat.size() > 8 {
                return Err(CliError::Bounds(format!(
                    "lattice size {} exceeds the supported bound 8",
                    lat.size()
                )));
            }
            let doc = snapshot(&lat, max_len);
            let text = serde_json::to_string_pretty(&doc).expect("snapshot json");
            std::fs::write(&out, text + "\n").map_err(|source| CliError::Write {
                path: out.display().to_string(),
                source,
            })?;
            Ok(EXIT_PASS)
        }
    }
}

fn check_index(lat: &QLattice, i: usize) -> Result<(), LatticeError> {
    if i >= lat.size() {
        return Err(LatticeError::IndexOutOfRange(i, lat.size()));
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckDoc {
    schema: u32,
    status: &'static str,
    reports: Vec<Report>,
}

/// Run every checker whose pair complexes all exist; tuples with a missing
/// complex are skipped (the identities do not apply to them).
fn run_all_checks(m: &ChainModel) -> Result<Vec<Report>, CliError> {
    let labels: Vec<String> = m
        .lagrangian_labels()
        .into_iter()
        .map(str::to_string)
        .collect();
    let has = |l0: &str, l1: &str| m.pair(l0, l1).is_ok();
    let mut reports = vec![
        chainmodel::check_differentials(m),
        chainmodel::check_dilation(m),
    ];
    for l in &labels {
        reports.push(chainmodel::check_equivariance(m, l)?);
        reports.push(chainmodel::check_kvee(m, l)?);
    }
    for l0 in &labels {
        for l1 in &labels {
            if !has(l0, l1) {
                continue;
            }
            reports.push(chainmodel::check_phi1_homotopy(m, (l0, l1))?);
            if has(l1, l0) {
                reports.push(chainmodel::check_hvee(m, (l0, l1))?);
            }
        }
    }
    for l0 in &labels {
        for l1 in &labels {
            for l2 in &labels {
                if has(l0, l1) && has(l1, l2) && has(l0, l2) {
                    reports.push(chainmodel::check_phi2_homotopy(m, (l0, l1, l2))?);
                    for l3 in &labels {
                        if has(l2, l3) && has(l1, l3) && has(l0, l3) {
                            reports.push(chainmodel::check_mu3_homotopy(m, (l0, l1, l2, l3))?);
                        }
                    }
                }
            }
        }
    }
    // the derivation property needs every Lagrangian in the triple to be
    // equivariant; skip triples containing a non-equivariant one
    for l0 in &labels {
        for l1 in &labels {
            for l2 in &labels {
                if has(l0, l1) && has(l1, l2) && has(l0, l2) {
                    match check_derivation(m, (l0, l1, l2)) {
                        Ok(report) => reports.push(report),
                        Err(ModelError::NotEquivariant(_)) => continue,
                        Err(e) => return Err(e.into()),
                    }
                }
            }
        }
    }
    Ok(reports)
}

#[derive(Serialize)]
struct SnapshotDoc {
    schema: u32,
    max_len: usize,
    rows: Vec<(String, String, String, String)>,
}

fn word_name(word: &[(usize, i8)]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    word.iter()
        .map(|&(idx, exp)| format!("tau{}{}", idx, if exp >= 0 { "+" } else { "-" }))
        .collect::<Vec<_>>()
        .join(".")
}

/// All twist words over the sphere indices up to the length bound, evaluated
/// on every (source, target) pair. Enumeration order is lexicographic by
/// (length, letters, source, target); evaluation may fan out over worker
/// threads (capped by QFLOER_THREADS) with an index-ordered merge, so the
/// output is deterministic either way.
fn snapshot(lat: &QLattice, max_len: usize) -> SnapshotDoc {
    let spheres: Vec<usize> = (0..lat.size()).filter(|&v| lat.sphere_flags()[v]).collect();
    let mut words: Vec<Vec<(usize, i8)>> = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &v in &spheres {
                for exp in [1i8, -1] {
                    let mut longer = w.clone();
                    longer.push((v, exp));
                    next.push(longer);
                }
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }

    let threads = std::env::var("QFLOER_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(1)
        .min(words.len().max(1));
    let chunk = words.len().div_ceil(threads);
    let mut rows = Vec::with_capacity(words.len() * lat.size() * lat.size());
    std::thread::scope(|scope| {
        let handles: Vec<_> = words
            .chunks(chunk.max(1))
            .map(|part| scope.spawn(move || snapshot_rows(lat, part)))
            .collect();
        for handle in handles {
            rows.extend(handle.join().expect("snapshot worker"));
        }
    });
    SnapshotDoc {
        schema: 1,
        max_len,
        rows,
    }
}

fn snapshot_rows(
    lat: &QLattice,
    words: &[Vec<(usize, i8)>],
) -> Vec<(String, String, String, String)> {
    let mut rows = Vec::new();
    for letters in words {
        let word = TwistWord {
            letters: letters.clone(),
        };
        for source in 0..lat.size() {
            let image = lat
                .apply_word(&word, &LatticeVector::basis(source, lat.size()))
                .expect("sphere indices are twistable");
            for target in 0..lat.size() {
                let value = lat
                    .pair(&image, &LatticeVector::basis(target, lat.size()))
                    .expect("sizes agree");
                rows.push((
                    word_name(letters),
                    lat.labels()[source].clone(),
                    lat.labels()[target].clone(),
                    value.to_string(),
                ));
            }
        }
    }
    rows
}
