mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use schur_core::abelian::factorize;
use schur_core::catalog::{corpus, export_catalog, CatalogEntry, CorpusSpec};
use schur_core::fingerprint::Fingerprint;
use schur_core::fp::{parse_presentation, perm_fingerprint, todd_coxeter, PermGroup, DEFAULT_MAX_COSETS};
use schur_core::multiplier::{multiplier, p_exponent, t_from_exponent, Method, MultiplierOptions, MultiplierReport};
use schur_core::oracle::{bar_h2, MulTable, DEFAULT_ORACLE_CAP};
use schur_core::pc::text::{parse_pc, print_pc};
use schur_core::pc::DEFAULT_CAP;
use schur_core::verify::{e1_family, verify_bounds, verify_main_theorem, SuiteConfig, VerificationReport};

use input::{resolve, Group};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(name = "schur", version, about = "Schur multipliers of finite p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_COSETS)]
    max_cosets: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Order, derived subgroup, center, exponent and fingerprint.
    Info {
        group: String,
        #[arg(long)]
        p: Option<u32>,
    },
    /// Schur multiplier and t invariant.
    Multiplier {
        group: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, default_value = "auto")]
        method: Method,
        /// Cross-check with the bar-resolution oracle under its cap.
        #[arg(long)]
        cross_check: bool,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
    },
    /// Check t = 5 for every Main-Theorem entry at the given primes.
    VerifyMainTheorem {
        #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3, 5])]
        primes: Vec<u32>,
        #[arg(long, default_value_t = 32)]
        oracle_cap: usize,
    },
    /// Check the multiplier bounds over a corpus.
    VerifyBounds {
        /// `default`, `empty`, `e1`, or a list such as `2:6,3:5`.
        #[arg(long, default_value = "default")]
        corpus: String,
        #[arg(long, default_value_t = 32)]
        oracle_cap: usize,
    },
    /// Parse a `.grp` or `.pc` file and dump its structure.
    Parse { path: PathBuf },
    /// Write the catalog data files and manifest to a directory.
    ExportCatalog {
        #[arg(long, default_value = "default")]
        corpus: String,
        dir: PathBuf,
    },
}

fn parse_corpus(spec: &str) -> Result<(Vec<CatalogEntry>, CorpusSpec), CliError> {
    let build = |s: &CorpusSpec| corpus(s).map_err(|e| CliError::Failed(e.to_string()));
    match spec {
        "default" => {
            let s = CorpusSpec::default();
            Ok((build(&s)?, s))
        }
        "empty" => Ok((Vec::new(), CorpusSpec::empty())),
        "e1" => {
            let s = CorpusSpec {
                primes: vec![(3, 7), (5, 5)],
            };
            Ok((e1_family(build(&s)?), s))
        }
        list => {
            let mut primes = Vec::new();
            for part in list.split(',') {
                let (p, n) = part
                    .split_once(':')
                    .ok_or_else(|| CliError::Usage(format!("corpus item '{part}' is not P:N")))?;
                let p = p
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad prime in '{part}'")))?;
                let n = n
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad exponent in '{part}'")))?;
                primes.push((p, n));
            }
            let s = CorpusSpec { primes };
            Ok((build(&s)?, s))
        }
    }
}

fn fp_fingerprint(
    fp: &schur_core::fp::FpPresentation,
    max_cosets: usize,
) -> Result<(PermGroup, Fingerprint), CliError> {
    let table = todd_coxeter(fp, max_cosets);
    let perm = PermGroup::regular_rep(&table)
        .ok_or_else(|| CliError::Failed(format!("coset enumeration exceeded {max_cosets} cosets")))?;
    let f = perm_fingerprint(&perm, max_cosets).ok_or_else(|| CliError::Failed("group too large".into()))?;
    Ok((perm, f))
}

fn fp_multiplier(name: &str, perm: &PermGroup, order: u128, cap: usize) -> Result<MultiplierReport, CliError> {
    let start = Instant::now();
    let (p, n) = match factorize(order as u64).as_slice() {
        [] => (2, 0),
        [(p, n)] => (*p as u32, *n as usize),
        _ => return Err(CliError::Failed(format!("order {order} is not a prime power"))),
    };
    let table = MulTable::from_perm(perm, cap).map_err(|e| CliError::Failed(e.to_string()))?;
    let inv = bar_h2(&table).map_err(|e| CliError::Failed(e.to_string()))?;
    let e = p_exponent(&inv, p).map_err(|e| CliError::Failed(e.to_string()))?;
    Ok(MultiplierReport {
        group: name.to_string(),
        prime: p,
        n,
        method: Method::Oracle,
        cross_checks: Vec::new(),
        t: t_from_exponent(n, e).map_err(|e| CliError::Failed(e.to_string()))?,
        multiplier_exponent: e,
        invariants: inv,
        free_rank: None,
        elapsed_us: start.elapsed().as_micros() as u64,
    })
}

fn suite_result(report: VerificationReport, cli: &Cli) -> Result<String, CliError> {
    let text = output::report(&report, cli.format)?;
    if report.passed() {
        Ok(text)
    } else {
        emit(&text, cli)?;
        Err(CliError::Failed(format!(
            "{} of {} claims failed",
            report.summary.failed, report.summary.total
        )))
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Info { group, p } => {
            let (name, f) = match resolve(group, *p)? {
                Group::Pc(g) => {
                    let f = g
                        .fingerprint(DEFAULT_CAP)
                        .map_err(|e| CliError::Failed(e.to_string()))?;
                    (g.name().to_string(), f)
                }
                Group::Fp { name, fp } => (name, fp_fingerprint(&fp, cli.max_cosets)?.1),
            };
            output::info(&name, &f, cli.format)
        }
        Command::Multiplier {
            group,
            p,
            method,
            cross_check,
            oracle_cap,
        } => {
            let report = match resolve(group, *p)? {
                Group::Pc(g) => {
                    let opts = MultiplierOptions {
                        method: *method,
                        cross_check: *cross_check,
                        oracle_cap: *oracle_cap,
                    };
                    multiplier(&g, &opts).map_err(|e| CliError::Failed(e.to_string()))?
                }
                Group::Fp { name, fp } => {
                    if !matches!(method, Method::Auto | Method::Oracle) {
                        return Err(CliError::Usage(format!("method {method} needs a pc presentation")));
                    }
                    let (perm, f) = fp_fingerprint(&fp, cli.max_cosets)?;
                    fp_multiplier(&name, &perm, f.order, *oracle_cap)?
                }
            };
            output::multiplier(&report, cli.format)
        }
        Command::VerifyMainTheorem { primes, oracle_cap } => {
            let cfg = SuiteConfig {
                primes: primes.clone(),
                oracle_max_order: *oracle_cap,
                max_cosets: cli.max_cosets,
                corpus: None,
            };
            suite_result(verify_main_theorem(&cfg), cli)
        }
        Command::VerifyBounds { corpus, oracle_cap } => {
            let (entries, spec) = parse_corpus(corpus)?;
            let cfg = SuiteConfig {
                primes: spec.primes.iter().map(|&(p, _)| p).collect(),
                oracle_max_order: *oracle_cap,
                max_cosets: cli.max_cosets,
                corpus: Some(corpus.clone()),
            };
            suite_result(verify_bounds(&entries, &cfg), cli)
        }
        Command::Parse { path } => {
            let src = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            let shown = path.display();
            if path.extension().is_some_and(|x| x == "pc") {
                let g = parse_pc(&src).map_err(|e| CliError::Usage(format!("{shown}:{e}")))?;
                Ok(format!(
                    "pc presentation {}: p = {}, {} generators, consistent: {}\n{}",
                    g.name(),
                    g.prime(),
                    g.ngens(),
                    g.is_consistent(),
                    print_pc(&g)
                ))
            } else {
                let fp = parse_presentation(&src).map_err(|e| CliError::Usage(format!("{shown}:{e}")))?;
                output::presentation(&fp, cli.format)
            }
        }
        Command::ExportCatalog { corpus, dir } => {
            let (entries, _) = parse_corpus(corpus)?;
            export_catalog(dir, &entries)?;
            Ok(format!("wrote {} entries to {}\n", entries.len(), dir.display()))
        }
    }
}

fn emit(text: &str, cli: &Cli) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|text| emit(&text, &cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
