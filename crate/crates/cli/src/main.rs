use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use residue_hecke::algebra::AlgebraElement;
use residue_hecke::demazure::{check_identities, normal_form, sigma_word};
use residue_hecke::elliptic::{self, EllipticConfig, EllipticCurve};
use residue_hecke::error::Error;
use residue_hecke::io::{self, to_text, IoError, SCHEMA};
use num_complex::Complex64;
use residue_hecke::membership::{check_membership, Level};
use residue_hecke::presentations::{self as pres, RelationEntry, RelationReport};
use residue_hecke::rootdata::RootDatum;
use residue_hecke::suites;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Hecke algebras by the residue method")]
struct Cli {
    /// Seed for sampled suites; HECKE_SEED takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DatumArg {
    /// Preset name (A1, A2, B2, G2, A1aff, A2aff) or a datum JSON file.
    #[arg(short = 'd', long = "datum")]
    datum: String,
}

#[derive(Args)]
struct OutputArg {
    /// Write the result here instead of stdout.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print roots, affine data and Weyl group elements.
    Datum {
        #[command(flatten)]
        datum: DatumArg,
        /// Height bound for listed real roots; finite data default to all of them.
        #[arg(long)]
        height: Option<i64>,
        /// Length bound for listed Weyl group elements.
        #[arg(long, default_value_t = 3)]
        max_length: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Write σ_w for a word of generator labels.
    Sigma {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, num_args = 0.., value_delimiter = ',')]
        word: Vec<usize>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Multiply element files left to right.
    Mul {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Check membership of an element in H̃ or H_q.
    Check {
        #[command(flatten)]
        datum: DatumArg,
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = LevelArg::Hq)]
        level: LevelArg,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Decompose an element in the basis σ_w over ℂ[T].
    Nf {
        #[command(flatten)]
        datum: DatumArg,
        file: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Run a symbolic verification suite.
    Verify {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Length bound for braid, leading-term and normal-form suites.
        #[arg(long, default_value_t = 4)]
        max_length: usize,
        /// Number of random samples for sampled suites.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Run a numerical check of the elliptic operators.
    Elliptic {
        #[arg(long, value_enum)]
        suite: EllipticSuite,
        /// Defaults to A1 for involution and A2 for braid-failure.
        #[arg(short = 'd', long = "datum")]
        datum: Option<String>,
        /// Period ratio ω₂/ω₁ (ω₁ = 1), e.g. 0.3+0.8i.
        #[arg(long, default_value = "0+1i")]
        tau: String,
        /// The point q on ℂ/Λ.
        #[arg(long, default_value = "0.13+0.07i")]
        q: String,
        /// Tolerance of the suite's main check.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 6)]
        m_max: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Htilde,
    Hq,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Quadratic,
    Braid,
    MembershipClosure,
    DeltaCriterion,
    Bernstein,
    Daha,
    ActionPreservation,
    Presentation,
    NormalForm,
    LeadingTerm,
    Identities,
}

impl Suite {
    fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EllipticSuite {
    Involution,
    Prop46,
    BraidFailure,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: IoError },
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Algebra(#[from] Error),
    #[error(transparent)]
    Datum(#[from] residue_hecke::rootdata::DatumError),
    #[error(transparent)]
    Elliptic(#[from] elliptic::EllipticError),
    #[error("{0}")]
    Usage(String),
}

/// Whether every check passed.
type Verdict = bool;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn seed(cli_seed: u64) -> Result<u64, CliError> {
    match std::env::var("HECKE_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("HECKE_SEED must be an unsigned integer, got {s:?}"))),
        Err(_) => Ok(cli_seed),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn load_datum(spec: &str) -> Result<Arc<RootDatum>, CliError> {
    let path = Path::new(spec);
    if path.exists() {
        let text = read(path)?;
        return io::datum_from_json(&text).map_err(|source| CliError::Parse {
            path: path.to_path_buf(),
            source,
        });
    }
    Ok(RootDatum::preset(spec)?)
}

fn load_element(d: &Arc<RootDatum>, path: &Path) -> Result<AlgebraElement, CliError> {
    io::element_from_json(d, &read(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(out: &OutputArg, v: &Value) -> Result<(), CliError> {
    let text = to_text(v);
    match &out.output {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Write {
            path: p.clone(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn progress(e: &RelationEntry) {
    eprintln!("[{}] {} {}", e.status, e.relation, e.instance);
}

fn run(cli: Cli) -> Result<Verdict, CliError> {
    let seed = seed(cli.seed)?;
    match cli.command {
        Command::Datum {
            datum,
            height,
            max_length,
            out,
        } => {
            let d = load_datum(&datum.datum)?;
            emit(&out, &describe_datum(&d, height, max_length)?)?;
            Ok(true)
        }
        Command::Sigma { datum, word, out } => {
            let d = load_datum(&datum.datum)?;
            emit(&out, &io::element_to_json(&sigma_word(&d, &word)?))?;
            Ok(true)
        }
        Command::Mul { datum, files, out } => {
            let d = load_datum(&datum.datum)?;
            let mut acc = AlgebraElement::one(&d);
            for f in &files {
                acc = acc.try_mul(&load_element(&d, f)?)?;
            }
            emit(&out, &io::element_to_json(&acc))?;
            Ok(true)
        }
        Command::Check {
            datum,
            file,
            level,
            out,
        } => {
            let d = load_datum(&datum.datum)?;
            let p = load_element(&d, &file)?;
            let level = match level {
                LevelArg::Htilde => Level::Htilde,
                LevelArg::Hq => Level::Hq,
            };
            let report = check_membership(&p, level);
            emit(&out, &io::membership_report_json(&d, &report))?;
            Ok(report.element_ok())
        }
        Command::Nf { datum, file, out } => {
            let d = load_datum(&datum.datum)?;
            let p = load_element(&d, &file)?;
            match normal_form(&p) {
                Ok(nf) => {
                    emit(&out, &io::normal_form_to_json(&nf))?;
                    Ok(true)
                }
                Err(Error::NotInSpan { weyl, witness }) => {
                    emit(
                        &out,
                        &json!({"schema": SCHEMA, "in_span": false, "weyl": weyl, "witness": witness}),
                    )?;
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Verify {
            datum,
            suite,
            max_length,
            samples,
            out,
        } => {
            let d = load_datum(&datum.datum)?;
            let report = run_suite(&d, suite, max_length, samples, seed)?;
            let mut v = io::relation_report_json(&suite.name(), &d, &report);
            v["seed"] = json!(seed);
            emit(&out, &v)?;
            Ok(report.all_pass())
        }
        Command::Elliptic {
            suite,
            datum,
            tau,
            q,
            tol,
            m_max,
            samples,
            out,
        } => {
            let parse = |s: &str, what: &str| -> Result<Complex64, CliError> {
                s.parse()
                    .map_err(|_| CliError::Usage(format!("--{what} expects a complex number like 0.3+0.8i, got {s:?}")))
            };
            let curve = EllipticCurve::new(parse(&tau, "tau")?, parse(&q, "q")?)?;
            let mut config = EllipticConfig {
                samples,
                seed,
                m_max,
                ..EllipticConfig::default()
            };
            let default_datum = match suite {
                EllipticSuite::BraidFailure => "A2",
                _ => "A1",
            };
            let d = load_datum(datum.as_deref().unwrap_or(default_datum))?;
            let (name, report) = match suite {
                EllipticSuite::Involution => {
                    if let Some(t) = tol {
                        config.involution_tol = t;
                    }
                    ("involution", elliptic::check_involution(&curve, &d, &config)?)
                }
                EllipticSuite::Prop46 => {
                    if let Some(t) = tol {
                        config.residue_tol = t;
                    }
                    ("prop46", elliptic::verify_prop46(&curve, &config)?)
                }
                EllipticSuite::BraidFailure => {
                    if let Some(t) = tol {
                        config.braid_threshold = t;
                    }
                    ("braid-failure", elliptic::check_braid_failure(&curve, &d, &config)?)
                }
            };
            let params = BTreeMap::from([
                ("tau", json!(tau)),
                ("q", json!(q)),
                ("seed", json!(seed)),
                ("samples", json!(samples)),
                ("m_max", json!(m_max)),
            ]);
            emit(&out, &io::numeric_report_json(name, params, &report))?;
            Ok(report.all_pass())
        }
    }
}

fn run_suite(
    d: &Arc<RootDatum>,
    suite: Suite,
    max_length: usize,
    samples: usize,
    seed: u64,
) -> Result<RelationReport, CliError> {
    let weights = || -> Result<Vec<Vec<i64>>, CliError> {
        let mut w = pres::default_samples(d)?;
        if let Some(aff) = d.affine() {
            w.push(aff.delta.clone());
        }
        Ok(w)
    };
    Ok(match suite {
        Suite::Quadratic => pres::verify_quadratic(d, &progress)?,
        Suite::Braid => pres::verify_braid(d, max_length, &progress)?,
        Suite::MembershipClosure => suites::closure(d, samples, seed, &progress)?,
        Suite::DeltaCriterion => suites::delta_agreement(d, samples, seed, &progress)?,
        Suite::Bernstein => pres::verify_bernstein(d, &weights()?, &progress)?,
        Suite::Daha => pres::verify_daha_suite(d, &weights()?, &progress)?,
        Suite::ActionPreservation => suites::action_preservation(d, samples, seed, &progress)?,
        Suite::Presentation => pres::verify_finite_suite(d, &weights()?, max_length, &progress)?,
        Suite::NormalForm => suites::normal_form_roundtrip(d, samples, max_length, seed, &progress)?,
        Suite::LeadingTerm => suites::leading_terms(d, max_length, &progress)?,
        Suite::Identities => check_identities(d)?,
    })
}

fn describe_datum(d: &RootDatum, height: Option<i64>, max_length: usize) -> Result<Value, CliError> {
    let roots = match height {
        Some(h) => d.real_roots_up_to_height(h).into_iter().filter(|r| r.is_positive()).collect(),
        None if d.is_finite() => d.positive_roots()?.to_vec(),
        None => d.real_roots_up_to_height(3).into_iter().filter(|r| r.is_positive()).collect(),
    };
    let roots: Vec<Value> = roots
        .iter()
        .map(|r| json!({"coords": r.coords(), "character": r.character()}))
        .collect();
    let weyl: Vec<Value> = d
        .elements_up_to_length(max_length)
        .iter()
        .map(|w| json!({"word": w.word(), "length": w.length()}))
        .collect();
    let mut v = json!({
        "schema": SCHEMA,
        "name": d.name(),
        "datum": io::datum_to_json(d),
        "rank_x": d.rank_x(),
        "positive_real_roots": roots,
        "weyl": weyl,
    });
    if let Some(a) = d.affine() {
        v["affine"] = json!({
            "marks": a.marks,
            "comarks": a.comarks,
            "theta": a.theta.coords(),
            "delta": a.delta,
            "central": a.central,
        });
    }
    Ok(v)
}
