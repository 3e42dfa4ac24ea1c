//! Command-line frontend. Every subcommand reads JSON (from a file argument or
//! stdin) and writes JSON to stdout.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::characters::{chi_twist, rho_list, ArchCharacter};
use crate::corpus::{numeric_ok, run_suite, SuiteConfig};
use crate::cyclotomic::{dirichlet_characters, gauss_sum, DirichletCharacter};
use crate::error::{Error, Result};
use crate::gamma::GammaProduct;
use crate::local_factors::{big_gamma, eps_char, gamma_char, l_char, l_pair, PsiData};
use crate::orbit::{open_orbit_rank, z_matrix};
use crate::period::{verify_archimedean, Case};
use crate::weights::{balanced_places, critical_places_via_poles, is_balanced_at, FieldKind, Weight};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "rankin-periods", version, about = "Archimedean period constants and Gauss sums for GL(n) x GL(n-1)")]
pub struct Cli {
    /// Pretty-print JSON and render Gamma products as strings.
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Input JSON file; reads stdin when absent or `-`.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Tolerances {
    #[arg(long, default_value_t = 1e-8)]
    pub constancy_tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub match_tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Balanced interval [m-, m+] of a weight pair.
    Balanced(InputArg),
    /// Critical places 1/2 + j located from the poles of the L-factors.
    Critical(InputArg),
    /// The constant Omega for a case.
    Omega(InputArg),
    /// L-, epsilon- and gamma-factors of a character, or the pair factors of a case.
    Lfactor {
        #[command(flatten)]
        input: InputArg,
        /// Sign of the additive character (for a character input).
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        eps_psi: i8,
        /// Twist n of the additive character (for a character input).
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Parse a Gamma product and decide whether it is constant.
    Gamma {
        /// Expression such as `Γ_R(s+1)*Γ_R(-s+1)^-1`; reads stdin when absent.
        expr: Option<String>,
        /// Replace s by s + c before reducing (c an integer or p/2).
        #[arg(long, allow_negative_numbers = true)]
        shift: Option<String>,
        /// Replace s by 1 - s before reducing.
        #[arg(long)]
        reflect: bool,
    },
    /// Verify one case against Omega, exactly and numerically.
    Verify {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        tol: Tolerances,
    },
    /// Run the seeded verification suite.
    Suite {
        /// Suite configuration JSON; defaults apply to missing keys.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
        /// Also write the report to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// The matrix z_k.
    Zmatrix { k: usize },
    /// Rank of the orbit map at (z_n, z_{n-1}).
    Orbit { n: usize },
    /// Gauss sums of Dirichlet characters.
    Gauss {
        #[arg(long)]
        modulus: u64,
        #[arg(long, conflicts_with = "index")]
        all: bool,
        #[arg(long)]
        index: Option<usize>,
        /// Divide by phi(N).
        #[arg(long)]
        normalized: bool,
    },
}

/// Outcome of a subcommand: the JSON to print and whether verification passed.
struct Output {
    value: Value,
    passed: bool,
}

impl Output {
    fn ok(value: Value) -> Self {
        Output { value, passed: true }
    }
}

#[derive(Deserialize)]
struct PairInput {
    field: FieldKind,
    mu: Vec<Vec<i64>>,
    nu: Vec<Vec<i64>>,
}

impl PairInput {
    fn weights(self) -> Result<(Weight, Weight)> {
        Ok((Weight::new(self.field, self.mu)?, Weight::new(self.field, self.nu)?))
    }
}

#[derive(Serialize)]
struct CharacterSummary {
    index: usize,
    order: u64,
    conductor: u64,
    primitive: bool,
    parity: i64,
    gauss: crate::cyclotomic::CyclotomicNumber,
}

fn summary(chi: &DirichletCharacter, normalized: bool) -> CharacterSummary {
    CharacterSummary {
        index: chi.index(),
        order: chi.order(),
        conductor: chi.conductor(),
        primitive: chi.is_primitive(),
        parity: chi.parity(),
        gauss: gauss_sum(chi, normalized),
    }
}

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Error::InvalidArgument(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn product_value(p: &GammaProduct, pretty: bool) -> Value {
    if pretty {
        Value::String(p.to_string())
    } else {
        to_value(p)
    }
}

fn run_command(cli: &Cli, stdin: &mut dyn Read, stderr: &mut dyn Write) -> Result<Output> {
    let pretty = cli.pretty;
    match &cli.command {
        Command::Balanced(arg) => {
            let (mu, nu) = parse_json::<PairInput>(&read_input(&arg.input, stdin)?)?.weights()?;
            Ok(Output::ok(to_value(&balanced_places(&mu, &nu)?)))
        }
        Command::Critical(arg) => {
            let (mu, nu) = parse_json::<PairInput>(&read_input(&arg.input, stdin)?)?.weights()?;
            Ok(Output::ok(to_value(&critical_places_via_poles(&mu, &nu)?)))
        }
        Command::Omega(arg) => {
            let case: Case = parse_json(&read_input(&arg.input, stdin)?)?;
            if !is_balanced_at(&case.mu, &case.nu, case.j)? {
                let _ = writeln!(stderr, "warning: pair is not balanced at j = {}", case.j);
            }
            Ok(Output::ok(to_value(&case.omega()?)))
        }
        Command::Lfactor { input, eps_psi, n } => {
            let value: Value = parse_json(&read_input(&input.input, stdin)?)?;
            if value.get("kind").is_some() {
                let w: ArchCharacter = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
                let psi = PsiData::new(*eps_psi, *n)?;
                Ok(Output::ok(json!({
                    "l": product_value(&l_char(&w), pretty),
                    "epsilon": to_value(&eps_char(&w, psi)),
                    "gamma": product_value(&gamma_char(&w, psi), pretty),
                })))
            } else {
                let case: Case = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
                let (eps_n, eps_n1) = (case.eps.delta_n, case.eps.delta_n1);
                let rho = rho_list(&case.mu, eps_n)?;
                let rho2 = rho_list(&case.nu, eps_n1)?;
                let chi = chi_twist(&case.chi, case.j)?;
                let psi = PsiData::new(case.eps_psi, case.mu.n())?;
                Ok(Output::ok(json!({
                    "l_pair": product_value(&l_pair(&case.mu, &case.nu)?, pretty),
                    "big_gamma": product_value(&big_gamma(&rho, &rho2, &chi, psi)?, pretty),
                    "ratio": product_value(&case.ratio()?, pretty),
                })))
            }
        }
        Command::Gamma { expr, shift, reflect } => {
            let text = match expr {
                Some(e) => e.clone(),
                None => read_input(&None, stdin)?,
            };
            let text = text.trim();
            let mut p: GammaProduct = if text.starts_with('{') { parse_json(text)? } else { text.parse()? };
            if let Some(c) = shift {
                p = p.shift(c.parse()?);
            }
            if *reflect {
                p = p.reflect();
            }
            Ok(Output::ok(json!({
                "product": product_value(&p, pretty),
                "reduced": to_value(&p.reduce_to_constant()),
            })))
        }
        Command::Verify { input, tol } => {
            let case: Case = parse_json(&read_input(&input.input, stdin)?)?;
            let report = verify_archimedean(&case)?;
            let config = SuiteConfig { constancy_tol: tol.constancy_tol, match_tol: tol.match_tol, ..SuiteConfig::default() };
            let passed = report.exact_match && numeric_ok(&report, &config);
            Ok(Output { value: to_value(&report), passed })
        }
        Command::Suite { config, cases, seed, threads, output } => {
            let mut cfg: SuiteConfig = match config {
                Some(path) => parse_json(&read_input(&Some(path.clone()), stdin)?)?,
                None => SuiteConfig::default(),
            };
            if let Some(c) = cases {
                cfg.cases = *c;
            }
            if let Some(s) = seed {
                cfg.seed = *s;
            }
            if let Some(t) = threads {
                cfg.threads = *t;
            }
            cfg.validate()?;
            let report = run_suite(&cfg)?;
            let value = to_value(&report);
            if let Some(path) = output {
                let text = serde_json::to_string_pretty(&value).expect("serializable");
                fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            }
            Ok(Output { value, passed: report.passed() })
        }
        Command::Zmatrix { k } => Ok(Output::ok(to_value(&z_matrix(*k)))),
        Command::Orbit { n } => {
            let r = open_orbit_rank(*n)?;
            Ok(Output::ok(json!({ "n": n, "rank": r.rank, "expected": r.expected, "open": r.is_open() })))
        }
        Command::Gauss { modulus, all: _, index, normalized } => {
            let chars = dirichlet_characters(*modulus)?;
            match index {
                Some(i) => {
                    let chi = chars.get(*i).ok_or_else(|| {
                        Error::InvalidArgument(format!("index {i} out of range; modulus {modulus} has {} characters", chars.len()))
                    })?;
                    Ok(Output::ok(to_value(&gauss_sum(chi, *normalized))))
                }
                None => Ok(Output::ok(to_value(&chars.iter().map(|c| summary(c, *normalized)).collect::<Vec<_>>()))),
            }
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match run_command(cli, stdin, stderr) {
        Ok(out) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&out.value)
            } else {
                serde_json::to_string(&out.value)
            }
            .expect("serializable");
            let _ = writeln!(stdout, "{text}");
            if out.passed {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

pub fn main() -> i32 {
    let cli = Cli::parse();
    run(&cli, &mut std::io::stdin().lock(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
