use clap::{Args, Parser, Subcommand};

use indmod::config::{caps_from_env, parse_cartan, parse_index_set, parse_theta};
use indmod::output;
use indmod::suites::{self, SuiteOptions};
use indmod_core::charlat::RationalCharacter;
use indmod_core::decomp::{decompose, Mode, ThetaInput};
use indmod_core::fforacle;
use indmod_core::klpoly::KlTable;
use indmod_core::rootsys::{CartanMatrix, RootDatum};
use indmod_core::sl2lab;
use indmod_core::weyl::WeylGroup;
use indmod_core::{Caps, Error};

/// Composition-series structure of induced modules for reductive groups
/// over finite-field closures: Coxeter/Kazhdan-Lusztig combinatorics, the
/// decomposition engine, SL2 p-adic factor structure, and a brute-force
/// finite-field oracle.
#[derive(Parser)]
#[command(name = "indmod", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TypeArg {
    /// Named preset: A1..A4, B2, B3, C3, D4, G2.
    #[arg(long = "type", value_name = "TYPE")]
    type_name: Option<String>,
    /// Raw Cartan matrix, rows separated by ';': "2,-1;-1,2".
    #[arg(long, value_name = "MATRIX", conflicts_with = "type_name")]
    cartan: Option<String>,
}

impl TypeArg {
    fn datum(&self, caps: &Caps) -> Result<RootDatum, CliError> {
        let cartan = match (&self.type_name, &self.cartan) {
            (Some(name), None) => CartanMatrix::preset(name).map_err(CliError::from)?,
            (None, Some(raw)) => parse_cartan(raw).map_err(CliError::Usage)?,
            _ => return Err(CliError::Usage("give exactly one of --type / --cartan".into())),
        };
        RootDatum::build_with_caps(cartan, caps).map_err(CliError::from)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decompose the induced module of a torus character.
    Decompose {
        #[command(flatten)]
        type_arg: TypeArg,
        /// Character as fundamental-weight pairings "c1,c2,...".
        #[arg(long)]
        theta: Option<String>,
        /// Direct I(theta) as 1-based indices "1,3" (cross mode only).
        #[arg(long, conflicts_with = "theta")]
        itheta: Option<String>,
        /// Coefficient characteristic: cross | natural.
        #[arg(long = "char", default_value = "natural")]
        char_mode: String,
        /// Evaluate factor dimensions at t = q^a.
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 1)]
        a: u32,
        #[arg(long)]
        json: bool,
    },
    /// Weyl group inspection.
    Weyl {
        #[command(subcommand)]
        command: WeylCommand,
    },
    /// Kazhdan-Lusztig polynomials.
    Kl {
        #[command(subcommand)]
        command: KlCommand,
    },
    /// SL2 p-adic factor combinatorics.
    Sl2 {
        #[command(subcommand)]
        command: Sl2Command,
    },
    /// Brute-force finite-field oracle.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Run the full verification suite (the acceptance criteria).
    VerifyAll {
        /// Trimmed grids for a fast smoke run.
        #[arg(long)]
        quick: bool,
        #[arg(long)]
        json: bool,
        /// Seed for the sampled batteries.
        #[arg(long, default_value_t = 0x1D40D)]
        seed: u64,
        /// Worker threads for the oracle batteries (1 = serial).
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Include wall-clock timings (output is no longer byte-stable).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Subcommand)]
enum WeylCommand {
    /// Emit the Bruhat-order Hasse diagram.
    Hasse {
        #[command(flatten)]
        type_arg: TypeArg,
        /// DOT output (default is a plain cover list).
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand)]
enum KlCommand {
    /// One polynomial P_{y,w}; words are 1-based generator lists "1,2,1".
    Poly {
        #[command(flatten)]
        type_arg: TypeArg,
        #[arg(long, allow_hyphen_values = false, default_value = "")]
        y: String,
        #[arg(long, default_value = "")]
        w: String,
    },
    /// Dump every nonzero polynomial as JSON.
    Tables {
        #[command(flatten)]
        type_arg: TypeArg,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum Sl2Command {
    /// Composition-factor highest weights of H^0(m).
    Factors {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
        /// Exclude 0 as a terminal chain value.
        #[arg(long)]
        no_zero: bool,
    },
    /// Submodule lattice of H^0(m).
    Lattice {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Strict-chain certificate for nested spans of level vectors.
    Chain {
        #[arg(long)]
        p: u64,
        /// Field degree d with q = p^d.
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long)]
        lambda: u64,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        tprime: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Brute-force factor weights of H^0(m) by spinning weight lines.
    Factors {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
    },
    /// Spin-verify the strict chain and its separating coordinate.
    Chain {
        #[arg(long)]
        lambda: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        tprime: u32,
    },
    /// Run the finite-identity checks (power sums, embeddings, exact
    /// sequence, Bruhat rewriting, coordinate-splitness).
    Verify {
        #[arg(long)]
        all: bool,
        #[arg(long)]
        quick: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0x1D40D)]
        seed: u64,
    },
}

enum CliError {
    Usage(String),
    Cap(String),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => CliError::Cap(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(CliError::Cap(msg)) => {
            eprintln!("cap exceeded: {msg}");
            3
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<(), CliError> {
    let caps = caps_from_env().map_err(CliError::Usage)?;
    match cli.command {
        Command::Decompose { type_arg, theta, itheta, char_mode, q, a, json } => {
            let datum = type_arg.datum(&caps)?;
            let group = WeylGroup::enumerate_with_caps(datum, &caps)?;
            let mode = match char_mode.as_str() {
                "cross" => Mode::Cross,
                "natural" => Mode::Natural,
                other => return Err(CliError::Usage(format!("unknown --char {other}"))),
            };
            let input = match (theta, itheta) {
                (Some(raw), None) => {
                    let weight = parse_theta(&raw).map_err(CliError::Usage)?;
                    if weight.rank() != group.rank() {
                        return Err(CliError::Usage(format!(
                            "character has {} coordinates, rank is {}",
                            weight.rank(),
                            group.rank()
                        )));
                    }
                    ThetaInput::Rational(RationalCharacter::new(weight))
                }
                (None, Some(raw)) => ThetaInput::DirectItheta(
                    parse_index_set(&raw, group.rank()).map_err(CliError::Usage)?,
                ),
                _ => {
                    return Err(CliError::Usage(
                        "give exactly one of --theta / --itheta".into(),
                    ))
                }
            };
            let report = decompose(&group, &input, mode)?;
            if json {
                println!("{}", output::decomposition_json(&group, &report, q, Some(a)));
            } else {
                print_report(&group, &report, q, a)?;
            }
            Ok(())
        }
        Command::Weyl { command } => match command {
            WeylCommand::Hasse { type_arg, dot } => {
                let datum = type_arg.datum(&caps)?;
                let group = WeylGroup::enumerate_with_caps(datum, &caps)?;
                if dot {
                    print!("{}", output::bruhat_hasse_dot(&group));
                } else {
                    for (y, w) in group.bruhat_covers() {
                        println!(
                            "{} < {}",
                            output::word_text(&group, y),
                            output::word_text(&group, w)
                        );
                    }
                }
                Ok(())
            }
        },
        Command::Kl { command } => match command {
            KlCommand::Poly { type_arg, y, w } => {
                let datum = type_arg.datum(&caps)?;
                let group = WeylGroup::enumerate_with_caps(datum, &caps)?;
                let parse_word = |raw: &str| -> Result<_, CliError> {
                    let set = raw.trim();
                    let mut element = indmod_core::weyl::IDENTITY;
                    if set.is_empty() {
                        return Ok(element);
                    }
                    for part in set.split(',') {
                        let idx: usize = part
                            .trim()
                            .parse()
                            .map_err(|_| CliError::Usage(format!("bad word letter: {part}")))?;
                        if idx == 0 || idx > group.rank() {
                            return Err(CliError::Usage(format!("letter out of range: {idx}")));
                        }
                        element = group.right_mul_simple(element, idx - 1);
                    }
                    Ok(element)
                };
                let y = parse_word(&y)?;
                let w = parse_word(&w)?;
                let table = KlTable::build(&group);
                let p = table.polynomial(y, w);
                println!(
                    "P[{}, {}] = {}",
                    output::word_text(&group, y),
                    output::word_text(&group, w),
                    p.display("q")
                );
                Ok(())
            }
            KlCommand::Tables { type_arg, json } => {
                let datum = type_arg.datum(&caps)?;
                let group = WeylGroup::enumerate_with_caps(datum, &caps)?;
                let table = KlTable::build(&group);
                let mut entries = Vec::new();
                for w in group.elements() {
                    for y in group.elements() {
                        let p = table.polynomial(y, w);
                        if !p.is_zero() {
                            entries.push(serde_json::json!({
                                "y": output::word_json(&group, y),
                                "w": output::word_json(&group, w),
                                "coeffs": p.coeffs().to_vec(),
                            }));
                        }
                    }
                }
                let value = serde_json::json!({
                    "schema": output::SCHEMA,
                    "order": group.order(),
                    "polynomials": entries,
                });
                if json {
                    println!("{value}");
                } else {
                    println!("{}", serde_json::to_string_pretty(&value).unwrap());
                }
                Ok(())
            }
        },
        Command::Sl2 { command } => match command {
            Sl2Command::Factors { p, m, no_zero } => {
                let set = sl2lab::factor_set_with(m as i128, p as i128, !no_zero)?;
                let listed: Vec<String> =
                    set.weights.iter().rev().map(|w| w.to_string()).collect();
                println!("S({m}) at p={p}: {{{}}}", listed.join(", "));
                Ok(())
            }
            Sl2Command::Lattice { p, m, dot, json } => {
                let lattice =
                    sl2lab::submodule_lattice_with_caps(m as i128, p as i128, &caps)?;
                if dot {
                    print!("{}", output::lattice_dot(&lattice));
                } else if json {
                    println!("{}", output::lattice_json(&lattice));
                } else {
                    println!(
                        "H^0({m}) at p={p}: {} submodules, {} covers",
                        lattice.members.len(),
                        lattice.hasse.len()
                    );
                    for (idx, d) in lattice.members.iter().enumerate() {
                        let weights: Vec<String> =
                            d.factor_weights.iter().rev().map(|w| w.to_string()).collect();
                        println!("  [{idx}] factors {{{}}}", weights.join(", "));
                    }
                }
                Ok(())
            }
            Sl2Command::Chain { p, d, lambda, a, t, tprime, json } => {
                let q = (p as i128).pow(d);
                let cert = sl2lab::strict_chain_certificate(lambda as i128, q, a, t, tprime)?;
                if json {
                    println!("{}", output::certificate_json(&cert));
                } else {
                    println!(
                        "chain certificate (lambda={lambda}, q={q}, a={a}, t={t}, t'={tprime}): {}",
                        if cert.is_valid() { "VALID" } else { "INVALID" }
                    );
                    println!(
                        "  inside H^0({}), separating coordinate index {}",
                        cert.mu_s, cert.distinguishing_index
                    );
                }
                if cert.is_valid() {
                    Ok(())
                } else {
                    Err(CliError::Failed("certificate invalid".into()))
                }
            }
        },
        Command::Oracle { command } => match command {
            OracleCommand::Factors { p, m } => {
                let weights = fforacle::brute_factors(m as usize, p, &caps)?;
                let listed: Vec<String> = weights.iter().rev().map(|w| w.to_string()).collect();
                println!("brute factors of H^0({m}) at p={p}: {{{}}}", listed.join(", "));
                Ok(())
            }
            OracleCommand::Chain { lambda, q, a, t, tprime } => {
                let witness = fforacle::verify_chain(lambda as usize, q, a, t, tprime, &caps)?;
                println!(
                    "spin chain (lambda={lambda}, q={q}, a={a}, t={t}, t'={tprime}): {}",
                    if witness.ok() { "STRICT" } else { "FAILED" }
                );
                println!(
                    "  dims {} > {}, separating index {} in big: {}, in small: {}",
                    witness.dim_big,
                    witness.dim_small,
                    witness.distinguishing_index,
                    witness.distinguishing_in_big,
                    witness.distinguishing_in_small
                );
                if witness.ok() {
                    Ok(())
                } else {
                    Err(CliError::Failed("chain witness failed".into()))
                }
            }
            OracleCommand::Verify { all: _, quick, json, seed } => {
                let opts = SuiteOptions { quick, seed, jobs: 1 };
                let results = vec![
                    suites::sl2_factor_oracle_equivalence(&opts),
                    suites::two_family_consistency(&opts),
                    suites::exact_sequence_suite(&opts),
                    suites::strict_chain_suite(&opts),
                    suites::identity_suites(&opts),
                    suites::splitness_and_restriction(&opts),
                ];
                if json {
                    println!("{}", output::results_json(&results, false));
                } else {
                    for r in &results {
                        println!("{}", r.line_stable());
                    }
                }
                if results.iter().all(|r| r.passed) {
                    Ok(())
                } else {
                    Err(CliError::Failed("oracle checks failed".into()))
                }
            }
        },
        Command::VerifyAll { quick, json, seed, jobs, timings } => {
            let opts = SuiteOptions { quick, seed, jobs };
            let results = suites::run_all(&opts);
            if json {
                println!("{}", output::results_json(&results, timings));
            } else {
                for r in &results {
                    println!("{}", if timings { r.line() } else { r.line_stable() });
                }
            }
            if results.iter().all(|r| r.passed) {
                Ok(())
            } else {
                Err(CliError::Failed("verification suite failed".into()))
            }
        }
    }
}

fn print_report(
    group: &WeylGroup,
    report: &indmod_core::decomp::DecompositionReport,
    q: Option<u64>,
    a: u32,
) -> Result<(), CliError> {
    let mode = match report.mode {
        Mode::Cross => "cross",
        Mode::Natural => "natural",
    };
    println!("mode: {mode}");
    if let Some(theta) = &report.theta {
        println!("theta: {:?}  I(theta): {:?}", theta.coords, report.itheta);
    } else {
        println!("I(theta): {:?} (direct)", report.itheta);
    }
    if !report.series_exists {
        let witness = report.witness.map(|i| i + 1).unwrap_or(0);
        println!("composition series: NONE (infinite length; witness simple index {witness})");
        return Ok(());
    }
    println!("composition series: exists, {} factors", report.factors.len());
    let dims = q.and_then(|q| {
        indmod_core::decomp::finite_level_dimensions(report, q, a).ok()
    });
    for (k, f) in report.factors.iter().enumerate() {
        let zwords: Vec<String> =
            f.z_set.iter().map(|&w| output::word_text(group, w)).collect();
        let mut line = format!(
            "  E_{:?}: |Z| = {}, dim(t) = {}, Z = [{}]",
            f.j,
            f.z_set.len(),
            f.dim_poly.display("t"),
            zwords.join(", ")
        );
        if let Some(dims) = &dims {
            line.push_str(&format!(", dim at q^a = {}", dims[k]));
        }
        println!("{line}");
    }
    println!(
        "head: E_{:?}; irreducible: {}",
        report.head.unwrap_or(indmod_core::Subset::EMPTY),
        report.irreducible
    );
    for note in &report.notes {
        println!("note: {note}");
    }
    Ok(())
}
