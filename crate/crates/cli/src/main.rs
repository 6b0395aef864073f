//! `quiverstab`: exact stability computations for quiver algebra modules
//! from line-oriented description files. Subcommands mirror the library
//! operations; output is JSON (exact rationals as "p/q" strings), plain
//! text, or plot CSV where it makes sense. Exit codes: 0 success, 1 domain
//! error, 2 cap exceeded, 3 invariant violation.

mod commands;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use commands::{Ctx, Outcome};
use quiverstab::error::Error;
use quiverstab::Caps;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "quiverstab", version, about = "Exact King/Bridgeland stability, walls and chambers, and nef divisor numbers for quiver algebra modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Submodule lattice cap
    #[arg(long, global = true)]
    cap_submodules: Option<usize>,

    /// Isomorphism search cap (Hom elements scanned exhaustively)
    #[arg(long, global = true)]
    cap_iso: Option<u64>,

    /// Census enumeration cap (matrix assignments)
    #[arg(long, global = true)]
    cap_census: Option<u64>,

    /// Path enumeration cap
    #[arg(long, global = true)]
    cap_paths: Option<usize>,

    /// Seed for every randomized sweep; recorded in all outputs
    #[arg(long, global = true, default_value_t = 20240)]
    seed: u64,

    /// Worker pool size for independent work items
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a description file: presentation, representations,
    /// parameters and families
    Check {
        file: PathBuf,
        /// Also check that cycles up to this length act as zero on each rep
        #[arg(long)]
        cycles: Option<usize>,
        /// With --cycles: only require cycles to act nilpotently
        #[arg(long)]
        nilpotent: bool,
    },
    /// Euler form on the simple basis (closed form, or from a tor block)
    Euler { file: PathBuf },
    /// Check chi([P_j], [S_i]) = delta and report the Gram matrix
    PairingReport {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// King and Bridgeland verdicts for the representations in the file
    Stable {
        file: PathBuf,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Harder-Narasimhan filtrations
    Hn {
        file: PathBuf,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Jordan-Hoelder factors of semistable representations
    Jh {
        file: PathBuf,
        #[arg(long)]
        rep: Option<String>,
    },
    /// S-equivalence of two semistable representations
    Sequiv {
        file: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Potential walls of the class, optionally census-checked for actuality
    Walls {
        file: PathBuf,
        /// Class like 1,1 (defaults to the params block)
        #[arg(long)]
        v: Option<String>,
        /// Census-check each wall at an interior point
        #[arg(long)]
        actual: bool,
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// Exact chamber decomposition with rational interior witnesses
    Chambers {
        file: PathBuf,
        #[arg(long)]
        v: Option<String>,
    },
    /// Classify all representations of a class at a parameter point
    Census {
        file: PathBuf,
        #[arg(long)]
        v: Option<String>,
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Rationals like -1,1 (defaults to the params block)
        #[arg(long)]
        theta: Option<String>,
    },
    /// Nef divisor number of the families in the file, by both routes
    Nef {
        file: PathBuf,
        #[arg(long)]
        family: Option<String>,
    },
    /// Randomized invariant suites over the built-in corpus
    Sweep {
        /// all, route-equality, theta-sigma, support, or hn-structure
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 50)]
        draws: usize,
    },
}

fn caps_from_env(mut caps: Caps) -> Caps {
    let Ok(spec) = std::env::var("QUIVERSTAB_CAPS") else {
        return caps;
    };
    for part in spec.split(',') {
        let Some((key, value)) = part.split_once('=') else {
            continue;
        };
        match key.trim() {
            "submodules" => {
                if let Ok(v) = value.trim().parse() {
                    caps.submodules = v;
                }
            }
            "iso" => {
                if let Ok(v) = value.trim().parse() {
                    caps.iso = v;
                }
            }
            "census" => {
                if let Ok(v) = value.trim().parse() {
                    caps.census = v;
                }
            }
            "paths" => {
                if let Ok(v) = value.trim().parse() {
                    caps.paths = v;
                }
            }
            _ => {}
        }
    }
    caps
}

fn error_code(err: &Error) -> &'static str {
    match err {
        Error::Parse { .. } => "parse",
        Error::Semantic { .. } => "semantic",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::ShapeMismatch { .. } => "shape_mismatch",
        Error::RelationViolated { .. } => "relation_violated",
        Error::CapExceeded { .. } => "cap_exceeded",
        Error::ClassMismatch { .. } => "class_mismatch",
        Error::IncompatibleRepresentations => "incompatible_representations",
        Error::Unsupported(..) => "unsupported",
        Error::ZeroCharge => "zero_charge",
        Error::ChargeOutOfRange { .. } => "charge_out_of_range",
        Error::NonUniqueDestabilizer(_) => "non_unique_destabilizer",
        Error::NotSemistable => "not_semistable",
        Error::IsoSearchInconclusive { .. } => "iso_search_inconclusive",
        Error::NotPrime(_) => "not_prime",
        Error::BadCharacteristic(..) => "bad_characteristic",
        Error::DegreeMismatch { .. } => "degree_mismatch",
        Error::UnstableFiber { .. } => "unstable_fiber",
        Error::NoWallInteriorPoint { .. } => "no_wall_interior_point",
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let mut caps = caps_from_env(Caps::default());
    if let Some(v) = cli.cap_submodules {
        caps.submodules = v;
    }
    if let Some(v) = cli.cap_iso {
        caps.iso = v;
    }
    if let Some(v) = cli.cap_census {
        caps.census = v;
    }
    if let Some(v) = cli.cap_paths {
        caps.paths = v;
    }
    let ctx = Ctx { caps, seed: cli.seed, jobs: cli.jobs };

    let load = |path: &PathBuf| -> Result<(quiverstab::Document, Vec<quiverstab::parse::Warning>), Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Semantic {
            line: 0,
            msg: format!("cannot read {}: {e}", path.display()),
        })?;
        quiverstab::parse_document(&text)
    };

    match &cli.command {
        Command::Check { file, cycles, nilpotent } => {
            let (doc, warnings) = load(file)?;
            commands::check(&doc, &warnings, &ctx, *cycles, *nilpotent)
        }
        Command::Euler { file } => {
            let (doc, _) = load(file)?;
            commands::euler(&doc, &ctx)
        }
        Command::PairingReport { file, p } => {
            let (doc, _) = load(file)?;
            commands::pairing_report(&doc, &ctx, *p)
        }
        Command::Stable { file, rep } => {
            let (doc, _) = load(file)?;
            commands::stable(&doc, &ctx, rep.as_deref())
        }
        Command::Hn { file, rep } => {
            let (doc, _) = load(file)?;
            commands::hn(&doc, &ctx, rep.as_deref())
        }
        Command::Jh { file, rep } => {
            let (doc, _) = load(file)?;
            commands::jh(&doc, &ctx, rep.as_deref())
        }
        Command::Sequiv { file, left, right } => {
            let (doc, _) = load(file)?;
            commands::sequiv(&doc, &ctx, left, right)
        }
        Command::Walls { file, v, actual, p } => {
            let (doc, _) = load(file)?;
            commands::walls_cmd(&doc, &ctx, v.as_deref(), *actual, *p)
        }
        Command::Chambers { file, v } => {
            let (doc, _) = load(file)?;
            commands::chambers_cmd(&doc, &ctx, v.as_deref())
        }
        Command::Census { file, v, p, theta } => {
            let (doc, _) = load(file)?;
            commands::census_cmd(&doc, &ctx, v.as_deref(), *p, theta.as_deref())
        }
        Command::Nef { file, family } => {
            let (doc, _) = load(file)?;
            commands::nef(&doc, &ctx, family.as_deref())
        }
        Command::Sweep { suite, draws } => commands::sweep(&ctx, suite, *draws),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            match cli.format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&outcome.doc).expect("serializable"));
                }
                Format::Csv => match &outcome.csv {
                    Some(csv) => print!("{csv}"),
                    None => {
                        eprintln!("error: this subcommand has no CSV form; use --format json or human");
                        return ExitCode::from(1);
                    }
                },
                Format::Human => {
                    print!("{}", output::render_human(&outcome.doc));
                }
            }
            ExitCode::from(u8::try_from(outcome.exit).unwrap_or(1))
        }
        Err(err) => {
            let doc = serde_json::json!({
                "error": { "code": error_code(&err), "message": err.to_string() },
                "seed": cli.seed,
            });
            if cli.format == Format::Json {
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            }
            eprintln!("error: {err}");
            ExitCode::from(if err.is_cap() { 2 } else { 1 })
        }
    }
}
