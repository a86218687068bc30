use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use origami_core::closure::{six_identities_check, ClosureState, DEFAULT_MAX_POINTS};
use origami_core::density::{contraction_sequence, measure_density, DensityOptions, Window, DEFAULT_PRECISION_BITS};
use origami_core::geometry::{common_radicand, parse_direction_list, parse_point, Direction};
use origami_core::ringcheck::{classify_directions, classify_order, compute_z, construct_from_cos, ring_predicate};

mod emit;

use emit::{CliError, Format};

#[derive(Parser, Debug)]
#[command(name = "origami", version, about = "Exact origami point sets and origami rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand the closure of {0, 1} under a direction set.
    Closure(ClosureArgs),
    /// Is Z + zZ closed under multiplication, for z = I_{u,v}(0, 1)?
    CheckRing(PairArgs),
    /// Classify Z + zZ as not a ring, a proper suborder, or the maximal order.
    Classify(ClassifyArgs),
    /// Build u, v from cos α = s/t so that R(1, u, v) is a ring.
    Construct(ConstructArgs),
    /// Trace the contraction sequence of a four-direction set.
    Contract(ContractArgs),
    /// Measure how a closure fills a window.
    Density(DensityArgs),
    /// Check the identities that keep Z + zZ closed under intersection.
    Identities(PairArgs),
}

#[derive(Args, Debug)]
struct ClosureArgs {
    #[arg(long)]
    dirs: String,
    #[arg(long, default_value_t = 3)]
    depth: u32,
    #[arg(long, env = "ORIGAMI_MAX_POINTS", default_value_t = DEFAULT_MAX_POINTS as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_points: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Two directions `u,v`, both different from 1.
    #[arg(long)]
    dirs: String,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ClassifyArgs {
    #[arg(long)]
    dirs: Option<String>,
    /// `re,im`, each a literal such as `5` or `1*sqrt(56)`.
    #[arg(long)]
    z: Option<String>,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// `s/t` with 0 < s < t coprime.
    #[arg(long)]
    cos: String,
}

#[derive(Args, Debug)]
struct ContractArgs {
    #[arg(long)]
    dirs: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    steps: u64,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DensityArgs {
    #[arg(long)]
    dirs: String,
    #[arg(long, default_value_t = 3)]
    depth: u32,
    /// `x0,y0,x1,y1`.
    #[arg(long, default_value = "0,0,1,1")]
    window: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=4096))]
    grid: u64,
    #[arg(long, default_value_t = DEFAULT_PRECISION_BITS, value_parser = clap::value_parser!(u32).range(64..))]
    precision: u32,
    #[arg(long, env = "ORIGAMI_MAX_POINTS", default_value_t = DEFAULT_MAX_POINTS as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_points: u64,
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn parse_dirs(spec: &str, same_field: bool) -> Result<Vec<Direction>, CliError> {
    let dirs = parse_direction_list(spec).map_err(|e| CliError::Usage(e.to_string()))?;
    if same_field {
        common_radicand(dirs.iter().map(Direction::vec)).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(dirs)
}

fn parse_pair(spec: &str) -> Result<(Direction, Direction), CliError> {
    match <[Direction; 2]>::try_from(parse_dirs(spec, true)?) {
        Ok([u, v]) => Ok((u, v)),
        Err(d) => Err(CliError::Usage(format!("expected exactly two directions, got {}", d.len()))),
    }
}

fn parse_window(s: &str) -> Result<Window, CliError> {
    let parts: Result<Vec<f64>, _> = s.split(',').map(|c| c.trim().parse::<f64>()).collect();
    match parts.ok().as_deref() {
        Some(&[x0, y0, x1, y1]) => Window::new(x0, y0, x1, y1).map_err(|e| CliError::Usage(e.to_string())),
        _ => Err(CliError::Usage(format!("window must be x0,y0,x1,y1, got {s:?}"))),
    }
}

fn parse_cos(s: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Usage(format!("--cos expects s/t with positive integers, got {s:?}"));
    let (a, b) = s.split_once('/').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn run(cmd: Command) -> Result<Value, CliError> {
    match cmd {
        Command::Closure(a) => {
            let dirs = parse_dirs(&a.dirs, true)?;
            let state = ClosureState::with_unit_seeds(dirs)
                .map_err(CliError::domain)?
                .expand_to(a.depth, a.max_points as usize);
            let text = match a.format {
                Format::Json => emit::json_string(&emit::closure_json(&state, a.max_points as usize)),
                Format::Csv => emit::closure_csv(&state),
                Format::Svg => emit::closure_svg(&state),
            };
            emit::write_or_print(&text, a.out.as_deref())?;
            Ok(Value::Null)
        }
        Command::CheckRing(a) => {
            let (u, v) = parse_pair(&a.dirs)?;
            let z = compute_z(&u, &v).map_err(CliError::domain)?;
            emit::to_value(&ring_predicate(&z).map_err(CliError::domain)?)
        }
        Command::Classify(a) => {
            let report = match (a.dirs, a.z) {
                (Some(d), _) => {
                    let (u, v) = parse_pair(&d)?;
                    classify_directions(&u, &v)
                }
                (None, Some(z)) => {
                    let z = parse_point(&z).map_err(|e| CliError::Usage(e.to_string()))?;
                    classify_order(&z)
                }
                (None, None) => unreachable!("clap enforces the argument group"),
            };
            emit::to_value(&report.map_err(CliError::domain)?)
        }
        Command::Construct(a) => {
            let (s, t) = parse_cos(&a.cos)?;
            emit::to_value(&construct_from_cos(s, t).map_err(CliError::domain)?)
        }
        Command::Contract(a) => {
            let dirs = parse_dirs(&a.dirs, true)?;
            let trace = contraction_sequence(&dirs, a.steps as usize).map_err(CliError::domain)?;
            if let Some(path) = a.svg {
                emit::write_or_print(&emit::contraction_svg(&trace), Some(&path))?;
            }
            emit::to_value(&trace)
        }
        Command::Density(a) => {
            let dirs = parse_dirs(&a.dirs, false)?;
            let window = parse_window(&a.window)?;
            let opts = DensityOptions { max_points: a.max_points as usize, precision_bits: a.precision };
            let rep = measure_density(&dirs, a.depth, window, a.grid as usize, opts).map_err(CliError::domain)?;
            if let Some(path) = a.svg {
                emit::write_or_print(&emit::density_svg(&rep), Some(&path))?;
            }
            emit::to_value(&rep)
        }
        Command::Identities(a) => {
            let (u, v) = parse_pair(&a.dirs)?;
            emit::to_value(&six_identities_check(&u, &v).map_err(CliError::domain)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Value::Null) => ExitCode::SUCCESS,
        Ok(v) => {
            emit::print_stdout(&emit::json_string(&v));
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            emit::print_stdout(&emit::json_string(&json!({ "error": e.to_json() })));
            ExitCode::from(1)
        }
    }
}
