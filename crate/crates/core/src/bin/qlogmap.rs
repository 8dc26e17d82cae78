//! Command-line front end: encodes parameters, runs orbits and cycle-level
//! simulations, and exports plot-ready CSV/JSON data. See `docs/formats.md`
//! for the frozen file schemas.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use qlogmap::decimal::parse_decimal;
use qlogmap::export::{
    write_compare_csv, write_compare_json, write_encode_csv, write_encode_json, write_lyapunov_csv,
    write_lyapunov_json, write_orbit_csv, write_orbit_json, write_trace_csv, EncodeReport,
};
use qlogmap::{analysis, map, sim};
use qlogmap::{Error, Fix32, MapParams, Result, RoundMode, SimConfig};

#[derive(Parser)]
#[command(
    name = "qlogmap",
    version,
    about = "Q16.16 fixed-point logistic map reference model",
    after_help = "Defaults reproduce the reference experiment: r=4, x0=0.1, 150 iterations."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_mode(s: &str) -> Result<RoundMode> {
    RoundMode::from_str(s)
}

#[derive(Subcommand)]
enum Command {
    /// Encode a decimal literal into Q16.16 and report the exact rounding error
    Encode {
        /// Plain decimal literal, e.g. 0.1 or -3.25
        decimal: String,
        /// Rounding mode: trunc (signal 0) or ceil, toward +infinity (signal 1)
        #[arg(long, default_value = "trunc", value_parser = parse_mode)]
        rounding: RoundMode,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output path; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run an orbit of the map and export it (no iteration cap)
    Iterate {
        #[arg(long, default_value = "4")]
        r: String,
        #[arg(long, default_value = "0.1")]
        x0: String,
        /// Number of iterations beyond x0
        #[arg(short = 'n', long, default_value_t = 150)]
        iterations: u32,
        #[arg(long, default_value = "trunc", value_parser = parse_mode)]
        rounding: RoundMode,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the cycle-level control-unit simulation: orbit plus per-cycle trace
    Simulate {
        #[arg(long, default_value = "4")]
        r: String,
        #[arg(long, default_value = "0.1")]
        x0: String,
        /// Iteration target; limited to 2047 by the 11-bit counter
        #[arg(long, default_value_t = 150)]
        it_max: u16,
        /// Datapath latency in cycles per iteration
        #[arg(long, default_value_t = sim::DEFAULT_LATENCY)]
        latency: u32,
        #[arg(long, default_value = "trunc", value_parser = parse_mode)]
        rounding: RoundMode,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Orbit output path; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Trace output path (always CSV)
        #[arg(long, env = "QLOGMAP_TRACE", default_value = "trace.csv")]
        trace: PathBuf,
    },
    /// Run both rounding modes on identical encoded inputs and export the
    /// per-iteration divergence
    Compare {
        #[arg(long, default_value = "4")]
        r: String,
        #[arg(long, default_value = "0.1")]
        x0: String,
        #[arg(short = 'n', long, default_value_t = 150)]
        iterations: u32,
        /// Threshold for the first visibly diverged iteration
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Estimate the Lyapunov exponent of an orbit
    Lyapunov {
        #[arg(long, default_value = "4")]
        r: String,
        #[arg(long, default_value = "0.1")]
        x0: String,
        #[arg(short = 'n', long, default_value_t = 150)]
        iterations: u32,
        #[arg(long, default_value = "trunc", value_parser = parse_mode)]
        rounding: RoundMode,
        /// Also report the variant with the absolute value outside the log
        #[arg(long)]
        alt_form: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("error[{}]: {e}", e.category());
        std::process::exit(1);
    }
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

/// Prefixes an error message with the flag it came from.
fn in_field(field: &str, e: Error) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("{field}: {m}")),
        Error::Range(m) => Error::Range(format!("{field}: {m}")),
        Error::Domain(m) => Error::Domain(format!("{field}: {m}")),
        other => other,
    }
}

fn encode_field(field: &str, text: &str, mode: RoundMode) -> Result<Fix32> {
    parse_decimal(text)
        .and_then(|lit| lit.encode(mode))
        .map_err(|e| in_field(field, e))
}

fn build_params(
    r: &str,
    x0: &str,
    mode: RoundMode,
    n_iter: u32,
    encode_mode: RoundMode,
) -> Result<MapParams> {
    let r = encode_field("--r", r, encode_mode)?;
    let x0 = encode_field("--x0", x0, encode_mode)?;
    MapParams::new(r, x0, mode, n_iter)
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Encode {
            decimal,
            rounding,
            format,
            output,
        } => {
            let lit = parse_decimal(&decimal)?;
            let value = lit.encode(rounding)?;
            let report = EncodeReport {
                input: decimal,
                rounding,
                error: lit.encoding_error(value),
                value,
            };
            let w = open_output(&output)?;
            match format {
                Format::Csv => write_encode_csv(w, &report),
                Format::Json => write_encode_json(w, &report),
            }
        }
        Command::Iterate {
            r,
            x0,
            iterations,
            rounding,
            format,
            output,
        } => {
            let params = build_params(&r, &x0, rounding, iterations, rounding)?;
            let orbit = map::run_orbit(params)?;
            let w = open_output(&output)?;
            match format {
                Format::Csv => write_orbit_csv(w, &orbit),
                Format::Json => write_orbit_json(w, &orbit),
            }
        }
        Command::Simulate {
            r,
            x0,
            it_max,
            latency,
            rounding,
            format,
            output,
            trace,
        } => {
            let params = build_params(&r, &x0, rounding, u32::from(it_max), rounding)?;
            let config = SimConfig::new(params, it_max, latency)?;
            let (orbit, events) = sim::run_sim(&config)?;
            let w = open_output(&output)?;
            match format {
                Format::Csv => write_orbit_csv(w, &orbit)?,
                Format::Json => write_orbit_json(w, &orbit)?,
            }
            write_trace_csv(BufWriter::new(File::create(&trace)?), &events)?;
            eprintln!("trace written to {}", trace.display());
            Ok(())
        }
        Command::Compare {
            r,
            x0,
            iterations,
            epsilon,
            format,
            output,
        } => {
            // Both orbits must start from identical words, so inputs are
            // digitized once, under truncation.
            let base = build_params(&r, &x0, RoundMode::Trunc, iterations, RoundMode::Trunc)?;
            let trunc = map::run_orbit(base)?;
            let ceil = map::run_orbit(MapParams {
                mode: RoundMode::CeilPosInf,
                ..base
            })?;
            let profile = analysis::divergence(&trunc, &ceil)?;
            let w = open_output(&output)?;
            match format {
                Format::Csv => write_compare_csv(w, &trunc, &ceil, &profile, epsilon),
                Format::Json => write_compare_json(w, &trunc, &ceil, &profile, epsilon),
            }
        }
        Command::Lyapunov {
            r,
            x0,
            iterations,
            rounding,
            alt_form,
            format,
            output,
        } => {
            let params = build_params(&r, &x0, rounding, iterations, rounding)?;
            let orbit = map::run_orbit(params)?;
            let est = analysis::lyapunov(&orbit)?;
            let alt = if alt_form {
                Some(analysis::lyapunov_abs_log(&orbit)?)
            } else {
                None
            };
            let w = open_output(&output)?;
            match format {
                Format::Csv => write_lyapunov_csv(w, &est, alt.as_ref()),
                Format::Json => write_lyapunov_json(w, &est, alt.as_ref()),
            }
        }
    }
}
