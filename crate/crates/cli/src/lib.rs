//! Command-line front end for `qseq`.
//!
//! Exit status is 0 on success, 1 when an argument is well formed but outside
//! the domain of the operation, and 2 when it cannot be parsed at all.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use qseq::adic::{self, RationalInterval, TwoAdicInteger};
use qseq::cf::{self, FiniteCF};
use qseq::{kepler, sequence, Error, ErrorKind, Natural, PositiveRational};

pub const DEFAULT_BITS: u32 = 64;

/// Deepest tree the `kepler` subcommand will print (2^25 - 1 nodes).
pub const MAX_KEPLER_DEPTH: i64 = 24;

#[derive(Debug, Parser)]
#[command(
    name = "qseq",
    version,
    about = "Enumerate the positive rationals by binary and 2-adic index"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Value of a(n) for a decimal, 0b-binary or 2-adic index.
    Eval {
        #[arg(allow_hyphen_values = true)]
        index: String,
        /// Bracket precision for infinite 2-adic indices.
        #[arg(long, default_value_t = DEFAULT_BITS)]
        bits: u32,
    },
    /// Index n with a(n) = p/q.
    Locate {
        #[arg(allow_hyphen_values = true)]
        rational: String,
    },
    /// Continued fraction of p/q, or the value of "[z; q1, ..., qm]".
    Cf {
        #[arg(allow_hyphen_values = true)]
        input: String,
        /// Accept and normalize a final quotient of 1.
        #[arg(long)]
        lenient: bool,
    },
    /// The first terms a(1), a(2), ... one per line.
    List { count: usize },
    /// Kepler's tree down to a depth.
    Kepler(KeplerArgs),
    /// 2-adic indices.
    #[command(subcommand)]
    Adic(AdicCommand),
    /// Built-in real constants: sqrt2, phi (its reciprocal (sqrt5 - 1)/2), e.
    Const {
        name: ConstName,
        #[arg(long, default_value_t = DEFAULT_BITS)]
        bits: u32,
    },
}

#[derive(Debug, Args)]
struct KeplerArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=MAX_KEPLER_DEPTH))]
    depth: u32,
    #[arg(long, conflicts_with = "json")]
    dot: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum AdicCommand {
    /// Rational bracket of a(z).
    Eval {
        numeral: String,
        #[arg(long, default_value_t = DEFAULT_BITS)]
        bits: u32,
    },
    /// Rational value of an eventually periodic numeral.
    Value { numeral: String },
    /// The index formed by the lowest m set bits.
    Truncate { numeral: String, m: usize },
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum ConstName {
    Sqrt2,
    Phi,
    E,
}

/// A failure tied to the argument that caused it.
struct Failure {
    argument: &'static str,
    value: String,
    error: Error,
}

fn blame<'a>(argument: &'static str, value: &'a str) -> impl FnOnce(Error) -> Failure + 'a {
    move |error| Failure {
        argument,
        value: value.to_string(),
        error,
    }
}

fn write_bracket(out: &mut String, r: &RationalInterval) {
    out.push_str(&format!("lo={}\nhi={}\n", r.lo(), r.hi()));
}

fn eval_numeral(
    out: &mut String,
    z: &TwoAdicInteger,
    bits: u32,
    text: &str,
) -> Result<(), Failure> {
    let r = adic::eval_real(z, bits).map_err(blame("numeral", text))?;
    write_bracket(out, &r);
    Ok(())
}

fn execute(command: Command) -> Result<String, Failure> {
    let mut out = String::new();
    match command {
        Command::Eval { index, bits } => {
            if index.contains('(') {
                let z = adic::parse_numeral(&index).map_err(blame("index", &index))?;
                match &z {
                    TwoAdicInteger::Finite(n) => {
                        let v = sequence::eval_index(n).map_err(blame("index", &index))?;
                        out.push_str(&format!("{v}\n"));
                    }
                    _ => eval_numeral(&mut out, &z, bits, &index)?,
                }
            } else {
                let n = sequence::parse_index(&index).map_err(blame("index", &index))?;
                let v = sequence::eval_index(&n).map_err(blame("index", &index))?;
                out.push_str(&format!("{v}\n"));
            }
        }
        Command::Locate { rational } => {
            let q: PositiveRational = rational.parse().map_err(blame("rational", &rational))?;
            let n = sequence::locate(&q).map_err(blame("rational", &rational))?;
            out.push_str(&format!("{n}\n"));
        }
        Command::Cf { input, lenient } => {
            if input.trim_start().starts_with('[') {
                let parsed = if lenient {
                    FiniteCF::parse_lenient(&input)
                } else {
                    input.parse::<FiniteCF>()
                };
                let fraction = parsed.map_err(blame("input", &input))?;
                out.push_str(&format!("{}\n", fraction.value()));
            } else {
                let q: PositiveRational = input.parse().map_err(blame("input", &input))?;
                out.push_str(&format!("{}\n", cf::encode_euclid(&q)));
            }
        }
        Command::List { count } => {
            for term in sequence::first_terms(count) {
                out.push_str(&format!("{}\n", term.value));
            }
        }
        Command::Kepler(args) => {
            if args.dot {
                out = kepler::to_dot(args.depth);
            } else if args.json {
                out =
                    serde_json::to_string_pretty(&kepler::to_json(args.depth)).expect("json value");
                out.push('\n');
            } else {
                out = kepler::to_text(args.depth);
            }
        }
        Command::Adic(AdicCommand::Eval { numeral, bits }) => {
            let z = adic::parse_numeral(&numeral).map_err(blame("numeral", &numeral))?;
            eval_numeral(&mut out, &z, bits, &numeral)?;
        }
        Command::Adic(AdicCommand::Value { numeral }) => {
            let z = adic::parse_numeral(&numeral).map_err(blame("numeral", &numeral))?;
            let v = z.rational_value().map_err(blame("numeral", &numeral))?;
            out.push_str(&format!("{v}\n"));
        }
        Command::Adic(AdicCommand::Truncate { numeral, m }) => {
            let z = adic::parse_numeral(&numeral).map_err(blame("numeral", &numeral))?;
            let n: Natural = adic::truncate(&z, m).map_err(blame("m", &m.to_string()))?;
            out.push_str(&format!("{n}\n"));
        }
        Command::Const { name, bits } => {
            let (z, label) = match name {
                ConstName::Sqrt2 => (adic::sqrt2_index(), "sqrt2"),
                ConstName::Phi => (adic::phi_recip_index(), "phi"),
                ConstName::E => (adic::euler_e_index(), "e"),
            };
            eval_numeral(&mut out, &z, bits, label)?;
        }
    }
    Ok(out)
}

/// Runs the command line `argv` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as Clap;
            if matches!(e.kind(), Clap::DisplayHelp | Clap::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let rendered = e.to_string();
            let line = rendered
                .lines()
                .next()
                .unwrap_or("error: invalid arguments");
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    match execute(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure {
            argument,
            value,
            error,
        }) => {
            let _ = writeln!(err, "error: invalid {argument} {value:?}: {error}");
            match error.kind() {
                ErrorKind::Syntax => 2,
                ErrorKind::Domain => 1,
            }
        }
    }
}
