//! Command-line front end for `bosonorder`.
//!
//! [`run`] does all the work and returns the exit code together with what
//! would be written to stdout and stderr, so the binary is a thin shell
//! around it.

mod commands;
mod complex;
mod report;

use std::ffi::OsString;

use bosonorder::boson::WordCap;
use bosonorder::stirling::Algorithm;
use bosonorder::verify::Suite;
use bosonorder::Error;
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

pub use commands::EgfFamily;
pub use complex::{parse_complex, ComplexArg, Real};
pub use report::{render_json, Format, Report};

/// Environment variable that overrides the rewriting oracle's word cap.
pub const WORD_CAP_ENV: &str = "BOSONORDER_WORD_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "bosonorder",
    version,
    about = "Normal ordering of boson operators and generalized Stirling and Bell numbers"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Sum,
    Operator,
    Recurrence,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Table1,
    Dobinski,
    Genfun,
    Oracle,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rows n = 1..nmax of S_{r,s}(n, k) with their row sums.
    Triangle {
        r: u32,
        s: u32,
        #[arg(long = "nmax")]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = AlgorithmArg::Sum)]
        algorithm: AlgorithmArg,
    },
    /// The generalized Bell number B_{r,s}(n).
    Bell {
        r: u32,
        s: u32,
        #[arg(long)]
        n: u32,
    },
    /// Normal-ordered form of an operator expression, e.g. "(ad a)^3".
    NormalOrder {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Coherent-state expectation <z| expr |z>.
    Expect {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Complex point such as 1, 2/3 or 0.3+0.4i.
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        z: String,
    },
    /// Coefficients n!·[x^n] of an egf column, checked against the triangle.
    #[command(group(ArgGroup::new("family").required(true).args(["diag", "r1"])))]
    Egf {
        /// Column of S_{r,r}.
        #[arg(long, value_name = "R")]
        diag: Option<u32>,
        /// Column of S_{r,1}.
        #[arg(long, value_name = "R")]
        r1: Option<u32>,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Hypergeometric generating function of B_{3,2}, evaluated two ways.
    Hgf32 {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Run a self-check suite; exits with status 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_resource() {
        EXIT_RESOURCE
    } else if e.is_syntax() || matches!(e, Error::InvalidArgument(_) | Error::Domain(_)) {
        EXIT_USAGE
    } else {
        EXIT_VERIFY
    }
}

fn error_offset(e: &Error) -> Option<usize> {
    match e {
        Error::Lex { offset, .. } | Error::Parse { offset, .. } => Some(*offset),
        _ => None,
    }
}

/// The error message, with the offending expression and a caret when the
/// error has a position in it.
fn describe_error(e: &Error, source: Option<&str>) -> String {
    let mut s = format!("error: {e}\n");
    if let (Some(src), Some(offset)) = (source, error_offset(e)) {
        let column = src[..offset.min(src.len())].chars().count();
        s.push_str(&format!("  {src}\n  {}^\n", " ".repeat(column)));
    }
    s
}

fn word_cap(env_value: Option<&str>) -> Result<WordCap, Error> {
    match env_value {
        None => Ok(WordCap::DEFAULT),
        Some(v) => v.trim().parse().map(WordCap).map_err(|_| {
            Error::InvalidArgument(format!("{WORD_CAP_ENV}={v:?} is not a word length"))
        }),
    }
}

fn dispatch(command: &Command, cap: WordCap) -> bosonorder::Result<Report> {
    match command {
        Command::Triangle {
            r,
            s,
            n_max,
            algorithm,
        } => {
            let alg = match algorithm {
                AlgorithmArg::Sum => Some(Algorithm::Sum),
                AlgorithmArg::Operator => Some(Algorithm::Operator),
                AlgorithmArg::Recurrence => Some(Algorithm::Recurrence),
                AlgorithmArg::All => None,
            };
            commands::triangle(*r, *s, *n_max, alg)
        }
        Command::Bell { r, s, n } => commands::bell_cmd(*r, *s, *n),
        Command::NormalOrder { expr } => commands::normal_order(expr, cap),
        Command::Expect { expr, z } => commands::expect(expr, z, cap),
        Command::Egf { diag, r1, k, order } => {
            let family = match (diag, r1) {
                (Some(r), None) => EgfFamily::Diagonal(*r),
                (None, Some(r)) => EgfFamily::R1(*r),
                _ => unreachable!("clap enforces exactly one of --diag and --r1"),
            };
            commands::egf(family, *k, *order)
        }
        Command::Hgf32 { lambda, tol } => commands::hgf32(*lambda, *tol),
        Command::Verify { suite } => commands::verify(match suite {
            SuiteArg::Table1 => Suite::Table1,
            SuiteArg::Dobinski => Suite::Dobinski,
            SuiteArg::Genfun => Suite::Genfun,
            SuiteArg::Oracle => Suite::Oracle,
            SuiteArg::All => Suite::All,
        }),
    }
}

fn finish(report: &Report, format: Format) -> Outcome {
    let (code, stderr) = if report.failed {
        (
            EXIT_VERIFY,
            format!("error: {} reported a failed check\n", report.command),
        )
    } else {
        (EXIT_OK, String::new())
    };
    Outcome {
        code,
        stdout: report.render(format),
        stderr,
    }
}

/// Parses `args` (including the program name) and runs the command.
/// `word_cap_env` is the value of [`WORD_CAP_ENV`], if set.
pub fn run<I, T>(args: I, word_cap_env: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let source = match &cli.command {
        Command::NormalOrder { expr } | Command::Expect { expr, .. } => Some(expr.as_str()),
        _ => None,
    };
    let result = word_cap(word_cap_env).and_then(|cap| dispatch(&cli.command, cap));
    match result {
        Ok(report) => finish(&report, cli.format),
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: describe_error(&e, source),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_report_exits_with_verify_status() {
        let mut report = Report::new("verify");
        report.text = "FAIL [x] y: z".into();
        report.failed = true;
        let out = finish(&report, Format::Text);
        assert_eq!(out.code, EXIT_VERIFY);
        assert_eq!(out.stdout, "FAIL [x] y: z\n");
        assert!(out.stderr.contains("failed check"));
    }

    #[test]
    fn library_errors_map_to_exit_codes() {
        assert_eq!(
            exit_code(&Error::WordCap { len: 30, cap: 24 }),
            EXIT_RESOURCE
        );
        assert_eq!(
            exit_code(&Error::Lex {
                offset: 0,
                found: '$'
            }),
            EXIT_USAGE
        );
        assert_eq!(
            exit_code(&Error::NonIntegral {
                context: "x".into()
            }),
            EXIT_VERIFY
        );
    }
}
