//! Argument handling and subcommand dispatch.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use weylstir_core::identities::{verify_with, IdentityId};
use weylstir_core::stirling::table;
use weylstir_core::{Family, Kind, NormalForm, Ranges, Rational, Tables, Var};

use crate::eval::evaluate;
use crate::format;
use crate::parse::parse;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "weylstir",
    version,
    about = "Exact normal ordering, degenerate r-Stirling tables and identity verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExprFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal-order an expression in a, ad, N, lambda and ff(e, n)
    Order {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Substitute a number for lambda after normal ordering
        #[arg(long, value_parser = parse_rational)]
        lambda: Option<Rational>,
        #[arg(long, value_enum, default_value_t = ExprFormat::Text)]
        format: ExprFormat,
    },
    /// Print the coefficient of every ad^i a^j in the normal form
    Expand {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_parser = parse_rational)]
        lambda: Option<Rational>,
        #[arg(long, value_enum, default_value_t = ExprFormat::Text)]
        format: ExprFormat,
    },
    /// Print a triangle of Stirling numbers (S1, S2, S1u, rS1, rS2, rS1u)
    Table {
        #[arg(value_parser = parse_kind)]
        family: Kind,
        #[arg(long = "r", default_value_t = 0)]
        r: u32,
        #[arg(long, default_value_t = 10)]
        nmax: u32,
        #[arg(long, value_parser = parse_rational)]
        lambda: Option<Rational>,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Check identities over parameter ranges with both oracles
    Verify {
        /// Comma-separated identity names; `T8` selects both variants
        #[arg(long, value_delimiter = ',', value_parser = parse_ids)]
        ids: Option<Vec<Vec<IdentityId>>>,
        #[arg(long, default_value_t = 10)]
        nmax: u32,
        #[arg(long, default_value_t = 10)]
        kmax: u32,
        #[arg(long, default_value_t = 3)]
        rmax: u32,
        #[arg(long, value_enum, default_value_t = ExprFormat::Text)]
        format: ExprFormat,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    if t.ends_with("/0") || t.contains("/-") {
        return Err(format!("`{s}` is not a rational p/q with q > 0"));
    }
    t.parse::<Rational>()
        .map_err(|_| format!("`{s}` is not a rational p/q"))
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    s.parse::<Kind>().map_err(|e| e.to_string())
}

fn parse_ids(s: &str) -> Result<Vec<IdentityId>, String> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("T8") {
        return Ok(vec![IdentityId::T8Printed, IdentityId::T8Derived]);
    }
    s.parse::<IdentityId>()
        .map(|id| vec![id])
        .map_err(|e| e.to_string())
}

fn substitute(nf: NormalForm, lambda: &Option<Rational>) -> NormalForm {
    match lambda {
        Some(v) => nf.substitute_lambda(v),
        None => nf,
    }
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: writing output: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    match cmd {
        Command::Order {
            expr,
            lambda,
            format,
        } => {
            let Some(nf) = normal_form(&expr, &lambda, err)? else {
                return Ok(EXIT_USAGE);
            };
            match format {
                ExprFormat::Text => writeln!(out, "{nf}")?,
                ExprFormat::Json => writeln!(out, "{}", format::normal_form_json(&nf))?,
            }
            Ok(EXIT_OK)
        }
        Command::Expand {
            expr,
            lambda,
            format,
        } => {
            let Some(nf) = normal_form(&expr, &lambda, err)? else {
                return Ok(EXIT_USAGE);
            };
            match format {
                ExprFormat::Text => write!(out, "{}", format::coefficient_map_text(&nf))?,
                ExprFormat::Json => writeln!(out, "{}", format::normal_form_json(&nf))?,
            }
            Ok(EXIT_OK)
        }
        Command::Table {
            family,
            r,
            nmax,
            lambda,
            format,
        } => {
            if !family.has_r() && r != 0 {
                writeln!(err, "error: family {} takes no --r", family.name())?;
                return Ok(EXIT_USAGE);
            }
            let mut t = table(Family::new(family, r), nmax);
            if let Some(v) = &lambda {
                t = t.map(|p| p.substitute(Var::Lambda, v));
            }
            match format {
                TableFormat::Text => write!(out, "{}", format::table_text(&t))?,
                TableFormat::Json => writeln!(out, "{}", format::table_json(&t))?,
                TableFormat::Csv => match format::table_csv(&t) {
                    Ok(s) => write!(out, "{s}")?,
                    Err(e) => {
                        writeln!(err, "error: {e}")?;
                        return Ok(EXIT_USAGE);
                    }
                },
                TableFormat::Latex => write!(out, "{}", format::table_latex(&t))?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            ids,
            nmax,
            kmax,
            rmax,
            format,
        } => {
            let mut selected: Vec<IdentityId> = match ids {
                Some(groups) => groups.into_iter().flatten().collect(),
                None => IdentityId::ALL.to_vec(),
            };
            selected.sort_by_key(|id| IdentityId::ALL.iter().position(|x| x == id));
            selected.dedup();
            let ranges = Ranges::new(nmax, kmax, rmax);
            let tables = Tables::for_ranges(&ranges);
            let reports: Vec<_> = selected
                .par_iter()
                .map(|&id| verify_with(id, &ranges, &tables))
                .collect();
            match format {
                ExprFormat::Text => {
                    for r in &reports {
                        writeln!(out, "{}", format::report_line(r))?;
                    }
                }
                ExprFormat::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&format::reports_json(&reports))
                        .expect("report JSON serializes")
                )?,
            }
            Ok(if reports.iter().any(|r| r.is_blocking_failure()) {
                EXIT_VERIFY_FAILED
            } else {
                EXIT_OK
            })
        }
    }
}

fn normal_form(
    expr: &str,
    lambda: &Option<Rational>,
    err: &mut dyn Write,
) -> std::io::Result<Option<NormalForm>> {
    match parse(expr) {
        Ok(ast) => Ok(Some(substitute(evaluate(&ast), lambda))),
        Err(e) => {
            writeln!(err, "error: {e}")?;
            writeln!(err, "  {expr}")?;
            writeln!(err, "  {}^", " ".repeat(expr[..e.offset()].chars().count()))?;
            Ok(None)
        }
    }
}
