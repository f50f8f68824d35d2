//! Command-line surface.
//!
//! Exit codes: 0 success, 1 domain failure (invalid data or failed suite),
//! 2 usage or parse error.

pub mod document;
pub mod render;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::classify::{enumerate_sp, validate_sp};
use crate::dual::dual;
use crate::jacquet::mu_star;
use crate::rational::Rational;
use crate::types::{CuspidalLine, GroupFamily, SPRep, DEFAULT_CUSPIDAL_SUPPORT};
use crate::verify::{run_suite, Mutation, SuiteConfig};
use document::RepSpecDocument;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Group {
    Mp,
    Gspin,
}

impl From<Group> for GroupFamily {
    fn from(g: Group) -> Self {
        match g {
            Group::Mp => GroupFamily::Metaplectic,
            Group::Gspin => GroupFamily::GSpinOdd,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "aubert-sp",
    version,
    about = "Aubert duals and Jacquet modules of strongly positive representation data"
)]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    /// Group family; overrides the document group, selects it for enumerate and verify.
    #[arg(long, value_enum, global = true)]
    pub group: Option<Group>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a representation document against the classification rules.
    Validate {
        /// Document path; standard input when omitted or `-`.
        input: Option<PathBuf>,
    },
    /// Print the Aubert dual of a representation document.
    Dual { input: Option<PathBuf> },
    /// Print the Jacquet module expansion of a representation document.
    MuStar { input: Option<PathBuf> },
    /// List every classification tuple on one cuspidal line.
    Enumerate {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 4)]
        max_offset: u32,
        #[arg(long)]
        with_duals: bool,
        #[arg(long, default_value = "rho")]
        rho: String,
    },
    /// Run the exhaustive verification suite.
    Verify {
        /// Comma-separated reducibility points.
        #[arg(long, value_delimiter = ',')]
        alphas: Option<Vec<String>>,
        #[arg(long, default_value_t = 4)]
        max_offset: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_lines: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Inject a defect into the closed-form dual (negative control).
        #[arg(long, hide = true)]
        mutate: bool,
    },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let mut io = Io { out, err };
    match execute(&cli, stdin, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            EXIT_USAGE
        }
    }
}

type CmdResult = Result<i32, Box<dyn std::error::Error>>;

/// Reads a document; `--group`, when given, overrides the document's family.
fn read_document(
    input: &Option<PathBuf>,
    group: Option<Group>,
    stdin: &mut dyn Read,
) -> Result<SPRep, Box<dyn std::error::Error>> {
    let text = match input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| format!("cannot read {}: {e}", p.display()))?,
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    let rep = RepSpecDocument::parse(&text)?.to_rep()?;
    Ok(match group {
        Some(g) => rep.in_family(g.into()),
        None => rep,
    })
}

/// Validates `rep`; on failure prints the report and returns exit code 1.
fn require_valid(rep: &SPRep, format: Format, io: &mut Io) -> Option<i32> {
    let report = validate_sp(rep);
    if report.ok() {
        return None;
    }
    let _ = match format {
        Format::Json => writeln!(io.err, "{}", render::report_json(&report)),
        _ => write!(io.err, "{report}"),
    };
    Some(EXIT_DOMAIN)
}

fn execute(cli: &Cli, stdin: &mut dyn Read, io: &mut Io) -> CmdResult {
    let format = cli.format;
    match &cli.command {
        Command::Validate { input } => {
            let rep = read_document(input, cli.group, stdin)?;
            let report = validate_sp(&rep);
            match format {
                Format::Json => writeln!(io.out, "{}", render::report_json(&report))?,
                _ => {
                    write!(io.out, "{report}")?;
                    if report.ok() && report.warnings.is_empty() {
                        writeln!(io.out)?;
                    }
                }
            }
            Ok(if report.ok() { EXIT_OK } else { EXIT_DOMAIN })
        }
        Command::Dual { input } => {
            let rep = read_document(input, cli.group, stdin)?;
            if let Some(code) = require_valid(&rep, format, io) {
                return Ok(code);
            }
            let d = dual(&rep)?;
            match format {
                Format::Text => writeln!(io.out, "{}", render::langlands_text(&d))?,
                Format::Latex => writeln!(io.out, "{}", render::langlands_latex(&d))?,
                Format::Json => writeln!(
                    io.out,
                    "{}",
                    serde_json::to_string_pretty(&render::langlands_json(&d, &rep.lines))?
                )?,
            }
            Ok(EXIT_OK)
        }
        Command::MuStar { input } => {
            let rep = read_document(input, cli.group, stdin)?;
            if let Some(code) = require_valid(&rep, format, io) {
                return Ok(code);
            }
            let terms = mu_star(&rep)?;
            match format {
                Format::Json => {
                    let v: Vec<_> = terms.iter().map(render::term_json).collect();
                    writeln!(io.out, "{}", serde_json::to_string_pretty(&v)?)?;
                }
                Format::Text => {
                    for t in &terms {
                        writeln!(io.out, "{}", render::term_text(t))?;
                    }
                }
                Format::Latex => {
                    for t in &terms {
                        writeln!(io.out, "{}", render::term_latex(t))?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Enumerate {
            alpha,
            max_offset,
            with_duals,
            rho,
        } => {
            let alpha: Rational = alpha.parse()?;
            if alpha.is_negative() {
                return Err(format!("alpha must be non-negative, got {alpha}").into());
            }
            let family: GroupFamily = cli.group.unwrap_or(Group::Mp).into();
            let line = CuspidalLine::new(rho.clone(), alpha.clone());
            let tuples = enumerate_sp(&line, &alpha.shift(*max_offset as i64))?;
            let mut rows = Vec::new();
            for t in &tuples {
                let d = if *with_duals {
                    let rep = SPRep::new(family, DEFAULT_CUSPIDAL_SUPPORT).with_line(t.clone());
                    Some((rep.clone(), dual(&rep)?))
                } else {
                    None
                };
                rows.push((t, d));
            }
            match format {
                Format::Json => {
                    let v: Vec<_> = rows
                        .iter()
                        .map(|(t, d)| {
                            let mut row = json!({
                                "tuple": t.entries.iter().map(ToString::to_string).collect::<Vec<_>>(),
                            });
                            if let Some((rep, d)) = d {
                                row["dual"] = render::langlands_json(d, &rep.lines);
                            }
                            row
                        })
                        .collect();
                    let doc = json!({
                        "group": family.as_str(),
                        "rho": rho,
                        "alpha": alpha.to_string(),
                        "tuples": v,
                    });
                    writeln!(io.out, "{}", serde_json::to_string_pretty(&doc)?)?;
                }
                Format::Text => {
                    for (t, d) in &rows {
                        match d {
                            Some((_, d)) => {
                                writeln!(io.out, "{t}  ->  {}", render::langlands_text(d))?
                            }
                            None => writeln!(io.out, "{t}")?,
                        }
                    }
                }
                Format::Latex => {
                    for (t, d) in &rows {
                        let sigma = format!("\\sigma_{{{t}}}");
                        match d {
                            Some((_, d)) => writeln!(
                                io.out,
                                "{sigma} \\mapsto {}",
                                render::langlands_latex(d)
                            )?,
                            None => writeln!(io.out, "{sigma}")?,
                        }
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            alphas,
            max_offset,
            seed,
            max_lines,
            samples,
            mutate,
        } => {
            let mut cfg = SuiteConfig {
                max_offset: *max_offset,
                seed: *seed,
                max_lines: *max_lines,
                samples: *samples,
                mutation: mutate.then_some(Mutation::TruncateClosedForm),
                ..SuiteConfig::default()
            };
            if let Some(list) = alphas {
                cfg.alphas = list
                    .iter()
                    .map(|s| s.trim().parse::<Rational>())
                    .collect::<Result<_, _>>()?;
                if let Some(a) = cfg.alphas.iter().find(|a| a.is_negative()) {
                    return Err(format!("alpha must be non-negative, got {a}").into());
                }
            }
            if let Some(g) = cli.group {
                cfg.families = vec![g.into()];
            }
            let report = run_suite(&cfg);
            match format {
                Format::Json => writeln!(
                    io.out,
                    "{}",
                    serde_json::to_string_pretty(&render::suite_json(&report))?
                )?,
                _ => writeln!(io.out, "{report}")?,
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_DOMAIN })
        }
    }
}
