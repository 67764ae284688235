//! Command-line front end for splitrolle.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Signed;
use splitrolle::belyi::{construct_belyi, verify_belyi, BelyiCertificate};
use splitrolle::document::{AnalysisDocument, Certificate, CertificateDocument, DocumentError};
use splitrolle::expr::{parse_coeffs, parse_poly, ParseError};
use splitrolle::realroots::classify_roots;
use splitrolle::report::Report;
use splitrolle::witness::{build_witness, verify_witness, RolleWitness, WitnessOptions};
use splitrolle::{Poly, Rat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUSED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "splitrolle",
    version,
    about = "Exact Rolle witnesses and Belyi maps over Q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the roots of a polynomial.
    Analyze {
        #[command(flatten)]
        poly: PolyArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Build a Rolle witness F with f | F'.
    Witness {
        #[command(flatten)]
        poly: PolyArg,
        /// Refuse if an interleaving rational needs a larger denominator.
        #[arg(long, value_name = "D")]
        max_denominator: Option<BigInt>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Build a Belyi map ramified only over 0, 1, infinity at the given points.
    Belyi {
        #[arg(required = true, allow_hyphen_values = true, value_name = "Q")]
        points: Vec<String>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Re-check a certificate document.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args, Debug)]
struct PolyArg {
    /// Polynomial expression in x, e.g. "x^2 - 2".
    #[arg(allow_hyphen_values = true)]
    poly: String,
    /// Read the polynomial as ascending coefficients, e.g. "-2,0,1".
    #[arg(long)]
    coeffs: bool,
}

#[derive(Args, Debug)]
struct OutArg {
    /// Write the document here instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

/// Failure carrying its exit code; the message goes to the error stream.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn refused(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_REFUSED,
            message: message.into(),
        }
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        Failure::usage(e.to_string())
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Analyze { poly, out } => {
            let f = read_poly(&poly)?;
            let c = classify_roots(&f).map_err(|e| Failure::refused(e.to_string()))?;
            emit(&out, &AnalysisDocument::new(&f, &c).render(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Witness {
            poly,
            max_denominator,
            out,
        } => {
            let f = read_poly(&poly)?;
            if let Some(d) = &max_denominator {
                if !d.is_positive() {
                    return Err(Failure::usage("--max-denominator must be positive"));
                }
            }
            let opts = WitnessOptions { max_denominator };
            let build = build_witness(&f, &opts).map_err(|e| Failure::refused(e.to_string()))?;
            let report = verify_witness(&build.witness);
            let doc = CertificateDocument::new(
                Certificate::RolleWitness((&build.witness).into()),
                Some(&report),
            );
            emit(&out, &doc.render(), stdout)?;
            Ok(if report.valid() {
                EXIT_OK
            } else {
                EXIT_REFUSED
            })
        }
        Command::Belyi { points, mut out } => {
            let points = split_trailing_out(points, &mut out)?;
            let points = points
                .iter()
                .map(|s| {
                    s.trim()
                        .parse::<Rat>()
                        .map_err(|e| Failure::usage(format!("point `{s}`: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let cert = construct_belyi(&points).map_err(|e| Failure::refused(e.to_string()))?;
            let report = verify_belyi(&cert);
            let doc = CertificateDocument::new(Certificate::Belyi((&cert).into()), Some(&report));
            emit(&out, &doc.render(), stdout)?;
            Ok(if report.valid() {
                EXIT_OK
            } else {
                EXIT_REFUSED
            })
        }
        Command::Verify { file, out } => {
            let text = fs::read_to_string(&file)
                .map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
            let doc = CertificateDocument::parse(&text)?;
            let report = match &doc.certificate {
                Certificate::RolleWitness(p) => verify_witness(&RolleWitness::try_from(p)?),
                Certificate::Belyi(p) => verify_belyi(&BelyiCertificate::try_from(p)?),
            };
            emit(&out, &render_report(&report), stdout)?;
            Ok(if report.valid() {
                EXIT_OK
            } else {
                EXIT_REFUSED
            })
        }
    }
}

/// Points accept leading hyphens, so a trailing `--out FILE` lands among them.
fn split_trailing_out(args: Vec<String>, out: &mut OutArg) -> Result<Vec<String>, Failure> {
    let mut points = Vec::with_capacity(args.len());
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        let path = if a == "--out" {
            it.next()
                .ok_or_else(|| Failure::usage("--out requires a value"))?
        } else if let Some(rest) = a.strip_prefix("--out=") {
            rest.to_string()
        } else if a.starts_with("--") {
            return Err(Failure::usage(format!("unexpected argument `{a}`")));
        } else {
            points.push(a);
            continue;
        };
        if out.out.replace(PathBuf::from(path)).is_some() {
            return Err(Failure::usage("--out given more than once"));
        }
    }
    if points.is_empty() {
        return Err(Failure::usage("belyi needs at least one point"));
    }
    Ok(points)
}

fn read_poly(arg: &PolyArg) -> Result<Poly, Failure> {
    let parsed: Result<Poly, ParseError> = if arg.coeffs {
        parse_coeffs(&arg.poly)
    } else {
        parse_poly(&arg.poly)
    };
    parsed.map_err(|e| Failure::usage(format!("`{}`: {e}", arg.poly)))
}

fn render_report(report: &Report) -> String {
    let mut s = String::new();
    for c in &report.checks {
        s.push_str(&c.to_string());
        s.push('\n');
    }
    s.push_str(if report.valid() {
        "valid\n"
    } else {
        "invalid\n"
    });
    s
}

fn emit(out: &OutArg, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &out.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
        }
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::usage(format!("standard output: {e}"))),
    }
}
