//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 when the
//! input cannot be read or is malformed.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::complex::{homology, is_nullhomotopic, ChainComplex, HomologySummary};
use crate::error::Error;
use crate::frames::{build_frame_object, check_all, recover_map_from_cylinder};
use crate::gen::{random_simplex, rng, Params};
use crate::json::{parse_complex, parse_simplex, simplex_to_string, FrameJson, MapJson};
use crate::nerve::NerveSimplex;
use crate::simplicial::OrderMap;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "dgframes", version, about = "Resolutions of dg-nerve simplices of integral chain complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Simplex JSON file. Without it a random simplex is generated from the seed.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Seed for generated simplices.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Dimension of a generated simplex.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Generate a strict simplex instead of a perturbed one.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Maurer–Cartan equation on every sequence.
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Build the resolution object at one sequence.
    Frame {
        #[command(flatten)]
        common: Common,
        /// Comma-separated nondecreasing sequence, e.g. 0,1,1.
        #[arg(long)]
        alpha: String,
    },
    /// Run the full check suite on the truncated diagram.
    Check {
        #[command(flatten)]
        common: Common,
        /// Largest sequence length in the truncated diagram.
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Homology of a complex, of each object of a simplex, or of one resolution object.
    Homology {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Recover the edge of a 1-simplex from its cylinder.
    Recover {
        #[command(flatten)]
        common: Common,
    },
    /// Print a generated simplex as JSON.
    Generate {
        #[command(flatten)]
        common: Common,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: EXIT_INPUT, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

fn read_input(common: &Common) -> Result<Option<String>, Failure> {
    match &common.input {
        None => Ok(None),
        Some(p) => fs::read_to_string(p).map(Some).map_err(|e| input_error(format!("{}: {e}", p.display()))),
    }
}

fn load_simplex(common: &Common) -> Result<NerveSimplex, Failure> {
    match read_input(common)? {
        Some(text) => {
            let path = common.input.as_ref().expect("input was read").display().to_string();
            parse_simplex(&text).map_err(|e| input_error(format!("{path}: {e}")))
        }
        None => Ok(random_simplex(&mut rng(common.seed), common.dim, !common.strict, &Params::default())),
    }
}

fn homology_table(h: &HomologySummary) -> serde_json::Value {
    json!(h.groups.iter().map(|(d, g)| (d.to_string(), json!(g.to_string()))).collect::<serde_json::Map<_, _>>())
}

fn homology_text(name: &str, x: &ChainComplex) -> String {
    let h = homology(x);
    let mut out = format!("{name}\n");
    if h.is_acyclic() {
        out.push_str("  acyclic\n");
    }
    for (d, g) in &h.groups {
        out.push_str(&format!("  H_{d} = {g}\n"));
    }
    out
}

/// Output text and exit code of one command.
fn execute(command: &Command) -> Result<(String, i32, Format, Option<PathBuf>), Failure> {
    match command {
        Command::Validate { common } => {
            let s = load_simplex(common)?;
            let report = s.validate_maurer_cartan();
            let code = if report.passed() { EXIT_PASS } else { EXIT_FAIL };
            let text = match common.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_string(),
            };
            Ok((text, code, common.format, common.output.clone()))
        }
        Command::Frame { common, alpha } => {
            let s = load_simplex(common)?;
            let alpha = OrderMap::parse(alpha, s.n())?;
            let o = match build_frame_object(&s, &alpha) {
                Ok(o) => o,
                Err(e @ Error::InvalidSimplex(_)) => return Err(Failure { code: EXIT_FAIL, message: e.to_string() }),
                Err(e) => return Err(e.into()),
            };
            let text = match common.format {
                Format::Json => serde_json::to_string_pretty(&FrameJson::from_frame(&o)).expect("frames serialize"),
                Format::Text => {
                    let b = o.complex();
                    let mut out = String::new();
                    for d in b.support() {
                        out.push_str(&format!("degree {d}: {}\n", b.labels(d).join(" ")));
                    }
                    for (d, m) in b.nonzero_diffs() {
                        out.push_str(&format!("d_{d} =\n{m}\n"));
                    }
                    out + &homology_text("homology", b)
                }
            };
            Ok((text, EXIT_PASS, common.format, common.output.clone()))
        }
        Command::Check { common, max_len } => {
            let s = load_simplex(common)?;
            let report = check_all(&s, *max_len)?;
            let code = if report.passed() { EXIT_PASS } else { EXIT_FAIL };
            let text = match common.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_string(),
            };
            Ok((text, code, common.format, common.output.clone()))
        }
        Command::Homology { common, alpha } => {
            let text = read_input(common)?;
            let is_simplex = text
                .as_deref()
                .map(|t| serde_json::from_str::<serde_json::Value>(t).map(|v| v.get("n").is_some()).unwrap_or(true))
                .unwrap_or(true);
            let complexes: Vec<ChainComplex> = if is_simplex {
                let s = load_simplex(common)?;
                match alpha {
                    Some(a) => {
                        let o = build_frame_object(&s, &OrderMap::parse(a, s.n())?)?;
                        vec![(**o.complex()).clone()]
                    }
                    None => s.objects().iter().map(|x| (**x).clone()).collect(),
                }
            } else {
                if alpha.is_some() {
                    return Err(input_error("--alpha needs a simplex input"));
                }
                vec![parse_complex(text.as_deref().expect("complex input was read"))?]
            };
            let out = match common.format {
                Format::Json => {
                    let rows: Vec<_> =
                        complexes.iter().map(|x| json!({ "name": x.name(), "homology": homology_table(&homology(x)) })).collect();
                    serde_json::to_string_pretty(&rows).expect("tables serialize")
                }
                Format::Text => complexes.iter().map(|x| homology_text(x.name(), x)).collect(),
            };
            Ok((out, EXIT_PASS, common.format, common.output.clone()))
        }
        Command::Recover { common } => {
            let s = load_simplex(common)?;
            if s.n() != 1 {
                return Err(input_error(format!("recover needs a 1-simplex, got dimension {}", s.n())));
            }
            let o = build_frame_object(&s, &OrderMap::identity(1))?;
            let f = s.eval_cochain(&[0, 1])?;
            let g = recover_map_from_cylinder(&o)?;
            let witness = is_nullhomotopic(&g.sub(&f)?)?;
            let code = if witness.is_some() { EXIT_PASS } else { EXIT_FAIL };
            let out = match common.format {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "recovered": MapJson::from_map(&g),
                    "homotopic": witness.is_some(),
                    "witness": witness.as_ref().map(MapJson::from_map),
                }))
                .expect("maps serialize"),
                Format::Text => {
                    let mut out = String::new();
                    for (d, m) in g.blocks() {
                        out.push_str(&format!("recovered at degree {d} =\n{m}\n"));
                    }
                    out + &format!("homotopic to the edge: {}\n", witness.is_some())
                }
            };
            Ok((out, code, common.format, common.output.clone()))
        }
        Command::Generate { common } => {
            let s = random_simplex(&mut rng(common.seed), common.dim, !common.strict, &Params::default());
            Ok((simplex_to_string(&s), EXIT_PASS, common.format, common.output.clone()))
        }
    }
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    match execute(&cli.command) {
        Ok((text, code, _, output)) => {
            let text = if text.ends_with('\n') { text } else { text + "\n" };
            match output {
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        let _ = writeln!(stderr, "error: {}: {e}", path.display());
                        return EXIT_INPUT;
                    }
                }
                None => {
                    let _ = stdout.write_all(text.as_bytes());
                }
            }
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
