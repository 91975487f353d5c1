//! Command-line front end: argument parsing, input loading and JSON reports.

pub mod dsl;
pub mod fixtures;
pub mod gluefile;
pub mod literal;
pub mod verify;

mod commands;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::decomp::Config;
use crate::error::{Error, Result};
use crate::morita::GluedAlgebra;
use crate::pathalgebra::{opposite, BoundAlgebra};

#[derive(Parser, Debug)]
#[command(name = "quiverit", version, about = "Syzygies, φ-dimension and gluings of bound quiver algebras")]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 64)]
    pub depth_budget: usize,
    #[arg(long, global = true, default_value_t = 10_000)]
    pub class_budget: usize,
    /// Random splitting rounds before an endomorphism ring is called local.
    #[arg(long, global = true, default_value_t = 40)]
    pub confidence: usize,
    /// Override the prime of every loaded algebra.
    #[arg(long, global = true)]
    pub field: Option<u32>,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Work over the opposite algebra.
    #[arg(long, global = true)]
    pub op: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quiver, relations, dimension and basic properties.
    Info { algebra: String },
    /// Indecomposable projectives and injectives.
    Projectives { algebra: String },
    /// Simples with their syzygies and projective dimensions.
    Simples { algebra: String },
    /// Ω^n of a module.
    Syzygy {
        algebra: String,
        #[arg(short, long)]
        module: String,
        #[arg(short, long, default_value_t = 1)]
        n: usize,
    },
    Pd {
        algebra: String,
        #[arg(short, long)]
        module: String,
    },
    /// The Igusa-Todorov φ of a module.
    Phi {
        algebra: String,
        #[arg(short, long)]
        module: String,
    },
    /// Maximum of φ over the listed modules.
    Phidim {
        algebra: String,
        #[arg(short, long = "module", required = true)]
        modules: Vec<String>,
    },
    Decompose {
        algebra: String,
        #[arg(short, long)]
        module: String,
    },
    Iso {
        algebra: String,
        #[arg(short, long)]
        module: String,
        #[arg(long)]
        other: String,
    },
    Gldim { algebra: String },
    Selfinjective { algebra: String },
    /// Print the opposite algebra in the algebra file format.
    Opposite { algebra: String },
    /// Build the glued algebra C and its opposite from a gluing file.
    Glue { gluing: String },
    /// Hypotheses H1-H4 of a gluing.
    CheckH { gluing: String },
    /// Check that syzygies over C split into A-side and B-side summands.
    SplitCheck {
        gluing: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 6)]
        size: usize,
    },
    /// Decide whether φ is additive on φ-zero modules, or find a witness.
    Additivity {
        algebra: String,
        #[arg(long, default_value_t = 200)]
        pairs: usize,
    },
    /// Check that a generated subcategory is Ω-closed with φ-dimension 0.
    ZeroItCheck {
        algebra: String,
        #[arg(short, long = "module", required = true)]
        modules: Vec<String>,
        /// Also include every module over the selfinjective block.
        #[arg(long)]
        with_block: bool,
    },
    /// Apply the gluing propositions to a gluing.
    Classify {
        gluing: String,
        /// Facts taken as given, e.g. `B:lit:1`, `A:syzygy-finite:2`, `B:gldim:1`.
        #[arg(long = "assert")]
        asserted: Vec<String>,
    },
    Registry {
        #[command(subcommand)]
        action: RegistryAction,
    },
    /// Recompute the worked examples and the acceptance checks.
    VerifyPaper,
}

#[derive(Subcommand, Debug)]
pub enum RegistryAction {
    /// Decompose the modules and dump every registered class.
    Dump {
        algebra: String,
        #[arg(short, long = "module")]
        modules: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Failure,
    Inconclusive,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failure => 1,
            Status::Inconclusive => 2,
            Status::InputError => 3,
        }
    }

    pub fn of_error(e: &Error) -> Status {
        match e {
            Error::BudgetExceeded(_) | Error::Inconclusive(_) | Error::NotDecidable(_) => Status::Inconclusive,
            Error::SplitFailure(_) => Status::Failure,
            _ => Status::InputError,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Budgets {
    pub depth: usize,
    pub class: usize,
    pub confidence: usize,
}

/// Everything a run produced. No timestamps, so equal inputs give equal bytes.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub seed: u64,
    pub budgets: Budgets,
    pub status: Status,
    pub result: Value,
    pub notes: Vec<String>,
}

pub fn digest(name: &str, text: &str) -> InputDigest {
    let h = Sha256::digest(text.as_bytes());
    InputDigest { name: name.to_string(), sha256: h.iter().map(|b| format!("{b:02x}")).collect() }
}

/// An algebra argument after loading, with provenance.
pub struct Loaded {
    pub alg: Arc<BoundAlgebra>,
    pub glued: Option<GluedAlgebra>,
    pub inputs: Vec<InputDigest>,
}

fn read_reference(reference: &str) -> Result<(String, Option<PathBuf>)> {
    let p = Path::new(reference);
    if p.exists() {
        return Ok((std::fs::read_to_string(p)?, p.parent().map(Path::to_path_buf)));
    }
    fixtures::get(reference)
        .map(|t| (t.to_string(), None))
        .ok_or_else(|| Error::Input(format!("`{reference}` is neither a readable file nor a bundled fixture")))
}

pub fn load_glued(reference: &str, prime: Option<u32>) -> Result<(GluedAlgebra, Vec<InputDigest>)> {
    let (text, base) = read_reference(reference)?;
    let (src, g) = gluefile::load_gluing(&text, base.as_deref(), prime)?;
    let mut inputs = vec![digest(reference, &text)];
    for r in [&src.a, &src.b] {
        inputs.push(digest(r, &gluefile::resolve_algebra_text(r, base.as_deref())?));
    }
    Ok((g, inputs))
}

/// Loads an algebra file, a fixture name, or a gluing (meaning its C).
pub fn load_algebra(reference: &str, prime: Option<u32>, op: bool) -> Result<Loaded> {
    let (alg, glued, inputs) = if reference.ends_with(".glue") || fixtures::is_gluing(reference) {
        let (g, inputs) = load_glued(reference, prime)?;
        (g.c.clone(), Some(g), inputs)
    } else {
        let (text, _) = read_reference(reference)?;
        let mut src = dsl::parse_algebra(&text)?;
        if let Some(p) = prime {
            src.prime = p;
        }
        (src.build()?, None, vec![digest(reference, &text)])
    };
    let alg = if op { opposite(&alg)? } else { alg };
    Ok(Loaded { alg, glued, inputs })
}

impl Cli {
    pub fn config(&self) -> Config {
        Config {
            seed: self.seed,
            confidence: self.confidence,
            depth_budget: self.depth_budget,
            class_budget: self.class_budget,
            ..Config::default()
        }
    }

    fn budgets(&self) -> Budgets {
        Budgets { depth: self.depth_budget, class: self.class_budget, confidence: self.confidence }
    }
}

/// Runs one invocation and returns the report (errors become reports too).
pub fn execute(cli: &Cli) -> Report {
    let mut report = Report {
        tool: "quiverit",
        version: env!("CARGO_PKG_VERSION"),
        command: commands::name(&cli.command).to_string(),
        inputs: Vec::new(),
        seed: cli.seed,
        budgets: cli.budgets(),
        status: Status::Ok,
        result: Value::Null,
        notes: Vec::new(),
    };
    if cli.field == Some(2) {
        report.notes.push("characteristic 2: locality tests fall back to Fitting splitting".into());
    }
    if let Err(e) = commands::run(cli, &mut report) {
        report.status = Status::of_error(&e);
        report.result = serde_json::json!({ "error": e.to_string() });
    }
    report
}

/// Entry point for the binary: parse, run, print, write JSON; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Status::InputError.exit_code() } else { 0 };
        }
    };
    let report = execute(&cli);
    let text = serde_json::to_string_pretty(&report).expect("reports serialize");
    match &cli.json {
        Some(p) if p.as_os_str() == "-" => {
            use std::io::Write;
            let _ = writeln!(std::io::stdout(), "{text}");
        }
        Some(p) => {
            if let Err(e) = std::fs::write(p, format!("{text}\n")) {
                eprintln!("cannot write {}: {e}", p.display());
                return Status::InputError.exit_code();
            }
            print_summary(&report);
        }
        None => print_summary(&report),
    }
    report.status.exit_code()
}

fn print_summary(report: &Report) {
    use std::io::Write;
    let text = match &report.result {
        Value::Object(m) if m.contains_key("text") => m["text"].as_str().unwrap_or("").to_string(),
        other => format!("{}\n", serde_json::to_string_pretty(other).expect("json values serialize")),
    };
    let _ = std::io::stdout().write_all(text.as_bytes());
    for n in &report.notes {
        eprintln!("note: {n}");
    }
    if report.status != Status::Ok {
        eprintln!("status: {}", serde_json::to_value(report.status).unwrap().as_str().unwrap());
    }
}
