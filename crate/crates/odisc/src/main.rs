//! Command-line front end.
//!
//! Exit codes: 0 success, 1 the solver eliminated every candidate,
//! 2 bad input, 3 enumeration budget exceeded. The `ODISC_BUDGET`
//! environment variable overrides the isotropic-vector enumeration cap.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Deserialize;

use odisc::bundle::{BundleError, GroupBundle};
use odisc::gf::FiniteField;
use odisc::invform::{classify_invariant_forms, invariant_quadratic_space, MatrixRep};
use odisc::quadform::{QfError, QuadraticForm};
use odisc::solver::{SolveReport, SolverError};

#[derive(Parser)]
#[command(name = "odisc", version, about = "orthogonal discriminants of group characters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a quadratic form given as JSON: dimension, discriminant
    /// class, O+/O-, and the number of isotropic vectors.
    ClassifyForm {
        /// Form file: {"field": {"p", "k", "modulus"?}, "dim", "upper"}
        form: PathBuf,
    },
    /// Orthogonal stability of a character's reduction at one prime ideal.
    Stability {
        bundle: PathBuf,
        #[arg(long = "char")]
        character: String,
        #[arg(long)]
        ideal: String,
    },
    /// Modular discriminant of a stable reduction, with its summand split.
    ModDisc {
        bundle: PathBuf,
        #[arg(long = "char")]
        character: String,
        #[arg(long)]
        ideal: String,
    },
    /// Solve for ordinary discriminants from the bundled modular facts.
    Solve {
        bundle: PathBuf,
        /// Restrict to one character id (default: all with generator lists).
        #[arg(long = "char")]
        character: Option<String>,
        /// Output format: json (default) or table.
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Invariant quadratic forms of a matrix representation, with a census
    /// of their types.
    InvariantForms {
        /// Representation file: {"field": {"p", "k"}, "dim", "generators"}
        rep: PathBuf,
    },
}

#[derive(Deserialize)]
struct FieldJson {
    p: u64,
    k: usize,
    #[serde(default)]
    modulus: Option<Vec<u64>>,
}

impl FieldJson {
    fn build(&self) -> Result<FiniteField, CliError> {
        let f = match &self.modulus {
            Some(m) => FiniteField::with_modulus(self.p, self.k, m.clone()),
            None => FiniteField::new(self.p, self.k),
        };
        f.map_err(|e| CliError::bad_input(format!("bad field: {e}")))
    }
}

#[derive(Deserialize)]
struct FormJson {
    field: FieldJson,
    dim: usize,
    upper: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct RepJson {
    field: FieldJson,
    dim: usize,
    generators: Vec<Vec<Vec<i64>>>,
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn bad_input(message: impl Into<String>) -> CliError {
        CliError {
            message: message.into(),
            code: 2,
        }
    }
}

impl From<BundleError> for CliError {
    fn from(e: BundleError) -> CliError {
        let code = match &e {
            BundleError::Solver(SolverError::Empty(_)) => 1,
            _ => 2,
        };
        CliError {
            message: e.to_string(),
            code,
        }
    }
}

impl From<QfError> for CliError {
    fn from(e: QfError) -> CliError {
        let code = match &e {
            QfError::BudgetExceeded(_) => 3,
            _ => 2,
        };
        CliError {
            message: e.to_string(),
            code,
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::bad_input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::bad_input(format!("malformed JSON: {e}")))
}

fn enum_budget() -> u64 {
    std::env::var("ODISC_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(10_000_000)
}

fn classify_form(path: &PathBuf) -> Result<(), CliError> {
    let spec: FormJson = read_json(path)?;
    let field = spec.field.build()?;
    if spec.upper.len() != spec.dim {
        return Err(CliError::bad_input(format!(
            "upper matrix has {} rows, dim is {}",
            spec.upper.len(),
            spec.dim
        )));
    }
    let form = QuadraticForm::from_ints(&field, &spec.upper)?;
    println!("field: GF({}^{})", field.p(), field.degree());
    println!("dim: {}", form.dim());
    if !form.is_nondegenerate() {
        return Err(CliError::bad_input("form is degenerate"));
    }
    let disc = form.discriminant()?;
    let class = match (disc.char_two, disc.trivial) {
        (false, true) => "square",
        (false, false) => "nonsquare",
        (true, true) => "Arf trivial",
        (true, false) => "Arf nontrivial",
    };
    println!("disc: {class}");
    println!("type: {}", form.classify()?);
    println!(
        "isotropic vectors: {}",
        form.count_isotropic_with_budget(enum_budget())?
    );
    Ok(())
}

fn stability(path: &PathBuf, character: &str, ideal: &str) -> Result<(), CliError> {
    let b = GroupBundle::load(path)?;
    let (constituents, stab) = b.stability(character, ideal)?;
    if stab.is_stable() {
        println!("stable");
    } else {
        let names: Vec<String> = constituents
            .iter()
            .map(|(br, m)| {
                if *m == 1 {
                    br.id.clone()
                } else {
                    format!("{}*{}", m, br.id)
                }
            })
            .collect();
        println!("unstable: constituents {}", names.join(", "));
    }
    Ok(())
}

fn mod_disc(path: &PathBuf, character: &str, ideal: &str) -> Result<(), CliError> {
    let b = GroupBundle::load(path)?;
    let (otype, k, summands) = b.modular_discriminant(character, ideal)?;
    println!("{otype}");
    println!("character field degree: {k}");
    for s in &summands {
        use odisc::chardata::SummandKind::*;
        let what = match &s.kind {
            PlusIrreducible { otype: Some(t) } => format!("irreducible, {t}"),
            PlusIrreducible { otype: None } => "irreducible, type unknown".to_string(),
            DualPair { psi_degree, .. } => {
                format!("dual pair psi + psi*, deg psi = {psi_degree}")
            }
            MinusDoubled { psi_degree } => format!("doubled, deg psi = {psi_degree}"),
        };
        println!(
            "summand {}: degree {} over GF(p^{}), {}",
            s.brauer_id, s.degree, s.field_degree, what
        );
    }
    Ok(())
}

fn report_json(r: &SolveReport) -> serde_json::Value {
    serde_json::json!({
        "character": r.character,
        "epsilon": r.set.epsilon,
        "generators": r.set.generator_names,
        "candidates_initial": 1u64 << r.set.generator_names.len(),
        "survivors": r.set.survivors.iter().map(|&m| r.set.describe(m)).collect::<Vec<_>>(),
        "determined": r.determined().is_some(),
        "log": r.set.log.iter().map(|e| serde_json::json!({
            "candidate": r.set.describe(e.candidate),
            "ideal": e.ideal,
            "rule": e.rule,
            "citation": e.reason,
        })).collect::<Vec<_>>(),
        "notes": r.notes,
    })
}

fn solve(path: &PathBuf, character: Option<&str>, format: &str) -> Result<(), CliError> {
    let b = GroupBundle::load(path)?;
    let reports = match character {
        Some(id) => vec![b.solve_character(id)?],
        None => b.solve_all()?,
    };
    match format {
        "json" => {
            let all: Vec<_> = reports.iter().map(report_json).collect();
            println!("{}", serde_json::to_string_pretty(&all).unwrap());
        }
        "table" => {
            let mut rows = vec![(
                "character".to_string(),
                "discriminant".to_string(),
                "status".to_string(),
            )];
            for r in &reports {
                let discs: Vec<String> =
                    r.set.survivors.iter().map(|&m| r.set.describe(m)).collect();
                let status = if r.determined().is_some() {
                    "determined"
                } else {
                    "open"
                };
                rows.push((r.character.clone(), discs.join(" | "), status.to_string()));
            }
            let w0 = rows.iter().map(|r| r.0.len()).max().unwrap();
            let w1 = rows.iter().map(|r| r.1.len()).max().unwrap();
            for (a, b, c) in &rows {
                println!("{a:<w0$}  {b:<w1$}  {c}");
            }
        }
        other => {
            return Err(CliError::bad_input(format!(
                "unknown format {other}, expected json or table"
            )))
        }
    }
    Ok(())
}

fn invariant_forms(path: &PathBuf) -> Result<(), CliError> {
    let spec: RepJson = read_json(path)?;
    let field = spec.field.build()?;
    let rep = MatrixRep::from_ints(&field, spec.dim, &spec.generators)
        .map_err(|e| CliError::bad_input(e.to_string()))?;
    let basis = invariant_quadratic_space(&rep).map_err(|e| CliError::bad_input(e.to_string()))?;
    println!("invariant space dimension: {}", basis.len());
    let census = classify_invariant_forms(&rep).map_err(|e| CliError::bad_input(e.to_string()))?;
    println!(
        "census: O+ {}, O- {}, degenerate {}{}",
        census.oplus,
        census.ominus,
        census.degenerate,
        if census.sampled { " (sampled)" } else { " (exhaustive)" }
    );
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::ClassifyForm { form } => classify_form(form),
        Command::Stability {
            bundle,
            character,
            ideal,
        } => stability(bundle, character, ideal),
        Command::ModDisc {
            bundle,
            character,
            ideal,
        } => mod_disc(bundle, character, ideal),
        Command::Solve {
            bundle,
            character,
            format,
        } => solve(bundle, character.as_deref(), format),
        Command::InvariantForms { rep } => invariant_forms(rep),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
