//! `assoc2`: cohomology tables, classification, deformation censuses and
//! the acceptance suite for 2-dimensional associative algebras.
//!
//! Coderivations are written as sums of `phi[I->i]` / `psi[I->i]` terms with
//! optional rational or polynomial coefficients, e.g. `psi[22->2] + psi[11->1]`
//! or `t1*t2*psi[11->2]`. Coefficients use `+ - * ^` and fractions `3/4`.
//! Tables are 8 structure constants in the order
//! c11^1, c11^2, c12^1, c12^2, c21^1, c21^2, c22^1, c22^2 (1 = x, 2 = theta),
//! as a JSON array or a comma list.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 parse or usage error,
//! 3 not a codifferential, 4 non-associative, 5 non-versal family.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use assoc2::coderivation::GradedSpace;
use assoc2::deformation::{
    default_grid, jump_census, obstruction, parse_point, product_grid, DeformationFamily,
    ParameterPoint,
};
use assoc2::error::{CoderivationError, DeformationError, HochschildError, ModuliError};
use assoc2::hochschild::{Cochain, CochainComplex};
use assoc2::moduli::{
    classify, enumerate_finite_field, invariants, standard_codifferential, MultiplicationTable,
};
use assoc2::verify::{run_all, VerifyConfig};
use assoc2::Rational;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Bumped whenever a JSON report changes shape.
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "assoc2",
    version,
    about = "Coderivations and the moduli of 2-dimensional associative algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hochschild cohomology of a codifferential, degree by degree.
    Cohomology(CohomologyArgs),
    /// Classify a multiplication table up to isomorphism.
    Classify(ClassifyArgs),
    /// Obstruction and jump census of a deformation family.
    Deform(DeformArgs),
    /// Run every acceptance check; exits 1 if any fails.
    Verify(VerifyArgs),
    /// Orbit census of all tables over F_p (p = 2, 3, 5).
    Enumerate(EnumerateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algebra {
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
}

#[derive(Args)]
struct CohomologyArgs {
    /// One of the six standard codifferentials.
    #[arg(long, conflicts_with = "d", required_unless_present = "d")]
    algebra: Option<Algebra>,
    /// An explicit codifferential, e.g. "psi[22->2]".
    #[arg(long)]
    d: Option<String>,
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Eight structure constants, e.g. "1,0,0,0,0,0,0,1" or "[0,0,1,0,0,0,0,1]".
    table: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct DeformArgs {
    /// Built-in family: d2, d5, d6 (as printed) or d6-versal (its completion).
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    builtin: Option<String>,
    /// Family file in JSON.
    #[arg(long)]
    family: Option<PathBuf>,
    /// Values used on every parameter axis, e.g. "-1,0,1/2".
    #[arg(long, conflicts_with = "points", allow_hyphen_values = true)]
    values: Option<String>,
    /// Explicit sample points, each like "t1=1/2, t2=-1"; repeatable.
    #[arg(long = "point")]
    points: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 6)]
    max_degree: usize,
    /// Seed for the random conjugates.
    #[arg(long, default_value_t = VerifyConfig::default().seed)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

/// A report that failed, with its exit code.
struct Failure {
    code: u8,
    message: String,
    /// Printed on stdout before the message, if present.
    output: Option<String>,
}

impl Failure {
    fn new(code: u8, message: impl ToString) -> Self {
        Failure {
            code,
            message: message.to_string(),
            output: None,
        }
    }
}

impl From<CoderivationError> for Failure {
    fn from(e: CoderivationError) -> Self {
        Failure::new(2, e)
    }
}

impl From<HochschildError> for Failure {
    fn from(e: HochschildError) -> Self {
        match e {
            HochschildError::NotCodifferential(_) => Failure::new(3, e),
            HochschildError::Coderivation(e) => e.into(),
        }
    }
}

impl From<ModuliError> for Failure {
    fn from(e: ModuliError) -> Self {
        match e {
            ModuliError::NonAssociative(_) => Failure::new(4, e),
            _ => Failure::new(2, e),
        }
    }
}

impl From<DeformationError> for Failure {
    fn from(e: DeformationError) -> Self {
        match e {
            DeformationError::NonVersal(_) => Failure::new(5, e),
            DeformationError::NonAssociativeSpecialization { .. } => Failure::new(4, e),
            DeformationError::Hochschild(e) => e.into(),
            DeformationError::Moduli(e) => e.into(),
            _ => Failure::new(2, e),
        }
    }
}

fn render(format: Format, value: Value, text: String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&value).expect("JSON values serialize"),
        Format::Text => text,
    }
}

fn with_schema(kind: &str, mut value: Value) -> Value {
    value["schema"] = json!(format!("assoc2/{kind}/v{SCHEMA_VERSION}"));
    value
}

fn cmd_cohomology(args: CohomologyArgs) -> Result<String, Failure> {
    let d = match (&args.algebra, &args.d) {
        (Some(a), _) => standard_codifferential(*a as usize + 1)?,
        (None, Some(s)) => Cochain::parse(&GradedSpace::odd_plane(), s)?,
        (None, None) => unreachable!("clap requires one selector"),
    };
    let report = CochainComplex::new(&d)?.cohomology(args.max_degree)?;
    let dims: Vec<String> = report.dims().iter().map(usize::to_string).collect();
    let mut text = format!(
        "codifferential: {}\ndims: {}\n",
        report.codifferential,
        dims.join(",")
    );
    for deg in &report.degrees {
        let _ = writeln!(text, "H^{} (dim {}):", deg.degree, deg.dim());
        for r in &deg.representatives {
            let _ = writeln!(text, "  {r}");
        }
    }
    let value = with_schema(
        "cohomology",
        serde_json::to_value(&report).expect("report serializes"),
    );
    Ok(render(args.format, value, text.trim_end().to_string()))
}

fn cmd_classify(args: ClassifyArgs) -> Result<String, Failure> {
    let m = MultiplicationTable::<Rational>::parse(&args.table)?;
    let class = classify(&m)?;
    let inv = invariants(&m)?;
    let value = with_schema(
        "classify",
        json!({ "table": m, "class": class, "closure_class": class.over_closure(), "invariants": inv }),
    );
    let text = format!(
        "table: {m}\nclass: {class}\nover the algebraic closure: {}\ninvariants: {}",
        class.over_closure(),
        serde_json::to_string(&inv).expect("invariants serialize")
    );
    Ok(render(args.format, value, text))
}

fn parse_values(s: &str) -> Result<Vec<Rational>, Failure> {
    s.split(',')
        .map(|v| {
            parse_point(&format!("t={}", v.trim()))
                .map(|p| p.0["t"].clone())
                .map_err(Failure::from)
        })
        .collect()
}

fn cmd_deform(args: DeformArgs) -> Result<String, Failure> {
    let (family, file_grid) = match (&args.builtin, &args.family) {
        (Some(name), _) => (DeformationFamily::builtin(name)?, None),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))?;
            DeformationFamily::from_json(&text)?
        }
        (None, None) => unreachable!("clap requires one source"),
    };
    let points: Vec<ParameterPoint> = if !args.points.is_empty() {
        args.points
            .iter()
            .map(|p| parse_point(p))
            .collect::<Result<_, _>>()?
    } else if let Some(values) = &args.values {
        let values = parse_values(values)?;
        let axes: Vec<(String, Vec<Rational>)> = family
            .parameters()
            .map(|p| (p.to_string(), values.clone()))
            .collect();
        product_grid(&axes)
    } else {
        file_grid.unwrap_or_else(|| default_grid(&family))
    };

    let obs = obstruction(&family)?;
    if !obs.is_zero {
        let value = with_schema(
            "deform",
            json!({ "family": family.name(), "obstruction": obs }),
        );
        let text = format!(
            "family: {}\nd_t = {}\nobstruction [d_t, d_t] = {}",
            family.name(),
            family.polynomial(),
            obs.bracket_polynomial
        );
        let mut failure: Failure =
            DeformationError::NonVersal(obs.bracket_polynomial.to_string()).into();
        failure.output = Some(render(args.format, value, text));
        return Err(failure);
    }
    let graph = jump_census(&family, &points)?;
    let mut text = format!(
        "family: {}\nd_t = {}\nobstruction [d_t, d_t] = 0\nbase class: {}\n",
        family.name(),
        family.polynomial(),
        graph.base_class
    );
    for o in &graph.observations {
        let _ = write!(text, "  ({}) -> {}", o.point, o.class);
        if o.closure_class != o.class {
            let _ = write!(text, " ({} over the closure)", o.closure_class);
        }
        text.push('\n');
    }
    for e in &graph.edges {
        let _ = writeln!(
            text,
            "edge {} -> {} ({} points)",
            e.source,
            e.target,
            e.witnesses.len()
        );
    }
    let value = with_schema(
        "deform",
        json!({ "family": family.name(), "obstruction": obs, "graph": graph }),
    );
    Ok(render(args.format, value, text.trim_end().to_string()))
}

fn cmd_verify(args: VerifyArgs) -> Result<String, Failure> {
    let config = VerifyConfig {
        max_degree: args.max_degree,
        seed: args.seed,
        ..VerifyConfig::default()
    };
    let report = run_all(&config);
    let value = with_schema(
        "verify",
        serde_json::to_value(&report).expect("report serializes"),
    );
    let out = render(args.format, value, report.to_string());
    if report.all_passed() {
        Ok(out)
    } else {
        let failed: Vec<String> = report
            .items
            .iter()
            .filter(|i| !i.passed)
            .map(|i| format!("{} {}", i.id, i.name))
            .collect();
        Err(Failure {
            code: 1,
            message: format!("failed: {}", failed.join(", ")),
            output: Some(out),
        })
    }
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<String, Failure> {
    let census = enumerate_finite_field(args.p)?;
    let mut text = format!(
        "F_{}: {} associative tables of {}, |GL_2| = {}, {} orbits, classes constant on orbits: {}\n",
        census.p,
        census.associative_tables,
        census.total_tables,
        census.group_order,
        census.orbit_count,
        census.classes_constant_on_orbits
    );
    for o in &census.orbits {
        let rep: Vec<String> = o.representative.iter().map(u32::to_string).collect();
        let _ = writeln!(
            text,
            "  {:<28} size {:>4}  [{}]",
            o.class.to_string(),
            o.size,
            rep.join(",")
        );
    }
    let value = with_schema(
        "census",
        serde_json::to_value(&census).expect("census serializes"),
    );
    Ok(render(args.format, value, text.trim_end().to_string()))
}

/// Writes a report to stdout, tolerating a closed pipe.
fn emit(out: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Cohomology(a) => cmd_cohomology(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Deform(a) => cmd_deform(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Enumerate(a) => cmd_enumerate(a),
    };
    match result {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(out) = f.output {
                emit(&out);
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
