//! The `bider` command line: argument parsing, report rendering and exit codes.
//!
//! Exit codes: 0 when every requested check passes, 1 when some check fails,
//! 2 for usage errors and unreadable or malformed input.

pub mod report;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};

use bider_core::biderivations::{
    bider_space, is_bider, is_left_bider, is_right_bider, left_bider_bilinear_space, left_defect,
    right_bider_bilinear_space, tensors,
};
use bider_core::bilinear::{heisenberg_b1, heisenberg_b2};
use bider_core::brackets::{is_left_bider_poly, is_right_bider_poly};
use bider_core::derivations::{derivation_basis, derivation_space};
use bider_core::io::{parse_algebra, parse_map, serialize_map, MapDocument};
use bider_core::report::all_passed;
use bider_core::sampling::DEFAULT_SEED;
use bider_core::suite::{run_all, DEFAULT_SAMPLES};
use bider_core::{rhd, Algebra, BilinearTensor, Element, Kind, PolyRightMap};

use report::{
    basis_values, BiderReport, BracketReport, CheckReport, DerReport, ExampleReport, FailureJson,
    VerifyReport,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "bider",
    version,
    about = "Derivations, biderivations and their brackets, exactly"
)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the identities of the algebra's declared kind (or of `--as`).
    Check {
        /// Algebra file, or `builtin:NAME`.
        algebra: String,
        #[arg(long = "as", value_name = "KIND")]
        as_kind: Option<String>,
    },
    /// Dimension and canonical basis of the derivation algebra.
    Der { algebra: String },
    /// Dimension and canonical basis of a bilinear biderivation space.
    Bider {
        algebra: String,
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
    },
    /// Bracket of two maps, printed as a map file.
    Bracket {
        #[arg(long, value_enum)]
        op: Op,
        first: String,
        second: String,
        #[arg(long)]
        algebra: String,
    },
    /// Run every identity suite on an algebra.
    Verify {
        algebra: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Reproduce a worked example.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Right,
    Left,
    Both,
}

impl SideArg {
    fn as_str(self) -> &'static str {
        match self {
            SideArg::Right => "right",
            SideArg::Left => "left",
            SideArg::Both => "both",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Rhd,
    Lhd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    Heisenberg,
}

/// Result of one invocation: what to print and how to exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn output(passed: bool, stdout: String) -> Self {
        Self {
            code: if passed { EXIT_PASS } else { EXIT_FAIL },
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: String) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: EXIT_PASS,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome::usage(text),
            };
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(message) => Outcome::usage(format!("error: {message}\n")),
    }
}

fn execute(cli: &Cli) -> Result<Outcome, String> {
    let json = cli.json;
    match &cli.command {
        Command::Check { algebra, as_kind } => {
            check(&load_algebra(algebra)?, as_kind.as_deref(), json)
        }
        Command::Der { algebra } => Ok(der(&load_algebra(algebra)?, json)),
        Command::Bider { algebra, side } => Ok(bider(&load_algebra(algebra)?, *side, json)),
        Command::Bracket {
            op,
            first,
            second,
            algebra,
        } => bracket(
            &load_algebra(algebra)?,
            *op,
            &load_map(first)?,
            &load_map(second)?,
            json,
        ),
        Command::Verify {
            algebra,
            seed,
            samples,
        } => Ok(verify(&load_algebra(algebra)?, *seed, *samples, json)),
        Command::Example {
            name: ExampleName::Heisenberg,
        } => Ok(example_heisenberg(json)),
    }
}

/// Reads an algebra from a file, or a built-in from `builtin:NAME`.
pub fn load_algebra(spec: &str) -> Result<Algebra, String> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return Algebra::builtin(name).map_err(|e| e.to_string());
    }
    let text = std::fs::read_to_string(spec).map_err(|e| format!("{spec}: {e}"))?;
    parse_algebra(&text).map_err(|e| format!("{spec}: {e}"))
}

pub fn load_map(path: &str) -> Result<MapDocument, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    parse_map(&text).map_err(|e| format!("{path}: {e}"))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn header(a: &Algebra) -> String {
    format!(
        "algebra {} (dim {}, kind {})\n",
        a.name(),
        a.dim(),
        a.kind()
    )
}

fn check(a: &Algebra, as_kind: Option<&str>, json: bool) -> Result<Outcome, String> {
    let kind = match as_kind {
        Some(k) => k.parse::<Kind>()?,
        None => a.kind(),
    };
    let report = a.check_as(kind);
    let passed = report.passed();
    if json {
        let r = CheckReport {
            algebra: a.name().to_string(),
            dim: a.dim(),
            kind: a.kind(),
            checked_as: kind,
            passed,
            failures: report.failures.iter().map(FailureJson::from).collect(),
        };
        return Ok(Outcome::output(passed, to_json(&r)));
    }
    let mut out = header(a);
    let _ = writeln!(
        out,
        "check {kind}: {}",
        if passed { "PASS" } else { "FAIL" }
    );
    for f in &report.failures {
        let _ = writeln!(out, "  {f}");
    }
    Ok(Outcome::output(passed, out))
}

fn der(a: &Algebra, json: bool) -> Outcome {
    let basis = derivation_basis(a);
    let dim = derivation_space(a).dim();
    if json {
        let r = DerReport {
            algebra: a.name().to_string(),
            dim: a.dim(),
            derivation_dim: dim,
            basis: basis.iter().map(report::matrix_rows).collect(),
        };
        return Outcome::output(true, to_json(&r));
    }
    let mut out = header(a);
    let _ = writeln!(out, "dim Der = {dim}");
    for (i, d) in basis.iter().enumerate() {
        let _ = writeln!(out, "D{} =", i + 1);
        for line in d.to_string().lines() {
            let _ = writeln!(out, "  {line}");
        }
    }
    Outcome::output(true, out)
}

fn bider(a: &Algebra, side: SideArg, json: bool) -> Outcome {
    let n = a.dim();
    let space = match side {
        SideArg::Right => right_bider_bilinear_space(a),
        SideArg::Left => left_bider_bilinear_space(a),
        SideArg::Both => bider_space(a),
    };
    let basis: Vec<BilinearTensor> = tensors(n, &space);
    if json {
        let r = BiderReport {
            algebra: a.name().to_string(),
            side: side.as_str().to_string(),
            dim: space.dim(),
            basis: basis.iter().map(basis_values).collect(),
        };
        return Outcome::output(true, to_json(&r));
    }
    let mut out = header(a);
    let _ = writeln!(out, "side {}", side.as_str());
    let _ = writeln!(out, "dim = {}", space.dim());
    for (idx, b) in basis.iter().enumerate() {
        let _ = writeln!(out, "B{}:", idx + 1);
        for v in basis_values(b) {
            let _ = writeln!(out, "  {v}");
        }
    }
    Outcome::output(true, out)
}

fn bracket(
    a: &Algebra,
    op: Op,
    first: &MapDocument,
    second: &MapDocument,
    json: bool,
) -> Result<Outcome, String> {
    for doc in [first, second] {
        if doc.dim() != a.dim() {
            return Err(format!(
                "map has dimension {}, algebra has dimension {}",
                doc.dim(),
                a.dim()
            ));
        }
    }
    let (result, inputs_ok) = match op {
        Op::Rhd => {
            let convert = |d: &MapDocument| {
                d.clone()
                    .into_right()
                    .ok_or_else(|| "rhd needs bilinear or polyright maps".to_string())
            };
            let (p, q) = (convert(first)?, convert(second)?);
            let ok = [&p, &q]
                .iter()
                .all(|m| is_right_bider_poly(a, m).unwrap_or(false));
            (
                MapDocument::PolyRight(rhd(&p, &q).map_err(|e| e.to_string())?),
                ok,
            )
        }
        Op::Lhd => {
            let convert = |d: &MapDocument| {
                d.clone()
                    .into_left()
                    .ok_or_else(|| "lhd needs bilinear or polyleft maps".to_string())
            };
            let (p, q) = (convert(first)?, convert(second)?);
            let ok = [&p, &q]
                .iter()
                .all(|m| is_left_bider_poly(a, m).unwrap_or(false));
            (
                MapDocument::PolyLeft(bider_core::lhd(&p, &q).map_err(|e| e.to_string())?),
                ok,
            )
        }
    };
    let text = serialize_map(&result);
    let op_name = match op {
        Op::Rhd => "rhd",
        Op::Lhd => "lhd",
    };
    if json {
        let r = BracketReport {
            op: op_name.to_string(),
            inputs_are_biderivations: inputs_ok,
            map: text,
        };
        return Ok(Outcome::output(true, to_json(&r)));
    }
    let side = if op == Op::Rhd { "right" } else { "left" };
    let mut out = format!(
        "# {op_name} on {}; inputs are {side} biderivations: {}\n",
        a.name(),
        yes_no(inputs_ok)
    );
    out.push_str(&text);
    Ok(Outcome::output(true, out))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verify(a: &Algebra, seed: u64, samples: usize, json: bool) -> Outcome {
    let outcomes = run_all(a, seed, samples);
    let passed = all_passed(&outcomes);
    if json {
        let r = VerifyReport {
            algebra: a.name().to_string(),
            seed,
            samples,
            passed,
            outcomes,
        };
        return Outcome::output(passed, to_json(&r));
    }
    let mut out = header(a);
    let _ = writeln!(out, "seed {seed}, samples {samples}");
    let width = outcomes
        .iter()
        .map(|o| o.suite.len() + o.identity.len() + 1)
        .max()
        .unwrap_or(0);
    for o in &outcomes {
        let name = format!("{}/{}", o.suite, o.identity);
        let _ = writeln!(out, "{}  {name:<width$}  {:>6} cases", o.status, o.cases);
        if let Some(w) = &o.witness {
            let _ = writeln!(out, "      {w}");
        }
    }
    let count = |s| bider_core::suite::count_status(&outcomes, s);
    let _ = writeln!(
        out,
        "{} passed, {} failed, {} skipped",
        count(bider_core::Status::Pass),
        count(bider_core::Status::Fail),
        count(bider_core::Status::Skip)
    );
    Outcome::output(passed, out)
}

/// The two symmetric biderivations of the Heisenberg algebra, their bracket, and
/// the one-sidedness of the result.
pub fn heisenberg_example() -> ExampleReport {
    let h = Algebra::heisenberg3();
    let (b1, b2) = (heisenberg_b1(), heisenberg_b2());
    let r = rhd(
        &PolyRightMap::from_tensor(&b1),
        &PolyRightMap::from_tensor(&b2),
    )
    .expect("same dimension");
    let table = r.basis_table();
    let witness = left_defect(&h, &table).expect("same dimension");
    ExampleReport {
        b1: basis_values(&b1),
        b2: basis_values(&b2),
        b1_is_biderivation: is_bider(&h, &b1).expect("same dimension"),
        b2_is_biderivation: is_bider(&h, &b2).expect("same dimension"),
        bracket: basis_values(&table),
        bracket_is_right: is_right_bider(&h, &table).expect("same dimension"),
        bracket_is_left: is_left_bider(&h, &table).expect("same dimension"),
        left_witness: witness.as_ref().map(FailureJson::from),
    }
}

fn example_heisenberg(json: bool) -> Outcome {
    let r = heisenberg_example();
    let passed =
        r.b1_is_biderivation && r.b2_is_biderivation && r.bracket_is_right && !r.bracket_is_left;
    if json {
        return Outcome::output(passed, to_json(&r));
    }
    let h = Algebra::heisenberg3();
    let mut out = header(&h);
    let _ = writeln!(
        out,
        "[e1,e2] = {}",
        h.bracket(&Element::basis(3, 0), &Element::basis(3, 1))
            .expect("dim 3")
    );
    for (name, values, ok) in [
        ("B1", &r.b1, r.b1_is_biderivation),
        ("B2", &r.b2, r.b2_is_biderivation),
    ] {
        let _ = writeln!(out, "{name} (biderivation: {}):", yes_no(ok));
        for v in values {
            let _ = writeln!(out, "  {v}");
        }
    }
    let _ = writeln!(out, "B = B1 > B2 on basis pairs:");
    for v in &r.bracket {
        let _ = writeln!(out, "{v}");
    }
    let _ = writeln!(out, "B(ei,ej) = 0 for every other basis pair");
    let _ = writeln!(
        out,
        "B is a right biderivation: {}",
        yes_no(r.bracket_is_right)
    );
    let _ = writeln!(
        out,
        "B is a left biderivation: {}",
        yes_no(r.bracket_is_left)
    );
    if let Some(w) = &r.left_witness {
        let _ = writeln!(out, "  {w}");
    }
    Outcome::output(passed, out)
}
