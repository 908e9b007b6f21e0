//! `edim2`: command-line front end. Every command prints one JSON object on
//! stdout. Exit codes: 0 verdict produced, 1 input error, 2 budget exceeded.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use edim2_core::edim::{essential_dimension, EdBudget, EdVerdict};
use edim2_core::gl2z::{classify, Classification, GroupLabel};
use edim2_core::group::parse::parse_generators;
use edim2_core::monomial::{
    cox_extension, fixed_points, splits, FixedPointReport, MonomialGroup, SplitResult,
};
use edim2_core::toric::{fan_automorphisms, Fan, StandardSurface};
use edim2_core::verify::{self, CheckReport};
use edim2_core::versality::{torus_condition, versal_monomial, TorusCondition, VersalityVerdict};
use edim2_core::{closure, Element, Error, FiniteGroup, Mat2, MonomialElement};

const SCHEMA_VERSION: u32 = 1;
const DEFAULT_NODE_BUDGET: u64 = 1_000_000;
const BUDGET_ENV: &str = "EDIM2_BUDGET";

#[derive(Parser)]
#[command(
    name = "edim2",
    version,
    about = "Versality of toric surface actions and essential dimension of small groups"
)]
struct Cli {
    /// Indented JSON; text tables for the class and condition listings.
    #[arg(long, global = true)]
    pretty: bool,
    /// Node budget for embedding searches (falls back to $EDIM2_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Largest group the closure of the generators may reach.
    #[arg(long, global = true, default_value_t = 10_000)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Conjugacy class in GL2(Z) of the group generated by integer matrices.
    ClassifyGl2z {
        /// `mat2: [[a,b],[c,d]]; ...`, or `@file`.
        #[arg(long)]
        gens: String,
        /// Re-validate a previously printed verdict instead of computing one.
        #[arg(long, value_name = "JSON_FILE")]
        check_certificate: Option<PathBuf>,
    },
    /// Automorphism group of a fan.
    FanAut {
        /// `P2`, `P1xP1`, `DP6`, or a file holding `rays: ...; maxcones: ...`.
        #[arg(long)]
        surface: String,
    },
    /// Versality of a monomial action.
    Versal {
        #[command(flatten)]
        input: MonomialInput,
    },
    /// Whether the Cox extension of a monomial action splits.
    SplitCheck {
        #[command(flatten)]
        input: MonomialInput,
        /// Include the extension data (lifts and cocycle) in the output.
        #[arg(long)]
        extension: bool,
    },
    /// Fixed points of a monomial action, cone by cone.
    FixedPoints {
        #[command(flatten)]
        input: MonomialInput,
    },
    /// Essential dimension of an abstract finite group.
    Ed {
        /// `perm: (0 1 2), (0 1)`, `mat2: ...` or `mono: ...`, or `@file`.
        #[arg(long)]
        group: String,
        #[arg(long, value_name = "JSON_FILE")]
        check_certificate: Option<PathBuf>,
    },
    /// Re-run one of the built-in reproduction checks.
    Verify { check: Check },
}

#[derive(clap::Args)]
struct MonomialInput {
    #[arg(long)]
    surface: String,
    /// `mono: t=1/3,0 A=[[1,0],[0,1]]; ...`, or `@file`.
    #[arg(long)]
    group: String,
    #[arg(long, value_name = "JSON_FILE")]
    check_certificate: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    #[value(alias = "table1")]
    Gl2zClasses,
    #[value(alias = "figure2")]
    ContainmentLattice,
    FanAutomorphisms,
    #[value(alias = "lemma42")]
    ThreeGroups,
    #[value(alias = "lemma43")]
    TwoGroups,
    TwoGroupsCorrected,
    #[value(alias = "table2")]
    VersalityConditions,
    #[value(alias = "cor36")]
    SylowReduction,
    #[value(alias = "prop29")]
    NormalStructure,
    #[value(alias = "prop210")]
    Pgl2Lifts,
    EssentialDimension,
    CharacterTables,
}

impl Check {
    fn run(self) -> CheckReport {
        match self {
            Check::Gl2zClasses => verify::gl2z_classes(),
            Check::ContainmentLattice => verify::gl2z_lattice(),
            Check::FanAutomorphisms => verify::standard_fan_automorphisms(),
            Check::ThreeGroups => verify::three_group_equivalence(),
            Check::TwoGroups => verify::two_group_equivalence(),
            Check::TwoGroupsCorrected => verify::two_group_equivalence_corrected(),
            Check::VersalityConditions => verify::versality_conditions(),
            Check::SylowReduction => verify::sylow_reduction(200, 7),
            Check::NormalStructure => verify::polyhedral_normal_structure(),
            Check::Pgl2Lifts => verify::pgl2_lifts(),
            Check::EssentialDimension => verify::essential_dimension_regression(),
            Check::CharacterTables => verify::character_tables(),
        }
    }

    fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped values")
            .get_name()
            .to_string()
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. }
            | Error::CapExceeded { .. }
            | Error::BoundExceeded { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

/// A command's JSON payload and exit code. `table` replaces the JSON under `--pretty`.
struct Output {
    payload: Value,
    table: Option<String>,
    code: u8,
}

impl Output {
    fn json(payload: Value) -> Self {
        Output {
            payload,
            table: None,
            code: 0,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            match (&out.table, cli.pretty) {
                (Some(t), true) => print!("{t}"),
                _ => print_json(with_schema(out.payload), cli.pretty),
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("edim2: {}", f.message);
            print_json(with_schema(json!({ "error": f.message })), cli.pretty);
            ExitCode::from(f.code)
        }
    }
}

fn with_schema(payload: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    match payload {
        Value::Object(o) => m.extend(o),
        other => {
            m.insert("result".into(), other);
        }
    }
    Value::Object(m)
}

fn print_json(v: Value, pretty: bool) {
    let s = if pretty {
        serde_json::to_string_pretty(&v)
    } else {
        serde_json::to_string(&v)
    };
    println!("{}", s.expect("values always serialize"));
}

fn node_budget(flag: Option<u64>) -> CliResult<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::input(format!("{BUDGET_ENV}: not a number: `{s}`"))),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

fn run(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::ClassifyGl2z {
            gens,
            check_certificate,
        } => {
            let g = matrix_group(&read_arg(gens)?, cli.cap)?;
            match check_certificate {
                Some(path) => {
                    let c: Classification = read_certificate(path, None)?;
                    Ok(validity(c.verify(&g)))
                }
                None => Ok(Output::json(to_value(&classify(&g)?))),
            }
        }
        Command::FanAut { surface } => {
            let fan = load_fan(surface)?;
            let aut = fan_automorphisms(&fan)?;
            let c = classify(&aut)?;
            let elements: Vec<String> = aut.elements().iter().map(|m| m.to_string()).collect();
            Ok(Output::json(json!({
                "fan": fan.to_string(),
                "order": aut.order(),
                "label": c.label,
                "conjugator": c.conjugator,
                "elements": elements,
            })))
        }
        Command::Versal { input } => {
            let g = monomial_group(input, cli.cap)?;
            match &input.check_certificate {
                Some(path) => {
                    let v: VersalityVerdict = read_certificate(path, None)?;
                    Ok(validity(v.verify(&g)))
                }
                None => Ok(Output::json(to_value(&versal_monomial(&g)))),
            }
        }
        Command::SplitCheck { input, extension } => {
            let g = monomial_group(input, cli.cap)?;
            let ext = cox_extension(&g)?;
            match &input.check_certificate {
                Some(path) => {
                    let claimed: SplitResult = read_certificate(path, None)?;
                    let ok = match &claimed.section {
                        Some(s) => claimed.splits && s.verify(&ext),
                        // a claim of no splitting can only be confirmed by re-solving
                        None => !claimed.splits && !splits(&ext).splits,
                    };
                    Ok(validity(ok))
                }
                None => {
                    let mut v = to_value(&splits(&ext));
                    if *extension {
                        v["extension"] = ext.to_json();
                    }
                    Ok(Output::json(v))
                }
            }
        }
        Command::FixedPoints { input } => {
            let g = monomial_group(input, cli.cap)?;
            match &input.check_certificate {
                Some(path) => {
                    let claimed: FixedPointReport = read_certificate(path, None)?;
                    let fresh = fixed_points(&g);
                    let ok = claimed.cones.iter().all(|c| c.coset.verify()) && claimed == fresh;
                    Ok(validity(ok))
                }
                None => Ok(Output::json(to_value(&fixed_points(&g)))),
            }
        }
        Command::Ed {
            group,
            check_certificate,
        } => {
            let g = abstract_group(&read_arg(group)?, cli.cap)?;
            let budget = EdBudget {
                nodes: node_budget(cli.budget)?,
                closure_cap: cli.cap,
                ..EdBudget::default()
            };
            match check_certificate {
                Some(path) => {
                    let v: EdVerdict = read_certificate(path, Some("verdict"))?;
                    Ok(validity(v.verify(&g, &budget)))
                }
                None => Ok(ed_output(essential_dimension(&g, &budget))),
            }
        }
        Command::Verify { check } => {
            let report = check.run();
            let table = match check {
                Check::Gl2zClasses => Some(class_table()),
                Check::VersalityConditions => Some(condition_table()),
                _ => None,
            }
            .map(|t| format!("{t}\n{report}\n"));
            Ok(Output {
                payload: json!({ "check": check.name(), "report": report }),
                table,
                code: 0,
            })
        }
    }
}

fn ed_output(v: EdVerdict) -> Output {
    let (ed, form, code) = match &v {
        EdVerdict::Two { form, .. } => (json!(2), json!(form), 0),
        EdVerdict::MoreThan2 { .. } => (json!("more_than_2"), Value::Null, 0),
        EdVerdict::UnknownAtBound { .. } => (Value::Null, Value::Null, 2),
        other => (json!(other.value()), Value::Null, 0),
    };
    Output {
        payload: json!({ "ed": ed, "form": form, "verdict": v }),
        table: None,
        code,
    }
}

fn validity(valid: bool) -> Output {
    Output::json(json!({ "valid": valid }))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("verdicts always serialize")
}

/// Inline text, or the contents of a file for `@path`.
fn read_arg(s: &str) -> CliResult<String> {
    match s.strip_prefix('@') {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))
        }
        None => Ok(s.to_string()),
    }
}

/// A JSON certificate from a file or stdin (`-`), optionally nested under `key`.
fn read_certificate<T: serde::de::DeserializeOwned>(
    path: &PathBuf,
    key: Option<&str>,
) -> CliResult<T> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?
    };
    let mut v: Value =
        serde_json::from_str(&text).map_err(|e| Failure::input(format!("certificate: {e}")))?;
    if let Some(k) = key {
        if let Some(inner) = v.get_mut(k) {
            v = inner.take();
        }
    }
    serde_json::from_value(v).map_err(|e| Failure::input(format!("certificate: {e}")))
}

fn load_fan(s: &str) -> CliResult<Fan> {
    if let Ok(surface) = s.parse::<StandardSurface>() {
        return Ok(surface.fan());
    }
    let text = std::fs::read_to_string(s).map_err(|e| {
        Failure::input(format!(
            "`{s}` is not P2, P1xP1, DP6 or a readable fan file: {e}"
        ))
    })?;
    Ok(text.trim().parse()?)
}

fn matrix_group(text: &str, cap: usize) -> CliResult<FiniteGroup<Mat2>> {
    let gens = parse_generators(text)?
        .into_iter()
        .map(|e| match e {
            Element::Mat(m) => Ok(m),
            other => Err(Failure::input(format!(
                "expected mat2 generators, got {}",
                other.kind()
            ))),
        })
        .collect::<CliResult<Vec<Mat2>>>()?;
    Ok(closure(&gens, cap)?)
}

fn monomial_group(input: &MonomialInput, cap: usize) -> CliResult<MonomialGroup> {
    let fan = load_fan(&input.surface)?;
    let gens = parse_generators(&read_arg(&input.group)?)?
        .into_iter()
        .map(|e| match e {
            Element::Mono(m) => Ok(m),
            Element::Mat(a) => Ok(MonomialElement::matrix(a)),
            other => Err(Failure::input(format!(
                "expected mono generators, got {}",
                other.kind()
            ))),
        })
        .collect::<CliResult<Vec<MonomialElement>>>()?;
    Ok(MonomialGroup::with_cap(&gens, fan, cap)?)
}

fn abstract_group(text: &str, cap: usize) -> CliResult<FiniteGroup<Element>> {
    let gens = parse_generators(text)?;
    if gens.iter().any(|g| g.kind() != gens[0].kind()) {
        return Err(Error::KindMismatch.into());
    }
    Ok(closure(&gens, cap)?)
}

fn class_table() -> String {
    let mut out = format!(
        "{:<8} {:<10} {:>5}  generators\n",
        "label", "structure", "order"
    );
    for label in GroupLabel::ALL {
        let gens: Vec<String> = label.generators().iter().map(|m| m.to_string()).collect();
        out += &format!(
            "{:<8} {:<10} {:>5}  {}\n",
            label.to_string(),
            label.structure(),
            label.order(),
            gens.join(", ")
        );
    }
    out
}

fn condition_table() -> String {
    let mut out = format!("{:<8} {:<10}  |G ∩ T| coprime to\n", "image", "structure");
    for label in GroupLabel::ALL {
        let cond = match torus_condition(label) {
            TorusCondition::CoprimeTo(ps) if ps.is_empty() => "none".to_string(),
            TorusCondition::CoprimeTo(ps) => ps
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(", "),
            TorusCondition::Special => {
                "special: torus part has trivial first coordinate".to_string()
            }
        };
        out += &format!(
            "{:<8} {:<10}  {}\n",
            label.to_string(),
            label.structure(),
            cond
        );
    }
    out
}
